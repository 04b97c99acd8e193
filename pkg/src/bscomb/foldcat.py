"""Morphisms of folding categories.

A morphism (p, w, phi) from a sequence s of length n to a sequence s~ of
length n~ consists of a strictly increasing map p of positions, a Weyl
element w, and a map phi between gallery sets satisfying two conditions
for all galleries gamma and positions i:

    phi(gamma)^{p(i)} s~_{p(i)} (phi(gamma)^{p(i)})^{-1}
        = w gamma^i s_i (gamma^i)^{-1} w^{-1}
    phi(f_i gamma) = f_{p(i)} phi(gamma)

Since foldings act transitively on galleries, phi is determined by its
value on a single seed; enumeration exploits this, while verification
always walks the full table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidInputError, ResourceLimitError, VerificationError
from .gallery import (
    Bits,
    Gallery,
    ReflSeq,
    galleries,
    prefix,
    twist_seq,
)
from .rootsys import WeylElement, conjugate_reflection, enumerate_weyl

DEFAULT_MAX_MORPHISM_LENGTH = 12


@dataclass(frozen=True)
class MorphismViolation:
    """First failed check of verify_morphism or verify_pointed."""

    condition: str
    bits: Bits
    position: int | None = None

    def __str__(self):
        gallery = "".join("1" if b else "0" for b in self.bits) or "-"
        where = f" at position {self.position}" if self.position is not None else ""
        return f"{self.condition} fails at gallery {gallery}{where}"


@dataclass(frozen=True)
class Morphism:
    """A triple (p, w, phi) with phi stored as a full table on Gamma(source)."""

    source: ReflSeq
    target: ReflSeq
    p: tuple[int, ...]
    w: WeylElement
    phi: dict[Bits, Bits] = field(hash=False)
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        n, m = len(self.source), len(self.target)
        if len(self.p) != n:
            raise InvalidInputError("p must be defined on every source position")
        if any(not 1 <= j <= m for j in self.p):
            raise InvalidInputError("p maps outside the target positions")
        if any(a >= b for a, b in zip(self.p, self.p[1:])):
            raise InvalidInputError("p must be strictly increasing")

    def apply(self, gamma: Gallery) -> Gallery:
        if gamma.seq != self.source:
            raise InvalidInputError("gallery does not live over the source")
        image = self.phi.get(gamma.bits)
        if image is None:
            raise InvalidInputError("phi table is not total")
        return Gallery(self.target, image)

    def key(self) -> tuple:
        return (self.p, self.w.matrix, tuple(sorted(self.phi.items())))


@dataclass(frozen=True)
class PointedMorphism:
    """A morphism between pointed sequences (s, x) -> (s~, x~)."""

    morphism: Morphism
    x: WeylElement
    x_target: WeylElement


def _table_ok(m: Morphism) -> MorphismViolation | None:
    n, nt = len(m.source), len(m.target)
    expected = 1 << n
    if len(m.phi) != expected:
        return MorphismViolation("phi-total", ())
    for bits, image in m.phi.items():
        if len(bits) != n or len(image) != nt:
            return MorphismViolation("phi-shape", bits)
    return None


def verify_morphism(m: Morphism,
                    max_length: int = DEFAULT_MAX_MORPHISM_LENGTH
                    ) -> MorphismViolation | None:
    """Check both defining equations exhaustively; None means verified.

    On success the morphism's verified flag is set in place.
    """
    if len(m.source) > max_length or len(m.target) > max_length:
        raise ResourceLimitError("sequence length exceeds morphism bound")
    bad = _table_ok(m)
    if bad is not None:
        return bad
    n = len(m.source)
    twist_cache: dict[Bits, ReflSeq] = {}

    def img_twist(bits: Bits) -> ReflSeq:
        if bits not in twist_cache:
            twist_cache[bits] = twist_seq(m.target, Gallery(m.target, bits))
        return twist_cache[bits]

    for gamma in galleries(m.source, max_length):
        src_twist = twist_seq(m.source, gamma)
        image = m.phi[gamma.bits]
        tgt_twist = img_twist(image)
        for i in range(1, n + 1):
            lhs = tgt_twist[m.p[i - 1]]
            rhs = conjugate_reflection(m.w, src_twist[i])
            if lhs != rhs:
                return MorphismViolation("wall-equation", gamma.bits, i)
            folded = list(gamma.bits)
            folded[i - 1] = not folded[i - 1]
            expect = list(image)
            expect[m.p[i - 1] - 1] = not expect[m.p[i - 1] - 1]
            if m.phi[tuple(folded)] != tuple(expect):
                return MorphismViolation("folding-equation", gamma.bits, i)
    object.__setattr__(m, "verified", True)
    return None


def identity_morphism(s: ReflSeq) -> Morphism:
    phi = {g.bits: g.bits for g in galleries(s)}
    m = Morphism(s, s, tuple(range(1, len(s) + 1)), s.rs.identity(), phi)
    if verify_morphism(m) is not None:
        raise VerificationError("identity morphism failed verification")
    return m


def subsequence_morphism(s: ReflSeq, target: ReflSeq,
                         p: tuple[int, ...]) -> Morphism:
    """The embedding with w = e placing gamma_i at p(i) and 1 elsewhere."""
    for i in range(1, len(s) + 1):
        if target[p[i - 1]] != s[i]:
            raise InvalidInputError(
                f"target entry at {p[i - 1]} does not match source entry {i}")
    zeros = [False] * len(target)
    phi = {}
    for g in galleries(s):
        image = list(zeros)
        for i, bit in enumerate(g.bits):
            image[p[i] - 1] = bit
        phi[g.bits] = tuple(image)
    m = Morphism(s, target, p, s.rs.identity(), phi)
    bad = verify_morphism(m)
    if bad is not None:
        raise VerificationError(f"subsequence morphism unsound: {bad}")
    return m


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """outer after inner; the composite is re-verified from scratch."""
    if inner.target != outer.source:
        raise InvalidInputError("morphisms are not composable")
    p = tuple(outer.p[j - 1] for j in inner.p)
    phi = {bits: outer.phi[image] for bits, image in inner.phi.items()}
    m = Morphism(inner.source, outer.target, p, outer.w * inner.w, phi)
    verify_morphism(m)
    return m


def _propagated_table(s: ReflSeq, p: tuple[int, ...],
                      seed_image: Bits, nt: int) -> dict[Bits, Bits]:
    # Folding from the all-stay seed flips target bit p(i) whenever source
    # bit i is set; bit flips commute, so the table is path-independent.
    table = {}
    for g in galleries(s):
        image = list(seed_image)
        for i, bit in enumerate(g.bits):
            if bit:
                image[p[i] - 1] = not image[p[i] - 1]
        table[g.bits] = tuple(image)
    return table


def enumerate_morphisms(s: ReflSeq, target: ReflSeq,
                        max_weyl: int = 100_000,
                        max_length: int = DEFAULT_MAX_MORPHISM_LENGTH
                        ) -> list[Morphism]:
    """All morphisms s -> target, in deterministic order.

    phi is determined by (p, seed image), so candidates are propagated from
    the all-stay gallery and filtered by full verification.  Ordering is
    lexicographic in p, then enumerate_weyl order of w, then seed image.
    """
    n, nt = len(s), len(target)
    if n > max_length or nt > max_length:
        raise ResourceLimitError("sequence length exceeds morphism bound")
    if n > nt:
        return []
    out = []
    seen = set()
    weyl_order = enumerate_weyl(s.rs, max_weyl)
    seeds = [g.bits for g in galleries(target)]
    for p in combinations(range(1, nt + 1), n):
        for w in weyl_order:
            for seed in seeds:
                phi = _propagated_table(s, p, seed, nt)
                m = Morphism(s, target, p, w, phi)
                if verify_morphism(m, max_length) is None:
                    key = m.key()
                    if key not in seen:
                        seen.add(key)
                        out.append(m)
    return out


def verify_pointed(pm: PointedMorphism) -> MorphismViolation | None:
    """Check the pointed condition at every gallery of the source.

    Requires x~ (phi(gamma)^max)^{-1} = w x (gamma^max)^{-1} w^{-1} for all
    gamma, which in particular carries Gamma(s, x) into Gamma(s~, x~).
    """
    m = pm.morphism
    if not m.verified:
        bad = verify_morphism(m)
        if bad is not None:
            return bad
    winv = m.w.inv()
    for gamma in galleries(m.source):
        image = Gallery(m.target, m.phi[gamma.bits])
        lhs = pm.x_target * prefix(image, len(m.target)).inv()
        rhs = m.w * pm.x * prefix(gamma, len(m.source)).inv() * winv
        if lhs != rhs:
            return MorphismViolation("pointed-condition", gamma.bits)
    return None
