"""Sparse multivariate polynomials with exact rational coefficients.

Variables are the fundamental weights w1..wr of a root system; the
cohomological degree of a class is twice the polynomial degree.  Simple
roots embed linearly via the Cartan matrix (alpha_i = sum_j C[i][j] w_j),
which makes the Weyl action an integral linear substitution.  Division is
only ever by linear forms, implemented by univariate long division in a
pivot variable with a remainder test; no Groebner machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError
from .rootsys import Root, RootSystem, WeylElement

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Poly:
    """A polynomial in `nvars` variables; zero is the empty term dict."""

    nvars: int
    terms: tuple[tuple[Monomial, Fraction], ...] = field(default=())

    @staticmethod
    def from_dict(nvars: int, d: dict[Monomial, Fraction]) -> "Poly":
        cleaned = tuple(sorted((m, c) for m, c in d.items() if c != 0))
        return Poly(nvars, cleaned)

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars, ())

    @staticmethod
    def const(nvars: int, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(nvars)
        return Poly(nvars, (((0,) * nvars, c),))

    @staticmethod
    def variable(nvars: int, j: int) -> "Poly":
        """The generator w_{j+1} (0-based j)."""
        mono = tuple(1 if k == j else 0 for k in range(nvars))
        return Poly(nvars, ((mono, Fraction(1)),))

    @staticmethod
    def linear(nvars: int, coeffs) -> "Poly":
        d = {}
        for j, c in enumerate(coeffs):
            c = Fraction(c)
            if c != 0:
                d[tuple(1 if k == j else 0 for k in range(nvars))] = c
        return Poly.from_dict(nvars, d)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total polynomial degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m, _ in self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        for m, c in self.terms:
            if m == mono:
                return c
        return Fraction(0)

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise InvalidInputError("polynomials in different variable counts")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) + c
        return Poly.from_dict(self.nvars, d)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        d: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return Poly.from_dict(self.nvars, d)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, tuple((m, c * coeff) for m, coeff in self.terms))

    def substitute(self, images: list["Poly"]) -> "Poly":
        """Ring map sending generator j to images[j]."""
        if len(images) != self.nvars:
            raise InvalidInputError("substitution must cover every variable")
        out_nvars = images[0].nvars if images else self.nvars
        result = Poly.zero(out_nvars)
        power_cache: dict[tuple[int, int], Poly] = {}

        def power(j: int, e: int) -> Poly:
            key = (j, e)
            if key not in power_cache:
                p = Poly.const(out_nvars, 1)
                for _ in range(e):
                    p = p * images[j]
                power_cache[key] = p
            return power_cache[key]

        for mono, coeff in self.terms:
            term = Poly.const(out_nvars, coeff)
            for j, e in enumerate(mono):
                if e:
                    term = term * power(j, e)
            result = result + term
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda t: (sum(t[0]), t[0]), reverse=True)
        pieces = []
        for mono, coeff in ordered:
            vars_part = "*".join(
                f"w{j + 1}" + (f"^{e}" if e > 1 else "")
                for j, e in enumerate(mono) if e
            )
            mag = abs(coeff)
            if vars_part:
                body = vars_part if mag == 1 else f"{mag}*{vars_part}"
            else:
                body = str(mag)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign0, body0 = pieces[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def divide_linear(p: Poly, ell: Poly) -> tuple[Poly, Poly]:
    """Divide p by a nonzero linear form; returns (quotient, remainder).

    The remainder has degree zero in the pivot variable; p is divisible by
    ell exactly when the remainder is the zero polynomial.
    """
    if ell.degree() != 1 or any(sum(m) == 0 for m, _ in ell.terms):
        raise InvalidInputError("divisor must be a homogeneous linear form")
    pivot = next(j for m, _ in sorted(ell.terms) for j, e in enumerate(m) if e)
    a = ell.coefficient(tuple(1 if k == pivot else 0 for k in range(ell.nvars)))
    quotient = Poly.zero(p.nvars)
    rest = p
    while True:
        top = max((m[pivot] for m, _ in rest.terms), default=0)
        if top == 0:
            break
        lead = {
            tuple(e - (1 if j == pivot else 0) for j, e in enumerate(m)): c / a
            for m, c in rest.terms if m[pivot] == top
        }
        qpart = Poly.from_dict(p.nvars, lead)
        quotient = quotient + qpart
        rest = rest - qpart * ell
    return quotient, rest


def exact_divide(p: Poly, factors: list[Poly]) -> Poly | None:
    """Divide p by a product of linear forms; None when any step is inexact."""
    q = p
    for ell in factors:
        q, rem = divide_linear(q, ell)
        if not rem.is_zero():
            return None
    return q


def simple_root_poly(rs: RootSystem, i: int) -> Poly:
    """alpha_i (1-based) in the fundamental-weight variables."""
    return Poly.linear(rs.rank, rs.cartan[i - 1])


def root_poly(rs: RootSystem, root: Root) -> Poly:
    """Any root as a linear form in the fundamental-weight variables."""
    coeffs = [sum(root.coords[i] * rs.cartan[i][j] for i in range(rs.rank))
              for j in range(rs.rank)]
    return Poly.linear(rs.rank, coeffs)


_WEIGHT_MATRIX_CACHE: dict[tuple[RootSystem, tuple], tuple[tuple[int, ...], ...]] = {}


def weight_matrix(w: WeylElement) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of w on fundamental-weight coordinates.

    Built from the word of w via s_i(w_j) = w_j - delta_ij alpha_i.
    """
    key = (w.rs, w.matrix)
    cached = _WEIGHT_MATRIX_CACHE.get(key)
    if cached is not None:
        return cached
    rank = w.rs.rank
    # E_i acts on coordinate vectors by (E_i a)_j = a_j - a_i C[i][j]; the
    # matrix of w = s_{i1}...s_{im} is E_{i1} ... E_{im}.
    mat = [[int(r == c) for c in range(rank)] for r in range(rank)]
    for letter in reversed(w.word()):
        i = letter - 1
        mat = [[mat[r][c] - w.rs.cartan[i][r] * mat[i][c]
                for c in range(rank)] for r in range(rank)]
    result = tuple(tuple(r) for r in mat)
    _WEIGHT_MATRIX_CACHE[key] = result
    return result


_ACT_CACHE: dict[tuple, Poly] = {}


def weyl_act(w: WeylElement, p: Poly) -> Poly:
    """The ring automorphism of S induced by w on weights."""
    if p.nvars != w.rs.rank:
        raise InvalidInputError("polynomial variable count does not match rank")
    key = (w.rs, w.matrix, p.terms)
    cached = _ACT_CACHE.get(key)
    if cached is None:
        m = weight_matrix(w)
        images = [Poly.linear(w.rs.rank, [m[k][j] for k in range(w.rs.rank)])
                  for j in range(w.rs.rank)]
        cached = p.substitute(images)
        _ACT_CACHE[key] = cached
    return cached
