"""The fixed-point cohomology model: generators, copy/concentration, basis."""

import random
from fractions import Fraction

import pytest

from bscomb.errors import InvalidInputError, NotInSpanError
from bscomb.gallery import galleries
from bscomb.gkm import (
    FPFunction,
    basis,
    combine,
    concentrate,
    concentration_identity_check,
    constant,
    copy,
    decompose,
    generator,
    induced_map,
)
from bscomb.foldcat import identity_morphism
from bscomb.poly import Poly, simple_root_poly
from bscomb.rootsys import build_root_system

from conftest import all_seqs, simple_seq


def rand_poly(rng, rank, max_deg=2):
    terms = {}
    for _ in range(3):
        mono = tuple(rng.randint(0, max_deg) for _ in range(rank))
        terms[mono] = Fraction(rng.randint(-4, 4))
    return Poly.from_dict(rank, terms)


def rand_fp(rng, s):
    return FPFunction(s, {g.bits: rand_poly(rng, s.rs.rank)
                          for g in galleries(s)})


def test_generator_constant_cases(a2):
    s = simple_seq(a2, 1, 2)
    c = simple_root_poly(a2, 1)
    g = generator(s, 0, a2.identity(), c)
    assert all(p == c for p in g.values.values())
    unit = generator(s, 2, a2.simple_reflection(1), Poly.const(2, 1))
    assert all(p == Poly.const(2, 1) for p in unit.values.values())


def test_generator_single_letter(a2):
    s = simple_seq(a2, 1)
    a1 = simple_root_poly(a2, 1)
    g = generator(s, 1, a2.identity(), a1)
    assert g.values[(False,)] == a1
    assert g.values[(True,)] == -a1


def test_copy_constant(a2):
    s = simple_seq(a2, 1, 2)
    g = copy(s, constant(s.truncated(), 7))
    assert all(p == Poly.const(2, 7) for p in g.values.values())
    # value depends only on the truncation
    for bits in ((False,), (True,)):
        assert g.values[bits + (False,)] == g.values[bits + (True,)]


def test_concentrate_example(a2):
    s = simple_seq(a2, 1, 2)
    a1, a2p = simple_root_poly(a2, 1), simple_root_poly(a2, 2)
    nab = concentrate(s, constant(s.truncated(), 1), True)
    assert nab.values[(False, True)] == a2p
    assert nab.values[(True, True)] == a1 + a2p
    assert nab.values[(False, False)].is_zero()
    assert nab.values[(True, False)].is_zero()


def test_concentrate_degree_shift(a2):
    s = simple_seq(a2, 2, 1)
    g = constant(s.truncated(), 3)
    assert concentrate(s, g, True).degree() == g.degree() + 2


def test_concentration_identity(a2, b2):
    rng = random.Random(11)
    for rs in (a2, b2):
        for letters in [(1,), (2, 1), (1, 2, 1), (2, 2, 1, 2)]:
            s = simple_seq(rs, *letters)
            for _ in range(3):
                g = rand_fp(rng, s.truncated())
                assert concentration_identity_check(s, g, True)
                assert concentration_identity_check(s, g, False)


def test_basis_single_letter(a2):
    s = simple_seq(a2, 1)
    elements = basis(s)
    assert len(elements) == 2
    by_subset = {frozenset(e.subset): e for e in elements}
    empty = by_subset[frozenset()]
    assert all(p == Poly.const(2, 1) for p in empty.function.values.values())
    top = by_subset[frozenset({1})]
    assert top.function.values[(False,)].is_zero()
    assert top.function.values[(True,)] == simple_root_poly(a2, 1)


def test_basis_triangularity(a2):
    s = simple_seq(a2, 1, 2, 1)
    for e in basis(s):
        for bits, p in e.function.values.items():
            support = {i for i, b in enumerate(bits, start=1) if b}
            if not e.subset <= support:
                assert p.is_zero()
        lead = e.function.values[e.lead_bits()]
        product = Poly.const(2, 1)
        for ell in e.lead_factors:
            product = product * ell
        assert lead == product
        assert not lead.is_zero()


def test_basis_count(a2):
    for s in all_seqs(a2, 2):
        assert len(basis(s)) == 4


def test_decompose_round_trip(a2):
    rng = random.Random(23)
    s = simple_seq(a2, 1, 2, 1)
    elements = basis(s)
    coeffs = {e.subset: rand_poly(rng, 2) for e in elements}
    g = combine(elements, coeffs)
    recovered = decompose(g, elements)
    assert recovered == coeffs


def test_decompose_zero(a2):
    s = simple_seq(a2, 2, 1)
    out = decompose(constant(s, 0))
    assert all(c.is_zero() for c in out.values())


def test_decompose_shifted_example(a2):
    s = simple_seq(a2, 1)
    elements = basis(s)
    a2p = simple_root_poly(a2, 2)
    g = combine(elements, {frozenset(): Poly.const(2, 3),
                           frozenset({1}): a2p})
    out = decompose(g, elements)
    assert out[frozenset()] == Poly.const(2, 3)
    assert out[frozenset({1})] == a2p


def test_indicator_not_in_span(a2):
    s = simple_seq(a2, 1)
    g = FPFunction(s, {(False,): Poly.const(2, 1), (True,): Poly.zero(2)})
    with pytest.raises(NotInSpanError):
        decompose(g)


def test_generators_span_products(a2):
    # products of generator classes decompose in the basis
    s = simple_seq(a2, 1, 2)
    a1 = simple_root_poly(a2, 1)
    g1 = generator(s, 1, a2.identity(), a1)
    g2 = generator(s, 2, a2.identity(), simple_root_poly(a2, 2))
    decompose(g1 * g2)
    decompose(g1 * g1 + 2 * g2)


def test_induced_map_identity(a2):
    rng = random.Random(5)
    s = simple_seq(a2, 1, 2)
    m = identity_morphism(s)
    g = rand_fp(rng, s)
    assert induced_map(m, g).values == g.values


def test_induced_map_requires_verified(a2):
    from bscomb.foldcat import Morphism
    s = simple_seq(a2, 1)
    phi = {g.bits: g.bits for g in galleries(s)}
    m = Morphism(s, s, (1,), a2.identity(), phi)
    with pytest.raises(InvalidInputError):
        induced_map(m, constant(s, 1))


def test_fpfunction_table_must_be_total(a2):
    s = simple_seq(a2, 1)
    with pytest.raises(InvalidInputError):
        FPFunction(s, {(False,): Poly.zero(2)})
