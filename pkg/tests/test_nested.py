"""Nested structures, projections, fibres, and the counting bijection."""

import random

import pytest

from bscomb.errors import InvalidInputError, PropertyViolationError
from bscomb.gallery import ReflSeq, is_gallery_type
from bscomb.nested import (
    FSelection,
    NestedPlan,
    betti_rank,
    factor_fixed_points,
    fibre_data,
    fixed_points,
    is_gallery_type_pair,
    poincare_polynomial,
    project,
    restricted_seq,
    v_power,
    validate,
)
from bscomb.rootsys import build_root_system, enumerate_weyl

from conftest import simple_seq


def make_plan(rs, letters, pairs, words):
    seq = simple_seq(rs, *letters)
    labels = {}
    for r, word in zip(pairs, words):
        w = rs.identity()
        for i in word:
            w = w * rs.simple_reflection(i)
        labels[r] = w
    return NestedPlan(seq, tuple(pairs), labels)


@pytest.fixture(scope="module")
def sl5_plan():
    rs = build_root_system("A", 4)
    return make_plan(rs, (4, 1, 2, 1, 2, 1, 3, 4, 3, 4),
                     [(1, 10), (2, 6)], [(2, 3, 4), (2,)])


def test_validate_ok(sl5_plan):
    assert validate(sl5_plan) is None


def test_validate_overlap(a2):
    plan = make_plan(a2, (1, 2, 1, 2, 1), [(1, 3), (2, 5)], [(), ()])
    violation = validate(plan)
    assert violation is not None
    assert "nested" in violation.condition or "disjoint" in violation.condition


def test_validate_shared_endpoint(a2):
    plan = make_plan(a2, (1, 2, 1), [(1, 2), (2, 3)], [(), ()])
    assert validate(plan) is not None


def test_v_power(sl5_plan):
    F = FSelection.of(sl5_plan, [(2, 6)])
    rs = sl5_plan.seq.rs
    assert v_power(sl5_plan, F, 1).is_identity()
    assert v_power(sl5_plan, F, 7) == rs.simple_reflection(2)
    with pytest.raises(InvalidInputError):
        v_power(sl5_plan, F, 4)


def test_sl5_projection(sl5_plan):
    rs = sl5_plan.seq.rs
    F = FSelection.of(sl5_plan, [(2, 6)])
    base = project(sl5_plan, F)
    s2 = rs.simple_reflection(2)
    # s^F = (s4, s2 s3 s2, s4, s2 s3 s2, s4) as reflections
    entries = [t.as_weyl() for t in base.seq.entries]
    s4 = rs.simple_reflection(4)
    s232 = s2 * rs.simple_reflection(3) * s2
    assert entries == [s4, s232, s4, s232, s4]
    # v^F(1,10) = s2 s3 s4 s2
    (pair,) = base.pairs
    assert base.display(pair) == (1, 10)
    expected = (s2 * rs.simple_reflection(3) * rs.simple_reflection(4) * s2)
    assert base.labels[pair] == expected


def test_sl5_fibre(sl5_plan):
    rs = sl5_plan.seq.rs
    fib = fibre_data(sl5_plan, (2, 6))
    assert [t.as_weyl() for t in fib.seq.entries] == [
        rs.simple_reflection(i) for i in (1, 2, 1, 2, 1)]
    (span,) = fib.pairs
    assert fib.labels[span] == rs.simple_reflection(2)


def test_trivial_labels_project_to_restriction(a2):
    plan = make_plan(a2, (1, 2, 1, 2), [(2, 3)], [()])
    base = project(plan, FSelection.of(plan, [(2, 3)]))
    assert [t for t in base.seq.entries] == [plan.seq[1], plan.seq[4]]


def test_fixed_points_examples(a2):
    plan = make_plan(a2, (1, 2), [(1, 2)], [(1, 2)])
    assert [g.bits for g in fixed_points(plan)] == [(True, True)]
    plan2 = make_plan(a2, (1, 1), [(1, 1)], [(1,)])
    assert sorted(g.bits for g in fixed_points(plan2)) == [
        (True, False), (True, True)]


def test_fixed_points_no_constraints(a2):
    plan = make_plan(a2, (1, 2, 1), [], [])
    assert len(fixed_points(plan)) == 8


def test_factor_fixed_points_sl5(sl5_plan):
    F = FSelection.of(sl5_plan, [(2, 6)])
    cert = factor_fixed_points(sl5_plan, F)
    base_count = len(fixed_points(cert.base_plan))
    fibre_count = len(fixed_points(cert.fibre_plans[0]))
    assert cert.count == base_count * fibre_count
    assert cert.count == len(fixed_points(sl5_plan))


def test_factor_fixed_points_random_a3(a3):
    rng = random.Random(7)
    order = enumerate_weyl(a3)
    for _ in range(25):
        n = rng.randint(2, 6)
        letters = [rng.randint(1, 3) for _ in range(n)]
        pairs, used = [], set()
        for _ in range(rng.randint(1, 2)):
            a = rng.randint(1, n)
            b = rng.randint(a, n)
            if {a, b} & used:
                continue
            if all(b < c or d < a or (c <= a and b <= d) or (a <= c and d <= b)
                   for c, d in pairs):
                pairs.append((a, b))
                used.update((a, b))
        plan = make_plan(a3, letters, pairs, [()] * len(pairs))
        plan = NestedPlan(plan.seq, plan.pairs,
                          {r: rng.choice(order) for r in plan.pairs})
        if validate(plan) is not None:
            continue
        disjoint = [f for f in plan.pairs
                    if all(f == g or f[1] < g[0] or g[1] < f[0]
                           for g in plan.pairs)]
        if not disjoint:
            continue
        cert = factor_fixed_points(plan, FSelection.of(plan, disjoint))
        assert cert.count == len(fixed_points(plan))


def test_restricted_seq(sl5_plan):
    rs = sl5_plan.seq.rs
    # I((1,10), R) drops [2,6]; entries after position 6 are conjugated by v(2,6)
    s = restricted_seq(sl5_plan, (1, 10))
    assert len(s) == 5
    s2 = rs.simple_reflection(2)
    assert s.entries[0] == sl5_plan.seq[1]
    for k, i in enumerate((7, 8, 9, 10), start=1):
        expected = rs.reflection(rs.positive_representative(
            s2.apply(sl5_plan.seq[i].root)))
        assert s.entries[k] == expected


def test_gallery_type_pair(sl5_plan, a2):
    ok, certs = is_gallery_type_pair(sl5_plan)
    assert ok
    assert set(certs) == {(1, 10), (2, 6)}
    plan = make_plan(a2, (1, 2, 1), [], [])
    assert is_gallery_type_pair(plan)[0]


def test_projection_stability_small(a2):
    # projections and fibres of gallery-type plans stay gallery-type
    plan = make_plan(a2, (1, 2, 1, 2), [(1, 4), (2, 3)], [(1,), (2,)])
    assert validate(plan) is None
    assert is_gallery_type_pair(plan)[0]
    F = FSelection.of(plan, [(2, 3)])
    assert is_gallery_type_pair(project(plan, F))[0]
    assert is_gallery_type_pair(fibre_data(plan, (2, 3)))[0]


def test_poincare_polynomial(a2):
    s = simple_seq(a2, 1, 2, 1)
    assert poincare_polynomial(s) == (1, 0, 3, 0, 3, 0, 1)
    plan = make_plan(a2, (1, 2, 1), [], [])
    assert betti_rank(plan) == 8 == len(fixed_points(plan))
