import random
from fractions import Fraction

import pytest

from torusroots.cyclotomic import (
    CycloNum,
    RootOfUnity,
    cyclotomic_polynomial,
    euler_phi,
)
from torusroots.curves import (
    TorusCurve,
    conjugate_family,
    graph_curve,
    minimal_translate,
    mobius_new,
)
from torusroots.polytope import difference_lattice, toric_bezout_bound
from torusroots.torsion import (
    CommonComponentError,
    TorsionPoint,
    UnsupportedIntersectionError,
    bound_torsion,
    brute_force_torsion,
    conjugacy_witness,
    conjugacy_witness_image,
    distribute,
    enumerate_torsion,
    intersect,
)
from conftest import (
    GAMMA1_POINTS,
    GAMMA2_POINTS,
    golden_set,
    joint_set,
    zeta,
)


def _family_member(curve, label):
    mt = minimal_translate(curve)
    fam = conjugate_family(mt.curve, mt.conductor)
    return mt, dict(fam.members)[label]


def test_intersect_gamma1_f3(curve1):
    mt, f3 = _family_member(curve1, "f3")
    res = intersect(mt.curve, f3)
    assert joint_set(res.torsion) == golden_set([(3, 9), (18, 24)], 30)
    assert res.nontorsion_count == 0


def test_intersect_gamma1_f5(curve1):
    mt, f5 = _family_member(curve1, "f5")
    res = intersect(mt.curve, f5)
    assert joint_set(res.torsion) == golden_set(
        [(2, 5), (4, 13), (14, 23), (22, 25)], 30
    )
    assert res.nontorsion_count == 0


def test_intersect_sign_twist_leaves_torus():
    # f meets f(x, -y) where ax + b = 0 and y = 0: never inside the torus.
    f = TorusCurve.from_terms({(1, 0): 1, (0, 1): 1, (0, 0): -1})
    fam = dict(conjugate_family(f, 1).members)
    res = intersect(f, fam["f1"])
    assert res.torsion == ()
    assert res.nontorsion_count == 0


def test_intersect_triangle_pair():
    # x + y + 1 and x - y + 2 meet once in the torus, at (-3/2, 1/2).
    f = TorusCurve.from_terms({(1, 0): 1, (0, 1): 1, (0, 0): 1})
    g = TorusCurve.from_terms({(1, 0): 1, (0, 1): -1, (0, 0): 2})
    res = intersect(f, g)
    assert res.torsion == ()
    assert res.nontorsion_count == 1
    assert toric_bezout_bound(f, g) == 1


def test_intersect_detects_common_component(curve1):
    with pytest.raises(CommonComponentError):
        intersect(curve1, curve1)
    doubled = TorusCurve.from_terms(
        [(e, c * CycloNum.rational(3)) for e, c in curve1.terms]
    )
    with pytest.raises(CommonComponentError):
        intersect(curve1, doubled)


def test_intersect_requires_a_linear_direction():
    f = TorusCurve.from_terms({(0, 0): 1, (2, 0): 1, (0, 2): 1, (2, 2): 1, (1, 1): 3})
    g = TorusCurve.from_terms({(0, 0): 2, (2, 0): 1, (0, 2): -1, (2, 2): 1})
    with pytest.raises(UnsupportedIntersectionError):
        intersect(f, g)


def test_enumerate_gamma1(curve1):
    res = enumerate_torsion(curve1)
    assert res.is_finite
    assert joint_set(res.points) == golden_set(GAMMA1_POINTS, 30)
    for p in res.points:
        assert p.on_curve(curve1)


def test_enumerate_infinite_witness():
    res = enumerate_torsion(graph_curve(mobius_new(1, 0, 0, 1)))
    assert not res.is_finite
    w = res.witness
    assert (w.m, w.n, w.product_form) == (1, 1, False)
    assert w.zeta == RootOfUnity(1, 0)
    # witness structurally contains points
    assert w.contains(TorsionPoint(RootOfUnity(7, 3), RootOfUnity(7, 3)))
    assert not w.contains(TorsionPoint(RootOfUnity(7, 3), RootOfUnity(7, 4)))


def test_enumerate_unit_circle_line():
    f = TorusCurve.from_terms({(1, 0): 1, (0, 1): 1, (0, 0): -1})
    res = enumerate_torsion(f)
    assert joint_set(res.points) == {(6, 1, 5), (6, 5, 1)}
    assert joint_set(brute_force_torsion(f, 12)) == {(6, 1, 5), (6, 5, 1)}


def test_bound_reports(curve1, curve2):
    b1 = bound_torsion(curve1)
    assert (b1.case_tag, b1.minimal_n, b1.total) == ("iv", 5, 18)
    assert dict(b1.members) == {
        "f1": 0, "f2": 0, "f3": 2, "f4": 4, "f5": 4, "f6": 4, "f7": 4,
    }
    b2 = bound_torsion(curve2)
    assert (b2.case_tag, b2.minimal_n, b2.total) == ("iv", 15, 18)

    binom = TorusCurve.from_terms({(1, 1): 1, (0, 0): -2})
    b3 = bound_torsion(binom)
    assert (b3.case_tag, b3.total, b3.infinite) == ("ii", 0, False)

    unit_binom = TorusCurve.from_terms({(1, 1): 1, (0, 0): -zeta(3)})
    b4 = bound_torsion(unit_binom)
    assert b4.case_tag == "ii" and b4.infinite

    i = zeta(4)
    b5 = bound_torsion(graph_curve(mobius_new(1 + 2 * i, 1, 1, 1)))
    assert (b5.case_tag, b5.total) == ("v", 10)


def test_distribute_gamma1(curve1):
    table = distribute(curve1)
    sizes = [len(m.points) for m in table.members]
    assert sizes == [0, 0, 2, 4, 4, 4, 4]
    assert [m.nontorsion for m in table.members] == [0] * 7
    assert table.incidences() == 18
    union = table.union_points()
    assert len(union) == 14
    triples = [p for p in union if table.multiplicity(p) == 3]
    assert joint_set(triples) == golden_set([(3, 9), (18, 24)], 30)


def test_distribute_gamma2(curve2):
    table = distribute(curve2)
    sizes = [len(m.points) for m in table.members]
    assert sizes == [0, 0, 2, 4, 2, 2, 4]
    assert [m.nontorsion for m in table.members] == [0, 0, 0, 0, 2, 2, 0]
    assert table.incidences() == 14
    assert len(table.union_points()) == 14
    assert joint_set(table.union_points()) == golden_set(GAMMA2_POINTS, 60)


def test_distribute_union_matches_enumeration(curve1, curve2):
    for f in (curve1, curve2):
        table = distribute(f)
        res = enumerate_torsion(f)
        assert joint_set(table.union_points()) == joint_set(res.points)


def test_distribute_rejects_binomials():
    with pytest.raises(ValueError):
        distribute(TorusCurve.from_terms({(1, 1): 1, (0, 0): -zeta(3)}))
    with pytest.raises(ValueError):
        distribute(TorusCurve.from_terms({(1, 1): 1, (0, 0): -2}))


def test_brute_force_gamma1(curve1):
    points = brute_force_torsion(curve1, 60)
    assert joint_set(points) == golden_set(GAMMA1_POINTS, 30)


def test_brute_force_truncates_binomial_family():
    # xy = zeta_3: pairs of common order n require 3 | n, so the points of
    # common order <= 12 are x ranging over the 12th and 9th roots of unity.
    f = TorusCurve.from_terms({(1, 1): 1, (0, 0): -zeta(3)})
    expected = set()
    for n in (3, 6, 9, 12):
        for j in range(n):
            x = RootOfUnity(n, j)
            y = RootOfUnity(3, 1) * x.inverse()
            expected.add(TorsionPoint(x, y).joint())
    assert len(expected) == 18
    assert joint_set(brute_force_torsion(f, 12)) == expected


def test_brute_force_double_scan_path():
    # no linear direction: falls back to the full two-variable scan
    f = TorusCurve.from_terms({(0, 0): 1, (2, 0): 1, (0, 2): 1, (2, 2): 1, (1, 1): 3})
    pts = brute_force_torsion(f, 8)
    for p in pts:
        assert p.on_curve(f)
    # (x, y) = (i, i) gives 1 - 1 - 1 + 1 + 3(i*i) = -3 != 0; spot check a few
    assert TorsionPoint(RootOfUnity(4, 1), RootOfUnity(4, 1)) not in pts
    # torus symmetry: the curve is symmetric in x <-> y
    assert joint_set(pts) == {(n, k, j) for n, j, k in joint_set(pts)}


def test_enumerate_translate_invariance(curve1):
    z1, z2 = RootOfUnity(6, 1), RootOfUnity(4, 3)
    from torusroots.curves import translate_curve

    moved = translate_curve(curve1, z1, z2)
    base = enumerate_torsion(curve1)
    shifted = enumerate_torsion(moved)
    want = {p.shifted(z1, z2).joint() for p in base.points}
    assert joint_set(shifted.points) == want


def test_enumerate_translate_invariance_inflated_levels():
    # translating by orders 8 and 12 inflates the working level to 120 and
    # forces a nontrivial reverse translate in the search
    rng = random.Random(4040)
    from torusroots.curves import translate_curve

    for _ in range(4):
        f = _random_rank2_graph_curve(rng, levels=(5,))
        base = enumerate_torsion(f)
        z1, z2 = RootOfUnity(8, 3), RootOfUnity(12, 7)
        moved = translate_curve(f, z1, z2)
        shifted = enumerate_torsion(moved)
        want = {p.shifted(z1, z2).joint() for p in base.points}
        assert joint_set(shifted.points) == want


def test_enumeration_counts_within_bounds_random():
    rng = random.Random(99)
    for _ in range(15):
        f = _random_rank2_graph_curve(rng)
        res = enumerate_torsion(f)
        bound = bound_torsion(f)
        assert res.is_finite
        assert len(res.points) <= bound.total


def _random_rank2_graph_curve(rng, levels=(1, 3, 4, 5)):
    while True:
        level = rng.choice(levels)
        coords = lambda: tuple(
            Fraction(rng.randint(-2, 2)) for _ in range(euler_phi(level))
        )
        vals = [CycloNum(level, coords()) for _ in range(4)]
        a, b, c, d = vals
        if (a * d - b * c).is_zero():
            continue
        f = graph_curve(mobius_new(a, b, c, d))
        if difference_lattice(f).rank == 2:
            return f


def test_oracle_equivalence_random_sample():
    rng = random.Random(42)
    for _ in range(8):
        f = _random_rank2_graph_curve(rng)
        res = enumerate_torsion(f)
        oracle = brute_force_torsion(f, 240)
        assert joint_set(res.points) == joint_set(oracle)


def test_conjugacy_witness_trichotomy():
    assert conjugacy_witness(5) == (1, True)
    assert conjugacy_witness(6) == (-1, True)
    assert conjugacy_witness(4) == (-1, False)
    with pytest.raises(ValueError):
        conjugacy_witness(0)
    # the naive negative fails at 2 mod 4: -zeta_6 has order 3
    naive = RootOfUnity(2, 1) * RootOfUnity(6, 1)
    assert naive.order == 3
    # while the corrected image is primitive
    assert conjugacy_witness_image(6).order == 6


def test_conjugacy_witness_primitive_small_levels():
    # exact minimal-polynomial check: the image is a root of the level's
    # cyclotomic polynomial and of no smaller one
    for n in range(1, 31):
        img = conjugacy_witness_image(n)
        assert img.order == n
        value = img.value()
        poly = cyclotomic_polynomial(n)
        acc = CycloNum.rational(0)
        for coeff in reversed(poly):
            acc = acc * value + CycloNum.rational(coeff)
        assert acc.is_zero()


def test_laurent_exponents_handled():
    # x^-1 + y - 1 has the same torus points as 1 - x + xy
    f = TorusCurve.from_terms({(-1, 0): 1, (0, 1): 1, (0, 0): -1})
    res = enumerate_torsion(f)
    oracle = brute_force_torsion(f, 24)
    assert joint_set(res.points) == joint_set(oracle)
    assert res.points
    for p in res.points:
        assert p.on_curve(f)


def test_two_term_nonunit_curves_are_finite_and_empty():
    # scalings or inversions by a non-root of unity carry no torsion at all
    for m in (mobius_new(2, 0, 0, 1), mobius_new(0, 3, 1, 0)):
        res = enumerate_torsion(graph_curve(m))
        assert res.is_finite and res.points == ()
        assert brute_force_torsion(graph_curve(m), 20) == ()


def test_torsion_point_ordering():
    pts = [
        TorsionPoint(RootOfUnity(30, 3), RootOfUnity(30, 9)),
        TorsionPoint(RootOfUnity(1, 0), RootOfUnity(1, 0)),
        TorsionPoint(RootOfUnity(30, 1), RootOfUnity(30, 2)),
    ]
    ordered = sorted(pts, key=TorsionPoint.sort_key)
    assert ordered[0].joint() == (1, 0, 0)
    assert ordered[1].joint() == (10, 1, 3)
    assert ordered[2].joint() == (30, 1, 2)
