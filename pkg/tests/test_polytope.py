import random
from fractions import Fraction

from torusroots.curves import TorusCurve, graph_curve, mobius_new
from torusroots.polytope import (
    LatticePolytope,
    area,
    difference_lattice,
    minkowski_sum,
    newton,
    support,
    toric_bezout_bound,
)


def curve(terms) -> TorusCurve:
    return TorusCurve.from_terms(terms)


def test_support_examples(curve1):
    assert support(curve1) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert support(curve({(1, 1): 1, (0, 0): -2})) == {(1, 1), (0, 0)}
    assert support(curve({(0, 0): 1})) == {(0, 0)}


def test_difference_lattice(curve1):
    info = difference_lattice(curve1)
    assert info.rank == 2 and info.full

    binom = difference_lattice(curve({(1, 1): 1, (0, 0): 3}))
    assert binom.rank == 1
    assert binom.basis == ((1, 1),)

    const = difference_lattice(curve({(2, 3): 5}))
    assert const.rank == 0

    # index-2 sublattice: not full
    coarse = difference_lattice(curve({(0, 0): 1, (2, 0): 1, (0, 2): 1}))
    assert coarse.rank == 2 and not coarse.full


def test_hull_shapes():
    tri = newton(curve({(1, 0): 1, (0, 1): 1, (0, 0): 1}))
    assert set(tri.vertices) == {(0, 0), (1, 0), (0, 1)}
    assert area(tri) == Fraction(1, 2)

    sq = newton(curve({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}))
    assert area(sq) == 1

    # collinear interior points are pruned
    seg = LatticePolytope.hull([(0, 0), (1, 1), (2, 2), (3, 3)])
    assert seg.vertices == ((0, 0), (3, 3))
    assert area(seg) == 0

    # edge-interior points do not appear as vertices
    hull = LatticePolytope.hull([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
    assert set(hull.vertices) == {(0, 0), (2, 0), (2, 2), (0, 2)}


def test_minkowski_squares():
    unit = LatticePolytope.hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    double = LatticePolytope.hull([(0, 0), (2, 0), (0, 2), (2, 2)])
    total = minkowski_sum(unit, double)
    assert area(total) == 9
    assert set(total.vertices) == {(0, 0), (3, 0), (3, 3), (0, 3)}


def test_minkowski_homothety_law():
    rng = random.Random(5)
    for _ in range(25):
        pts = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(rng.randint(1, 7))]
        p = LatticePolytope.hull(pts)
        assert area(minkowski_sum(p, p)) == 4 * area(p)
        tripled = minkowski_sum(minkowski_sum(p, p), p)
        assert area(tripled) == 9 * area(p)


def test_toric_bound_examples(curve1):
    doubled = curve1.substitute(1, 1, double=True)
    assert toric_bezout_bound(curve1, doubled) == 4

    f = curve({(1, 0): 1, (0, 1): 1, (0, 0): 1})
    g = curve({(1, 0): 1, (0, 1): -1, (0, 0): 2})
    assert toric_bezout_bound(f, g) == 1

    seg1 = curve({(1, 0): 1, (0, 1): -1})
    seg2 = curve({(1, 0): 1, (0, 1): -2})
    assert toric_bezout_bound(seg1, seg2) == 0


def test_toric_bound_symmetric_nonnegative():
    rng = random.Random(9)
    for _ in range(40):
        terms_a = {
            (rng.randint(0, 2), rng.randint(0, 2)): rng.randint(1, 3)
            for _ in range(rng.randint(1, 5))
        }
        terms_b = {
            (rng.randint(0, 2), rng.randint(0, 2)): rng.randint(1, 3)
            for _ in range(rng.randint(1, 5))
        }
        f, g = curve(terms_a), curve(terms_b)
        bound = toric_bezout_bound(f, g)
        assert bound == toric_bezout_bound(g, f)
        assert bound >= 0


def test_graph_curve_lattice_always_full():
    rng = random.Random(13)
    for _ in range(30):
        while True:
            vals = [rng.randint(-3, 3) for _ in range(4)]
            a, b, c, d = vals
            if all(vals) and a * d - b * c != 0:
                break
        f = graph_curve(mobius_new(a, b, c, d))
        info = difference_lattice(f)
        assert info.rank == 2 and info.full
