"""Lattice geometry of exponent vectors: supports, difference lattices,
Newton polytopes, Minkowski sums and the toric Bezout bound.

All arithmetic is exact: vertices are integer points, areas are Fractions.
Areas follow the Euclidean convention (shoelace over two), so the unit
square has area 1 and a pair of bilinear curves gets the bound
9 - 1 - 4 = 4 from their doubled twists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "LatticeInfo",
    "LatticePolytope",
    "support",
    "difference_lattice",
    "newton",
    "minkowski_sum",
    "area",
    "toric_bezout_bound",
]

Point = tuple[int, int]


def support(curve) -> frozenset[Point]:
    """Exponent pairs carrying a nonzero coefficient."""
    return frozenset(e for e, _ in curve.terms)


@dataclass(frozen=True)
class LatticeInfo:
    """Rank and basis of the group generated by support differences."""

    rank: int
    full: bool
    basis: tuple[Point, ...]


def difference_lattice(curve) -> LatticeInfo:
    """Lattice generated by pairwise differences of the support.

    Differences are folded into a Hermite-form basis (a, b), (0, w) by
    Euclidean steps on first components, so rank, fullness and a canonical
    basis come out of integer arithmetic alone.
    """
    pts = sorted(support(curve))
    if len(pts) <= 1:
        return LatticeInfo(0, False, ())
    base = pts[0]
    u: tuple[int, int] | None = None
    w = 0
    for p in pts[1:]:
        x, y = p[0] - base[0], p[1] - base[1]
        if u is None:
            if x:
                u = (x, y)
            else:
                w = math.gcd(w, y)
            continue
        a, b = u
        while x:
            q = a // x
            a, b, x, y = x, y, a - q * x, b - q * y
        u = (a, b)
        w = math.gcd(w, abs(y))
    if u is None:
        return (
            LatticeInfo(1, False, ((0, w),)) if w else LatticeInfo(0, False, ())
        )
    a, b = u
    if a < 0:
        a, b = -a, -b
    if w == 0:
        return LatticeInfo(1, False, ((a, b),))
    b %= w
    return LatticeInfo(2, a * w == 1, ((a, b), (0, w)))


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points; vertices counterclockwise, no three
    collinear, starting at the lexicographically smallest vertex."""

    vertices: tuple[Point, ...]

    @staticmethod
    def hull(points) -> "LatticePolytope":
        pts = sorted(set(tuple(p) for p in points))
        if not pts:
            raise ValueError("hull of an empty point set")
        if len(pts) == 1:
            return LatticePolytope((pts[0],))
        lower: list[Point] = []
        for p in pts:
            while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
                lower.pop()
            lower.append(p)
        upper: list[Point] = []
        for p in reversed(pts):
            while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= 0:
                upper.pop()
            upper.append(p)
        verts = lower[:-1] + upper[:-1]
        if len(verts) == 2 and verts[0] == verts[1]:
            verts = verts[:1]
        start = verts.index(min(verts))
        return LatticePolytope(tuple(verts[start:] + verts[:start]))

    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3


def newton(curve) -> LatticePolytope:
    """Newton polytope: convex hull of the support."""
    return LatticePolytope.hull(support(curve))


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    """Minkowski sum of convex polygons via the hull of vertex sums."""
    sums = [
        (a[0] + b[0], a[1] + b[1]) for a in p.vertices for b in q.vertices
    ]
    return LatticePolytope.hull(sums)


def area(p: LatticePolytope) -> Fraction:
    """Euclidean area by the shoelace formula; exact rational."""
    verts = p.vertices
    if len(verts) < 3:
        return Fraction(0)
    twice = 0
    for i, (x0, y0) in enumerate(verts):
        x1, y1 = verts[(i + 1) % len(verts)]
        twice += x0 * y1 - x1 * y0
    return Fraction(abs(twice), 2)


def toric_bezout_bound(f, g) -> Fraction:
    """Upper bound for the number of common torus zeros of coprime curves:
    area of the Minkowski sum of the Newton polytopes minus both areas."""
    pf, pg = newton(f), newton(g)
    return area(minkowski_sum(pf, pg)) - area(pf) - area(pg)
