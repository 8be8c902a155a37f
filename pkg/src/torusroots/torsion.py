"""Torsion points (pairs of roots of unity) on curves in the two-torus.

The pipeline for a rank-2 curve: move to a translate of minimal coefficient
conductor, build the conjugate family, intersect the curve with each family
member exactly, and take the union of the unity points found.  Every torsion
point of the curve lies on some family member, so the union is complete; the
per-member counts also yield the uniform bound report (18 in the sign/square
cases, 10 in the conjugation case) and the distribution table.

Curves whose support spans a rank-deficient lattice are binomial families:
they carry infinitely many torsion points exactly when the associated
one-variable polynomial has a root of unity, and none otherwise.

An independent brute-force oracle scans all pairs of roots of unity up to a
given common order; it shares nothing with the family pipeline beyond exact
coefficient arithmetic.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .cyclotomic import (
    CycloNum,
    RootOfUnity,
    as_root_of_unity,
    conductor_reduce,
    cyclotomic_polynomial,
    euler_phi,
    _EPS,
)
from .curves import (
    ConjugateFamily,
    TorusCurve,
    conjugate_family,
    minimal_translate,
)
from ._unipoly import UPoly
from . import polytope

__all__ = [
    "TorsionPoint",
    "InfiniteWitness",
    "EnumerationResult",
    "BoundReport",
    "MemberDistribution",
    "DistributionTable",
    "IntersectionResult",
    "CommonComponentError",
    "UnsupportedIntersectionError",
    "intersect",
    "enumerate_torsion",
    "bound_torsion",
    "distribute",
    "brute_force_torsion",
    "ConjugacyWitness",
    "conjugacy_witness",
    "conjugacy_witness_image",
]


class CommonComponentError(ArithmeticError):
    """The two curves share a component, so their intersection is infinite."""


class UnsupportedIntersectionError(ValueError):
    """Neither curve is linear in either variable; the exact point counter
    needs one curve of degree 1 (with unit content) in some direction."""


NOTE_EXCLUDED = (
    "members f1 and f2 meet the curve only outside the torus and are "
    "excluded from the total"
)
NOTE_INPUT_FIELD = (
    "coefficients built from roots of unity always lie in the abelian "
    "closure of Q; inputs outside it (where a plain Bezout bound of 4 "
    "applies) cannot be written in this input language"
)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


@dataclass(frozen=True)
class TorsionPoint:
    """A pair of roots of unity, comparable through its joint form
    (n, j, k) with n the lcm of the coordinate orders."""

    x: RootOfUnity
    y: RootOfUnity

    def joint(self) -> tuple[int, int, int]:
        n = _lcm(self.x.order, self.y.order)
        return (n, self.x.exponent_at(n), self.y.exponent_at(n))

    def sort_key(self) -> tuple[int, int, int]:
        return self.joint()

    def shifted(self, z1: RootOfUnity, z2: RootOfUnity) -> "TorsionPoint":
        return TorsionPoint(self.x * z1, self.y * z2)

    def transposed(self) -> "TorsionPoint":
        return TorsionPoint(self.y, self.x)

    def on_curve(self, f: TorusCurve) -> bool:
        return f.evaluate(self.x.value(), self.y.value()).is_zero()

    def __repr__(self) -> str:
        n, j, k = self.joint()
        return f"TorsionPoint(zeta_{n}^{j}, zeta_{n}^{k})"


@dataclass(frozen=True)
class InfiniteWitness:
    """A sub-torus translate contained in the curve: x^m y^n = zeta when
    product_form, else x^m = zeta y^n."""

    m: int
    n: int
    product_form: bool
    zeta: RootOfUnity

    def contains(self, p: TorsionPoint) -> bool:
        if self.product_form:
            return (p.x ** self.m) * (p.y ** self.n) == self.zeta
        return p.x ** self.m == self.zeta * (p.y ** self.n)


@dataclass(frozen=True)
class EnumerationResult:
    points: tuple[TorsionPoint, ...] | None
    witness: InfiniteWitness | None

    @property
    def is_finite(self) -> bool:
        return self.points is not None


@dataclass(frozen=True)
class BoundReport:
    case_tag: str
    minimal_n: int
    members: tuple[tuple[str, int], ...]
    total: int
    infinite: bool
    notes: tuple[str, ...]


@dataclass(frozen=True)
class MemberDistribution:
    label: str
    points: tuple[TorsionPoint, ...]
    nontorsion: int


@dataclass(frozen=True)
class DistributionTable:
    case_tag: str
    minimal_n: int
    members: tuple[MemberDistribution, ...]

    def union_points(self) -> tuple[TorsionPoint, ...]:
        seen = {}
        for m in self.members:
            for p in m.points:
                seen[p.joint()] = p
        return tuple(seen[k] for k in sorted(seen))

    def incidences(self) -> int:
        return sum(len(m.points) for m in self.members)

    def multiplicity(self, p: TorsionPoint) -> int:
        return sum(1 for m in self.members if p in m.points)


class IntersectionResult(NamedTuple):
    torsion: tuple[TorsionPoint, ...]
    nontorsion_count: int


# ---------------------------------------------------------------------------
# exact curve/curve intersection


def _laurent_normalize(f: TorusCurve) -> TorusCurve:
    mi = min(i for (i, _), _ in f.terms)
    mj = min(j for (_, j), _ in f.terms)
    if mi == 0 and mj == 0:
        return f
    return TorusCurve.from_terms(
        [((i - mi, j - mj), c) for (i, j), c in f.terms]
    )


def _y_polys(f: TorusCurve) -> list[UPoly]:
    """Coefficients of f as a polynomial in y, each a polynomial in x."""
    deg_y = max(j for (_, j), _ in f.terms)
    rows: list[dict[int, CycloNum]] = [dict() for _ in range(deg_y + 1)]
    for (i, j), c in f.terms:
        rows[j][i] = c
    zero = CycloNum.rational(0, f.level)
    out = []
    for row in rows:
        if not row:
            out.append(UPoly(f.level, []))
        else:
            top = max(row)
            out.append(UPoly(f.level, [row.get(i, zero) for i in range(top + 1)]))
    return out


def _graph_direction(f: TorusCurve, g: TorusCurve):
    """Arrange the pair so the first curve has y-degree 1 with coprime
    coefficient polynomials; returns (F, G, transposed, fy)."""
    for transposed in (False, True):
        for swapped in (False, True):
            a, b = (g, f) if swapped else (f, g)
            if transposed:
                a, b = a.transpose(), b.transpose()
            an, bn = _laurent_normalize(a), _laurent_normalize(b)
            fy = _y_polys(an)
            if len(fy) == 2 and fy[0].gcd(fy[1]).degree == 0:
                return an, bn, transposed, fy
    raise UnsupportedIntersectionError(
        "exact intersection needs one curve linear (degree 1, unit content) "
        "in x or in y"
    )


def intersect(f: TorusCurve, g: TorusCurve) -> IntersectionResult:
    """Common torus zeros of two coprime curves: the pairs of roots of
    unity exactly, plus the count of remaining torus intersection points.

    Eliminating y along the linear curve gives a one-variable resultant
    D(x); its distinct roots off the loci x = 0, y = 0 and y undefined are
    in bijection with the torus intersection points, and its roots of unity
    are located exactly, so both outputs are exact.
    """
    fcur, gcur, transposed, fy = _graph_direction(f, g)
    f0, f1 = fy
    gk = _y_polys(gcur)
    dg = len(gk) - 1
    neg_f0 = -f0
    pow0 = [UPoly.from_coeffs([1])]
    pow1 = [UPoly.from_coeffs([1])]
    for _ in range(dg):
        pow0.append(pow0[-1] * neg_f0)
        pow1.append(pow1[-1] * f1)
    res = UPoly(fcur.level, [])
    for k in range(dg + 1):
        if gk[k].is_zero():
            continue
        res = res + gk[k] * pow0[k] * pow1[dg - k]
    if res.is_zero():
        raise CommonComponentError(
            "the curves share a component; the intersection is not finite"
        )
    sqfree = res.squarefree_part()
    x_poly = UPoly.from_coeffs([0, 1])
    shared = sqfree.gcd(x_poly * f0 * f1)
    torus_count = sqfree.degree - shared.degree

    points: list[TorsionPoint] = []
    for root in res.unity_roots():
        x0 = root.value()
        f1v = f1.evaluate(x0)
        if f1v.is_zero():
            continue
        f0v = f0.evaluate(x0)
        if f0v.is_zero():
            continue  # the matching y is 0, outside the torus
        yroot = as_root_of_unity(-(f0v / f1v))
        if yroot is None:
            continue
        p = TorsionPoint(root, yroot)
        points.append(p.transposed() if transposed else p)
    points.sort(key=TorsionPoint.sort_key)
    nontorsion = torus_count - len(points)
    if nontorsion < 0:
        raise AssertionError("found more unity points than torus points")
    return IntersectionResult(tuple(points), nontorsion)


# ---------------------------------------------------------------------------
# binomial (rank-deficient) curves


def _binomial_witness(f: TorusCurve, info) -> InfiniteWitness | None:
    """Witness of an infinite family on a rank-1 curve, if there is one.

    The support lies on a line with direction v, so f is a monomial times
    h(x^v0 y^v1); the curve contains the sub-torus translate
    {x^v0 y^v1 = t} for each root t of h, and such a translate carries
    torsion points exactly when t is a root of unity.
    """
    v = info.basis[0]
    base = f.terms[0][0]
    coeffs: dict[int, CycloNum] = {}
    for (i, j), c in f.terms:
        di, dj = i - base[0], j - base[1]
        k = di // v[0] if v[0] else dj // v[1]
        if (di, dj) != (k * v[0], k * v[1]):
            raise AssertionError("support point off the lattice line")
        coeffs[k] = c
    low = min(coeffs)
    zero = CycloNum.rational(0, f.level)
    h = UPoly(
        f.level,
        [coeffs.get(k, zero) for k in range(low, max(coeffs) + 1)],
    )
    roots = h.unity_roots()
    if not roots:
        return None
    t = min(roots, key=RootOfUnity.sort_key)
    gv = math.gcd(abs(v[0]), abs(v[1]))
    p, q = v[0] // gv, v[1] // gv
    zeta = RootOfUnity(t.order * gv, t.exponent)  # a gv-th root of t
    if q >= 0:
        return InfiniteWitness(p, q, True, zeta)
    return InfiniteWitness(p, -q, False, zeta)


# ---------------------------------------------------------------------------
# the pipeline


def _family_results(
    base: TorusCurve, family: ConjugateFamily, threads: int
) -> list[tuple[str, IntersectionResult]]:
    def one(item):
        label, member = item
        return label, intersect(base, member)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, family.members))
    return [one(item) for item in family.members]


def _prepare(f: TorusCurve, search_modulus, threads):
    mt = minimal_translate(f, search_modulus)
    family = conjugate_family(mt.curve, mt.conductor)
    results = _family_results(mt.curve, family, threads)
    return mt, family, results


def enumerate_torsion(
    f: TorusCurve,
    *,
    search_modulus: int | None = None,
    threads: int = 1,
) -> EnumerationResult:
    """Complete enumeration of the pairs of roots of unity on the curve,
    or a witness that there are infinitely many."""
    info = polytope.difference_lattice(f)
    if info.rank == 0:
        return EnumerationResult((), None)
    if info.rank == 1:
        witness = _binomial_witness(f, info)
        if witness is None:
            return EnumerationResult((), None)
        return EnumerationResult(None, witness)
    mt, _, results = _prepare(f, search_modulus, threads)
    z1i, z2i = mt.z1.inverse(), mt.z2.inverse()
    collected: dict[tuple[int, int, int], TorsionPoint] = {}
    for _, res in results:
        for p in res.torsion:
            q = p.shifted(z1i, z2i)
            collected[q.joint()] = q
    out = []
    for key in sorted(collected):
        p = collected[key]
        if not p.on_curve(f):
            raise AssertionError("enumerated point fails exact re-check")
        out.append(p)
    return EnumerationResult(tuple(out), None)


def _bidegree(f: TorusCurve) -> tuple[int, int]:
    fn = _laurent_normalize(f)
    return (
        max(i for (i, _), _ in fn.terms),
        max(j for (_, j), _ in fn.terms),
    )


def _coefficient_conductor(f: TorusCurve) -> int:
    lev = 1
    for _, c in f.terms:
        lev = _lcm(lev, conductor_reduce(c).level)
    return lev


def bound_torsion(
    f: TorusCurve, *, search_modulus: int | None = None
) -> BoundReport:
    """Uniform bound on the number of torsion points, by cases.

    Binomial curves: infinite flag or 0.  Sign/square families: 2 for the
    double sign twist plus a toric Bezout bound for each squared twist,
    2 + 4 * 4 = 18 for a graph curve.  Conjugation families (conductor
    divisible by 4): five counted members with plain bidegree bounds,
    5 * 2 = 10 for a graph curve.
    """
    info = polytope.difference_lattice(f)
    if info.rank <= 1:
        witness = _binomial_witness(f, info) if info.rank == 1 else None
        return BoundReport(
            case_tag="ii",
            minimal_n=_coefficient_conductor(f),
            members=(),
            total=0,
            infinite=witness is not None,
            notes=(NOTE_INPUT_FIELD,),
        )
    mt = minimal_translate(f, search_modulus)
    family = conjugate_family(mt.curve, mt.conductor)
    dx, dy = _bidegree(mt.curve)
    bidegree_bound = 2 * dx * dy
    members: list[tuple[str, int]] = []
    for label, member in family.members:
        if label in ("f1", "f2"):
            members.append((label, 0))
        elif family.case_tag in ("iii", "iv") and label != "f3":
            bound = polytope.toric_bezout_bound(mt.curve, member)
            members.append((label, math.floor(bound)))
        else:
            members.append((label, bidegree_bound))
    total = sum(b for _, b in members)
    return BoundReport(
        case_tag=family.case_tag,
        minimal_n=mt.conductor,
        members=tuple(members),
        total=total,
        infinite=False,
        notes=(NOTE_EXCLUDED, NOTE_INPUT_FIELD),
    )


def distribute(
    f: TorusCurve,
    *,
    search_modulus: int | None = None,
    threads: int = 1,
) -> DistributionTable:
    """Which torsion points lie on which family member, with the count of
    non-torsion torus intersections per member."""
    info = polytope.difference_lattice(f)
    if info.rank < 2:
        if info.rank == 1 and _binomial_witness(f, info) is not None:
            raise ValueError("the curve carries an infinite torsion family")
        raise ValueError("no conjugate family exists for a binomial curve")
    mt, _, results = _prepare(f, search_modulus, threads)
    z1i, z2i = mt.z1.inverse(), mt.z2.inverse()
    members = []
    for label, res in results:
        pts = sorted(
            (p.shifted(z1i, z2i) for p in res.torsion),
            key=TorsionPoint.sort_key,
        )
        members.append(MemberDistribution(label, tuple(pts), res.nontorsion_count))
    return DistributionTable(
        case_tag=_case_of(mt.conductor),
        minimal_n=mt.conductor,
        members=tuple(members),
    )


def _case_of(n: int) -> str:
    if n == 1:
        return "iii"
    return "iv" if n % 2 else "v"


# ---------------------------------------------------------------------------
# brute-force oracle


def brute_force_torsion(
    f: TorusCurve, max_order: int, *, threads: int = 1
) -> tuple[TorsionPoint, ...]:
    """All pairs (zeta_n^j, zeta_n^k) on the curve with common order
    n <= max_order; exhaustive, exact, and independent of the family
    pipeline.

    A float prefilter may discard a candidate only when a rigorous error
    bound proves the exact value nonzero; every reported point is verified
    exactly.
    """
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    fn = _laurent_normalize(f)
    for transposed in (False, True):
        cur = fn.transpose() if transposed else fn
        ys = _y_polys(cur)
        if len(ys) == 2 and ys[0].gcd(ys[1]).degree == 0:
            scan = _MarginalScan(cur, ys, max_order)
            pts = _scan_orders(scan.order, max_order, threads)
            if transposed:
                pts = [p.transposed() for p in pts]
            return tuple(sorted(pts, key=TorsionPoint.sort_key))
    scan = _DoubleScan(fn)
    pts = _scan_orders(scan.order, max_order, threads)
    return tuple(sorted(pts, key=TorsionPoint.sort_key))


def _scan_orders(worker, max_order: int, threads: int) -> list[TorsionPoint]:
    # Per-order workers are pure; an ordered map keeps the output identical
    # for every thread count.
    orders = range(1, max_order + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(worker, orders))
    else:
        chunks = [worker(n) for n in orders]
    return [p for chunk in chunks for p in chunk]


def _horner(coeffs: list[complex], z: complex) -> complex:
    val = 0j
    for c in reversed(coeffs):
        val = val * z + c
    return val


class _MarginalScan:
    """Scan x of each order: y is a rational function of x on a curve of
    y-degree 1, so this is exhaustive."""

    def __init__(self, cur: TorusCurve, ys: list[UPoly], max_order: int):
        self.cur = cur
        self.f0, self.f1 = ys
        self.c0, w0 = self.f0._complex_coeffs()
        self.c1, w1 = self.f1._complex_coeffs()
        phi = euler_phi(cur.level)
        self.e0 = (len(self.c0) + 1) * (phi + 8) * _EPS * max(w0, 1e-300)
        self.e1 = (len(self.c1) + 1) * (phi + 8) * _EPS * max(w1, 1e-300)
        self.max_order = max_order
        # distinct admissible roots of unity are at least 1/max_order^2
        # apart in angle, so a guess is safe only below half that gap
        self.angle_gate = 0.5 / (max_order * max_order)

    def order(self, n: int) -> list[TorsionPoint]:
        out: list[TorsionPoint] = []
        for k in range(n):
            if n > 1 and math.gcd(k, n) != 1:
                continue
            z = cmath.rect(1.0, 2.0 * math.pi * k / n)
            v0 = _horner(self.c0, z)
            v1 = _horner(self.c1, z)
            if abs(v1) > self.e1:
                yv = -v0 / v1
                ey = (self.e0 + abs(yv) * self.e1) / (abs(v1) - self.e1)
                if abs(abs(yv) - 1.0) > ey:
                    continue
                if ey < self.angle_gate:
                    guess = Fraction(
                        cmath.phase(yv) / (2.0 * math.pi)
                    ).limit_denominator(self.max_order)
                    yroot = RootOfUnity(guess.denominator, guess.numerator)
                    if _lcm(n, yroot.order) > self.max_order:
                        continue
                    xroot = RootOfUnity(n, k)
                    if self.cur.evaluate(xroot.value(), yroot.value()).is_zero():
                        out.append(TorsionPoint(xroot, yroot))
                    continue
            # Ambiguous floats: settle exactly.
            xroot = RootOfUnity(n, k)
            x0 = xroot.value()
            f1v = self.f1.evaluate(x0)
            if f1v.is_zero():
                continue  # unit content: f0(x0) != 0, no point over x0
            yroot = as_root_of_unity(-(self.f0.evaluate(x0) / f1v))
            if yroot is not None and _lcm(n, yroot.order) <= self.max_order:
                out.append(TorsionPoint(xroot, yroot))
        return out


class _DoubleScan:
    """Full scan over pairs (j, k) of exact common order n; used when the
    curve has no linear direction."""

    def __init__(self, fn: TorusCurve):
        self.fn = fn
        self.terms = [(i, j, c.complex_value()) for (i, j), c in fn.terms]
        weight = sum(c.abs_sum() for _, c in fn.terms)
        phi = euler_phi(fn.level)
        self.err = (len(self.terms) + 1) * (phi + 16) * _EPS * max(weight, 1e-300)

    def order(self, n: int) -> list[TorsionPoint]:
        out: list[TorsionPoint] = []
        zs = [cmath.rect(1.0, 2.0 * math.pi * t / n) for t in range(n)]
        for j in range(n):
            for k in range(n):
                if n > 1 and math.gcd(math.gcd(j, k), n) != 1:
                    continue
                val = sum(
                    c * zs[(i * j) % n] * zs[(jj * k) % n]
                    for i, jj, c in self.terms
                )
                if abs(val) > self.err:
                    continue
                xroot, yroot = RootOfUnity(n, j), RootOfUnity(n, k)
                if self.fn.evaluate(xroot.value(), yroot.value()).is_zero():
                    out.append(TorsionPoint(xroot, yroot))
        return out


# ---------------------------------------------------------------------------
# conjugacy witness


class ConjugacyWitness(NamedTuple):
    sign: int
    square: bool


def conjugacy_witness(n: int) -> ConjugacyWitness:
    """Galois-conjugacy witness for a primitive n-th root of unity.

    n odd: conjugate to its square.  n = 2 mod 4: conjugate to minus its
    square.  n divisible by 4: conjugate to its negative.  In every case
    the image is again a primitive n-th root of unity; note that for
    n = 2 mod 4 the bare negative fails (it has order n/2), which is why
    the trichotomy is split this way.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % 2 == 1:
        return ConjugacyWitness(1, True)
    if n % 4 == 2:
        return ConjugacyWitness(-1, True)
    return ConjugacyWitness(-1, False)


def conjugacy_witness_image(n: int) -> RootOfUnity:
    """The witness applied to zeta_n, as a canonical root of unity."""
    sign, square = conjugacy_witness(n)
    image = RootOfUnity(n, 2 if square else 1)
    if sign == -1:
        image = RootOfUnity(2, 1) * image
    return image


def witness_minimal_polynomial(n: int) -> tuple[int, ...]:
    """Minimal polynomial of the witness image: the cyclotomic polynomial
    of the image's order."""
    return cyclotomic_polynomial(conjugacy_witness_image(n).order)
