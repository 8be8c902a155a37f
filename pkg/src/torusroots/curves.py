"""Mobius maps with cyclotomic entries and their graph curves in the
two-torus, plus the translate and conjugate-family machinery that reduces
torsion enumeration to finitely many curve intersections.

A graph curve is the zero set of f = (a x + b) - (c x + d) y, whose torus
points are exactly the pairs (z, m(z)) for the map m: z -> (a z + b)/(c z + d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import cyclotomic
from .cyclotomic import (
    CycloNum,
    GaloisMap,
    LevelCapError,
    RootOfUnity,
    as_root_of_unity,
    conductor_reduce,
    divisors,
    galois_apply,
    _galois_raw,
)
from . import polytope

__all__ = [
    "MobiusMap",
    "mobius_new",
    "preserves_roots_of_unity",
    "TorusCurve",
    "graph_curve",
    "translate_curve",
    "MinimalTranslate",
    "minimal_translate",
    "ConjugateFamily",
    "conjugate_family",
    "RankOneError",
]


class RankOneError(ValueError):
    """The support spans a rank-deficient lattice; use the binomial-family
    handling (infinite sub-torus translate or empty) instead of translates."""


def _cyc(value) -> CycloNum:
    if isinstance(value, CycloNum):
        return value
    return CycloNum.rational(Fraction(value))


@dataclass(frozen=True, eq=False)
class MobiusMap:
    """Invertible map z -> (a z + b)/(c z + d), entries normalized so the
    first nonzero of (a, b, c, d) is 1."""

    a: CycloNum
    b: CycloNum
    c: CycloNum
    d: CycloNum

    def entries(self) -> tuple[CycloNum, CycloNum, CycloNum, CycloNum]:
        return (self.a, self.b, self.c, self.d)

    def determinant(self) -> CycloNum:
        return self.a * self.d - self.b * self.c

    def apply(self, z: CycloNum) -> CycloNum:
        den = self.c * z + self.d
        if den.is_zero():
            raise ZeroDivisionError("point maps to infinity")
        return (self.a * z + self.b) / den

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return mobius_new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries(), other.entries()))

    def __repr__(self) -> str:
        return f"MobiusMap(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"


def mobius_new(a, b, c, d) -> MobiusMap:
    """Construct a normalized Mobius map; rejects zero determinant."""
    a, b, c, d = _cyc(a), _cyc(b), _cyc(c), _cyc(d)
    if (a * d - b * c).is_zero():
        raise ValueError("zero determinant: not a Mobius map")
    lead = next(x for x in (a, b, c, d) if not x.is_zero())
    inv = lead.inverse()
    return MobiusMap(a * inv, b * inv, c * inv, d * inv)


def preserves_roots_of_unity(m: MobiusMap) -> bool:
    """True iff the map sends the set of all roots of unity onto itself,
    i.e. it is a unit scaling z -> u z or a scaled inversion z -> u / z."""
    if m.b.is_zero() and m.c.is_zero():
        return as_root_of_unity(m.a / m.d) is not None
    if m.a.is_zero() and m.d.is_zero():
        return as_root_of_unity(m.b / m.c) is not None
    return False


@dataclass(frozen=True, eq=False)
class TorusCurve:
    """Laurent polynomial in two variables with cyclotomic coefficients,
    viewed as a curve in the torus (C*)^2.

    Terms are stored sorted by exponent pair, all coefficients at a single
    level, scaled so the coefficient of the lexicographically smallest
    exponent pair is 1.
    """

    level: int
    terms: tuple[tuple[tuple[int, int], CycloNum], ...]

    @staticmethod
    def from_terms(terms) -> "TorusCurve":
        items = list(terms.items() if isinstance(terms, dict) else terms)
        merged: dict[tuple[int, int], CycloNum] = {}
        for (i, j), coeff in items:
            coeff = _cyc(coeff)
            key = (int(i), int(j))
            merged[key] = merged[key] + coeff if key in merged else coeff
        level = 1
        for coeff in merged.values():
            level = level * coeff.level // math.gcd(level, coeff.level)
        if level > cyclotomic.LEVEL_CAP:
            raise LevelCapError(
                f"curve level {level} beyond cap {cyclotomic.LEVEL_CAP}"
            )
        cleaned = {
            e: c.lift(level) for e, c in merged.items() if not c.is_zero()
        }
        if not cleaned:
            raise ValueError("a torus curve needs at least one nonzero term")
        base = cleaned[min(cleaned)].inverse()
        return TorusCurve(
            level,
            tuple((e, cleaned[e] * base) for e in sorted(cleaned)),
        )

    def coefficient(self, i: int, j: int) -> CycloNum:
        for e, c in self.terms:
            if e == (i, j):
                return c
        return CycloNum.rational(0, self.level)

    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for e, _ in self.terms)

    def evaluate(self, x: CycloNum, y: CycloNum) -> CycloNum:
        total = CycloNum.rational(0)
        for (i, j), c in self.terms:
            total = total + c * x ** i * y ** j
        return total

    def transpose(self) -> "TorusCurve":
        return TorusCurve.from_terms([((j, i), c) for (i, j), c in self.terms])

    def substitute(
        self,
        sign_x: int = 1,
        sign_y: int = 1,
        double: bool = False,
        twist: GaloisMap | None = None,
    ) -> "TorusCurve":
        """The curve f^twist(sign_x * x^k, sign_y * y^k) with k = 2 if double."""
        out = []
        for (i, j), c in self.terms:
            if twist is not None:
                c = galois_apply(twist, c)
            s = (1 if sign_x >= 0 or i % 2 == 0 else -1) * (
                1 if sign_y >= 0 or j % 2 == 0 else -1
            )
            coeff = c if s == 1 else -c
            exp = (2 * i, 2 * j) if double else (i, j)
            out.append((exp, coeff))
        return TorusCurve.from_terms(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusCurve):
            return NotImplemented
        if self.support() != other.support():
            return False
        return all(
            ca == cb for (_, ca), (_, cb) in zip(self.terms, other.terms)
        )

    def __repr__(self) -> str:
        parts = ", ".join(f"{e}: {c.coords}" for e, c in self.terms)
        return f"TorusCurve(level={self.level}, {{{parts}}})"


def graph_curve(m: MobiusMap) -> TorusCurve:
    """Curve (a x + b) - (c x + d) y whose torus points are pairs (z, m(z))."""
    return TorusCurve.from_terms(
        [((1, 0), m.a), ((0, 0), m.b), ((1, 1), -m.c), ((0, 1), -m.d)]
    )


def translate_curve(f: TorusCurve, z1: RootOfUnity, z2: RootOfUnity) -> TorusCurve:
    """Translate of the zero set by (z1, z2): the curve f(z1^-1 x, z2^-1 y).

    A point (x0, y0) lies on f iff (z1 x0, z2 y0) lies on the translate, so
    torsion counts are preserved.
    """
    out = []
    for (i, j), c in f.terms:
        unit = (z1 ** (-i)) * (z2 ** (-j))
        out.append(((i, j), c * unit.value()))
    return TorusCurve.from_terms(out)


@dataclass(frozen=True)
class MinimalTranslate:
    """A translate of minimal coefficient conductor, with the pair used."""

    curve: TorusCurve
    z1: RootOfUnity
    z2: RootOfUnity
    conductor: int


def _canonical_divisor_chain(m: int) -> list[int]:
    # Candidate conductors: 1, odd, or divisible by 4 (2 mod 4 never minimal).
    return [d for d in divisors(m) if d % 4 != 2]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def minimal_translate(
    f: TorusCurve, search_modulus: int | None = None
) -> MinimalTranslate:
    """Among translates f(z x, z' y) by roots of unity of order dividing the
    search modulus, return one whose normalized coefficients generate the
    cyclotomic field of smallest level N; N is 1, odd, or divisible by 4.

    The default modulus is 2 * lcm(L, 4) where L is the level of the
    conductor-reduced coefficients, which covers every sign twist used in
    the case analysis.  The scaling base does not matter: the field
    generated by the normalized coefficients is the same for every choice
    (any two normalizations differ by ratios of elements already in the
    field), so the lexicographically smallest exponent is used throughout.
    """
    info = polytope.difference_lattice(f)
    if info.rank < 2:
        raise RankOneError(
            "support differences span a rank-deficient lattice; this curve "
            "is a binomial family, not a translate candidate"
        )
    base_exp = f.terms[0][0]
    offsets: list[tuple[int, int]] = []
    ratios: list[CycloNum] = []
    for (i, j), c in f.terms[1:]:
        offsets.append((i - base_exp[0], j - base_exp[1]))
        ratios.append(conductor_reduce(c))  # base coefficient is 1
    level0 = 1
    for r in ratios:
        level0 = _lcm(level0, r.level)
    dmod = search_modulus if search_modulus else 2 * _lcm(level0, 4)
    if dmod > 2000:
        raise LevelCapError(
            f"translate search modulus {dmod} is too large; reduce the "
            "coefficient level or pass a smaller explicit modulus"
        )
    m_lev = _lcm(level0, dmod)
    if m_lev > cyclotomic.LEVEL_CAP:
        raise LevelCapError(f"translate search needs level {m_lev} beyond cap")

    units = [e for e in range(1, m_lev + 1) if math.gcd(e, m_lev) == 1]
    lifted = [r.lift(m_lev) for r in ratios]
    # Conjugate ratios sigma_e(r)/r, identified as roots of unity when they
    # are; a non-unit ratio rules the term out of every proper subfield.
    quot: list[dict[int, RootOfUnity | None]] = []
    for r in lifted:
        inv = r.inverse()
        table: dict[int, RootOfUnity | None] = {}
        for e in units:
            if e == 1:
                continue
            table[e] = as_root_of_unity(_galois_raw(r, e) * inv)
        quot.append(table)

    for cand in _canonical_divisor_chain(m_lev):
        sol = _translate_solution(cand, offsets, quot, units, dmod, m_lev)
        if sol is None:
            continue
        alpha, beta = sol
        z1 = RootOfUnity(dmod, alpha)
        z2 = RootOfUnity(dmod, beta)
        moved = translate_curve(f, z1, z2)
        reduced = TorusCurve.from_terms(
            [(e, conductor_reduce(c)) for e, c in moved.terms]
        )
        if reduced.level != cand:
            raise AssertionError(
                f"translate search promised conductor {cand}, "
                f"got {reduced.level}"
            )
        return MinimalTranslate(reduced, z1, z2, cand)
    raise AssertionError("translate search exhausted all candidate conductors")


def _translate_solution(cand, offsets, quot, units, dmod, m_lev):
    # For each term, the admissible values of gamma = -p*alpha - q*beta
    # (mod dmod) are cut out by one linear congruence per fixing
    # automorphism: sigma_e(r)/r must equal zeta^(gamma * (m/dmod) * (1-e)).
    fixing = [e for e in units if (e - 1) % cand == 0 and e != 1]
    step = m_lev // dmod
    allowed_sets: list[set[int]] = []
    for table in quot:
        allowed = set(range(dmod))
        for e in fixing:
            rho = table[e]
            if rho is None or m_lev % rho.order:
                allowed = set()
                break
            target = rho.exponent * (m_lev // rho.order) % m_lev
            coeff = step * (1 - e) % m_lev
            allowed = {g for g in allowed if coeff * g % m_lev == target}
            if not allowed:
                break
        if not allowed:
            return None
        allowed_sets.append(allowed)
    masks = []
    for allowed in allowed_sets:
        masks.append([g in allowed for g in range(dmod)])
    for alpha in range(dmod):
        for beta in range(dmod):
            ok = True
            for (p, q), mask in zip(offsets, masks):
                if not mask[(-p * alpha - q * beta) % dmod]:
                    ok = False
                    break
            if ok:
                return alpha, beta
    return None


@dataclass(frozen=True)
class ConjugateFamily:
    """The twisted curves that jointly capture every torsion point of f."""

    case_tag: str
    members: tuple[tuple[str, TorusCurve], ...]

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.members)


def conjugate_family(
    f: TorusCurve, n: int, point_context: GaloisMap | None = None
) -> ConjugateFamily:
    """Build the seven-curve family for a minimal-translate curve over
    Q(zeta_n).

    n = 1: sign twists f(+-x, +-y) and squared twists f(+-x^2, +-y^2).
    n odd: the squared twists additionally conjugate coefficients by
    zeta_n -> zeta_n^2.
    n divisible by 4: sign twists together with their coefficient
    conjugates under zeta_n -> -zeta_n; the family is point-independent,
    so the fixed conjugation is used.  n = 2 mod 4 is rejected: such a
    level is never a minimal conductor.
    """
    if n % 4 == 2:
        raise ValueError(
            f"conductor {n} is 2 mod 4, so the translate was not minimal"
        )
    fitted = []
    for e, c in f.terms:
        if n % c.level:
            c = conductor_reduce(c)
        if n % c.level:
            raise ValueError("coefficients do not lie in Q(zeta_n)")
        fitted.append((e, c.lift(n)))
    lifted = TorusCurve.from_terms(fitted)

    def sub(sx, sy, double=False, twist=None):
        return lifted.substitute(sx, sy, double=double, twist=twist)

    if n == 1:
        case = "iii"
        members = [
            ("f1", sub(1, -1)),
            ("f2", sub(-1, 1)),
            ("f3", sub(-1, -1)),
            ("f4", sub(1, 1, double=True)),
            ("f5", sub(1, -1, double=True)),
            ("f6", sub(-1, 1, double=True)),
            ("f7", sub(-1, -1, double=True)),
        ]
    elif n % 2 == 1:
        case = "iv"
        sigma = point_context if point_context is not None else GaloisMap(n, 2)
        members = [
            ("f1", sub(1, -1)),
            ("f2", sub(-1, 1)),
            ("f3", sub(-1, -1)),
            ("f4", sub(1, 1, double=True, twist=sigma)),
            ("f5", sub(1, -1, double=True, twist=sigma)),
            ("f6", sub(-1, 1, double=True, twist=sigma)),
            ("f7", sub(-1, -1, double=True, twist=sigma)),
        ]
    else:
        case = "v"
        tau = point_context if point_context is not None else GaloisMap(n, 1 + n // 2)
        members = [
            ("f1", sub(1, -1)),
            ("f2", sub(-1, 1)),
            ("f3", sub(-1, -1)),
            ("f_c", sub(1, 1, twist=tau)),
            ("f1_c", sub(1, -1, twist=tau)),
            ("f2_c", sub(-1, 1, twist=tau)),
            ("f3_c", sub(-1, -1, twist=tau)),
        ]
    for label, member in members:
        if member == lifted:
            raise ValueError(
                f"family member {label} coincides with the curve itself; "
                "the input is degenerate for this case split"
            )
    return ConjugateFamily(case, tuple(members))
