"""Univariate polynomials with cyclotomic coefficients.

Dense ascending coefficient lists over a fixed level; supports the exact
Euclidean toolkit (divmod, gcd, squarefree part) used by the intersection
solver, plus location of the roots of unity of a polynomial: candidate
orders n are bounded through phi(n) <= phi(level) * degree, each primitive
root is screened by a rigorous float bound and survivors are confirmed by
exact evaluation.
"""

from __future__ import annotations

import cmath
import math

from .cyclotomic import (
    CycloNum,
    RootOfUnity,
    euler_phi,
    _EPS,
)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class UPoly:
    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        cs = [c.lift(level) if c.level != level else c for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("UPoly is immutable")

    @staticmethod
    def from_coeffs(coeffs) -> "UPoly":
        coeffs = [CycloNum.rational(c) if not isinstance(c, CycloNum) else c for c in coeffs]
        level = 1
        for c in coeffs:
            level = _lcm(level, c.level)
        return UPoly(level, coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "UPoly") -> "UPoly":
        level = _lcm(self.level, other.level)
        a, b = self.coeffs, other.coeffs
        out = []
        for i in range(max(len(a), len(b))):
            x = a[i] if i < len(a) else CycloNum.rational(0)
            y = b[i] if i < len(b) else CycloNum.rational(0)
            out.append(x + y)
        return UPoly(level, out)

    def __neg__(self) -> "UPoly":
        return UPoly(self.level, [-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        if self.is_zero() or other.is_zero():
            return UPoly(self.level, [])
        level = _lcm(self.level, other.level)
        out = [CycloNum.rational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return UPoly(level, out)

    def scale(self, c: CycloNum) -> "UPoly":
        return UPoly(_lcm(self.level, c.level), [k * c for k in self.coeffs])

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        level = _lcm(self.level, other.level)
        rem = [c.lift(level) for c in self.coeffs]
        den = [c.lift(level) for c in other.coeffs]
        inv_lead = den[-1].inverse()
        dn = len(den) - 1
        quo = [CycloNum.rational(0, level)] * max(len(rem) - dn, 0)
        for i in range(len(rem) - 1, dn - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            q = c * inv_lead
            quo[i - dn] = q
            for j in range(dn + 1):
                rem[i - dn + j] = rem[i - dn + j] - q * den[j]
        return UPoly(level, quo), UPoly(level, rem[:dn])

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = self.coeffs[-1].inverse()
        return self.scale(inv)

    def gcd(self, other: "UPoly") -> "UPoly":
        # Plain Euclid; exact over the field, monic output for canonicity.
        # Degrees here stay small, so remainder growth is harmless.
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        return a.monic()

    def derivative(self) -> "UPoly":
        return UPoly(
            self.level,
            [c * CycloNum.rational(i) for i, c in enumerate(self.coeffs)][1:],
        )

    def squarefree_part(self) -> "UPoly":
        """Monic polynomial with the same distinct roots, each simple."""
        if self.degree < 1:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree == 0:
            return self.monic()
        q, r = self.divmod(g)
        if not r.is_zero():
            raise AssertionError("gcd failed to divide in squarefree split")
        return q.monic()

    def evaluate(self, x: CycloNum) -> CycloNum:
        total = CycloNum.rational(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    # -- float screening ----------------------------------------------

    def _complex_coeffs(self) -> tuple[list[complex], float]:
        cs = [c.complex_value() for c in self.coeffs]
        weight = sum(c.abs_sum() for c in self.coeffs)
        return cs, weight

    def unity_roots(self, order_limit: int | None = None) -> list[RootOfUnity]:
        """All roots of unity of this polynomial, exactly.

        Any unity root of order n makes the n-th cyclotomic polynomial
        divide the rational norm of this polynomial, whose degree is
        phi(level) * degree; hence phi(n) is at most that, which bounds n.
        """
        if self.is_zero():
            raise ValueError("every root of unity solves the zero polynomial")
        if self.degree < 1:
            return []
        bound = euler_phi(self.level) * self.degree
        cs, weight = self._complex_coeffs()
        phi = euler_phi(self.level)
        err = (len(cs) + 1) * (phi + 8) * _EPS * weight
        found: list[RootOfUnity] = []
        n = 0
        # phi(n) >= sqrt(n/2) gives the scan limit 2 * bound^2.
        limit = 2 * bound * bound
        if order_limit is not None:
            limit = min(limit, order_limit)
        while n < limit:
            n += 1
            if euler_phi(n) > bound:
                continue
            for k in range(n):
                if n > 1 and math.gcd(k, n) != 1:
                    continue
                z = cmath.rect(1.0, 2.0 * math.pi * k / n)
                val = 0j
                for c in reversed(cs):
                    val = val * z + c
                if abs(val) > err:
                    continue
                cand = RootOfUnity(n, k)
                if self.evaluate(cand.value()).is_zero():
                    found.append(cand)
        return found
