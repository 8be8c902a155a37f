import math
import random
from fractions import Fraction

import pytest

from torusroots.cyclotomic import (
    LEVEL_CAP,
    CycloNum,
    GaloisMap,
    LevelCapError,
    RootOfUnity,
    as_root_of_unity,
    conductor_reduce,
    cyc_arith,
    cyclotomic_polynomial,
    euler_phi,
    galois_apply,
)
from conftest import zeta


def _int_poly_mod(power: int, modulus: tuple[int, ...]) -> list[int]:
    # Independent reduction of x^power modulo a monic integer polynomial.
    rem = [0] * power + [1]
    deg = len(modulus) - 1
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if not c:
            continue
        for j, m in enumerate(modulus):
            rem[i - deg + j] -= c * m
    return rem[:deg]


def test_cyclotomic_polynomial_table():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_polynomial(30) == (1, 1, 0, -1, -1, -1, 0, 1, 1)


def test_power_reduction_at_level_30():
    # x^8 modulo the level-30 polynomial, cross-checked by plain division.
    expected = _int_poly_mod(8, cyclotomic_polynomial(30))
    got = zeta(30, 8)
    assert [c for c in got.coords] == [Fraction(c) for c in expected]
    explicit = (
        -zeta(30, 7) + zeta(30, 5) + zeta(30, 4) + zeta(30, 3)
        - zeta(30, 1) - CycloNum.rational(1)
    )
    assert got == explicit


def test_basic_identities():
    i = zeta(4)
    assert i * i == CycloNum.rational(-1)
    z3 = zeta(3)
    assert CycloNum.rational(1) / (1 + z3) == -z3
    assert cyc_arith("mul", i, i) == CycloNum.rational(-1)
    assert cyc_arith("div", CycloNum.rational(1), 1 + z3) == -z3


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        cyc_arith("div", CycloNum.rational(1), CycloNum.rational(0))
    with pytest.raises(ZeroDivisionError):
        CycloNum.rational(0).inverse()


def _random_value(rng: random.Random, level: int) -> CycloNum:
    coords = tuple(
        Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        for _ in range(euler_phi(level))
    )
    return CycloNum(level, coords)


def test_field_axioms_randomized():
    rng = random.Random(7)
    levels = [1, 3, 4, 5, 6, 8, 12, 15, 20, 30, 60]
    for _ in range(60):
        la, lb, lc = rng.choice(levels), rng.choice(levels), rng.choice(levels)
        x, y, w = _random_value(rng, la), _random_value(rng, lb), _random_value(rng, lc)
        assert (x + y) + w == x + (y + w)
        assert (x * y) * w == x * (y * w)
        assert x * (y + w) == x * y + x * w
        assert x * y == y * x
        if not x.is_zero():
            assert x * x.inverse() == CycloNum.rational(1)
            assert (y / x) * x == y


def test_mixed_level_equality():
    # zeta_6 equals 1 + zeta_3 after lifting to a common level.
    assert zeta(6) == 1 + zeta(3)
    assert zeta(10, 5) == CycloNum.rational(-1)
    assert not (zeta(5) == zeta(7))


def test_galois_examples():
    s = GaloisMap(30, 7)
    assert galois_apply(s, zeta(30, 9)) == zeta(30, 3)
    t = GaloisMap(5, 2)
    assert galois_apply(t, 1 + zeta(5)) == 1 + zeta(5, 2)
    with pytest.raises(ValueError):
        GaloisMap(30, 2)


def test_galois_is_field_homomorphism():
    rng = random.Random(11)
    for _ in range(40):
        level = rng.choice([5, 8, 12, 15, 24])
        exps = [e for e in range(1, level) if math.gcd(e, level) == 1]
        s = GaloisMap(level, rng.choice(exps))
        x, y = _random_value(rng, level), _random_value(rng, level)
        assert galois_apply(s, x * y) == galois_apply(s, x) * galois_apply(s, y)
        assert galois_apply(s, x + y) == galois_apply(s, x) + galois_apply(s, y)
        if not x.is_zero():
            assert not galois_apply(s, x).is_zero()


def test_as_root_of_unity_examples():
    assert as_root_of_unity(1 + zeta(3)) == RootOfUnity(6, 1)
    assert as_root_of_unity(-zeta(5)) == RootOfUnity(10, 7)
    assert as_root_of_unity(1 + zeta(4)) is None
    assert as_root_of_unity(CycloNum.rational(1)) == RootOfUnity(1, 0)
    assert as_root_of_unity(CycloNum.rational(-1)) == RootOfUnity(2, 1)
    assert as_root_of_unity(CycloNum.rational(2)) is None
    assert as_root_of_unity(CycloNum.rational(0)) is None


def test_as_root_of_unity_exhaustive():
    for n in range(1, 61):
        for k in range(n):
            got = as_root_of_unity(zeta(n, k))
            assert got is not None
            want_order = n // math.gcd(n, k) if k else 1
            assert got.order == want_order


def test_conductor_examples():
    z = lambda k: zeta(30, k)
    a = -z(7) - z(6) + z(2)
    reduced = conductor_reduce(a)
    assert reduced.level == 5
    assert reduced == -zeta(5) - zeta(5, 2)
    # float cross-check of the same element
    approx = reduced.complex_value()
    assert abs(approx - (0.5 - 1.5388417685876268j)) < 1e-9

    six = conductor_reduce(zeta(6))
    assert six.level == 3
    assert six == -zeta(3, 2)

    rat = conductor_reduce(CycloNum.rational(Fraction(7, 2), 30))
    assert rat.level == 1
    assert rat.rational_value() == Fraction(7, 2)


def test_conductor_idempotent_and_roundtrip():
    rng = random.Random(23)
    for _ in range(40):
        level = rng.choice([4, 6, 12, 15, 20, 24, 30, 60])
        x = _random_value(rng, rng.choice([d for d in (1, 3, 4, 5) if level % d == 0]))
        lifted = x.lift(level)
        reduced = conductor_reduce(lifted)
        assert conductor_reduce(reduced) == reduced
        assert reduced.lift(level) == lifted
        assert reduced == x


def test_lift_roundtrip():
    rng = random.Random(31)
    for _ in range(30):
        n = rng.choice([3, 4, 5, 8, 12])
        m = n * rng.choice([2, 3, 4])
        x = _random_value(rng, n)
        assert conductor_reduce(x.lift(m)) == conductor_reduce(x)


def test_level_cap():
    with pytest.raises(LevelCapError):
        zeta(101).lift(101 * 997)
    # 101 * 103 > 10080 via mixed arithmetic
    with pytest.raises(LevelCapError):
        _ = zeta(101) + zeta(103)
    assert 101 * 103 > LEVEL_CAP


def test_level_cap_configurable(monkeypatch):
    from torusroots import cyclotomic

    monkeypatch.setattr(cyclotomic, "LEVEL_CAP", 10)
    with pytest.raises(LevelCapError):
        _ = zeta(4) + zeta(5)
    monkeypatch.setattr(cyclotomic, "LEVEL_CAP", 10080)
    assert (zeta(4) + zeta(5)).level == 20


def test_root_of_unity_canonical_form():
    assert RootOfUnity(30, 12) == RootOfUnity(5, 2)
    assert RootOfUnity(6, 0) == RootOfUnity(1, 0)
    assert RootOfUnity(4, 1) * RootOfUnity(4, 3) == RootOfUnity(1, 0)
    assert (RootOfUnity(12, 5) ** -1) * RootOfUnity(12, 5) == RootOfUnity(1, 0)
    with pytest.raises(ValueError):
        RootOfUnity(0, 0)
