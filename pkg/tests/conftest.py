import math

import pytest

from torusroots.cyclotomic import CycloNum
from torusroots.curves import graph_curve, mobius_new


def zeta(n: int, k: int = 1) -> CycloNum:
    return CycloNum.zeta_power(n, k)


def canonical(n: int, j: int, k: int) -> tuple[int, int, int]:
    g = math.gcd(math.gcd(j, k), n)
    return (n // g, j // g, k // g)


GAMMA1_POINTS = [
    (0, 0), (1, 2), (2, 5), (3, 9), (4, 13), (5, 16), (6, 18),
    (9, 21), (11, 22), (14, 23), (18, 24), (22, 25), (25, 26), (27, 27),
]

GAMMA2_POINTS = [
    (0, 0), (1, 9), (2, 18), (4, 28), (6, 32), (8, 34), (12, 36),
    (22, 38), (31, 39), (40, 40), (50, 42), (54, 44), (56, 46), (58, 50),
]


@pytest.fixture(scope="session")
def gamma1():
    z = lambda k: zeta(30, k)
    return mobius_new(-z(7) - z(6) + z(2), z(7) - z(2), 1, -z(6) - 1)


@pytest.fixture(scope="session")
def gamma2():
    w = lambda k: zeta(60, k)
    return mobius_new(
        -w(14) - w(12) - w(10) + w(4) + w(2) + 1,
        w(14) + w(12) + w(10) - w(6) - w(4) - w(2),
        w(12) + w(10) + w(8) - w(2),
        -w(12) - w(10) - w(8) - w(6) + w(2) + 1,
    )


@pytest.fixture(scope="session")
def curve1(gamma1):
    return graph_curve(gamma1)


@pytest.fixture(scope="session")
def curve2(gamma2):
    return graph_curve(gamma2)


def joint_set(points) -> set[tuple[int, int, int]]:
    return {p.joint() for p in points}


def golden_set(pairs, order) -> set[tuple[int, int, int]]:
    return {canonical(order, a, b) for a, b in pairs}
