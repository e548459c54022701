import random

import pytest

from facering import PolyRing, bundled_poset
from facering.scalars import QQ, PrimeField


@pytest.fixture
def p1():
    return bundled_poset("p1")


@pytest.fixture
def ring_p1(p1):
    return PolyRing(p1, QQ)


@pytest.fixture
def ring_p1_f2(p1):
    return PolyRing(p1, PrimeField(2))


@pytest.fixture
def rng():
    return random.Random(20240901)
