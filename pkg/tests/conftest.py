import pytest

from powerhom.poly import PolyRing


@pytest.fixture
def R2():
    return PolyRing(("x", "y"))


@pytest.fixture
def R3():
    return PolyRing(("x", "y", "z"))


@pytest.fixture
def xy(R2):
    return R2.gens()


@pytest.fixture
def xyz(R3):
    return R3.gens()
