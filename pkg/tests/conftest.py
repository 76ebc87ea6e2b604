import pytest

from rwlab.casestudy import preset


@pytest.fixture(scope="session")
def P():
    return preset("P")


@pytest.fixture(scope="session")
def Q():
    return preset("Q")


@pytest.fixture(scope="session")
def Qbar():
    return preset("Qbar")


@pytest.fixture(scope="session")
def M4():
    return preset("M4")


@pytest.fixture(scope="session")
def N4():
    return preset("N4")
