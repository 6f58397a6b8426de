import pytest

from paulidfs import preset_group


@pytest.fixture(scope="session")
def qz():
    return preset_group("qz")


@pytest.fixture(scope="session")
def qx():
    return preset_group("qx")


@pytest.fixture(scope="session")
def q4():
    return preset_group("q4")


@pytest.fixture(scope="session")
def q2z():
    return preset_group("q2z")


@pytest.fixture(scope="session")
def q8():
    return preset_group("q8")
