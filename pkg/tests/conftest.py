"""Shared fixtures: the graph families are built once per session."""

import pytest

from drguniform import families


@pytest.fixture(scope="session")
def h33():
    return families.hamming(3, 3)


@pytest.fixture(scope="session")
def h34():
    return families.hamming(3, 4)


@pytest.fixture(scope="session")
def h43():
    return families.hamming(4, 3)


@pytest.fixture(scope="session")
def cube3():
    return families.hamming(3, 2)


@pytest.fixture(scope="session")
def j63():
    return families.johnson(6, 3)


@pytest.fixture(scope="session")
def j94():
    return families.johnson(9, 4)


@pytest.fixture(scope="session")
def halved7():
    return families.halved_cube(7)


@pytest.fixture(scope="session")
def halved8():
    return families.halved_cube(8)


@pytest.fixture(scope="session")
def shrik():
    return families.shrikhande()


@pytest.fixture(scope="session")
def doob11():
    return families.doob(1, 1)


@pytest.fixture(scope="session")
def gosset_graph():
    return families.gosset()


@pytest.fixture(scope="session")
def dp22():
    return families.dual_polar_2a(2, 2)


@pytest.fixture(scope="session")
def dp23():
    return families.dual_polar_2a(2, 3)


@pytest.fixture(scope="session")
def her22():
    return families.hermitian_forms(2, 2)


@pytest.fixture(scope="session")
def her23():
    return families.hermitian_forms(2, 3)
