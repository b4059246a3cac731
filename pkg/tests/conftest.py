import pytest

from graphinv.poset import build_full_poset
from graphinv.mtransform import build_mtransform


@pytest.fixture(scope="session")
def e3_poset():
    return build_full_poset(3)


@pytest.fixture(scope="session")
def e4_poset():
    return build_full_poset(4)


@pytest.fixture(scope="session")
def e5_poset():
    return build_full_poset(5)


@pytest.fixture(scope="session")
def e4_matrix(e4_poset):
    return build_mtransform(e4_poset)
