import pytest

from percube import make_config
from percube.fixtures import d13_r4_size122


@pytest.fixture(scope="session")
def cfg134():
    return make_config(13, 4)


@pytest.fixture(scope="session")
def fixture_set():
    return d13_r4_size122()
