import pytest

from conebraid.quadrature import build_grid


@pytest.fixture(scope="session")
def grid():
    return build_grid(64, 26, 10.0)


@pytest.fixture(scope="session")
def grid146():
    return build_grid(96, 146, 12.0)
