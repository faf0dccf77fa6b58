import pytest

from ksgraph.mcsolver import ks_series


@pytest.fixture(scope="session")
def ks2():
    """Graph series through hbar^2 (edge, Y4, Y6); built once per session."""
    return ks_series(2)


@pytest.fixture(scope="session")
def ks1():
    return ks_series(1)
