import numpy as np
import pytest

from elliptic_tubes import catalog


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def interval():
    return catalog.interval()


@pytest.fixture
def square():
    return catalog.square()


@pytest.fixture
def triangle():
    return catalog.triangle()


@pytest.fixture
def simplex():
    return catalog.simplex()


@pytest.fixture
def disk():
    return catalog.disk()


@pytest.fixture
def ellipse():
    return catalog.ellipse()


@pytest.fixture
def halfline():
    return catalog.halfline()
