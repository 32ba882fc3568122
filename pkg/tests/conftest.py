import numpy as np
import pytest

from e7_forge.euler import chart_evi, chart_split, chart_tits, default_su8_chart
from e7_forge.f4e6 import f4e6_basis
from e7_forge.generators import structure_constants
from e7_forge.rep56 import evi_56, split_56, tits_56
from e7_forge.rep133 import adjoint_133


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full 133-dimensional sweeps and Monte Carlo runs")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def exact_basis():
    return f4e6_basis(exact=True)


@pytest.fixture(scope="session")
def float_basis():
    return f4e6_basis(exact=False)


@pytest.fixture(scope="session")
def tits():
    return tits_56()


@pytest.fixture(scope="session")
def split():
    return split_56()


@pytest.fixture(scope="session")
def evi():
    return evi_56()


@pytest.fixture(scope="session")
def adjoint():
    return adjoint_133()


@pytest.fixture(scope="session")
def tits_sc(tits):
    return structure_constants(tits.to_float())


@pytest.fixture(scope="session")
def split_sc(split):
    return structure_constants(split.to_float())


@pytest.fixture(scope="session")
def evi_sc(evi):
    return structure_constants(evi.to_float())


@pytest.fixture(scope="session")
def adjoint_sc(adjoint):
    return structure_constants(adjoint.to_float())


@pytest.fixture(scope="session")
def tits_chart(tits):
    return chart_tits(tits)


@pytest.fixture(scope="session")
def split_chart(split):
    return chart_split(split)


@pytest.fixture(scope="session")
def evi_chart(evi):
    return chart_evi(evi)


@pytest.fixture(scope="session")
def su8_chart():
    return default_su8_chart()
