import pytest

from pynct.algebra.cyclotomic import cyclotomic_companion
from pynct.catalog import four_torus_fixtures, gl3_table
from pynct.config import ToolkitConfig
from pynct.tap import TapManager


@pytest.fixture(scope="session")
def config():
    return ToolkitConfig()


@pytest.fixture(scope="session")
def small_config():
    # Forces the modular kernel path on small exterior powers.
    return ToolkitConfig(exact_kernel_cap=4, kernel_check_cap=64, modulus=101)


@pytest.fixture(scope="session")
def dim4():
    return four_torus_fixtures()


@pytest.fixture(scope="session")
def gl3():
    return gl3_table()


@pytest.fixture(scope="session")
def theta_split(dim4):
    return dim4["Theta_split"].matrix


@pytest.fixture(scope="session")
def c5():
    return cyclotomic_companion(5)


@pytest.fixture(scope="session")
def c7():
    return cyclotomic_companion(7)


@pytest.fixture(scope="session")
def c8():
    return cyclotomic_companion(8)


@pytest.fixture
def clear_taps():
    yield
    TapManager.clear()
