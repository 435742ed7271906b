import pytest

from csi_sdvs import PrimeModulus, RandomSource, setup


@pytest.fixture(scope="session")
def p419():
    return PrimeModulus(419, (3, 5, 7))


@pytest.fixture(scope="session")
def toy_pp():
    """Toy isogeny parameters (orbit built once per test session)."""
    return setup("toy", 1, 16, RandomSource(1001))


@pytest.fixture(scope="session")
def mock_pp():
    """Mock backend at standard shape: lam=128, N=2^256, 512-bit elements."""
    return setup("mock", 1, 128, RandomSource(1002))


@pytest.fixture(scope="session")
def mock97_pp():
    """Mock backend with the tiny group Z_97 used for distribution tests."""
    return setup("mock", 1, 16, RandomSource(1003), group_order=97)
