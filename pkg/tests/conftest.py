import numpy as np
import pytest

from matmeans.hermitian import hermitian, random_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pd(rng, n, cond=10.0):
    """Haar-rotated positive definite matrix with spectrum in [1/sqrt(cond), sqrt(cond)]."""
    u = random_unitary(rng, n)
    lam = np.exp(rng.uniform(-0.5, 0.5, n) * np.log(cond))
    return hermitian((u * lam) @ u.conj().T)


def random_psd(rng, n, rank):
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return hermitian(g @ g.conj().T)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
