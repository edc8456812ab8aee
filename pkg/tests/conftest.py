import numpy as np
import pytest

from hyptest.composite import FamilyParams

REF1 = FamilyParams(p=1 / 2, q=1 / 2, t=2 / 3, s=2 / 3, r=1 / 3, R=1)
REF2 = FamilyParams(p=1 / 2, q=1 / 4, t=0.9, s=0.15, r=0.1, R=1)


def random_hermitian(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (z + z.conj().T) / 2


def random_psd(rng, d, rank=None):
    rank = rank or d
    z = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    return z @ z.conj().T


def random_density(rng, d):
    a = random_psd(rng, d)
    return a / np.trace(a).real


def random_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_povm(rng, d, k):
    """Random ``k``-outcome POVM: ``S^(-1/2) G_i S^(-1/2)`` with ``S = sum G_i``."""
    gs = [random_psd(rng, d) for _ in range(k)]
    w, v = np.linalg.eigh(sum(gs))
    s = (v / np.sqrt(w)) @ v.conj().T
    return [s @ g @ s for g in gs]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
