import numpy as np
import pytest

from spinstat.kernels import available_backends


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (z + z.conj().T) / 2
