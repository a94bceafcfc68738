"""Wspólne fikstury testów."""

import numpy as np
import pytest
import scipy.linalg


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_symmetric(m, rng):
    a = rng.standard_normal((m, m))
    return (a + a.T) / 2


def random_hermitian_complex(m, rng):
    a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return (a + a.conj().T) / 2


def random_symmetric_circulant(m, rng):
    """Rzeczywista symetryczna macierz cyrkulacyjna (pierwszy wiersz c_k = c_{M−k})."""
    c = rng.standard_normal(m)
    c = (c + np.roll(c[::-1], 1)) / 2
    return scipy.linalg.circulant(c)


@pytest.fixture
def make_symmetric():
    return random_symmetric


@pytest.fixture
def make_hermitian():
    return random_hermitian_complex


@pytest.fixture
def make_circulant():
    return random_symmetric_circulant
