import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def rand_signal(rng, L, unit=True):
    v = rng.standard_normal(L) + 1j * rng.standard_normal(L)
    return v / np.linalg.norm(v) if unit else v


def rand_kernel(rng, L, unit=True):
    K = rng.standard_normal((L, L)) + 1j * rng.standard_normal((L, L))
    return K / np.linalg.norm(K) if unit else K


def rand_seq(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)
