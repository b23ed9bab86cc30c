import numpy as np
import pytest

from cuntzkit import AlgebraElement, Monomial, ProductState

SQ = 1 / np.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20260917)


def mono(n, s=(), t=(), c=1.0):
    return AlgebraElement(n, {Monomial(tuple(s), tuple(t)): c})


def plus_state(n=2):
    v = np.zeros(n, dtype=complex)
    v[:2] = SQ
    return ProductState.from_vectors(n, [], [v])
