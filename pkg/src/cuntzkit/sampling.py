"""Random generators for states, measures, elements and unitaries."""

from __future__ import annotations

import numpy as np

from .algebra import AlgebraElement, Monomial
from .extensions import CircleMeasure
from .product_states import ProductState


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_phase(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def random_state(n: int, p: int, rng: np.random.Generator, pre: int | None = None) -> ProductState:
    """Random product state of exact period ``p`` (generic vectors never repeat)."""
    if pre is None:
        pre = int(rng.integers(0, 3))
    return ProductState.from_vectors(
        n,
        [random_unit_vector(n, rng) for _ in range(pre)],
        [random_unit_vector(n, rng) for _ in range(p)],
    )


def random_atomic_measure(rng: np.random.Generator, atoms: int) -> CircleMeasure:
    w = rng.random(atoms) + 0.1
    w = w / w.sum()
    angles = (np.arange(atoms) + rng.random(atoms) * 0.8) / atoms
    return CircleMeasure.mixture(
        [(complex(np.exp(2j * np.pi * a)), float(x)) for a, x in zip(angles, w)]
    )


def random_measure(rng: np.random.Generator, atoms: int, haar: bool) -> CircleMeasure:
    if not haar:
        return random_atomic_measure(rng, atoms)
    hw = float(rng.random() * 0.8 + 0.1) if atoms else 1.0
    if atoms == 0:
        return CircleMeasure.haar()
    mu = random_atomic_measure(rng, atoms)
    return CircleMeasure(hw, tuple((c, w * (1 - hw)) for c, w in mu.atoms))


def random_word(n: int, length: int, rng: np.random.Generator) -> tuple[int, ...]:
    return tuple(int(a) for a in rng.integers(1, n + 1, size=length))


def random_monomial(n: int, rng: np.random.Generator, max_degree: int = 6, max_t: int = 3) -> Monomial:
    """Monomial with ``|degree| <= max_degree``."""
    k = int(rng.integers(-max_degree, max_degree + 1))
    lt = int(rng.integers(max(0, -k), max(0, -k) + max_t + 1))
    ls = lt + k
    return Monomial(random_word(n, ls, rng), random_word(n, lt, rng))


def random_element(
    n: int, rng: np.random.Generator, terms: int = 4, max_degree: int = 3, max_t: int = 2
) -> AlgebraElement:
    pairs = []
    for _ in range(int(rng.integers(1, terms + 1))):
        c = complex(rng.normal(), rng.normal())
        pairs.append((c, random_monomial(n, rng, max_degree, max_t)))
    return AlgebraElement.from_terms(n, pairs)


def random_core_element(n: int, rng: np.random.Generator, max_len: int = 3, terms: int = 3) -> AlgebraElement:
    """Random element of the UHF core (all terms of degree 0)."""
    pairs = []
    for _ in range(int(rng.integers(1, terms + 1))):
        L = int(rng.integers(0, max_len + 1))
        c = complex(rng.normal(), rng.normal())
        pairs.append((c, Monomial(random_word(n, L, rng), random_word(n, L, rng))))
    return AlgebraElement.from_terms(n, pairs)
