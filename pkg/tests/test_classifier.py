import cmath

import numpy as np
import pytest

from cuntzkit import (
    CircleMeasure,
    LineTuple,
    ProductState,
    cuntz_state_conjugate,
    endo_conjugate,
    ergodic_conjugate,
    extension_compare,
    gauge_on_measure,
    line_tuple_equiv,
    shift_back,
    shift_forward,
)
from cuntzkit.classifier import replay_shift_witness
from cuntzkit.product_states import basis_vector
from cuntzkit.sampling import random_measure, random_phase, random_state, random_unit_vector, random_unitary

from conftest import SQ, plus_state

e1, e2 = basis_vector(2, 1), basis_vector(2, 2)


def lt(*vs, n=2):
    return LineTuple.of(n, vs)


def conjugated(F: LineTuple, W, k, rng) -> LineTuple:
    return LineTuple.of(F.n, [random_phase(rng) * (W @ v) for v in F.lines]).rotate(-k)


def perturbed(G: LineTuple, rng, size=1e-3) -> LineTuple:
    """Move one line so that some Gram modulus changes by at least ``size``."""
    lines = list(G.lines)
    j = int(rng.integers(0, len(lines)))
    other = lines[(j + 1) % len(lines)]
    before = abs(np.vdot(other, lines[j]))
    while True:
        cand = lines[j] + 10 * size * random_unit_vector(G.n, rng)
        cand /= np.linalg.norm(cand)
        if abs(abs(np.vdot(other, cand)) - before) >= size:
            lines[j] = cand
            return LineTuple.of(G.n, lines)


def test_line_tuple_equiv_examples():
    W = line_tuple_equiv(lt(e1, e2), lt(e2, e1))
    assert W is not None
    assert np.allclose(np.abs(W), [[0, 1], [1, 0]])
    assert line_tuple_equiv(lt(e1, e1), lt(e1, e2)) is None
    W = line_tuple_equiv(lt(e1, SQ * (e1 + e2)), lt(e1, SQ * (e1 + 1j * e2)))
    assert W is not None
    D = W / W[0, 0]
    assert np.allclose(D, np.diag([1, 1j]), atol=1e-12)


def test_line_tuple_equiv_random(rng):
    for n in (2, 3, 4):
        for p in (1, 2, 3, 5):
            F = LineTuple.of(n, [random_unit_vector(n, rng) for _ in range(p)])
            U = random_unitary(n, rng)
            G = conjugated(F, U, 0, rng)
            W = line_tuple_equiv(F, G)
            assert W is not None
            assert np.allclose(W.conj().T @ W, np.eye(n), atol=1e-10)
            for f, g in zip(F.lines, G.lines):
                assert abs(np.vdot(g, W @ f)) == pytest.approx(1, abs=1e-8)


def test_line_tuple_equiv_degenerate_lines(rng):
    # repeated and orthogonal lines exercise the rank-deficient branch
    U = random_unitary(3, rng)
    F = LineTuple.of(3, [basis_vector(3, 1), basis_vector(3, 1), basis_vector(3, 2)])
    W = line_tuple_equiv(F, conjugated(F, U, 0, rng))
    assert W is not None


def test_cuntz_state_conjugate_examples():
    v = cuntz_state_conjugate(lt(e1, e2), lt(e2, e1))
    assert v.verdict == "conjugate" and v.witness.shift == 1
    assert np.allclose(v.witness.unitary, np.eye(2))
    v = cuntz_state_conjugate(lt(e1), lt(e2))
    assert v.verdict == "conjugate"
    assert np.allclose(np.abs(v.witness.unitary), [[0, 1], [1, 0]])
    assert cuntz_state_conjugate(lt(e1, e1), lt(e1, e2)).verdict == "not_conjugate"


def test_cuntz_state_conjugate_randomized(rng):
    for _ in range(40):
        n, p = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        F = LineTuple.of(n, [random_unit_vector(n, rng) for _ in range(p)])
        G = conjugated(F, random_unitary(n, rng), int(rng.integers(0, p)), rng)
        v = cuntz_state_conjugate(F, G)
        assert v.verdict == "conjugate"
        assert replay_shift_witness(F, G, v.witness)
        assert cuntz_state_conjugate(F, perturbed(G, rng)).verdict == "not_conjugate"


def test_conjugacy_is_an_equivalence(rng):
    n, p = 3, 3
    F = LineTuple.of(n, [random_unit_vector(n, rng) for _ in range(p)])
    G = conjugated(F, random_unitary(n, rng), 1, rng)
    H = conjugated(G, random_unitary(n, rng), 2, rng)
    assert cuntz_state_conjugate(F, F).witness.shift == 0
    assert cuntz_state_conjugate(G, F).positive
    assert cuntz_state_conjugate(F, H).positive


def test_ergodic_examples():
    v = ergodic_conjugate(ProductState.basis(2, period=(1,)), plus_state())
    assert v.verdict == "conjugate"
    assert ergodic_conjugate(ProductState.basis(2, period=(1, 2)), ProductState.basis(2, period=(1,))).verdict == (
        "not_conjugate"
    )
    f = ProductState.basis(3, period=(1, 2))
    g = ProductState.from_vectors(3, [], [basis_vector(3, 1), SQ * (basis_vector(3, 1) + basis_vector(3, 2))])
    assert ergodic_conjugate(f, g).verdict == "not_conjugate"


def test_endo_examples():
    e1s = ProductState.basis(2, period=(1,))
    v = endo_conjugate(e1s, CircleMeasure.point(1), e1s, CircleMeasure.point(1j))
    assert v.verdict == "conjugate" and v.witness.rotation == pytest.approx(-1j)
    assert endo_conjugate(e1s, CircleMeasure.point(1), e1s, CircleMeasure.haar()).verdict == "not_conjugate"
    v = endo_conjugate(
        ProductState.basis(2, period=(1, 2)),
        CircleMeasure.haar(),
        ProductState.basis(2, period=(2, 1)),
        CircleMeasure.haar(),
    )
    assert v.verdict == "conjugate"
    assert v.witness.shift == 1 and np.allclose(v.witness.unitary, np.eye(2))


def test_endo_verdict_invariances(rng):
    for _ in range(15):
        p = int(rng.integers(1, 4))
        f = random_state(2, p, rng)
        g = random_state(2, p, rng) if rng.random() < 0.5 else f
        mu = random_measure(rng, int(rng.integers(1, 3)), bool(rng.integers(0, 2)))
        nu = mu.rotate(random_phase(rng)) if rng.random() < 0.7 else random_measure(rng, 2, False)
        base = endo_conjugate(f, mu, g, nu).verdict
        lam = random_phase(rng)
        assert endo_conjugate(f, gauge_on_measure(lam, p, mu), g, nu).verdict == base
        assert endo_conjugate(shift_back(f), mu, shift_forward(g), nu).verdict == base


def test_extension_compare_examples():
    alt = ProductState.basis(2, period=(1, 2))
    assert extension_compare(alt, CircleMeasure.point(1), alt, CircleMeasure.point(-1)).verdict == "disjoint"
    mu = CircleMeasure.mixture([(1, 0.5), (1j, 0.5)])
    nu = CircleMeasure.mixture([(1, 1 / 3), (1j, 2 / 3)])
    assert extension_compare(alt, mu, alt, nu).verdict == "equivalent"
    e1s = ProductState.basis(2, period=(1,))
    same = ProductState.basis(2, preperiod=(1,), period=(1,))
    assert extension_compare(e1s, CircleMeasure.point(1), same, CircleMeasure.point(1)).verdict == "equivalent"


def test_extension_compare_other_branches():
    alt = ProductState.basis(2, period=(1, 2))
    e1s = ProductState.basis(2, period=(1,))
    assert extension_compare(alt, CircleMeasure.point(1), e1s, CircleMeasure.point(1)).verdict == "disjoint"
    mu = CircleMeasure.mixture([(1, 0.5), (1j, 0.5)])
    v = extension_compare(alt, mu, alt, CircleMeasure.point(1))
    assert v.verdict == "neither"
    assert v.details["common_atoms"] == [1]
    v = extension_compare(alt, CircleMeasure.point(1), shift_back(alt), CircleMeasure.point(1j))
    assert v.verdict == "equivalent_up_to_gauge"


def test_extension_compare_reflexive(rng):
    for _ in range(20):
        f = random_state(2, int(rng.integers(1, 4)), rng)
        mu = random_measure(rng, int(rng.integers(0, 3)) or 1, bool(rng.integers(0, 2)))
        assert extension_compare(f, mu, f, mu).verdict == "equivalent"


def test_rational_diagonal_point_masses_are_disjoint():
    alt = ProductState.basis(2, period=(1, 2))
    pts = [cmath.exp(2j * np.pi * j / 10) for j in range(10)]
    for i, c in enumerate(pts):
        for j, d in enumerate(pts):
            v = extension_compare(alt, CircleMeasure.point(c), alt, CircleMeasure.point(d))
            assert v.verdict == ("equivalent" if i == j else "disjoint")


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        cuntz_state_conjugate(lt(e1), lt(e1, e2))
