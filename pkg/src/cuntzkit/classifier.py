"""Conjugacy and equivalence decisions for extensions and induced endomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import AmbientMismatch
from .extensions import (
    CircleMeasure,
    measures_disjoint,
    measures_equivalent,
    shared_atoms,
    translate_equivalent,
)
from .product_states import (
    ProductState,
    canonical_vector,
    period,
    same_quasi_orbit,
)

GRAM_TOL = 1e-8
PHASE_TOL = 1e-8
REPLAY_TOL = 1e-8
PIVOT_TOL = 1e-10

EQUIVALENT = "equivalent"
DISJOINT = "disjoint"
EQUIVALENT_UP_TO_GAUGE = "equivalent_up_to_gauge"
NEITHER = "neither"
CONJUGATE = "conjugate"
NOT_CONJUGATE = "not_conjugate"

POSITIVE = {EQUIVALENT, EQUIVALENT_UP_TO_GAUGE, CONJUGATE}


@dataclass(frozen=True)
class LineTuple:
    n: int
    lines: tuple[np.ndarray, ...]

    @classmethod
    def of(cls, n: int, vectors: Sequence) -> "LineTuple":
        return cls(n, tuple(canonical_vector(v, n) for v in vectors))

    def __len__(self):
        return len(self.lines)

    def rotate(self, k: int) -> "LineTuple":
        k %= len(self.lines)
        return LineTuple(self.n, self.lines[k:] + self.lines[:k])

    def matrix(self) -> np.ndarray:
        """Vectors as the columns of an ``n x p`` array."""
        return np.array(self.lines).T


@dataclass(frozen=True)
class Witness:
    shift: int | None = None
    unitary: np.ndarray | None = None
    rotation: complex | None = None


@dataclass(frozen=True)
class ConjugacyVerdict:
    verdict: str
    witness: Witness | None = None
    details: dict = field(default_factory=dict)

    @property
    def positive(self) -> bool:
        return self.verdict in POSITIVE

    def __bool__(self):
        return self.positive


def _closest_unitary(M: np.ndarray) -> np.ndarray:
    """Polar factor of ``M`` (an isometry when ``M`` is tall)."""
    if M.size == 0:
        return M
    u, _, vh = np.linalg.svd(M, full_matrices=False)
    return u @ vh


def _orthonormal_split(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of the range of ``A`` and of its complement."""
    n = A.shape[0]
    u, s, _ = np.linalg.svd(A, full_matrices=True)
    r = int(np.sum(s > PIVOT_TOL * max(1.0, s[0] if s.size else 1.0)))
    return u[:, :r], u[:, r:n]


def _phase_assignment(F: np.ndarray, G: np.ndarray) -> np.ndarray | None:
    """Phases ``t_j`` with ``<f_i, f_j> = t_i conj(t_j) <g_i, g_j>``, or ``None``."""
    p = F.shape[1]
    GF = F.conj().T @ F  # GF[j, i] = <f_i, f_j>
    GG = G.conj().T @ G
    if np.max(np.abs(np.abs(GF) - np.abs(GG))) > GRAM_TOL:
        return None
    edge = np.abs(GG) > GRAM_TOL
    phase = np.full(p, np.nan, dtype=complex)
    for root in range(p):
        if not np.isnan(phase[root]):
            continue
        phase[root] = 1.0
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(p):
                if edge[i, j] and np.isnan(phase[j]):
                    # <f_j, f_i> / <g_j, g_i> = t_j conj(t_i)
                    r = GF[i, j] / GG[i, j]
                    phase[j] = phase[i] * r / abs(r)
                    stack.append(j)
    # every edge, tree or not, must be consistent
    for i in range(p):
        for j in range(p):
            if edge[i, j]:
                lhs = GF[i, j]
                rhs = phase[j] * phase[i].conjugate() * GG[i, j]
                if abs(lhs - rhs) > PHASE_TOL:
                    return None
    return phase


def line_tuple_equiv(F: LineTuple, G: LineTuple) -> np.ndarray | None:
    """A unitary ``W`` with ``[W f_j] = [g_j]`` for every ``j``, or ``None``."""
    if F.n != G.n:
        raise AmbientMismatch(f"ambient mismatch: n={F.n} vs n={G.n}")
    if len(F) != len(G):
        raise ValueError(f"tuple lengths differ: {len(F)} vs {len(G)}")
    Fm, Gm = F.matrix(), G.matrix()
    phase = _phase_assignment(Fm, Gm)
    if phase is None:
        return None
    H = Gm * phase[None, :]
    # shared Gram matrix: an isometry span F -> span H sends f_j to h_j
    u, s, vh = np.linalg.svd(Fm, full_matrices=False)
    r = int(np.sum(s > PIVOT_TOL * max(1.0, s[0])))
    Ur = u[:, :r]
    Vr = vh[:r].conj().T
    Ur_img = _closest_unitary(H @ Vr / s[:r]) if r else H[:, :0]
    _, CF = _orthonormal_split(Ur)
    _, CH = _orthonormal_split(Ur_img)
    W = Ur_img @ Ur.conj().T
    if CF.shape[1]:
        W = W + CH @ _closest_unitary(CH.conj().T @ CF) @ CF.conj().T
    if not _replay_lines(W, F, G):
        return None
    return W


def _replay_lines(W: np.ndarray, F: LineTuple, G: LineTuple, tol: float = REPLAY_TOL) -> bool:
    if np.max(np.abs(W.conj().T @ W - np.eye(F.n))) > tol:
        return False
    return all(abs(np.vdot(g, W @ f)) > 1.0 - tol for f, g in zip(F.lines, G.lines))


def replay_shift_witness(F: LineTuple, G: LineTuple, w: Witness, tol: float = REPLAY_TOL) -> bool:
    """Check ``[W f_j] = [g_{j+k}]`` for all ``j``."""
    return _replay_lines(w.unitary, F, G.rotate(w.shift), tol)


def cuntz_state_conjugate(F: LineTuple, G: LineTuple) -> ConjugacyVerdict:
    """Decide whether ``[W f_j]`` is a cyclic rotation of ``[g_j]`` for some unitary ``W``.

    All shifts are tried.  A shift at which the lines already agree (so
    ``W = I`` works) is preferred, otherwise the smallest working shift wins.
    """
    if len(F) != len(G):
        raise ValueError(f"tuple lengths differ: {len(F)} vs {len(G)}")
    if F.n != G.n:
        raise AmbientMismatch(f"ambient mismatch: n={F.n} vs n={G.n}")
    p = len(F)
    I = np.eye(F.n, dtype=complex)
    found = None
    for k in range(p):
        Gk = G.rotate(k)
        if _replay_lines(I, F, Gk):
            return ConjugacyVerdict(CONJUGATE, Witness(shift=k, unitary=I))
        if found is None:
            W = line_tuple_equiv(F, Gk)
            if W is not None:
                found = Witness(shift=k, unitary=W)
    if found is not None:
        return ConjugacyVerdict(CONJUGATE, found)
    return ConjugacyVerdict(NOT_CONJUGATE)


def tail_tuple(f: ProductState) -> LineTuple:
    return LineTuple(f.n, f.seq.period_block)


def _same_n(f: ProductState, g: ProductState):
    if f.n != g.n:
        raise AmbientMismatch(f"ambient mismatch: n={f.n} vs n={g.n}")


def ergodic_conjugate(f: ProductState, g: ProductState) -> ConjugacyVerdict:
    """Is there a unitary ``W`` taking the quasi-orbit of ``omega_f`` onto that of ``omega_g``?"""
    _same_n(f, g)
    pf, pg = period(f), period(g)
    if pf != pg:
        return ConjugacyVerdict(NOT_CONJUGATE, details={"periods": (pf, pg)})
    return cuntz_state_conjugate(tail_tuple(f), tail_tuple(g))


def endo_conjugate(f: ProductState, mu: CircleMeasure, g: ProductState, nu: CircleMeasure) -> ConjugacyVerdict:
    _same_n(f, g)
    orbit = ergodic_conjugate(f, g)
    if not orbit.positive:
        return ConjugacyVerdict(NOT_CONJUGATE, details={"reason": "quasi-orbits not unitarily related", **orbit.details})
    lam = translate_equivalent(mu, nu)
    if lam is None:
        return ConjugacyVerdict(NOT_CONJUGATE, details={"reason": "no translate of nu is equivalent to mu"})
    w = orbit.witness
    return ConjugacyVerdict(CONJUGATE, Witness(shift=w.shift, unitary=w.unitary, rotation=lam))


def extension_compare(f: ProductState, mu: CircleMeasure, g: ProductState, nu: CircleMeasure) -> ConjugacyVerdict:
    """Unitary equivalence or disjointness of two extensions of periodic product states.

    Across different states in one quasi-orbit only equivalence up to the
    gauge action is decided.
    """
    _same_n(f, g)
    if not same_quasi_orbit(f, g):
        return ConjugacyVerdict(DISJOINT, details={"reason": "different quasi-orbits"})
    if f.seq.same_lines(g.seq):
        if measures_equivalent(mu, nu):
            return ConjugacyVerdict(EQUIVALENT, Witness(rotation=1 + 0j))
        if measures_disjoint(mu, nu):
            return ConjugacyVerdict(DISJOINT, details={"reason": "mutually singular measures"})
        common, only_mu, only_nu = shared_atoms(mu, nu)
        return ConjugacyVerdict(
            NEITHER,
            details={
                "common_atoms": common,
                "only_first": only_mu,
                "only_second": only_nu,
                "haar": (mu.haar_weight, nu.haar_weight),
            },
        )
    lam = translate_equivalent(mu, nu)
    if lam is not None:
        return ConjugacyVerdict(EQUIVALENT_UP_TO_GAUGE, Witness(rotation=lam))
    return ConjugacyVerdict(DISJOINT, details={"reason": "no translate of nu is equivalent to mu"})
