"""Circle measures and the state extensions of a periodic product state to O_n.

A :class:`CircleMeasure` is ``haar_weight * Haar + sum_j w_j delta_{c_j}``.
For a product state ``omega_f`` of period ``p`` and the linking vector
``e_1 x ... x e_1 (p times) x f_1 x f_2 x ...``, the extension with
parameter ``mu`` is evaluated on ``v_s v_t*`` of degree ``k >= 0`` as

    T(s, t) * moment(mu, k / p)       if p divides k, else 0,

where ``T`` is a finite product of slotwise inner products read off the
tensor-product picture of the GNS space.  Negative degrees use
``rho(x) = conj(rho(x*))``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .algebra import AlgebraElement, AmbientMismatch, Monomial, UNIMODULAR_TOL
from .product_states import ProductState, core_monomial_value, period

WEIGHT_TOL = 1e-10
POINT_TOL = 1e-9
LOAD_MODULUS_TOL = 1e-6


@dataclass(frozen=True)
class CircleMeasure:
    haar_weight: float = 0.0
    atoms: tuple[tuple[complex, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        hw = float(self.haar_weight)
        if hw < -WEIGHT_TOL:
            raise ValueError("negative Haar weight")
        hw = max(hw, 0.0)
        atoms = []
        for c, w in self.atoms:
            c = complex(c)
            w = float(w)
            if abs(abs(c) - 1.0) > UNIMODULAR_TOL:
                raise ValueError(f"atom {c} is not on the unit circle")
            if w <= 0:
                raise ValueError("atom weights must be positive")
            atoms.append((c, w))
        atoms.sort(key=lambda cw: _arg(cw[0]))
        for (a, _), (b, _) in zip(atoms, atoms[1:]):
            if abs(a - b) <= POINT_TOL:
                raise ValueError(f"atoms {a} and {b} coincide")
        if len(atoms) > 1 and abs(atoms[0][0] - atoms[-1][0]) <= POINT_TOL:
            raise ValueError("atoms coincide across the branch cut")
        total = hw + sum(w for _, w in atoms)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"total mass {total} is not 1")
        object.__setattr__(self, "haar_weight", hw)
        object.__setattr__(self, "atoms", tuple(atoms))

    @classmethod
    def haar(cls) -> "CircleMeasure":
        return cls(1.0, ())

    @classmethod
    def point(cls, c: complex) -> "CircleMeasure":
        return cls(0.0, ((c, 1.0),))

    @classmethod
    def mixture(cls, atoms: Iterable[tuple[complex, float]], haar_weight: float = 0.0) -> "CircleMeasure":
        return cls(haar_weight, tuple(atoms))

    @property
    def points(self) -> list[complex]:
        return [c for c, _ in self.atoms]

    @property
    def weights(self) -> list[float]:
        return [w for _, w in self.atoms]

    def is_atomic(self) -> bool:
        return self.haar_weight <= WEIGHT_TOL

    def rotate(self, lam: complex) -> "CircleMeasure":
        """Push the measure forward along ``z -> lam z``."""
        lam = complex(lam)
        return CircleMeasure(self.haar_weight, tuple((lam * c / abs(lam * c), w) for c, w in self.atoms))


def _arg(c: complex) -> float:
    a = cmath.phase(c)
    return a + 2 * np.pi if a < 0 else a


def moment(mu: CircleMeasure, m: int) -> complex:
    """``int z^m dmu``."""
    val = complex(mu.haar_weight) if m == 0 else 0j
    for c, w in mu.atoms:
        val += w * c**m
    return val


@dataclass(frozen=True)
class ExtensionState:
    base: ProductState
    measure: CircleMeasure

    @property
    def p(self) -> int:
        return period(self.base)


def _tensor_factor(f: ProductState, s: tuple[int, ...], t: tuple[int, ...]) -> complex:
    """``<pi_0(v_s v_t* v_1*^k) xi_k, xi_0>`` for ``k = |s| - |t| >= 0``."""
    seq = f.seq
    k = len(s) - len(t)
    m = len(s)
    # v_t* v_1*^k = (v_1^k v_t)*, so the annihilated letters read 1^k then t
    t_full = (1,) * k + t
    val = 1 + 0j
    for i in range(1, m + 1):
        slot = seq[i - k] if i > k else None
        a = t_full[i - 1]
        if slot is None:
            if a != 1:
                return 0j
        else:
            val *= slot[a - 1]
        fi = seq[i]
        val *= fi[s[i - 1] - 1].conjugate()
        if val == 0:
            return 0j
    for j in range(m + 1, seq.pre_len + k + 1):
        val *= np.vdot(seq[j], seq[j - k])
        if val == 0:
            return 0j
    return complex(val)


def monomial_value(f: ProductState, mu: CircleMeasure, m: Monomial) -> complex:
    k = m.degree
    if k < 0:
        return monomial_value(f, mu, m.adjoint()).conjugate()
    p = period(f)
    if k % p:
        return 0j
    mom = moment(mu, k // p)
    if mom == 0:
        return 0j
    if k == 0:
        return core_monomial_value(f, m) * mom
    return _tensor_factor(f, m.s, m.t) * mom


def extend_eval(rho: ExtensionState, x: AlgebraElement) -> complex:
    f, mu = rho.base, rho.measure
    if x.n != f.n:
        raise AmbientMismatch(f"ambient mismatch: state n={f.n}, element n={x.n}")
    total = 0j
    for m, c in x.items():
        total += c * monomial_value(f, mu, m)
    return total


def is_pure_extension(mu: CircleMeasure) -> bool:
    return (
        mu.haar_weight <= WEIGHT_TOL
        and len(mu.atoms) == 1
        and abs(mu.atoms[0][1] - 1.0) <= WEIGHT_TOL
    )


def gauge_on_measure(lam: complex, p: int, mu: CircleMeasure) -> CircleMeasure:
    """Measure ``nu`` with ``rho[mu] o gamma_lam = rho[nu]``: atoms move by ``lam**p``."""
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > UNIMODULAR_TOL:
        raise ValueError(f"|lambda| = {abs(lam)} is not 1")
    if p < 1:
        raise ValueError("period must be positive")
    return mu.rotate(lam**p)


def _supports_match(a: list[complex], b: list[complex]) -> bool:
    if len(a) != len(b):
        return False
    used = [False] * len(b)
    for c in a:
        for j, d in enumerate(b):
            if not used[j] and abs(c - d) <= POINT_TOL:
                used[j] = True
                break
        else:
            return False
    return True


def _has_haar(mu: CircleMeasure) -> bool:
    return mu.haar_weight > WEIGHT_TOL


def measures_equivalent(mu: CircleMeasure, nu: CircleMeasure) -> bool:
    """Mutual absolute continuity within the Haar-plus-atoms class."""
    return _has_haar(mu) == _has_haar(nu) and _supports_match(mu.points, nu.points)


def measures_disjoint(mu: CircleMeasure, nu: CircleMeasure) -> bool:
    if _has_haar(mu) and _has_haar(nu):
        return False
    return not any(abs(c - d) <= POINT_TOL for c in mu.points for d in nu.points)


def shared_atoms(mu: CircleMeasure, nu: CircleMeasure) -> tuple[list[complex], list[complex], list[complex]]:
    """Split supports into (common, only in mu, only in nu)."""
    common = [c for c in mu.points if any(abs(c - d) <= POINT_TOL for d in nu.points)]
    only_mu = [c for c in mu.points if c not in common]
    only_nu = [d for d in nu.points if not any(abs(c - d) <= POINT_TOL for c in mu.points)]
    return common, only_mu, only_nu


def translate_equivalent(mu: CircleMeasure, nu: CircleMeasure) -> complex | None:
    """Some ``lam`` with ``mu`` equivalent to ``nu.rotate(lam)``, or ``None``."""
    if _has_haar(mu) != _has_haar(nu) or len(mu.atoms) != len(nu.atoms):
        return None
    if not mu.atoms:
        return 1 + 0j
    b = nu.points[0]
    for a in mu.points:
        lam = a / b
        lam /= abs(lam)
        if measures_equivalent(mu, nu.rotate(lam)):
            return lam
    return None
