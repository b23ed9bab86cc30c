"""Pure product states of the UHF core from eventually periodic vector sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import AlgebraElement, AmbientMismatch, Monomial

NORM_TOL = 1e-10
PHASE_TOL = 1e-10
LINE_TOL = 1e-9


class NotInCore(ValueError):
    """Raised when a product state is asked to evaluate a nonzero-degree term."""


def canonical_vector(v, n: int | None = None) -> np.ndarray:
    """Normalize phase so the first coordinate of modulus > 1e-10 is real positive."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if n is not None and v.shape[0] != n:
        raise AmbientMismatch(f"vector of length {v.shape[0]} in dimension {n}")
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > NORM_TOL:
        raise ValueError(f"vector norm {nrm} is not 1")
    v = v / nrm
    for c in v:
        if abs(c) > PHASE_TOL:
            v = v * (abs(c) / c)
            break
    v.setflags(write=False)
    return v


def same_line(u: np.ndarray, v: np.ndarray, tol: float = LINE_TOL) -> bool:
    return abs(np.vdot(v, u)) > 1.0 - tol


def basis_vector(n: int, a: int) -> np.ndarray:
    e = np.zeros(n, dtype=complex)
    e[a - 1] = 1.0
    e.setflags(write=False)
    return e


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """``<u, v>``, linear in ``u``."""
    return complex(np.vdot(v, u))


def _minimal_block(block: list[np.ndarray]) -> list[np.ndarray]:
    L = len(block)
    for d in range(1, L + 1):
        if L % d:
            continue
        if all(same_line(block[j], block[j % d]) for j in range(L)):
            return block[:d]
    return block


@dataclass(frozen=True, eq=False)
class VectorSequence:
    """``f = (preperiod..., block, block, ...)`` stored in canonical form.

    Vectors are phase-normalized, the period block is minimal and no trailing
    preperiod vector matches the line it would occupy in the periodic tail,
    so ``f_i`` beyond the preperiod repeats *exactly* with the period.
    """

    n: int
    preperiod: tuple[np.ndarray, ...]
    period_block: tuple[np.ndarray, ...]

    @classmethod
    def build(cls, n: int, preperiod: Sequence, period: Sequence) -> "VectorSequence":
        if n < 2:
            raise ValueError("n must be at least 2")
        if len(period) == 0:
            raise ValueError("period block must be nonempty")
        return cls._assemble(
            n, [canonical_vector(v, n) for v in preperiod], [canonical_vector(v, n) for v in period]
        )

    @classmethod
    def _assemble(cls, n: int, pre: list, block: list) -> "VectorSequence":
        # vectors are already canonical; reusing them keeps shifts bit-exact
        pre = list(pre)
        block = _minimal_block(list(block))
        while pre and same_line(pre[-1], block[-1]):
            pre.pop()
            block = [block[-1]] + block[:-1]
        return cls(n, tuple(pre), tuple(block))

    @property
    def p(self) -> int:
        return len(self.period_block)

    @property
    def pre_len(self) -> int:
        return len(self.preperiod)

    def __getitem__(self, i: int) -> np.ndarray:
        """``f_i`` for ``i >= 1``."""
        if i < 1:
            raise IndexError("sequence is indexed from 1")
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        return self.period_block[(i - len(self.preperiod) - 1) % self.p]

    def head(self, count: int) -> list[np.ndarray]:
        return [self[i] for i in range(1, count + 1)]

    def __eq__(self, other):
        if not isinstance(other, VectorSequence):
            return NotImplemented
        return (
            self.n == other.n
            and len(self.preperiod) == len(other.preperiod)
            and len(self.period_block) == len(other.period_block)
            and all(
                np.array_equal(a, b)
                for a, b in zip(self.preperiod + self.period_block, other.preperiod + other.period_block)
            )
        )

    def same_lines(self, other: "VectorSequence") -> bool:
        """Equality of canonical forms up to the line tolerance."""
        return (
            self.n == other.n
            and len(self.preperiod) == len(other.preperiod)
            and self.p == other.p
            and all(
                same_line(a, b)
                for a, b in zip(self.preperiod + self.period_block, other.preperiod + other.period_block)
            )
        )

    def __hash__(self):
        return hash((self.n, len(self.preperiod), self.p))


class ProductState:
    """The pure product state ``omega_f`` of F_n."""

    __slots__ = ("seq",)

    def __init__(self, seq: VectorSequence):
        self.seq = seq

    @classmethod
    def from_vectors(cls, n: int, preperiod=(), period=()) -> "ProductState":
        return cls(VectorSequence.build(n, preperiod, period))

    @classmethod
    def basis(cls, n: int, preperiod=(), period=(1,)) -> "ProductState":
        """State from letters, e.g. ``period=(1, 2)`` for the alternating e_1, e_2 state."""
        return cls.from_vectors(
            n, [basis_vector(n, a) for a in preperiod], [basis_vector(n, a) for a in period]
        )

    @property
    def n(self) -> int:
        return self.seq.n

    def __eq__(self, other):
        return isinstance(other, ProductState) and self.seq == other.seq

    def __hash__(self):
        return hash(self.seq)

    def __repr__(self):
        return f"ProductState(n={self.n}, pre={len(self.seq.preperiod)}, p={self.seq.p})"


def core_monomial_value(f: ProductState, m: Monomial) -> complex:
    """``omega_f(v_s v_t*)`` for ``|s| = |t|``."""
    seq = f.seq
    val = 1 + 0j
    for i, (a, b) in enumerate(zip(m.s, m.t), start=1):
        fi = seq[i]
        val *= fi[a - 1].conjugate() * fi[b - 1]
        if val == 0:
            break
    return complex(val)


def eval_product_state(f: ProductState, x: AlgebraElement) -> complex:
    if x.n != f.n:
        raise AmbientMismatch(f"ambient mismatch: state n={f.n}, element n={x.n}")
    total = 0j
    for m, c in x.items():
        if m.degree != 0:
            raise NotInCore(f"term of degree {m.degree} is not in the UHF core")
        total += c * core_monomial_value(f, m)
    return total


def shift_back(f: ProductState) -> ProductState:
    """Drop ``f_1``."""
    seq = f.seq
    if seq.preperiod:
        return ProductState(VectorSequence._assemble(seq.n, seq.preperiod[1:], seq.period_block))
    block = seq.period_block
    return ProductState(VectorSequence._assemble(seq.n, (), block[1:] + block[:1]))


def shift_forward(f: ProductState) -> ProductState:
    """Prepend ``e_1``."""
    seq = f.seq
    return ProductState(
        VectorSequence._assemble(seq.n, (basis_vector(seq.n, 1),) + seq.preperiod, seq.period_block)
    )


def period(f: ProductState) -> int:
    return f.seq.p


def _order_key(v: np.ndarray):
    return tuple(x for c in v for x in (round(c.real, 8), round(c.imag, 8)))


@dataclass(frozen=True)
class QuasiOrbitRep:
    line_tuple: tuple[np.ndarray, ...]

    def __eq__(self, other):
        if not isinstance(other, QuasiOrbitRep):
            return NotImplemented
        return len(self.line_tuple) == len(other.line_tuple) and all(
            same_line(a, b) for a, b in zip(self.line_tuple, other.line_tuple)
        )

    def __hash__(self):
        return len(self.line_tuple)


def quasi_orbit_rep(f: ProductState) -> QuasiOrbitRep:
    block = f.seq.period_block
    p = len(block)
    rotations = [block[k:] + block[:k] for k in range(p)]
    best = min(rotations, key=lambda r: [_order_key(v) for v in r])
    return QuasiOrbitRep(tuple(best))


def _rotation_match(a: Sequence[np.ndarray], b: Sequence[np.ndarray]) -> int | None:
    if len(a) != len(b):
        return None
    p = len(a)
    for k in range(p):
        if all(same_line(a[j], b[(j + k) % p]) for j in range(p)):
            return k
    return None


def same_quasi_orbit(f: ProductState, g: ProductState) -> bool:
    if f.n != g.n:
        raise AmbientMismatch(f"ambient mismatch: n={f.n} vs n={g.n}")
    return _rotation_match(f.seq.period_block, g.seq.period_block) is not None


def shifts_unitarily_equivalent(f: ProductState, k: int, l: int) -> bool:
    """Whether ``beta*^k omega_f`` and ``beta*^l omega_f`` are unitarily equivalent."""
    if k < 0 or l < 0:
        raise ValueError("shift counts must be nonnegative")
    return (k - l) % period(f) == 0


def pushforward(f: ProductState, W) -> ProductState:
    """``omega_f o gamma_W`` as a product state, i.e. ``omega_{W* f}``."""
    W = np.asarray(W, dtype=complex)
    Wh = W.conj().T
    seq = f.seq

    def move(v):
        u = Wh @ v
        return u / np.linalg.norm(u)

    return ProductState.from_vectors(
        seq.n, [move(v) for v in seq.preperiod], [move(v) for v in seq.period_block]
    )
