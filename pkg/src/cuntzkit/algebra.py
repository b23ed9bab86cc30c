"""Finite linear combinations of reduced Cuntz monomials ``v_s v_t*``.

Every word in the generators and their adjoints reduces, via
``v_j* v_i = delta_ij 1``, to zero or to a single monomial ``v_s v_t*``.
Elements are stored as a map from such monomials to complex coefficients.
The relation ``sum_a v_a v_a* = 1`` is *not* used for rewriting, so the
representation of an element is not unique as an element of O_n; it is
unique as a formal combination.
"""

from __future__ import annotations

import cmath
import itertools
from typing import Iterable, Mapping, NamedTuple

import numpy as np

DROP_TOL = 1e-14
EQ_TOL = 1e-12
UNIMODULAR_TOL = 1e-12
UNITARY_TOL = 1e-9
MAX_EXPANSION = 10**6


class AmbientMismatch(ValueError):
    pass


class Monomial(NamedTuple):
    """The monomial ``v_s v_t*`` with letters in ``1..n``."""

    s: tuple[int, ...] = ()
    t: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.s) - len(self.t)

    def key(self):
        return (len(self.s), self.s, len(self.t), self.t)

    def adjoint(self) -> "Monomial":
        return Monomial(self.t, self.s)

    def is_unit(self) -> bool:
        return not self.s and not self.t


UNIT = Monomial((), ())


def gauge_degree(m: Monomial) -> int:
    return len(m.s) - len(m.t)


def mono_mul(a: Monomial, b: Monomial) -> Monomial | None:
    """Product of two reduced monomials; ``None`` stands for zero."""
    t, u = a.t, b.s
    if len(t) <= len(u):
        if u[: len(t)] != t:
            return None
        return Monomial(a.s + u[len(t):], b.t)
    if t[: len(u)] != u:
        return None
    # v_t* v_u = v_r* with t = u + r, and v_r* v_w* = (v_w v_r)*
    return Monomial(a.s, b.t + t[len(u):])


def _check_letters(m: Monomial, n: int) -> None:
    for a in itertools.chain(m.s, m.t):
        if not 1 <= a <= n:
            raise ValueError(f"letter {a} out of range 1..{n}")


class AlgebraElement:
    """Immutable finite combination ``sum c_m m`` over reduced monomials."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Monomial, complex] | None = None, *, _trusted=False):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        if _trusted:
            self._terms = terms
            return
        clean: dict[Monomial, complex] = {}
        for m, c in (terms or {}).items():
            m = Monomial(tuple(m[0]), tuple(m[1]))
            _check_letters(m, n)
            c = complex(c)
            if abs(c) > DROP_TOL:
                clean[m] = c
        self._terms = clean

    # construction helpers

    @classmethod
    def from_terms(cls, n: int, pairs: Iterable[tuple[complex, Monomial]]) -> "AlgebraElement":
        acc: dict[Monomial, complex] = {}
        for c, m in pairs:
            acc[m] = acc.get(m, 0j) + complex(c)
        return cls(n, acc)

    @classmethod
    def monomial(cls, n: int, s=(), t=(), coeff: complex = 1.0) -> "AlgebraElement":
        return cls(n, {Monomial(tuple(s), tuple(t)): coeff})

    @classmethod
    def unit(cls, n: int) -> "AlgebraElement":
        return cls(n, {UNIT: 1.0})

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls(n, {})

    @classmethod
    def generator(cls, n: int, a: int) -> "AlgebraElement":
        return cls(n, {Monomial((a,), ()): 1.0})

    # access

    @property
    def terms(self) -> dict[Monomial, complex]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical monomial order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].key())

    def coeff(self, m: Monomial) -> complex:
        return self._terms.get(m, 0j)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def max_degree(self) -> int:
        return max((abs(m.degree) for m in self._terms), default=0)

    def degrees(self) -> set[int]:
        return {m.degree for m in self._terms}

    # arithmetic

    def _same(self, other: "AlgebraElement") -> None:
        if self.n != other.n:
            raise AmbientMismatch(f"ambient mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = AlgebraElement(self.n, {UNIT: other})
        self._same(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0j) + c
        return AlgebraElement(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: complex) -> "AlgebraElement":
        return AlgebraElement(self.n, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return elem_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def adjoint(self) -> "AlgebraElement":
        return adjoint(self)

    @property
    def H(self) -> "AlgebraElement":
        return adjoint(self)

    def allclose(self, other: "AlgebraElement", tol: float = EQ_TOL) -> bool:
        self._same(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coeff(m) - other.coeff(m)) <= tol for m in keys)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        return f"AlgebraElement(n={self.n}, {render(self)!r})"

    def __str__(self):
        return render(self)


def elem_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._same(y)
    acc: dict[Monomial, complex] = {}
    for a, ca in x._terms.items():
        if a.is_unit():
            for b, cb in y._terms.items():
                acc[b] = acc.get(b, 0j) + ca * cb
            continue
        for b, cb in y._terms.items():
            m = a if b.is_unit() else mono_mul(a, b)
            if m is not None:
                acc[m] = acc.get(m, 0j) + ca * cb
    return AlgebraElement(x.n, acc)


def product(*xs: AlgebraElement) -> AlgebraElement:
    out = xs[0]
    for x in xs[1:]:
        out = elem_mul(out, x)
    return out


def adjoint(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(
        x.n, {m.adjoint(): c.conjugate() for m, c in x._terms.items()}, _trusted=True
    )


def conditional_expectation(x: AlgebraElement) -> AlgebraElement:
    """Keep the degree-zero part."""
    return AlgebraElement(
        x.n, {m: c for m, c in x._terms.items() if m.degree == 0}, _trusted=True
    )


def _check_unimodular(lam: complex) -> complex:
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > UNIMODULAR_TOL:
        raise ValueError(f"|lambda| = {abs(lam)} is not 1")
    return lam


def gauge_auto(lam: complex, x: AlgebraElement) -> AlgebraElement:
    lam = _check_unimodular(lam)
    return AlgebraElement(x.n, {m: c * lam**m.degree for m, c in x._terms.items()})


def check_unitary(W, tol: float = UNITARY_TOL) -> np.ndarray:
    W = np.asarray(W, dtype=complex)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError("W must be a square matrix")
    dev = np.max(np.abs(W.conj().T @ W - np.eye(W.shape[0])))
    if dev > tol:
        raise ValueError(f"W is not unitary (max deviation {dev:.3g})")
    return W


def quasi_free_auto(W, x: AlgebraElement) -> AlgebraElement:
    """Apply the automorphism with ``v_a -> sum_b W[b, a] v_b``."""
    W = check_unitary(W)
    n = x.n
    if W.shape[0] != n:
        raise AmbientMismatch(f"W is {W.shape[0]}x{W.shape[0]} but n={n}")
    size = sum(n ** (len(m.s) + len(m.t)) for m in x._terms)
    if size > MAX_EXPANSION:
        raise ValueError(f"expansion of {size} terms exceeds {MAX_EXPANSION}")
    # column a of W lists the image of letter a
    cols = [[(b + 1, W[b, a]) for b in range(n) if abs(W[b, a]) > DROP_TOL] for a in range(n)]
    acc: dict[Monomial, complex] = {}
    for m, c in x._terms.items():
        s_choices = [cols[a - 1] for a in m.s]
        t_choices = [cols[a - 1] for a in m.t]
        for s_pick in itertools.product(*s_choices):
            cs = c
            for _, w in s_pick:
                cs *= w
            s_new = tuple(b for b, _ in s_pick)
            for t_pick in itertools.product(*t_choices):
                ct = cs
                for _, w in t_pick:
                    ct *= w.conjugate()
                key = Monomial(s_new, tuple(b for b, _ in t_pick))
                acc[key] = acc.get(key, 0j) + ct
    return AlgebraElement(n, acc)


# rendering


def _fmt_float(v: float) -> str:
    return repr(float(v))


def render_monomial(m: Monomial) -> str:
    if m.is_unit():
        return "1"
    # v_t* = v_{t_l}* ... v_{t_1}*, so read as a product the adjoint letters run backwards
    toks = [f"v{a}" for a in m.s] + [f"v{a}*" for a in reversed(m.t)]
    return " ".join(toks)


def render(x: AlgebraElement) -> str:
    """Canonical text: ``(re,im) word`` terms in monomial-key order joined by ``+``."""
    if x.is_zero():
        return "(0.0,0.0) 1"
    parts = []
    for m, c in x.items():
        parts.append(f"({_fmt_float(c.real)},{_fmt_float(c.imag)}) {render_monomial(m)}")
    return " + ".join(parts)


def roots_of_unity_average(x: AlgebraElement, K: int) -> AlgebraElement:
    """Average of ``gauge_auto(w, x)`` over the K-th roots of unity."""
    acc = AlgebraElement.zero(x.n)
    for j in range(K):
        acc = acc + gauge_auto(cmath.exp(2j * cmath.pi * j / K), x)
    return acc.scale(1.0 / K)
