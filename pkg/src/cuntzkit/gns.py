"""Exact model of the representation pi[rho, xi_p, theta] for atomic theta.

The GNS space of ``beta*^i omega_f`` is an incomplete infinite tensor
product whose reference vector is ``e_1 x ... x e_1 (i times) x f_1 x f_2 ...``.
In these coordinates the isometry ``S_{a,i}`` prepends ``e_a`` and moves the
vector from component ``i`` to ``i + 1``; on the way from component ``p - 1``
back to ``0`` it also multiplies by ``theta(z)``, which for an atomic measure
is the point ``c_j`` of the atom carrying the vector.

A primitive is ``(component, atom, window, tail)``: the tensor whose first
``len(window)`` slots hold the window vectors and whose slot
``len(window) + r`` holds ``f_{tail + r}`` for ``r >= 1``.  Window entries are
integer tokens into a table of vectors ``e_1..e_n, f_1..f_{pre+p}``.  Nothing
is truncated: the model is exact up to floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import AlgebraElement, AmbientMismatch, DROP_TOL, Monomial, elem_mul
from .extensions import CircleMeasure
from .product_states import ProductState, basis_vector

PRUNE_TOL = 1e-12


class UnsupportedMeasure(ValueError):
    pass


class Primitive(NamedTuple):
    component: int
    atom: int
    window: tuple[int, ...]
    tail: int


class SimContext:
    """Immutable data shared by all vectors of one representation."""

    def __init__(self, f: ProductState, mu: CircleMeasure):
        if not mu.is_atomic():
            raise UnsupportedMeasure("the simulator needs a purely atomic measure; handle Haar via Phi")
        self.state = f
        self.measure = mu
        seq = f.seq
        self.n = seq.n
        self.p = seq.p
        self.pre = seq.pre_len
        self.points = [complex(c) for c in mu.points]
        self.weights = [float(w) for w in mu.weights]
        vecs = [basis_vector(self.n, a) for a in range(1, self.n + 1)]
        vecs += seq.head(self.pre + self.p)
        V = np.array(vecs)
        self.vectors = V
        G = V @ V.conj().T
        # gram[i][j] = <V_i, V_j> as python complex for fast scalar lookups
        self.gram = [[complex(G[i, j]) for j in range(len(vecs))] for i in range(len(vecs))]
        diff = np.max(np.abs(V[:, None, :] - V[None, :, :]), axis=2)
        self.same = [[bool(diff[i, j] <= PRUNE_TOL) for j in range(len(vecs))] for i in range(len(vecs))]

    def ftok(self, j: int) -> int:
        """Token of ``f_j`` for ``j >= 1``."""
        if j > self.pre + self.p:
            j = self.pre + (j - self.pre - 1) % self.p + 1
        return self.n + j - 1

    def norm_tail(self, q: int) -> int:
        while q >= self.pre + self.p:
            q -= self.p
        return q

    def slot(self, prim: Primitive, j: int) -> int:
        m = len(prim.window)
        if j <= m:
            return prim.window[j - 1]
        return self.ftok(j - m + prim.tail)

    def compatible(self, other: "SimContext") -> bool:
        return self is other or (
            self.state == other.state and self.points == other.points and self.weights == other.weights
        )


def _prune(ctx: SimContext, window: tuple[int, ...], q: int) -> tuple[tuple[int, ...], int]:
    same = ctx.same
    while window and q >= 1 and same[window[-1]][ctx.ftok(q)]:
        window = window[:-1]
        q -= 1
    return window, ctx.norm_tail(q)


def _prim_inner(ctx: SimContext, a: Primitive, b: Primitive) -> complex:
    ma, mb = len(a.window), len(b.window)
    # beyond M both tails sit in the exactly periodic region
    M = max(ma, mb, ma - a.tail + ctx.pre, mb - b.tail + ctx.pre)
    if ((ma - a.tail) - (mb - b.tail)) % ctx.p:
        return 0j
    gram = ctx.gram
    val = 1 + 0j
    for j in range(1, M + 1):
        val *= gram[ctx.slot(a, j)][ctx.slot(b, j)]
        if val == 0:
            return 0j
    return val


class SimVector:
    """Finite combination of primitives in the direct sum of the ``H_i x K``."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SimContext, terms: dict[Primitive, complex] | None = None):
        self.ctx = ctx
        self.terms = {k: v for k, v in (terms or {}).items() if abs(v) > DROP_TOL}

    def _check(self, other: "SimVector"):
        if not self.ctx.compatible(other.ctx):
            raise AmbientMismatch("vectors belong to different simulator contexts")

    def __add__(self, other: "SimVector") -> "SimVector":
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0j) + v
        return SimVector(self.ctx, acc)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: complex) -> "SimVector":
        return SimVector(self.ctx, {k: c * v for k, v in self.terms.items()})

    __rmul__ = scale

    def norm(self) -> float:
        return math.sqrt(max(inner(self, self).real, 0.0))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def sectors(self) -> set[tuple[int, int]]:
        return {(k.component, k.atom) for k in self.terms}

    def __repr__(self):
        return f"SimVector({len(self.terms)} terms)"


def make_xi(ctx: SimContext, k: int = 0) -> SimVector:
    """``xi_k x 1`` with atom amplitudes ``sqrt(w_j)``; no ``theta(z)`` factors."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    window = (0,) * k
    return SimVector(
        ctx,
        {Primitive(k % ctx.p, j, window, 0): math.sqrt(w) for j, w in enumerate(ctx.weights)},
    )


def inner(v: SimVector, w: SimVector) -> complex:
    """``<v, w>``, linear in ``v``."""
    v._check(w)
    ctx = v.ctx
    total = 0j
    for a, ca in v.terms.items():
        for b, cb in w.terms.items():
            if a.component != b.component or a.atom != b.atom:
                continue
            total += ca * cb.conjugate() * _prim_inner(ctx, a, b)
    return total


def _prepend(ctx: SimContext, prim: Primitive, coef: complex, a: int):
    i = prim.component
    if i == ctx.p - 1:
        coef *= ctx.points[prim.atom]
    window, q = _prune(ctx, (a - 1,) + prim.window, prim.tail)
    return Primitive((i + 1) % ctx.p, prim.atom, window, q), coef


def _strip(ctx: SimContext, prim: Primitive, coef: complex, a: int):
    window, q = prim.window, prim.tail
    if not window:
        q += 1
        window = (ctx.ftok(q),)
    coef *= ctx.gram[window[0]][a - 1]
    if coef == 0:
        return None
    i = prim.component
    if i == 0:
        coef *= ctx.points[prim.atom].conjugate()
    window, q = _prune(ctx, window[1:], q)
    return Primitive((i - 1) % ctx.p, prim.atom, window, q), coef


def _check_letter(ctx: SimContext, a: int):
    if not 1 <= a <= ctx.n:
        raise ValueError(f"letter {a} out of range 1..{ctx.n}")


def apply_generator(ctx: SimContext, a: int, v: SimVector) -> SimVector:
    _check_letter(ctx, a)
    acc: dict[Primitive, complex] = {}
    for prim, c in v.terms.items():
        key, c2 = _prepend(ctx, prim, c, a)
        acc[key] = acc.get(key, 0j) + c2
    return SimVector(ctx, acc)


def apply_generator_adjoint(ctx: SimContext, a: int, v: SimVector) -> SimVector:
    _check_letter(ctx, a)
    acc: dict[Primitive, complex] = {}
    for prim, c in v.terms.items():
        out = _strip(ctx, prim, c, a)
        if out is not None:
            key, c2 = out
            acc[key] = acc.get(key, 0j) + c2
    return SimVector(ctx, acc)


def _apply_monomial_prim(ctx: SimContext, m: Monomial, prim: Primitive, coef: complex):
    for a in m.t:
        out = _strip(ctx, prim, coef, a)
        if out is None:
            return None
        prim, coef = out
    for a in reversed(m.s):
        prim, coef = _prepend(ctx, prim, coef, a)
    return prim, coef


def apply_element(ctx: SimContext, x: AlgebraElement, v: SimVector) -> SimVector:
    if x.n != ctx.n:
        raise AmbientMismatch(f"ambient mismatch: n={x.n} vs simulator n={ctx.n}")
    acc: dict[Primitive, complex] = {}
    for m, cm in x.items():
        for prim, c in v.terms.items():
            out = _apply_monomial_prim(ctx, m, prim, cm * c)
            if out is not None:
                key, c2 = out
                acc[key] = acc.get(key, 0j) + c2
    return SimVector(ctx, acc)


def vector_state(ctx: SimContext, x: AlgebraElement) -> complex:
    """``<pi(x)(xi_0 x 1), xi_0 x 1>``."""
    omega = make_xi(ctx, 0)
    return inner(apply_element(ctx, x, omega), omega)


# finite-rank operators


@dataclass(frozen=True)
class Dyad:
    """The rank-one operator ``|ket><bra|``."""

    ket: SimVector
    bra: SimVector

    def apply(self, v: SimVector) -> SimVector:
        return self.ket.scale(inner(v, self.bra))


def endo_apply(ctx: SimContext, A: list[tuple[complex, Dyad]]) -> list[tuple[complex, Dyad]]:
    """``A -> sum_a S_a A S_a*`` on a weighted list of dyads."""
    out = []
    for w, d in A:
        if not (ctx.compatible(d.ket.ctx) and ctx.compatible(d.bra.ctx)):
            raise AmbientMismatch("dyad belongs to a different simulator context")
        for a in range(1, ctx.n + 1):
            out.append((w, Dyad(apply_generator(ctx, a, d.ket), apply_generator(ctx, a, d.bra))))
    return out


def apply_operator(A: list[tuple[complex, Dyad]], v: SimVector) -> SimVector:
    acc = SimVector(v.ctx)
    for w, d in A:
        acc = acc + d.apply(v).scale(w)
    return acc


def trace(A: list[tuple[complex, Dyad]]) -> complex:
    return sum((w * inner(d.ket, d.bra) for w, d in A), 0j)


# relation checks


def deviation(u: SimVector, v: SimVector, probes: list[SimVector] = ()) -> float:
    """Weak distance ``max |<u - v, w>|`` over ``w`` in ``{u, v} + probes``.

    Linear in the difference, so floating-point cancellation is not
    amplified by a square root.
    """
    d = u - v
    if d.is_zero():
        return 0.0
    return max(abs(inner(d, w)) for w in [u, v, *probes])


def random_sim_vector(ctx: SimContext, rng: np.random.Generator, max_len: int = 3, max_terms: int = 3) -> SimVector:
    """Unit vector built from shifted ``xi_k`` by random generator words."""
    for _ in range(100):
        acc = SimVector(ctx)
        for _ in range(int(rng.integers(1, max_terms + 1))):
            k = int(rng.integers(0, 2 * ctx.p + 1))
            atom = int(rng.integers(0, len(ctx.points)))
            v = SimVector(ctx, {Primitive(k % ctx.p, atom, (0,) * k, 0): 1.0})
            for _ in range(int(rng.integers(0, max_len + 1))):
                a = int(rng.integers(1, ctx.n + 1))
                if rng.random() < 0.5:
                    v = apply_generator(ctx, a, v)
                else:
                    v = apply_generator_adjoint(ctx, a, v)
            c = complex(rng.normal(), rng.normal())
            acc = acc + v.scale(c)
        nrm = acc.norm()
        if nrm > 1e-6:
            return acc.scale(1.0 / nrm)
    return make_xi(ctx, 0)


def check_relations(ctx: SimContext, max_len: int = 4, trials: int = 200, seed: int = 0) -> dict:
    """Replay the Cuntz and intertwining identities on random vectors.

    Returns the maximal weak deviation per identity, together with the
    trial count and seed.
    """
    from .sampling import random_core_element

    rng = np.random.default_rng(seed)
    n, p = ctx.n, ctx.p
    dev = {"isometry_orthogonality": 0.0, "range_sum": 0.0, "v1v1_fixes_xi": 0.0, "AdS": 0.0}
    for i in range(1, p + 1):
        xi = make_xi(ctx, i)
        P = AlgebraElement.monomial(n, (1,), (1,))
        dev["v1v1_fixes_xi"] = max(dev["v1v1_fixes_xi"], deviation(apply_element(ctx, P, xi), xi))
    v1 = AlgebraElement.generator(n, 1)
    for _ in range(trials):
        v = random_sim_vector(ctx, rng, max_len=max_len)
        probes = [random_sim_vector(ctx, rng, max_len=max_len)]
        lifted = {a: apply_generator(ctx, a, v) for a in range(1, n + 1)}
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                w = apply_generator_adjoint(ctx, a, lifted[b])
                target = v if a == b else SimVector(ctx)
                dev["isometry_orthogonality"] = max(
                    dev["isometry_orthogonality"], deviation(w, target, probes)
                )
        total = SimVector(ctx)
        for a in range(1, n + 1):
            total = total + apply_generator(ctx, a, apply_generator_adjoint(ctx, a, v))
        dev["range_sum"] = max(dev["range_sum"], deviation(total, v, probes))
        x = random_core_element(n, rng, max_len=max_len)
        lhs = apply_generator_adjoint(ctx, 1, apply_element(ctx, x, apply_generator(ctx, 1, v)))
        rhs = apply_element(ctx, elem_mul(elem_mul(v1.adjoint(), x), v1), v)
        dev["AdS"] = max(dev["AdS"], deviation(lhs, rhs, probes))
    return {
        "max_deviation": max(dev.values()),
        "deviations": dev,
        "trials": trials,
        "seed": seed,
        "n": n,
        "p": p,
        "atoms": len(ctx.points),
    }


def roots_measure(K: int) -> CircleMeasure:
    """Uniform measure on the K-th roots of unity."""
    return CircleMeasure.mixture([(complex(np.exp(2j * np.pi * j / K)), 1.0 / K) for j in range(K)])


def oracle_state(f: ProductState, mu: CircleMeasure, x: AlgebraElement) -> complex:
    """Vector-state value of any extension, including a Haar part.

    The atomic part runs through the simulator directly.  Haar is replaced
    by the uniform measure on the K-th roots of unity with ``K`` beyond the
    moment orders that ``x`` can reach, which has the same moments there.
    """
    val = 0j
    if mu.atoms:
        atomic = CircleMeasure.mixture([(c, w / (1 - mu.haar_weight)) for c, w in mu.atoms])
        val += (1 - mu.haar_weight) * vector_state(SimContext(f, atomic), x)
    if not mu.is_atomic():
        K = x.max_degree() // f.seq.p + 1
        val += mu.haar_weight * vector_state(SimContext(f, roots_measure(K)), x)
    return val


def oracle_agreement(f: ProductState, mu: CircleMeasure, trials: int = 200, seed: int = 0, max_degree: int = 6) -> dict:
    """Largest gap between the closed-form extension and the simulator on random monomials."""
    from .extensions import ExtensionState, extend_eval
    from .sampling import random_monomial

    rng = np.random.default_rng(seed)
    rho = ExtensionState(f, mu)
    worst = 0.0
    for _ in range(trials):
        x = AlgebraElement(f.n, {random_monomial(f.n, rng, max_degree): 1.0})
        worst = max(worst, abs(extend_eval(rho, x) - oracle_state(f, mu, x)))
    return {"max_gap": worst, "trials": trials, "seed": seed, "max_degree": max_degree}
