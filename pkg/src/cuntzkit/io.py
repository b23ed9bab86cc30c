"""JSON file formats for sequences, measures, line tuples and reports.

Complex numbers are ``[re, im]`` pairs throughout.

sequence::

    {"n": 2, "preperiod": [[[1, 0], [0, 0]]], "period": [[[0, 0], [1, 0]]]}

measure::

    {"haar": 0.5, "atoms": [{"point": [1, 0], "weight": 0.5}]}

line tuple (``period`` of a sequence file is also accepted)::

    {"n": 2, "lines": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .classifier import ConjugacyVerdict, LineTuple, GRAM_TOL, PHASE_TOL, REPLAY_TOL
from .extensions import LOAD_MODULUS_TOL, CircleMeasure
from .product_states import ProductState


class FormatError(ValueError):
    """Malformed input file."""


def _complex(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if not (isinstance(x, (list, tuple)) and len(x) == 2):
        raise FormatError(f"expected [re, im], got {x!r}")
    return complex(float(x[0]), float(x[1]))


def _vector(v, n: int) -> np.ndarray:
    if not isinstance(v, (list, tuple)) or len(v) != n:
        raise FormatError(f"expected a vector of {n} complex entries, got {v!r}")
    return np.array([_complex(c) for c in v], dtype=complex)


def complex_pair(c: complex) -> list[float]:
    return [float(c.real), float(c.imag)]


def _read(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: {e}") from e
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be an object")
    return data


def sequence_from_dict(data: dict) -> ProductState:
    try:
        n = int(data["n"])
        pre = [_vector(v, n) for v in data.get("preperiod", [])]
        per = [_vector(v, n) for v in data["period"]]
    except KeyError as e:
        raise FormatError(f"sequence file lacks field {e}") from e
    try:
        return ProductState.from_vectors(n, pre, per)
    except ValueError as e:
        raise FormatError(f"bad sequence: {e}") from e


def sequence_to_dict(f: ProductState) -> dict:
    seq = f.seq
    return {
        "n": seq.n,
        "preperiod": [[complex_pair(c) for c in v] for v in seq.preperiod],
        "period": [[complex_pair(c) for c in v] for v in seq.period_block],
    }


def load_sequence(path) -> ProductState:
    return sequence_from_dict(_read(path))


def measure_from_dict(data: dict) -> CircleMeasure:
    atoms = []
    for a in data.get("atoms", []):
        try:
            c = _complex(a["point"])
            w = float(a["weight"])
        except (KeyError, TypeError) as e:
            raise FormatError(f"bad atom {a!r}") from e
        if abs(abs(c) - 1.0) > LOAD_MODULUS_TOL:
            raise FormatError(f"atom point {c} is not on the unit circle")
        atoms.append((c / abs(c), w))
    try:
        return CircleMeasure(float(data.get("haar", 0.0)), tuple(atoms))
    except ValueError as e:
        raise FormatError(f"bad measure: {e}") from e


def measure_to_dict(mu: CircleMeasure) -> dict:
    return {
        "haar": mu.haar_weight,
        "atoms": [{"point": complex_pair(c), "weight": w} for c, w in mu.atoms],
    }


def load_measure(path) -> CircleMeasure:
    return measure_from_dict(_read(path))


def tuple_from_dict(data: dict) -> LineTuple:
    try:
        n = int(data["n"])
        raw = data["lines"] if "lines" in data else data["period"]
    except KeyError as e:
        raise FormatError(f"tuple file lacks field {e}") from e
    try:
        return LineTuple.of(n, [_vector(v, n) for v in raw])
    except ValueError as e:
        raise FormatError(f"bad line tuple: {e}") from e


def load_tuple(path) -> LineTuple:
    return tuple_from_dict(_read(path))


def verdict_to_dict(v: ConjugacyVerdict) -> dict:
    out: dict = {"verdict": v.verdict}
    w = v.witness
    if w is not None:
        wit: dict = {}
        if w.shift is not None:
            wit["k"] = int(w.shift)
        if w.unitary is not None:
            wit["W"] = [[complex_pair(c) for c in row] for row in np.asarray(w.unitary)]
        if w.rotation is not None:
            wit["lambda"] = complex_pair(complex(w.rotation))
        out["witness"] = wit
    if v.details:
        out["details"] = _jsonable(v.details)
    out["tolerances"] = {"gram": GRAM_TOL, "phase": PHASE_TOL, "replay": REPLAY_TOL}
    return out


def _jsonable(x):
    if isinstance(x, complex):
        return complex_pair(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x
