"""Representation spec files.

A spec is a JSON object ``{"type", "n", "alpha", "payload"}``:

``left_regular``
    payload ignored; ``alpha`` copies of ``L``.
``dense``
    ``{"matrices": [A_1, ..., A_n]}``, each a list of rows of scalars.
``atomic``
    ``{"u": "121", "lambda": [...]}`` or ``{"u": ..., "r": [...]}`` with
    ``r_s = |lambda_s|^2``.
``compression``
    ``{"orientation": "complement"|"span", "generators": [g, ...]}`` with
    ``g = {"kind": "finite", "data": {"word": scalar, ...}}`` or
    ``g = {"kind": "geometric", "data": {"stem", "letter", "coef", "ratio", "head"}}``.
    A word key may carry a copy index as ``"copy:word"``.
``direct_sum``
    ``{"first": spec, "second": spec}``.
``unitary_mix``
    ``{"base": spec, "U": matrix}``.
``catalog``
    ``{"name": entry, "params": {...}}``.

Scalars are numbers, rational strings (``"3/5"``) or ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import catalog
from . import generators as gen
from . import scalars as sc
from .operators import (
    COMPLEMENT,
    SPAN,
    LeftRegular,
    RowContraction,
    direct_sum,
    make_compression,
    make_decaying_atomic,
    make_dense,
    require_contraction,
    unitary_mix,
    zero_tuple,
)
from .words import word

TYPES = ("left_regular", "dense", "atomic", "compression", "direct_sum", "unitary_mix", "catalog")


class SpecError(ValueError):
    """The spec file is malformed (as opposed to describing an invalid operator)."""


def load_spec(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecError("spec must be a JSON object")
    return data


def _get(d: dict, key: str, where: str):
    if key not in d:
        raise SpecError(f"{where}: missing field {key!r}")
    return d[key]


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(f"{what} must be an integer, got {v!r}")
    return v


def _scalar(v, backend: str, what: str):
    try:
        return sc.parse_scalar(v, backend)
    except (ValueError, TypeError, ZeroDivisionError, sc.BackendError) as exc:
        raise SpecError(f"{what}: {exc}") from exc


def _matrix(rows, backend: str, what: str):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SpecError(f"{what} must be a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise SpecError(f"{what} rows have different lengths")
    return [[_scalar(x, backend, what) for x in r] for r in rows]


def _key(key: str, n: int):
    copy, _, w = key.rpartition(":")
    try:
        wd = word(w)
        c = int(copy) if copy else 0
    except ValueError as exc:
        raise SpecError(f"bad word key {key!r}") from exc
    if any(not 1 <= x <= n for x in wd):
        raise SpecError(f"word {key!r} uses letters outside 1..{n}")
    return c, wd


def parse_generator(g: dict, n: int, alpha: int, backend: str) -> gen.Generator:
    if not isinstance(g, dict):
        raise SpecError("generator must be an object")
    kind = _get(g, "kind", "generator")
    data = _get(g, "data", "generator")
    if kind == "finite":
        if not isinstance(data, dict) or not data:
            raise SpecError("finite generator data must be a non-empty {word: scalar} object")
        head = {_key(k, n): _scalar(v, backend, f"coefficient of {k}") for k, v in data.items()}
        return gen.Generator(n, alpha, backend, head, (), "finite")
    if kind == "geometric":
        if not isinstance(data, dict):
            raise SpecError("geometric generator data must be an object")
        copy, stem = _key(str(data.get("stem", "e")), n)
        letter = _int(_get(data, "letter", "geometric generator"), "letter")
        if not 1 <= letter <= n:
            raise SpecError(f"letter {letter} outside 1..{n}")
        head = {_key(k, n): _scalar(v, backend, f"coefficient of {k}") for k, v in data.get("head", {}).items()}
        try:
            return gen.Generator.geometric(
                n,
                stem,
                letter,
                _scalar(_get(data, "coef", "geometric generator"), backend, "coef"),
                _scalar(_get(data, "ratio", "geometric generator"), backend, "ratio"),
                head=head,
                copy=copy,
                alpha=alpha,
                backend=backend,
                label="geometric",
            )
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown generator kind {kind!r}")


def build(spec: dict, backend: str = sc.EXACT, tol: float = 1e-9) -> RowContraction:
    """Build a row contraction from a parsed spec.

    Raises :class:`SpecError` for malformed input and
    :class:`ncurv.operators.ValidationError` for well-formed input that is not
    a valid row contraction.
    """
    if not isinstance(spec, dict):
        raise SpecError("spec must be an object")
    kind = _get(spec, "type", "spec")
    if kind not in TYPES:
        raise SpecError(f"unknown type {kind!r}; expected one of {', '.join(TYPES)}")
    payload = spec.get("payload", {}) or {}
    if not isinstance(payload, dict):
        raise SpecError("payload must be an object")
    if kind == "catalog":
        return _catalog(payload, backend)
    if kind == "direct_sum":
        return direct_sum(build(_get(payload, "first", "direct_sum"), backend, tol), build(_get(payload, "second", "direct_sum"), backend, tol))
    if kind == "unitary_mix":
        base = build(_get(payload, "base", "unitary_mix"), backend, tol)
        return unitary_mix(base, _matrix(_get(payload, "U", "unitary_mix"), backend, "U"), tol)
    n = _int(_get(spec, "n", "spec"), "n")
    if n < 1:
        raise SpecError("n must be >= 1")
    alpha = _int(spec.get("alpha", 1), "alpha")
    if kind == "left_regular":
        if alpha < 0:
            raise SpecError("alpha must be >= 0")
        return LeftRegular(n, alpha, backend) if alpha else zero_tuple(n, 0, backend)
    if kind == "dense":
        mats = _get(payload, "matrices", "dense payload")
        if not isinstance(mats, list) or len(mats) != n:
            raise SpecError(f"dense payload needs {n} matrices")
        mats = [_matrix(m, backend, f"A_{i + 1}") for i, m in enumerate(mats)]
        if len({(len(m), len(m[0]) if m else 0) for m in mats}) != 1 or any(m and len(m) != len(m[0]) for m in mats):
            raise SpecError("matrices must be square and of equal size")
        return require_contraction(make_dense(mats, backend), tol)
    if kind == "atomic":
        u = _get(payload, "u", "atomic payload")
        try:
            uw = word(u) if isinstance(u, str) else tuple(_int(x, "u letter") for x in u)
        except ValueError as exc:
            raise SpecError(f"bad ring word {u!r}") from exc
        if "lambda" in payload:
            lam = [_scalar(x, backend, "lambda") for x in payload["lambda"]]
            return make_decaying_atomic(uw, lam=lam, n=n, backend=backend)
        r = [_scalar(x, backend, "r") for x in _get(payload, "r", "atomic payload (lambda or r)")]
        return make_decaying_atomic(uw, n=n, backend=backend, r=r)
    # compression
    orientation = payload.get("orientation", COMPLEMENT)
    if orientation not in (COMPLEMENT, SPAN):
        raise SpecError(f"orientation must be {COMPLEMENT!r} or {SPAN!r}")
    gens = [parse_generator(g, n, alpha, backend) for g in _get(payload, "generators", "compression payload")]
    depth = payload.get("depth")
    return make_compression(n, alpha, gens, orientation, backend, None if depth is None else _int(depth, "depth"), tol)


def _catalog(payload: dict, backend: str):
    name = _get(payload, "name", "catalog payload")
    params = payload.get("params", {})
    try:
        entry = catalog.get_entry(name, **params)
    except (KeyError, TypeError) as exc:
        raise SpecError(str(exc)) from exc
    if entry.kind != catalog.TUPLE:
        raise SpecError(f"catalog entry {name!r} describes a subspace, not a tuple")
    if backend not in entry.backends:
        raise SpecError(f"catalog entry {name!r} needs backend {entry.backends[0]!r}")
    return entry.make(backend)


def load(path, backend: str = sc.EXACT, tol: float = 1e-9) -> RowContraction:
    return build(load_spec(path), backend, tol)
