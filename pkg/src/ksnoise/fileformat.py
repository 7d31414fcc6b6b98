"""JSON scenario and state documents.

Scenario::

    {"name": ..., "dimension": d,
     "measurements": [{"label": ..., "matrix": [[[re, im], ...], ...]}, ...],
     "contexts": [[0, 1], ...],
     "inequality": {"gamma": [...], "bound": b, "direction": "<=" | ">="}}

State::

    {"dimension": d, "matrix": [[[re, im], ...], ...]}
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import InvalidStateError, check_state
from .linalg import CMat
from .measure import Observable
from .scenarios import Inequality, Scenario, validate_scenario


class FormatError(ValueError):
    pass


def _require(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in doc:
        raise FormatError(f"{where}: missing field {key!r}")
    return doc[key]


def parse_matrix(raw, d: int, where: str) -> CMat:
    if not isinstance(raw, list) or len(raw) != d:
        raise FormatError(f"{where}: expected {d} rows")
    out = np.zeros((d, d), dtype=np.complex128)
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != d:
            raise FormatError(f"{where}: row {i} must have {d} entries")
        for j, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)):
                raise FormatError(f"{where}: entry [{i}][{j}] must be a [re, im] pair of numbers")
            if not all(np.isfinite(z)):
                raise FormatError(f"{where}: entry [{i}][{j}] is not finite")
            out[i, j] = complex(z[0], z[1])
    return out


def matrix_to_list(m: CMat) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _dimension(doc: dict, where: str) -> int:
    d = _require(doc, "dimension", where)
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FormatError(f"{where}: dimension must be a positive integer, got {d!r}")
    return d


def parse_scenario(doc: dict, validate: bool = True) -> Scenario:
    where = "scenario"
    name = _require(doc, "name", where)
    d = _dimension(doc, where)
    raw_meas = _require(doc, "measurements", where)
    if not isinstance(raw_meas, list) or not raw_meas:
        raise FormatError(f"{where}: measurements must be a non-empty list")
    measurements = []
    for i, m in enumerate(raw_meas):
        w = f"measurement {i}"
        label = str(_require(m, "label", w))
        matrix = parse_matrix(_require(m, "matrix", w), d, w)
        try:
            measurements.append(Observable(label, matrix))
        except ValueError as exc:
            raise FormatError(f"{w}: {exc}") from None
    contexts = _require(doc, "contexts", where)
    if not isinstance(contexts, list) or not all(
        isinstance(c, list) and all(isinstance(i, int) and not isinstance(i, bool) for i in c) for c in contexts
    ):
        raise FormatError(f"{where}: contexts must be a list of integer lists")
    ineq = _require(doc, "inequality", where)
    try:
        inequality = Inequality(
            tuple(_require(ineq, "gamma", "inequality")),
            float(_require(ineq, "bound", "inequality")),
            _require(ineq, "direction", "inequality"),
        )
        s = Scenario(str(name), d, tuple(measurements), tuple(tuple(c) for c in contexts), inequality)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: {exc}") from None
    diag = validate_scenario(s)
    if validate and not diag.ok:
        raise FormatError(f"{where}: {diag.failure}")
    return s


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "name": s.name,
        "dimension": s.dimension,
        "measurements": [{"label": o.label, "matrix": matrix_to_list(o.matrix)} for o in s.measurements],
        "contexts": [list(c) for c in s.contexts],
        "inequality": {
            "gamma": list(s.inequality.gamma),
            "bound": s.inequality.bound,
            "direction": s.inequality.direction,
        },
    }


def parse_state(doc: dict) -> CMat:
    d = _dimension(doc, "state")
    rho = parse_matrix(_require(doc, "matrix", "state"), d, "state")
    try:
        check_state(rho, d)
    except InvalidStateError as exc:
        raise FormatError(f"state: {exc}") from None
    return rho


def state_to_dict(rho: CMat) -> dict:
    return {"dimension": rho.shape[0], "matrix": matrix_to_list(rho)}


def _load_json(path: str | Path) -> dict:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"file not found: {p}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{p}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_scenario(path: str | Path, validate: bool = True) -> Scenario:
    return parse_scenario(_load_json(path), validate)


def load_state(path: str | Path) -> CMat:
    return parse_state(_load_json(path))
