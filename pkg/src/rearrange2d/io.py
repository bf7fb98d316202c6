"""File and wire formats for grid objects and weights.

Grid JSON descriptor:
    {"origin": [x0, y0], "cell": [dx, dy], "dims": [cols, rows],
     "data": [row-major values]}
with data[j*cols + i] the value on cell (i, j); sets use 0/1 data.

CSV alternative: a plain comma-separated matrix with unit cells and
origin (0, 0); line j holds row j (the y index), left to right in x.

Staircase sets serialize as {"cell": [dx, dy], "heights": [...]}, step
functions as {"cell": dt, "values": [...]}.  Weights carry a "kind" key:
    {"kind": "constant", "c": 1.0}
    {"kind": "power", "a": 0.0, "b": 1.0, "c": 1.0}
    {"kind": "vertical", "cell": 0.5, "values": [...]}
    {"kind": "grid", "origin": ..., "cell": ..., "dims": ..., "data": ...}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grid import (
    Decreasing2DGridFunction,
    GridFunction2D,
    GridSet2D,
    GridSpec,
    StaircaseSet,
    StepFunction1D,
)
from .lorentz import Weight2D

__all__ = [
    "grid_function_to_dict",
    "grid_function_from_dict",
    "grid_set_to_dict",
    "grid_set_from_dict",
    "staircase_to_dict",
    "staircase_from_dict",
    "step_to_dict",
    "step_from_dict",
    "weight_to_dict",
    "weight_from_dict",
    "decreasing_to_dict",
    "load_grid_function",
    "save_grid_function",
    "load_grid_set",
    "load_weight",
    "dump_json",
]


def _require(d: dict, *keys):
    for k in keys:
        if k not in d:
            raise ValueError(f"missing key {k!r} in descriptor")


def _spec_from_dict(d: dict) -> GridSpec:
    _require(d, "origin", "cell", "dims")
    return GridSpec(tuple(d["origin"]), tuple(d["cell"]), tuple(d["dims"]))


def _data_to_matrix(d: dict, spec: GridSpec) -> np.ndarray:
    data = np.asarray(d["data"], dtype=np.float64)
    if data.size != spec.cols * spec.rows:
        raise ValueError(
            f"data length {data.size} does not match dims {spec.dims}"
        )
    return data.reshape(spec.rows, spec.cols).T


def _matrix_to_data(values: np.ndarray) -> list:
    return [float(x) for x in values.T.reshape(-1)]


def grid_function_to_dict(f: GridFunction2D) -> dict:
    return {
        "origin": list(f.spec.origin),
        "cell": list(f.spec.cell),
        "dims": list(f.spec.dims),
        "data": _matrix_to_data(f.values),
    }


def grid_function_from_dict(d: dict) -> GridFunction2D:
    spec = _spec_from_dict(d)
    _require(d, "data")
    return GridFunction2D(spec, _data_to_matrix(d, spec))


def grid_set_to_dict(E: GridSet2D) -> dict:
    d = grid_function_to_dict(E.indicator_function())
    d["data"] = [int(x) for x in d["data"]]
    return d


def grid_set_from_dict(d: dict) -> GridSet2D:
    spec = _spec_from_dict(d)
    _require(d, "data")
    m = _data_to_matrix(d, spec)
    if np.any((m != 0) & (m != 1)):
        raise ValueError("set data must contain only 0 and 1")
    return GridSet2D(spec, m.astype(bool))


def staircase_to_dict(D: StaircaseSet) -> dict:
    return {"cell": list(D.cell), "heights": [int(h) for h in D.heights]}


def staircase_from_dict(d: dict) -> StaircaseSet:
    _require(d, "cell", "heights")
    return StaircaseSet(tuple(d["cell"]), np.asarray(d["heights"], dtype=np.int64))


def step_to_dict(s: StepFunction1D) -> dict:
    return {"cell": s.cell, "values": [float(v) for v in s.values]}


def step_from_dict(d: dict) -> StepFunction1D:
    _require(d, "cell", "values")
    if not isinstance(d["cell"], (int, float)):
        raise ValueError("step-function cell must be a single number")
    return StepFunction1D(float(d["cell"]), np.asarray(d["values"], dtype=np.float64))


def decreasing_to_dict(M: Decreasing2DGridFunction) -> dict:
    """Decreasing functions serialize as origin-anchored grid functions."""
    return grid_function_to_dict(M.as_grid_function())


def weight_to_dict(w: Weight2D) -> dict:
    if w.kind == "constant":
        return {"kind": "constant", "c": w.c}
    if w.kind == "power":
        return {"kind": "power", "a": w.a, "b": w.b, "c": w.c}
    if w.kind == "vertical":
        return {"kind": "vertical", **step_to_dict(w.profile)}
    return {"kind": "grid", **grid_function_to_dict(w.sampled)}


def weight_from_dict(d: dict) -> Weight2D:
    _require(d, "kind")
    kind = d["kind"]
    if kind == "constant":
        return Weight2D.constant(float(d.get("c", 1.0)))
    if kind == "power":
        _require(d, "a", "b")
        return Weight2D.power(float(d["a"]), float(d["b"]), float(d.get("c", 1.0)))
    if kind == "vertical":
        return Weight2D.vertical(step_from_dict(d))
    if kind == "grid":
        return Weight2D.from_grid(grid_function_from_dict(d))
    raise ValueError(f"unknown weight kind {kind!r}")


def _parse_csv_matrix(text: str) -> np.ndarray:
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append([float(tok) for tok in line.split(",")])
    if not rows:
        raise ValueError("empty CSV matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged CSV matrix")
    return np.asarray(rows, dtype=np.float64).T  # line j is row j


def _format_csv_matrix(values: np.ndarray) -> str:
    lines = []
    for j in range(values.shape[1]):
        lines.append(",".join(repr(float(values[i, j])) for i in range(values.shape[0])))
    return "\n".join(lines) + "\n"


def load_grid_function(path) -> GridFunction2D:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        m = _parse_csv_matrix(text)
        spec = GridSpec((0.0, 0.0), (1.0, 1.0), m.shape)
        return GridFunction2D(spec, m)
    return grid_function_from_dict(json.loads(text))


def save_grid_function(f: GridFunction2D, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        if f.spec.origin != (0.0, 0.0) or f.spec.cell != (1.0, 1.0):
            raise ValueError("CSV output supports unit cells at the origin only")
        path.write_text(_format_csv_matrix(f.values))
    else:
        path.write_text(dump_json(grid_function_to_dict(f)))


def load_grid_set(path) -> GridSet2D:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        m = _parse_csv_matrix(text)
        if np.any((m != 0) & (m != 1)):
            raise ValueError("set data must contain only 0 and 1")
        spec = GridSpec((0.0, 0.0), (1.0, 1.0), m.shape)
        return GridSet2D(spec, m.astype(bool))
    return grid_set_from_dict(json.loads(text))


def load_weight(path) -> Weight2D:
    return weight_from_dict(json.loads(Path(path).read_text()))


def dump_json(d: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(d, indent=2, sort_keys=True) + "\n"
