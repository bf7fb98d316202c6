"""The four rearrangement constructions.

rearrange_1d sorts a sampled profile, rearrange_set stacks the sorted
column profile of a set into a staircase, rearrange_layercake builds the
planar decreasing rearrangement level set by level set, and
rearrange_iterative reaches the same function by sorting slices (first in
y, then in x).  rearrange_classical flattens to the usual one-dimensional
rearrangement, and rearrange_product covers tensor products.

Outputs are anchored at the origin of the positive quadrant regardless of
the input origin.  Sorting uses stable order on the original index; ties
are equal values, so results do not depend on the tie rule.
"""

from __future__ import annotations

import numpy as np

from .grid import (
    Decreasing2DGridFunction,
    GridFunction2D,
    GridSet2D,
    StaircaseSet,
    StepFunction1D,
    simple_decomposition,
)

__all__ = [
    "rearrange_1d",
    "rearrange_set",
    "rearrange_layercake",
    "rearrange_iterative",
    "rearrange_classical",
    "rearrange_product",
]


def rearrange_1d(values, widths) -> StepFunction1D:
    """Decreasing rearrangement of a step profile on a uniform 1D grid.

    values[k] is the profile value on a cell of width widths[k]; all
    widths must be equal.  The result carries the same multiset of values
    sorted nonincreasing, hence the same total width and integral.
    """
    v = np.asarray(values, dtype=np.float64)
    w = np.asarray(widths, dtype=np.float64)
    if v.ndim != 1 or w.ndim != 1:
        raise ValueError("values and widths must be vectors")
    if v.size != w.size:
        raise ValueError("values and widths must have equal length")
    if v.size == 0:
        raise ValueError("empty profile")
    if np.any(w <= 0):
        raise ValueError("widths must be positive")
    if np.any(w != w[0]):
        raise ValueError("widths must be uniform")
    if np.any(v < 0) or not np.all(np.isfinite(v)):
        raise ValueError("values must be nonnegative and finite")
    return StepFunction1D(float(w[0]), np.sort(v, kind="stable")[::-1])


def rearrange_set(E: GridSet2D) -> StaircaseSet:
    """Decreasing rearrangement of a set: sort its column profile.

    The staircase heights are the per-column cell counts of E in
    nonincreasing order, so the measure is preserved exactly.
    """
    counts = E.mask.sum(axis=1).astype(np.int64)
    heights = np.sort(counts, kind="stable")[::-1]
    return StaircaseSet(E.spec.cell, heights)


def rearrange_layercake(f: GridFunction2D) -> Decreasing2DGridFunction:
    """Planar decreasing rearrangement, built from the level sets of f.

    Each distinct positive value a paints its rearranged at-or-above set
    {f >= a}*; painting from the smallest value up assigns every cell the
    largest level whose rearranged set contains it.  This evaluates the
    finite layer-cake sum without any float accumulation, so the output
    values are exactly the input values.
    """
    if not np.any(f.values > 0):
        return Decreasing2DGridFunction(f.spec.cell, np.zeros((0, 0)))
    vals = np.unique(f.values[f.values > 0])
    cols, rows = f.spec.dims
    out = np.zeros((cols, rows), dtype=np.float64)
    row_idx = np.arange(rows)[None, :]
    for a in vals:  # ascending: later (larger) levels overwrite
        counts = (f.values >= a).sum(axis=1)
        heights = np.sort(counts, kind="stable")[::-1]
        mask = row_idx < heights[:, None]
        out[mask] = a
    return Decreasing2DGridFunction(f.spec.cell, out)


def rearrange_iterative(f: GridFunction2D, order: str = "y_then_x") -> Decreasing2DGridFunction:
    """Planar rearrangement by iterated one-dimensional sorts.

    order="y_then_x" sorts every fixed-x slice nonincreasing in y, then
    every fixed-y slice nonincreasing in x; this equals
    rearrange_layercake(f) cellwise.  order="x_then_y" applies the sorts
    in the opposite order, which is generally a different function and is
    exposed for the asymmetry demonstration.
    """
    if order not in ("y_then_x", "x_then_y"):
        raise ValueError(f"unknown order {order!r}")
    v = f.values
    if order == "y_then_x":
        v = np.sort(v, axis=1, kind="stable")[:, ::-1]
        v = np.sort(v, axis=0, kind="stable")[::-1, :]
    else:
        v = np.sort(v, axis=0, kind="stable")[::-1, :]
        v = np.sort(v, axis=1, kind="stable")[:, ::-1]
    return Decreasing2DGridFunction(f.spec.cell, v)


def rearrange_classical(f: GridFunction2D) -> StepFunction1D:
    """Classical nonincreasing rearrangement of a planar grid function.

    All cell values sorted nonincreasing, each carrying width dx*dy on
    the half line.
    """
    flat = np.sort(f.values, axis=None, kind="stable")[::-1]
    return StepFunction1D(f.spec.cell_area, flat)


def rearrange_product(g, h, cell: tuple[float, float] = (1.0, 1.0)) -> Decreasing2DGridFunction:
    """Planar rearrangement of the tensor product (x, y) -> g(x) h(y).

    g and h are sampled 1D step profiles on uniform cells of widths
    cell[0] and cell[1]; the result is the outer product of their sorted
    rearrangements, which equals rearrange_layercake of the product
    function.
    """
    gs = rearrange_1d(g, np.full(len(g), cell[0]))
    hs = rearrange_1d(h, np.full(len(h), cell[1]))
    outer = np.outer(gs.values, hs.values)
    return Decreasing2DGridFunction(cell, outer)


def _layercake_reference(f: GridFunction2D) -> Decreasing2DGridFunction:
    """Literal cumulative-sum evaluation of the layer-cake formula.

    Kept as an internal cross-check; unlike rearrange_layercake it
    accumulates the level gaps, so it can differ by float rounding for
    non-integer values.
    """
    if not np.any(f.values > 0):
        return Decreasing2DGridFunction(f.spec.cell, np.zeros((0, 0)))
    dec = simple_decomposition(f)
    cols, rows = f.spec.dims
    out = np.zeros((cols, rows), dtype=np.float64)
    row_idx = np.arange(rows)[None, :]
    for b, F in dec.cumulative:
        heights = np.sort(F.mask.sum(axis=1), kind="stable")[::-1]
        out[row_idx < heights[:, None]] += b
    return Decreasing2DGridFunction(f.spec.cell, out)
