"""Exact cell-level representations of planar sets and functions.

Everything lives on a uniform rectangular lattice.  Measures are cell
counts times the cell area, level sets are strict comparisons against the
stored values, and decompositions are finite sorts, so every derived
quantity is exact up to float rounding in products with cell sizes.

All types are immutable after construction (arrays are marked read-only)
and all operations are pure functions, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GridSpec",
    "GridFunction2D",
    "GridSet2D",
    "StaircaseSet",
    "StepFunction1D",
    "Decreasing2DGridFunction",
    "SimpleDecomposition",
    "measure",
    "superlevel_set",
    "distribution",
    "cross_section_profile",
    "simple_decomposition",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _trim_matrix(values: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero columns and rows (canonical tight shape)."""
    if values.size == 0:
        return values.reshape(0, 0)
    col_nz = np.flatnonzero(values.any(axis=1))
    row_nz = np.flatnonzero(values.any(axis=0))
    if col_nz.size == 0 or row_nz.size == 0:
        return values[:0, :0]
    return values[: col_nz[-1] + 1, : row_nz[-1] + 1]


def _trim_vector(values: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(values)
    if nz.size == 0:
        return values[:0]
    return values[: nz[-1] + 1]


@dataclass(frozen=True)
class GridSpec:
    """Uniform lattice: origin, cell sizes (dx, dy), dimensions (cols, rows).

    Cell (i, j) is the half-open box
    [x0 + i*dx, x0 + (i+1)*dx) x [y0 + j*dy, y0 + (j+1)*dy),
    so boolean operations between sets on the same spec are exact.
    Two grids are compatible when their cell sizes agree.
    """

    origin: tuple[float, float]
    cell: tuple[float, float]
    dims: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))
        object.__setattr__(self, "cell", (float(self.cell[0]), float(self.cell[1])))
        object.__setattr__(self, "dims", (int(self.dims[0]), int(self.dims[1])))
        if not (self.cell[0] > 0 and self.cell[1] > 0):
            raise ValueError("cell sizes must be positive")
        if self.dims[0] < 0 or self.dims[1] < 0:
            raise ValueError("dims must be nonnegative")

    @property
    def cols(self) -> int:
        return self.dims[0]

    @property
    def rows(self) -> int:
        return self.dims[1]

    @property
    def dx(self) -> float:
        return self.cell[0]

    @property
    def dy(self) -> float:
        return self.cell[1]

    @property
    def cell_area(self) -> float:
        return self.cell[0] * self.cell[1]

    def compatible_with(self, other: "GridSpec") -> bool:
        return self.cell == other.cell


@dataclass(frozen=True, eq=False)
class GridFunction2D:
    """Nonnegative step function of finite support on a uniform lattice.

    values[i][j] is the value on cell (i, j); the function is 0 outside
    the spec's bounding box.
    """

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != self.spec.dims:
            raise ValueError(f"values shape {v.shape} != dims {self.spec.dims}")
        if v.size and (not np.all(np.isfinite(v)) or np.any(v < 0)):
            raise ValueError("values must be nonnegative and finite")
        object.__setattr__(self, "values", _readonly(v))

    @classmethod
    def indicator(cls, E: "GridSet2D") -> "GridFunction2D":
        return cls(E.spec, E.mask.astype(np.float64))

    @property
    def max_value(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0

    def equals(self, other: "GridFunction2D") -> bool:
        return self.spec == other.spec and np.array_equal(self.values, other.values)

    def add(self, other: "GridFunction2D") -> "GridFunction2D":
        if self.spec != other.spec:
            raise ValueError("functions must share a grid spec")
        return GridFunction2D(self.spec, self.values + other.values)

    def scaled(self, c: float) -> "GridFunction2D":
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return GridFunction2D(self.spec, c * self.values)

    def powered(self, p: float) -> "GridFunction2D":
        if p <= 0:
            raise ValueError("exponent must be positive")
        return GridFunction2D(self.spec, self.values**p)

    def clipped_at(self, t: float) -> "GridFunction2D":
        return GridFunction2D(self.spec, np.minimum(self.values, t))

    def refined(self, k: int) -> "GridFunction2D":
        """Split every cell into k x k subcells carrying the same value."""
        if k < 1:
            raise ValueError("refinement factor must be >= 1")
        v = np.repeat(np.repeat(self.values, k, axis=0), k, axis=1)
        spec = GridSpec(
            self.spec.origin,
            (self.spec.dx / k, self.spec.dy / k),
            (self.spec.cols * k, self.spec.rows * k),
        )
        return GridFunction2D(spec, v)


@dataclass(frozen=True, eq=False)
class GridSet2D:
    """Finite union of lattice cells, stored as a boolean mask."""

    spec: GridSpec
    mask: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool)
        if m.shape != self.spec.dims:
            raise ValueError(f"mask shape {m.shape} != dims {self.spec.dims}")
        object.__setattr__(self, "mask", _readonly(m))

    @classmethod
    def from_boxes(cls, spec: GridSpec, boxes) -> "GridSet2D":
        """Cells whose centers fall in one of the (x0, x1, y0, y1) boxes."""
        x0, y0 = spec.origin
        cx = x0 + (np.arange(spec.cols) + 0.5) * spec.dx
        cy = y0 + (np.arange(spec.rows) + 0.5) * spec.dy
        mask = np.zeros(spec.dims, dtype=bool)
        for bx0, bx1, by0, by1 in boxes:
            inx = (cx >= bx0) & (cx < bx1)
            iny = (cy >= by0) & (cy < by1)
            mask |= inx[:, None] & iny[None, :]
        return cls(spec, mask)

    @property
    def cell_count(self) -> int:
        return int(self.mask.sum())

    def equals(self, other: "GridSet2D") -> bool:
        return self.spec == other.spec and np.array_equal(self.mask, other.mask)

    def _check_spec(self, other: "GridSet2D") -> None:
        if self.spec != other.spec:
            raise ValueError("sets must share a grid spec")

    def union(self, other: "GridSet2D") -> "GridSet2D":
        self._check_spec(other)
        return GridSet2D(self.spec, self.mask | other.mask)

    def intersection(self, other: "GridSet2D") -> "GridSet2D":
        self._check_spec(other)
        return GridSet2D(self.spec, self.mask & other.mask)

    def difference(self, other: "GridSet2D") -> "GridSet2D":
        self._check_spec(other)
        return GridSet2D(self.spec, self.mask & ~other.mask)

    def is_disjoint(self, other: "GridSet2D") -> bool:
        self._check_spec(other)
        return not np.any(self.mask & other.mask)

    def is_subset(self, other: "GridSet2D") -> bool:
        self._check_spec(other)
        return bool(np.all(other.mask | ~self.mask))

    def indicator_function(self) -> GridFunction2D:
        return GridFunction2D.indicator(self)


@dataclass(frozen=True, eq=False)
class StaircaseSet:
    """Decreasing set anchored at the origin of the positive quadrant.

    Column i covers [(i)*dx, (i+1)*dx) x [0, heights[i]*dy) with the
    heights nonincreasing, so the indicator is decreasing in each
    variable.  Trailing zero heights are trimmed (canonical form).
    """

    cell: tuple[float, float]
    heights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cell", (float(self.cell[0]), float(self.cell[1])))
        if not (self.cell[0] > 0 and self.cell[1] > 0):
            raise ValueError("cell sizes must be positive")
        h = np.asarray(self.heights, dtype=np.int64)
        if h.ndim != 1:
            raise ValueError("heights must be a vector")
        if h.size and np.any(h < 0):
            raise ValueError("heights must be nonnegative")
        if h.size and np.any(h[:-1] < h[1:]):
            raise ValueError("heights must be nonincreasing")
        object.__setattr__(self, "heights", _readonly(_trim_vector(h)))

    @property
    def num_columns(self) -> int:
        return int(self.heights.size)

    @property
    def max_height(self) -> int:
        return int(self.heights[0]) if self.heights.size else 0

    @property
    def measure(self) -> float:
        return float(int(self.heights.sum())) * self.cell[0] * self.cell[1]

    def equals(self, other: "StaircaseSet") -> bool:
        return self.cell == other.cell and np.array_equal(self.heights, other.heights)

    def contains(self, other: "StaircaseSet") -> bool:
        if self.cell != other.cell:
            raise ValueError("staircases must share a cell size")
        if other.num_columns > self.num_columns:
            return False
        return bool(np.all(other.heights <= self.heights[: other.num_columns]))

    def mask_on(self, cols: int, rows: int) -> np.ndarray:
        """Boolean cell mask on a cols x rows window anchored at the origin."""
        if self.num_columns > cols or self.max_height > rows:
            raise ValueError("window too small for staircase")
        h = np.zeros(cols, dtype=np.int64)
        h[: self.num_columns] = self.heights
        return np.arange(rows)[None, :] < h[:, None]

    def to_grid_set(self) -> GridSet2D:
        spec = GridSpec((0.0, 0.0), self.cell, (self.num_columns, self.max_height))
        return GridSet2D(spec, self.mask_on(self.num_columns, self.max_height))


@dataclass(frozen=True, eq=False)
class StepFunction1D:
    """Nonincreasing step function of finite support on the half line.

    values[k] is the value on [k*cell, (k+1)*cell); trailing zeros are
    trimmed so equal functions have equal representations.
    """

    cell: float
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cell", float(self.cell))
        if not self.cell > 0:
            raise ValueError("cell size must be positive")
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise ValueError("values must be a vector")
        if v.size and (not np.all(np.isfinite(v)) or np.any(v < 0)):
            raise ValueError("values must be nonnegative and finite")
        if v.size and np.any(v[:-1] < v[1:]):
            raise ValueError("values must be nonincreasing")
        object.__setattr__(self, "values", _readonly(_trim_vector(v)))

    @property
    def support_length(self) -> float:
        return self.values.size * self.cell

    @property
    def total_integral(self) -> float:
        return float(self.values.sum() * self.cell)

    def equals(self, other: "StepFunction1D") -> bool:
        return self.cell == other.cell and np.array_equal(self.values, other.values)

    def __call__(self, s: float) -> float:
        if s < 0:
            raise ValueError("argument must be nonnegative")
        k = int(s // self.cell)
        return float(self.values[k]) if k < self.values.size else 0.0

    def integral_between(self, a: float, b: float) -> float:
        """Exact integral over [a, b); the function is 0 past its support."""
        if a < 0 or b < a:
            raise ValueError("need 0 <= a <= b")
        if not self.values.size:
            return 0.0
        edges = np.arange(self.values.size + 1) * self.cell
        lo = np.maximum(edges[:-1], a)
        hi = np.minimum(edges[1:], b)
        overlap = np.clip(hi - lo, 0.0, None)
        return float(overlap @ self.values)


@dataclass(frozen=True, eq=False)
class Decreasing2DGridFunction:
    """Step function anchored at the origin, nonincreasing in both indices.

    This is the output type of the planar rearrangements: values[i][j]
    >= values[i+1][j] and values[i][j] >= values[i][j+1].  Trailing zero
    columns and rows are trimmed.
    """

    cell: tuple[float, float]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cell", (float(self.cell[0]), float(self.cell[1])))
        if not (self.cell[0] > 0 and self.cell[1] > 0):
            raise ValueError("cell sizes must be positive")
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("values must be a matrix")
        if v.size:
            if not np.all(np.isfinite(v)) or np.any(v < 0):
                raise ValueError("values must be nonnegative and finite")
            if np.any(v[:-1, :] < v[1:, :]) or np.any(v[:, :-1] < v[:, 1:]):
                raise ValueError("values must be nonincreasing along both axes")
        object.__setattr__(self, "values", _readonly(_trim_matrix(v)))

    @property
    def cols(self) -> int:
        return self.values.shape[0]

    @property
    def rows(self) -> int:
        return self.values.shape[1]

    @property
    def max_value(self) -> float:
        return float(self.values[0, 0]) if self.values.size else 0.0

    @property
    def total_integral(self) -> float:
        return math.fsum(self.values.flat) * self.cell[0] * self.cell[1]

    def equals(self, other: "Decreasing2DGridFunction") -> bool:
        return self.cell == other.cell and np.array_equal(self.values, other.values)

    def as_grid_function(self, origin: tuple[float, float] = (0.0, 0.0)) -> GridFunction2D:
        spec = GridSpec(origin, self.cell, self.values.shape)
        return GridFunction2D(spec, self.values)

    def box_integral(self, x0: float, x1: float, y0: float, y1: float) -> float:
        """Exact integral over [x0, x1) x [y0, y1); 0 beyond the support."""
        if x0 < 0 or y0 < 0 or x1 < x0 or y1 < y0:
            raise ValueError("box must lie in the positive quadrant")
        if not self.values.size:
            return 0.0
        dx, dy = self.cell
        ex = np.arange(self.cols + 1) * dx
        ey = np.arange(self.rows + 1) * dy
        ox = np.clip(np.minimum(ex[1:], x1) - np.maximum(ex[:-1], x0), 0.0, None)
        oy = np.clip(np.minimum(ey[1:], y1) - np.maximum(ey[:-1], y0), 0.0, None)
        return float(ox @ self.values @ oy)


@dataclass(frozen=True, eq=False)
class SimpleDecomposition:
    """Level decomposition of a grid function into disjoint value classes.

    levels holds (value, cells-at-that-value) with values strictly
    decreasing; cumulative holds (gap to the next smaller value, union of
    all cells at or above the level).  The gaps over each nested set sum
    back to the level values, so reconstruction is exact.
    """

    levels: tuple
    cumulative: tuple

    def __post_init__(self):
        if not self.levels:
            raise ValueError("decomposition must have at least one level")
        vals = [a for a, _ in self.levels]
        if any(v <= 0 for v in vals) or any(x <= y for x, y in zip(vals, vals[1:])):
            raise ValueError("level values must be positive and strictly decreasing")

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def reconstruct(self) -> GridFunction2D:
        spec = self.levels[0][1].spec
        out = np.zeros(spec.dims, dtype=np.float64)
        for a, E in self.levels:
            out[E.mask] = a
        return GridFunction2D(spec, out)


def measure(E: GridSet2D) -> float:
    """Lebesgue measure of a grid set: cell count times cell area."""
    return E.cell_count * E.spec.cell_area


def superlevel_set(f: GridFunction2D, t: float) -> GridSet2D:
    """Strict superlevel set {f > t}; the boundary value goes below."""
    if t < 0:
        raise ValueError("level must be nonnegative")
    return GridSet2D(f.spec, f.values > t)


def distribution(f: GridFunction2D, t: float) -> float:
    """Distribution function: measure of the strict superlevel set at t."""
    return measure(superlevel_set(f, t))


def cross_section_profile(E: GridSet2D) -> np.ndarray:
    """Per-column measure of the vertical slices of E, indexed by column."""
    return E.mask.sum(axis=1) * E.spec.dy


def simple_decomposition(f: GridFunction2D) -> SimpleDecomposition:
    """Split f into strictly decreasing positive levels and nested unions.

    Raises ValueError when f is identically zero (nothing to decompose).
    """
    positive = f.values[f.values > 0]
    if positive.size == 0:
        raise ValueError("cannot decompose the zero function")
    vals = np.unique(positive)[::-1]
    levels = []
    cumulative = []
    acc = np.zeros(f.spec.dims, dtype=bool)
    for j, a in enumerate(vals):
        Ej = GridSet2D(f.spec, f.values == a)
        levels.append((float(a), Ej))
        acc = acc | Ej.mask
        nxt = float(vals[j + 1]) if j + 1 < vals.size else 0.0
        cumulative.append((float(a) - nxt, GridSet2D(f.spec, acc)))
    return SimpleDecomposition(tuple(levels), tuple(cumulative))
