"""Weighted Lorentz functionals and weight-condition checkers.

The planar Lorentz functional integrates the p-th power of the planar
decreasing rearrangement against a weight on the positive quadrant.
Checkers estimate the doubling constant (quasinorm condition), test
submodularity over rearranged set pairs (norm condition), detect
factorization w(s,t)=v(t) with v nonincreasing, and evaluate the
embedding conditions for both index ranges.

Supremum-type conditions are certified over finite staircase families,
so reported constants are lower bounds for the true suprema; checkers
return the extremal witness along with the estimate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .grid import (
    Decreasing2DGridFunction,
    GridFunction2D,
    GridSet2D,
    GridSpec,
    StaircaseSet,
    StepFunction1D,
)
from .rearrange import rearrange_classical, rearrange_layercake, rearrange_set

__all__ = [
    "CoverageError",
    "Weight2D",
    "EmbeddingExponents",
    "weight_measure",
    "lorentz_norm_2d",
    "lebesgue_norm",
    "classical_lorentz_norm",
    "classical_norm_with_weight",
    "mixed_norm_vertical",
    "check_quasinorm_doubling",
    "check_norm_submodularity",
    "check_weight_factorization",
    "embedding_sup_ratio",
    "embedding_integral",
    "staircase_family",
    "submodularity_probe_pairs",
    "weight_check_report",
    "DoublingReport",
    "SubmodularityViolation",
    "FactorizationResult",
    "EmbeddingRatioReport",
]


class CoverageError(ValueError):
    """A weight's domain does not cover the region being integrated."""


def _power_segment(x0: float, x1: float, a: float) -> float:
    """Integral of x^a over [x0, x1) for a > -1 (0^(a+1) reads as 0)."""
    e = a + 1.0
    return (x1**e - x0**e) / e


@dataclass(frozen=True, eq=False)
class Weight2D:
    """Strictly positive weight on the positive quadrant.

    Kinds:
      constant  w = c
      power     w = x^a * y^b with a, b > -1 (integrable near the axes)
      vertical  w(s, t) = v(t) with v a nonincreasing positive step function
      grid      piecewise constant on the bounding box of a grid function

    constant and power weights cover the whole quadrant; vertical weights
    cover the strip below the support of v; grid weights cover exactly
    their bounding box.  Integrals outside the covered region raise
    CoverageError.
    """

    kind: str
    c: float = 1.0
    a: float = 0.0
    b: float = 0.0
    profile: StepFunction1D | None = None
    sampled: GridFunction2D | None = None

    def __post_init__(self):
        if self.kind not in ("constant", "power", "vertical", "grid"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "constant" and not self.c > 0:
            raise ValueError("constant weight must be positive")
        if self.kind == "power" and not (self.a > -1 and self.b > -1):
            raise ValueError("power exponents must exceed -1")
        if self.kind == "vertical":
            # a nonincreasing trimmed profile is strictly positive on its support
            if self.profile is None or self.profile.values.size == 0:
                raise ValueError("vertical weight needs a nonempty profile")
        if self.kind == "grid":
            if self.sampled is None or self.sampled.values.size == 0:
                raise ValueError("grid weight needs nonempty samples")
            if np.any(self.sampled.values <= 0):
                raise ValueError("grid weight must be strictly positive")

    @classmethod
    def constant(cls, c: float = 1.0) -> "Weight2D":
        return cls("constant", c=c)

    @classmethod
    def power(cls, a: float, b: float, c: float = 1.0) -> "Weight2D":
        if not c > 0:
            raise ValueError("power prefactor must be positive")
        return cls("power", a=a, b=b, c=c)

    @classmethod
    def vertical(cls, profile: StepFunction1D) -> "Weight2D":
        return cls("vertical", profile=profile)

    @classmethod
    def from_grid(cls, sampled: GridFunction2D) -> "Weight2D":
        return cls("grid", sampled=sampled)

    def covers_box(self, x0: float, x1: float, y0: float, y1: float) -> bool:
        tol = 1e-12
        if self.kind in ("constant", "power"):
            return True
        if self.kind == "vertical":
            return y1 <= self.profile.support_length * (1 + tol) + tol
        spec = self.sampled.spec
        bx0, by0 = spec.origin
        bx1 = bx0 + spec.cols * spec.dx
        by1 = by0 + spec.rows * spec.dy
        pad = tol * max(1.0, abs(bx1), abs(by1))
        return x0 >= bx0 - pad and y0 >= by0 - pad and x1 <= bx1 + pad and y1 <= by1 + pad

    def box_integral(self, x0: float, x1: float, y0: float, y1: float) -> float:
        """Exact integral of the weight over [x0, x1) x [y0, y1)."""
        if x0 < 0 or y0 < 0 or x1 < x0 or y1 < y0:
            raise ValueError("box must lie in the positive quadrant")
        if x1 == x0 or y1 == y0:
            return 0.0
        if not self.covers_box(x0, x1, y0, y1):
            raise CoverageError(
                f"{self.kind} weight does not cover box "
                f"[{x0}, {x1}) x [{y0}, {y1})"
            )
        if self.kind == "constant":
            return self.c * (x1 - x0) * (y1 - y0)
        if self.kind == "power":
            return self.c * _power_segment(x0, x1, self.a) * _power_segment(y0, y1, self.b)
        if self.kind == "vertical":
            return (x1 - x0) * self.profile.integral_between(y0, y1)
        spec = self.sampled.spec
        ex = spec.origin[0] + np.arange(spec.cols + 1) * spec.dx
        ey = spec.origin[1] + np.arange(spec.rows + 1) * spec.dy
        ox = np.clip(np.minimum(ex[1:], x1) - np.maximum(ex[:-1], x0), 0.0, None)
        oy = np.clip(np.minimum(ey[1:], y1) - np.maximum(ey[:-1], y0), 0.0, None)
        return float(ox @ self.sampled.values @ oy)

    def dilated_box_integral(self, x0: float, x1: float, y0: float, y1: float) -> float:
        """Integral of x -> w(2x) over the box, via the doubled box."""
        return self.box_integral(2 * x0, 2 * x1, 2 * y0, 2 * y1) / 4.0

    def cell_integrals(self, cell: tuple[float, float], dims: tuple[int, int]) -> np.ndarray:
        """Matrix of weight integrals over the origin-anchored cell grid."""
        cols, rows = dims
        dx, dy = cell
        if cols == 0 or rows == 0:
            return np.zeros((cols, rows))
        if not self.covers_box(0.0, cols * dx, 0.0, rows * dy):
            raise CoverageError(f"{self.kind} weight does not cover the function support")
        if self.kind == "constant":
            return np.full((cols, rows), self.c * dx * dy)
        if self.kind == "power":
            ex = np.arange(cols + 1) * dx
            ey = np.arange(rows + 1) * dy
            xint = np.diff(ex ** (self.a + 1)) / (self.a + 1)
            yint = np.diff(ey ** (self.b + 1)) / (self.b + 1)
            return self.c * np.outer(xint, yint)
        if self.kind == "vertical":
            yint = np.array(
                [self.profile.integral_between(j * dy, (j + 1) * dy) for j in range(rows)]
            )
            return dx * np.tile(yint, (cols, 1))
        spec = self.sampled.spec
        aligned = (
            spec.origin == (0.0, 0.0)
            and spec.cell == (float(dx), float(dy))
            and spec.cols >= cols
            and spec.rows >= rows
        )
        if aligned:
            return self.sampled.values[:cols, :rows] * dx * dy
        out = np.empty((cols, rows))
        for i in range(cols):
            for j in range(rows):
                out[i, j] = self.box_integral(i * dx, (i + 1) * dx, j * dy, (j + 1) * dy)
        return out


def _as_weight(w) -> Weight2D:
    if isinstance(w, Weight2D):
        return w
    if isinstance(w, (int, float)):
        return Weight2D.constant(float(w))
    raise ValueError(f"cannot interpret {w!r} as a weight")


def weight_measure(w, D: StaircaseSet) -> float:
    """Weighted measure of a staircase set, column box by column box."""
    w = _as_weight(w)
    dx, dy = D.cell
    parts = [
        w.box_integral(i * dx, (i + 1) * dx, 0.0, int(h) * dy)
        for i, h in enumerate(D.heights)
    ]
    return math.fsum(parts)


def lorentz_norm_2d(f: GridFunction2D, w, p: float) -> float:
    """Planar weighted Lorentz functional of f.

    Integrates the p-th power of the planar decreasing rearrangement
    against the weight, then takes the 1/p root.  The sum is exact (fsum)
    so the unweighted case reproduces the Lebesgue norm bit for bit.
    """
    if not p > 0:
        raise ValueError("p must be positive")
    w = _as_weight(w)
    M = rearrange_layercake(f)
    if not M.values.size:
        return 0.0
    W = w.cell_integrals(M.cell, M.values.shape)
    return math.fsum((M.values**p * W).flat) ** (1.0 / p)


def lebesgue_norm(f: GridFunction2D, p: float) -> float:
    """Plain L^p norm of a grid function."""
    if not p > 0:
        raise ValueError("p must be positive")
    if not f.values.size:
        return 0.0
    total = math.fsum((f.values**p * f.spec.cell_area).flat)
    return total ** (1.0 / p)


def _step_power_weighted_integral(s: StepFunction1D, p: float, v: StepFunction1D) -> float:
    """Integral of s(t)^p v(t) dt over the support of s, on merged cells."""
    if not s.values.size:
        return 0.0
    edges = np.union1d(
        np.arange(s.values.size + 1) * s.cell,
        np.arange(v.values.size + 1) * v.cell,
    )
    edges = edges[edges <= s.support_length * (1 + 1e-15)]
    if edges[-1] < s.support_length:
        edges = np.append(edges, s.support_length)
    mids = (edges[:-1] + edges[1:]) / 2
    si = np.minimum((mids // s.cell).astype(int), s.values.size - 1)
    vi = (mids // v.cell).astype(int)
    vvals = np.where(vi < v.values.size, v.values[np.minimum(vi, v.values.size - 1)], 0.0)
    terms = (s.values[si] ** p) * vvals * np.diff(edges)
    return math.fsum(terms)


def classical_lorentz_norm(f: GridFunction2D, v: StepFunction1D, p: float) -> float:
    """Classical weighted Lorentz functional via the 1D rearrangement of f."""
    if not p > 0:
        raise ValueError("p must be positive")
    fstar = rearrange_classical(f)
    if not fstar.values.size:
        return 0.0
    if v.support_length < fstar.support_length * (1 - 1e-12):
        raise CoverageError("weight profile does not cover the support of the rearrangement")
    return _step_power_weighted_integral(fstar, p, v) ** (1.0 / p)


def classical_norm_with_weight(f: GridFunction2D, w, p: float) -> float:
    """Classical Lorentz norm with the 1D profile drawn from a 2D weight.

    Vertical weights contribute their profile directly; constant weights
    become a flat profile covering the support of the rearrangement.
    Other kinds have no canonical 1D restriction and are rejected.
    """
    w = _as_weight(w)
    if w.kind == "vertical":
        return classical_lorentz_norm(f, w.profile, p)
    if w.kind == "constant":
        fstar = rearrange_classical(f)
        if not fstar.values.size:
            return 0.0
        v = StepFunction1D(fstar.cell, np.full(fstar.values.size + 1, w.c))
        return classical_lorentz_norm(f, v, p)
    raise ValueError("the 1D norm needs a vertical or constant weight")


def mixed_norm_vertical(f: GridFunction2D, v: StepFunction1D, p: float) -> float:
    """Mixed-norm evaluation for a vertical weight w(s,t) = v(t).

    Computes the 1D weighted Lorentz integral of every fixed-x slice and
    stacks them in L^p over x.  For nonincreasing v this equals
    lorentz_norm_2d(f, vertical(v), p); the two sides take genuinely
    different rearrangement routes.
    """
    if not p > 0:
        raise ValueError("p must be positive")
    dy = f.spec.dy
    if v.support_length < f.spec.rows * dy * (1 - 1e-12):
        raise CoverageError("weight profile does not cover the slice supports")
    yint = np.array([v.integral_between(j * dy, (j + 1) * dy) for j in range(f.spec.rows)])
    colsorted = np.sort(f.values, axis=1, kind="stable")[:, ::-1]
    terms = (colsorted**p) * yint[None, :] * f.spec.dx
    return math.fsum(terms.flat) ** (1.0 / p)


@dataclass(frozen=True)
class DoublingReport:
    """Per-set doubling ratios and their maximum (a lower sup bound)."""

    ratios: tuple
    constant_estimate: float
    worst_index: int


def check_quasinorm_doubling(w, family) -> DoublingReport:
    """Estimate the doubling constant over a family of staircase sets.

    For each decreasing set D the ratio of the integral of w(2x) over D
    to the integral of w over D is reported; the maximum is a lower bound
    for the supremum over all decreasing sets.
    """
    w = _as_weight(w)
    family = list(family)
    if not family:
        raise ValueError("family must be nonempty")
    ratios = []
    for D in family:
        dx, dy = D.cell
        num = math.fsum(
            w.dilated_box_integral(i * dx, (i + 1) * dx, 0.0, int(h) * dy)
            for i, h in enumerate(D.heights)
        )
        den = weight_measure(w, D)
        ratios.append(num / den)
    worst = int(np.argmax(ratios))
    return DoublingReport(tuple(ratios), ratios[worst], worst)


@dataclass(frozen=True)
class SubmodularityViolation:
    index: int
    lhs: float
    rhs: float
    excess: float


def check_norm_submodularity(w, pairs, rel_tol: float = 1e-12):
    """Check w((A&B)*) + w((A|B)*) <= w(A*) + w(B*) over set pairs.

    Returns the list of violating pairs (empty when the condition holds
    on every pair).  A pair violates when the left side exceeds the right
    side by more than rel_tol times the right side.
    """
    w = _as_weight(w)
    violations = []
    for idx, (A, B) in enumerate(pairs):
        lhs = weight_measure(w, rearrange_set(A.intersection(B))) + weight_measure(
            w, rearrange_set(A.union(B))
        )
        rhs = weight_measure(w, rearrange_set(A)) + weight_measure(w, rearrange_set(B))
        if lhs > rhs + rel_tol * abs(rhs):
            violations.append(SubmodularityViolation(idx, lhs, rhs, lhs - rhs))
    return violations


@dataclass(frozen=True)
class FactorizationResult:
    """Outcome of sampling a weight for the form w(s,t) = v(t), v down."""

    factors: bool
    cell: float
    profile: np.ndarray | None
    witness: tuple | None
    reason: str = ""


def check_weight_factorization(
    w, box: tuple[float, float], resolution: tuple[int, int], rel_tol: float = 1e-9
) -> FactorizationResult:
    """Sample cell means of w on (0, box_x) x (0, box_y) and test the form.

    Factorization holds when every sampled row is constant in s within
    rel_tol (relative), and the common vertical profile is nonincreasing
    within the same tolerance.  On failure a witness cell is returned.
    """
    w = _as_weight(w)
    bx, by = box
    nx, ny = resolution
    if not (bx > 0 and by > 0 and nx >= 1 and ny >= 1):
        raise ValueError("box and resolution must be positive")
    dx, dy = bx / nx, by / ny
    means = np.empty((nx, ny))
    for i in range(nx):
        for j in range(ny):
            means[i, j] = w.box_integral(i * dx, (i + 1) * dx, j * dy, (j + 1) * dy) / (dx * dy)
    for j in range(ny):
        row = means[:, j]
        ref = row[0]
        dev = np.abs(row - ref)
        worst = int(np.argmax(dev))
        if dev[worst] > rel_tol * max(abs(ref), 1e-300):
            return FactorizationResult(
                False, dy, None, (worst, j, float(row[worst]), float(ref)),
                reason="depends on the horizontal variable",
            )
    profile = means[0, :].copy()
    for j in range(ny - 1):
        if profile[j + 1] > profile[j] * (1 + rel_tol):
            return FactorizationResult(
                False, dy, None, (0, j + 1, float(profile[j + 1]), float(profile[j])),
                reason="vertical profile increases",
            )
    return FactorizationResult(True, dy, profile, None)


@dataclass(frozen=True)
class EmbeddingExponents:
    """Exponent pair with the conjugate index r when p1 > p2."""

    p1: float
    p2: float
    r: float = field(init=False)

    def __post_init__(self):
        if not (self.p1 > 0 and self.p2 > 0):
            raise ValueError("exponents must be positive")
        r = 1.0 / (1.0 / self.p2 - 1.0 / self.p1) if self.p1 > self.p2 else float("nan")
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class EmbeddingRatioReport:
    ratios: tuple
    sup_estimate: float
    worst_index: int


def embedding_sup_ratio(w1, w2, p1: float, p2: float, family) -> EmbeddingRatioReport:
    """Estimate sup over decreasing sets of w2(D)^(1/p2) / w1(D)^(1/p1).

    Finiteness of this supremum characterizes the embedding of the planar
    Lorentz space with (w1, p1) into the one with (w2, p2) when p1 <= p2.
    The estimate over a finite family is a lower bound for the true sup.
    """
    if p1 > p2:
        raise ValueError("this condition applies when p1 <= p2")
    family = list(family)
    if not family:
        raise ValueError("family must be nonempty")
    w1, w2 = _as_weight(w1), _as_weight(w2)
    ratios = [
        weight_measure(w2, D) ** (1.0 / p2) / weight_measure(w1, D) ** (1.0 / p1)
        for D in family
    ]
    worst = int(np.argmax(ratios))
    return EmbeddingRatioReport(tuple(ratios), ratios[worst], worst)


def embedding_integral(
    w1, w2, exps: EmbeddingExponents, h: Decreasing2DGridFunction
) -> float:
    """Evaluate the p1 > p2 embedding functional for one decreasing h.

    h takes finitely many positive values t_1 > ... > t_n, so the level
    sets S_k = {h >= t_k} grow through finitely many staircases and the
    Stieltjes integral collapses to

        sum_k w1(S_k)^(-r/p1) * (w2(S_k)^(r/p2) - w2(S_{k-1})^(r/p2))

    with S_0 empty, i.e. the integrand is evaluated at the left limit of
    each jump (the right limit would weight the first jump by the empty
    set and diverge).  The supremum of this quantity over decreasing h
    is the embedding condition.
    """
    if not exps.p1 > exps.p2:
        raise ValueError("the integral condition applies when p1 > p2")
    if not h.values.size:
        raise ValueError("h must not be identically zero")
    w1, w2 = _as_weight(w1), _as_weight(w2)
    r = exps.r
    tvals = np.unique(h.values[h.values > 0])[::-1]
    total = 0.0
    prev = 0.0
    for t in tvals:
        heights = (h.values >= t).sum(axis=1).astype(np.int64)
        S = StaircaseSet(h.cell, heights)
        m1 = weight_measure(w1, S)
        m2 = weight_measure(w2, S) ** (r / exps.p2)
        total += m1 ** (-r / exps.p1) * (m2 - prev)
        prev = m2
    return total


def staircase_family(
    max_cols: int,
    max_height: int,
    cell: tuple[float, float] = (1.0, 1.0),
    random_extra: int = 0,
    seed: int = 0,
):
    """All staircases with <= max_cols columns and heights in [1, max_height].

    Optionally appends random_extra random staircases (sorted random
    height vectors) drawn deterministically from the seed.
    """
    if max_cols < 1 or max_height < 1:
        raise ValueError("family bounds must be at least 1")
    out = []
    for ncols in range(1, max_cols + 1):
        for combo in itertools.combinations_with_replacement(range(max_height, 0, -1), ncols):
            out.append(StaircaseSet(cell, np.array(combo, dtype=np.int64)))
    rng = np.random.default_rng(seed)
    for _ in range(random_extra):
        n = int(rng.integers(1, max_cols + 1))
        h = np.sort(rng.integers(1, max_height + 1, size=n))[::-1]
        out.append(StaircaseSet(cell, h))
    return out


def submodularity_probe_pairs(
    s: int = 4, t: int = 3, eps: int = 1, a: int = 2, b: int = 4
):
    """The three perturbed-rectangle pairs that separate norm weights.

    These set pairs witness submodularity failures for weights that are
    not of the vertical nonincreasing form: the first two probe
    dependence on the horizontal variable, the third probes growth in
    the vertical one.  Built on the unit grid; eps, s, t, a, b are cell
    counts with eps < min(s, t) and eps < a <= b.
    """
    if not (0 < eps < min(s, t) and 0 < a <= b and eps < a):
        raise ValueError("need 0 < eps < min(s, t) and eps < a <= b")
    dims1 = (s, t + eps)
    spec1 = GridSpec((0.0, 0.0), (1.0, 1.0), dims1)
    A1 = GridSet2D.from_boxes(spec1, [(0, eps, 0, t), (eps, s, 0, t - eps)])
    B1 = GridSet2D.from_boxes(spec1, [(0, eps, 0, t - eps), (eps, s, 0, t)])
    A2 = GridSet2D.from_boxes(spec1, [(0, s, 0, t)])
    B2 = GridSet2D.from_boxes(
        spec1,
        [(0, eps, eps, t + eps), (eps, s - eps, 0, t), (s - eps, s, 0, t - eps)],
    )
    spec3 = GridSpec((0.0, 0.0), (1.0, 1.0), (eps, b))
    A3 = GridSet2D.from_boxes(spec3, [(0, eps, 0, a)])
    B3 = GridSet2D.from_boxes(spec3, [(0, eps, eps, b)])
    return [(A1, B1), (A2, B2), (A3, B3)]


def _random_set_pairs(count: int, seed: int, dims=(4, 4)):
    rng = np.random.default_rng(seed)
    spec = GridSpec((0.0, 0.0), (1.0, 1.0), dims)
    pairs = []
    for _ in range(count):
        A = GridSet2D(spec, rng.random(dims) < rng.uniform(0.2, 0.8))
        B = GridSet2D(spec, rng.random(dims) < rng.uniform(0.2, 0.8))
        pairs.append((A, B))
    return pairs


def weight_check_report(
    w,
    condition: str,
    w2=None,
    p: float = 1.0,
    p2: float = 2.0,
    family_cols: int = 4,
    family_height: int = 4,
    family_random: int = 20,
    seed: int = 0,
    box: tuple[float, float] = (4.0, 4.0),
    resolution: tuple[int, int] = (8, 8),
    random_pairs: int = 200,
) -> dict:
    """Assemble the report for one weight-condition check.

    Conditions: "quasinorm" estimates the doubling constant over a
    staircase family; "factorize" samples for the vertical form;
    "norm" combines factorization with submodularity over the probe
    constructions plus seeded random pairs; "embed" evaluates the
    embedding condition for the index regime given by p and p2.
    """
    w = _as_weight(w)
    if condition == "quasinorm":
        family = staircase_family(
            family_cols, family_height, random_extra=family_random, seed=seed
        )
        rep = check_quasinorm_doubling(w, family)
        return {
            "condition": "quasinorm",
            "family_size": len(family),
            "constant_estimate": rep.constant_estimate,
            "worst_index": rep.worst_index,
            "ratios": list(rep.ratios),
        }
    if condition == "factorize":
        res = check_weight_factorization(w, box, resolution)
        return {
            "condition": "factorize",
            "factors": res.factors,
            "cell": res.cell,
            "profile": None if res.profile is None else [float(v) for v in res.profile],
            "witness": None if res.witness is None else list(res.witness),
            "reason": res.reason,
        }
    if condition == "norm":
        fact = check_weight_factorization(w, box, resolution)
        pairs = submodularity_probe_pairs() + _random_set_pairs(random_pairs, seed)
        violations = check_norm_submodularity(w, pairs)
        return {
            "condition": "norm",
            "verdict": "norm" if fact.factors and not violations else "not_norm",
            "factorizes": fact.factors,
            "profile": None if fact.profile is None else [float(v) for v in fact.profile],
            "pairs_checked": len(pairs),
            "violations": [
                {"index": v.index, "lhs": v.lhs, "rhs": v.rhs, "excess": v.excess}
                for v in violations
            ],
        }
    if condition == "embed":
        if w2 is None:
            raise ValueError("embed condition needs a second weight")
        w2 = _as_weight(w2)
        family = staircase_family(
            family_cols, family_height, random_extra=family_random, seed=seed
        )
        if p <= p2:
            rep = embedding_sup_ratio(w, w2, p, p2, family)
            devs = []
            for D in family[:25]:
                f = D.to_grid_set().indicator_function()
                direct = lorentz_norm_2d(f, w2, p2) / lorentz_norm_2d(f, w, p)
                devs.append(abs(direct - rep.ratios[len(devs)]))
            return {
                "condition": "embed",
                "regime": "sup_ratio",
                "p1": p,
                "p2": p2,
                "family_size": len(family),
                "sup_estimate": rep.sup_estimate,
                "worst_index": rep.worst_index,
                "cross_check_max_dev": max(devs),
            }
        exps = EmbeddingExponents(p, p2)
        rng = np.random.default_rng(seed)
        values = []
        for D in family:
            values.append(
                embedding_integral(
                    w, w2, exps, Decreasing2DGridFunction(D.cell, D.mask_on(
                        D.num_columns, max(D.max_height, 1)
                    ).astype(np.float64))
                )
            )
        for _ in range(family_random):
            spec = GridSpec((0.0, 0.0), (1.0, 1.0), (family_cols, family_height))
            vals = np.where(
                rng.random(spec.dims) < 0.7, rng.integers(0, 9, spec.dims), 0
            ).astype(np.float64)
            h = rearrange_layercake(GridFunction2D(spec, vals))
            if h.values.size:
                values.append(embedding_integral(w, w2, exps, h))
        worst = int(np.argmax(values))
        return {
            "condition": "embed",
            "regime": "integral",
            "p1": p,
            "p2": p2,
            "r": exps.r,
            "family_size": len(values),
            "sup_estimate": values[worst],
            "worst_index": worst,
        }
    raise ValueError(f"unknown condition {condition!r}")
