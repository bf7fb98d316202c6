import numpy as np
import pytest

import rearrange2d as r


@pytest.fixture
def gap_sets():
    """The two rectangles behind the strict-chain demo, on the unit grid."""
    spec = r.GridSpec((0.0, 0.0), (1.0, 1.0), (6, 2))
    A = r.GridSet2D.from_boxes(spec, [(3, 4, 0, 1)])
    B = r.GridSet2D.from_boxes(spec, [(4, 6, 0, 2)])
    return spec, A, B


@pytest.fixture
def gap_function(gap_sets):
    """The weighted indicator sum whose chain inequalities are strict."""
    spec, A, B = gap_sets
    return r.GridFunction2D(spec, 2.0 * A.mask + 1.0 * B.mask)


@pytest.fixture
def gap_planar_matrix():
    """Hand-evaluated planar rearrangement of the demo function."""
    return np.array([[2.0, 1.0], [1.0, 1.0], [1.0, 0.0]])


def random_function(rng, max_dim=32, integer=True, max_value=16, cell=(1.0, 1.0)):
    cols = int(rng.integers(1, max_dim + 1))
    rows = int(rng.integers(1, max_dim + 1))
    spec = r.GridSpec((0.0, 0.0), cell, (cols, rows))
    mask = rng.random(spec.dims) < rng.uniform(0.2, 0.95)
    if integer:
        vals = rng.integers(0, max_value + 1, spec.dims).astype(np.float64)
    else:
        vals = rng.uniform(0.0, float(max_value), spec.dims)
    return r.GridFunction2D(spec, np.where(mask, vals, 0.0))


def random_set(rng, max_dim=32, cell=(1.0, 1.0)):
    cols = int(rng.integers(1, max_dim + 1))
    rows = int(rng.integers(1, max_dim + 1))
    spec = r.GridSpec((0.0, 0.0), cell, (cols, rows))
    return r.GridSet2D(spec, rng.random(spec.dims) < rng.uniform(0.1, 0.9))
