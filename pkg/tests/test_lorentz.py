import math

import numpy as np
import pytest

import rearrange2d as r
from rearrange2d.lorentz import _random_set_pairs
from conftest import random_function, random_set


def vertical(values, cell=1.0):
    return r.Weight2D.vertical(r.StepFunction1D(cell, np.asarray(values, dtype=float)))


# -- Weight2D ---------------------------------------------------------------


def test_weight_validation():
    with pytest.raises(ValueError):
        r.Weight2D.constant(0.0)
    with pytest.raises(ValueError):
        r.Weight2D.power(-1.0, 0.0)
    with pytest.raises(ValueError):
        vertical([0.0, 0.0])  # trims to an empty profile
    with pytest.raises(ValueError):
        r.Weight2D("mystery")
    spec = r.GridSpec((0, 0), (1, 1), (2, 2))
    with pytest.raises(ValueError):
        r.Weight2D.from_grid(r.GridFunction2D(spec, np.array([[1.0, 0.0], [1.0, 1.0]])))


def test_weight_box_integrals_closed_form():
    assert r.Weight2D.constant(2.0).box_integral(0, 3, 0, 2) == 12.0
    w = r.Weight2D.power(0.0, 1.0)
    assert w.box_integral(0, 1, 0, 1) == 0.5
    assert abs(r.Weight2D.power(1.0, 0.0).box_integral(0, 2, 0, 1) - 2.0) < 1e-15
    v = vertical([3.0, 1.0])
    assert v.box_integral(0, 2, 0, 2) == 8.0
    with pytest.raises(r.CoverageError):
        v.box_integral(0, 1, 0, 3)  # beyond the profile support


def test_grid_weight_integral_and_coverage():
    spec = r.GridSpec((0, 0), (1, 1), (2, 2))
    w = r.Weight2D.from_grid(r.GridFunction2D(spec, np.array([[1.0, 2.0], [3.0, 4.0]])))
    assert w.box_integral(0, 2, 0, 2) == 10.0
    assert w.box_integral(0.5, 1.5, 0.5, 1.5) == 0.25 * (1 + 2 + 3 + 4)
    with pytest.raises(r.CoverageError):
        w.box_integral(0, 3, 0, 1)


def test_weight_measure_examples(gap_sets):
    D = r.StaircaseSet((1.0, 1.0), np.array([2, 2, 1]))
    assert r.weight_measure(1, D) == 5.0  # constant weight returns the measure
    assert r.weight_measure(r.Weight2D.power(0.0, 0.0), D) == 5.0
    unit = r.StaircaseSet((1.0, 1.0), np.array([1]))
    assert r.weight_measure(r.Weight2D.power(0.0, 1.0), unit) == 0.5


# -- norms -------------------------------------------------------------------


def test_lorentz_norm_gap_function(gap_function):
    assert r.lorentz_norm_2d(gap_function, 1, 1.0) == 6.0


def test_lorentz_norm_indicator_is_weight_measure_root():
    rng = np.random.default_rng(3)
    w = r.Weight2D.power(0.5, 1.0)
    for p in (0.5, 1.0, 2.0):
        E = random_set(rng, max_dim=8)
        if E.cell_count == 0:
            continue
        got = r.lorentz_norm_2d(E.indicator_function(), w, p)
        want = r.weight_measure(w, r.rearrange_set(E)) ** (1 / p)
        assert abs(got - want) <= 1e-12 * want


def test_lorentz_norm_errors(gap_function):
    with pytest.raises(ValueError):
        r.lorentz_norm_2d(gap_function, 1, 0.0)
    with pytest.raises(r.CoverageError):
        r.lorentz_norm_2d(gap_function, vertical([1.0]), 1.0)  # profile too short


def test_lebesgue_norm_cases(gap_function, gap_sets):
    spec, A, _ = gap_sets
    zero = r.GridFunction2D(spec, np.zeros(spec.dims))
    assert r.lebesgue_norm(zero, 2.0) == 0.0
    assert r.lebesgue_norm(A.indicator_function(), 3.0) == 1.0
    rng = np.random.default_rng(9)
    f = random_function(rng, max_dim=10, integer=False)
    direct = (sum(v**2 for v in f.values.flat) * f.spec.cell_area) ** 0.5
    assert abs(r.lebesgue_norm(f, 2.0) - direct) <= 1e-12 * max(direct, 1e-300)


def test_lorentz_equals_lebesgue_for_unit_weight():
    rng = np.random.default_rng(11)
    for p in (0.5, 1.0, 2.0, 3.0):
        f = random_function(rng, max_dim=16, integer=False)
        a, b = r.lorentz_norm_2d(f, 1, p), r.lebesgue_norm(f, p)
        assert abs(a - b) <= 1e-12 * b


def test_classical_lorentz_norm_cases(gap_function):
    fstar = r.rearrange_classical(gap_function)
    v = r.StepFunction1D(1.0, np.ones(6))
    assert r.classical_lorentz_norm(gap_function, v, 1.0) == r.lebesgue_norm(
        gap_function, 1.0
    )
    # indicator: the norm is the weight measure of (0, |E|) to the 1/p
    v2 = r.StepFunction1D(0.75, np.array([4.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0]))
    ind = r.superlevel_set(gap_function, 1.0).indicator_function()
    want = v2.integral_between(0.0, 1.0) ** (1 / 2.0)
    assert abs(r.classical_lorentz_norm(ind, v2, 2.0) - want) <= 1e-12 * want
    with pytest.raises(r.CoverageError):
        r.classical_lorentz_norm(gap_function, r.StepFunction1D(1.0, np.array([1.0])), 1.0)


def test_classical_lorentz_quadrature_oracle():
    rng = np.random.default_rng(13)
    f = random_function(rng, max_dim=6, integer=False, cell=(0.5, 0.5))
    v = r.StepFunction1D(0.3, np.sort(rng.uniform(0.5, 3.0, 40))[::-1])
    p = 1.7
    fstar = r.rearrange_classical(f)
    edges = np.unique(
        np.concatenate(
            [
                np.arange(fstar.values.size + 1) * fstar.cell,
                np.arange(v.values.size + 1) * v.cell,
            ]
        )
    )
    edges = edges[edges <= fstar.support_length + 1e-12]
    mids = (edges[:-1] + edges[1:]) / 2
    oracle = sum(
        fstar(t) ** p * v(t) * w for t, w in zip(mids, np.diff(edges))
    ) ** (1 / p)
    got = r.classical_lorentz_norm(f, v, p)
    assert abs(got - oracle) <= 1e-10 * max(oracle, 1e-300)


def test_classical_norm_with_weight_kinds(gap_function):
    got = r.classical_norm_with_weight(gap_function, r.Weight2D.constant(2.0), 1.0)
    assert got == 2.0 * r.lebesgue_norm(gap_function, 1.0)
    v = vertical([2.0, 1.0, 1.0, 1.0, 1.0, 1.0])
    assert r.classical_norm_with_weight(gap_function, v, 1.0) == pytest.approx(
        2 * 2 + 1 + 1 + 1 + 1, rel=1e-14
    )
    with pytest.raises(ValueError):
        r.classical_norm_with_weight(gap_function, r.Weight2D.power(1, 0), 1.0)


def test_lorentz_norm_with_grid_weight():
    wspec = r.GridSpec((0, 0), (1, 1), (6, 6))
    wvals = np.arange(1, 37, dtype=float).reshape(6, 6)
    w = r.Weight2D.from_grid(r.GridFunction2D(wspec, wvals))
    f = r.GridFunction2D(
        r.GridSpec((0, 0), (1, 1), (3, 2)), np.array([[2.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
    )
    got = r.lorentz_norm_2d(f, w, 1.0)
    M = r.rearrange_layercake(f).values
    want = sum(
        M[i, j] * wvals[i, j] for i in range(M.shape[0]) for j in range(M.shape[1])
    )
    assert got == want
    # misaligned grid weight falls back to overlap integrals
    wspec2 = r.GridSpec((0, 0), (0.5, 0.5), (12, 12))
    w2 = r.Weight2D.from_grid(
        r.GridFunction2D(wspec2, np.repeat(np.repeat(wvals, 2, 0), 2, 1))
    )
    assert abs(r.lorentz_norm_2d(f, w2, 1.0) - want) <= 1e-12 * want


def test_mixed_norm_identity_random():
    rng = np.random.default_rng(17)
    for k in range(20):
        f = random_function(rng, max_dim=12, integer=(k % 2 == 0))
        v = r.StepFunction1D(
            f.spec.dy, np.sort(rng.integers(1, 9, f.spec.rows + 1))[::-1].astype(float)
        )
        for p in (1.0, 2.0):
            a = r.lorentz_norm_2d(f, r.Weight2D.vertical(v), p)
            b = r.mixed_norm_vertical(f, v, p)
            assert abs(a - b) <= 1e-12 * max(a, 1e-300)


def test_triangle_inequality_vertical_weight():
    rng = np.random.default_rng(19)
    for _ in range(30):
        f = random_function(rng, max_dim=10)
        g = r.GridFunction2D(f.spec, rng.integers(0, 17, f.spec.dims).astype(float))
        v = vertical(np.sort(rng.integers(1, 9, f.spec.rows))[::-1], cell=f.spec.dy)
        for p in (1.0, 2.0):
            nf, ng = r.lorentz_norm_2d(f, v, p), r.lorentz_norm_2d(g, v, p)
            nfg = r.lorentz_norm_2d(f.add(g), v, p)
            assert nfg <= nf + ng + 1e-10 * (nf + ng)


# -- quasinorm doubling ------------------------------------------------------


def test_doubling_constant_weight():
    fam = r.staircase_family(3, 3)
    rep = r.check_quasinorm_doubling(1, fam)
    assert rep.constant_estimate == 1.0
    assert all(x == 1.0 for x in rep.ratios)


def test_doubling_power_weight_closed_form():
    fam = r.staircase_family(3, 3, random_extra=5, seed=1)
    for a, b in [(1.0, 0.0), (0.5, 2.0), (-0.5, 1.0)]:
        rep = r.check_quasinorm_doubling(r.Weight2D.power(a, b), fam)
        expected = 2.0 ** (a + b)
        assert all(abs(x - expected) <= 1e-12 * expected for x in rep.ratios)


def test_doubling_flags_exponential_weight():
    xs = (np.arange(64) + 0.5) * 0.5
    spec = r.GridSpec((0, 0), (0.5, 0.5), (64, 8))
    w = r.Weight2D.from_grid(
        r.GridFunction2D(spec, np.exp(xs)[:, None] * np.ones((64, 8)))
    )
    family = [r.StaircaseSet((0.5, 0.5), np.full(n, 2)) for n in (2, 8, 16, 32)]
    rep = r.check_quasinorm_doubling(w, family)
    assert list(rep.ratios) == sorted(rep.ratios)  # grows with set width
    assert rep.ratios[-1] > 100 * rep.ratios[0]
    assert rep.worst_index == 3


def test_doubling_empty_family():
    with pytest.raises(ValueError):
        r.check_quasinorm_doubling(1, [])


# -- submodularity -----------------------------------------------------------


def test_submodularity_probe_values_frozen():
    pairs = r.submodularity_probe_pairs()
    v1 = r.check_norm_submodularity(r.Weight2D.power(1, 0), pairs)
    assert any(x.index == 0 and (x.lhs, x.rhs) == (40.0, 37.0) for x in v1)
    v2 = r.check_norm_submodularity(r.Weight2D.power(0, 1), pairs)
    assert any(x.index == 2 and (x.lhs, x.rhs) == (8.5, 6.5) for x in v2)
    spec = r.GridSpec((0, 0), (1, 1), (8, 8))
    xs = np.arange(8) + 0.5
    w3 = r.Weight2D.from_grid(r.GridFunction2D(spec, xs[:, None] + xs[None, :]))
    v3 = r.check_norm_submodularity(w3, pairs)
    assert any(x.index == 0 and (x.lhs, x.rhs) == (66.0, 63.0) for x in v3)


def test_submodularity_vertical_never_violates():
    rng = np.random.default_rng(23)
    w = vertical([5.0, 3.0, 3.0, 2.0, 1.0, 1.0, 1.0, 1.0])
    pairs = _random_set_pairs(200, seed=5, dims=(6, 6))
    assert r.check_norm_submodularity(w, pairs) == []


def test_submodularity_equal_sets_no_violation():
    spec = r.GridSpec((0, 0), (1, 1), (4, 4))
    rng = np.random.default_rng(29)
    A = r.GridSet2D(spec, rng.random((4, 4)) < 0.5)
    assert r.check_norm_submodularity(r.Weight2D.power(1, 1), [(A, A)]) == []


def test_probe_pairs_validation():
    with pytest.raises(ValueError):
        r.submodularity_probe_pairs(s=2, t=2, eps=2)


# -- factorization -----------------------------------------------------------


def test_factorization_constant():
    res = r.check_weight_factorization(1, (4, 4), (6, 6))
    assert res.factors
    assert np.allclose(res.profile, 1.0)


def test_factorization_vertical_power_profile():
    w = r.Weight2D.power(0.0, -0.5)
    res = r.check_weight_factorization(w, (4.0, 2.0), (4, 8))
    assert res.factors
    h = 0.25
    want = [2 * (math.sqrt((j + 1) * h) - math.sqrt(j * h)) / h for j in range(8)]
    assert np.allclose(res.profile, want, rtol=1e-12)
    assert all(a >= b for a, b in zip(res.profile, res.profile[1:]))


def test_factorization_x_dependence_fails():
    res = r.check_weight_factorization(r.Weight2D.power(1.0, 0.0), (4, 4), (6, 6))
    assert not res.factors
    assert res.witness is not None
    assert res.reason == "depends on the horizontal variable"


def test_factorization_increasing_profile_fails():
    res = r.check_weight_factorization(r.Weight2D.power(0.0, 1.0), (4, 4), (6, 6))
    assert not res.factors
    assert res.reason == "vertical profile increases"


def test_factorization_bad_arguments():
    with pytest.raises(ValueError):
        r.check_weight_factorization(1, (0, 4), (6, 6))


# -- embeddings --------------------------------------------------------------


def test_embedding_sup_ratio_trivial_cases():
    unit = r.StaircaseSet((1.0, 1.0), np.array([1]))
    rep = r.embedding_sup_ratio(1, 1, 1.0, 2.0, [unit])
    assert rep.sup_estimate == 1.0
    rep2 = r.embedding_sup_ratio(2, 2, 1.5, 1.5, r.staircase_family(2, 2))
    assert all(x == 1.0 for x in rep2.ratios)
    with pytest.raises(ValueError):
        r.embedding_sup_ratio(1, 1, 2.0, 1.0, [unit])
    with pytest.raises(ValueError):
        r.embedding_sup_ratio(1, 1, 1.0, 2.0, [])


def test_embedding_sup_ratio_power_closed_form():
    w1 = r.Weight2D.power(0.0, 1.0)
    w2 = r.Weight2D.constant(1.0)
    fam = r.staircase_family(3, 3)
    rep = r.embedding_sup_ratio(w1, w2, 1.0, 2.0, fam)
    for D, got in zip(fam, rep.ratios):
        m2 = sum(int(h) for h in D.heights)
        m1 = sum(int(h) ** 2 / 2 for h in D.heights)
        assert abs(got - math.sqrt(m2) / m1) <= 1e-12 * got


def test_embedding_sup_matches_indicator_norm_ratio():
    w1 = r.Weight2D.power(0.5, 0.0)
    w2 = r.Weight2D.power(0.0, 0.5)
    fam = r.staircase_family(3, 3)
    rep = r.embedding_sup_ratio(w1, w2, 1.0, 2.0, fam)
    for D, got in zip(fam[:10], rep.ratios[:10]):
        f = D.to_grid_set().indicator_function()
        direct = r.lorentz_norm_2d(f, w2, 2.0) / r.lorentz_norm_2d(f, w1, 1.0)
        assert abs(got - direct) <= 1e-12 * direct


def test_embedding_integral_single_level():
    h = r.Decreasing2DGridFunction((1.0, 1.0), np.array([[1.0]]))
    exps = r.EmbeddingExponents(2.0, 1.0)
    assert exps.r == 2.0
    assert r.embedding_integral(1, 1, exps, h) == 1.0
    big = r.Decreasing2DGridFunction((1.0, 1.0), np.full((2, 2), 3.0))
    # single level of measure 4: |D|^(-1) * (|D|^2 - 0) = |D|
    assert r.embedding_integral(1, 1, exps, big) == 4.0


def test_embedding_integral_rejects_zero_and_wrong_regime():
    exps = r.EmbeddingExponents(2.0, 1.0)
    with pytest.raises(ValueError):
        r.embedding_integral(1, 1, exps, r.Decreasing2DGridFunction((1, 1), np.zeros((2, 2))))
    with pytest.raises(ValueError):
        r.embedding_integral(1, 1, r.EmbeddingExponents(1.0, 2.0), None)


def test_embedding_integral_two_level_stieltjes_oracle():
    h = r.Decreasing2DGridFunction((1.0, 1.0), np.array([[2.0], [1.0]]))
    exps = r.EmbeddingExponents(2.0, 1.0)
    got = r.embedding_integral(1, 1, exps, h)
    assert got == 2.5
    # independent left-limit evaluation over the jump grid
    delta = 1e-9
    total = 0.0
    prev = 0.0
    for t in (2.0, 1.0):
        heights = (h.values > t - delta).sum(axis=1)
        m = float(heights.sum())
        g = m ** (exps.r / exps.p2)
        total += m ** (-exps.r / exps.p1) * (g - prev)
        prev = g
    assert abs(got - total) <= 1e-12 * total


def test_embedding_exponents_validation():
    with pytest.raises(ValueError):
        r.EmbeddingExponents(0.0, 1.0)
    assert math.isnan(r.EmbeddingExponents(1.0, 2.0).r)


# -- staircase family and report dispatch -------------------------------------


def test_staircase_family_enumeration():
    fam = r.staircase_family(2, 2)
    keys = {tuple(int(h) for h in D.heights) for D in fam}
    assert keys == {(1,), (2,), (1, 1), (2, 1), (2, 2)}
    fam2 = r.staircase_family(2, 2, random_extra=7, seed=3)
    assert len(fam2) == len(fam) + 7
    with pytest.raises(ValueError):
        r.staircase_family(0, 2)


def test_weight_check_report_dispatch():
    rep = r.weight_check_report(1, "quasinorm", family_cols=2, family_height=2)
    assert rep["condition"] == "quasinorm"
    assert rep["constant_estimate"] == 1.0
    rep = r.weight_check_report(r.Weight2D.power(1, 0), "norm", random_pairs=20)
    assert rep["verdict"] == "not_norm" and rep["violations"]
    rep = r.weight_check_report(
        vertical([3.0, 2.0, 1.0, 1.0, 1.0]), "norm", random_pairs=20
    )
    assert rep["verdict"] == "norm" and not rep["violations"]
    rep = r.weight_check_report(1, "factorize")
    assert rep["factors"]
    rep = r.weight_check_report(1, "embed", w2=1, p=1.0, p2=2.0, family_cols=2, family_height=2)
    assert rep["regime"] == "sup_ratio"
    rep = r.weight_check_report(1, "embed", w2=1, p=2.0, p2=1.0, family_cols=2, family_height=2)
    assert rep["regime"] == "integral" and rep["sup_estimate"] > 0
    with pytest.raises(ValueError):
        r.weight_check_report(1, "embed")
    with pytest.raises(ValueError):
        r.weight_check_report(1, "nonsense")
