import math

import numpy as np
import pytest

from wbs2sdll.dgp import RngStream, simulate_random_walk
from wbs2sdll.diagnostics import (
    DEFAULT_GRID,
    DegenerateFitError,
    ModelKind,
    bic,
    compare_models,
    fit_ar1,
    fit_random_walk,
    fit_setar1,
)
from wbs2sdll.sdll import detect


def test_grid():
    assert DEFAULT_GRID[0] == 0.1 and DEFAULT_GRID[-1] == 0.9 and len(DEFAULT_GRID) == 17


def test_ar1_exact_orbit():
    fit = fit_ar1([1, 0.5, 0.25, 0.125])
    c, phi = fit.params
    assert c == pytest.approx(0.0, abs=1e-14)
    assert phi == pytest.approx(0.5, abs=1e-14)
    assert fit.ssr == pytest.approx(0.0, abs=1e-28)
    assert fit.p == 3 and fit.n_eff == 3


def test_ar1_degenerate():
    with pytest.raises(DegenerateFitError):
        fit_ar1([2.0] * 10)


def test_ar1_near_unit_root_on_walks():
    slopes = [fit_ar1(simulate_random_walk(500, rng=RngStream(31, r))).params[1] for r in range(200)]
    assert np.mean([0.9 <= s <= 1.05 for s in slopes]) >= 0.95


def test_random_walk_fit():
    x = np.array([0.0, 1.0, -1.0, 2.0])
    fit = fit_random_walk(x)
    assert fit.ssr == 1 + 4 + 9 and fit.p == 1 and fit.n_eff == 3


def _entry_orbit(n_low=150, n_high=51, seed=0):
    """Lower regime fed by shocks (values kept <= 1), then a noiseless upper orbit.

    The upper-regime map y -> 0.7 + 0.7 y never leaves the regime, so the
    exact orbit is placed at the end, entered by a single shock. With 150 low
    and 50 high lags the 0.75 grid quantile falls between the two regimes.
    """
    g = np.random.default_rng(seed)
    low = g.uniform(-2.0, 1.0, n_low)
    high = [5.0]
    for _ in range(n_high - 1):
        high.append(0.7 + 0.7 * high[-1])
    return np.r_[low, high]


def test_setar_recovers_exact_upper_regime():
    x = _entry_orbit()
    fit = fit_setar1(x)
    a1, b1, a2, b2, tau = fit.params
    assert a2 == pytest.approx(0.7, abs=1e-6)
    assert b2 == pytest.approx(0.7, abs=1e-6)
    lags = x[:-1]
    # tau separates the lags exactly as the true threshold 1 does
    assert np.array_equal(lags <= tau, lags <= 1.0)


def test_setar_one_sided_grid_is_degenerate():
    x = np.r_[np.zeros(40), [1.0, 2.0, 3.0]]
    with pytest.raises(DegenerateFitError):
        fit_setar1(x)
    with pytest.raises(ValueError):
        fit_setar1(np.arange(10.0))


def test_setar_vs_ar1_on_linear_data():
    wins = 0
    slope_gaps = []
    for seed in range(50):
        g = np.random.default_rng(seed)
        x = np.empty(400)
        x[0] = 0.0
        for t in range(1, 400):
            x[t] = 0.5 * x[t - 1] + g.standard_normal()
        ar, st = fit_ar1(x), fit_setar1(x)
        assert st.ssr <= ar.ssr + 1e-9
        wins += st.bic > ar.bic
        slope_gaps.append(st.params[1] - st.params[3])
    assert wins / 50 >= 0.8
    assert abs(np.mean(slope_gaps)) < 0.1


def test_bic_identity_and_ordering():
    g = np.random.default_rng(5)
    x = np.cumsum(g.normal(size=300))
    cmp = compare_models(x, detect(x))
    kinds = {f.kind for f in cmp.ranked}
    assert kinds == set(ModelKind)
    for f in cmp.ranked:
        assert f.bic == pytest.approx(f.n_eff * math.log(f.ssr / f.n_eff) + f.p * math.log(f.n_eff), abs=1e-9)
        assert f.n_eff == 299
    assert [f.bic for f in cmp.ranked] == sorted(f.bic for f in cmp.ranked)
    rw = next(f for f in cmp.ranked if f.kind is ModelKind.RANDOM_WALK)
    assert rw.ssr == float(np.sum(np.diff(x) ** 2))
    ar = next(f for f in cmp.ranked if f.kind is ModelKind.AR1)
    st = next(f for f in cmp.ranked if f.kind is ModelKind.SETAR1)
    assert st.ssr <= ar.ssr + 1e-9
    assert cmp.rank_of(ModelKind.RANDOM_WALK) < cmp.rank_of(ModelKind.PIECEWISE_CONSTANT)


def test_piecewise_wins_on_step():
    g = np.random.default_rng(1)
    x = np.r_[np.zeros(50), np.ones(50)] + 0.01 * g.normal(size=100)
    res = detect(x)
    cmp = compare_models(x, res)
    assert cmp.best.kind is ModelKind.PIECEWISE_CONSTANT
    assert cmp.best.p == 2 * res.q_hat + 2 == 4


def _sawtooth(n, sigma, seed):
    """Two-regime threshold AR(1): decay above 1, reset from below."""
    g = np.random.default_rng(seed)
    y = np.empty(n)
    prev = 0.5
    for t in range(n):
        prev = (0.8 * prev if prev > 1 else 2.5 + 0.5 * prev) + sigma * g.standard_normal()
        y[t] = prev
    return y


@pytest.mark.parametrize("seed", range(5))
def test_setar_wins_on_threshold_cycle(seed):
    x = _sawtooth(300, 0.05, seed)
    cmp = compare_models(x, detect(x))
    assert cmp.best.kind is ModelKind.SETAR1


def test_degenerate_models_are_excluded():
    x = np.r_[np.zeros(40), [1.0, 2.0, 3.0]]
    cmp = compare_models(x, detect(x))
    assert "Setar1" in cmp.excluded
    assert cmp.rank_of(ModelKind.SETAR1) is None
    assert cmp.to_dict()["excluded"]
