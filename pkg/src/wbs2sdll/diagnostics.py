"""Is a frequent-change fit really better than a simple dynamic model?

Every model is scored on the same sample ``t = 2..n`` so sums of squared
residuals and information criteria are directly comparable:

* ``RandomWalk``: ``x[t] - x[t-1]`` is pure noise (1 parameter).
* ``Ar1``: OLS of ``x[t]`` on ``(1, x[t-1])`` (3 parameters).
* ``Setar1``: two-regime threshold AR(1), threshold picked on a quantile
  grid (6 parameters).
* ``PiecewiseConstant``: the detector's segment means, charging each
  change-point location as a parameter (``2 q + 2``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import as_series, fitted_signal
from .sdll import DetectResult

DEFAULT_GRID = tuple(np.round(np.arange(0.10, 0.9001, 0.05), 2))
MIN_REGIME = 5
# Keeps log(ssr) finite for exact fits.
SSR_FLOOR = 1e-300


class DegenerateFitError(ValueError):
    """A least-squares problem without a unique solution."""


class ModelKind(str, enum.Enum):
    PIECEWISE_CONSTANT = "PiecewiseConstant"
    AR1 = "Ar1"
    SETAR1 = "Setar1"
    RANDOM_WALK = "RandomWalk"


def bic(ssr: float, p: int, n_eff: int) -> float:
    return n_eff * math.log(max(ssr, SSR_FLOOR) / n_eff) + p * math.log(n_eff)


def aic(ssr: float, p: int, n_eff: int) -> float:
    return n_eff * math.log(max(ssr, SSR_FLOOR) / n_eff) + 2 * p


@dataclass(frozen=True)
class ModelFit:
    kind: ModelKind
    params: tuple[float, ...]
    ssr: float
    p: int
    n_eff: int

    @property
    def bic(self) -> float:
        return bic(self.ssr, self.p, self.n_eff)

    @property
    def aic(self) -> float:
        return aic(self.ssr, self.p, self.n_eff)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "params": list(self.params),
            "ssr": self.ssr,
            "p": self.p,
            "n_eff": self.n_eff,
            "bic": self.bic,
            "aic": self.aic,
        }


def _ols_line(z: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Intercept, slope and SSR of ``y ~ 1 + z``."""
    zc = z - z.mean()
    szz = float(zc @ zc)
    if szz <= 1e-14 * max(1.0, float(z @ z)):
        raise DegenerateFitError("regressor has (numerically) zero variance")
    slope = float(zc @ (y - y.mean())) / szz
    intercept = float(y.mean() - slope * z.mean())
    resid = y - intercept - slope * z
    return intercept, slope, float(resid @ resid)


def fit_ar1(x) -> ModelFit:
    """Least squares of ``x[t]`` on ``(1, x[t-1])`` over ``t = 2..n``."""
    x = as_series(x, min_length=3)
    c, phi, ssr = _ols_line(x[:-1], x[1:])
    return ModelFit(ModelKind.AR1, (c, phi), ssr, 3, x.size - 1)


def fit_random_walk(x) -> ModelFit:
    x = as_series(x, min_length=2)
    d = np.diff(x)
    return ModelFit(ModelKind.RANDOM_WALK, (), float(np.sum(d ** 2)), 1, x.size - 1)


def fit_setar1(x, grid_quantiles=DEFAULT_GRID) -> ModelFit:
    """Two-regime threshold AR(1) by grid search over the threshold.

    ``x[t] = a1 + b1 x[t-1]`` when ``x[t-1] <= tau`` and ``a2 + b2 x[t-1]``
    otherwise. Candidate thresholds are the `grid_quantiles` of the lagged
    values; a threshold is skipped when either regime has fewer than five
    points or a constant regressor. The first minimiser of the SSR wins.

    Returns
    -------
    ModelFit
        ``params = (a1, b1, a2, b2, tau)``.
    """
    x = as_series(x, min_length=20)
    z, y = x[:-1], x[1:]
    best = None
    for tau in np.quantile(z, grid_quantiles):
        low = z <= tau
        if low.sum() < MIN_REGIME or (~low).sum() < MIN_REGIME:
            continue
        try:
            a1, b1, s1 = _ols_line(z[low], y[low])
            a2, b2, s2 = _ols_line(z[~low], y[~low])
        except DegenerateFitError:
            continue
        if best is None or s1 + s2 < best[0]:
            best = (s1 + s2, (a1, b1, a2, b2, float(tau)))
    if best is None:
        raise DegenerateFitError("no threshold on the grid leaves both regimes estimable")
    return ModelFit(ModelKind.SETAR1, best[1], best[0], 6, x.size - 1)


def fit_piecewise(x, result: DetectResult) -> ModelFit:
    """Score the detector's step fit on ``t = 2..n``."""
    x = as_series(x, min_length=2)
    seg = result.segmentation
    if seg.n != x.size:
        raise ValueError("detection result refers to a series of different length")
    resid = (x - fitted_signal(seg))[1:]
    params = tuple(float(m) for m in seg.means) + tuple(float(b) for b in seg.changepoints)
    return ModelFit(ModelKind.PIECEWISE_CONSTANT, params, float(resid @ resid), 2 * seg.q + 2, x.size - 1)


@dataclass(frozen=True)
class Comparison:
    """Fits ranked by BIC (best first) plus the models that could not be fitted."""

    ranked: list[ModelFit]
    excluded: dict[str, str]

    @property
    def best(self) -> ModelFit:
        return self.ranked[0]

    def rank_of(self, kind: ModelKind) -> int | None:
        for i, fit in enumerate(self.ranked):
            if fit.kind is kind:
                return i
        return None

    def to_dict(self) -> dict:
        return {
            "models": [f.to_dict() for f in self.ranked],
            "excluded": dict(self.excluded),
        }


def compare_models(x, result: DetectResult, grid_quantiles=DEFAULT_GRID) -> Comparison:
    x = as_series(x, min_length=2)
    fits = [fit_piecewise(x, result), fit_random_walk(x)]
    excluded = {}
    for kind, fitter in ((ModelKind.AR1, fit_ar1), (ModelKind.SETAR1, lambda v: fit_setar1(v, grid_quantiles))):
        try:
            fits.append(fitter(x))
        except ValueError as exc:
            excluded[kind.value] = str(exc)
    fits.sort(key=lambda f: f.bic)
    return Comparison(fits, excluded)
