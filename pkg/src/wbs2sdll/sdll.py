"""Steepest-drop-to-low-levels selection and the full detection pipeline."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import SIGMA_FLOOR, Segmentation, as_series, mad_sigma, segment_means
from .cusum import Candidate
from .wbs2 import Wbs2Config, candidate_arrays, wbs2_candidates


@dataclass(frozen=True)
class SdllConfig:
    """Constants of the steepest-drop rule.

    Attributes
    ----------
    c_thr : float
        Multiplier on the universal threshold ``sqrt(2 ln n)``.
    eps_mag : float
        Absolute floor on normalised magnitudes; keeps logs finite.
    floor_mult : float
        Normalised magnitudes are also clipped at ``floor_mult * tau``, the
        "low level". Drops between two values that are both already at noise
        level then cannot win. ``0`` disables the clip.
    sigma_floor : float
        Replacement for a zero MAD noise estimate.
    """

    c_thr: float = 1.9
    eps_mag: float = 1e-12
    floor_mult: float = 0.04
    sigma_floor: float = SIGMA_FLOOR

    def __post_init__(self):
        if self.c_thr <= 0:
            raise ValueError("c_thr must be positive")
        if self.eps_mag <= 0:
            raise ValueError("eps_mag must be positive")
        if not 0 <= self.floor_mult < 1:
            raise ValueError("floor_mult must lie in [0, 1)")
        if self.sigma_floor <= 0:
            raise ValueError("sigma_floor must be positive")

    def threshold(self, n: int) -> float:
        return self.c_thr * math.sqrt(2.0 * math.log(n))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DetectResult:
    segmentation: Segmentation
    candidates: list[Candidate]
    sigma_hat: float
    q_hat: int
    sigma_degenerate: bool = False
    threshold: float = field(default=float("nan"))

    @property
    def changepoints(self) -> tuple[int, ...]:
        return self.segmentation.changepoints


def sdll_select(magnitudes, sigma_hat: float, n: int, cfg: SdllConfig | None = None) -> int:
    """Number of leading candidates to keep.

    With ``r`` the magnitudes divided by `sigma_hat` (and floored) and
    ``tau = c_thr * sqrt(2 ln n)``: if ``r[0] < tau`` nothing is kept.
    Otherwise look at the drops ``log r[i] - log r[i+1]`` that land strictly
    below ``tau`` and keep ``i`` candidates (1-based) for the largest such
    drop, preferring the smallest ``i`` on ties. If no drop lands below
    ``tau`` all candidates are kept.
    """
    cfg = cfg or SdllConfig()
    m = np.asarray(magnitudes, dtype=float)
    if m.ndim != 1:
        raise ValueError("magnitudes must be one-dimensional")
    if np.any(np.diff(m) > 0):
        raise ValueError("magnitudes must be sorted in non-increasing order")
    if np.any(m < 0) or not np.all(np.isfinite(m)):
        raise ValueError("magnitudes must be finite and non-negative")
    if not sigma_hat > 0:
        raise ValueError("sigma_hat must be positive")
    if n < 2:
        raise ValueError("n must be at least 2")
    if m.size == 0:
        return 0
    tau = cfg.threshold(n)
    r = np.maximum(m / sigma_hat, max(cfg.eps_mag, cfg.floor_mult * tau))
    if r[0] < tau:
        return 0
    landing = np.flatnonzero(r[1:] < tau) + 1  # 1-based i with r_{i+1} < tau
    if landing.size == 0:
        return int(m.size)
    drops = np.log(r[landing - 1] / r[landing])
    return int(landing[np.argmax(drops)])


def detect(x, wcfg: Wbs2Config | None = None, scfg: SdllConfig | None = None, rng=None) -> DetectResult:
    """WBS2 candidates ranked by magnitude, cut by SDLL, refitted by segment means.

    `rng` overrides the interval stream of `wcfg` (see :func:`wbs2_candidates`).
    """
    wcfg = wcfg or Wbs2Config()
    scfg = scfg or SdllConfig()
    x = as_series(x, min_length=2)
    sigma, degenerate = mad_sigma(x, floor=scfg.sigma_floor, full_output=True)
    cands = wbs2_candidates(x, wcfg, rng=rng)
    bs, mags = candidate_arrays(cands)
    q = sdll_select(mags, sigma, x.size, scfg)
    seg = segment_means(x, sorted(int(b) for b in bs[:q]))
    return DetectResult(seg, cands, sigma, q, degenerate, scfg.threshold(x.size))
