"""Series validation, segment-mean fitting and the difference-based MAD noise scale.

Change-point convention used throughout the package: a change-point ``b`` is
1-based and marks the last index of the left segment, so the mean shifts
between observations ``b`` and ``b + 1``. Valid values lie in ``[1, n - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Gaussian consistency constant, the 0.75 quantile of N(0, 1).
MAD_CONSTANT = 0.6744897501960817
SIGMA_FLOOR = 1e-12


def as_series(x, min_length: int = 1) -> np.ndarray:
    """Return ``x`` as a finite 1-D float array of length at least `min_length`."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"series must be one-dimensional, got shape {arr.shape}")
    if arr.size < min_length:
        raise ValueError(f"series needs at least {min_length} observation(s), got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("series contains NaN or infinite values")
    return arr


def check_changepoints(changepoints: Iterable[int], n: int) -> tuple[int, ...]:
    cps = tuple(int(b) for b in changepoints)
    for prev, cur in zip(cps, cps[1:]):
        if cur <= prev:
            raise ValueError(f"change-points must be strictly increasing, got {cps}")
    for b in cps:
        if not 1 <= b <= n - 1:
            raise ValueError(f"change-point {b} outside [1, {n - 1}]")
    return cps


@dataclass(frozen=True)
class Segmentation:
    """Sorted change-points together with the mean of every induced segment.

    Attributes
    ----------
    changepoints : tuple of int
        Strictly increasing 1-based change-points in ``[1, n - 1]``.
    means : numpy.ndarray
        ``len(changepoints) + 1`` segment averages, left to right.
    n : int
        Length of the series the segmentation refers to.
    """

    changepoints: tuple[int, ...]
    means: np.ndarray
    n: int

    def __post_init__(self):
        check_changepoints(self.changepoints, self.n)
        if len(self.means) != len(self.changepoints) + 1:
            raise ValueError("need exactly one mean per segment")

    @property
    def q(self) -> int:
        return len(self.changepoints)

    def bounds(self) -> list[tuple[int, int]]:
        """1-based inclusive ``(start, end)`` of every segment."""
        edges = [0, *self.changepoints, self.n]
        return [(lo + 1, hi) for lo, hi in zip(edges, edges[1:])]


def segment_means(x, changepoints: Sequence[int] = ()) -> Segmentation:
    """Least-squares piecewise-constant fit with the given change-points."""
    x = as_series(x)
    cps = check_changepoints(changepoints, x.size)
    edges = np.array([0, *cps, x.size])
    means = np.array([x[lo:hi].mean() for lo, hi in zip(edges[:-1], edges[1:])])
    return Segmentation(cps, means, x.size)


def fitted_signal(seg: Segmentation) -> np.ndarray:
    """Step function of length ``seg.n`` equal to ``seg.means[j]`` on segment ``j``."""
    lengths = np.diff([0, *seg.changepoints, seg.n])
    return np.repeat(np.asarray(seg.means, dtype=float), lengths)


def residual_sum_of_squares(x, seg: Segmentation) -> float:
    x = as_series(x)
    return float(np.sum((x - fitted_signal(seg)) ** 2))


def mad_sigma(x, floor: float = SIGMA_FLOOR, full_output: bool = False):
    """Robust noise standard deviation from absolute first differences.

    Computes ``median(|x[t+1] - x[t]|) / (sqrt(2) * 0.67449)``. Differencing
    removes the piecewise-constant signal except at the (few) jumps, and the
    median ignores those.

    Parameters
    ----------
    x : array_like
        Series with at least two observations.
    floor : float
        Value returned when the median absolute difference is zero.
    full_output : bool
        If True, return ``(sigma, degenerate)`` where `degenerate` tells whether
        the floor was applied.
    """
    x = as_series(x, min_length=2)
    med = float(np.median(np.abs(np.diff(x))))
    degenerate = med == 0.0
    sigma = floor if degenerate else med / (np.sqrt(2.0) * MAD_CONSTANT)
    if full_output:
        return sigma, degenerate
    return sigma
