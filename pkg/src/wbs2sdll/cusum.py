"""CUSUM mean-shift contrast, interval scans and random interval draws.

All indices are 1-based and inclusive. For an interval ``[s, e]`` and split
``b`` (``s <= b < e``) the contrast is::

    sqrt(n_r / (n_se * n_l)) * sum(x[s..b]) - sqrt(n_l / (n_se * n_r)) * sum(x[b+1..e])

with ``n_se = e - s + 1``, ``n_l = b - s + 1`` and ``n_r = e - b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import as_series


@dataclass(frozen=True)
class Interval:
    s: int
    e: int

    def __post_init__(self):
        if not self.s < self.e:
            raise ValueError(f"interval needs s < e, got ({self.s}, {self.e})")


@dataclass(frozen=True)
class Candidate:
    """Best split ``b`` of `interval` and its absolute CUSUM value."""

    b: int
    magnitude: float
    interval: Interval


def prefix_sums(x) -> np.ndarray:
    """Cumulative sums with a leading zero, ``S[t] = x[1] + ... + x[t]``.

    The series is centred at its median first. The contrast annihilates
    constants, so this changes nothing mathematically but keeps the partial
    sums small and the rounding error of long flat stretches negligible.
    """
    x = as_series(x)
    out = np.empty(x.size + 1)
    out[0] = 0.0
    np.cumsum(x - np.median(x), out=out[1:])
    return out


def _check_split(n: int, s: int, b: int, e: int):
    if not 1 <= s <= b < e <= n:
        raise ValueError(f"need 1 <= s <= b < e <= {n}, got (s, b, e) = ({s}, {b}, {e})")


def _contrast(S: np.ndarray, s, b, e):
    n_se = e - s + 1
    n_l = b - s + 1
    n_r = e - b
    left = S[b] - S[s - 1]
    right = S[e] - S[b]
    return np.sqrt(n_r / (n_se * n_l)) * left - np.sqrt(n_l / (n_se * n_r)) * right


def cusum_value(x, s: int, b: int, e: int) -> float:
    """Signed CUSUM contrast of `x` on ``[s, e]`` split after ``b``."""
    x = as_series(x)
    _check_split(x.size, s, b, e)
    return float(_contrast(prefix_sums(x), s, b, e))


def scan_intervals(S: np.ndarray, starts: np.ndarray, ends: np.ndarray) -> tuple[int, float, int]:
    """Maximise ``|CUSUM|`` jointly over all splits of a batch of intervals.

    Parameters
    ----------
    S : numpy.ndarray
        Output of :func:`prefix_sums`.
    starts, ends : numpy.ndarray
        1-based inclusive interval bounds with ``starts < ends``.

    Returns
    -------
    b : int
        Best split; among exact ties the smallest ``b`` wins.
    magnitude : float
        The maximal absolute contrast.
    k : int
        Index of the first interval attaining it.
    """
    starts = np.asarray(starts, dtype=np.int64)
    ends = np.asarray(ends, dtype=np.int64)
    counts = ends - starts
    owner = np.repeat(np.arange(counts.size), counts)
    offset = np.arange(owner.size) - np.repeat(np.cumsum(counts) - counts, counts)
    s = starts[owner]
    e = ends[owner]
    b = s + offset
    mags = np.abs(_contrast(S, s, b, e))
    best = mags.max()
    hits = np.flatnonzero(mags == best)
    pick = hits[np.argmin(b[hits])]
    return int(b[pick]), float(best), int(owner[pick])


def argmax_cusum(x, interval: Interval, S: np.ndarray | None = None) -> Candidate:
    """Split of `interval` with the largest absolute CUSUM, smallest ``b`` on ties."""
    if S is None:
        S = prefix_sums(x)
    n = S.size - 1
    if not 1 <= interval.s < interval.e <= n:
        raise ValueError(f"interval ({interval.s}, {interval.e}) outside [1, {n}]")
    b, mag, _ = scan_intervals(S, np.array([interval.s]), np.array([interval.e]))
    return Candidate(b, mag, interval)


def draw_interval_arrays(s: int, e: int, M: int, gen: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Array form of :func:`draw_intervals`; the full ``[s, e]`` comes last."""
    if not s < e:
        raise ValueError(f"need s < e, got ({s}, {e})")
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    width = e - s + 1
    # Two distinct points of [s, e]: the second draw skips over the first.
    u = gen.integers(0, width, size=M)
    v = gen.integers(0, width - 1, size=M)
    v += v >= u
    starts = np.append(np.minimum(u, v) + s, s)
    ends = np.append(np.maximum(u, v) + s, e)
    return starts, ends


def draw_intervals(s: int, e: int, M: int, rng: np.random.Generator) -> list[Interval]:
    """`M` uniformly random sub-intervals of ``[s, e]`` followed by ``[s, e]`` itself.

    Each interval is a uniformly chosen pair of distinct points of ``[s, e]``,
    put in increasing order.
    """
    starts, ends = draw_interval_arrays(s, e, M, rng)
    return [Interval(int(lo), int(hi)) for lo, hi in zip(starts, ends)]


@lru_cache(maxsize=256)
def _all_pairs(width: int) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = np.triu_indices(width, k=1)
    return lo, hi


def all_interval_arrays(s: int, e: int) -> tuple[np.ndarray, np.ndarray]:
    """Every sub-interval ``[l, r]`` of ``[s, e]`` with ``l < r``."""
    lo, hi = _all_pairs(e - s + 1)
    return lo + s, hi + s
