"""Wild Binary Segmentation 2: a complete, magnitude-ranked solution path."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .core import as_series
from .cusum import (
    Candidate,
    Interval,
    all_interval_arrays,
    draw_interval_arrays,
    prefix_sums,
    scan_intervals,
)
from .dgp import INTERVAL_LANE, RngStream


@dataclass(frozen=True)
class Wbs2Config:
    """Tuning constants of the WBS2 recursion.

    Attributes
    ----------
    M : int
        Random intervals drawn afresh inside every segment visited.
    min_len : int
        Segments shorter than this are not split further.
    seed : int
        Seed of the interval stream used when no generator is passed.
    """

    M: int = 100
    min_len: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be at least 1")
        if self.min_len < 2:
            raise ValueError("min_len must be at least 2")

    def to_dict(self) -> dict:
        return asdict(self)


def wbs2_candidates(x, cfg: Wbs2Config | None = None, rng=None) -> list[Candidate]:
    """Run the WBS2 recursion to exhaustion.

    Starting from ``[1, n]``, every segment ``[s, e]`` of length at least
    ``cfg.min_len`` is scanned over ``cfg.M`` freshly drawn random
    sub-intervals plus the segment itself (all sub-intervals when there are no
    more than ``cfg.M`` of them). The best split ``b`` is emitted and the
    recursion continues on ``[s, b]`` and ``[b + 1, e]``.

    Parameters
    ----------
    x : array_like
        Series of length at least 2.
    cfg : Wbs2Config, optional
    rng : numpy.random.Generator or RngStream, optional
        Source of the interval draws. Defaults to the interval lane of
        ``RngStream(cfg.seed)``.

    Returns
    -------
    list of Candidate
        Sorted by decreasing magnitude, ties by increasing ``b``. With
        ``min_len = 2`` the ``b`` values are a permutation of ``1..n-1``.
    """
    cfg = cfg or Wbs2Config()
    x = as_series(x, min_length=2)
    if rng is None:
        gen = RngStream(cfg.seed, 0, INTERVAL_LANE).generator()
    elif isinstance(rng, RngStream):
        gen = rng.generator()
    else:
        gen = rng
    S = prefix_sums(x)
    out: list[Candidate] = []
    stack = [(1, x.size)]
    while stack:
        s, e = stack.pop()
        width = e - s + 1
        if width < cfg.min_len:
            continue
        if width * (width - 1) // 2 <= cfg.M:
            starts, ends = all_interval_arrays(s, e)
        else:
            starts, ends = draw_interval_arrays(s, e, cfg.M, gen)
        b, mag, k = scan_intervals(S, starts, ends)
        out.append(Candidate(b, mag, Interval(int(starts[k]), int(ends[k]))))
        # Left child on top of the stack: depth-first, left to right.
        stack.append((b + 1, e))
        stack.append((s, b))
    out.sort(key=lambda c: (-c.magnitude, c.b))
    return out


def candidate_arrays(cands: list[Candidate]) -> tuple[np.ndarray, np.ndarray]:
    """``(b, magnitude)`` columns of a candidate list."""
    return (
        np.array([c.b for c in cands], dtype=np.int64),
        np.array([c.magnitude for c in cands], dtype=float),
    )
