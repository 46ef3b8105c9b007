"""Replication harness: simulate, detect, count change-points."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dgp import DATA_LANE, INTERVAL_LANE, DgpSpec, RngStream, simulate
from .sdll import SdllConfig, detect
from .wbs2 import Wbs2Config


@dataclass(frozen=True)
class McSummary:
    """Detected change-point counts of `R` replications.

    `sd` is the sample standard deviation of the counts (divisor ``R - 1``),
    i.e. their spread across replications, not the standard error of `mean`.
    """

    counts: tuple[int, ...]
    mean: float
    sd: float
    R: int
    spec: DgpSpec
    wbs2: Wbs2Config
    sdll: SdllConfig
    master_seed: int = 0

    def to_dict(self) -> dict:
        return {
            "R": self.R,
            "mean": self.mean,
            "sd": self.sd,
            "counts": list(self.counts),
            "master_seed": self.master_seed,
            "spec": self.spec.to_dict(),
            "configs": {"wbs2": self.wbs2.to_dict(), "sdll": self.sdll.to_dict()},
        }


def summarize(counts: Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (0 for a single value)."""
    arr = np.asarray(counts, dtype=float)
    if arr.size == 0:
        raise ValueError("cannot summarise an empty set of counts")
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return mean, sd


def replicate(spec: DgpSpec, wcfg: Wbs2Config, scfg: SdllConfig, master_seed: int, r: int) -> int:
    """Detected count of replication `r`.

    The series comes from the data lane and the WBS2 intervals from the
    interval lane of stream `r`, so each replication depends only on
    ``(master_seed, r)`` and never on scheduling.
    """
    x = simulate(spec, RngStream(master_seed, r, DATA_LANE))
    res = detect(x, wcfg, scfg, rng=RngStream(master_seed, r, INTERVAL_LANE))
    return res.q_hat


def _replicate_args(args):
    return replicate(*args)


def run_mc(
    spec: DgpSpec,
    wcfg: Wbs2Config | None = None,
    scfg: SdllConfig | None = None,
    R: int = 200,
    master_seed: int = 0,
    workers: int = 1,
    replications: Iterable[int] | None = None,
) -> McSummary:
    """Repeat simulate-then-detect `R` times with streams ``1..R``.

    Parameters
    ----------
    workers : int
        Processes used for the replications; 1 runs them in-process.
    replications : iterable of int, optional
        Evaluation order of the stream ids ``1..R``. Counts are always
        reported in stream order, whatever the evaluation order.
    """
    wcfg = wcfg or Wbs2Config()
    scfg = scfg or SdllConfig()
    if R < 1:
        raise ValueError("R must be at least 1")
    order = list(range(1, R + 1)) if replications is None else [int(r) for r in replications]
    if sorted(order) != list(range(1, R + 1)):
        raise ValueError("replications must be a permutation of 1..R")
    jobs = [(spec, wcfg, scfg, master_seed, r) for r in order]
    if workers > 1:
        chunk = max(1, math.ceil(len(jobs) / (4 * workers)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_replicate_args, jobs, chunksize=chunk))
    else:
        results = [replicate(*job) for job in jobs]
    counts = [0] * R
    for r, q in zip(order, results):
        counts[r - 1] = int(q)
    mean, sd = summarize(counts)
    return McSummary(tuple(counts), mean, sd, R, spec, wcfg, scfg, master_seed)
