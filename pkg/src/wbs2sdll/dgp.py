"""Seeded generators: random walk, SETAR(1) and a piecewise-constant control."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import check_changepoints

# Lanes separate the independent uses of one (seed, stream) pair.
DATA_LANE = 0
INTERVAL_LANE = 1


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream identified by ``(seed, stream, lane)``.

    Streams are derived with :class:`numpy.random.SeedSequence` spawn keys, so
    distinct ``stream`` or ``lane`` values give statistically independent
    PCG64 generators while the same triple always replays the same draws.
    """

    seed: int
    stream: int = 0
    lane: int = DATA_LANE

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream), int(self.lane)))
        return np.random.Generator(np.random.PCG64(seq))


def _rng(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return RngStream(0 if rng is None else int(rng)).generator()


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return int(n)


def _noise(gen: np.random.Generator, n: int, sigma: float) -> np.ndarray:
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    return sigma * gen.standard_normal(n)


def simulate_random_walk(n: int, sigma: float = 1.0, y0: float = 0.0, rng=None) -> np.ndarray:
    """``y[t] = y[t-1] + eps[t]`` started from ``y0``; the first observation is ``y0 + eps[1]``."""
    n = _check_n(n)
    eps = _noise(_rng(rng), n, sigma)
    return y0 + np.cumsum(eps)


def simulate_setar1(
    n: int,
    a: float = 0.7,
    b: float = 0.7,
    tau: float = 1.0,
    sigma: float = 1.0,
    y0: float = 0.0,
    rng=None,
    burn_in: int = 0,
) -> np.ndarray:
    """Self-exciting threshold AR(1) with a silent lower regime.

    ``y[t] = (a + b * y[t-1]) * 1(y[t-1] > tau) + eps[t]``. The indicator is
    strict, so a lagged value equal to `tau` switches the regime off. The
    first `burn_in` values are generated and discarded.
    """
    n = _check_n(n)
    if burn_in < 0:
        raise ValueError("burn_in must be non-negative")
    eps = _noise(_rng(rng), n + burn_in, sigma)
    out = np.empty(n + burn_in)
    prev = float(y0)
    for t, e in enumerate(eps):
        prev = ((a + b * prev) if prev > tau else 0.0) + e
        out[t] = prev
    return out[burn_in:]


def simulate_piecewise(breaks, levels, sigma: float, n: int, rng=None) -> np.ndarray:
    """Piecewise-constant mean ``levels[j]`` on segment ``j`` plus Gaussian noise."""
    n = _check_n(n)
    breaks = check_changepoints(breaks, n)
    levels = np.asarray(levels, dtype=float)
    if levels.ndim != 1 or len(levels) != len(breaks) + 1:
        raise ValueError(f"need {len(breaks) + 1} levels for {len(breaks)} breaks, got {levels.size}")
    signal = np.repeat(levels, np.diff([0, *breaks, n]))
    return signal + _noise(_rng(rng), n, sigma)


class DgpKind(str, enum.Enum):
    RANDOM_WALK = "rw"
    SETAR1 = "setar"
    PIECEWISE_CONSTANT = "pc"


@dataclass(frozen=True)
class DgpSpec:
    """Tagged description of one data generating process.

    SETAR fields (`a`, `b`, `tau`, `burn_in`) are used only for
    ``DgpKind.SETAR1``; `breaks` and `levels` only for
    ``DgpKind.PIECEWISE_CONSTANT``.
    """

    kind: DgpKind
    n: int = 500
    sigma: float = 1.0
    y0: float = 0.0
    a: float = 0.7
    b: float = 0.7
    tau: float = 1.0
    burn_in: int = 0
    breaks: tuple[int, ...] = ()
    levels: tuple[float, ...] = field(default=(0.0,))
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", DgpKind(self.kind))
        object.__setattr__(self, "breaks", tuple(int(v) for v in self.breaks))
        object.__setattr__(self, "levels", tuple(float(v) for v in self.levels))
        _check_n(self.n)
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.kind is DgpKind.PIECEWISE_CONSTANT:
            check_changepoints(self.breaks, self.n)
            if len(self.levels) != len(self.breaks) + 1:
                raise ValueError("need exactly one level per segment")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["breaks"] = list(self.breaks)
        d["levels"] = list(self.levels)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DgpSpec":
        return cls(**d)


def simulate(spec: DgpSpec, rng=None) -> np.ndarray:
    """Draw one series from `spec`; `rng` defaults to ``RngStream(spec.seed)``."""
    gen = _rng(RngStream(spec.seed) if rng is None else rng)
    if spec.kind is DgpKind.RANDOM_WALK:
        return simulate_random_walk(spec.n, spec.sigma, spec.y0, gen)
    if spec.kind is DgpKind.SETAR1:
        return simulate_setar1(spec.n, spec.a, spec.b, spec.tau, spec.sigma, spec.y0, gen, spec.burn_in)
    return simulate_piecewise(spec.breaks, spec.levels, spec.sigma, spec.n, gen)
