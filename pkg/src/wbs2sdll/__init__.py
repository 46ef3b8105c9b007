"""WBS2.SDLL change-point detection with misspecification diagnostics."""

from .core import Segmentation, fitted_signal, mad_sigma, segment_means
from .cusum import Candidate, Interval, argmax_cusum, cusum_value, draw_intervals
from .dgp import (
    DgpKind,
    DgpSpec,
    RngStream,
    simulate,
    simulate_piecewise,
    simulate_random_walk,
    simulate_setar1,
)
from .diagnostics import (
    DegenerateFitError,
    ModelFit,
    ModelKind,
    compare_models,
    fit_ar1,
    fit_random_walk,
    fit_setar1,
)
from .montecarlo import McSummary, run_mc, summarize
from .sdll import DetectResult, SdllConfig, detect, sdll_select
from .wbs2 import Wbs2Config, wbs2_candidates

__version__ = "0.1.0"
