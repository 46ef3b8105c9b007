import math

import pytest

from wbs2sdll.dgp import DgpSpec
from wbs2sdll.montecarlo import McSummary, run_mc, summarize


def test_summarize_examples():
    assert summarize([1, 1, 1]) == (1.0, 0.0)
    mean, sd = summarize([0, 2])
    assert mean == 1.0 and sd == pytest.approx(math.sqrt(2))
    assert summarize([5]) == (5.0, 0.0)
    with pytest.raises(ValueError):
        summarize([])


def test_noiseless_single_jump():
    spec = DgpSpec("pc", n=500, sigma=0.0, breaks=(250,), levels=(0.0, 5.0))
    s = run_mc(spec, R=3, master_seed=1)
    assert s.counts == (1, 1, 1) and s.mean == 1.0 and s.sd == 0.0 and s.R == 3


def test_deterministic_and_order_free():
    spec = DgpSpec("setar", n=200)
    a = run_mc(spec, R=6, master_seed=42)
    b = run_mc(spec, R=6, master_seed=42)
    c = run_mc(spec, R=6, master_seed=42, replications=[4, 2, 6, 1, 5, 3])
    assert a == b
    assert a.counts == c.counts and a.mean == c.mean and a.sd == c.sd
    assert run_mc(spec, R=6, master_seed=43).counts != a.counts


def test_worker_pool_matches_serial():
    spec = DgpSpec("rw", n=150)
    assert run_mc(spec, R=4, master_seed=3, workers=2).counts == run_mc(spec, R=4, master_seed=3).counts


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_mc(DgpSpec("rw", n=50), R=0)
    with pytest.raises(ValueError):
        run_mc(DgpSpec("rw", n=50), R=3, replications=[1, 2, 2])


def test_to_dict_fields():
    s = run_mc(DgpSpec("rw", n=60), R=2, master_seed=0)
    d = s.to_dict()
    assert set(d) >= {"R", "mean", "sd", "counts", "spec", "configs"}
    assert d["spec"]["kind"] == "rw"
    assert set(d["configs"]) == {"wbs2", "sdll"}
    assert isinstance(s, McSummary)
