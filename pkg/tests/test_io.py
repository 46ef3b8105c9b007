import json
import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from wbs2sdll.core import segment_means
from wbs2sdll.dgp import DgpSpec
from wbs2sdll.diagnostics import compare_models
from wbs2sdll.io import CsvParseError, dumps, read_csv, render_svg, write_json
from wbs2sdll.montecarlo import run_mc
from wbs2sdll.sdll import detect

SVG = "{http://www.w3.org/2000/svg}"


def _write(tmp_path, text, name="x.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_read_csv_forms(tmp_path):
    assert read_csv(_write(tmp_path, "1\n2\n3\n")).tolist() == [1, 2, 3]
    assert read_csv(_write(tmp_path, "t,value\n1,0.5\n2,0.7\n")).tolist() == [0.5, 0.7]
    assert read_csv(_write(tmp_path, "value\n4\n\n5\n")).tolist() == [4, 5]


def test_read_csv_errors(tmp_path):
    with pytest.raises(CsvParseError) as err:
        read_csv(_write(tmp_path, "1\nabc\n"))
    assert err.value.line == 2 and "line 2" in str(err.value)
    with pytest.raises(ValueError):
        read_csv(_write(tmp_path, ""))
    with pytest.raises(ValueError):
        read_csv(_write(tmp_path, "header\n"))
    with pytest.raises(CsvParseError):
        read_csv(_write(tmp_path, "1\nnan\n"))


def test_detect_json_schema(tmp_path):
    res = detect(np.full(20, 1.0))
    path = tmp_path / "d.json"
    write_json(res, path)
    doc = json.loads(path.read_text())
    assert doc["q_hat"] == 0 and doc["changepoints"] == []
    assert {"n", "sigma_hat", "q_hat", "changepoints", "means", "candidates"} <= set(doc)
    assert doc["candidates"][0].keys() == {"b", "magnitude"}


def test_detect_json_truncates_candidates():
    doc = json.loads(dumps(detect(np.random.default_rng(0).normal(size=200))))
    assert len(doc["candidates"]) == 50


def test_mc_json_round_trip(tmp_path):
    spec = DgpSpec("pc", n=500, sigma=0.0, breaks=(250,), levels=(0.0, 5.0))
    s = run_mc(spec, R=3, master_seed=1)
    path = tmp_path / "mc.json"
    write_json(s, path)
    text = path.read_text()
    assert '"mean": 1.0' in text and '"sd": 0.0' in text
    doc = json.loads(text)
    assert doc["mean"] == s.mean and doc["sd"] == s.sd and doc["counts"] == [1, 1, 1]
    assert doc["spec"]["breaks"] == [250]


def test_float_precision():
    s = run_mc(DgpSpec("rw", n=80), R=3, master_seed=2)
    doc = json.loads(dumps(s))
    assert abs(doc["sd"] - s.sd) <= 1e-12 * max(1.0, s.sd)


def test_diagnose_json_sorted():
    x = np.cumsum(np.random.default_rng(2).normal(size=200))
    doc = json.loads(dumps(compare_models(x, detect(x))))
    bics = [m["bic"] for m in doc["models"]]
    assert bics == sorted(bics)
    assert doc["models"][0].keys() >= {"kind", "params", "ssr", "p", "bic"}


def _paths(svg_text):
    root = ET.fromstring(svg_text)
    return root, root.findall(f".//{SVG}path")


def test_svg_constant_series(tmp_path):
    x = np.full(30, 2.0)
    text = render_svg(x, segment_means(x), tmp_path / "c.svg")
    root, paths = _paths((tmp_path / "c.svg").read_text())
    assert text == (tmp_path / "c.svg").read_text()
    assert len(paths) == 2
    fit = next(p for p in paths if p.get("id") == "fit")
    assert "V" not in fit.get("d")
    assert "0 change-points" in root.find(f"{SVG}title").text


def test_svg_single_riser():
    x = np.r_[np.zeros(50), np.ones(50)]
    res = detect(x)
    root, paths = _paths(render_svg(x, res.segmentation))
    fit = next(p for p in paths if p.get("id") == "fit")
    series = next(p for p in paths if p.get("id") == "series")
    assert len(re.findall(r"\bV\b", fit.get("d"))) == 1
    assert fit.get("stroke") != series.get("stroke")
    assert len(re.findall(r"[ML]", series.get("d"))) == 100
    assert "1 change-points" in root.find(f"{SVG}title").text


def test_svg_rejects_mismatch():
    with pytest.raises(ValueError):
        render_svg(np.zeros(5), segment_means(np.zeros(6)))
