"""CSV ingestion, JSON documents and SVG fit plots."""

from __future__ import annotations

import json
import math
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .core import Segmentation, as_series, fitted_signal
from .diagnostics import Comparison
from .montecarlo import McSummary
from .sdll import DetectResult

MAX_CANDIDATES_JSON = 50


class CsvParseError(ValueError):
    def __init__(self, path, line: int, text: str):
        super().__init__(f"{path}: line {line}: cannot parse {text!r} as a number")
        self.line = line


def _parse_number(text: str) -> float | None:
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def read_csv(path) -> np.ndarray:
    """Read one value per line, or ``t,value`` pairs, with an optional header line.

    Blank lines are ignored. The first non-blank line is treated as a header
    when it does not parse as numbers.
    """
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line:
                rows.append((lineno, line))
    if not rows:
        raise ValueError(f"{path}: no data")

    def payload(line: str) -> str:
        fields = [f.strip() for f in line.split(",")]
        return fields[-1] if len(fields) >= 2 else fields[0]

    _, first = rows[0]
    if _parse_number(payload(first)) is None:
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: header only, no data")
    values = []
    for lineno, line in rows:
        v = _parse_number(payload(line))
        if v is None:
            raise CsvParseError(path, lineno, line)
        values.append(v)
    return as_series(values)


def write_csv(x, fh) -> None:
    for v in np.asarray(x, dtype=float).tolist():
        fh.write(f"{int(v)}\n" if v.is_integer() and abs(v) < 1e15 else f"{v!r}\n")


def detect_document(result: DetectResult) -> dict:
    seg = result.segmentation
    return {
        "n": seg.n,
        "sigma_hat": result.sigma_hat,
        "sigma_degenerate": result.sigma_degenerate,
        "threshold": result.threshold,
        "q_hat": result.q_hat,
        "changepoints": list(seg.changepoints),
        "means": [float(m) for m in seg.means],
        "candidates": [
            {"b": c.b, "magnitude": c.magnitude}
            for c in result.candidates[:MAX_CANDIDATES_JSON]
        ],
    }


def to_document(result) -> dict:
    if isinstance(result, DetectResult):
        return detect_document(result)
    if isinstance(result, (McSummary, Comparison)):
        return result.to_dict()
    if isinstance(result, dict):
        return result
    raise TypeError(f"no JSON document for {type(result).__name__}")


def dumps(result) -> str:
    # repr-based float output keeps 17 significant digits.
    return json.dumps(to_document(result), indent=2) + "\n"


def write_json(result, path) -> None:
    Path(path).write_text(dumps(result), encoding="utf-8")


def render_svg(x, seg: Segmentation, path=None, title: str | None = None,
               width: int = 800, height: int = 400) -> str:
    """Plot the series with the fitted step function on top.

    Writes to `path` when given and always returns the SVG text. The
    document holds exactly two ``<path>`` elements, the series (``id="series"``)
    and the fit (``id="fit"``); the fit uses one ``V`` command per change-point.
    """
    x = as_series(x)
    if seg.n != x.size:
        raise ValueError("segmentation refers to a series of different length")
    fit = fitted_signal(seg)
    margin_l, margin_r, margin_t, margin_b = 60, 20, 40, 40
    lo = float(min(x.min(), fit.min()))
    hi = float(max(x.max(), fit.max()))
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b

    def px(t: float) -> float:
        # t is a 1-based time index
        return margin_l + plot_w * ((t - 1) / max(x.size - 1, 1))

    def py(v: float) -> float:
        return margin_t + plot_h * (hi - v) / (hi - lo)

    series_d = "M " + " L ".join(f"{px(t):.2f},{py(v):.2f}" for t, v in enumerate(x, start=1))

    # Steps change between observations b and b+1, drawn at t = b + 0.5.
    edges = [0, *seg.changepoints, seg.n]
    fit_cmds = [f"M {px(1):.2f},{py(seg.means[0]):.2f}"]
    for j, b in enumerate(seg.changepoints):
        xm = px(min(max(b + 0.5, 1), seg.n))
        fit_cmds.append(f"H {xm:.2f}")
        fit_cmds.append(f"V {py(seg.means[j + 1]):.2f}")
    fit_cmds.append(f"H {px(edges[-1]):.2f}")
    fit_d = " ".join(fit_cmds)

    if title is None:
        title = f"Sample path and WBS2.SDLL fit ({seg.q} change-points)"
    else:
        title = f"{title} ({seg.q} change-points)"
    x0, y0 = margin_l, margin_t + plot_h
    ticks = []
    for v in np.linspace(lo, hi, 5):
        ticks.append(
            f'<line x1="{x0 - 4}" y1="{py(v):.2f}" x2="{x0}" y2="{py(v):.2f}" stroke="black"/>'
            f'<text x="{x0 - 6}" y="{py(v) + 4:.2f}" font-size="10" text-anchor="end">{v:.3g}</text>'
        )
    for t in np.linspace(1, x.size, 6):
        ticks.append(
            f'<line x1="{px(t):.2f}" y1="{y0}" x2="{px(t):.2f}" y2="{y0 + 4}" stroke="black"/>'
            f'<text x="{px(t):.2f}" y="{y0 + 16}" font-size="10" text-anchor="middle">{int(round(t))}</text>'
        )
    svg = "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{escape(title)}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="{margin_t / 2 + 5:.1f}" font-size="14" text-anchor="middle">{escape(title)}</text>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{margin_t}" x2="{x0}" y2="{y0}" stroke="black"/>',
        *ticks,
        f'<path id="series" d="{series_d}" fill="none" stroke="#7f7f7f" stroke-width="1"/>',
        f'<path id="fit" d="{fit_d}" fill="none" stroke="#d62728" stroke-width="2"/>',
        "</svg>",
        "",
    ])
    if path is not None:
        Path(path).write_text(svg, encoding="utf-8")
    return svg
