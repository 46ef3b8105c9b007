"""Command line entry point: ``simulate``, ``detect``, ``mc`` and ``diagnose``.

Exit codes: 0 success, 1 usage error, 2 data or numerical error.
Options may also come from ``--config FILE``, a flat ``key = value`` file
whose keys are option names (``c_thr`` or ``c-thr``); explicit flags win.
"""

from __future__ import annotations

import argparse
import sys

from .diagnostics import compare_models
from .dgp import DgpSpec, simulate
from .io import dumps, read_csv, render_svg, write_csv
from .montecarlo import run_mc
from .sdll import SdllConfig, detect
from .wbs2 import Wbs2Config

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()] if text.strip() else []


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()] if text.strip() else []


def _add_dgp(p):
    g = p.add_argument_group("data generating process")
    g.add_argument("--kind", choices=["rw", "setar", "pc"], default="rw")
    g.add_argument("--n", type=int, default=500)
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--y0", type=float, default=0.0)
    g.add_argument("--a", type=float, default=0.7, help="SETAR intercept above the threshold")
    g.add_argument("--b", type=float, default=0.7, help="SETAR slope above the threshold")
    g.add_argument("--tau", type=float, default=1.0, help="SETAR threshold")
    g.add_argument("--burn-in", type=int, default=0, help="SETAR values discarded before recording")
    g.add_argument("--breaks", type=_int_list, default=[], help="comma separated change-points (pc)")
    g.add_argument("--levels", type=_float_list, default=[0.0], help="comma separated segment levels (pc)")


def _add_detector(p):
    g = p.add_argument_group("detector")
    g.add_argument("--M", "--m", dest="M", type=int, default=Wbs2Config.M, help="intervals per segment")
    g.add_argument("--min-len", type=int, default=Wbs2Config.min_len)
    g.add_argument("--c-thr", type=float, default=SdllConfig.c_thr)
    g.add_argument("--floor-mult", type=float, default=SdllConfig.floor_mult)
    g.add_argument("--eps-mag", type=float, default=SdllConfig.eps_mag)


def _add_common(p, seed=True):
    p.add_argument("--config", help="flat key=value file with option defaults")
    p.add_argument("--out", "-o", help="output file (default: stdout)")
    if seed:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wbs2sdll", description="Frequent change-point detection with WBS2.SDLL.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="draw a series, write CSV")
    _add_dgp(p)
    _add_common(p)

    p = sub.add_parser("detect", help="detect change-points in a CSV series, write JSON")
    p.add_argument("input")
    p.add_argument("--svg", help="also write the fit plot to this SVG file")
    _add_detector(p)
    _add_common(p)

    p = sub.add_parser("mc", help="Monte Carlo change-point counts, write JSON")
    _add_dgp(p)
    _add_detector(p)
    p.add_argument("--r", "--R", dest="R", type=int, default=200, help="replications")
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("diagnose", help="rank piecewise-constant vs AR/SETAR/random-walk fits, write JSON")
    p.add_argument("input")
    _add_detector(p)
    _add_common(p)
    return parser


def read_config(path) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}: line {lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _apply_config(parser, argv):
    """Re-parse `argv` with config values installed as defaults."""
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    try:
        conf = read_config(args.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    sub = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in conf.items():
        if key not in actions or key in ("help", "config"):
            raise UsageError(f"unknown config key {key!r} for {args.command}")
        conv = actions[key].type or str
        try:
            defaults[key] = conv(value)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {key!r}: {value!r}") from exc
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _spec(args) -> DgpSpec:
    return DgpSpec(
        kind=args.kind, n=args.n, sigma=args.sigma, y0=args.y0, a=args.a, b=args.b,
        tau=args.tau, burn_in=args.burn_in, breaks=tuple(args.breaks),
        levels=tuple(args.levels), seed=args.seed,
    )


def _configs(args) -> tuple[Wbs2Config, SdllConfig]:
    return (
        Wbs2Config(M=args.M, min_len=args.min_len, seed=args.seed),
        SdllConfig(c_thr=args.c_thr, eps_mag=args.eps_mag, floor_mult=args.floor_mult),
    )


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except UsageError as exc:
        print(f"wbs2sdll: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "simulate":
            x = simulate(_spec(args))
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    write_csv(x, fh)
            else:
                write_csv(x, sys.stdout)
        elif args.command == "detect":
            x = read_csv(args.input)
            wcfg, scfg = _configs(args)
            res = detect(x, wcfg, scfg)
            _emit(dumps(res), args.out)
            if args.svg:
                render_svg(x, res.segmentation, args.svg)
        elif args.command == "mc":
            wcfg, scfg = _configs(args)
            summary = run_mc(_spec(args), wcfg, scfg, R=args.R, master_seed=args.seed, workers=args.workers)
            _emit(dumps(summary), args.out)
        elif args.command == "diagnose":
            x = read_csv(args.input)
            wcfg, scfg = _configs(args)
            res = detect(x, wcfg, scfg)
            _emit(dumps(compare_models(x, res)), args.out)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"wbs2sdll {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
