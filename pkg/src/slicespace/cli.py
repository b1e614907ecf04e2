"""Command line front end: ``slicespace norm | check | profile``.

Exit codes: 0 ok, 1 check failure, 2 input error, 3 parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .quadrature import QuadratureConfig, circle_mean
from .series import SlicePowerSeries

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_PARAM = 0, 1, 2, 3
SPACES = ("bloch", "hinf", "bergman", "besov", "dirichlet")
SUITE_NAMES = ("bloch", "bergman", "besov", "dirichlet", "kernels", "all")


class InputError(Exception):
    pass


class ParameterError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


@dataclass
class RunConfig:
    command: str
    input: Optional[str]
    space: Optional[str]
    suite: Optional[str]
    p: Optional[float]
    alpha: float
    n: Optional[int]
    t: Optional[float]
    quadrature: QuadratureConfig
    seed: int
    tol: Optional[float]
    out: Optional[str]


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="slicespace", description="Norms and invariant checks for slice regular functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help='series JSON file ({"coeffs": [[w,x,y,z], ...]}), "-" for stdin')
        p.add_argument("--p", type=float)
        p.add_argument("--alpha", type=float, default=0.0)
        p.add_argument("--n", type=int)
        p.add_argument("--t", type=float)
        p.add_argument("--radial", type=int)
        p.add_argument("--angular", type=int)
        p.add_argument("--clip", type=float)
        p.add_argument("--sphere-samples", type=int, dest="sphere_samples")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, help="tolerance override for sup-based checks")
        p.add_argument("--out", help="write the report here instead of stdout")

    pn = sub.add_parser("norm", help="compute a norm and print a JSON report")
    common(pn)
    pn.add_argument("--space", choices=SPACES, required=True)
    pc = sub.add_parser("check", help="run a seeded invariant suite")
    common(pc, with_input=False)
    pc.add_argument("--suite", choices=SUITE_NAMES, default="all")
    pp = sub.add_parser("profile", help="radial profiles as CSV")
    common(pp)
    return ap


def _read_series(path: str) -> tuple:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if isinstance(data, list):
        data = {"coeffs": data}
    if not isinstance(data, dict):
        raise InputError("series JSON must be an object or a coefficient list")
    cfg = data.pop("config", None)
    try:
        f = SlicePowerSeries.from_json(data)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    if cfg is not None and not isinstance(cfg, dict):
        raise InputError('"config" must be an object')
    return f, cfg or {}


def _quadrature(args, file_cfg: dict, base: QuadratureConfig) -> QuadratureConfig:
    kw = dict(file_cfg)
    for key in ("radial", "angular", "clip", "sphere_samples"):
        v = getattr(args, key, None)
        if v is not None:
            kw[key] = v
    try:
        QuadratureConfig.from_json(kw)
        return base.with_(**kw)
    except (ValueError, TypeError) as exc:
        raise ParameterError(str(exc)) from exc


def validate(cfg: RunConfig) -> None:
    """Parameter domains, checked before any computation."""
    if cfg.p is not None and not (math.isfinite(cfg.p) and cfg.p > 0):
        raise ParameterError("p must be positive")
    if not (math.isfinite(cfg.alpha) and cfg.alpha > -1):
        raise ParameterError("alpha must exceed -1")
    if cfg.t is not None and not (math.isfinite(cfg.t) and cfg.t > 0):
        raise ParameterError("t must be positive")
    if cfg.n is not None and cfg.n < 1:
        raise ParameterError("n must be at least 1")
    if cfg.tol is not None and not (math.isfinite(cfg.tol) and cfg.tol >= 0):
        raise ParameterError("tol must be non-negative")
    if cfg.command == "norm" and cfg.space in ("bergman", "besov") and cfg.p is None:
        raise ParameterError(f"--p is required for the {cfg.space} norm")
    if cfg.command == "norm" and cfg.space == "besov":
        n = cfg.n if cfg.n is not None else (1 if cfg.p > 1 else math.floor(1.0 / cfg.p) + 1)
        if not n * cfg.p > 1:
            raise ParameterError("Besov parameters need n*p > 1")
        cfg.n = n


def _config_from_args(args) -> tuple:
    f, file_cfg = (None, {})
    if getattr(args, "input", None) is not None:
        f, file_cfg = _read_series(args.input)
    from .suites import DESK

    base = DESK if args.command == "check" else QuadratureConfig()
    cfg = RunConfig(args.command, getattr(args, "input", None), getattr(args, "space", None),
                    getattr(args, "suite", None), args.p, args.alpha, args.n, args.t,
                    _quadrature(args, file_cfg, base), args.seed, args.tol, args.out)
    validate(cfg)
    return f, cfg


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def cmd_norm(f: SlicePowerSeries, cfg: RunConfig) -> int:
    from .spaces._common import axis_entry
    from .spaces import (
        BergmanParams, BesovParams, NormReport, bergman_norm_sup, besov_norm,
        besov_seminorm_small_p, bloch_norm, dirichlet_norm, hinf_norm,
    )

    q = cfg.quadrature
    if cfg.space == "bloch":
        rep = bloch_norm(f, q)
    elif cfg.space == "hinf":
        rep = hinf_norm(f, q)
    elif cfg.space == "bergman":
        rep = bergman_norm_sup(f, BergmanParams(cfg.p, cfg.alpha), q)
    elif cfg.space == "dirichlet":
        rep = dirichlet_norm(f, q)
    elif cfg.p > 1:
        rep = besov_norm(f, cfg.p, q)
    else:
        # rho_{p,n,i} already carries sup |f|, so it is a norm on its own
        axis = f.native_axis()
        v = besov_seminorm_small_p(f, BesovParams(cfg.p, cfg.n), axis, q)
        c = q.to_json()
        c.update({"p": cfg.p, "n": cfg.n})
        rep = NormReport("besov", v, [axis_entry(axis, v)], c)
    _emit(dumps(rep.to_json()), cfg.out)
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    from .suites import run_suite

    report = run_suite(cfg.suite, cfg.seed, cfg.quadrature, cfg.tol)
    _emit(dumps(report), cfg.out)
    return EXIT_OK if report["passed"] else EXIT_CHECK


def profile_radii(clip: float) -> np.ndarray:
    inner = np.linspace(0.0, 0.9, 10)
    outer = [1.0 - 10.0 ** (-k) for k in range(2, 7)]
    return np.array(sorted({*inner.tolist(), *[min(r, clip) for r in outer], clip}))


def profile_rows(f: SlicePowerSeries, p: float, config: QuadratureConfig) -> list:
    from .spaces import radial_profile

    radii = profile_radii(config.clip)
    bloch = radial_profile(f, radii, angular=config.angular)
    axis = f.native_axis()
    rows = []
    for r, b in zip(radii, bloch):
        m = circle_mean(lambda z: f.slice_abs(axis, z) ** p, r, config.angular) if r > 0 else abs(f.at_zero()) ** p
        rows.append((float(r), float(b), float(m)))
    return rows


def cmd_profile(f: SlicePowerSeries, cfg: RunConfig) -> int:
    p = 2.0 if cfg.p is None else cfg.p
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "bloch_profile", f"circle_mean_abs_p{p!r}"])
    for row in profile_rows(f, p, cfg.quadrature):
        w.writerow([repr(v) for v in row])
    _emit(buf.getvalue(), cfg.out)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        f, cfg = _config_from_args(args)
    except InputError as exc:
        print(f"slicespace: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterError as exc:
        print(f"slicespace: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    try:
        if cfg.command == "norm":
            return cmd_norm(f, cfg)
        if cfg.command == "check":
            return cmd_check(cfg)
        return cmd_profile(f, cfg)
    except ValueError as exc:
        print(f"slicespace: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"slicespace: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
