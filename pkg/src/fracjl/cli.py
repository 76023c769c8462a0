"""Command-line front end.

Subcommands: classify, exponents, thresholds, scan, selftest.
Exit codes: 0 success, 1 internal failure, 2 input or domain error.

The parameter flags --s, --l and --p accept either a plain value or a
range ``min:max[:count]``; ranges turn the parameter into a scan axis
(scan subcommand only).  A config file of ``key=value`` lines may
pre-set ``tol``, ``grid`` (default axis count) and ``outdir``;
command-line flags override config values, and environment variables
are never consulted.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .criticality import DEFAULT_TOL, ProblemParams, classify, sobolev_exponent
from .exponents import CriticalSet, critical_set, threshold_report
from .scan import (
    Axis,
    ScanSpec,
    format_float,
    render_csv,
    render_json,
    run_scan,
    write_atomic,
)
from .selftest import run_all
from .singular import build_singular, singular_stability
from .specfun import DomainError

__all__ = ["main"]


@dataclass
class Config:
    tol: Optional[float] = None
    grid: Optional[int] = None
    outdir: Optional[str] = None


def _read_config(path: str) -> Config:
    cfg = Config()
    with open(path, "r") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "tol":
                cfg.tol = float(value)
            elif key == "grid":
                cfg.grid = int(value)
            elif key == "outdir":
                cfg.outdir = value
            else:
                raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
    return cfg


ParamSpec = Union[float, Tuple[float, float, Optional[int]]]


def _parse_param(text: str, flag: str) -> ParamSpec:
    """A plain float, or min:max[:count] for an axis."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return float(parts[0])
        if len(parts) == 2:
            return (float(parts[0]), float(parts[1]), None)
        if len(parts) == 3:
            return (float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise DomainError(f"{flag}: cannot parse {text!r}: {exc}") from None
    raise DomainError(f"{flag}: expected VALUE or MIN:MAX[:COUNT], got {text!r}")


def _fixed_only(value: Optional[ParamSpec], flag: str) -> Optional[float]:
    if value is None:
        return None
    if isinstance(value, tuple):
        raise DomainError(f"{flag}: this subcommand needs a single value, not a range")
    return value


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return "n/a"
    if isinstance(x, float) and math.isinf(x):
        return "infinite"
    if isinstance(x, float):
        return format_float(x)
    return str(x)


def _add_common(parser: argparse.ArgumentParser, need_n: bool = True) -> None:
    parser.add_argument("--N", type=int, required=need_n, help="space dimension")
    parser.add_argument("--s", type=str, help="fractional order, or min:max[:count]")
    parser.add_argument("--l", type=str, help="weight exponent, or min:max[:count]")
    parser.add_argument("--p", type=str, help="nonlinearity exponent, or min:max[:count]")
    parser.add_argument("--tol", type=float, help="classification tolerance")
    parser.add_argument("--grid", type=int, help="default axis sample count")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    parser.add_argument("--out", type=str, help="output file path")
    parser.add_argument("--config", type=str, help="key=value config file")


def _effective(args: argparse.Namespace) -> Tuple[float, int, Optional[str]]:
    cfg = _read_config(args.config) if args.config else Config()
    tol = args.tol if args.tol is not None else (cfg.tol if cfg.tol is not None else DEFAULT_TOL)
    grid = args.grid if args.grid is not None else (cfg.grid if cfg.grid is not None else 64)
    outdir = cfg.outdir
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    if grid < 2:
        raise DomainError(f"grid count must be >= 2, got {grid!r}")
    return tol, grid, outdir


def _resolve_out(out: Optional[str], outdir: Optional[str]) -> Optional[str]:
    if out is None:
        return None
    if outdir and not out.startswith("/"):
        return f"{outdir.rstrip('/')}/{out}"
    return out


def _cmd_classify(args: argparse.Namespace) -> int:
    tol, _, _ = _effective(args)
    s = _fixed_only(_parse_param(args.s, "--s"), "--s") if args.s else None
    ell = _fixed_only(_parse_param(args.l, "--l"), "--l") if args.l else None
    p = _fixed_only(_parse_param(args.p, "--p"), "--p") if args.p else None
    if s is None or ell is None or p is None:
        raise DomainError("classify requires --N, --s, --l and --p")
    params = ProblemParams(args.N, s, ell, p)
    result = classify(params, tol)
    p_s = sobolev_exponent(args.N, s, ell)
    theta = (2.0 * s + ell) / (p - 1.0)
    try:
        amplitude: Optional[float] = build_singular(params).amplitude
    except DomainError:
        amplitude = None
    try:
        stable: Optional[bool] = singular_stability(params, tol).stable
    except DomainError:
        stable = None
    print(
        f"label={result.label.value} margin={_fmt(result.margin)} "
        f"p_sobolev={_fmt(p_s)} decay={_fmt(theta)} amplitude={_fmt(amplitude)} "
        f"stable={'n/a' if stable is None else str(stable).lower()}"
    )
    return 0


def _critical_set_json(cs: CriticalSet) -> str:
    lines = ["{"]
    lines.append(f'  "N": {cs.N},')
    lines.append(f'  "s": {format_float(cs.s)},')
    lines.append(f'  "l": {format_float(cs.ell)},')
    lines.append(f'  "p_sobolev": {format_float(cs.p_sobolev)},')
    cross = []
    for c in cs.crossings:
        cross.append(
            '    {"x": %s, "p": %s, "multiplicity": %d, "tangential": %s}'
            % (format_float(c.x), format_float(c.p), c.multiplicity,
               "true" if c.tangential else "false")
        )
    lines.append('  "crossings": [' + ("\n" + ",\n".join(cross) + "\n  " if cross else "") + "],")
    lines.append('  "intervals": [' + ", ".join(f'"{l.value}"' for l in cs.intervals) + "]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_exponents(args: argparse.Namespace) -> int:
    tol, _, outdir = _effective(args)
    s = _fixed_only(_parse_param(args.s, "--s"), "--s") if args.s else None
    ell = _fixed_only(_parse_param(args.l, "--l"), "--l") if args.l else None
    if s is None or ell is None:
        raise DomainError("exponents requires --N, --s and --l")
    cs = critical_set(args.N, s, ell, tol)
    if args.fmt == "json":
        text = _critical_set_json(cs)
        out = _resolve_out(args.out, outdir)
        if out:
            write_atomic(out, text)
        else:
            sys.stdout.write(text)
        return 0
    print(f"p_sobolev = {_fmt(cs.p_sobolev)}")
    if cs.is_empty:
        print("no critical exponent; every p > 1 is subcritical")
    else:
        for i, c in enumerate(cs.crossings, start=1):
            kind = "tangential" if c.tangential else "transversal"
            print(f"crossing {i}: p = {_fmt(c.p)} (x = {_fmt(c.x)}, {kind})")
        print("intervals: " + " | ".join(l.value for l in cs.intervals))
    return 0


def _cmd_thresholds(args: argparse.Namespace) -> int:
    _effective(args)
    s = _fixed_only(_parse_param(args.s, "--s"), "--s") if args.s else None
    ell = _fixed_only(_parse_param(args.l, "--l"), "--l") if args.l else None
    report = threshold_report(args.N, s, ell)
    rows: List[Tuple[str, str, str]] = []
    if report.order_threshold is not None:
        rows.append(
            (
                "order_threshold",
                _fmt(report.order_threshold),
                "order below which the critical exponent is finite (zero weight)",
            )
        )
    if report.turning_order is not None:
        rows.append(
            (
                "turning_order",
                _fmt(report.turning_order),
                "order where the endpoint margin stops decreasing (zero weight)",
            )
        )
    if report.order_window is not None:
        lo, hi = report.order_window
        rows.append(
            (
                "order_window",
                f"{_fmt(lo)} {_fmt(hi)}",
                "first/last endpoint-margin sign changes in s (negative weight)",
            )
        )
    if report.weight_thresholds is not None:
        wt = report.weight_thresholds
        rows.append(
            (
                "weight_thresholds",
                f"{_fmt(wt.ell1)} {_fmt(wt.ell2)} {_fmt(wt.ell3)}",
                "endpoint / pointwise-max / all-subcritical weight thresholds",
            )
        )
    if report.min_supercritical_dim is not None:
        rows.append(
            (
                "min_supercritical_dimension",
                str(report.min_supercritical_dim),
                "smallest dimension with negative endpoint margin",
            )
        )
    if not rows:
        for note in report.notes:
            print(f"error: {note}", file=sys.stderr)
        if not report.notes:
            print(
                "error: no threshold is defined for this input; supply --N "
                "(with optional --s/--l) or --s with --l",
                file=sys.stderr,
            )
        return 2
    width = max(len(name) for name, _, _ in rows)
    for name, value, description in rows:
        print(f"{name:<{width}} = {value}   ({description})")
    for note in report.notes:
        print(f"note: {note}")
    return 0


def _cmd_scan(args: argparse.Namespace) -> int:
    tol, grid, outdir = _effective(args)
    axes: List[Axis] = []
    fixed: Dict[str, float] = {}
    for flag, name in (("s", "s"), ("l", "l"), ("p", "p")):
        raw = getattr(args, flag)
        if raw is None:
            raise DomainError(f"scan requires --{flag} (value or min:max[:count])")
        spec = _parse_param(raw, f"--{flag}")
        if isinstance(spec, tuple):
            lo, hi, count = spec
            axes.append(Axis(name, lo, hi, count if count is not None else grid))
        else:
            fixed[name] = spec
    if args.N is None:
        raise DomainError("scan requires --N")
    scan_spec = ScanSpec(
        N=args.N,
        axes=tuple(axes),
        fixed=fixed,
        fmt=args.fmt or "csv",
        tol=tol,
    )
    diagram = run_scan(scan_spec)
    text = render_json(diagram) if scan_spec.fmt == "json" else render_csv(diagram)
    out = _resolve_out(args.out, outdir)
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_selftest(args: argparse.Namespace) -> int:
    tol, _, _ = _effective(args)
    results = run_all(tol)
    failed = [r for r in results if not r.passed]
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.name} [{r.elapsed:.2f}s] {r.detail}")
    total = sum(r.elapsed for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {total:.2f} s")
    return 0 if not failed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracjl",
        description=(
            "Joseph-Lundgren criticality for the weighted fractional "
            "Lane-Emden problem: point classification, critical exponents, "
            "threshold curves and phase-diagram scans."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify one parameter point")
    _add_common(p_classify)
    p_classify.set_defaults(func=_cmd_classify)

    p_exp = sub.add_parser("exponents", help="locate every critical exponent")
    _add_common(p_exp)
    p_exp.set_defaults(func=_cmd_exponents)

    p_thr = sub.add_parser("thresholds", help="threshold curves for the inputs")
    _add_common(p_thr, need_n=False)
    p_thr.set_defaults(func=_cmd_thresholds)

    p_scan = sub.add_parser("scan", help="grid scan to CSV or JSON")
    _add_common(p_scan)
    p_scan.set_defaults(func=_cmd_scan)

    p_self = sub.add_parser("selftest", help="run the verification suite")
    _add_common(p_self, need_n=False)
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
