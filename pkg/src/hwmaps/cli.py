"""Command line entry point: ``hwmaps <subcommand> [options]``.

Exit codes: 0 when every asserted claim passes, 1 when a claim fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import maps, mub, rmatrix
from .config import DEFAULT_CHI, DEFAULT_TOL, TOL_ENV_VAR
from .suites import SuiteConfig, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_DIMS = [2, 3, 4, 5, 7]


class UsageError(Exception):
    pass


def _dims(text: str) -> list[int]:
    try:
        dims = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not dims or any(d < 2 for d in dims):
        raise argparse.ArgumentTypeError("dimensions must be integers >= 2")
    return dims


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError("tolerance must be a positive finite number")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", "--dims", dest="dims", type=_dims, default=None,
                        help="dimension, or comma-separated list for verify (default 2,3,4,5,7)")
    common.add_argument("--weights", help="JSON weight file {\"d\", \"chi\", \"weights\": [[k, l, value], ...]}")
    common.add_argument("--chi", choices=["+", "-"], default=None, help="chi = (1 +/- i)/2 (default +)")
    common.add_argument("--tol", type=_positive_float, default=None,
                        help=f"absolute tolerance (default ${TOL_ENV_VAR} or {DEFAULT_TOL:g})")
    common.add_argument("--seed", type=_u64, default=0, help="seed for sampled checks (default 0)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "table"], default="json")

    parser = argparse.ArgumentParser(prog="hwmaps", description="Heisenberg-Weyl observable maps toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the claim suites over one or more dimensions")
    sub.add_parser("channel", parents=[common], help="unitality, CP and positivity gate of a weighted map")
    sub.add_parser("mub", parents=[common], help="dump the mutually unbiased bases and overlap table")
    sub.add_parser("rmatrix", parents=[common], help="dump the R matrix of a weighted map and its blocks")
    sub.add_parser("case-study-d3", parents=[common], help="d = 3 analysis (defaults to the reduction map)")
    return parser


def resolve_tolerance(flag: float | None) -> float:
    if flag is not None:
        return flag
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        return _positive_float(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{TOL_ENV_VAR}: {exc}") from None


def _single_dim(args, fallback: int | None = None) -> int:
    if args.dims is None:
        if fallback is None:
            raise UsageError("--d is required")
        return fallback
    if len(args.dims) != 1:
        raise UsageError(f"{args.command} takes a single dimension, got {args.dims}")
    return args.dims[0]


def _load_weights(args, required: bool = True):
    """(d, chi, weights) from --weights, with --d and --chi checked against the file."""
    if args.weights is None:
        if required:
            raise UsageError("--weights is required")
        return None
    try:
        d, chi, w = maps.load_weight_file(args.weights)
    except OSError as exc:
        raise UsageError(f"cannot read weight file: {exc}") from None
    except maps.WeightFileError as exc:
        raise UsageError(f"invalid weight file: {exc}") from None
    if args.dims is not None and args.dims != [d]:
        raise UsageError(f"--d {args.dims} disagrees with d = {d} in the weight file")
    if args.chi is not None:
        chi = args.chi
    return d, chi, w


def _floats(a) -> list:
    return [float(x) for x in np.asarray(a).ravel()]


def _matrix(a) -> list:
    return [[float(x) for x in row] for row in np.asarray(a)]


def _complex_matrix(a) -> dict:
    a = np.asarray(a)
    return {"re": _matrix(a.real), "im": _matrix(a.imag)}


def _r_report(m, d, chi, tol):
    r, dec = rmatrix.r_matrix(m, chi)
    verdict = rmatrix.unital_tp_characterize(dec, d, d, tol)
    gate = rmatrix.positivity_sufficient(dec, d, d, tol)
    return r, dec, verdict, gate


def cmd_verify(args, tol: float) -> tuple[dict, int]:
    try:
        cfg = SuiteConfig(args.dims or list(DEFAULT_DIMS), tol, args.chi or DEFAULT_CHI, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_verify(cfg)
    return report, EXIT_FAIL if report["summary"]["failed"] else EXIT_OK


def cmd_channel(args, tol: float) -> tuple[dict, int]:
    d, chi, w = _load_weights(args)
    m = maps.hw_map(w, d, chi)
    cp, lam_min = maps.is_completely_positive(m, tol)
    unital_dev = maps.is_unital(m)
    tp_dev = maps.is_trace_preserving(m)
    _, dec, verdict, gate = _r_report(m, d, chi, tol)
    report = {
        "command": "channel",
        "config": {"d": d, "chi": chi, "tolerance": tol},
        "weights": _matrix(w),
        "unital": bool(unital_dev <= tol),
        "unital_deviation": unital_dev,
        "unitality_sufficient": maps.unitality_sufficient(w, d, tol),
        "trace_preserving": bool(tp_dev <= tol),
        "trace_preserving_deviation": tp_dev,
        "cp": bool(cp),
        "min_choi_eigenvalue": lam_min,
        "r_matrix": {"R00": dec.R00, "t": _floats(dec.t), "s": _floats(dec.s), **verdict},
        "gate": {"lhs": gate.lhs, "rhs": gate.rhs, "holds": gate.holds},
    }
    if d == 3:
        report["case_study_d3"] = rmatrix.d3_case_study(w.ravel(), chi, tol).to_json()
    return report, EXIT_OK


def cmd_mub(args, tol: float) -> tuple[dict, int]:
    d = _single_dim(args)
    chi = args.chi or DEFAULT_CHI
    try:
        bases = mub.mub_bases(d, chi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dev = mub.unbiasedness_deviation(bases)
    report = {
        "command": "mub",
        "config": {"d": d, "chi": chi, "tolerance": tol},
        "bases": [
            {"label": b.label, "generator": list(b.generator), "vectors": _complex_matrix(b.vectors)}
            for b in bases
        ],
        "overlaps": [[_matrix(block) for block in row] for row in mub.overlap_table(bases)],
        "unbiasedness_deviation": dev,
        "unbiased": bool(dev <= tol),
    }
    return report, EXIT_OK if dev <= tol else EXIT_FAIL


def cmd_rmatrix(args, tol: float) -> tuple[dict, int]:
    d, chi, w = _load_weights(args)
    m = maps.hw_map(w, d, chi)
    r, dec, verdict, gate = _r_report(m, d, chi, tol)
    report = {
        "command": "rmatrix",
        "config": {"d": d, "chi": chi, "tolerance": tol},
        "R": _matrix(r),
        "R00": dec.R00,
        "t": _floats(dec.t),
        "s": _floats(dec.s),
        "delta": _matrix(dec.delta),
        "diagonal": bool(np.max(np.abs(r - np.diag(np.diag(r))), initial=0.0) <= tol),
        **verdict,
        "gate": {"lhs": gate.lhs, "rhs": gate.rhs, "holds": gate.holds},
    }
    return report, EXIT_OK


def cmd_case_study(args, tol: float) -> tuple[dict, int]:
    loaded = _load_weights(args, required=False)
    if loaded is None:
        if args.dims not in (None, [3]):
            raise UsageError("case-study-d3 requires d = 3")
        chi, w = args.chi or DEFAULT_CHI, rmatrix.reduction_weights()
    else:
        d, chi, w = loaded
        if d != 3:
            raise UsageError(f"case-study-d3 requires d = 3, weight file has d = {d}")
        w = w.ravel()
    report = {
        "command": "case-study-d3",
        "config": {"d": 3, "chi": chi, "tolerance": tol},
        **rmatrix.d3_case_study(w, chi, tol).to_json(),
    }
    if loaded is None:
        report["reduction_deviation"] = rmatrix.reduction_deviation(chi)
    return report, EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "channel": cmd_channel,
    "mub": cmd_mub,
    "rmatrix": cmd_rmatrix,
    "case-study-d3": cmd_case_study,
}


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


def render_table(report: dict) -> str:
    if "records" in report:
        header = f"{'status':<8} {'suite':<14} {'d':>2}  {'claim':<40} {'deviation':>10}  {'tol':>9}"
        lines = [header, "-" * len(header)]
        for r in report["records"]:
            lines.append(f"{r['status']:<8} {r['suite']:<14} {r['d']:>2}  {r['claim']:<40} "
                         f"{_fmt(r['deviation']):>10}  {_fmt(r['tolerance']):>9}")
        s = report["summary"]
        lines.append(f"total {s['total']}: {s['passed']} passed, {s['failed']} failed, "
                     f"{s['skipped']} skipped, {s['info']} info")
        return "\n".join(lines) + "\n"
    lines = []
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
            if len(value) > 100:
                value = value[:97] + "..."
        lines.append(f"{key:<28} {_fmt(value)}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "table":
        return render_table(report)
    return json.dumps(report, indent=2) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = resolve_tolerance(args.tol)
        report, code = COMMANDS[args.command](args, tol)
    except UsageError as exc:
        print(f"hwmaps {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, args.format)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"hwmaps: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
