"""Command-line interface.

Subcommands: analyze, sweep-q, sweep-width, galilean-check, kernel.
Exit codes: 0 success, 1 usage error, 2 state-file validation failure,
3 numerical precondition failure.  All output is byte-deterministic for
identical inputs.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .density import kernel_eval
from .errors import CDEntError
from .galilean import PhysicalParams, invariance_report
from .measures import entanglement_report
from .overlaps import overlap_matrix
from .scenarios import SweepRow, sweep_q, sweep_width_ratio
from .stateio import StateFileError, fmt_float, load_state, render_json

USAGE_ERROR = 1
STATE_ERROR = 2
NUMERICAL_ERROR = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems as exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise _UsageError(f"cannot parse complex number {text!r}") from exc


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"grid must be lo:hi:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise _UsageError(f"grid must be lo:hi:steps, got {text!r}") from exc
    if steps < 1:
        raise _UsageError("grid needs at least one step")
    return np.linspace(lo, hi, steps)


def _emit(text: str, out_path: str | None, stdout) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _sweep_csv(rows: list[SweepRow]) -> str:
    lines = [f"{rows[0].parameter},abs_x,lambda_plus,lambda_minus,entropy_bits,purity"]
    for r in rows:
        lines.append(
            ",".join(
                fmt_float(v)
                for v in (r.value, r.abs_x, r.lambda_plus, r.lambda_minus, r.entropy_bits, r.purity)
            )
        )
    return "\n".join(lines) + "\n"


def _cmd_analyze(args, stdout) -> int:
    state = load_state(args.state)
    rho = overlap_matrix(state)
    report = entanglement_report(rho)
    payload = {
        "spectrum": [float(v) for v in report.spectrum.eigenvalues],
        "entropy_bits": report.entropy_bits,
        "purity": report.purity,
        "schmidt_rank": report.schmidt_rank,
        "classification": report.classification,
        "h": [[[z.real, z.imag] for z in row] for row in rho.matrix],
    }
    stdout.write(render_json(payload) + "\n")
    return 0


def _cmd_sweep_q(args, stdout) -> int:
    qs = np.linspace(args.q_start, args.q_stop, args.q_steps)
    rows = sweep_q(_parse_complex(args.c0), _parse_complex(args.c1), args.sigma, qs)
    _emit(_sweep_csv(rows), args.out, stdout)
    return 0


def _cmd_sweep_width(args, stdout) -> int:
    ratios = np.linspace(args.r_start, args.r_stop, args.r_steps)
    rows = sweep_width_ratio(_parse_complex(args.c0), _parse_complex(args.c1), args.sigma0, ratios)
    _emit(_sweep_csv(rows), args.out, stdout)
    return 0


def _cmd_galilean_check(args, stdout) -> int:
    state = load_state(args.state)
    report = invariance_report(state, args.samples, args.seed, PhysicalParams(args.mass))
    payload = {
        "samples": report.samples,
        "seed": report.seed,
        "mass": args.mass,
        "max_spectrum_deviation": report.max_spectrum_deviation,
        "max_conjugation_deviation": report.max_conjugation_deviation,
        "worst_spectrum_element": report.worst_spectrum_element,
        "worst_conjugation_element": report.worst_conjugation_element,
    }
    stdout.write(render_json(payload) + "\n")
    return 0


def _cmd_kernel(args, stdout) -> int:
    grid = _parse_grid(args.grid)
    state = load_state(args.state)
    if not 0 <= args.axis < state.d:
        raise _UsageError(f"axis {args.axis} out of range for d={state.d}")
    lines = ["p,p_prime,re_f,im_f"]
    pa = np.zeros(state.d)
    pb = np.zeros(state.d)
    for u in grid:
        pa[args.axis] = u
        for v in grid:
            pb[args.axis] = v
            f = kernel_eval(state, pa, pb)
            lines.append(",".join(fmt_float(x) for x in (u, v, f.real, f.imag)))
    _emit("\n".join(lines) + "\n", args.out, stdout)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="cdent", description="Discrete-continuous entanglement toolkit")
    parser.add_argument("--version", action="version", version=f"cdent {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("analyze", help="entanglement report for a state file", parents=[])
    p.add_argument("state", help="state JSON file")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sweep-q", help="sweep the center separation of a beam pair")
    p.add_argument("--c0", required=True, help="complex amplitude of level 0")
    p.add_argument("--c1", required=True, help="complex amplitude of level 1")
    p.add_argument("--sigma", required=True, type=float, help="common packet width")
    p.add_argument("--q-start", required=True, type=float)
    p.add_argument("--q-stop", required=True, type=float)
    p.add_argument("--q-steps", required=True, type=int)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_sweep_q)

    p = sub.add_parser("sweep-width", help="sweep the width ratio of a beam pair")
    p.add_argument("--c0", required=True)
    p.add_argument("--c1", required=True)
    p.add_argument("--sigma0", required=True, type=float, help="width of level 0")
    p.add_argument("--r-start", required=True, type=float)
    p.add_argument("--r-stop", required=True, type=float)
    p.add_argument("--r-steps", required=True, type=int)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_sweep_width)

    p = sub.add_parser("galilean-check", help="frame-change invariance report")
    p.add_argument("state", help="state JSON file")
    p.add_argument("--samples", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--mass", type=float, default=1.0)
    p.set_defaults(func=_cmd_galilean_check)

    p = sub.add_parser("kernel", help="sample the reduced continuous kernel on an axis")
    p.add_argument("state", help="state JSON file")
    p.add_argument("--axis", required=True, type=int)
    p.add_argument("--grid", required=True, help="lo:hi:steps")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_kernel)
    return parser


def run(argv, stdout=None, stderr=None) -> int:
    """Dispatch one command line; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            raise _UsageError("a command is required (analyze, sweep-q, sweep-width, galilean-check, kernel)")
        return args.func(args, stdout)
    except _UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return USAGE_ERROR
    except SystemExit as exc:  # argparse --help / --version
        code = exc.code if isinstance(exc.code, int) else 0
        return code
    except FileNotFoundError as exc:
        stderr.write(f"state file error: {exc}\n")
        return STATE_ERROR
    except StateFileError as exc:
        stderr.write(f"state file error: {exc}\n")
        return STATE_ERROR
    except CDEntError as exc:
        stderr.write(f"numerical error: {exc}\n")
        return NUMERICAL_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
