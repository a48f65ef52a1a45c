"""Command-line interface: point evaluation, figure sweeps, optimization, validation.

Exit codes: 0 success, 1 validation failure, 2 usage or precondition error,
3 optimizer non-convergence. All lengths are in units of ``--sigma``
(default 1, the unit the profile is written in); Fisher quantities are in
the inverse square of that unit.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import psf as psf_mod
from .errors import CohFisherError
from .fisher import fisher_norm_channel, qfi_rank2, sorting_centroid, sorting_separation
from .models import MODELS, WeightSpec, build_descriptor
from .optimize import maximize_precision, near_optimal_weights_model_e
from .oracle import GridConfig
from .superposition import EPS_RANK, SuperpositionScalars, build_scalars
from .validation import DEFAULT_SEED, pmap, run_validation

__all__ = ["SweepRow", "main", "build_parser"]

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NOCONVERGE = 0, 1, 2, 3


class UsageError(CohFisherError):
    pass


@dataclass(frozen=True)
class SweepRow:
    s: float
    p: float | None
    gamma: float | None
    model: str
    near_optimal: bool
    rate: float | None
    rate_e: float | None
    qfi: float | None
    f_lambda: float | None
    precision: float | None
    F1: float
    F2: float
    F_C: float | None
    F1_cent: float
    F2_cent: float


COLUMNS = [f.name for f in fields(SweepRow)]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, str):
        return v
    return format(float(v), ".12g")


def _json_value(v):
    if v is None or isinstance(v, (str, bool)):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, np.bool_):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return float(format(float(v), ".12g"))


def write_records(records: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        data = [{k: _json_value(r[k]) for k in columns} for r in records]
        json.dump(data, out, indent=2)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in records:
        w.writerow([_fmt(r[k]) for k in columns])


def _separation_columns(sc: SuperpositionScalars):
    f1, f2 = sorting_separation(sc)
    f1c, f2c = sorting_centroid(sc)
    f_c = fisher_norm_channel(sc, 2) if sc.n2 > EPS_RANK else None
    assert abs(sc.n1 + sc.n2 - 1.0) < 1e-12, "partition of unity violated"
    assert abs(f1 + f2 - sc.dp2) < 1e-10, "separation information not conserved"
    return f1, f2, f_c, f1c, f2c


def evaluate_row(psf, model: str, s: float, w: WeightSpec, near_optimal=False) -> SweepRow:
    sc = build_scalars(psf, s)
    desc = build_descriptor(model, sc, w)
    rep = qfi_rank2(desc)
    f1, f2, f_c, f1c, f2c = _separation_columns(sc)
    return SweepRow(
        s=s,
        p=w.p if model != "TN" else None,
        gamma=w.gamma_abs if model == "TN" else None,
        model=model,
        near_optimal=near_optimal,
        rate=desc.base_rate,
        rate_e=desc.rate if model == "E" else None,
        qfi=rep.qfi,
        f_lambda=rep.f_lambda,
        precision=rep.precision,
        F1=f1,
        F2=f2,
        F_C=f_c,
        F1_cent=f1c,
        F2_cent=f2c,
    )


def separation_row(psf, s: float) -> SweepRow:
    sc = build_scalars(psf, s)
    f1, f2, f_c, f1c, f2c = _separation_columns(sc)
    return SweepRow(
        s=s, p=None, gamma=None, model="", near_optimal=False, rate=None, rate_e=None,
        qfi=None, f_lambda=None, precision=None,
        F1=f1, F2=f2, F_C=f_c,
        F1_cent=f1c, F2_cent=f2c,
    )


def parse_range(text: str) -> np.ndarray:
    """``lo:hi:step`` -> inclusive, ordered grid (endpoint kept within step/1e6)."""
    try:
        lo, hi, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"range must be lo:hi:step, got {text!r}") from None
    if not step > 0 or hi < lo:
        raise UsageError(f"range {text!r} must be ordered with step > 0")
    n = int(np.floor((hi - lo) / step + 1e-6)) + 1
    return np.round(lo + step * np.arange(n), 12)


def parse_psf(text: str, sigma: float | None):
    """Profile for ``gaussian:<w>`` or ``file:<path>``, rescaled to the length unit ``sigma``.

    Widths and file positions are read in physical units; inside the package
    and on the command line every length is then a multiple of ``sigma``.
    """
    kind, _, arg = text.partition(":")
    if sigma is not None and not sigma > 0:
        raise UsageError(f"--sigma must be positive, got {sigma}")
    unit = sigma if sigma is not None else 1.0
    if kind == "gaussian":
        width = float(arg) if arg else 1.0
        return psf_mod.gaussian(width / unit)
    if kind == "file":
        prof = psf_mod.load_profile(arg, normalize=True)
        x = prof.x / unit
        amp = prof.amplitude * np.sqrt(unit)
        return psf_mod.sampled(x, amp, normalize=True)
    raise UsageError(f"--psf must be gaussian:<sigma> or file:<path>, got {text!r}")


def _weights(args, model: str) -> WeightSpec:
    if model == "TN":
        if args.gamma is None:
            raise UsageError("model TN needs --gamma")
        if args.p is not None:
            raise UsageError("model TN takes --gamma, not --p")
        return WeightSpec(gamma_abs=args.gamma)
    if args.p is None:
        raise UsageError(f"model {model} needs --p")
    if args.gamma is not None:
        raise UsageError(f"model {model} takes --p, not --gamma")
    return WeightSpec(p=args.p)


def _s_values(args, default=None) -> list[float]:
    if args.s:
        return list(args.s)
    if args.s_range:
        return [float(v) for v in parse_range(args.s_range)]
    if default is None:
        raise UsageError(f"{args.command} needs --s or --s-range")
    return [float(v) for v in default]


def _single_s(args) -> float:
    if args.s is None or len(args.s) != 1:
        raise UsageError("exactly one --s value is required")
    return args.s[0]


def _emit(records, columns, args):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_records(records, columns, args.format, fh)
    else:
        write_records(records, columns, args.format, sys.stdout)


def cmd_point(args, prof) -> int:
    model = args.model.upper()
    row = evaluate_row(prof, model, _single_s(args), _weights(args, model))
    _emit([asdict(row)], COLUMNS, args)
    return EXIT_OK


def cmd_sweep_weights(args, prof) -> int:
    s_values = _s_values(args, [0.5, 0.7, 1.0])
    p_values = parse_range(args.p_range or "0.005:0.995:0.005")
    if p_values[0] <= 0 or p_values[-1] >= 1:
        raise UsageError("--p-range must lie inside (0, 1)")
    tasks = []
    for s in s_values:
        for model in ("B", "E"):
            tasks += [(model, s, float(p), False) for p in p_values]
        p_near = near_optimal_weights_model_e(build_scalars(prof, s)).p
        tasks.append(("E", s, p_near, True))

    rows = pmap(lambda t: evaluate_row(prof, t[0], t[1], WeightSpec(p=t[2]), t[3]), tasks)
    _emit([asdict(r) for r in rows], COLUMNS, args)
    return EXIT_OK


def cmd_sweep_separation(args, prof) -> int:
    s_values = _s_values(args, parse_range("0.02:4:0.02"))
    if min(s_values) <= 0:
        raise UsageError("sweep-separation needs s > 0")
    rows = pmap(lambda s: separation_row(prof, s), s_values)
    _emit([asdict(r) for r in rows], COLUMNS, args)
    return EXIT_OK


OPT_COLUMNS = [
    "model", "s", "p_star", "value", "rate_at_opt", "qfi_at_opt", "value_lambda",
    "base_rate_at_opt", "iterations", "converged", "fallback",
]


def cmd_optimize(args, prof) -> int:
    model = args.model.upper()
    if model not in ("B", "E"):
        raise UsageError("optimize supports --model B or E")
    bracket = (1e-6, 1 - 1e-6)
    if args.bracket:
        try:
            lo, hi = (float(v) for v in args.bracket.split(":"))
        except ValueError:
            raise UsageError(f"--bracket must be lo:hi, got {args.bracket!r}") from None
        bracket = (lo, hi)
    s_values = _s_values(args)
    records, ok = [], True
    for s in s_values:
        opt = maximize_precision(prof, s, model, bracket=bracket)
        records.append(asdict(opt))
        ok = ok and opt.converged
    _emit(records, OPT_COLUMNS, args)
    return EXIT_OK if ok else EXIT_NOCONVERGE


VALIDATE_COLUMNS = [
    "index", "model", "weight", "s", "phi", "closed", "spectral", "bures",
    "rel_spectral", "rel_bures", "passed",
]


def cmd_validate(args, prof) -> int:
    grid = GridConfig(n=args.grid_n or 2048, extent=args.extent or 12.0)
    report = run_validation(prof, n_cases=args.cases, seed=args.seed, grid=grid, phi=args.phi or 0.0)
    _emit([asdict(c) for c in report.cases], VALIDATE_COLUMNS, args)
    n_ok = sum(c.passed for c in report.cases)
    print(
        f"{n_ok}/{len(report.cases)} cases pass (spectral tol {report.tol_spectral:g}, "
        f"Bures tol {report.tol_bures:g}); incoherent QFI {report.incoherent_qfi:.10f} "
        f"vs {report.incoherent_target:g}: {'ok' if report.incoherent_passed else 'FAIL'}",
        file=sys.stderr,
    )
    for c in report.failures:
        print(f"failed case: model={c.model} weight={c.weight!r} s={c.s!r} phi={c.phi!r}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VALIDATION


COMMANDS = {
    "point": cmd_point,
    "sweep-weights": cmd_sweep_weights,
    "sweep-separation": cmd_sweep_separation,
    "optimize": cmd_optimize,
    "validate": cmd_validate,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--psf", default="gaussian:1", help="gaussian:<sigma> or file:<path>")
    common.add_argument("--sigma", type=float, help="length unit for inputs and outputs")
    common.add_argument("--model", choices=MODELS, type=str.upper, default="B")
    common.add_argument("--s", type=float, action="append", help="separation (repeatable)")
    common.add_argument("--s-range", help="lo:hi:step")
    common.add_argument("--p", type=float)
    common.add_argument("--p-range", help="lo:hi:step")
    common.add_argument("--gamma", type=float, help="|gamma| for model TN")
    common.add_argument("--phi", type=float, help="superposition phase (oracle only)")
    common.add_argument("--grid-n", type=int)
    common.add_argument("--extent", type=float)
    common.add_argument("--bracket", help="lo:hi weight bracket for optimize")
    common.add_argument("--cases", type=int, default=25)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output path (default: stdout)")

    parser = _Parser(prog="cohfisher", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.s and args.s_range:
        return _fail("--s and --s-range are mutually exclusive")
    if args.phi and args.command != "validate":
        return _fail("--phi is only accepted by validate (oracle-only)")
    try:
        prof = parse_psf(args.psf, args.sigma)
        return COMMANDS[args.command](args, prof)
    except (CohFisherError, OSError, ValueError) as exc:
        return _fail(str(exc))


def _fail(message: str) -> int:
    print(f"cohfisher: error: {message}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
