"""Batch command-line front-end.

Subcommands:
    report  - cavity/output statistics for one configuration, with the
              combined-Hamiltonian counterparts side by side (JSON).
    sweep   - the same quantities along a parameter sweep (CSV).
    qgrid   - a Q function sampled on a grid (CSV or JSON).
    verify  - the oracle-equivalence suite, as a pass/fail table.

All emitted floats carry 9 significant digits, and input rates are snapped to
9 significant digits first, so re-running on the recorded parameters
reproduces every derived column exactly.  Exit codes: 0 success, 2 invalid
input, 3 numerical failure (including any failed verify check).
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .combined import coherent_term, quad_variance_single, steady_moments_combined
from .errors import DomainError, NumericsError, ValidationError
from .params import CavityConfig, Q_KINDS, scale
from .qfunctions import q_grid
from .superposed import output_report
from .verification import run_verification

SWEEP_PARAMS = ("kappa", "eps1", "eps2")


def _round9(x: float) -> float:
    return float(f"{x:.9g}")


def _f9(x) -> str:
    return f"{x:.9g}" if isinstance(x, float) else str(x)


@dataclass(frozen=True)
class RunSpec:
    """One validated CLI invocation."""

    command: str
    config: CavityConfig
    sweep: tuple[str, float, float, int] | None = None
    kind: str = "superposed"
    grid_n: int = 128
    grid_extent: float | None = None
    trunc: int | None = None
    tol: float = 1e-6
    out: Path | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.fmt!r}")
        if self.command == "qgrid" and self.kind not in Q_KINDS:
            raise DomainError(f"kind must be one of {Q_KINDS}, got {self.kind!r}")
        if self.sweep is not None:
            param, start, stop, steps = self.sweep
            if param not in SWEEP_PARAMS:
                raise DomainError(f"sweep parameter must be one of {SWEEP_PARAMS}")
            if steps < 2:
                raise DomainError(f"sweeps need at least 2 steps, got {steps}")
            for v in (start, stop):
                # endpoint configs must be constructible: this also enforces
                # that the whole range stays inside the stability domain
                self._config_with(param, v)

    def _config_with(self, param: str, value: float) -> CavityConfig:
        fields = {
            "kappa": self.config.kappa,
            "eps1": self.config.eps1,
            "eps2": self.config.eps2,
        }
        fields[param] = _round9(value)
        return CavityConfig(**fields)


def report_payload(config: CavityConfig) -> dict:
    """Superposed-light report plus the combined-treatment counterparts,
    so the two procedures can be compared in one document."""
    rep = output_report(config)
    p = scale(config)
    combined = steady_moments_combined(p)
    vp, vm = quad_variance_single(p)
    payload = rep.to_dict()
    payload.update(
        {
            "combined_mean_amp": combined.mean_amp,
            "combined_mean_sq": combined.mean_sq,
            "combined_mean_photon": combined.mean_photon,
            "combined_var_plus": vp,
            "combined_var_minus": vm,
            "combined_coherent_term": coherent_term(p),
            "coherent_mean_photon": p.a**2,
        }
    )
    return {k: _round9(v) for k, v in payload.items()}


def _emit(spec: RunSpec, text: str) -> None:
    if spec.out is not None:
        spec.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(rows[0].keys())
    for row in rows:
        writer.writerow([_f9(v) for v in row.values()])
    return buf.getvalue()


def _run_report(spec: RunSpec) -> int:
    payload = report_payload(spec.config)
    if spec.fmt == "json":
        _emit(spec, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(spec, _rows_to_csv([payload]))
    return 0


def _run_sweep(spec: RunSpec) -> int:
    param, start, stop, steps = spec.sweep
    rows = []
    for value in np.linspace(start, stop, steps):
        config = spec._config_with(param, float(value))
        rows.append(report_payload(config))
    if spec.fmt == "csv":
        _emit(spec, _rows_to_csv(rows))
    else:
        _emit(spec, json.dumps(rows, indent=2) + "\n")
    return 0


def _run_qgrid(spec: RunSpec) -> int:
    grid = q_grid(spec.kind, scale(spec.config), n=spec.grid_n, extent=spec.grid_extent)
    if spec.fmt == "csv":
        buf = io.StringIO()
        grid.write_csv(buf)
        _emit(spec, buf.getvalue())
    else:
        _emit(spec, json.dumps(grid.as_json_dict()) + "\n")
    return 0


def _run_verify(spec: RunSpec) -> int:
    results = run_verification(spec.config, trunc=spec.trunc, tol=spec.tol)
    width = max(len(r.name) for r in results) + 2
    lines = [f"{'check':<{width}}{'max_dev':<15}{'tol':<15}status"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{r.name:<{width}}{r.max_deviation:<15.9g}{r.tolerance:<15.9g}{status}"
        )
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    print("\n".join(lines))
    if spec.out is not None:
        rows = [
            {
                "name": r.name,
                "max_deviation": _round9(r.max_deviation),
                "tolerance": r.tolerance,
                "passed": r.passed,
                "note": r.note,
            }
            for r in results
        ]
        if spec.fmt == "csv":
            spec.out.write_text(_rows_to_csv(rows), encoding="utf-8")
        else:
            spec.out.write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")
    return 0 if n_fail == 0 else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsuperpose",
        description="Statistics and squeezing of superposed coherent and "
        "squeezed cavity light.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, eps1_default=0.0, eps2_default=0.0):
        p.add_argument("--kappa", type=float, default=1.0, help="cavity damping rate")
        p.add_argument(
            "--eps1", type=float, default=eps1_default, help="coherent drive rate"
        )
        p.add_argument(
            "--eps2",
            type=float,
            default=eps2_default,
            help="subharmonic pump rate (< kappa/2)",
        )
        p.add_argument("--out", type=Path, default=None, help="output file")

    rep = sub.add_parser("report", help="single-configuration report")
    add_common(rep)
    rep.add_argument("--format", choices=("json", "csv"), default="json")

    swp = sub.add_parser("sweep", help="parameter sweep")
    add_common(swp)
    swp.add_argument(
        "--sweep",
        required=True,
        metavar="PARAM:START:STOP:STEPS",
        help="e.g. eps2:0:0.49:50",
    )
    swp.add_argument("--format", choices=("csv", "json"), default="csv")

    grd = sub.add_parser("qgrid", help="sample a Q function on a grid")
    add_common(grd)
    grd.add_argument("--kind", choices=Q_KINDS, default="superposed")
    grd.add_argument("--grid-n", type=int, default=128, help="points per axis")
    grd.add_argument(
        "--grid-extent", default="auto", help="half-width per axis, or 'auto'"
    )
    grd.add_argument("--format", choices=("csv", "json"), default="csv")

    ver = sub.add_parser("verify", help="run the oracle-equivalence suite")
    add_common(ver, eps1_default=0.3, eps2_default=0.2)
    ver.add_argument(
        "--trunc", default="auto", help="Fock truncation for the oracle, or 'auto'"
    )
    ver.add_argument(
        "--tol", type=float, default=1e-6, help="tolerance for oracle agreement"
    )
    ver.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _parse_sweep(text: str) -> tuple[str, float, float, int]:
    parts = text.split(":")
    if len(parts) != 4:
        raise DomainError(f"sweep must look like param:start:stop:steps, got {text!r}")
    param, start, stop, steps = parts
    try:
        return param, float(start), float(stop), int(steps)
    except ValueError as exc:
        raise DomainError(f"bad sweep specification {text!r}: {exc}") from None


def runspec_from_args(args: argparse.Namespace) -> RunSpec:
    config = CavityConfig(
        _round9(args.kappa), _round9(args.eps1), _round9(args.eps2)
    )
    kwargs = {
        "command": args.command,
        "config": config,
        "out": args.out,
        "fmt": args.format,
    }
    if args.command == "sweep":
        kwargs["sweep"] = _parse_sweep(args.sweep)
    if args.command == "qgrid":
        kwargs["kind"] = args.kind
        kwargs["grid_n"] = args.grid_n
        if args.grid_extent != "auto":
            try:
                kwargs["grid_extent"] = float(args.grid_extent)
            except ValueError:
                raise DomainError(
                    f"grid extent must be a number or 'auto', got {args.grid_extent!r}"
                ) from None
    if args.command == "verify":
        if args.trunc != "auto":
            try:
                kwargs["trunc"] = int(args.trunc)
            except ValueError:
                raise DomainError(
                    f"truncation must be an integer or 'auto', got {args.trunc!r}"
                ) from None
        kwargs["tol"] = args.tol
    return RunSpec(**kwargs)


_RUNNERS = {
    "report": _run_report,
    "sweep": _run_sweep,
    "qgrid": _run_qgrid,
    "verify": _run_verify,
}


def run(spec: RunSpec) -> int:
    return _RUNNERS[spec.command](spec)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(runspec_from_args(args))
    except ValidationError as exc:
        _print_error(exc)
        return 2
    except NumericsError as exc:
        _print_error(exc)
        return 3


def _print_error(exc: Exception) -> None:
    json.dump(
        {"error": type(exc).__name__, "message": str(exc)},
        sys.stderr,
    )
    sys.stderr.write("\n")


def entry() -> None:  # console-script target
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
