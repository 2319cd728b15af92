"""Command-line front end.

::

    lommel-uniform eval --function S --mu 0.3 --nu 100 --z 200+0i
    lommel-uniform compare --function angerweberA --sign=- --nu 100 --grid=0.2,2,-1,1,15,15
    lommel-uniform regionmap --delta 0.1 --z=-1.05
    lommel-uniform coeffs --family Gminus --s 2

JSON output is ``{"meta": {"version", "command", ...}, "data": [rows]}``.  CSV output starts
with the columns ``re(z), im(z), re(val), im(val), method, terms, err_estimate``; ``compare``
appends ``re(oracle), im(oracle), rel_err``.  Arguments starting with ``-`` are passed as
``--z=-1.05``.

Exit status: 0 on success, 2 on usage errors, 3 on domain or region errors and 4 when
``--strict`` is given and an error estimate exceeds ``--tol``.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from importlib import metadata
from typing import Any, Iterable, TextIO

import sympy
from pydantic import BaseModel, ValidationError

from ._grid import SyncGridIterator, grid_points, parse_grid, random_points
from .evaluator import FUNCTION_IDS, Evaluator
from .exceptions import (
    AccuracyFailure,
    ConfigurationError,
    LommelError,
    RangeError,
    exit_code_for,
)
from .models import (
    SIMPLE_PAIRS,
    CliRequest,
    EvalResult,
    GridSpec,
    LommelSettings,
    RegionLabel,
    pair_key,
)
from .transform import classify

LOGGER = logging.getLogger(__name__)

CSV_COLUMNS = ("re(z)", "im(z)", "re(val)", "im(val)", "method", "terms", "err_estimate")
COMPARE_COLUMNS = (*CSV_COLUMNS, "re(oracle)", "im(oracle)", "rel_err")
REGION_COLUMNS = (
    "re(z)",
    "im(z)",
    "in_S0",
    "in_S_minus1",
    "in_S_plus1",
    "in_S_delta",
    *(f"in_S({pair_key(jk)})_delta" for jk in SIMPLE_PAIRS),
)
COEFF_COLUMNS = ("family", "s", "form")

METHODS = ("auto", "series", "asymptotic", "simple", "scorer", "oracle")
FAMILIES = ("E", "a", "Gmu", "Gminus", "Gplus", "Gtildestar")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class CliReport(BaseModel):
    """Rows of one run plus what the serialisers need around them."""

    columns: tuple[str, ...]
    rows: list[dict[str, Any]]
    meta: dict[str, Any] = {}
    status: int = 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """``a+bi``, ``a-bi``, ``bi`` or ``a``, scientific notation allowed."""
    s = text.strip().replace(" ", "")
    if s[-1:] in ("i", "I", "j", "J"):
        body = s[:-1]
        if body == "" or body[-1] in "+-":
            body += "1"
        s = body + "j"
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_sign(text: str) -> int:
    signs = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in signs:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")
    return signs[text]


def _grid_arg(text: str) -> GridSpec:
    try:
        return parse_grid(text)
    except (ValueError, ValidationError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--z", type=parse_complex, help="single argument, e.g. 200+0i")
    common.add_argument("--grid", type=_grid_arg, help='rectangle "x0,x1,y0,y1,nx,ny"')
    common.add_argument("--samples", type=int, help="random points in the --grid rectangle")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output file (default: stdout)")
    return common


def _function_options() -> argparse.ArgumentParser:
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--function", choices=FUNCTION_IDS, required=True)
    options.add_argument("--mu", type=parse_complex)
    options.add_argument("--nu", type=float)
    options.add_argument("--sign", type=parse_sign, default=1)
    options.add_argument("--n", type=int)
    options.add_argument("--terms", type=int, help="truncation order s_max")
    options.add_argument("--tol", type=float, default=1e-6)
    options.add_argument("--strict", action="store_true")
    return options


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lommel-uniform",
        description="Large-order Lommel, Anger-Weber, Struve and Neumann functions.",
    )
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = _common_options()
    function = _function_options()

    ev = sub.add_parser("eval", parents=[common, function], help="evaluate one function")
    ev.add_argument("--method", choices=METHODS, default="auto")

    cmp = sub.add_parser(
        "compare", parents=[common, function], help="expansion against the oracle"
    )
    cmp.add_argument("--method", choices=METHODS, default="asymptotic")

    region = sub.add_parser("regionmap", parents=[common], help="region membership flags")
    region.add_argument("--delta", type=float, default=0.1)

    coeffs = sub.add_parser("coeffs", help="exact coefficient forms")
    coeffs.add_argument("--family", choices=FAMILIES, required=True)
    coeffs.add_argument("--s", type=int, default=2)
    coeffs.add_argument("--mu", type=parse_complex)
    coeffs.add_argument("--format", choices=("json", "csv"), default="json")
    coeffs.add_argument("--out")
    return parser


def request_from_args(args: argparse.Namespace) -> CliRequest:
    fields = {k: v for k, v in vars(args).items() if k != "log_level" and v is not None}
    return CliRequest(**fields)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _points(request: CliRequest) -> list[complex]:
    if request.grid is None:
        return [complex(request.z)]  # type: ignore[arg-type]
    if request.samples is not None:
        return random_points(request.grid, request.samples, request.seed)
    return grid_points(request.grid)


def _params(request: CliRequest) -> dict[str, Any]:
    return {
        "mu": request.mu if request.mu is not None else 0.0,
        "nu": request.nu,
        "sign": request.sign,
        "n": request.n,
    }


def _error_row(z: complex, exc: LommelError, columns: Iterable[str]) -> dict[str, Any]:
    row: dict[str, Any] = dict.fromkeys(columns)
    row.update({"re(z)": z.real, "im(z)": z.imag, "method": f"error:{type(exc).__name__}"})
    row["error"] = str(exc)
    return row


def _value_row(z: complex, result: EvalResult) -> dict[str, Any]:
    return {
        "re(z)": z.real,
        "im(z)": z.imag,
        "re(val)": result.value.re,
        "im(val)": result.value.im,
        "method": result.method,
        "terms": result.terms,
        "err_estimate": result.err_estimate,
    }


def _rows(request: CliRequest, evaluator: Evaluator) -> SyncGridIterator:
    return evaluator.grid(
        request.function,  # type: ignore[arg-type]
        _points(request),
        method=request.method,
        terms=request.terms,
        **_params(request),
    )


def run_eval(request: CliRequest, evaluator: Evaluator) -> CliReport:
    rows: list[dict[str, Any]] = []
    failures = 0
    for _, z, outcome in _rows(request, evaluator):
        if isinstance(outcome, LommelError):
            if request.grid is None:
                raise outcome
            rows.append(_error_row(z, outcome, CSV_COLUMNS))
            continue
        if outcome.err_estimate > request.tol:
            failures += 1
        rows.append(_value_row(z, outcome))
    return _with_strictness(request, CliReport(columns=CSV_COLUMNS, rows=rows), failures)


def _relative_error(value: complex, reference: complex) -> float:
    scale = abs(reference)
    return abs(value - reference) / scale if scale else abs(value - reference)


def run_compare(request: CliRequest, evaluator: Evaluator) -> CliReport:
    rows: list[dict[str, Any]] = []
    failures = 0
    worst = 0.0
    params = _params(request)
    for _, z, outcome in _rows(request, evaluator):
        if isinstance(outcome, LommelError):
            if request.grid is None:
                raise outcome
            rows.append(_error_row(z, outcome, COMPARE_COLUMNS))
            continue
        try:
            reference = evaluator.oracle(request.function, z, **params)  # type: ignore[arg-type]
        except LommelError as exc:
            LOGGER.warning("oracle failed at z=%s: %s", z, exc)
            rows.append(_error_row(z, exc, COMPARE_COLUMNS))
            continue
        rel_err = _relative_error(outcome.as_complex, reference.as_complex)
        worst = max(worst, rel_err)
        if rel_err > request.tol:
            failures += 1
        row = _value_row(z, outcome)
        row.update(
            {
                "re(oracle)": reference.value.re,
                "im(oracle)": reference.value.im,
                "rel_err": rel_err,
            }
        )
        rows.append(row)
    report = CliReport(columns=COMPARE_COLUMNS, rows=rows, meta={"max_rel_err": worst})
    return _with_strictness(request, report, failures)


def _region_row(z: complex, label: RegionLabel) -> dict[str, Any]:
    row: dict[str, Any] = {
        "re(z)": z.real,
        "im(z)": z.imag,
        "in_S0": label.in_S0,
        "in_S_minus1": label.in_S_minus1,
        "in_S_plus1": label.in_S_plus1,
        "in_S_delta": label.in_S_delta,
    }
    for jk in SIMPLE_PAIRS:
        row[f"in_S({pair_key(jk)})_delta"] = label.simple(jk)
    return row


def run_regionmap(request: CliRequest, evaluator: Evaluator) -> CliReport:
    rows: list[dict[str, Any]] = []
    for z in _points(request):
        try:
            label = classify(z, request.delta, settings=evaluator.settings)
        except LommelError as exc:
            if request.grid is None:
                raise
            rows.append(_error_row(z, exc, REGION_COLUMNS))
            continue
        rows.append(_region_row(z, label))
    return CliReport(columns=REGION_COLUMNS, rows=rows, meta={"delta": request.delta})


def _exact_mu(mu: complex | None) -> Any:
    if mu is None:
        return None
    if mu.imag == 0:
        return sympy.nsimplify(mu.real)
    return sympy.nsimplify(mu.real) + sympy.I * sympy.nsimplify(mu.imag)


def run_coeffs(request: CliRequest, evaluator: Evaluator) -> CliReport:
    table = evaluator.table
    s = request.s
    forms: list[tuple[str, str]]
    if request.family == "E":
        forms = [("E", str(table.e_poly(s).as_expr()))]
    elif request.family == "a":
        if s < 1:
            raise RangeError(f"a_s is defined for s >= 1, got {s}")
        a, a_tilde = table.a_sequences(max(s, 2))
        forms = [("a", str(a[s - 1])), ("a_tilde", str(a_tilde[s - 1]))]
    elif request.family == "Gmu":
        forms = [("Gmu", str(table.g_mu_expr(s, _exact_mu(request.mu))))]
    elif request.family == "Gminus":
        forms = [("Gminus", str(table.g_minus_expr(s)))]
    elif request.family == "Gplus":
        forms = [("Gplus", str(table.g_plus_expr(s)))]
    else:
        mu_tilde = sympy.Symbol("mu_tilde")
        forms = [
            (
                "Gtildestar",
                f"({sympy.Poly(list(term.coeff), mu_tilde).as_expr()})"
                f"*q[k_nu+1-{term.shift},{term.m}]",
            )
            for term in table.q_terms(s)
        ]
    rows = [{"family": family, "s": s, "form": form} for family, form in forms]
    return CliReport(columns=COEFF_COLUMNS, rows=rows, meta={"depth": table.depth})


def _with_strictness(request: CliRequest, report: CliReport, failures: int) -> CliReport:
    if request.strict and failures:
        exc = AccuracyFailure(f"{failures} point(s) above tol={request.tol:g}")
        LOGGER.error("%s", exc)
        report.status = exit_code_for(exc)
    return report


_RUNNERS = {
    "eval": run_eval,
    "compare": run_compare,
    "regionmap": run_regionmap,
    "coeffs": run_coeffs,
}


def run(request: CliRequest, evaluator: Evaluator | None = None) -> CliReport:
    """Execute ``request``; domain and region errors at a single point propagate."""
    if evaluator is not None:
        return _RUNNERS[request.subcommand](request, evaluator)
    with Evaluator() as owned:
        return _RUNNERS[request.subcommand](request, owned)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _version() -> str:
    try:
        return metadata.version("lommel-uniform")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def write_report(
    report: CliReport, fmt: str, stream: TextIO, command: list[str] | None = None
) -> None:
    if fmt == "csv":
        writer = csv.DictWriter(
            stream, fieldnames=list(report.columns), extrasaction="ignore", lineterminator="\n"
        )
        writer.writeheader()
        writer.writerows(report.rows)
        return
    meta = {"version": _version(), "command": command or [], **report.meta}
    json.dump({"meta": meta, "data": report.rows}, stream, indent=2)
    stream.write("\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )
    logging.captureWarnings(True)
    try:
        request = request_from_args(args)
    except ValidationError as exc:
        parser.error(str(exc))

    try:
        settings = LommelSettings()
    except ValidationError as exc:
        LOGGER.error("invalid LOMMEL_* settings: %s", exc)
        return exit_code_for(ConfigurationError(str(exc)))
    except LommelError as exc:
        LOGGER.error("%s", exc)
        return exit_code_for(exc)

    try:
        with Evaluator(settings) as evaluator:
            report = run(request, evaluator)
    except LommelError as exc:
        LOGGER.error("%s: %s", type(exc).__name__, exc)
        return exit_code_for(exc)

    command = list(sys.argv[1:] if argv is None else argv)
    if request.out:
        with open(request.out, "w", newline="", encoding="utf-8") as fh:
            write_report(report, request.format, fh, command)
    else:
        write_report(report, request.format, sys.stdout, command)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
