"""Command-line front end.

Subcommands::

    analyze        isoperimetric report for one or more curve specs
    orthogonality  table of basis-product integrals
    parseval       Parseval and Wirtinger reports for a coefficient file
    reparam        sampled (theta, f, g, f', g') data for plotting
    random-suite   seeded property battery across all modules

Exit codes: 0 success, 1 bad input or usage, 2 an identity or inequality
failed its tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .curve import (curve_from_json, curve_to_json, make_reparam, perimeter,
                    reparametrize_unit_speed, reversed_curve, scaled, translated)
from .errors import HurwitzError, InvalidParams, ZeroMeanViolated
from .isoperimetric import CSV_HEADER, area_shoelace, hurwitz_report
from .sampling import random_regular_curve, random_series
from .spectral import (deriv_parseval_check, orthogonality_csv, orthogonality_table,
                       parseval_check, wirtinger_check)
from .trigseries import FourierCoeffs

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    tol: float = 1e-10
    order: int = 32
    grid: int = 1024
    seed: int = 0
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.grid < 64:
            raise UsageError("--grid must be at least 64")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")

    def to_json(self) -> dict:
        return asdict(self)


# -- JSON schema for the analyze output -----------------------------------------

_NUM = {"type": "number"}
REPORT_SCHEMA = {
    "type": "object",
    "required": ["L", "A_shoelace", "A_reparam", "A_simplified", "ibp_residual", "amgm_bound",
                 "wirtinger_bound", "arc_constraint_residual", "ratio", "deficit",
                 "simple_probe", "chain_ok", "config"],
    "properties": {
        **{k: _NUM for k in ("L", "A_shoelace", "A_reparam", "A_simplified", "ibp_residual",
                             "amgm_bound", "wirtinger_bound", "arc_constraint_residual",
                             "ratio", "deficit")},
        "simple_probe": {"type": "boolean"},
        "chain_ok": {"type": "boolean"},
        "orientation": {"enum": ["counterclockwise", "clockwise"]},
        "wirtinger_witness": {"anyOf": [{"type": "null"},
                                        {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}]},
        "config": {"type": "object"},
    },
}
ANALYZE_SCHEMA = {
    "type": "object",
    "required": ["config", "results"],
    "properties": {
        "config": {"type": "object", "required": ["tol", "order", "grid"]},
        "results": {
            "type": "array",
            "items": {"type": "object", "required": ["curve", "report"],
                      "properties": {"curve": {"type": "object"}, "report": REPORT_SCHEMA}},
        },
    },
}


# -- helpers ----------------------------------------------------------------------

def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _load_json(source: str):
    """Parse ``source`` as a path if it names a file, otherwise as inline JSON."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8") if path.is_file() else source
    except OSError as exc:
        raise InvalidParams(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParams(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_curves(sources):
    curves = []
    for src in sources:
        obj = _load_json(src)
        items = obj if isinstance(obj, list) else [obj]
        for k, item in enumerate(items):
            try:
                curves.append(curve_from_json(item))
            except InvalidParams as exc:
                where = f"{src}[{k}]" if isinstance(obj, list) else src
                raise InvalidParams(f"{where}: {exc}") from None
    return curves


# -- commands -------------------------------------------------------------------

def cmd_analyze(cfg: RunConfig, inputs) -> int:
    curves = _load_curves(inputs)
    results = []
    for c in curves:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            rep = hurwitz_report(c, cfg.order, cfg.tol, simple_samples=cfg.grid)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        results.append((c, rep))
    if cfg.format == "csv":
        text = _csv_text(CSV_HEADER, [r.csv_row(i) for i, (_, r) in enumerate(results)])
    else:
        text = _dump_json({"config": cfg.to_json(),
                           "results": [{"curve": curve_to_json(c), "report": r.to_json()}
                                       for c, r in results]})
    _emit(text, cfg)
    return EXIT_OK if all(r.chain_ok for _, r in results) else EXIT_VIOLATION


def cmd_orthogonality(cfg: RunConfig, max_order: int) -> int:
    if max_order < 1:
        raise UsageError("--max-order must be at least 1")
    entries = orthogonality_table(max_order)
    if cfg.format == "csv":
        text = orthogonality_csv(entries)
    else:
        text = _dump_json({"config": {**cfg.to_json(), "max_order": max_order},
                           "entries": [asdict(e) for e in entries]})
    _emit(text, cfg)
    return EXIT_OK if all(e.residual <= cfg.tol for e in entries) else EXIT_VIOLATION


def cmd_parseval(cfg: RunConfig, coeffs_source: str | None) -> int:
    if coeffs_source is None:
        c = random_series(np.random.default_rng(cfg.seed), cfg.order)
    else:
        c = FourierCoeffs.from_json(_load_json(coeffs_source))
    pr = parseval_check(c)
    d_lhs, d_rhs = deriv_parseval_check(c)
    notices = []
    try:
        wr = wirtinger_check(c, tol=cfg.tol).to_json()
    except ZeroMeanViolated as exc:
        wr = None
        notices.append(f"Wirtinger check skipped: {exc}")
    for n in notices:
        print(f"notice: {n}", file=sys.stderr)
    # identities are exact for a finite series; tolerances scale with the energy
    ok = (pr.residual <= cfg.tol * max(1.0, pr.rhs)
          and abs(pr.cross_term) <= cfg.tol * max(1.0, abs(c.a0) * np.sqrt(pr.rhs))
          and abs(d_lhs - d_rhs) <= cfg.tol * max(1.0, d_rhs)
          and (wr is None or wr["slack"] >= -cfg.tol * max(1.0, d_rhs)))
    payload = {"config": cfg.to_json(), "coefficients": c.to_json(), "parseval": pr.to_json(),
               "deriv_parseval": {"lhs": d_lhs, "rhs": d_rhs, "residual": abs(d_lhs - d_rhs)},
               "wirtinger": wr, "notices": notices}
    if cfg.format == "csv":
        rows = [["parseval", pr.lhs, pr.rhs, pr.residual],
                ["deriv_parseval", d_lhs, d_rhs, abs(d_lhs - d_rhs)]]
        if wr is not None:
            rows.append(["wirtinger", wr["int_f_sq"], wr["int_fprime_sq"], wr["slack"]])
        text = _csv_text(["identity", "lhs", "rhs", "residual_or_slack"], rows)
    else:
        text = _dump_json(payload)
    _emit(text, cfg)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_reparam(cfg: RunConfig, source: str) -> int:
    curves = _load_curves([source])
    if len(curves) != 1:
        raise InvalidParams("reparam takes exactly one curve")
    rc = make_reparam(reparametrize_unit_speed(curves[0]))
    th = 2 * np.pi * np.arange(cfg.grid) / cfg.grid
    cols = [th, rc.f(th), rc.g(th), rc.df(th), rc.dg(th)]
    if cfg.format == "json":
        text = _dump_json({"config": cfg.to_json(), "L": rc.L,
                           **{k: v.tolist() for k, v in zip(("theta", "f", "g", "df", "dg"), cols)}})
    else:
        text = _csv_text(["theta", "f", "g", "df", "dg"], zip(*(col.tolist() for col in cols)))
    _emit(text, cfg)
    return EXIT_OK


def run_case(seed: int, index: int) -> dict:
    """One case of the random battery; returns ``{check_name: (value, passed)}``."""
    rng = np.random.default_rng([seed, index])
    out = {}
    c = random_series(rng, int(rng.integers(1, 65)))
    pr = parseval_check(c)
    out["parseval_residual"] = (pr.residual, pr.residual <= 1e-9)
    out["parseval_cross_term"] = (abs(pr.cross_term), abs(pr.cross_term) <= 1e-10)

    z = random_series(rng, int(rng.integers(1, 33)), zero_mean=True)
    wr = wirtinger_check(z)
    out["wirtinger_negative_slack"] = (-wr.slack, wr.slack >= -1e-9)
    lhs, rhs = deriv_parseval_check(z)
    out["deriv_parseval_residual"] = (abs(lhs - rhs), abs(lhs - rhs) <= 1e-9)

    curve = random_regular_curve(rng)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = hurwitz_report(curve)
    A = abs(rep.A_simplified)
    out["ibp_residual"] = (rep.ibp_residual, rep.ibp_residual <= 1e-8 * (1 + A))
    out["chain_ok"] = (float(not rep.chain_ok), rep.chain_ok)
    excess = 4 * np.pi * rep.A - rep.L**2 * (1 + 1e-8)
    out["isoperimetric_excess"] = (excess, excess <= 0)
    out["arc_constraint_residual"] = (rep.arc_constraint_residual, rep.arc_constraint_residual <= 1e-6)

    def ratio(cv):
        return 4 * np.pi * abs(area_shoelace(cv)) / perimeter(cv) ** 2

    base = ratio(curve)
    for name, variant, limit in (("scale_0.5", scaled(curve, 0.5), 1e-8), ("scale_2", scaled(curve, 2.0), 1e-8),
                                 ("translate", translated(curve, 1.5, -0.7), 1e-9),
                                 ("reverse", reversed_curve(curve), 1e-9)):
        gap = abs(ratio(variant) - base)
        out[f"invariance_{name}"] = (gap, gap <= limit)
    return out


def cmd_random_suite(cfg: RunConfig, count: int) -> int:
    if count < 1:
        raise UsageError("--count must be at least 1")
    worst: dict[str, float] = {}
    failures = []
    for i in range(count):
        for name, (value, passed) in run_case(cfg.seed, i).items():
            worst[name] = max(worst.get(name, -np.inf), float(value))
            if not passed:
                failures.append({"seed": cfg.seed, "case": i, "check": name, "value": float(value)})
    summary = {"config": {**cfg.to_json(), "count": count}, "cases": count,
               "failed_checks": len(failures), "passed_cases": count - len({f["case"] for f in failures}),
               "failures": failures, "worst": worst}
    if cfg.format == "csv":
        text = _csv_text(["check", "worst"], sorted(worst.items()))
    else:
        text = _dump_json(summary)
    _emit(text, cfg)
    for f in failures:
        print(f"FAIL seed={f['seed']} case={f['case']} {f['check']}={f['value']!r}", file=sys.stderr)
    return EXIT_VIOLATION if failures else EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--order", type=int, default=32, help="Fourier order / harmonics")
    common.add_argument("--grid", type=int, default=1024)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = _Parser(prog="fourier-isoperimetry", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="isoperimetric report per curve")
    p.add_argument("inputs", nargs="+", help="curve-spec JSON files or inline JSON")
    p = sub.add_parser("orthogonality", parents=[common], help="orthogonality table")
    p.add_argument("--max-order", type=int, default=8)
    p = sub.add_parser("parseval", parents=[common], help="Parseval/Wirtinger for coefficients")
    p.add_argument("coeffs", nargs="?", default=None,
                   help="coefficient JSON file or inline JSON (random series from --seed if omitted)")
    p = sub.add_parser("reparam", parents=[common], help="plot data for the [0, 2pi] pair")
    p.add_argument("input", help="curve-spec JSON file or inline JSON")
    p = sub.add_parser("random-suite", parents=[common], help="seeded property battery")
    p.add_argument("--count", type=int, default=100)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.tol, args.order, args.grid, args.seed, args.format, args.out)
        if args.command == "analyze":
            return cmd_analyze(cfg, args.inputs)
        if args.command == "orthogonality":
            return cmd_orthogonality(cfg, args.max_order)
        if args.command == "parseval":
            return cmd_parseval(cfg, args.coeffs)
        if args.command == "reparam":
            return cmd_reparam(cfg, args.input)
        return cmd_random_suite(cfg, args.count)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HurwitzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
