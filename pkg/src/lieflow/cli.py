"""Command-line front end.

Subcommands: classify, derivations, catalog (list / export / cross-check /
verdict-table), simulate. Output is JSON by default (override with --format
or the LIEFLOW_FORMAT environment variable). Exit codes: 0 = document
produced (or simulate check passed), 1 = simulate check failed or runtime
guard tripped, 2 = invalid input (bad matrix, failed Jacobi, non-derivation),
3 = ill-conditioned spectrum refusal.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

import numpy as np

from . import catalog as cat
from . import flowsim
from .config import DEFAULT_CONFIG, ToleranceConfig
from .dersolve import derivation_space, inner_derivation
from .liealg import (
    StructureConstants,
    algebra_to_dict,
    format_scalar,
    load_algebra,
    validate_algebra,
)
from .periodicity import (
    NotADerivationError,
    PeriodTooLargeError,
    classify_invariant_flow,
    classify_linear_flow,
    verdict_to_dict,
)
from .spectral import IllConditionedSpectrumError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_ILL_CONDITIONED = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _parse_rational(text: str) -> Fraction:
    """Exact scalar from 'p/q' or integer text; decimals convert with a warning."""
    text = text.strip()
    if re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        return Fraction(text)
    try:
        value = Fraction(text)  # accepts decimal strings exactly
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse scalar {text!r}") from exc
    print(
        f"warning: decimal input {text!r} converted exactly to {value}; "
        "pass p/q to silence this",
        file=sys.stderr,
    )
    return value


def _parse_scalar_list(text: str, expected: int, what: str) -> list[Fraction]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != expected:
        raise CliError(f"{what} needs {expected} entries, got {len(parts)}")
    return [_parse_rational(p) for p in parts]


_PI_FORM = re.compile(
    r"^(?P<num>\d+(?:/\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+))?$", re.IGNORECASE
)


def parse_period(text: str) -> float:
    """Accepts 'pi', '2pi', '3pi/4', 'p/q', or a decimal."""
    text = text.strip()
    m = _PI_FORM.match(text)
    if m:
        num = Fraction(m.group("num")) if m.group("num") else Fraction(1)
        den = int(m.group("den")) if m.group("den") else 1
        return float(num) * math.pi / den
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError as exc:
            raise CliError(f"cannot parse period {text!r}") from exc


def _config_from_args(args) -> ToleranceConfig:
    cfg = DEFAULT_CONFIG
    overrides = {}
    if args.tol_ratio is not None:
        overrides["ratio_tol"] = args.tol_ratio
    if args.tol_rank is not None:
        overrides["rank_tol"] = args.tol_rank
    if args.tol_period is not None:
        overrides["period_tol"] = args.tol_period
    if args.tol_separation is not None:
        overrides["separation"] = args.tol_separation
    if args.max_denominator is not None:
        overrides["max_denominator"] = args.max_denominator
    if args.horizon is not None:
        overrides["horizon"] = args.horizon
    if args.samples is not None:
        overrides["samples"] = args.samples
    if any(v <= 0 for v in overrides.values()):
        raise CliError("tolerances, horizon and samples must be positive")
    return cfg.override(**overrides)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "text"), default=None)
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled checks")
    parser.add_argument("--tol-ratio", type=float, default=None)
    parser.add_argument("--tol-rank", type=float, default=None)
    parser.add_argument("--tol-period", type=float, default=None)
    parser.add_argument("--tol-separation", type=float, default=None)
    parser.add_argument("--max-denominator", type=int, default=None)
    parser.add_argument("--horizon", type=float, default=None)
    parser.add_argument("--samples", type=int, default=None)


def _add_algebra_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--catalog", metavar="NAME")
    group.add_argument("--file", metavar="PATH")
    parser.add_argument("--param", metavar="A", default=None,
                        help="family parameter for parametric catalog entries")


def _add_field_flags(parser: argparse.ArgumentParser, with_flow_kind: bool) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--inner", metavar="COEFFS",
                       help="right-invariant field coefficients c1,c2,...")
    group.add_argument("--matrix", metavar="ENTRIES",
                       help="derivation matrix entries, row-major")
    if with_flow_kind:
        parser.add_argument("--flow", choices=("linear", "invariant"),
                            default=None,
                            help="override the flow kind (default: invariant "
                            "for --inner, linear for --matrix)")


def _resolve_algebra(args) -> tuple[StructureConstants, cat.CatalogEntry | None, str]:
    if args.catalog:
        try:
            entry = cat.get_entry(
                args.catalog,
                _parse_rational(args.param) if args.param is not None else None,
            )
        except cat.UnknownEntryError as exc:
            raise CliError(str(exc))
        except cat.ParamOutOfRangeError as exc:
            raise CliError(str(exc))
        return entry.structure, entry, args.catalog
    try:
        sc = load_algebra(args.file)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot load algebra from {args.file}: {exc}")
    report = validate_algebra(sc)
    if not report.jacobi_ok:
        raise CliError(
            f"algebra in {args.file} fails the Jacobi identity at basis "
            f"triple {report.worst_triple} with residual {report.residual}"
        )
    return sc, None, args.file


def _matrix_to_strings(mat) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in mat]


# --- classify -----------------------------------------------------------------


def _cmd_classify(args) -> tuple[int, dict, str]:
    cfg = _config_from_args(args)
    sc, _entry, source = _resolve_algebra(args)
    if args.inner is not None:
        coeffs = _parse_scalar_list(args.inner, sc.dim, "--inner")
        flow_kind = args.flow or "invariant"
        if flow_kind == "invariant":
            verdict = classify_invariant_flow(sc, coeffs, cfg)
        else:
            verdict = classify_linear_flow(sc, inner_derivation(sc, coeffs), cfg)
    else:
        entries = _parse_scalar_list(args.matrix, sc.dim * sc.dim, "--matrix")
        mat = tuple(
            tuple(entries[r * sc.dim + c] for c in range(sc.dim))
            for r in range(sc.dim)
        )
        flow_kind = args.flow or "linear"
        if flow_kind == "invariant":
            raise CliError("--flow invariant requires --inner coefficients")
        verdict = classify_linear_flow(sc, mat, cfg)
    doc = {
        "algebra": source,
        "flow": flow_kind,
        "verdict": verdict_to_dict(verdict),
    }
    return EXIT_OK, doc, _render_verdict_text(doc)


def _render_verdict_text(doc: dict) -> str:
    v = doc["verdict"]
    lines = [f"algebra: {doc['algebra']}   flow: {doc['flow']}"]
    tag = v["tag"]
    if tag == "PeriodicFlow":
        period = v["period"]
        symbolic = (
            f" (= {v['period_over_pi']} * pi)" if v["period_over_pi"] else ""
        )
        lines.append(f"verdict: PeriodicFlow, minimal period T = {period:.12g}{symbolic}")
        if v["profile"]:
            ratios = ", ".join(f"{p}/{q}" for p, q in v["profile"]["ratios"])
            lines.append(f"frequency ratios vs base: {ratios}")
    elif tag == "NoPeriodicOrbits":
        lines.append(f"verdict: NoPeriodicOrbits ({v['reason']})")
    elif tag == "IdentityFlow":
        lines.append("verdict: IdentityFlow (zero derivation; every point fixed)")
    else:
        lines.append(f"verdict: {tag}")
        if v.get("note"):
            lines.append(f"note: {v['note']}")
    for caveat in v.get("caveats", []):
        lines.append(f"caveat: {caveat}")
    return "\n".join(lines)


# --- derivations ---------------------------------------------------------------


def _cmd_derivations(args) -> tuple[int, dict, str]:
    sc, _entry, source = _resolve_algebra(args)
    space = derivation_space(sc)
    doc = {
        "algebra": source,
        "dim": space.dim,
        "basis": [_matrix_to_strings(b.entries) for b in space.basis],
    }
    lines = [f"algebra: {source}", f"derivation space dimension: {space.dim}"]
    for i, b in enumerate(space.basis):
        lines.append(f"basis[{i}]:")
        for row in b.entries:
            lines.append("  [" + ", ".join(format_scalar(v) for v in row) + "]")
    return EXIT_OK, doc, "\n".join(lines)


# --- catalog -------------------------------------------------------------------


def _cmd_catalog(args) -> tuple[int, object, str]:
    cfg = _config_from_args(args)
    action = args.action
    if action == "list":
        doc = [
            {
                "name": name,
                "display_name": cat.get_entry(
                    name, 2 if name in cat.PARAMETRIC_NAMES else None
                ).display_name,
                "parametric": name in cat.PARAMETRIC_NAMES,
            }
            for name in cat.CATALOG_NAMES
        ]
        text = "\n".join(
            f"{d['name']:16s} {d['display_name']}"
            + ("  [needs --param a]" if d["parametric"] else "")
            for d in doc
        )
        return EXIT_OK, doc, text
    if action == "export":
        if not args.name:
            raise CliError("catalog export needs an entry name")
        entry = _get_entry_cli(args.name, args.param)
        doc = algebra_to_dict(entry.structure)
        return EXIT_OK, doc, json.dumps(doc, indent=2)
    if action == "cross-check":
        names = list(cat.CATALOG_NAMES) if args.name in (None, "all") else [args.name]
        reports = []
        for name in names:
            if name in cat.PARAMETRIC_NAMES:
                a = _parse_rational(args.param) if args.param else Fraction(2)
                reports.append(cat.cross_check(cat.get_entry(name, a), cfg))
            else:
                if name not in cat.CATALOG_NAMES:
                    raise CliError(f"unknown catalog entry {name!r}")
                reports.append(cat.cross_check(cat.get_entry(name), cfg))
        doc = [_report_to_dict(r) for r in reports]
        return EXIT_OK, doc, "\n".join(_render_report_text(r) for r in reports)
    if action == "verdict-table":
        rows = cat.verdict_table(cfg)
        doc = [
            {
                "entry": r.entry,
                "param": str(r.param) if r.param is not None else None,
                "label": r.label,
                "matrix": _matrix_to_strings(r.matrix),
                "verdict": verdict_to_dict(r.verdict),
                "published_claim": r.published_claim,
                "agrees_with_published": r.agrees_with_published,
            }
            for r in rows
        ]
        lines = []
        for r in rows:
            mark = "ok " if r.agrees_with_published else "XX "
            tag = r.verdict.tag
            if r.verdict.reason:
                tag += f"({r.verdict.reason})"
            param = f" a={r.param}" if r.param is not None else ""
            lines.append(f"{mark}{r.entry}{param:8s} {r.label:22s} {tag}")
        return EXIT_OK, doc, "\n".join(lines)
    raise CliError(f"unknown catalog action {action!r}")


def _get_entry_cli(name: str, param: str | None) -> cat.CatalogEntry:
    try:
        a = _parse_rational(param) if param is not None else None
        if a is None and name in cat.PARAMETRIC_NAMES:
            a = Fraction(2)
        return cat.get_entry(name, a)
    except (cat.UnknownEntryError, cat.ParamOutOfRangeError) as exc:
        raise CliError(str(exc))


def _report_to_dict(r: cat.CrossCheckReport) -> dict:
    def disc(d: cat.Discrepancy) -> dict:
        return {
            "location": d.location,
            "published_value": d.published_value,
            "recomputed_value": d.recomputed_value,
        }

    return {
        "name": r.name,
        "derivation_space_match": r.derivation_space_match,
        "eigenvalue_formula_match": r.eigenvalue_formula_match,
        "discrepancies": [disc(d) for d in r.discrepancies],
        "known_print_issues": [disc(d) for d in r.known_print_issues],
        "notes": list(r.notes),
    }


def _render_report_text(r: cat.CrossCheckReport) -> str:
    lines = [
        f"{r.name}: derivation family "
        f"{'matches' if r.derivation_space_match else 'MISMATCH'}, "
        f"eigenvalue formula "
        f"{'matches' if r.eigenvalue_formula_match else 'MISMATCH'}"
    ]
    for d in r.discrepancies + r.known_print_issues:
        lines.append(f"  flag: {d.location}")
        lines.append(f"    published:  {d.published_value}")
        lines.append(f"    recomputed: {d.recomputed_value}")
    for note in r.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


# --- simulate -------------------------------------------------------------------


def _cmd_simulate(args) -> tuple[int, dict, str]:
    cfg = _config_from_args(args)
    sc, entry, source = _resolve_algebra(args)
    if args.inner is not None:
        coeffs = _parse_scalar_list(args.inner, sc.dim, "--inner")
        der = inner_derivation(sc, coeffs)
        mat = der.entries
    else:
        entries = _parse_scalar_list(args.matrix, sc.dim * sc.dim, "--matrix")
        mat = tuple(
            tuple(entries[r * sc.dim + c] for c in range(sc.dim))
            for r in range(sc.dim)
        )
        coeffs = None

    doc: dict = {"algebra": source}
    notes = []
    lines = [f"algebra: {source}"]

    if args.csv:
        horizon = cfg.horizon if args.horizon is None else args.horizon
        ts = np.linspace(0.0, horizon, cfg.samples)
        if entry is not None and entry.representation is not None and coeffs is not None:
            samples = flowsim.invariant_orbit(
                [[[float(v) for v in row] for row in m] for m in entry.representation],
                [float(c) for c in coeffs],
                np.eye(len(entry.representation[0])),
                ts,
                cfg,
            )
            doc["orbit"] = "group-level invariant orbit exp(tX)"
        else:
            arr = np.array([[float(v) for v in row] for row in mat])
            samples = [
                flowsim.FlowSample(t=float(t), matrix=flowsim.expm(arr, float(t), cfg))
                for t in ts
            ]
            doc["orbit"] = "algebra-level flow e^{tD}"
            if coeffs is not None:
                notes.append(
                    "no matrix representation available; simulated at algebra level"
                )
        flowsim.write_orbit_csv(samples, args.csv)
        doc["csv"] = args.csv
        lines.append(f"orbit written to {args.csv} ({doc['orbit']})")

    if args.check_period is not None:
        period = parse_period(args.check_period)
        report = flowsim.flow_period_residual(mat, period, cfg=cfg)
        passed = report.max_residual <= cfg.period_tol
        doc["period_checked"] = period
        doc["max_residual"] = report.max_residual
        doc["passed"] = passed
        lines.append(
            f"period check T = {period:.12g}: max residual "
            f"{report.max_residual:.3e} -> {'pass' if passed else 'fail'}"
        )
        code = EXIT_OK if passed else EXIT_FAIL
    else:
        verdict = classify_linear_flow(sc, mat, cfg)
        evidence = flowsim.verify_verdict(sc, mat, verdict, cfg)
        doc["verdict"] = verdict_to_dict(verdict)
        doc["evidence"] = {
            "passed": evidence.passed,
            "inconclusive": evidence.inconclusive,
            "details": evidence.details,
        }
        lines.append(f"verdict: {verdict.tag}")
        lines.append(
            f"evidence: {'pass' if evidence.passed else 'fail'}"
            + (" (inconclusive grid)" if evidence.inconclusive else "")
        )
        code = EXIT_OK if evidence.passed else EXIT_FAIL
    doc["notes"] = notes
    return code, doc, "\n".join(lines)


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieflow",
        description="Decide periodicity of linear/invariant flows on Lie "
        "groups from derivation spectra, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify a flow")
    _add_algebra_flags(p_classify)
    _add_field_flags(p_classify, with_flow_kind=True)
    _add_common_flags(p_classify)

    p_der = sub.add_parser("derivations", help="print the derivation space")
    _add_algebra_flags(p_der)
    _add_common_flags(p_der)

    p_cat = sub.add_parser("catalog", help="catalog operations")
    p_cat.add_argument("action",
                       choices=("list", "export", "cross-check", "verdict-table"))
    p_cat.add_argument("name", nargs="?", default=None)
    p_cat.add_argument("--param", metavar="A", default=None)
    _add_common_flags(p_cat)

    p_sim = sub.add_parser("simulate", help="numerical flow verification")
    _add_algebra_flags(p_sim)
    _add_field_flags(p_sim, with_flow_kind=False)
    p_sim.add_argument("--check-period", metavar="T", default=None,
                       help="period to verify ('pi', '2pi', '3pi/4', or a number)")
    p_sim.add_argument("--csv", metavar="PATH", default=None,
                       help="write orbit samples as CSV")
    _add_common_flags(p_sim)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or os.environ.get("LIEFLOW_FORMAT", "json")
    if fmt not in ("json", "text"):
        fmt = "json"
    handlers = {
        "classify": _cmd_classify,
        "derivations": _cmd_derivations,
        "catalog": _cmd_catalog,
        "simulate": _cmd_simulate,
    }
    try:
        code, doc, text = handlers[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotADerivationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except IllConditionedSpectrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ILL_CONDITIONED
    except (PeriodTooLargeError, flowsim.ExpmOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
