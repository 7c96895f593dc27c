"""Command-line driver.

    pgverify catalog
    pgverify table --group heisenberg:3
    pgverify check-chi --group extraspecial5:3 --jobs 4
    pgverify check-rank1 --group cyclic:9
    pgverify check-biset --group heisenberg:3 [--triple H K L]
    pgverify check-all --group elemab:3,2 --output report.json

Exit status: 0 when every applicable check passes, 1 when one fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

from .biset import SWEEP_CAP, check_mu_bijection, parse_triple, sweep_mu
from .characters.table import character_table
from .constructions.jackson import SECTION_ORDER, hypotheses, run_jackson
from .constructions.rank_one import build_rank_one_diagram, verify_rank_one
from .constructions.reduction import noncyclic_center_reduction
from .errors import PGVerifyError
from .groups.catalog import CATALOG, build_catalog_group
from .groups.core import Group
from .groups.subgroups import rank
from .report import VerificationReport, group_descriptor
from .verdict import Verdict

COMMANDS = ("catalog", "table", "check-chi", "check-rank1", "check-biset", "check-all")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgverify", description="Exact verification of finite p-group constructions.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--group", help="group descriptor, e.g. heisenberg:3 or file:path")
    ap.add_argument("--output", help="also write the JSON report to this path")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for per-subgroup loops")
    ap.add_argument("--max-order", type=int, default=None,
                    help="skip (report as inapplicable) every check on groups larger than this")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--triple", nargs=3, metavar=("H", "K", "L"), help="single biset triple, subgroup bitsets in hex")
    ap.add_argument("--n", type=int, default=None, help="common degree for the rank-one diagram")
    ap.add_argument("--timings", action="store_true", help="record wall time per section (not reproducible)")
    return ap


def _timed(report: VerificationReport, timings: bool, fn: Callable[[], Verdict | list[Verdict]]) -> None:
    t0 = time.perf_counter()
    out = fn()
    dt = time.perf_counter() - t0
    verdicts = out if isinstance(out, list) else [out]
    for v in verdicts:
        report.add(v, dt / len(verdicts) if timings else None)


def _chi_sections(G: Group, args, report: VerificationReport) -> None:
    report.hypotheses = {k: "pass" if v else "fail" for k, v in hypotheses(G).items()}
    _timed(report, args.timings, lambda: run_jackson(G, args.jobs)[1])
    _timed(report, args.timings, lambda: noncyclic_center_reduction(G))


def _rank1_section(G: Group, args, report: VerificationReport) -> None:
    def run():
        try:
            data = build_rank_one_diagram(G, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return verify_rank_one(data)

    _timed(report, args.timings, run)


def _biset_section(G: Group, args, report: VerificationReport) -> None:
    if args.triple:
        try:
            H, K, L = parse_triple(G, args.triple)
            _timed(report, args.timings, lambda: check_mu_bijection(G, H, K, L))
        except (PGVerifyError, ValueError) as exc:
            raise UsageError(f"bad triple: {exc}") from exc
        return
    _timed(report, args.timings, lambda: sweep_mu(G, args.jobs, SWEEP_CAP))


def _skipped(command: str, G: Group, limit: int) -> list[Verdict]:
    reason = f"group order {G.order} exceeds --max-order {limit}"
    names = {
        "check-chi": [*SECTION_ORDER, "noncyclic_center_reduction"],
        "check-rank1": ["rank_one_star_diagram"],
        "check-biset": ["biset_bijection_sweep"],
        "table": ["character_table_exact"],
    }
    names["check-all"] = names["check-chi"] + names["check-rank1"] + names["check-biset"]
    return [Verdict.inapplicable(n, reason) for n in names[command]]


def _table_section(G: Group, report: VerificationReport) -> str:
    T = character_table(G)
    checks = T.check()
    report.add(Verdict.of("character_table_exact", all(checks.values()),
                          "row and column orthogonality, class count and sum of squared degrees, exactly",
                          {k: v for k, v in checks.items() if not v}, **checks))
    report.extra = {"degrees": T.degrees, "prime": T.prime}
    return T.serialize()


def _catalog_output(fmt: str) -> str:
    rows = [{"spec": spec, "order": build_catalog_group(spec).order, "description": desc} for spec, desc in CATALOG]
    if fmt == "json":
        return json.dumps({"schema": 1, "catalog": rows}, indent=2, ensure_ascii=False) + "\n"
    width = max(len(r["spec"]) for r in rows)
    return "".join(f"{r['spec']:<{width}}  {r['order']:>4}  {r['description']}\n" for r in rows)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Returns (exit code, stdout text). Raises UsageError on bad input."""
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.command == "catalog":
        return 0, _catalog_output(args.format)
    if not args.group:
        raise UsageError(f"{args.command} requires --group")
    try:
        G = build_catalog_group(args.group)
    except (PGVerifyError, OSError) as exc:
        raise UsageError(str(exc)) from exc
    if args.triple and args.command not in ("check-biset", "check-all"):
        raise UsageError("--triple only applies to check-biset and check-all")

    desc = group_descriptor(G, args.group)
    desc["rank"] = rank(G.whole)
    report = VerificationReport(args.command, desc)
    table_text = ""
    if args.max_order is not None and G.order > args.max_order:
        for v in _skipped(args.command, G, args.max_order):
            report.add(v)
    elif args.command == "table":
        table_text = _table_section(G, report)
    else:
        if args.command in ("check-chi", "check-all"):
            _chi_sections(G, args, report)
        if args.command in ("check-rank1", "check-all"):
            _rank1_section(G, args, report)
        if args.command in ("check-biset", "check-all"):
            _biset_section(G, args, report)

    text = report.to_text() + (f"\n{table_text}\n" if table_text else "")
    if table_text:
        report.extra["table"] = table_text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if args.format == "json":
        text = "" if args.output else report.to_json()
    return report.exit_code, text


def main(argv: list[str] | None = None) -> int:
    try:
        code, text = run(argv)
    except UsageError as exc:
        print(f"pgverify: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
