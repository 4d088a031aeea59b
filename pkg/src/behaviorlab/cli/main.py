"""Operator command line.

Exit codes: 0 success, 1 check failure, 2 usage or input parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..analysis.agreement import kappa_report
from ..analysis.alignment import CandidateEvent, ReferenceEntry, align
from ..analysis.completeness import completeness_audit, drop_all_error_records
from ..analysis.contingency import chi_square_2x2, odds_ratio
from ..analysis.frequency import frequency_table
from ..analysis.reports import (
    agreement_report,
    alignment_report,
    comparison_table,
    completeness_report,
    frequency_report,
)
from ..model.serialization import records_from_lines, sheet_from_lines, sheet_to_text
from ..fixtures.build import (
    alignment_fixture,
    completeness_fixture,
    consensus_fixture,
)
from .checks import run_all_checks
from .scenario import ScenarioError, load_scenario, run_scenario


class InputParseError(ValueError):
    pass


def _read_event_list(path: str, time_keys: tuple[str, ...]) -> list[tuple[str, int]]:
    """(behavior_name, time) pairs from a line-delimited log; errors carry line numbers."""
    out = []
    with open(path, "r", encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputParseError(f"{path}:{lineno}: not valid JSON ({exc.msg})") from exc
            if obj.get("type") == "session-log":
                continue  # export header
            name = obj.get("behavior_name")
            at = next((obj[k] for k in time_keys if k in obj), None)
            if not name or at is None:
                raise InputParseError(
                    f"{path}:{lineno}: need behavior_name and one of {'/'.join(time_keys)}"
                )
            out.append((name, int(at)))
    return out


def _read_records(path: str):
    records = []
    with open(path, "r", encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputParseError(f"{path}:{lineno}: not valid JSON ({exc.msg})") from exc
            if obj.get("type") == "session-log":
                continue
            try:
                records.extend(records_from_lines([line]))
            except ValueError as exc:
                raise InputParseError(f"{path}:{lineno}: {exc}") from exc
    return records


def _read_sheet(path: str, rater_id: str | None = None):
    with open(path, "r", encoding="utf-8") as fp:
        lines = fp.readlines()
    try:
        return sheet_from_lines(lines, rater_id=rater_id)
    except ValueError as exc:
        raise InputParseError(f"{path}: {exc}") from exc


def _write_report(out_dir: str, which: str, machine: dict, human: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, f"{which}.json"), "w", encoding="utf-8") as fp:
        json.dump(machine, fp, indent=2, sort_keys=True)
        fp.write("\n")
    with open(os.path.join(out_dir, f"{which}.txt"), "w", encoding="utf-8") as fp:
        fp.write(human)
    print(human, end="")


def cmd_simulate(args) -> int:
    config = load_scenario(args.scenario)
    if args.seed is not None:
        config.seed = args.seed
    if args.freshness_ms is not None:
        config.freshness_window_ms = args.freshness_ms
    result = run_scenario(config, out_dir=args.out)
    print(json.dumps(result.summary, indent=2, sort_keys=True))
    return 0


def cmd_report(args) -> int:
    which = args.which
    tolerance = args.tolerance_ms

    if which == "alignment":
        if args.bundled:
            fx = alignment_fixture()
            reference = list(fx.reference)
            cand_a, cand_b = list(fx.app), list(fx.handwritten)
            name_a, name_b = "app", "handwritten"
        else:
            if not (args.reference and args.candidate_a and args.candidate_b):
                print("alignment needs --reference, --candidate-a, --candidate-b (or --bundled)",
                      file=sys.stderr)
                return 2
            reference = [
                ReferenceEntry(n, t)
                for n, t in _read_event_list(args.reference, ("occurred_at", "at", "clicked_at"))
            ]
            cand_a = [CandidateEvent(n, t)
                      for n, t in _read_event_list(args.candidate_a, ("at", "clicked_at"))]
            cand_b = [CandidateEvent(n, t)
                      for n, t in _read_event_list(args.candidate_b, ("at", "clicked_at"))]
            name_a, name_b = os.path.basename(args.candidate_a), os.path.basename(args.candidate_b)
        res_a = align(cand_a, reference, tolerance_ms=tolerance)
        res_b = align(cand_b, reference, tolerance_ms=tolerance)
        table = comparison_table(res_a, res_b)
        machine, human = alignment_report(
            name_a, res_a, name_b, res_b, chi_square_2x2(table), odds_ratio(table)
        )
    elif which == "completeness":
        records = completeness_fixture() if args.bundled else _read_records(args.records)
        machine, human = completeness_report(completeness_audit(drop_all_error_records(records)))
    elif which == "kappa":
        if args.bundled:
            sheet1 = sheet2 = consensus_fixture()
        else:
            if not (args.sheet1 and args.sheet2):
                print("kappa needs --sheet1 and --sheet2 (or --bundled)", file=sys.stderr)
                return 2
            sheet1 = _read_sheet(args.sheet1, args.rater1)
            sheet2 = _read_sheet(args.sheet2, args.rater2)
        machine, human = agreement_report(kappa_report(sheet1, sheet2))
    else:  # frequency
        sheet = consensus_fixture() if args.bundled else _read_sheet(args.sheet)
        machine, human = frequency_report(frequency_table(sheet))

    _write_report(args.out, which, machine, human)
    return 0


def cmd_reproduce(args) -> int:
    results = run_all_checks()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        timing = f"  [{r.timing}]" if args.timings and r.timing else ""
        print(f"{status}  {r.name:<{width}}  {r.detail}{timing}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def cmd_fixtures(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    fx = alignment_fixture()

    def dump(name: str, rows) -> None:
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as fp:
            for row in rows:
                fp.write(json.dumps(row, ensure_ascii=False, separators=(",", ":")) + "\n")

    dump("reference.jsonl",
         ({"behavior_name": r.behavior_name, "occurred_at": r.occurred_at} for r in fx.reference))
    dump("app_log.jsonl", ({"behavior_name": c.behavior_name, "at": c.at} for c in fx.app))
    dump("handwritten_log.jsonl",
         ({"behavior_name": c.behavior_name, "at": c.at} for c in fx.handwritten))
    from ..model.serialization import record_to_line

    with open(os.path.join(args.out, "completeness_records.jsonl"), "w", encoding="utf-8") as fp:
        for record in completeness_fixture():
            fp.write(record_to_line(record) + "\n")
    with open(os.path.join(args.out, "consensus_sheet.jsonl"), "w", encoding="utf-8") as fp:
        fp.write(sheet_to_text(consensus_fixture()))
    print(f"fixture files written to {args.out}")
    return 0


def cmd_serve_store(args) -> int:
    from .serve import serve_store

    serve_store(args.port, args.data)
    return 0


def cmd_serve_capture(args) -> int:
    from .scenario import scenario_from_dict
    from .serve import serve_capture

    config = load_scenario(args.scenario) if args.scenario else scenario_from_dict({"clicks": []})
    if args.freshness_ms is not None:
        config.freshness_window_ms = args.freshness_ms
    serve_capture(
        port=args.port,
        config=config,
        store_url=args.store_url,
        data_dir=args.data,
        freshness_window_ms=config.freshness_window_ms,
        weather_mode=args.weather_mode,
        ui_dir=args.ui,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="behaviorlab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario end-to-end on an in-process stack")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--freshness-ms", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="run one analysis and write machine+human reports")
    p.add_argument("which", choices=("alignment", "completeness", "kappa", "frequency"))
    p.add_argument("--bundled", action="store_true", help="use the bundled fixture")
    p.add_argument("--out", required=True)
    p.add_argument("--tolerance-ms", type=int, default=5000)
    p.add_argument("--reference")
    p.add_argument("--candidate-a")
    p.add_argument("--candidate-b")
    p.add_argument("--records")
    p.add_argument("--sheet")
    p.add_argument("--sheet1")
    p.add_argument("--sheet2")
    p.add_argument("--rater1")
    p.add_argument("--rater2")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("reproduce", help="check every bundled reference result")
    p.add_argument("--timings", action="store_true", help="append wall-clock timings")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("fixtures", help="write the bundled fixtures as files")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("serve-store", help="run the record store HTTP service")
    p.add_argument("--port", type=int, default=8791)
    p.add_argument("--data", default=None, help="append-log path for persistence")
    p.set_defaults(func=cmd_serve_store)

    p = sub.add_parser("serve-capture", help="run the capture HTTP service with live sources")
    p.add_argument("--port", type=int, default=8790)
    p.add_argument("--store-url", default="http://127.0.0.1:8791")
    p.add_argument("--scenario", default=None)
    p.add_argument("--data", default=None)
    p.add_argument("--freshness-ms", type=int, default=None)
    p.add_argument("--weather-mode", choices=("live", "fixture", "off"), default="fixture")
    p.add_argument("--ui", default=None, help="static directory to mount at /ui")
    p.set_defaults(func=cmd_serve_capture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, InputParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
