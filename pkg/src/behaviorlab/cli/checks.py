"""Reference-result checks the `reproduce` command runs against bundled fixtures.

Expected values are frozen literals here on purpose: the fixture generators
read the shared constants, so tampering with a bundled count makes the
corresponding check fail instead of silently shifting both sides.
"""

from __future__ import annotations

import random
import tempfile
import time
from dataclasses import dataclass

from ..analysis.agreement import cohen_kappa, kappa_bucket
from ..analysis.alignment import CandidateEvent, align
from ..analysis.completeness import completeness_audit
from ..analysis.contingency import ContingencyTable2x2, chi_square_2x2, odds_ratio
from ..analysis.frequency import frequency_table
from ..analysis.reports import comparison_table
from ..fixtures.build import (
    alignment_fixture,
    completeness_fixture,
    consensus_fixture,
    eight_room_floor,
)
from ..model.readings import nearest_beacon
from ..sensors.propagation import scan_beacons
from .scenario import ScenarioConfig, run_scenario, scenario_from_dict


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str  # deterministic across runs
    timing: str = ""  # wall-clock note, varies run to run


def _result(name: str, failures: list[str], detail: str, timing: str = "") -> CheckResult:
    if failures:
        return CheckResult(name, False, "; ".join(failures), timing)
    return CheckResult(name, True, detail, timing)


REFERENCE_TABLE = ContingencyTable2x2(269, 32, 195, 106)


def check_chi_square() -> CheckResult:
    t0 = time.perf_counter()
    r = chi_square_2x2(REFERENCE_TABLE)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    failures = []
    if abs(r.chi2 - 51.48) > 0.01:
        failures.append(f"chi2 {r.chi2:.4f} not within 0.01 of 51.48")
    if r.df != 1:
        failures.append(f"df {r.df} != 1")
    if not r.p_value < 0.001:
        failures.append(f"p {r.p_value} not < .001")
    if elapsed_ms >= 1.0:
        failures.append(f"runtime {elapsed_ms:.3f} ms not < 1 ms")
    return _result(
        "chi-square-reproduction",
        failures,
        f"chi2={r.chi2:.4f} df=1 p={r.p_value:.2e}",
        f"{elapsed_ms:.3f} ms",
    )


def check_odds_ratio() -> CheckResult:
    t0 = time.perf_counter()
    r = odds_ratio(REFERENCE_TABLE)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    failures = []
    if not 4.55 <= r.or_correct <= 4.60:
        failures.append(f"or_correct {r.or_correct:.4f} outside [4.55, 4.60]")
    if not 0.21 <= r.or_missing_incorrect <= 0.23:
        failures.append(f"or_missing_incorrect {r.or_missing_incorrect:.4f} outside [0.21, 0.23]")
    if elapsed_ms >= 1.0:
        failures.append(f"runtime {elapsed_ms:.3f} ms not < 1 ms")
    return _result(
        "odds-ratio-reproduction",
        failures,
        f"or={r.or_correct:.2f} / {r.or_missing_incorrect:.2f}",
        f"{elapsed_ms:.3f} ms",
    )


# type -> (count, percent to one decimal); S2..S7 published only as a range
_COMPLETENESS_EXACT = {
    "iB1": (269, 82.3), "iB2": (269, 82.3), "iB3": (269, 82.3),
    "GPS1": (327, 100.0), "GPS2": (327, 100.0),
    "S1": (213, 65.1), "S8": (266, 81.3),
    "S9": (327, 100.0), "S10": (327, 100.0), "S11": (327, 100.0),
    "A1": (312, 95.4), "A2": (312, 95.4), "A3": (312, 95.4), "A4": (312, 95.4),
    "A5": (312, 95.4), "A6": (312, 95.4), "A7": (312, 95.4), "A8": (312, 95.4),
    "A9": (312, 95.4), "A10": (312, 95.4), "A11": (312, 95.4), "A12": (312, 95.4),
    "A13": (312, 95.4), "A14": (288, 88.1), "A15": (312, 95.4),
}


def check_completeness() -> CheckResult:
    t0 = time.perf_counter()
    audit = completeness_audit(completeness_fixture())
    elapsed = time.perf_counter() - t0
    failures = []
    if audit.total_records != 327:
        failures.append(f"total {audit.total_records} != 327")
    for code, (count, percent) in _COMPLETENESS_EXACT.items():
        t = audit.per_type[code]
        if t.count != count or round(t.percent, 1) != percent:
            failures.append(f"{code}: {t.count}/{round(t.percent, 1)} != {count}/{percent}")
    for code in ("S2", "S3", "S4", "S5", "S6", "S7"):
        if not 318 <= audit.per_type[code].count <= 321:
            failures.append(f"{code} count {audit.per_type[code].count} outside [318, 321]")
    env_mean = audit.per_source["env"].mean_percent
    if not 93.0 <= env_mean <= 94.0:
        failures.append(f"env source mean {env_mean:.2f}% outside [93.0, 94.0]")
    api_mean = audit.per_source["weather"].mean_percent
    if abs(api_mean - 94.9) > 0.1:
        failures.append(f"weather source mean {api_mean:.2f}% not within 0.1 of 94.9")
    if audit.per_source["beacon"].mean_count != 269 or round(audit.per_source["beacon"].mean_percent, 1) != 82.3:
        failures.append("beacon source mean != 269 / 82.3%")
    if audit.per_source["gps"].mean_percent != 100.0:
        failures.append("gps source mean != 100%")
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f} s not < 1 s")
    return _result(
        "completeness-reproduction",
        failures,
        f"beacon 82.3% gps 100% env {env_mean:.2f}% weather {api_mean:.2f}%",
        f"{elapsed * 1000:.0f} ms",
    )


_FREQUENCY_EXPECTED = {
    "a": (104, 15.4), "b": (61, 9.0), "c": (146, 21.6),
    "d": (154, 22.8), "e": (187, 27.7), "f": (24, 3.6),
}


def check_frequency() -> CheckResult:
    t0 = time.perf_counter()
    table = frequency_table(consensus_fixture())
    elapsed = time.perf_counter() - t0
    failures = []
    if table.grand_total != 676:
        failures.append(f"grand total {table.grand_total} != 676")
    for code, (count, percent) in _FREQUENCY_EXPECTED.items():
        cell = table.majors[code]
        if cell.count != count:
            failures.append(f"{code} count {cell.count} != {count}")
        if abs(cell.percent - percent) > 0.05:
            failures.append(f"{code} percent {cell.percent:.3f} not within 0.05 of {percent}")
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f} s not < 1 s")
    return _result(
        "frequency-reproduction",
        failures,
        f"total 676, majors {'/'.join(str(table.majors[c].count) for c in 'abcdef')}",
        f"{elapsed * 1000:.0f} ms",
    )


def _oracle_kappa(s1, s2) -> float | None:
    """Independent float p_o/p_e derivation used only for cross-checking."""
    n = len(s1)
    p_o = sum(1 for x, y in zip(s1, s2) if x == y) / n
    p1 = sum(s1) / n
    p2 = sum(s2) / n
    p_e = p1 * p2 + (1 - p1) * (1 - p2)
    if p_e == 1.0:
        return None
    return (p_o - p_e) / (1.0 - p_e)


def check_kappa_oracle() -> CheckResult:
    failures = []
    rng = random.Random(424242)
    worst = 0.0
    for trial in range(1000):
        n = rng.randint(5, 291)
        s1 = [rng.randint(0, 1) for _ in range(n)]
        s2 = [rng.randint(0, 1) for _ in range(n)]
        ours = cohen_kappa(s1, s2).kappa
        oracle = _oracle_kappa(s1, s2)
        if (ours is None) != (oracle is None):
            failures.append(f"trial {trial}: definedness mismatch")
            break
        if ours is not None:
            delta = abs(ours - oracle)
            worst = max(worst, delta)
            if delta > 1e-12:
                failures.append(f"trial {trial}: |delta|={delta:.2e} > 1e-12")
                break
    ident = cohen_kappa([0, 1, 1, 0, 1], [0, 1, 1, 0, 1])
    if ident.kappa != 1.0:
        failures.append(f"identical non-constant vectors: kappa {ident.kappa} != 1")
    const = cohen_kappa([0] * 10, [0] * 10)
    if const.kappa is not None:
        failures.append("both-constant vectors not reported undefined")
    hand = cohen_kappa([1] * 25 + [0] * 25, [1] * 20 + [0] * 5 + [1] * 10 + [0] * 15)
    if hand.kappa != 0.40:
        failures.append(f"hand case kappa {hand.kappa!r} != 0.40 exactly")
    return _result(
        "kappa-oracle-equivalence",
        failures,
        f"1000 seeded vectors, max |delta| = {worst:.2e}; hand case = 0.40",
    )


_BUCKET_CASES = (
    (0.95, "almost-perfect"),
    (0.88, "almost-perfect"),
    (0.83, "almost-perfect"),
    (0.70, "substantial"),
    (0.78, "substantial"),
    (0.40, "fair"),
    (0.21, "fair"),
    (-0.0003, "less-than-chance"),
)


def check_kappa_buckets() -> CheckResult:
    failures = []
    for kappa, expected in _BUCKET_CASES:
        got = kappa_bucket(kappa)
        if got != expected:
            failures.append(f"{kappa} -> {got}, expected {expected}")
    return _result(
        "kappa-bucket-spot-checks", failures, f"{len(_BUCKET_CASES)} published coefficients bucketed"
    )


def same_room_accuracy(noise_sigma: float, scans: int = 10_000, seed: int = 20_260_810) -> float:
    plan, placements = eight_room_floor(wall_db=15.0)
    room_by_uuid = {p.uuid: plan.validate_placement(p).room_id for p in placements}
    rng = random.Random(seed)
    hits = 0
    for i in range(scans):
        room = plan.rooms[rng.randrange(len(plan.rooms))]
        x = rng.uniform(room.x0 + 0.2, room.x1 - 0.2)
        y = rng.uniform(room.y0 + 0.2, room.y1 - 0.2)
        readings = scan_beacons(
            plan, placements, (x, y), noise_sigma=noise_sigma, rng_seed=seed + i, now_ms=0
        )
        best = nearest_beacon(readings)
        if best is not None and room_by_uuid[best.uuid] == room.room_id:
            hits += 1
    return hits / scans


def check_same_room() -> CheckResult:
    t0 = time.perf_counter()
    noisy = same_room_accuracy(noise_sigma=4.0)
    clean = same_room_accuracy(noise_sigma=0.0)
    elapsed = time.perf_counter() - t0
    failures = []
    if noisy < 0.93:
        failures.append(f"sigma=4 accuracy {noisy:.4f} < 0.93")
    if clean != 1.0:
        failures.append(f"sigma=0 accuracy {clean:.4f} != 1.0")
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.2f} s not < 10 s")
    return _result(
        "same-room-beacon-accuracy",
        failures,
        f"sigma=4: {noisy:.1%}, sigma=0: {clean:.0%} over 10000 scans",
        f"{elapsed:.1f} s",
    )


def outage_scenario() -> ScenarioConfig:
    """50 clicks 10 s apart; the store is down for clicks 10..29."""
    names = ("Hungry", "Goodbye", "Hello", "Thirsty", "Tired")
    return scenario_from_dict(
        {
            "seed": 11,
            "clicks": [
                {"t_ms": i * 10_000, "behavior_name": names[i % len(names)]} for i in range(50)
            ],
            "faults": [{"source": "store", "start_ms": 100_000, "end_ms": 300_000}],
        }
    )


def check_effectively_once() -> CheckResult:
    t0 = time.perf_counter()
    with tempfile.TemporaryDirectory() as tmp:
        result = run_scenario(outage_scenario(), out_dir=tmp)
        failures = []
        if result.summary["records_logged"] != 50:
            failures.append(f"local log has {result.summary['records_logged']} records, not 50")
        if result.store.count() != 50:
            failures.append(f"store holds {result.store.count()} records, not 50")
        event_ids = {s.record.event_id for s in result.store.query_records()}
        if len(event_ids) != 50:
            failures.append(f"store holds {len(event_ids)} distinct event_ids, not 50")
        replay_acked = result.capture.drain_sync_queue()
        if replay_acked != 0 or result.store.count() != 50:
            failures.append(
                f"replaying the drain changed the store (acked {replay_acked}, "
                f"count {result.store.count()})"
            )
    elapsed = time.perf_counter() - t0
    if elapsed >= 30.0:
        failures.append(f"runtime {elapsed:.2f} s not < 30 s")
    return _result(
        "end-to-end-effectively-once",
        failures,
        "50 clicks, 20 during outage, store holds 50 distinct ids; replay added 0",
        f"{elapsed:.1f} s",
    )


def check_alignment_properties() -> CheckResult:
    failures = []
    fx = alignment_fixture()
    exact_copy = [CandidateEvent(r.behavior_name, r.occurred_at) for r in fx.reference]
    exact = align(exact_copy, fx.reference)
    if exact.correct != len(fx.reference) or exact.missing or exact.incorrect:
        failures.append(
            f"exact-copy logs not 100% correct: {exact.correct}/{exact.missing}/{exact.incorrect}"
        )
    app = align(fx.app, fx.reference)
    hand = align(fx.handwritten, fx.reference)
    table = comparison_table(app, hand)
    if table.cells != (269, 32, 195, 106):
        failures.append(f"fixture table {table.cells} != (269, 32, 195, 106)")
    app_pct = round(100.0 * app.correct / app.reference_count, 1)
    hand_pct = round(100.0 * hand.correct / hand.reference_count, 1)
    if app_pct != 89.4 or hand_pct != 64.8:
        failures.append(f"correct rates {app_pct}/{hand_pct} != 89.4/64.8")
    return _result(
        "alignment-properties",
        failures,
        f"exact copy 100% correct; fixture split {app_pct}% vs {hand_pct}%",
    )


ALL_CHECKS = (
    check_chi_square,
    check_odds_ratio,
    check_completeness,
    check_frequency,
    check_kappa_oracle,
    check_kappa_buckets,
    check_same_room,
    check_effectively_once,
    check_alignment_properties,
)


def run_all_checks() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
