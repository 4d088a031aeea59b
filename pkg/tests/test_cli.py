import json

import pytest

from behaviorlab.cli.main import main
from behaviorlab.cli.scenario import ScenarioError, load_scenario, run_scenario, scenario_from_dict
from behaviorlab.fixtures import published


def write_scenario(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def ten_click_scenario(faults=()):
    return {
        "seed": 3,
        "clicks": [{"t_ms": i * 5_000, "behavior_name": "Hungry"} for i in range(10)],
        "faults": list(faults),
    }


def test_simulate_clean_run_fills_all_slots(tmp_path, capsys):
    scenario = write_scenario(tmp_path / "s.json", ten_click_scenario())
    out = tmp_path / "out"
    assert main(["simulate", "--scenario", scenario, "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["clicks"] == 10
    assert summary["store_records"] == 10
    assert summary["sync"] == {"pending": 0, "acked": 10, "failed": 0}
    assert all(v == 10 for v in summary["per_type_present"].values())
    assert all(v == 0 for v in summary["per_source_error_records"].values())
    lines = (out / "events.jsonl").read_text().splitlines()
    assert len(lines) == 11  # header + 10 records


def test_simulate_weather_outage_marks_exactly_those_clicks(tmp_path):
    # clicks at 0,5s,...,45s; outage [12s, 27s) covers clicks at 15s, 20s, 25s
    scenario = write_scenario(
        tmp_path / "s.json",
        ten_click_scenario(faults=[{"source": "weather", "start_ms": 12_000, "end_ms": 27_000}]),
    )
    out = tmp_path / "out"
    assert main(["simulate", "--scenario", scenario, "--out", str(out)]) == 0
    records = [
        json.loads(l)
        for l in (out / "events.jsonl").read_text().splitlines()
        if '"session-log"' not in l
    ]
    weather_keys = [f"A{i}" for i in range(1, 16)]
    outage_records = [r for r in records if all(r[k] is None for k in weather_keys)]
    assert len(outage_records) == 3
    healthy = [r for r in records if all(r[k] is not None for k in weather_keys)]
    assert len(healthy) == 7
    summary = json.loads((out / "summary.json").read_text())
    assert summary["per_source_error_records"]["weather"] == 3
    assert summary["per_type_present"]["A1"] == 7


def test_simulate_is_byte_deterministic(tmp_path):
    scenario = write_scenario(tmp_path / "s.json", ten_click_scenario())
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["simulate", "--scenario", scenario, "--out", str(out1)])
    main(["simulate", "--scenario", scenario, "--out", str(out2)])
    for name in ("events.jsonl", "store.jsonl", "summary.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_simulate_seed_changes_outputs(tmp_path):
    scenario = write_scenario(tmp_path / "s.json", ten_click_scenario())
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["simulate", "--scenario", scenario, "--out", str(out1)])
    main(["simulate", "--scenario", scenario, "--out", str(out2), "--seed", "99"])
    assert (out1 / "events.jsonl").read_bytes() != (out2 / "events.jsonl").read_bytes()


def test_scenario_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert main(["simulate", "--scenario", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert "error:" in capsys.readouterr().err

    unresolved = write_scenario(
        tmp_path / "u.json",
        {"clicks": [{"t_ms": 0, "behavior_name": "Backflip"}]},
    )
    assert main(["simulate", "--scenario", unresolved, "--out", str(tmp_path / "o2")]) == 2


def test_scenario_validation_rules():
    with pytest.raises(ScenarioError, match="non-decreasing"):
        scenario_from_dict(
            {"clicks": [{"t_ms": 5, "behavior_name": "Hungry"}, {"t_ms": 1, "behavior_name": "Hungry"}]}
        )
    with pytest.raises(ScenarioError, match="fault"):
        scenario_from_dict({"clicks": [], "faults": [{"source": "weather", "start_ms": 5, "end_ms": 5}]})
    with pytest.raises(ScenarioError, match="unknown fault source"):
        scenario_from_dict({"clicks": [], "faults": [{"source": "modem", "start_ms": 0, "end_ms": 1}]})


def test_stochastic_click_generation_is_deterministic():
    config = scenario_from_dict({"seed": 5, "click_rate_per_min": 30, "duration_ms": 120_000})
    again = scenario_from_dict({"seed": 5, "click_rate_per_min": 30, "duration_ms": 120_000})
    assert config.clicks == again.clicks
    assert len(config.clicks) > 0
    assert all(t < 120_000 for t, _ in config.clicks)


def test_report_alignment_bundled(tmp_path, capsys):
    out = tmp_path / "rep"
    assert main(["report", "alignment", "--bundled", "--out", str(out)]) == 0
    machine = json.loads((out / "alignment.json").read_text())
    assert machine["chi_square"]["chi2"] == pytest.approx(51.48, abs=0.01)
    assert machine["odds_ratio"]["or_correct"] == pytest.approx(4.57, abs=0.01)
    methods = {m["method"]: m for m in machine["methods"]}
    assert methods["app"]["correct"] == 269
    assert methods["handwritten"]["correct"] == 195
    text = (out / "alignment.txt").read_text()
    assert "chi-square = 51.48" in text
    assert "p < .001" in text


def test_report_completeness_and_frequency_bundled(tmp_path):
    out = tmp_path / "rep"
    assert main(["report", "completeness", "--bundled", "--out", str(out)]) == 0
    machine = json.loads((out / "completeness.json").read_text())
    assert machine["per_type"]["iB1"] == {"count": 269, "percent": 82.3}
    assert machine["per_source"]["gps"]["mean_percent"] == 100.0

    assert main(["report", "frequency", "--bundled", "--out", str(out)]) == 0
    machine = json.loads((out / "frequency.json").read_text())
    assert machine["grand_total"] == 676
    assert machine["majors"]["e"] == {"count": 187, "percent": 27.7}


def test_report_kappa_bundled(tmp_path):
    out = tmp_path / "rep"
    assert main(["report", "kappa", "--bundled", "--out", str(out)]) == 0
    machine = json.loads((out / "kappa.json").read_text())
    assert len(machine["categories"]) == 22


def test_fixtures_then_report_from_files(tmp_path):
    fixture_dir = tmp_path / "fx"
    assert main(["fixtures", "--out", str(fixture_dir)]) == 0
    out = tmp_path / "rep"
    code = main([
        "report", "alignment",
        "--reference", str(fixture_dir / "reference.jsonl"),
        "--candidate-a", str(fixture_dir / "app_log.jsonl"),
        "--candidate-b", str(fixture_dir / "handwritten_log.jsonl"),
        "--out", str(out),
    ])
    assert code == 0
    machine = json.loads((out / "alignment.json").read_text())
    assert machine["chi_square"]["chi2"] == pytest.approx(51.48, abs=0.01)

    code = main([
        "report", "completeness",
        "--records", str(fixture_dir / "completeness_records.jsonl"),
        "--out", str(out),
    ])
    assert code == 0

    code = main([
        "report", "frequency",
        "--sheet", str(fixture_dir / "consensus_sheet.jsonl"),
        "--out", str(out),
    ])
    assert code == 0
    machine = json.loads((out / "frequency.json").read_text())
    assert machine["grand_total"] == 676


def test_report_parse_failure_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"behavior_name": "A", "at": 1}\n{broken\n')
    code = main([
        "report", "alignment",
        "--reference", str(bad), "--candidate-a", str(bad), "--candidate-b", str(bad),
        "--out", str(tmp_path / "rep"),
    ])
    assert code == 2
    err = capsys.readouterr().err
    assert ":2:" in err  # line number reported


def test_report_missing_inputs_exit_2(tmp_path, capsys):
    assert main(["report", "alignment", "--out", str(tmp_path / "r")]) == 2


def test_reproduce_passes_and_is_deterministic(capsys):
    assert main(["reproduce"]) == 0
    first = capsys.readouterr().out
    assert first.count("PASS") == 9
    assert "9/9 checks passed" in first
    assert main(["reproduce"]) == 0
    assert capsys.readouterr().out == first


def test_reproduce_fails_on_tampered_fixture(monkeypatch, capsys):
    tampered = dict(published.FREQUENCY_COUNTS)
    tampered["c"] += 1
    monkeypatch.setattr(published, "FREQUENCY_COUNTS", tampered)
    assert main(["reproduce"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  frequency-reproduction" in out
    assert "PASS  chi-square-reproduction" in out


def test_scenario_loader_round_trip(tmp_path):
    scenario = write_scenario(tmp_path / "s.json", ten_click_scenario())
    config = load_scenario(scenario)
    result = run_scenario(config)
    assert result.summary["store_records"] == 10
