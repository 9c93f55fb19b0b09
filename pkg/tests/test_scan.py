import csv
import json

import pytest

from dickelab.cli import main
from dickelab.scan import (
    ComparisonRow,
    ConfigError,
    compare_report,
    load_rows,
    parse_config,
    run_scan,
    worker_count,
)


def _config_dict(tmp_path, **overrides):
    cfg = {
        "schema_version": 1,
        "model": {"omega_a": 1.0, "omega_b": 1.0, "n_atoms": 3},
        "grid": {"start": 2.0, "stop": 2.4, "count": 3},
        "quantities": ["mandel", "goldstone", "higgs"],
        "output_dir": str(tmp_path / "out"),
    }
    cfg.update(overrides)
    return cfg


def _write_config(tmp_path, **overrides):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(_config_dict(tmp_path, **overrides)))
    return path


def test_parse_config_valid(tmp_path):
    config = parse_config(_config_dict(tmp_path))
    assert config.g_over_gc == (2.0, 2.2, 2.4)
    assert config.quantities == ("mandel", "goldstone", "higgs")
    assert config.formats == ("csv",)
    assert config.model.n_atoms == 3


def test_parse_config_collects_all_errors(tmp_path):
    bad = _config_dict(
        tmp_path,
        schema_version=99,
        quantities=[],
        grid={"start": 2.0, "stop": 3.0, "count": 1},
        bogus_key=1,
    )
    with pytest.raises(ConfigError) as err:
        parse_config(bad)
    messages = "\n".join(err.value.errors)
    assert len(err.value.errors) >= 4
    assert "schema_version" in messages
    assert "quantities" in messages
    assert "count" in messages
    assert "bogus_key" in messages


def test_parse_config_rejects_g_in_model(tmp_path):
    bad = _config_dict(tmp_path)
    bad["model"]["g"] = 2.0
    with pytest.raises(ConfigError, match="model.g"):
        parse_config(bad)


def test_parse_config_rejects_sector_quantities_with_crw(tmp_path):
    bad = _config_dict(tmp_path, gprime_over_g=0.1)
    with pytest.raises(ConfigError, match="anomalous"):
        parse_config(bad)
    ok = _config_dict(tmp_path, gprime_over_g=0.1, quantities=["anomalous"])
    assert parse_config(ok).gprime_over_g == 0.1


def test_parse_config_rejects_nonpositive_grid(tmp_path):
    with pytest.raises(ConfigError, match="positive"):
        parse_config(_config_dict(tmp_path, grid=[2.0, -1.0]))


def test_worker_count_env_cap(tmp_path, monkeypatch):
    config = parse_config(_config_dict(tmp_path))
    monkeypatch.setenv("DICKE_LAB_THREADS", "1")
    assert worker_count(config) == 1
    # the env var caps even an explicit config value
    explicit = parse_config(_config_dict(tmp_path, workers=3))
    assert worker_count(explicit) == 1
    monkeypatch.delenv("DICKE_LAB_THREADS")
    assert worker_count(explicit) == 3
    assert 1 <= worker_count(config) <= len(config.g_over_gc)


def test_run_scan_writes_expected_files(tmp_path):
    config = parse_config(_config_dict(tmp_path, formats=["csv", "json"]))
    written = run_scan(config)
    names = sorted(p.name for p in written)
    assert names == sorted(
        ["mandel.csv", "mandel.json", "goldstone.csv", "goldstone.json",
         "higgs.csv", "higgs.json", "manifest.json"]
    )
    with open(tmp_path / "out" / "goldstone.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3
    assert "analytic_envelope" in rows[0]
    assert rows[0]["quantity"] == "goldstone"
    assert float(rows[0]["g_over_gc"]) == 2.0
    with open(tmp_path / "out" / "mandel.csv", newline="") as fh:
        header = next(csv.reader(fh))
    assert header == [
        "quantity", "g", "g_over_gc", "p_star",
        "ed_value", "analytic_value", "rel_deviation", "near_qcp",
    ]
    manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert manifest["schema_version"] == 1
    assert manifest["model"]["n_atoms"] == 3
    assert manifest["tolerances"]["eigen"] == 1e-8
    assert "created_at" in manifest


def test_run_scan_is_deterministic(tmp_path):
    cfg_a = parse_config(_config_dict(tmp_path, output_dir=str(tmp_path / "a")))
    cfg_b = parse_config(_config_dict(tmp_path, output_dir=str(tmp_path / "b")))
    run_scan(cfg_a)
    run_scan(cfg_b)
    for name in ("mandel.csv", "goldstone.csv", "higgs.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    ma = json.loads((tmp_path / "a" / "manifest.json").read_text())
    mb = json.loads((tmp_path / "b" / "manifest.json").read_text())
    ma.pop("created_at"), mb.pop("created_at")
    assert ma == mb


def test_run_scan_weights_quantity_emits_three_series(tmp_path):
    config = parse_config(_config_dict(tmp_path, quantities=["weights"]))
    run_scan(config)
    with open(tmp_path / "out" / "weights.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["quantity"] for r in rows[:3]] == ["c_g", "c_o", "c_h"]
    assert len(rows) == 9


def test_run_scan_masks_near_qcp_rows(tmp_path):
    config = parse_config(_config_dict(
        tmp_path, grid=[0.5, 1.05, 2.5], quantities=["goldstone", "spectrum"]
    ))
    run_scan(config)
    rows = [r for r in load_rows(tmp_path / "out") if r.quantity == "goldstone"]
    assert rows[0].near_qcp and rows[1].near_qcp and not rows[2].near_qcp
    assert rows[0].analytic_value is None  # normal phase: no closed form
    spectrum = [r for r in load_rows(tmp_path / "out") if r.quantity == "spectrum"]
    assert spectrum[0].ed_value == 0.0 and spectrum[0].analytic_value == 0.0


def test_load_rows_roundtrip(tmp_path):
    config = parse_config(_config_dict(tmp_path, quantities=["higgs"]))
    run_scan(config)
    rows = load_rows(tmp_path / "out")
    assert len(rows) == 3
    assert all(r.quantity == "higgs" for r in rows)
    assert all(r.rel_deviation is not None for r in rows)


def test_run_scan_anomalous_quantity(tmp_path):
    config = parse_config(_config_dict(
        tmp_path,
        model={"omega_a": 1.0, "omega_b": 1.0, "n_atoms": 2},
        grid=[2.0],
        quantities=["anomalous"],
        gprime_over_g=0.05,
    ))
    run_scan(config)
    rows = load_rows(tmp_path / "out")
    assert len(rows) == 1
    assert rows[0].ed_value > 0
    assert rows[0].analytic_value is None
    assert rows[0].p_star is None


def _row(quantity, dev, near=False):
    return ComparisonRow(
        quantity=quantity, g=2.0, g_over_gc=2.0, p_star=1 if near else 5,
        ed_value=1.0, analytic_value=1.0, rel_deviation=dev, near_qcp=near,
    )


def test_compare_report_pass_and_fail():
    rows = [_row("higgs", 0.0), _row("higgs", 0.02), _row("c_o", 0.5)]
    report = compare_report(rows)
    by_quantity = {q.quantity: q for q in report.quantities}
    assert by_quantity["higgs"].passed is True
    assert by_quantity["c_o"].passed is False
    assert not report.passed


def test_compare_report_near_qcp_exclusion():
    rows = [_row("goldstone", 5.0, near=True), _row("goldstone", 0.01)]
    report = compare_report(rows, {"goldstone": 0.15})
    q = report.quantities[0]
    assert q.n_rows == 2 and q.n_enforced == 1
    assert q.passed is True
    # masking does not apply to higgs
    rows = [_row("higgs", 5.0, near=True)]
    assert not compare_report(rows, {"higgs": 0.10}).passed


def test_compare_report_unthresholded_quantities_reported_only():
    report = compare_report([_row("anomalous", 3.0)])
    assert report.passed
    assert report.quantities[0].passed is None


def test_compare_report_rejects_empty():
    with pytest.raises(ValueError):
        compare_report([])


def test_cli_scan_and_compare_roundtrip(tmp_path, capsys):
    cfg = _write_config(tmp_path, quantities=["higgs", "mandel"])
    assert main(["scan", str(cfg)]) == 0
    assert main(["compare", str(tmp_path / "out")]) == 0
    out = capsys.readouterr().out
    assert "overall: pass" in out


def test_cli_compare_fails_on_tight_thresholds(tmp_path):
    cfg = _write_config(tmp_path, quantities=["higgs"])
    assert main(["scan", str(cfg)]) == 0
    thresholds = tmp_path / "thresholds.json"
    thresholds.write_text(json.dumps({"higgs": 1e-12}))
    assert main(["compare", str(tmp_path / "out"), "--thresholds", str(thresholds)]) == 1


def test_cli_rejects_invalid_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema_version": 1}))
    assert main(["scan", str(bad)]) == 2
    assert "invalid config" in capsys.readouterr().err


def test_cli_rejects_unreadable_paths(tmp_path, capsys):
    assert main(["scan", str(tmp_path / "missing.json")]) == 2
    assert main(["compare", str(tmp_path / "empty")]) == 2
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    cfg = _write_config(tmp_path, output_dir=str(blocker / "out"))
    assert main(["scan", str(cfg)]) == 2


def test_cli_oracle_passes_for_small_system(tmp_path, capsys):
    cfg = _write_config(
        tmp_path,
        model={"omega_a": 1.0, "omega_b": 1.0, "n_atoms": 2, "g_prime": 0.3},
        grid=[0.8, 1.6],
        quantities=["anomalous"],
    )
    assert main(["oracle", str(cfg)]) == 0
    assert "pass" in capsys.readouterr().out


def test_cli_oracle_rejects_large_n(tmp_path, capsys):
    cfg = _write_config(
        tmp_path,
        model={"omega_a": 1.0, "omega_b": 1.0, "n_atoms": 5},
        quantities=["higgs"],
    )
    assert main(["oracle", str(cfg)]) == 2
