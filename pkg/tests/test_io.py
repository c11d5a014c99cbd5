from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

import aclsim as ac
import aclsim.io as aio
from aclsim.cli import main
from aclsim.errors import ParameterError, SignalError

HOUR = 3600


# -- signal files ------------------------------------------------------------

def test_signal_round_trip_exact(tmp_path):
    series = ac.gen_load(2 * HOUR, 60, seed=3)
    path = tmp_path / "load.csv"
    aio.write_signal(series, path)
    back = aio.load_signal(path, "w")
    assert back.name == "load" and back.cadence_s == 60
    assert np.array_equal(back.values, series.values)


def test_signal_unit_mismatch(tmp_path):
    path = tmp_path / "load.csv"
    aio.write_signal(ac.gen_load(HOUR, 60, seed=1), path)
    with pytest.raises(SignalError, match="expected 'c'"):
        aio.load_signal(path, "c")


def test_malformed_row_reports_line_number(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time_s,load_w\n0,1.0\n60,oops\n")
    with pytest.raises(SignalError, match="bad.csv:3"):
        aio.load_signal(path, "w")


def test_non_uniform_cadence_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time_s,load_w\n0,1.0\n60,2.0\n180,3.0\n")
    with pytest.raises(SignalError, match="non-uniform"):
        aio.load_signal(path, "w")


def test_regd_out_of_range_rejected(tmp_path):
    path = tmp_path / "regd.csv"
    path.write_text("time_s,regd_pu\n0,0.5\n2,1.3\n")
    with pytest.raises(SignalError, match=r"\[-1, 1\]"):
        aio.load_signal(path, "pu")


# -- scenario files ----------------------------------------------------------

def scenario_dict(**kw):
    d = dict(service=ac.SERVICE_FM, dt_s=60, horizon_s=2 * HOUR, rho=0.5,
             fleet_size=50, seed=3,
             signals={"outdoor_c": "outdoor.csv", "load_w": "load.csv",
                      "wind_w": "wind.csv"})
    d.update(kw)
    return d


def write_scenario(tmp_path, d):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(d))
    aio.write_signal(ac.gen_outdoor_temperature(4 * HOUR, 60, t_min_c=33.0,
                                                t_max_c=36.0),
                     tmp_path / "outdoor.csv")
    aio.write_signal(ac.gen_load(4 * HOUR, 60, seed=21), tmp_path / "load.csv")
    aio.write_signal(ac.gen_wind(4 * HOUR, 60, seed=22), tmp_path / "wind.csv")
    return path


def test_scenario_round_trip(tmp_path):
    path = write_scenario(tmp_path, scenario_dict())
    cfg = aio.load_scenario(path)
    assert cfg.service == ac.SERVICE_FM
    assert cfg.dt_s == 60 and cfg.fleet_size == 50
    sig = aio.load_signals(cfg, tmp_path)
    assert sig.outdoor.units == "c" and sig.wind.units == "w"


def test_scenario_rejects_unknown_keys(tmp_path):
    path = write_scenario(tmp_path, scenario_dict(robustness=9))
    with pytest.raises(ParameterError, match="robustness"):
        aio.load_scenario(path)
    d = scenario_dict()
    d["signals"]["windspeed"] = "x.csv"
    path = write_scenario(tmp_path, d)
    with pytest.raises(ParameterError, match="windspeed"):
        aio.load_scenario(path)


# -- traces ------------------------------------------------------------------

def small_run(per_unit=True):
    sig = ac.Signals(
        outdoor=ac.gen_outdoor_temperature(2 * HOUR, 60, t_min_c=33.0,
                                           t_max_c=36.0),
        load=ac.gen_load(2 * HOUR, 60, seed=21),
        wind=ac.gen_wind(2 * HOUR, 60, seed=22),
    )
    cfg = ac.ScenarioConfig(service=ac.SERVICE_FM, dt_s=60, horizon_s=2 * HOUR,
                            rho=0.5, fleet_size=40, seed=3)
    return ac.execute(cfg, sig)


def test_trace_round_trip_exact(tmp_path):
    trace = small_run().trace
    aio.write_trace(trace, tmp_path, per_unit=True)
    back = aio.read_trace(tmp_path)
    assert back.config == trace.config
    assert np.array_equal(back.time_s, trace.time_s)
    assert np.array_equal(back.agg_w, trace.agg_w)
    assert np.array_equal(back.p_star, trace.p_star)
    assert np.array_equal(back.s, trace.s)
    assert np.array_equal(back.soa, trace.soa)
    assert np.array_equal(back.t_air_c, trace.t_air_c)


def test_slim_trace_omits_unit_columns(tmp_path):
    trace = small_run().trace
    aio.write_trace(trace, tmp_path, per_unit=False)
    header = (tmp_path / "trace.csv").open().readline().strip()
    assert header == ",".join(aio.AGG_COLUMNS)
    back = aio.read_trace(tmp_path)
    assert back.s.shape[1] == 0
    assert np.array_equal(back.agg_w, trace.agg_w)


def test_empty_trace_writes_header_only(tmp_path):
    cfg = ac.ScenarioConfig(service=ac.SERVICE_FM, dt_s=60, horizon_s=0,
                            rho=0.5, fleet_size=40, seed=3)
    sig = ac.Signals(outdoor=ac.gen_outdoor_temperature(HOUR, 60),
                     load=ac.gen_load(HOUR, 60, seed=1),
                     wind=ac.gen_wind(HOUR, 60, seed=2))
    trace = ac.execute(cfg, sig).trace
    aio.write_trace(trace, tmp_path, per_unit=False)
    lines = (tmp_path / "trace.csv").read_text().splitlines()
    assert lines == [",".join(aio.AGG_COLUMNS)]


def test_write_json_is_deterministic(tmp_path):
    payload = {"b": 1.0 / 3.0, "a": [1e-17, 2.5]}
    aio.write_json(payload, tmp_path / "x.json")
    aio.write_json(payload, tmp_path / "y.json")
    assert (tmp_path / "x.json").read_bytes() == (tmp_path / "y.json").read_bytes()
    assert json.loads((tmp_path / "x.json").read_text())["b"] == 1.0 / 3.0


# -- command line ------------------------------------------------------------

def test_cli_run_and_metrics_recompute(tmp_path):
    scenario = write_scenario(tmp_path, scenario_dict())
    out = tmp_path / "out"
    assert main(["run", str(scenario), "--out-dir", str(out), "--per-unit"]) == 0
    for name in ("trace.csv", "run_summary.json", "metrics_report.json",
                 "baseline_hourly_w.csv", "uncontrolled.csv"):
        assert (out / name).exists()

    stored = (out / "metrics_report.json").read_bytes()
    assert main(["metrics", str(out)]) == 0
    assert (out / "metrics_report.json").read_bytes() == stored


def test_cli_run_twice_is_byte_identical(tmp_path):
    scenario = write_scenario(tmp_path, scenario_dict())
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", str(scenario), "--out-dir", str(a), "--per-unit"]) == 0
    assert main(["run", str(scenario), "--out-dir", str(b), "--per-unit"]) == 0
    for name in ("trace.csv", "run_summary.json", "metrics_report.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_cli_flag_overrides_change_run(tmp_path):
    scenario = write_scenario(tmp_path, scenario_dict())
    out = tmp_path / "out"
    assert main(["run", str(scenario), "--out-dir", str(out),
                 "--rho", "1.0", "--seed", "9", "--fleet-size", "25"]) == 0
    summary = json.loads((out / "run_summary.json").read_text())
    cfg = summary["config"]
    assert cfg["rho"] == 1.0 and cfg["seed"] == 9 and cfg["fleet_size"] == 25


def test_cli_missing_scenario_is_exit_two(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert main(["run", str(missing)]) == 2
    assert "nope.json" in capsys.readouterr().err


def test_cli_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "x.json", "--turbo"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_cli_bad_parameter_is_exit_one(tmp_path, capsys):
    scenario = write_scenario(tmp_path, scenario_dict(rho=5.0))
    assert main(["run", str(scenario)]) == 1
    assert "rho" in capsys.readouterr().err


def test_cli_gen_signals_round_trip(tmp_path):
    out = tmp_path / "regd.csv"
    assert main(["gen-signals", "regd", "--out", str(out),
                 "--horizon-s", "7200", "--seed", "4"]) == 0
    series = aio.load_signal(out, "pu")
    assert series.cadence_s == 2
    assert np.abs(series.values).max() <= 1.0


def test_cli_baseline_subcommand(tmp_path):
    scenario = write_scenario(tmp_path, scenario_dict())
    out = tmp_path / "base"
    assert main(["baseline", str(scenario), "--out-dir", str(out)]) == 0
    series = aio.load_signal(out / "baseline_hourly_w.csv", "w")
    assert series.values.size == 2
    assert series.cadence_s == 3600


def test_console_script_installed():
    proc = subprocess.run(["aclsim", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "run" in proc.stdout and "gen-signals" in proc.stdout
