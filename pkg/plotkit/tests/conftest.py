from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

ARTIFACTS = Path(__file__).resolve().parents[2] / "artifacts" / "acceptance"


@pytest.fixture(scope="session")
def acceptance_artifacts():
    if not (ARTIFACTS / "mitigation_rho0" / "trace.csv").is_file():
        pytest.fail(
            "acceptance trace directories are missing under "
            f"{ARTIFACTS}; run the simulator acceptance suite first "
            "(pytest tests/test_acceptance.py from the repository root)")
    return ARTIFACTS


@pytest.fixture
def trace_factory(tmp_path):
    """Writes a small synthetic trace directory and returns its path."""

    def make(name="run", rho=0.5, dt_s=60.0, service="fluctuation_mitigation",
             n_steps=48, with_report=True, with_uncontrolled=True):
        out = tmp_path / name
        out.mkdir()
        tie_runs = service == "fluctuation_mitigation"

        t = np.arange(n_steps) * dt_s
        phase = 2.0 * np.pi * t / (n_steps * dt_s / 3.0)
        target = 1.0e6 + 0.10e6 * np.sin(phase)
        agg = target + 0.01e6 * np.cos(phase)
        raw_tie = 2.5e6 + 0.30e6 * np.sin(phase) + 0.05e6 * np.cos(3 * phase)
        smooth_tie = 2.5e6 + 0.12e6 * np.sin(phase)
        frame = pd.DataFrame({
            "time_s": t,
            "target_w": target,
            "agg_w": agg,
            "tie_w": smooth_tie if tie_runs else np.full(n_steps, np.nan),
            "p_star": 0.3 * np.sin(phase),
            "locked_on_w": np.full(n_steps, 0.2e6),
            "locked_off_w": np.full(n_steps, 0.3e6),
            "available_w": np.full(n_steps, 1.5e6),
        })
        frame.to_csv(out / "trace.csv", index=False)

        summary = {
            "columns": list(frame.columns),
            "config": {"service": service, "dt_s": dt_s, "rho": rho,
                       "seed": 1, "horizon_s": int(n_steps * dt_s),
                       "warmup_s": 0},
            "n_steps": n_steps,
            "n_units": 10,
            "per_unit": False,
            "unit_ids": [],
        }
        (out / "run_summary.json").write_text(json.dumps(summary))

        if with_report:
            n_win = n_steps - 4
            report = {
                "dt_s": dt_s,
                "warmup_s": 0,
                "window_s": 5 * dt_s,
                "n_steps": n_steps,
                "n_units": 10,
                "tracking_rmse_w": 1.0e4,
                "avg_soa": (0.2 * np.sin(phase)).tolist(),
                "soa_lo": (0.2 * np.sin(phase) - 0.5).tolist(),
                "soa_hi": (0.2 * np.sin(phase) + 0.5).tolist(),
                "fluctuation_controlled":
                    (np.full(n_win, 0.02)).tolist() if tie_runs else None,
                "fluctuation_uncontrolled":
                    (np.full(n_win, 0.08)).tolist() if tie_runs else None,
                "switching_per_unit_day": [],
                "switching_hist": [0, 1, 4, 3, 2],
                "uncontrolled_switching_per_unit_day": [],
                "uncontrolled_switching_hist": [0, 3, 5, 2],
            }
            (out / "metrics_report.json").write_text(json.dumps(report))

        if with_uncontrolled:
            unc = pd.DataFrame({
                "time_s": t,
                "agg_w": agg * 1.05,
                "tie_w": raw_tie if tie_runs else np.full(n_steps, np.nan),
            })
            unc.to_csv(out / "uncontrolled.csv", index=False)
            (out / "uncontrolled_switching.csv").write_text(
                "day,unit,cycles\n0,0,2\n0,1,3\n")
        return out

    return make
