"""Reading of simulator trace directories.

A trace directory is the on-disk format a fleet-simulator run leaves
behind: ``trace.csv`` with the aggregate per-cycle series,
``run_summary.json`` echoing the scenario, and optionally
``metrics_report.json``, ``uncontrolled.csv`` and
``uncontrolled_switching.csv``.  Only those files are read here; the
simulator package itself is never imported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from .errors import PlotError

REQUIRED_COLUMNS = ("time_s", "target_w", "agg_w", "tie_w", "p_star",
                    "locked_on_w", "locked_off_w", "available_w")


@dataclass
class TraceDir:
    """One loaded run: aggregate table, scenario echo, optional extras."""

    path: Path
    config: dict
    table: pd.DataFrame
    report: dict | None
    uncontrolled: pd.DataFrame | None

    @property
    def label(self) -> str:
        return f"rho={self.config['rho']:g}"

    @property
    def dt_s(self) -> float:
        return float(self.config["dt_s"])

    @property
    def warmup_s(self) -> float:
        return float(self.config.get("warmup_s", 0.0))


def load_trace_dir(path) -> TraceDir:
    path = Path(path)
    trace_csv = path / "trace.csv"
    summary = path / "run_summary.json"
    if not trace_csv.is_file():
        raise FileNotFoundError(f"{trace_csv} (not a trace directory?)")
    if not summary.is_file():
        raise FileNotFoundError(str(summary))

    config = json.loads(summary.read_text())["config"]
    table = pd.read_csv(trace_csv, float_precision="round_trip")
    missing = [c for c in REQUIRED_COLUMNS if c not in table.columns]
    if missing:
        raise PlotError(f"{trace_csv} lacks columns: {', '.join(missing)}")

    report_path = path / "metrics_report.json"
    report = json.loads(report_path.read_text()) if report_path.is_file() else None
    unc_path = path / "uncontrolled.csv"
    uncontrolled = (pd.read_csv(unc_path, float_precision="round_trip")
                    if unc_path.is_file() else None)
    return TraceDir(path=path, config=config, table=table, report=report,
                    uncontrolled=uncontrolled)
