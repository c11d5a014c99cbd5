"""File formats: signal CSVs, scenario configs, traces and summaries.

Signal files are two-column CSV, ``time_s,<name>_<unit>``; the value
column name carries the unit tag so a file can never be loaded as the
wrong quantity.  Timestamps are integer seconds from the simulation start
with a uniform spacing and no gaps.

A trace directory holds:

    trace.csv                    wide per-step table; the fixed column
                                 order is time_s, target_w, agg_w, tie_w,
                                 p_star, locked_on_w, locked_off_w,
                                 available_w, then optional per-unit
                                 blocks s_*, t_air_c_*, soa_*
    run_summary.json             config echo and table shape
    metrics_report.json          standard report (written by the CLI)
    baseline_hourly_w.csv        hourly baseline estimate
    uncontrolled.csv             thermostat-reference aggregate and tie
    uncontrolled_switching.csv   per-unit daily switching counts

Floats are serialized with ``repr`` so every value round-trips exactly;
a re-read trace is bit-identical to the one in memory, and recomputing a
report from disk reproduces the stored one byte for byte.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pandas as pd

from .engine import ScenarioConfig, Signals, SimTrace
from .errors import ParameterError, SignalError
from .signals import VALID_UNITS, SignalSeries

AGG_COLUMNS = ("time_s", "target_w", "agg_w", "tie_w", "p_star",
               "locked_on_w", "locked_off_w", "available_w")


# -- signals ---------------------------------------------------------------

def write_signal(series: SignalSeries, path) -> None:
    path = Path(path)
    t0 = series.start_s
    with path.open("w") as fh:
        fh.write(f"time_s,{series.name}_{series.units}\n")
        for i, v in enumerate(series.values):
            fh.write(f"{t0 + i * series.cadence_s},{float(v)!r}\n")


def load_signal(path, expected_units: str) -> SignalSeries:
    """Parse and validate one signal file.

    Rejects a unit tag that does not match ``expected_units``, any
    malformed row (with its line number), and non-uniform timestamps.
    """
    if expected_units not in VALID_UNITS:
        raise SignalError(f"unknown expected unit {expected_units!r}")
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip()
        parts = header.split(",")
        if len(parts) != 2 or parts[0] != "time_s" or "_" not in parts[1]:
            raise SignalError(f"{path}: header must be 'time_s,<name>_<unit>', got {header!r}")
        name, _, units = parts[1].rpartition("_")
        if units != expected_units:
            raise SignalError(f"{path}: unit is {units!r}, expected {expected_units!r}")
        times, values = [], []
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                t_str, v_str = line.split(",")
                t = int(t_str)
                v = float(v_str)
            except ValueError as exc:
                raise SignalError(f"{path}:{lineno}: malformed row {line!r}") from exc
            if not math.isfinite(v):
                raise SignalError(f"{path}:{lineno}: non-finite value")
            times.append(t)
            values.append(v)
    if not times:
        raise SignalError(f"{path}: no samples")
    times = np.asarray(times, dtype=np.int64)
    if len(times) > 1:
        steps = np.diff(times)
        if steps.min() != steps.max() or steps[0] <= 0:
            bad = int(np.argmax(steps != steps[0])) + 2
            raise SignalError(f"{path}: non-uniform timestamps near line {bad}")
        cadence = int(steps[0])
    else:
        cadence = 1
    return SignalSeries(name=name, units=units, cadence_s=cadence,
                        values=np.asarray(values), start_s=int(times[0]))


# -- scenario configs ------------------------------------------------------

_SCENARIO_KEYS = {"service", "dt_s", "horizon_s", "rho", "fleet_size", "seed",
                  "tau_s", "capacity_w", "warmup_s", "signals", "geometry"}
_SIGNAL_KEYS = {"outdoor_c", "solar_wm2", "load_w", "wind_w", "regd_pu"}
_GEOMETRY_KEYS = {"ceiling_height_m", "door_area_m2", "interior_film_w_m2k",
                  "internal_gain_w", "design_outdoor_c", "design_solar_wm2",
                  "oversize_factor", "c_air_scale", "c_mass_ratio"}


def load_scenario(path) -> ScenarioConfig:
    """Read a scenario file; unknown keys are errors, not typos to ignore."""
    path = Path(path)
    with path.open() as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ParameterError(f"{path}: scenario must be a JSON object")
    unknown = set(raw) - _SCENARIO_KEYS
    if unknown:
        raise ParameterError(f"{path}: unknown scenario keys {sorted(unknown)}")
    sig = raw.get("signals", {})
    bad = set(sig) - _SIGNAL_KEYS
    if bad:
        raise ParameterError(f"{path}: unknown signal keys {sorted(bad)}")
    geo = raw.get("geometry", {})
    bad = set(geo) - _GEOMETRY_KEYS
    if bad:
        raise ParameterError(f"{path}: unknown geometry keys {sorted(bad)}")
    kwargs = {k: v for k, v in raw.items() if k not in ("signals", "geometry")}
    from .thermal import GeometryRules
    return ScenarioConfig(signal_paths=dict(sig), geometry=GeometryRules(**geo), **kwargs)


def load_signals(config: ScenarioConfig, base_dir) -> Signals:
    """Load the signal files a scenario names, relative to its directory."""
    base = Path(base_dir)
    paths = config.signal_paths

    def load(key, units, required):
        p = paths.get(key)
        if p is None:
            if required:
                raise SignalError(f"scenario is missing the {key} signal")
            return None
        return load_signal(base / p, units)

    fm = config.service == "fluctuation_mitigation"
    return Signals(
        outdoor=load("outdoor_c", "c", required=True),
        solar=load("solar_wm2", "wm2", required=False),
        load=load("load_w", "w", required=fm),
        wind=load("wind_w", "w", required=fm),
        regd=load("regd_pu", "pu", required=not fm),
    )


# -- traces ----------------------------------------------------------------

def _frame(trace: SimTrace, per_unit: bool) -> pd.DataFrame:
    cols = {
        "time_s": trace.time_s,
        "target_w": trace.target_w,
        "agg_w": trace.agg_w,
        "tie_w": trace.tie_w,
        "p_star": trace.p_star,
        "locked_on_w": trace.locked_on_w,
        "locked_off_w": trace.locked_off_w,
        "available_w": trace.available_w,
    }
    if per_unit:
        width = max(4, len(str(int(trace.unit_ids.max()))) if trace.n_units else 4)
        for j, uid in enumerate(trace.unit_ids):
            cols[f"s_{uid:0{width}d}"] = trace.s[:, j].astype(np.int8)
        for j, uid in enumerate(trace.unit_ids):
            cols[f"t_air_c_{uid:0{width}d}"] = trace.t_air_c[:, j]
        for j, uid in enumerate(trace.unit_ids):
            cols[f"soa_{uid:0{width}d}"] = trace.soa[:, j]
    return pd.DataFrame(cols)


def write_trace(trace: SimTrace, out_dir, per_unit: bool = False) -> Path:
    """Write trace.csv and run_summary.json into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _frame(trace, per_unit).to_csv(out / "trace.csv", index=False)
    summary = {
        "config": trace.config.to_dict(),
        "n_steps": trace.n_steps,
        "n_units": trace.n_units,
        "unit_ids": trace.unit_ids.tolist(),
        "per_unit": per_unit,
        "columns": list(AGG_COLUMNS),
    }
    write_json(summary, out / "run_summary.json")
    return out


def read_trace(trace_dir) -> SimTrace:
    """Rebuild a SimTrace from a trace directory.

    Traces written without per-unit columns come back with empty per-unit
    arrays; per-unit metrics are unavailable for them.
    """
    trace_dir = Path(trace_dir)
    with (trace_dir / "run_summary.json").open() as fh:
        summary = json.load(fh)
    config = ScenarioConfig.from_dict(summary["config"])
    df = pd.read_csv(trace_dir / "trace.csv", float_precision="round_trip")
    missing = [c for c in AGG_COLUMNS if c not in df.columns]
    if missing:
        raise SignalError(f"{trace_dir}: trace.csv lacks columns {missing}")

    unit_ids = np.asarray(summary["unit_ids"], dtype=int)
    n_steps = len(df)
    if summary.get("per_unit"):
        width = max(4, len(str(int(unit_ids.max()))) if len(unit_ids) else 4)
        s = np.column_stack([df[f"s_{u:0{width}d}"].to_numpy(dtype=bool)
                             for u in unit_ids]) if len(unit_ids) else np.empty((n_steps, 0), bool)
        t_air = np.column_stack([df[f"t_air_c_{u:0{width}d}"].to_numpy()
                                 for u in unit_ids]) if len(unit_ids) else np.empty((n_steps, 0))
        soa = np.column_stack([df[f"soa_{u:0{width}d}"].to_numpy()
                               for u in unit_ids]) if len(unit_ids) else np.empty((n_steps, 0))
    else:
        s = np.empty((n_steps, 0), dtype=bool)
        t_air = np.empty((n_steps, 0))
        soa = np.empty((n_steps, 0))

    return SimTrace(
        config=config,
        time_s=df["time_s"].to_numpy(dtype=np.int64),
        target_w=df["target_w"].to_numpy(),
        agg_w=df["agg_w"].to_numpy(),
        tie_w=df["tie_w"].to_numpy(),
        p_star=df["p_star"].to_numpy(),
        locked_on_w=df["locked_on_w"].to_numpy(),
        locked_off_w=df["locked_off_w"].to_numpy(),
        available_w=df["available_w"].to_numpy(),
        unit_ids=unit_ids,
        s=s,
        t_air_c=t_air,
        soa=soa,
    )


# -- companions ------------------------------------------------------------

def write_uncontrolled(time_s, agg_w, tie_w, counts, out_dir) -> None:
    """Persist the thermostat reference next to a trace.

    ``counts`` is the (days, units) switching matrix, or None when the
    run is shorter than a day.
    """
    out = Path(out_dir)
    pd.DataFrame({"time_s": np.asarray(time_s, dtype=np.int64),
                  "agg_w": agg_w, "tie_w": tie_w}).to_csv(
        out / "uncontrolled.csv", index=False)
    if counts is not None:
        counts = np.asarray(counts, dtype=int)
        days, units = np.divmod(np.arange(counts.size), counts.shape[1])
        pd.DataFrame({"day": days, "unit": units,
                      "cycles": counts.ravel()}).to_csv(
            out / "uncontrolled_switching.csv", index=False)


def read_uncontrolled(trace_dir):
    """Load the thermostat reference; returns (tie_w, counts) with Nones."""
    trace_dir = Path(trace_dir)
    tie = counts = None
    unc = trace_dir / "uncontrolled.csv"
    if unc.exists():
        tie = pd.read_csv(unc, float_precision="round_trip")["tie_w"].to_numpy()
    sw = trace_dir / "uncontrolled_switching.csv"
    if sw.exists():
        df = pd.read_csv(sw)
        n_days = int(df["day"].max()) + 1
        n_units = int(df["unit"].max()) + 1
        counts = df["cycles"].to_numpy(dtype=int).reshape(n_days, n_units)
    return tie, counts


def write_json(obj: dict, path) -> None:
    """Deterministic JSON: sorted keys, repr floats, no timestamps."""
    with Path(path).open("w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_json(path) -> dict:
    with Path(path).open() as fh:
        return json.load(fh)
