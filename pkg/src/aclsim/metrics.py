"""Run statistics: fluctuation rate, switching counts, comfort spread, RMSE.

Everything here recomputes from a trace, so a persisted run and a live one
report identical numbers.  Warm-up handling: series are computed over the
full horizon; scalar summaries (RMSE, rate bases) drop the warm-up painted
into the trace config, because the first simulated hour still carries the
arbitrary initial temperatures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .engine import SimTrace
from .errors import ParameterError

SECONDS_PER_DAY = 86400


def fluctuation_rate(series_w: np.ndarray, window_s: float, dt_s: float,
                     base_w: float | None = None) -> np.ndarray:
    """Sliding peak-to-peak swing of a power series, relative to a base.

    For every window position the swing is (max - min) within the window;
    the base defaults to the series mean over the whole horizon.  Returned
    length is ``len(series) - window/dt + 1``.
    """
    series_w = np.asarray(series_w, dtype=float)
    if window_s <= 0 or dt_s <= 0:
        raise ParameterError("window_s and dt_s must be positive")
    m = window_s / dt_s
    if abs(m - round(m)) > 1e-9:
        raise ParameterError("window_s must be a multiple of dt_s")
    m = int(round(m))
    if m > series_w.size:
        raise ParameterError("window longer than the series")
    if base_w is None:
        base_w = float(series_w.mean())
    if abs(base_w) < 1e-12:
        raise ParameterError("fluctuation base is zero")
    win = sliding_window_view(series_w, m)
    return (win.max(axis=1) - win.min(axis=1)) / base_w


def daily_on_counts(s: np.ndarray, dt_s: float) -> np.ndarray:
    """Off-to-on transitions per unit per full day; shape (days, units).

    A transition recorded at step k happened at time k*dt; days are
    aligned to the simulation start and a trailing partial day is dropped.
    """
    s = np.asarray(s, dtype=bool)
    n_days = int(s.shape[0] * dt_s) // SECONDS_PER_DAY
    if n_days < 1:
        raise ParameterError("switching counts need at least one full day")
    switched_on = s[1:] & ~s[:-1]
    t = (np.arange(1, s.shape[0]) * dt_s).astype(np.int64)
    counts = np.zeros((n_days, s.shape[1]), dtype=int)
    for d in range(n_days):
        rows = (t >= d * SECONDS_PER_DAY) & (t < (d + 1) * SECONDS_PER_DAY)
        counts[d] = switched_on[rows].sum(axis=0)
    return counts


def switching_cycles(trace: SimTrace, unit_id: int) -> np.ndarray:
    """Daily switching cycles for one unit of a trace."""
    col = int(np.nonzero(trace.unit_ids == unit_id)[0][0])
    return daily_on_counts(trace.s[:, [col]], trace.config.dt_s)[:, 0]


@dataclass(frozen=True)
class SoaStats:
    avg: np.ndarray
    lo: np.ndarray
    hi: np.ndarray


def soa_stats(trace: SimTrace) -> SoaStats:
    """Fleet average and envelope of the unclamped comfort coordinate."""
    return SoaStats(avg=trace.soa.mean(axis=1),
                    lo=trace.soa.min(axis=1),
                    hi=trace.soa.max(axis=1))


def tracking_rmse(trace: SimTrace) -> float:
    """RMS of (aggregate - target) after warm-up."""
    keep = trace.time_s >= trace.config.warmup_s
    if not keep.any():
        raise ParameterError("no samples after warm-up")
    err = trace.agg_w[keep] - trace.target_w[keep]
    return float(np.sqrt(np.mean(err * err)))


@dataclass
class MetricsReport:
    """Structured per-run summary; every series is a plain list for JSON."""

    dt_s: int
    warmup_s: int
    window_s: float
    n_steps: int
    n_units: int
    tracking_rmse_w: float
    avg_soa: list | None
    soa_lo: list | None
    soa_hi: list | None
    locked_on_mean_w: float
    locked_off_mean_w: float
    available_mean_w: float
    fluctuation_controlled: list | None
    fluctuation_uncontrolled: list | None
    switching_per_unit_day: list | None
    switching_hist: list | None
    uncontrolled_switching_per_unit_day: list | None
    uncontrolled_switching_hist: list | None

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        return cls(**d)


def _hist(counts: np.ndarray) -> list:
    return np.bincount(counts.ravel()).tolist()


def build_report(trace: SimTrace, uncontrolled_tie_w: np.ndarray | None = None,
                 uncontrolled_counts: np.ndarray | None = None,
                 window_s: float = 600.0) -> MetricsReport:
    """Assemble the standard report for one run.

    ``uncontrolled_tie_w`` enables the fluctuation-rate comparison (only
    meaningful for mitigation runs); ``uncontrolled_counts`` is the
    (days, units) switching matrix of the thermostat reference.
    """
    cfg = trace.config
    keep = trace.time_s >= cfg.warmup_s

    fluct_c = fluct_u = None
    if np.isfinite(trace.tie_w).all() and trace.n_steps:
        tie = trace.tie_w[keep]
        fluct_c = fluctuation_rate(tie, window_s, cfg.dt_s).tolist()
        if uncontrolled_tie_w is not None:
            unc = np.asarray(uncontrolled_tie_w)[keep]
            fluct_u = fluctuation_rate(unc, window_s, cfg.dt_s).tolist()

    # Per-unit metrics need the per-unit blocks; a trace reloaded from a
    # file written without them reports these as null.
    has_units = trace.s.shape[1] > 0
    switching = hist = None
    if has_units and int(trace.n_steps * cfg.dt_s) >= SECONDS_PER_DAY:
        counts = daily_on_counts(trace.s, cfg.dt_s)
        switching = counts.tolist()
        hist = _hist(counts)

    unc_switching = unc_hist = None
    if uncontrolled_counts is not None:
        uncontrolled_counts = np.asarray(uncontrolled_counts, dtype=int)
        unc_switching = uncontrolled_counts.tolist()
        unc_hist = _hist(uncontrolled_counts)

    stats = soa_stats(trace) if has_units else None
    return MetricsReport(
        dt_s=cfg.dt_s,
        warmup_s=cfg.warmup_s,
        window_s=window_s,
        n_steps=trace.n_steps,
        n_units=trace.n_units,
        tracking_rmse_w=tracking_rmse(trace),
        avg_soa=stats.avg.tolist() if stats else None,
        soa_lo=stats.lo.tolist() if stats else None,
        soa_hi=stats.hi.tolist() if stats else None,
        locked_on_mean_w=float(trace.locked_on_w[keep].mean()),
        locked_off_mean_w=float(trace.locked_off_w[keep].mean()),
        available_mean_w=float(trace.available_w[keep].mean()),
        fluctuation_controlled=fluct_c,
        fluctuation_uncontrolled=fluct_u,
        switching_per_unit_day=switching,
        switching_hist=hist,
        uncontrolled_switching_per_unit_day=unc_switching,
        uncontrolled_switching_hist=unc_hist,
    )
