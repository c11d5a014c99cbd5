"""Discrete-time coordination loop.

One control cycle, in order:

1. classify every unit's lockout state and read its start-of-cycle air
   temperature (bids always describe the pre-actuation situation, so
   commands take effect one cycle after the temperatures they were based
   on);
2. form bids: clamped comfort coordinate plus the state offset;
3. look up the cycle's target (targets depend only on the input signals
   and the baseline, so both services precompute the whole series);
4. stack the demand curve, clear the price;
5. every unit applies the price locally, lockout overriding, and the
   elapsed timers update exactly once;
6. integrate house thermals over the cycle with the new switch states.

The trace records, per cycle: the target, aggregate and tie-line power,
the cleared price, locked and available rated power at bid time, and per
unit the switch state, air temperature and unclamped comfort coordinate
as seen by that cycle's bids.

``run_scenario`` is deterministic: it draws no random numbers, so a fleet
plus fixed signals always reproduce the same trace bit for bit.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .agent import LockState, bid_prices, clearing_response, advance_timers, \
    lock_codes, offset_table, soa_values
from .errors import ParameterError, SignalError
from .fleet import (AclUnit, FleetArrays, FleetSpec, UncontrolledTrace,
                    default_fleet_spec, sample_fleet, simulate_thermostat)
from .market import build_demand_curve, clear
from .signals import SignalSeries, clear_sky_solar, resample_to_grid
from .target_signal import (LpfState, fm_target, hold_hourly, hourly_mean,
                            lpf_alpha, lpf_step, reg_target)
from .thermal import GeometryRules, etp_advance, etp_coefficients

SERVICE_FM = "fluctuation_mitigation"
SERVICE_REG = "frequency_regulation"


@dataclass(frozen=True)
class ScenarioConfig:
    service: str
    dt_s: int
    horizon_s: int
    rho: float
    fleet_size: int
    seed: int
    tau_s: float = 1800.0
    capacity_w: float = 0.0
    warmup_s: int = 3600
    signal_paths: dict = field(default_factory=dict)
    geometry: GeometryRules = field(default_factory=GeometryRules)

    def __post_init__(self):
        if self.service not in (SERVICE_FM, SERVICE_REG):
            raise ParameterError(f"unknown service {self.service!r}")
        if self.dt_s <= 0:
            raise ParameterError("dt_s must be positive")
        if self.horizon_s < 0 or self.horizon_s % self.dt_s:
            raise ParameterError("horizon_s must be a non-negative multiple of dt_s")
        if not 0.0 <= self.rho <= 1.0:
            raise ParameterError("rho must lie in [0, 1]")
        if self.fleet_size <= 0:
            raise ParameterError("fleet_size must be positive")
        if self.tau_s < 0 or self.capacity_w < 0 or self.warmup_s < 0:
            raise ParameterError("tau_s, capacity_w, warmup_s must be non-negative")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["geometry"] = asdict(self.geometry)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        d = dict(d)
        geo = d.pop("geometry", {})
        return cls(geometry=GeometryRules(**geo), **d)


@dataclass
class Signals:
    """In-memory inputs for one run; the CLI fills this from files."""

    outdoor: SignalSeries
    solar: SignalSeries | None = None
    load: SignalSeries | None = None
    wind: SignalSeries | None = None
    regd: SignalSeries | None = None
    baseline_hourly_w: np.ndarray | None = None


@dataclass
class SimTrace:
    """Everything one coordinated run produced."""

    config: ScenarioConfig
    time_s: np.ndarray
    target_w: np.ndarray
    agg_w: np.ndarray
    tie_w: np.ndarray            # NaN for regulation runs (no feeder balance)
    p_star: np.ndarray
    locked_on_w: np.ndarray
    locked_off_w: np.ndarray
    available_w: np.ndarray
    unit_ids: np.ndarray
    s: np.ndarray                # (steps, units)
    t_air_c: np.ndarray          # (steps, units), start-of-cycle
    soa: np.ndarray              # (steps, units), unclamped

    @property
    def n_steps(self) -> int:
        return len(self.time_s)

    @property
    def n_units(self) -> int:
        return len(self.unit_ids)


def _target_series(config: ScenarioConfig, signals: Signals, n_steps: int,
                   base_w: np.ndarray) -> tuple[np.ndarray, np.ndarray | None]:
    """Per-cycle target, plus the raw tie-line component for mitigation."""
    if config.service == SERVICE_REG:
        if signals.regd is None:
            raise SignalError("frequency_regulation needs a regd signal")
        cmd = resample_to_grid(signals.regd, config.dt_s, n_steps, "regd")
        return reg_target(base_w, cmd, config.capacity_w), None

    if signals.load is None or signals.wind is None:
        raise SignalError("fluctuation_mitigation needs load and wind signals")
    load = resample_to_grid(signals.load, config.dt_s, n_steps, "load")
    wind = resample_to_grid(signals.wind, config.dt_s, n_steps, "wind")
    raw = base_w + load - wind
    smooth = np.empty(n_steps)
    if n_steps:
        state = LpfState(alpha=lpf_alpha(config.tau_s, config.dt_s), prev_w=float(raw[0]))
        for k in range(n_steps):
            smooth[k], state = lpf_step(state, float(raw[k]))
    return fm_target(base_w, smooth, raw), load - wind


def run_scenario(config: ScenarioConfig, fleet: list[AclUnit] | FleetArrays,
                 signals: Signals) -> SimTrace:
    """Run one coordinated scenario; the caller's fleet is left untouched."""
    fa = FleetArrays.from_units(fleet) if isinstance(fleet, list) else fleet.copy()
    n = fa.size
    dt = config.dt_s
    n_steps = config.horizon_s // dt
    time_s = np.arange(n_steps, dtype=np.int64) * dt

    t_out = resample_to_grid(signals.outdoor, dt, n_steps, "outdoor")
    if signals.solar is not None:
        solar = resample_to_grid(signals.solar, dt, n_steps, "solar")
    else:
        solar = clear_sky_solar(time_s)
    if signals.baseline_hourly_w is None:
        raise SignalError("run_scenario needs a baseline profile (see execute)")
    base = hold_hourly(signals.baseline_hourly_w, n_steps, dt)

    target, feeder = _target_series(config, signals, n_steps, base)

    co = etp_coefficients(fa.ua_w_k, fa.hm_w_k, fa.c_air_j_k, fa.c_mass_j_k, dt)
    offsets = offset_table(config.rho)

    agg = np.empty(n_steps)
    tie = np.full(n_steps, np.nan)
    p_star = np.empty(n_steps)
    locked_on = np.empty(n_steps)
    locked_off = np.empty(n_steps)
    available = np.empty(n_steps)
    s_rec = np.empty((n_steps, n), dtype=bool)
    t_air_rec = np.empty((n_steps, n))
    soa_rec = np.empty((n_steps, n))

    for k in range(n_steps):
        codes = lock_codes(fa.s, fa.elapsed_s, fa.lock_on_s, fa.lock_off_s)
        raw_soa = soa_values(fa.t_air_c, fa.t_desired_c, fa.t_max_c, fa.t_min_c)
        prices = np.clip(raw_soa, -1.0, 1.0) + offsets[codes]

        by_state = np.bincount(codes, weights=fa.p_rated_w, minlength=4)
        curve = build_demand_curve(prices, fa.p_rated_w, fa.unit_id)
        result = clear(curve, float(target[k]),
                       locked_on_w=by_state[LockState.LOCK_ON],
                       locked_off_w=by_state[LockState.LOCK_OFF])

        new_s = clearing_response(prices, codes, result.p_star)
        fa.elapsed_s = advance_timers(fa.s, new_s, fa.elapsed_s, dt)
        fa.s = new_s

        t_air_rec[k] = fa.t_air_c
        soa_rec[k] = raw_soa
        s_rec[k] = new_s
        p_star[k] = result.p_star
        locked_on[k] = by_state[LockState.LOCK_ON]
        locked_off[k] = by_state[LockState.LOCK_OFF]
        available[k] = by_state[LockState.ON] + by_state[LockState.OFF]
        agg[k] = fa.p_rated_w @ new_s

        q_air = (fa.solar_aperture_m2 * solar[k] + fa.internal_gain_w
                 - np.where(new_s, fa.q_cool_rated_w, 0.0))
        fa.t_air_c, fa.t_mass_c = etp_advance(co, fa.t_air_c, fa.t_mass_c, t_out[k], q_air)

    if feeder is not None:
        tie = agg + feeder

    return SimTrace(config=config, time_s=time_s, target_w=target, agg_w=agg,
                    tie_w=tie, p_star=p_star, locked_on_w=locked_on,
                    locked_off_w=locked_off, available_w=available,
                    unit_ids=fa.unit_id.copy(), s=s_rec, t_air_c=t_air_rec,
                    soa=soa_rec)


@dataclass
class RunOutputs:
    """A controlled trace bundled with its thermostat reference."""

    trace: SimTrace
    uncontrolled: UncontrolledTrace
    baseline_hourly_w: np.ndarray
    uncontrolled_tie_w: np.ndarray   # NaN for regulation runs


def execute(config: ScenarioConfig, signals: Signals,
            fleet: list[AclUnit] | FleetArrays | None = None,
            spec: FleetSpec | None = None) -> RunOutputs:
    """Sample (or accept) a fleet, estimate its baseline, run the scenario.

    The shadow thermostat run that produces the baseline also serves as
    the uncontrolled reference for metrics, so it is simulated once here
    and carried alongside the trace.
    """
    if fleet is None:
        fleet = sample_fleet(spec or default_fleet_spec(), config.fleet_size,
                             config.seed, config.geometry)
    fa = FleetArrays.from_units(fleet) if isinstance(fleet, list) else fleet.copy()

    dt = config.dt_s
    n_steps = config.horizon_s // dt
    t_out = resample_to_grid(signals.outdoor, dt, n_steps, "outdoor")
    if signals.solar is not None:
        solar = resample_to_grid(signals.solar, dt, n_steps, "solar")
    else:
        solar = clear_sky_solar(np.arange(n_steps, dtype=np.int64) * dt)

    uncontrolled = simulate_thermostat(fa, t_out, solar, dt)
    baseline = hourly_mean(uncontrolled.agg_w, dt) if n_steps else np.empty(0)

    run_signals = replace(signals, baseline_hourly_w=baseline)
    trace = run_scenario(config, fa, run_signals)

    if config.service == SERVICE_FM and n_steps:
        load = resample_to_grid(signals.load, dt, n_steps, "load")
        wind = resample_to_grid(signals.wind, dt, n_steps, "wind")
        unc_tie = uncontrolled.agg_w + load - wind
    else:
        unc_tie = np.full(n_steps, np.nan)

    return RunOutputs(trace=trace, uncontrolled=uncontrolled,
                      baseline_hourly_w=baseline, uncontrolled_tie_w=unc_tie)
