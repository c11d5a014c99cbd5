"""Fleet power targets for the two grid services.

Fluctuation mitigation: the tie-line draw of the feeder is its load plus
the fleet baseline minus local wind generation.  A first-order low-pass
filter produces the version of that tie line the grid would like to see;
the fleet is asked to absorb the difference, so its target is

    target = baseline + lowpass(tie) - tie

Frequency regulation: the fleet follows a fast dispatch command around its
baseline.  Positive command means more generation is wanted, so the fleet
sheds load:

    target = baseline - command * capacity

The baseline itself is estimated by running a shadow copy of the same
fleet, same seed and weather, under plain thermostats, and averaging its
draw into hourly bins.  The estimate does not depend on the bidding knob,
so one shadow run serves every controlled run of that fleet and day.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SignalError
from .fleet import FleetArrays, simulate_thermostat


@dataclass(frozen=True)
class PowerBalanceInputs:
    """One cycle of the feeder power balance, all in watts."""

    p_wind_w: float
    p_load_w: float
    p_ac_base_w: float
    p_ac_w: float

    def tie_controlled_w(self) -> float:
        return tie_line_power(self.p_ac_w, self.p_load_w, self.p_wind_w)

    def tie_uncontrolled_w(self) -> float:
        return tie_line_power(self.p_ac_base_w, self.p_load_w, self.p_wind_w)


def tie_line_power(p_ac_w, p_load_w, p_wind_w):
    """Net import on the tie line; broadcasts over arrays."""
    return np.asarray(p_ac_w) + np.asarray(p_load_w) - np.asarray(p_wind_w)


def lpf_alpha(tau_s: float, dt_s: float) -> float:
    """Smoothing weight of the discrete first-order filter.

    y[k] = alpha * y[k-1] + (1 - alpha) * x[k],  alpha = tau / (tau + dt).

    Zero tau passes the input through; alpha approaches one as the filter
    slows relative to the cycle but never reaches it.
    """
    if tau_s < 0:
        raise ParameterError("tau_s must be non-negative")
    if dt_s <= 0:
        raise ParameterError("dt_s must be positive")
    return tau_s / (tau_s + dt_s)


@dataclass(frozen=True)
class LpfState:
    alpha: float
    prev_w: float

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise ParameterError("alpha must lie in [0, 1)")


def lpf_step(state: LpfState, x_w: float) -> tuple[float, LpfState]:
    y = state.alpha * state.prev_w + (1.0 - state.alpha) * x_w
    return y, LpfState(alpha=state.alpha, prev_w=y)


def fm_target(p_ac_base_w, p_lpf_w, p_raw_w):
    """Mitigation target: baseline plus smoothed-minus-raw tie line."""
    return np.asarray(p_ac_base_w) + np.asarray(p_lpf_w) - np.asarray(p_raw_w)


def reg_target(p_ac_base_w, reg_command, capacity_w: float):
    """Regulation target around the baseline, generator sign convention."""
    if capacity_w < 0:
        raise ParameterError("capacity_w must be non-negative")
    cmd = np.asarray(reg_command, dtype=float)
    if cmd.size and np.max(np.abs(cmd)) > 1.0:
        raise SignalError("regulation command must lie in [-1, 1]")
    return np.asarray(p_ac_base_w) - cmd * capacity_w


def hourly_mean(power_w: np.ndarray, dt_s: float) -> np.ndarray:
    """Average a per-cycle power series into hourly bins.

    A final partial hour is averaged over the samples it has and flagged
    with a warning, since a bin built from a sliver of data is a weak
    baseline estimate.
    """
    power_w = np.asarray(power_w, dtype=float)
    if power_w.size == 0:
        return np.empty(0)
    per_hour = int(round(3600.0 / dt_s))
    if per_hour <= 0 or abs(per_hour * dt_s - 3600.0) > 1e-9:
        raise ParameterError("dt_s must divide one hour")
    n_full = power_w.size // per_hour
    bins = [power_w[h * per_hour:(h + 1) * per_hour].mean() for h in range(n_full)]
    rem = power_w.size - n_full * per_hour
    if rem:
        warnings.warn(f"baseline bin for hour {n_full} averages only {rem} samples",
                      stacklevel=2)
        bins.append(power_w[n_full * per_hour:].mean())
    return np.array(bins)


def hold_hourly(profile_w: np.ndarray, n_steps: int, dt_s: float) -> np.ndarray:
    """Expand an hourly profile onto the cycle grid, held within each hour."""
    profile_w = np.asarray(profile_w, dtype=float)
    if n_steps == 0:
        return np.empty(0)
    if profile_w.size == 0:
        raise ParameterError("empty baseline profile")
    hours = np.minimum((np.arange(n_steps) * dt_s) // 3600, profile_w.size - 1)
    return profile_w[hours.astype(int)]


def estimate_baseline(fleet: FleetArrays, t_out_c: np.ndarray, solar_wm2: np.ndarray,
                      dt_s: float, deadband_c: float = 1.0) -> np.ndarray:
    """Hourly baseline draw of the fleet under plain thermostat control."""
    ref = simulate_thermostat(fleet, t_out_c, solar_wm2, dt_s, deadband_c)
    return hourly_mean(ref.agg_w, dt_s)
