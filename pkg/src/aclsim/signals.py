"""Time series plumbing and the bundled synthetic signal generators.

A :class:`SignalSeries` is a uniformly sampled series anchored at the
simulation start (t = 0), with integer-second cadence and an explicit unit
tag.  Supported unit tags: ``w`` (watts), ``c`` (degrees Celsius), ``wm2``
(W/m2) and ``pu`` (dimensionless, used by the regulation command, which
must stay inside [-1, 1]).

The generators below produce the stock test-day inputs: a diurnal outdoor
temperature, a clear-sky solar profile, a diurnal feeder load and a gusty
wind plant (both with band-limited noise), and a fast zero-mean regulation
command.  Noise is mean-reverting (an exactly discretized
Ornstein-Uhlenbeck recursion) so its bandwidth is set by a time constant
rather than by the sample rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SignalError

VALID_UNITS = ("w", "c", "wm2", "pu")


@dataclass(frozen=True)
class SignalSeries:
    name: str
    units: str
    cadence_s: int
    values: np.ndarray
    start_s: int = 0

    def __post_init__(self):
        if self.units not in VALID_UNITS:
            raise SignalError(f"unknown unit tag {self.units!r}; expected one of {VALID_UNITS}")
        if self.cadence_s <= 0:
            raise SignalError("cadence must be a positive number of seconds")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.ndim != 1:
            raise SignalError("a signal series is one-dimensional")
        if self.units == "pu" and self.values.size and np.max(np.abs(self.values)) > 1.0:
            raise SignalError("pu series must lie in [-1, 1]")

    @property
    def duration_s(self) -> int:
        return self.cadence_s * len(self.values)


def resample_to_grid(series: SignalSeries, dt_s: int, n_steps: int, label: str) -> np.ndarray:
    """Pick the series value at every control-cycle start.

    The series must be anchored at t = 0 and sampled at the cycle length
    or finer, with the cadence dividing the cycle; finer series are
    decimated by keeping every stride-th sample, no interpolation.
    """
    if series.start_s != 0:
        raise SignalError(f"{label}: series must start at t=0, not {series.start_s}s")
    if dt_s % series.cadence_s != 0:
        raise SignalError(
            f"{label}: cadence {series.cadence_s}s does not divide the {dt_s}s control cycle")
    stride = dt_s // series.cadence_s
    if n_steps == 0:
        return np.empty(0)
    needed = (n_steps - 1) * stride + 1
    if len(series.values) < needed:
        first_missing = ((len(series.values) + stride - 1) // stride) * dt_s
        raise SignalError(f"{label}: no sample at t={first_missing}s")
    return series.values[: needed: stride].copy()


def _ou_noise(rng: np.random.Generator, n: int, cadence_s: float, tau_s: float,
              sd: float) -> np.ndarray:
    """Stationary Ornstein-Uhlenbeck samples (exact discretization)."""
    if n == 0:
        return np.empty(0)
    phi = np.exp(-cadence_s / tau_s)
    innov_sd = sd * np.sqrt(1.0 - phi * phi)
    x = np.empty(n)
    x[0] = rng.normal(0.0, sd)
    shocks = rng.normal(0.0, innov_sd, size=n - 1)
    for k in range(1, n):
        x[k] = phi * x[k - 1] + shocks[k - 1]
    return x


def _smooth(x: np.ndarray, cadence_s: float, tau_s: float) -> np.ndarray:
    """Single-pole smoothing; models plant inertia at the sample scale."""
    if tau_s <= 0.0 or x.size == 0:
        return x
    alpha = tau_s / (tau_s + cadence_s)
    y = np.empty_like(x)
    y[0] = x[0]
    for k in range(1, len(x)):
        y[k] = alpha * y[k - 1] + (1.0 - alpha) * x[k]
    return y


def _n_samples(horizon_s: int, cadence_s: int) -> int:
    if horizon_s < 0 or cadence_s <= 0 or horizon_s % cadence_s:
        raise SignalError("horizon must be a non-negative multiple of the cadence")
    return horizon_s // cadence_s


def gen_outdoor_temperature(horizon_s: int, cadence_s: int = 60,
                            t_min_c: float = 24.5, t_max_c: float = 35.5,
                            coolest_hour: float = 5.0) -> SignalSeries:
    """Diurnal outdoor temperature: a sine with its trough before dawn."""
    n = _n_samples(horizon_s, cadence_s)
    t = np.arange(n) * cadence_s
    phase = 2.0 * np.pi * (t / 86400.0 - coolest_hour / 24.0)
    mid = 0.5 * (t_min_c + t_max_c)
    amp = 0.5 * (t_max_c - t_min_c)
    return SignalSeries("outdoor", "c", cadence_s, mid - amp * np.cos(phase))


def clear_sky_solar(t_s, peak_wm2: float = 800.0, sunrise_h: float = 6.0,
                    sunset_h: float = 20.0) -> np.ndarray:
    """Half-sine irradiance between sunrise and sunset, zero at night.

    With the default 06:00 to 20:00 day the peak lands at 13:00.
    """
    tod = np.asarray(t_s, dtype=float) % 86400.0
    rise, sset = sunrise_h * 3600.0, sunset_h * 3600.0
    up = (tod >= rise) & (tod <= sset)
    arg = np.pi * (tod - rise) / (sset - rise)
    return np.where(up, peak_wm2 * np.sin(arg), 0.0)


def gen_solar(horizon_s: int, cadence_s: int = 60, peak_wm2: float = 800.0) -> SignalSeries:
    n = _n_samples(horizon_s, cadence_s)
    t = np.arange(n) * cadence_s
    return SignalSeries("solar", "wm2", cadence_s, clear_sky_solar(t, peak_wm2))


def gen_load(horizon_s: int, cadence_s: int = 60, seed: int = 0,
             base_w: float = 2.5e6, swing_w: float = 0.7e6,
             noise_sd_w: float = 8.0e4, noise_tau_s: float = 600.0) -> SignalSeries:
    """Feeder load: morning-to-evening swell plus band-limited noise."""
    rng = np.random.default_rng(seed)
    n = _n_samples(horizon_s, cadence_s)
    t = np.arange(n) * cadence_s
    shape = 0.5 - 0.5 * np.cos(2.0 * np.pi * (t / 86400.0 - 7.0 / 24.0))
    load = base_w + swing_w * shape + _ou_noise(rng, n, cadence_s, noise_tau_s, noise_sd_w)
    return SignalSeries("load", "w", cadence_s, np.maximum(load, 0.0))


def gen_wind(horizon_s: int, cadence_s: int = 60, seed: int = 0,
             mean_w: float = 1.0e6, sd_w: float = 0.35e6,
             tau_s: float = 480.0, cap_w: float = 2.5e6,
             smooth_tau_s: float = 0.0,
             ripple_sd_w: float = 0.0, ripple_tau_s: float = 90.0,
             osc_amp_w: float = 0.0, osc_period_s: float = 1200.0) -> SignalSeries:
    """Wind plant output: mean-reverting gusts clipped to the plant limits.

    ``smooth_tau_s`` adds a single-pole rolloff on top of the gust noise
    (rotor and plant inertia); it attenuates the quoted ``sd_w`` somewhat.
    ``ripple_sd_w`` adds a second, faster mean-reverting component on top,
    for turbulence that survives the plant rolloff.  ``osc_amp_w`` adds a
    coherent oscillation at ``osc_period_s`` (farm-scale quasi-periodic
    output swings).
    """
    rng = np.random.default_rng(seed)
    n = _n_samples(horizon_s, cadence_s)
    gusts = _smooth(_ou_noise(rng, n, cadence_s, tau_s, sd_w), cadence_s, smooth_tau_s)
    if ripple_sd_w > 0.0:
        gusts = gusts + _ou_noise(rng, n, cadence_s, ripple_tau_s, ripple_sd_w)
    if osc_amp_w > 0.0:
        t = np.arange(n) * cadence_s
        gusts = gusts + osc_amp_w * np.sin(2.0 * np.pi * t / osc_period_s)
    return SignalSeries("wind", "w", cadence_s, np.clip(mean_w + gusts, 0.0, cap_w))


def gen_regd(horizon_s: int, cadence_s: int = 2, seed: int = 0,
             tau_s: float = 180.0, sd: float = 0.45) -> SignalSeries:
    """Fast regulation command: zero-mean, mean-reverting, inside [-1, 1]."""
    rng = np.random.default_rng(seed)
    n = _n_samples(horizon_s, cadence_s)
    x = np.clip(_ou_noise(rng, n, cadence_s, tau_s, sd), -1.0, 1.0)
    if n:
        x = np.clip(x - x.mean(), -1.0, 1.0)
    return SignalSeries("regd", "pu", cadence_s, x)
