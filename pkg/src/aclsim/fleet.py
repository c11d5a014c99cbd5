"""Fleet construction and the uncontrolled thermostat reference.

``sample_fleet`` draws a heterogeneous population of houses from a
:class:`FleetSpec` of per-parameter distributions, derives each envelope,
and initializes every unit at a random point inside its comfort band with
its lockout timer expired.  The same seed always reproduces the same fleet
bit for bit; the draws happen in a fixed parameter order, so adding
parameters to the end keeps earlier fleets stable.

:class:`FleetArrays` is the struct-of-arrays view the simulation loops run
on; the per-unit dataclasses exist for construction, inspection and the
scalar APIs.

``simulate_thermostat`` runs the identical fleet under a plain deadband
thermostat with no coordination.  Its aggregate power is the source of the
hourly baseline estimate and its switch trace is the uncontrolled reference
for switching statistics.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .agent import ComfortBand, SwitchState
from .errors import ParameterError
from .thermal import (GeometryRules, HouseParams, HouseSample, ThermalState,
                      derive_envelope, etp_coefficients, etp_advance, hysteresis)


@dataclass(frozen=True)
class Dist:
    """A sampling distribution: uniform on [a, b] or normal(mean=a, sd=b).

    Normal draws are rejected outside three standard deviations and
    re-drawn while non-positive, which keeps resistances and ratios
    physical without skewing the bulk of the distribution.
    """

    kind: str
    a: float
    b: float

    def __post_init__(self):
        if self.kind not in ("uniform", "normal"):
            raise ParameterError(f"unknown distribution kind {self.kind!r}")
        if self.kind == "uniform" and not self.a < self.b:
            raise ParameterError("uniform distribution needs a < b")
        if self.kind == "normal" and self.b < 0:
            raise ParameterError("normal distribution needs a non-negative sd")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "uniform":
            return rng.uniform(self.a, self.b, size=n)
        x = rng.normal(self.a, self.b, size=n)
        for _ in range(1000):
            bad = (np.abs(x - self.a) > 3.0 * self.b) | (x <= 0.0)
            if not bad.any():
                return x
            x[bad] = rng.normal(self.a, self.b, size=int(bad.sum()))
        raise ParameterError(f"could not draw positive samples from {self}")


@dataclass(frozen=True)
class FleetSpec:
    """Distributions for every sampled house parameter, plus lock lengths."""

    floor_area_m2: Dist = Dist("uniform", 88.0, 176.0)
    air_changes_per_h: Dist = Dist("normal", 0.5, 0.06)
    window_wall_ratio: Dist = Dist("normal", 0.15, 0.01)
    shgc: Dist = Dist("uniform", 0.22, 0.5)
    eer: Dist = Dist("uniform", 3.0, 4.0)
    r_roof: Dist = Dist("normal", 5.28, 0.70)
    r_wall: Dist = Dist("normal", 2.99, 0.35)
    r_floor: Dist = Dist("normal", 3.35, 0.35)
    r_window: Dist = Dist("normal", 0.38, 0.03)
    r_door: Dist = Dist("normal", 0.88, 0.07)
    t_desired_c: Dist = Dist("normal", 26.0, 0.5)
    band_above_c: Dist = Dist("uniform", 2.0, 3.0)
    band_below_c: Dist = Dist("uniform", 2.0, 3.0)
    lock_on_s: float = 300.0
    lock_off_s: float = 300.0

    def __post_init__(self):
        if self.lock_on_s <= 0 or self.lock_off_s <= 0:
            raise ParameterError("lock durations must be positive")


def default_fleet_spec() -> FleetSpec:
    """The stock residential population used by the bundled scenarios."""
    return FleetSpec()


@dataclass
class AclUnit:
    """One air conditioner: envelope, comfort band, switch and air state."""

    unit_id: int
    house: HouseParams
    band: ComfortBand
    switch: SwitchState
    thermal: ThermalState


# Draw order is part of the reproducibility contract; append only.
_DRAW_ORDER = ("floor_area_m2", "air_changes_per_h", "window_wall_ratio", "shgc",
               "eer", "r_roof", "r_wall", "r_floor", "r_window", "r_door",
               "t_desired_c", "band_above_c", "band_below_c")


def sample_fleet(spec: FleetSpec, n: int, seed: int,
                 rules: GeometryRules = GeometryRules()) -> list[AclUnit]:
    """Draw ``n`` units; identical (spec, n, seed, rules) give identical fleets."""
    if n <= 0:
        raise ParameterError("fleet size must be positive")
    rng = np.random.default_rng(seed)
    draws = {name: getattr(spec, name).sample(rng, n) for name in _DRAW_ORDER}
    t_desired = draws["t_desired_c"]
    t_max = t_desired + draws["band_above_c"]
    t_min = t_desired - draws["band_below_c"]
    t_air0 = rng.uniform(t_min, t_max)

    units = []
    for i in range(n):
        sample = HouseSample(
            floor_area_m2=draws["floor_area_m2"][i],
            air_changes_per_h=draws["air_changes_per_h"][i],
            window_wall_ratio=draws["window_wall_ratio"][i],
            shgc=draws["shgc"][i],
            eer=draws["eer"][i],
            r_roof=draws["r_roof"][i],
            r_wall=draws["r_wall"][i],
            r_floor=draws["r_floor"][i],
            r_window=draws["r_window"][i],
            r_door=draws["r_door"][i],
            t_desired_c=t_desired[i],
        )
        # Start on when warmer than desired, as a fresh thermostat would
        # decide; the timer starts expired so nobody is locked at t=0.
        s0 = bool(t_air0[i] > t_desired[i])
        units.append(AclUnit(
            unit_id=i,
            house=derive_envelope(sample, rules),
            band=ComfortBand(t_desired_c=t_desired[i], t_max_c=t_max[i], t_min_c=t_min[i]),
            switch=SwitchState(s=s0, elapsed_s=spec.lock_on_s if s0 else spec.lock_off_s,
                               lock_on_s=spec.lock_on_s, lock_off_s=spec.lock_off_s),
            thermal=ThermalState(t_air_c=float(t_air0[i]), t_mass_c=float(t_air0[i])),
        ))
    return units


@dataclass
class FleetArrays:
    """Struct-of-arrays fleet view; the mutable tail is the dynamic state."""

    unit_id: np.ndarray
    ua_w_k: np.ndarray
    hm_w_k: np.ndarray
    c_air_j_k: np.ndarray
    c_mass_j_k: np.ndarray
    q_cool_rated_w: np.ndarray
    p_rated_w: np.ndarray
    solar_aperture_m2: np.ndarray   # shgc * window area
    internal_gain_w: np.ndarray
    t_desired_c: np.ndarray
    t_max_c: np.ndarray
    t_min_c: np.ndarray
    lock_on_s: np.ndarray
    lock_off_s: np.ndarray
    t_air_c: np.ndarray
    t_mass_c: np.ndarray
    s: np.ndarray
    elapsed_s: np.ndarray

    @property
    def size(self) -> int:
        return len(self.unit_id)

    @classmethod
    def from_units(cls, units: list[AclUnit]) -> "FleetArrays":
        def arr(fn, dtype=float):
            return np.array([fn(u) for u in units], dtype=dtype)

        return cls(
            unit_id=arr(lambda u: u.unit_id, int),
            ua_w_k=arr(lambda u: u.house.ua_w_k),
            hm_w_k=arr(lambda u: u.house.hm_w_k),
            c_air_j_k=arr(lambda u: u.house.c_air_j_k),
            c_mass_j_k=arr(lambda u: u.house.c_mass_j_k),
            q_cool_rated_w=arr(lambda u: u.house.q_cool_rated_w),
            p_rated_w=arr(lambda u: u.house.p_rated_w),
            solar_aperture_m2=arr(lambda u: u.house.shgc * u.house.window_area_m2),
            internal_gain_w=arr(lambda u: u.house.internal_gain_w),
            t_desired_c=arr(lambda u: u.band.t_desired_c),
            t_max_c=arr(lambda u: u.band.t_max_c),
            t_min_c=arr(lambda u: u.band.t_min_c),
            lock_on_s=arr(lambda u: u.switch.lock_on_s),
            lock_off_s=arr(lambda u: u.switch.lock_off_s),
            t_air_c=arr(lambda u: u.thermal.t_air_c),
            t_mass_c=arr(lambda u: u.thermal.t_mass_c),
            s=arr(lambda u: u.switch.s, bool),
            elapsed_s=arr(lambda u: u.switch.elapsed_s),
        )

    def copy(self) -> "FleetArrays":
        return replace(self, **{f: getattr(self, f).copy() for f in self.__dataclass_fields__})


@dataclass(frozen=True)
class UncontrolledTrace:
    """Thermostat-only reference run."""

    time_s: np.ndarray
    agg_w: np.ndarray
    s: np.ndarray        # (steps, units)


def simulate_thermostat(fleet: FleetArrays, t_out_c: np.ndarray, solar_wm2: np.ndarray,
                        dt_s: float, deadband_c: float = 1.0) -> UncontrolledTrace:
    """Run the fleet on plain thermostats, no coordination, no lockout.

    The thermostat decides from the start-of-cycle air temperature and the
    compressor holds for the whole cycle, the same actuation convention as
    the coordinated run.  The caller's fleet is not modified.
    """
    if deadband_c <= 0:
        raise ParameterError("deadband must be positive")
    fa = fleet.copy()
    n_steps = len(t_out_c)
    co = etp_coefficients(fa.ua_w_k, fa.hm_w_k, fa.c_air_j_k, fa.c_mass_j_k, dt_s)

    agg = np.empty(n_steps)
    s_trace = np.empty((n_steps, fa.size), dtype=bool)
    s = fa.s.copy()
    for k in range(n_steps):
        s = hysteresis(fa.t_air_c, fa.t_desired_c, deadband_c, s)
        s_trace[k] = s
        agg[k] = fa.p_rated_w @ s
        q_air = (fa.solar_aperture_m2 * solar_wm2[k] + fa.internal_gain_w
                 - np.where(s, fa.q_cool_rated_w, 0.0))
        fa.t_air_c, fa.t_mass_c = etp_advance(co, fa.t_air_c, fa.t_mass_c,
                                              t_out_c[k], q_air)
    return UncontrolledTrace(time_s=np.arange(n_steps) * float(dt_s), agg_w=agg, s=s_trace)
