"""Two-node house thermal model with exact per-cycle integration.

Each house is an indoor-air node coupled to a lumped building-mass node,
the classic equivalent-thermal-parameter circuit:

    c_air  * dT_air/dt  = ua * (T_out - T_air) + hm * (T_mass - T_air) + q_air
    c_mass * dT_mass/dt = hm * (T_air - T_mass) + q_mass

``q_air`` collects solar gain through the windows (irradiance times SHGC
times window area), a constant internal gain, and the cooling extracted
while the compressor runs.  ``q_mass`` is reserved for gains absorbed
directly by the structure; this model keeps it at zero.

``ua`` aggregates surface conduction plus infiltration, and ``hm`` couples
the air to the interior surfaces.  The geometry conventions that expand a
sampled parameter row into areas and capacitances live in
:class:`GeometryRules`.

Within one control cycle every coefficient is constant, so the node pair is
advanced with the closed-form solution of the 2x2 linear system.  That
discretization is exact and unconditionally stable for any step size, and
one step of ``dt`` equals two consecutive steps of ``dt/2`` to rounding
error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

# Volumetric heat capacity of room air: 1.2 kg/m3 times 1005 J/(kg K).
AIR_VOLUMETRIC_HEAT_J_M3K = 1206.0


@dataclass(frozen=True)
class GeometryRules:
    """Conventions that expand a sampled parameter row into an envelope.

    The house is a single-story box on a square footprint with a flat
    roof.  Gross wall area is the footprint perimeter times the ceiling
    height; windows are carved out of the walls by the window-wall ratio
    and one door is subtracted.  Cooling capacity is sized to hold the
    desired temperature at the design condition with a fixed oversizing
    margin, and the two heat capacities are set as multiples of the bare
    air capacity so the air node stays fast and the mass node slow.
    """

    ceiling_height_m: float = 2.5
    door_area_m2: float = 2.0
    interior_film_w_m2k: float = 8.3
    internal_gain_w: float = 200.0
    design_outdoor_c: float = 35.0
    design_solar_wm2: float = 800.0
    oversize_factor: float = 1.3
    c_air_scale: float = 3.0      # multiplies the bare air heat capacity
    c_mass_ratio: float = 10.0    # c_mass as a multiple of c_air

    def __post_init__(self):
        for name in ("ceiling_height_m", "interior_film_w_m2k", "oversize_factor",
                     "c_air_scale", "c_mass_ratio"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive")
        if self.door_area_m2 < 0 or self.internal_gain_w < 0:
            raise ParameterError("door area and internal gain must be non-negative")


@dataclass(frozen=True)
class HouseSample:
    """One raw parameter row for a house, before any derivation.

    Resistances are in m2*K/W, the EER is thermal watts removed per
    electrical watt, and ``t_desired_c`` is the occupant setpoint used to
    size the cooling plant.
    """

    floor_area_m2: float
    air_changes_per_h: float
    window_wall_ratio: float
    shgc: float
    eer: float
    r_roof: float
    r_wall: float
    r_floor: float
    r_window: float
    r_door: float
    t_desired_c: float

    def __post_init__(self):
        if self.floor_area_m2 <= 0:
            raise ParameterError("floor area must be positive")
        if self.air_changes_per_h < 0:
            raise ParameterError("air changes must be non-negative")
        if not 0 <= self.window_wall_ratio < 1:
            raise ParameterError("window-wall ratio must lie in [0, 1)")
        if not 0 <= self.shgc <= 1:
            raise ParameterError("SHGC must lie in [0, 1]")
        for name in ("r_roof", "r_wall", "r_floor", "r_window", "r_door"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive")


@dataclass(frozen=True)
class HouseParams:
    """Fully derived thermal description of one house."""

    floor_area_m2: float
    air_changes_per_h: float
    window_wall_ratio: float
    shgc: float
    eer: float
    r_roof: float
    r_wall: float
    r_floor: float
    r_window: float
    r_door: float
    window_area_m2: float
    ua_w_k: float          # envelope conductance incl. infiltration
    hm_w_k: float          # air to interior-mass coupling
    c_air_j_k: float
    c_mass_j_k: float
    q_cool_rated_w: float  # thermal watts removed at full output
    p_rated_w: float       # electrical draw while running
    internal_gain_w: float

    def __post_init__(self):
        for name in ("ua_w_k", "hm_w_k", "c_air_j_k", "c_mass_j_k",
                     "q_cool_rated_w", "p_rated_w"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive")
        if not 3.0 <= self.eer <= 4.0:
            raise ParameterError("EER outside the supported [3, 4] range")


@dataclass
class ThermalState:
    t_air_c: float
    t_mass_c: float


def derive_envelope(raw: HouseSample, rules: GeometryRules = GeometryRules()) -> HouseParams:
    """Expand one sampled row into a full :class:`HouseParams`.

    Surface conductances are area over resistance.  Infiltration adds
    ``air_changes * volume * volumetric_heat / 3600`` on top.  The cooling
    plant is sized to hold ``t_desired_c`` at the design outdoor
    temperature with full design solar on the windows, times the
    oversizing factor; the electrical rating divides that by the EER.
    """
    side = float(np.sqrt(raw.floor_area_m2))
    gross_wall = 4.0 * side * rules.ceiling_height_m
    window_area = raw.window_wall_ratio * gross_wall
    net_wall = gross_wall - window_area - rules.door_area_m2
    if net_wall <= 0:
        raise ParameterError("window and door area exceed the gross wall area")

    volume = raw.floor_area_m2 * rules.ceiling_height_m
    infiltration = raw.air_changes_per_h * volume * AIR_VOLUMETRIC_HEAT_J_M3K / 3600.0
    ua = (raw.floor_area_m2 / raw.r_roof
          + net_wall / raw.r_wall
          + raw.floor_area_m2 / raw.r_floor
          + window_area / raw.r_window
          + rules.door_area_m2 / raw.r_door
          + infiltration)

    # Interior film over the surfaces an occupant could touch: walls from
    # the inside, ceiling, floor slab.
    interior_area = net_wall + 2.0 * raw.floor_area_m2
    hm = rules.interior_film_w_m2k * interior_area

    c_air = rules.c_air_scale * volume * AIR_VOLUMETRIC_HEAT_J_M3K
    c_mass = rules.c_mass_ratio * c_air

    design_load = (ua * (rules.design_outdoor_c - raw.t_desired_c)
                   + raw.shgc * window_area * rules.design_solar_wm2
                   + rules.internal_gain_w)
    if design_load <= 0:
        raise ParameterError("design condition produces no cooling load")
    q_cool = rules.oversize_factor * design_load

    return HouseParams(
        floor_area_m2=raw.floor_area_m2,
        air_changes_per_h=raw.air_changes_per_h,
        window_wall_ratio=raw.window_wall_ratio,
        shgc=raw.shgc,
        eer=raw.eer,
        r_roof=raw.r_roof,
        r_wall=raw.r_wall,
        r_floor=raw.r_floor,
        r_window=raw.r_window,
        r_door=raw.r_door,
        window_area_m2=window_area,
        ua_w_k=ua,
        hm_w_k=hm,
        c_air_j_k=c_air,
        c_mass_j_k=c_mass,
        q_cool_rated_w=q_cool,
        p_rated_w=q_cool / raw.eer,
        internal_gain_w=rules.internal_gain_w,
    )


@dataclass(frozen=True)
class EtpCoefficients:
    """Closed-form propagator of the two-node circuit over a fixed step.

    Holds the elements of ``Ad = expm(A*dt)`` and ``Phi = integral of
    expm(A*s) ds`` so one cycle is four multiplies and adds per node.
    Every field broadcasts, so a whole fleet can share one instance.
    """

    dt_s: float
    ad00: np.ndarray
    ad01: np.ndarray
    ad10: np.ndarray
    ad11: np.ndarray
    ph00: np.ndarray
    ph01: np.ndarray
    ph10: np.ndarray
    ph11: np.ndarray
    ua_w_k: np.ndarray
    c_air_j_k: np.ndarray
    c_mass_j_k: np.ndarray


def etp_coefficients(ua, hm, c_air, c_mass, dt_s: float) -> EtpCoefficients:
    """Discretize the circuit exactly over ``dt_s``.

    The system matrix has two distinct real negative eigenvalues for any
    positive parameters (its discriminant is bounded below by the coupling
    term), so the matrix exponential is evaluated spectrally without
    special cases.
    """
    if dt_s <= 0:
        raise ParameterError("dt_s must be positive")
    ua = np.asarray(ua, dtype=float)
    hm = np.asarray(hm, dtype=float)
    c_air = np.asarray(c_air, dtype=float)
    c_mass = np.asarray(c_mass, dtype=float)
    if np.any(ua <= 0) or np.any(hm <= 0) or np.any(c_air <= 0) or np.any(c_mass <= 0):
        raise ParameterError("ua, hm, c_air, c_mass must all be positive")

    a = -(ua + hm) / c_air
    b = hm / c_air
    c = hm / c_mass
    d = -hm / c_mass

    # (a - d)^2 + 4*b*c is the discriminant written without cancellation.
    disc = np.sqrt((a - d) ** 2 + 4.0 * b * c)
    lam1 = 0.5 * (a + d + disc)
    lam2 = 0.5 * (a + d - disc)

    e1 = np.exp(lam1 * dt_s)
    e2 = np.exp(lam2 * dt_s)
    # (exp(lam*dt) - 1) / lam, via expm1 since lam1*dt can be tiny.
    g1 = np.expm1(lam1 * dt_s) / lam1
    g2 = np.expm1(lam2 * dt_s) / lam2

    p = a - lam2   # equals (a - d + disc) / 2
    q = a - lam1   # equals (a - d - disc) / 2

    return EtpCoefficients(
        dt_s=float(dt_s),
        ad00=(e1 * p - e2 * q) / disc,
        ad01=b * (e1 - e2) / disc,
        ad10=c * (e1 - e2) / disc,
        ad11=(e2 * p - e1 * q) / disc,
        ph00=(g1 * p - g2 * q) / disc,
        ph01=b * (g1 - g2) / disc,
        ph10=c * (g1 - g2) / disc,
        ph11=(g2 * p - g1 * q) / disc,
        ua_w_k=ua,
        c_air_j_k=c_air,
        c_mass_j_k=c_mass,
    )


def etp_advance(co: EtpCoefficients, t_air, t_mass, t_out, q_air_w, q_mass_w=0.0):
    """Advance (t_air, t_mass) one step under constant forcing.

    ``q_air_w`` is net heat into the air node excluding the envelope term
    (solar plus internal gains minus delivered cooling); ``t_out`` enters
    through the envelope conductance.  All arguments broadcast.
    """
    u1 = (co.ua_w_k * t_out + q_air_w) / co.c_air_j_k
    u2 = q_mass_w / co.c_mass_j_k
    new_air = co.ad00 * t_air + co.ad01 * t_mass + co.ph00 * u1 + co.ph01 * u2
    new_mass = co.ad10 * t_air + co.ad11 * t_mass + co.ph10 * u1 + co.ph11 * u2
    return new_air, new_mass


def step_house(state: ThermalState, params: HouseParams, t_out_c: float,
               solar_wm2: float, hvac_on: bool, dt_s: float) -> ThermalState:
    """Integrate one house over one control cycle.

    The compressor state is held for the whole cycle; cooling enters the
    air node as a constant extraction at the rated thermal output.
    """
    co = etp_coefficients(params.ua_w_k, params.hm_w_k,
                          params.c_air_j_k, params.c_mass_j_k, dt_s)
    q_air = (params.shgc * params.window_area_m2 * solar_wm2
             + params.internal_gain_w
             - (params.q_cool_rated_w if hvac_on else 0.0))
    t_air, t_mass = etp_advance(co, state.t_air_c, state.t_mass_c, t_out_c, q_air)
    return ThermalState(t_air_c=float(t_air), t_mass_c=float(t_mass))


def hysteresis(t_air, setpoint_c, deadband_c, s):
    """Plain thermostat rule; broadcasts over arrays.

    Above ``setpoint + deadband`` the unit switches on, below
    ``setpoint - deadband`` it switches off, inside the band it keeps its
    previous state.
    """
    on = np.asarray(t_air) > np.asarray(setpoint_c) + deadband_c
    off = np.asarray(t_air) < np.asarray(setpoint_c) - deadband_c
    return np.where(on, True, np.where(off, False, s))


def thermostat_step(state: ThermalState, setpoint_c: float, deadband_c: float,
                    s: bool) -> bool:
    """Scalar thermostat decision for one unit."""
    if deadband_c <= 0:
        raise ParameterError("deadband must be positive")
    return bool(hysteresis(state.t_air_c, setpoint_c, deadband_c, s))
