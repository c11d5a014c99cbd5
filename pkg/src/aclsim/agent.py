"""Per-unit bidding controller.

Each air conditioner turns its comfort situation into a price bid once per
control cycle.  The comfort coordinate (state of air temperature, SOA) maps
the indoor air temperature onto [-1, 1]: zero at the desired temperature,
+1 at the top of the comfort band, -1 at the bottom.  The bid price adds a
state-dependent offset to the SOA:

    locked on   ->  +3        (must keep running)
    running     ->  +rho      (prefers to keep running)
    idle        ->  -rho      (prefers to stay idle)
    locked off  ->  -3        (cannot start)

``rho`` in [0, 1] is the knob that trades switching frequency against
comfort spread: at 0 the offset vanishes and running and idle units compete
purely on comfort, at 1 the price bands of running and idle units no longer
overlap, so a unit only switches once its comfort coordinate saturates.
The +-3 offsets push locked units strictly outside the clearing price range
[-2, 2], so the market can never ask them to move; the response rule
enforces the same constraint locally as a backstop.

A unit is locked for ``lock_on_s`` seconds after switching on and
``lock_off_s`` after switching off (compressor protection).  An elapsed
time exactly equal to the lock length counts as unlocked.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import ParameterError

# Clearing prices live in this closed band; locked bids sit strictly outside.
CLEARING_PRICE_MIN = -2.0
CLEARING_PRICE_MAX = 2.0

LOCK_ON_OFFSET = 3.0
LOCK_OFF_OFFSET = -3.0


class LockState(IntEnum):
    LOCK_ON = 0
    ON = 1
    LOCK_OFF = 2
    OFF = 3


@dataclass(frozen=True)
class ComfortBand:
    """Occupant comfort range around the desired temperature."""

    t_desired_c: float
    t_max_c: float
    t_min_c: float

    def __post_init__(self):
        if not self.t_min_c < self.t_desired_c < self.t_max_c:
            raise ParameterError("comfort band requires t_min < t_desired < t_max")


@dataclass
class SwitchState:
    """Compressor state plus the time since it last changed."""

    s: bool                    # True while running
    elapsed_s: float           # seconds since the last transition
    lock_on_s: float = 300.0
    lock_off_s: float = 300.0

    def __post_init__(self):
        if self.elapsed_s < 0:
            raise ParameterError("elapsed_s must be non-negative")
        if self.lock_on_s <= 0 or self.lock_off_s <= 0:
            raise ParameterError("lock durations must be positive")


@dataclass(frozen=True)
class Bid:
    """One unit's offer for the coming cycle: its price and rated draw."""

    unit_id: int
    p_bid: float
    q_bid_w: float
    s: bool

    def __post_init__(self):
        if self.q_bid_w <= 0:
            raise ParameterError("q_bid_w must be positive")


def lock_codes(s, elapsed_s, lock_on_s, lock_off_s):
    """Vectorized lockout classification; returns LockState codes."""
    s = np.asarray(s, dtype=bool)
    locked = np.where(s, elapsed_s < np.asarray(lock_on_s),
                      elapsed_s < np.asarray(lock_off_s))
    return np.where(s,
                    np.where(locked, LockState.LOCK_ON, LockState.ON),
                    np.where(locked, LockState.LOCK_OFF, LockState.OFF)).astype(np.int8)


def lock_state(switch: SwitchState) -> LockState:
    """Classify one unit."""
    return LockState(int(lock_codes(switch.s, switch.elapsed_s,
                                    switch.lock_on_s, switch.lock_off_s)))


def soa_values(t_air, t_desired, t_max, t_min):
    """Comfort coordinate, unclamped; broadcasts over arrays.

    Warm-side and cool-side deviations are normalized by their own half
    band, so +1 sits at t_max and -1 at t_min even when the band is
    asymmetric.  Values outside [-1, 1] mean the air left the band.
    """
    t_air = np.asarray(t_air, dtype=float)
    dev = t_air - t_desired
    warm = dev / (np.asarray(t_max) - t_desired)
    cool = dev / (t_desired - np.asarray(t_min))
    return np.where(dev >= 0, warm, cool)


def compute_soa(t_air_c: float, band: ComfortBand) -> float:
    """Comfort coordinate clamped to [-1, 1], as used for bidding."""
    raw = soa_values(t_air_c, band.t_desired_c, band.t_max_c, band.t_min_c)
    return float(np.clip(raw, -1.0, 1.0))


def offset_table(rho: float) -> np.ndarray:
    """Bid offsets indexed by LockState code."""
    if not 0.0 <= rho <= 1.0:
        raise ParameterError("rho must lie in [0, 1]")
    return np.array([LOCK_ON_OFFSET, rho, LOCK_OFF_OFFSET, -rho])


def s_offset(state: LockState, rho: float) -> float:
    return float(offset_table(rho)[int(state)])


def bid_prices(soa_clamped, codes, rho: float):
    """Price vector for a fleet: clamped SOA plus the state offset."""
    return np.asarray(soa_clamped, dtype=float) + offset_table(rho)[codes]


def make_bid(unit, rho: float) -> Bid:
    """Build one unit's bid for the coming cycle.

    ``unit`` needs ``thermal.t_air_c``, ``band``, ``switch``,
    ``house.p_rated_w`` and ``unit_id`` attributes; the bid quantity is the
    rated electrical draw.
    """
    code = lock_state(unit.switch)
    price = compute_soa(unit.thermal.t_air_c, unit.band) + s_offset(code, rho)
    return Bid(unit_id=unit.unit_id, p_bid=price,
               q_bid_w=unit.house.p_rated_w, s=unit.switch.s)


def clearing_response(p_bid, codes, p_star: float):
    """Next compressor state for each unit given the cleared price.

    Unlocked units run when their bid meets the price; locked units ignore
    the market entirely, which also closes the corner where a locked-off
    bid of exactly -2 would otherwise tie a cleared price of -2.
    """
    p_bid = np.asarray(p_bid, dtype=float)
    codes = np.asarray(codes)
    on = p_bid >= p_star
    on = np.where(codes == LockState.LOCK_ON, True, on)
    on = np.where(codes == LockState.LOCK_OFF, False, on)
    return on.astype(bool)


def apply_clearing(bid: Bid, switch: SwitchState, p_star: float) -> bool:
    """Scalar response rule for one unit."""
    if not CLEARING_PRICE_MIN <= p_star <= CLEARING_PRICE_MAX:
        raise ParameterError("p_star outside the clearing band")
    code = lock_state(switch)
    return bool(clearing_response(bid.p_bid, np.asarray(int(code)), p_star))


def advance_timers(s_old, s_new, elapsed_s, dt_s: float):
    """Elapsed-time update, applied exactly once per control cycle.

    Resets to zero on any transition, otherwise accumulates the cycle.
    """
    changed = np.asarray(s_old, dtype=bool) != np.asarray(s_new, dtype=bool)
    return np.where(changed, 0.0, np.asarray(elapsed_s, dtype=float) + dt_s)


def update_switch(switch: SwitchState, new_s: bool, dt_s: float) -> SwitchState:
    """Scalar version of the per-cycle timer update."""
    return SwitchState(
        s=bool(new_s),
        elapsed_s=float(advance_timers(switch.s, new_s, switch.elapsed_s, dt_s)),
        lock_on_s=switch.lock_on_s,
        lock_off_s=switch.lock_off_s,
    )
