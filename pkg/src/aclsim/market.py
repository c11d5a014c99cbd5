"""Virtual market: demand curve assembly and price clearing.

Every cycle the coordinator stacks all bids into a price-descending demand
curve and walks it until the accumulated rated power covers the target.
The marginal bid sets the cleared price, clamped into the [-2, 2] band.
A non-positive target clears at +2 (nobody unlocked runs) and a target
beyond the whole curve clears at -2 (everything unlocked runs).  Equal
prices are ordered by unit id so the outcome is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .agent import CLEARING_PRICE_MAX, CLEARING_PRICE_MIN, Bid, LockState
from .errors import ParameterError


@dataclass(frozen=True)
class DemandCurve:
    """Bids sorted by descending price with running quantity totals."""

    prices: np.ndarray
    quantities_w: np.ndarray
    unit_ids: np.ndarray
    cumulative_w: np.ndarray

    @property
    def total_w(self) -> float:
        return float(self.cumulative_w[-1]) if self.cumulative_w.size else 0.0

    @classmethod
    def from_bids(cls, bids: list[Bid]) -> "DemandCurve":
        return build_demand_curve(
            np.array([b.p_bid for b in bids], dtype=float),
            np.array([b.q_bid_w for b in bids], dtype=float),
            np.array([b.unit_id for b in bids], dtype=int),
        )


def build_demand_curve(prices, quantities_w, unit_ids=None) -> DemandCurve:
    """Sort bids into a demand curve.

    Args:
        prices: bid prices, any order.
        quantities_w: rated powers, all positive.
        unit_ids: optional ids used for the tie order; defaults to the
            input positions.
    """
    prices = np.asarray(prices, dtype=float)
    quantities_w = np.asarray(quantities_w, dtype=float)
    if prices.shape != quantities_w.shape:
        raise ParameterError("prices and quantities differ in length")
    if np.any(quantities_w <= 0):
        raise ParameterError("all bid quantities must be positive")
    if unit_ids is None:
        unit_ids = np.arange(prices.size)
    unit_ids = np.asarray(unit_ids)

    # Price descending, equal prices in unit-id order regardless of how
    # the bids arrived.
    order = np.lexsort((unit_ids, -prices))
    q = quantities_w[order]
    return DemandCurve(
        prices=prices[order],
        quantities_w=q,
        unit_ids=unit_ids[order],
        cumulative_w=np.cumsum(q),
    )


@dataclass(frozen=True)
class ClearingResult:
    p_star: float
    target_w: float
    cleared_w: float
    locked_on_w: float = 0.0
    locked_off_w: float = 0.0

    def __post_init__(self):
        if not CLEARING_PRICE_MIN <= self.p_star <= CLEARING_PRICE_MAX:
            raise ParameterError("p_star escaped the clearing band")
        # relative slack: the caller sums the same quantities in another order
        slack = 1e-9 * max(1.0, self.locked_on_w)
        if self.cleared_w + slack < self.locked_on_w:
            raise ParameterError("cleared power cannot undercut locked-on power")


def clear(curve: DemandCurve, target_w: float,
          locked_on_w: float = 0.0, locked_off_w: float = 0.0) -> ClearingResult:
    """Clear one cycle.

    The cleared price is the marginal accepted bid, i.e. the price at the
    first curve position whose running total reaches the target, clamped
    into [-2, 2].  ``cleared_w`` totals every bid at or above the clamped
    price.  The locked power figures are diagnostics carried through from
    the caller, which knows the lockout states behind the bids.
    """
    if target_w <= 0.0 or curve.prices.size == 0:
        p_star = CLEARING_PRICE_MAX
    elif target_w > curve.total_w:
        p_star = CLEARING_PRICE_MIN
    else:
        idx = int(np.searchsorted(curve.cumulative_w, target_w, side="left"))
        p_star = float(np.clip(curve.prices[idx], CLEARING_PRICE_MIN, CLEARING_PRICE_MAX))
    cleared = float(curve.quantities_w[curve.prices >= p_star].sum())
    return ClearingResult(p_star=p_star, target_w=float(target_w), cleared_w=cleared,
                          locked_on_w=float(locked_on_w), locked_off_w=float(locked_off_w))


def aggregate_response(prices, quantities_w, codes, p_star: float) -> float:
    """Total power actually drawn after every unit applies the price.

    Locked units override the price rule, so this needs the lockout codes
    alongside the bids (the price alone cannot distinguish a locked-on bid
    at +2 from a saturated running bid at +2).
    """
    prices = np.asarray(prices, dtype=float)
    quantities_w = np.asarray(quantities_w, dtype=float)
    codes = np.asarray(codes)
    on = prices >= p_star
    on = np.where(codes == LockState.LOCK_ON, True, on)
    on = np.where(codes == LockState.LOCK_OFF, False, on)
    return float(quantities_w[on].sum())
