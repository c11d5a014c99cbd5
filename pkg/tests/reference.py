"""Independent reference implementations used as test oracles.

Everything here is deliberately written the slow, obvious way (scalar
loops, fine-step integration, exhaustive search) so the fast library
code has something honest to be checked against.
"""

from __future__ import annotations

import numpy as np


def euler_house(ua, hm, c_air, c_mass, t_air, t_mass, t_out, q_air,
                dt_s: float, sub_s: float = 0.01):
    """Forward-Euler integration of the two-node circuit at a fine substep.

    All parameter arguments broadcast; returns (t_air, t_mass) after
    ``dt_s`` seconds of constant forcing.
    """
    n = int(round(dt_s / sub_s))
    t_air = np.asarray(t_air, dtype=float).copy()
    t_mass = np.asarray(t_mass, dtype=float).copy()
    for _ in range(n):
        d_air = (ua * (t_out - t_air) + hm * (t_mass - t_air) + q_air) / c_air
        d_mass = hm * (t_air - t_mass) / c_mass
        t_air = t_air + sub_s * d_air
        t_mass = t_mass + sub_s * d_mass
    return t_air, t_mass


def clear_by_search(prices, quantities, target):
    """Exhaustive clearing: try every candidate price level.

    The clearing price is the highest bid price whose on-set
    (every bid at or above that price) meets the target, clamped to
    [-2, 2], with the saturation conventions: a non-positive target
    prices at +2 and a target beyond the whole curve at -2.  Returns
    (p_star, on_set) where on_set is a boolean mask over the input bids.
    """
    prices = np.asarray(prices, dtype=float)
    quantities = np.asarray(quantities, dtype=float)
    total = quantities.sum()
    if target <= 0:
        p_star = 2.0
    elif target > total:
        p_star = -2.0
    else:
        feasible = [p for p in np.unique(prices)
                    if quantities[prices >= p].sum() >= target]
        p_star = min(max(max(feasible), -2.0), 2.0)
    return p_star, prices >= p_star
