from __future__ import annotations

import numpy as np
import pytest

import aclsim as ac
from aclsim.agent import LockState
from aclsim.errors import ParameterError

from reference import clear_by_search

PRICES = np.array([0.2, 1.5, -0.8])
QUANTS = np.array([3000.0, 4000.0, 5000.0])


def test_demand_curve_sorts_descending():
    curve = ac.build_demand_curve(PRICES, QUANTS)
    np.testing.assert_allclose(curve.prices, [1.5, 0.2, -0.8])
    np.testing.assert_allclose(curve.cumulative_w, [4000.0, 7000.0, 12000.0])
    assert curve.unit_ids.tolist() == [1, 0, 2]


def test_single_bid_curve():
    curve = ac.build_demand_curve([0.7], [2500.0])
    np.testing.assert_allclose(curve.cumulative_w, [2500.0])


def test_equal_prices_keep_id_order():
    curve = ac.build_demand_curve([0.3, 0.3, 0.3], [1.0, 2.0, 3.0],
                                  unit_ids=[7, 2, 5])
    assert curve.unit_ids.tolist() == [2, 5, 7]


def test_clear_worked_example():
    curve = ac.build_demand_curve(PRICES, QUANTS)
    res = ac.clear(curve, 6000.0)
    assert res.p_star == pytest.approx(0.2)
    assert res.cleared_w == pytest.approx(7000.0)


def test_clear_saturation_cases():
    curve = ac.build_demand_curve(PRICES, QUANTS)
    assert ac.clear(curve, 0.0).p_star == 2.0
    assert ac.clear(curve, -3000.0).p_star == 2.0
    assert ac.clear(curve, 20000.0).p_star == -2.0
    assert ac.clear(curve, 20000.0).cleared_w == pytest.approx(12000.0)


def test_empty_curve_clears_high():
    curve = ac.build_demand_curve([], [])
    res = ac.clear(curve, 1000.0)
    assert res.p_star == 2.0
    assert res.cleared_w == 0.0


def test_flat_segment_ties_clear_together():
    curve = ac.build_demand_curve([1.0, 1.0, 0.5], [2000.0, 3000.0, 1000.0])
    res = ac.clear(curve, 1000.0)
    assert res.p_star == pytest.approx(1.0)
    assert res.cleared_w == pytest.approx(5000.0)


def test_clear_matches_exhaustive_search():
    # Desk-scale version of the full acceptance sweep.
    rng = np.random.default_rng(12)
    grid = np.array([-3.0, -2.0, -1.0, -0.4, 0.0, 0.4, 1.0, 2.0, 3.0])
    for _ in range(200):
        n = rng.integers(1, 11)
        prices = rng.choice(grid, n)  # coarse grid forces ties
        quants = rng.uniform(1000.0, 5000.0, n)
        total = quants.sum()
        target = rng.uniform(-0.2 * total, 1.2 * total)
        curve = ac.build_demand_curve(prices, quants)
        res = ac.clear(curve, target)
        p_ref, on_ref = clear_by_search(prices, quants, target)
        assert res.p_star == p_ref
        assert np.array_equal(prices >= res.p_star, on_ref)
        assert res.cleared_w == pytest.approx(quants[on_ref].sum())


def test_p_star_monotone_in_target():
    rng = np.random.default_rng(13)
    prices = rng.uniform(-2.0, 2.0, 40)
    quants = rng.uniform(500.0, 4000.0, 40)
    curve = ac.build_demand_curve(prices, quants)
    targets = np.linspace(-1000.0, quants.sum() + 1000.0, 60)
    stars = [ac.clear(curve, t).p_star for t in targets]
    assert all(b <= a + 1e-12 for a, b in zip(stars, stars[1:]))


def test_p_star_always_clamped():
    curve = ac.build_demand_curve([3.0, 2.5], [1000.0, 1000.0])  # locked-on bids
    assert ac.clear(curve, 500.0).p_star == 2.0
    curve = ac.build_demand_curve([-2.5, -3.0], [1000.0, 1000.0])
    assert ac.clear(curve, 1500.0).p_star == -2.0


def test_tracking_bound_without_locks():
    # Distinct prices: with duplicate prices the whole tie clears together
    # and the bound grows to the tie total, so keep this generic.
    rng = np.random.default_rng(14)
    prices = rng.uniform(-2.0, 2.0, 50)
    quants = rng.uniform(800.0, 3000.0, 50)
    codes = np.full(50, LockState.OFF, dtype=np.int8)
    curve = ac.build_demand_curve(prices, quants)
    for target in np.linspace(0.0, quants.sum(), 25):
        p_star = ac.clear(curve, target).p_star
        agg = ac.aggregate_response(prices, quants, codes, p_star)
        assert abs(agg - target) <= quants.max() + 1e-9


def test_aggregate_response_examples():
    quants = np.array([1000.0, 2000.0])
    all_locked_on = np.full(2, LockState.LOCK_ON, dtype=np.int8)
    assert ac.aggregate_response([-3.0, 3.0], quants, all_locked_on, 2.0) == 3000.0
    assert ac.aggregate_response([], [], np.empty(0, dtype=np.int8), 0.0) == 0.0
    # With no locked units the response reproduces cleared power.
    prices = np.array([0.9, -0.4, 0.1])
    q = np.array([1500.0, 2500.0, 1000.0])
    codes = np.full(3, LockState.ON, dtype=np.int8)
    res = ac.clear(ac.build_demand_curve(prices, q), 2000.0)
    assert ac.aggregate_response(prices, q, codes, res.p_star) == res.cleared_w


def test_clearing_result_validates_locked_power():
    with pytest.raises(ParameterError):
        ac.ClearingResult(p_star=0.0, target_w=1000.0, cleared_w=500.0,
                          locked_on_w=900.0)
    with pytest.raises(ParameterError):
        ac.ClearingResult(p_star=2.5, target_w=0.0, cleared_w=0.0)
