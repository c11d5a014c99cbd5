from __future__ import annotations

import numpy as np
import pytest

import aclsim as ac
from aclsim.errors import ParameterError

HOUR = 3600


def test_constant_series_has_zero_rate():
    rate = ac.fluctuation_rate(np.full(100, 4.0e6), 600.0, 60.0)
    assert rate.shape == (91,)
    np.testing.assert_allclose(rate, 0.0)


def test_sawtooth_rate_hand_value():
    # +-0.1 MW around a 4 MW mean: (max - min) / mean = 0.2 / 4 = 0.05.
    tooth = np.tile([3.9e6, 4.1e6], 50)
    rate = ac.fluctuation_rate(tooth, 600.0, 60.0)
    np.testing.assert_allclose(rate, 0.05)


def test_rate_is_scale_invariant():
    rng = np.random.default_rng(1)
    series = 4.0e6 + rng.normal(0.0, 0.2e6, 200)
    a = ac.fluctuation_rate(series, 600.0, 60.0)
    b = ac.fluctuation_rate(3.0 * series, 600.0, 60.0)
    np.testing.assert_allclose(a, b, rtol=1e-12)


def test_rate_uses_explicit_base_when_given():
    tooth = np.tile([3.9e6, 4.1e6], 50)
    rate = ac.fluctuation_rate(tooth, 600.0, 60.0, base_w=2.0e6)
    np.testing.assert_allclose(rate, 0.1)


def test_rate_rejects_window_longer_than_series():
    with pytest.raises(ParameterError):
        ac.fluctuation_rate(np.ones(5), 600.0, 60.0)


def test_daily_counts_examples():
    steps_per_day = 24 * HOUR // 60
    always_on = np.ones((steps_per_day, 1), dtype=bool)
    assert ac.daily_on_counts(always_on, 60.0).tolist() == [[0]]

    one_cycle = np.zeros((steps_per_day, 1), dtype=bool)
    one_cycle[100:200, 0] = True
    assert ac.daily_on_counts(one_cycle, 60.0).tolist() == [[1]]


def test_counts_sum_matches_total_transitions():
    rng = np.random.default_rng(2)
    s = rng.random((2 * 24 * 60, 5)) < 0.5
    counts = ac.daily_on_counts(s, 60.0)
    total = int((~s[:-1] & s[1:]).sum())
    # Transitions on the midnight boundary belong to the later day.
    assert counts.sum() == total
    assert counts.shape == (2, 5)


def test_thermostat_cycle_count_matches_duty_period():
    fleet = ac.FleetArrays.from_units(ac.sample_fleet(ac.default_fleet_spec(),
                                                      1, seed=11))
    n = 28 * HOUR // 60  # 4 h pre-roll reaches the limit cycle, then one day
    ref = ac.simulate_thermostat(fleet, np.full(n, 35.0), np.full(n, 200.0), 60.0)
    day = ref.s[4 * HOUR // 60:]
    counts = ac.daily_on_counts(day, 60.0)
    ons = np.flatnonzero(~day[:-1, 0] & day[1:, 0])
    period_s = np.diff(ons).mean() * 60.0
    expected = 24 * HOUR / period_s
    assert abs(counts[0, 0] - expected) <= 1.0


def test_soa_stats_symmetry():
    tr = _tiny_trace(soa=np.array([[0.4, -0.4], [0.0, 0.0]]))
    stats = ac.soa_stats(tr)
    np.testing.assert_allclose(stats.avg, [0.0, 0.0])
    np.testing.assert_allclose(stats.lo, [-0.4, 0.0])
    np.testing.assert_allclose(stats.hi, [0.4, 0.0])


def test_soa_stats_weighted_consistency():
    rng = np.random.default_rng(3)
    soa = rng.normal(0.0, 0.5, (50, 8))
    stats = ac.soa_stats(_tiny_trace(soa=soa))
    assert stats.avg.mean() == pytest.approx(soa.mean(axis=0).mean(), rel=1e-12)


def test_tracking_rmse_examples():
    tr = _tiny_trace(target=np.full(120, 1.0e6), agg=np.full(120, 1.0e6))
    assert ac.tracking_rmse(tr) == 0.0
    tr = _tiny_trace(target=np.full(120, 1.0e6), agg=np.full(120, 1.2e6))
    assert ac.tracking_rmse(tr) == pytest.approx(0.2e6)


def test_tracking_rmse_skips_warmup():
    target = np.full(120, 1.0e6)
    agg = target.copy()
    agg[:60] += 5.0e6  # transient inside the warm-up hour
    tr = _tiny_trace(target=target, agg=agg)
    assert ac.tracking_rmse(tr) == 0.0


def _tiny_trace(soa=None, target=None, agg=None):
    """Minimal SimTrace for metric unit tests; 60 s cycle."""
    n = (soa.shape[0] if soa is not None else target.size)
    m = soa.shape[1] if soa is not None else 0
    cfg = ac.ScenarioConfig(service=ac.SERVICE_FM, dt_s=60, horizon_s=n * 60,
                            rho=0.5, fleet_size=max(m, 1), seed=0)
    zeros = np.zeros(n)
    return ac.SimTrace(
        config=cfg, time_s=np.arange(n, dtype=np.int64) * 60,
        target_w=zeros if target is None else target,
        agg_w=zeros if agg is None else agg,
        tie_w=np.full(n, np.nan), p_star=zeros,
        locked_on_w=zeros, locked_off_w=zeros, available_w=zeros,
        unit_ids=np.arange(m), s=np.zeros((n, m), dtype=bool),
        t_air_c=np.zeros((n, m)),
        soa=np.zeros((n, m)) if soa is None else soa,
    )
