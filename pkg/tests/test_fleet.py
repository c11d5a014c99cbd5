from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

import aclsim as ac
from aclsim.errors import ParameterError


def test_mean_sampled_area_near_distribution_mean():
    units = ac.sample_fleet(ac.default_fleet_spec(), 10000, seed=1)
    areas = np.array([u.house.floor_area_m2 for u in units])
    assert 130.0 <= areas.mean() <= 134.0
    assert areas.min() >= 88.0 and areas.max() <= 176.0


def test_every_eer_in_table_range():
    units = ac.sample_fleet(ac.default_fleet_spec(), 2000, seed=2)
    eers = np.array([u.house.eer for u in units])
    assert (eers >= 3.0).all() and (eers <= 4.0).all()


def test_normal_draws_truncated_at_three_sigma():
    units = ac.sample_fleet(ac.default_fleet_spec(), 5000, seed=3)
    r_roof = np.array([u.house.r_roof for u in units])
    assert (np.abs(r_roof - 5.28) <= 3 * 0.70 + 1e-9).all()
    t_des = np.array([u.band.t_desired_c for u in units])
    assert (np.abs(t_des - 26.0) <= 3 * 0.5 + 1e-9).all()


def test_same_seed_reproduces_fleet():
    a = ac.sample_fleet(ac.default_fleet_spec(), 50, seed=9)
    b = ac.sample_fleet(ac.default_fleet_spec(), 50, seed=9)
    for ua, ub in zip(a, b):
        assert ua == ub


def test_comfort_band_built_around_setpoint():
    units = ac.sample_fleet(ac.default_fleet_spec(), 200, seed=4)
    for u in units:
        assert u.band.t_min_c < u.band.t_desired_c < u.band.t_max_c
        assert 2.0 <= u.band.t_max_c - u.band.t_desired_c <= 3.0
        assert 2.0 <= u.band.t_desired_c - u.band.t_min_c <= 3.0


def test_initial_state_inside_band_and_unlocked():
    units = ac.sample_fleet(ac.default_fleet_spec(), 200, seed=5)
    for u in units:
        assert u.band.t_min_c <= u.thermal.t_air_c <= u.band.t_max_c
        assert u.switch.elapsed_s == u.switch.lock_on_s
        # Warm side starts on, cool side starts off.
        assert u.switch.s == (u.thermal.t_air_c > u.band.t_desired_c)


def test_lockout_durations_from_spec():
    units = ac.sample_fleet(ac.default_fleet_spec(), 10, seed=6)
    for u in units:
        assert u.switch.lock_on_s == 300.0
        assert u.switch.lock_off_s == 300.0


def test_invalid_distribution_rejected():
    with pytest.raises(ParameterError):
        ac.Dist("triangular", 1.0, 2.0)
    with pytest.raises(ParameterError):
        ac.Dist("uniform", 176.0, 88.0)  # reversed bounds
    with pytest.raises(ParameterError):
        ac.sample_fleet(ac.default_fleet_spec(), 0, seed=1)


def test_fleet_spec_override_changes_only_that_field():
    spec = replace(ac.default_fleet_spec(),
                   floor_area_m2=ac.Dist("uniform", 260.0, 440.0))
    units = ac.sample_fleet(spec, 500, seed=1)
    areas = np.array([u.house.floor_area_m2 for u in units])
    assert areas.min() >= 260.0 and areas.max() <= 440.0
    eers = np.array([u.house.eer for u in units])
    assert (eers >= 3.0).all() and (eers <= 4.0).all()


def test_fleet_arrays_round_trip():
    units = ac.sample_fleet(ac.default_fleet_spec(), 30, seed=7)
    arr = ac.FleetArrays.from_units(units)
    assert arr.p_rated_w.shape == (30,)
    np.testing.assert_allclose(arr.p_rated_w,
                               [u.house.p_rated_w for u in units])
    np.testing.assert_allclose(arr.t_air_c,
                               [u.thermal.t_air_c for u in units])
    cp = arr.copy()
    cp.t_air_c[0] += 1.0
    assert arr.t_air_c[0] != cp.t_air_c[0]
