"""A single house on a hot afternoon.

Derives the thermal envelope of one sampled house, then lets its
thermostat run for three hours at 35 C outdoors.  The printed duty
cycle should land near the steady-state prediction UA*dT / Q_rated,
plus the solar and internal gains picked up along the way.
"""

from __future__ import annotations

import numpy as np

import aclsim as ac

unit = ac.sample_fleet(ac.default_fleet_spec(), 1, seed=5)[0]
house = unit.house
band = unit.band
print(f"floor area sampled around {ac.default_fleet_spec().floor_area_m2.a}"
      f"..{ac.default_fleet_spec().floor_area_m2.b} m2")
print(f"envelope UA      {house.ua_w_k:8.1f} W/K")
print(f"mass coupling    {house.hm_w_k:8.1f} W/K")
print(f"cooling capacity {house.q_cool_rated_w:8.1f} W thermal")
print(f"electrical rating{house.p_rated_w:8.1f} W at EER {house.eer:.2f}")
print(f"comfort band     {band.t_min_c:.2f}..{band.t_max_c:.2f} C, "
      f"desired {band.t_desired_c:.2f} C")

dt, hours = 60.0, 3.0
t_out, solar = 35.0, 300.0
state = ac.ThermalState(t_air_c=band.t_desired_c, t_mass_c=band.t_desired_c)
on = False
trajectory, duty = [], 0
for _ in range(int(hours * 3600 / dt)):
    on = ac.thermostat_step(state, band.t_desired_c, 1.0, on)
    state = ac.step_house(state, house, t_out, solar, on, dt)
    duty += on
    trajectory.append(state.t_air_c)

trajectory = np.array(trajectory)
print(f"\nafter {hours:.0f} h at {t_out:.0f} C / {solar:.0f} W/m2 solar:")
print(f"  air temperature stayed in {trajectory.min():.2f}"
      f"..{trajectory.max():.2f} C")
print(f"  compressor duty cycle {duty / trajectory.size:.2f}")
gain = house.ua_w_k * (t_out - band.t_desired_c) + 200.0 \
    + house.shgc * house.window_area_m2 * solar
print(f"  steady-state prediction {gain / house.q_cool_rated_w:.2f}")
