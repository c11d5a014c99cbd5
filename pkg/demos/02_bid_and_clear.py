"""One market round, spelled out.

Eight houses submit bids priced by how warm they are relative to
their comfort bands.  One has just switched on and one has just
switched off, so the lockout rule pins their prices outside the
clearing band.  The market then clears against a target and every
unit applies the price it sees.
"""

from __future__ import annotations

import numpy as np

import aclsim as ac

RHO = 0.5
units = ac.sample_fleet(ac.default_fleet_spec(), 8, seed=2)
rng = np.random.default_rng(4)
for u in units:
    u.thermal.t_air_c = u.band.t_desired_c + rng.uniform(-1.5, 2.2)
    u.switch.s = u.thermal.t_air_c > u.band.t_desired_c
# a fresh switch in each direction: both still inside the 300 s lock
units[0].switch.s, units[0].switch.elapsed_s = True, 60.0
units[7].switch.s, units[7].switch.elapsed_s = False, 120.0

bids = [ac.make_bid(u, RHO) for u in units]
names = {ac.LockState.LOCK_ON: "lock-on", ac.LockState.ON: "on",
         ac.LockState.LOCK_OFF: "lock-off", ac.LockState.OFF: "off"}
print(f"unit  t_air  soa    state     price  kW  (rho={RHO})")
for u, b in zip(units, bids):
    soa = ac.compute_soa(u.thermal.t_air_c, u.band)
    print(f"{b.unit_id:4d}  {u.thermal.t_air_c:5.2f}  {soa:+.2f}"
          f"  {names[ac.lock_state(u.switch)]:8s}  {b.p_bid:+.2f}"
          f"  {b.q_bid_w / 1e3:4.1f}")

curve = ac.build_demand_curve(np.array([b.p_bid for b in bids]),
                              np.array([b.q_bid_w for b in bids]),
                              np.array([b.unit_id for b in bids]))
target = 0.55 * curve.total_w
res = ac.clear(curve, target)
print(f"\ntarget {target / 1e3:.1f} kW of {curve.total_w / 1e3:.1f} kW offered")
print(f"clearing price {res.p_star:+.2f}, cleared {res.cleared_w / 1e3:.1f} kW")

running = [u.unit_id for u in units
           if ac.apply_clearing(bids[u.unit_id], u.switch, res.p_star)]
print(f"units running after the round: {running}")
print("the locked-on unit stays on and the locked-off unit stays off,"
      "\nwhatever the price; everyone else follows the cleared price.")
