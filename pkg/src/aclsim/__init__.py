"""Market-coordinated air-conditioning fleets for grid services.

A population of houses, each with a two-node thermal model and a lockout-
protected compressor, bids into a virtual market every control cycle.
Clearing the market against a power target lets the fleet smooth a noisy
tie line or chase a fast regulation command while every unit keeps its own
comfort band and minimum on/off times.
"""

from .agent import (Bid, ComfortBand, LockState, SwitchState, apply_clearing,
                    compute_soa, lock_state, make_bid, s_offset, update_switch)
from .engine import (SERVICE_FM, SERVICE_REG, RunOutputs, ScenarioConfig,
                     Signals, SimTrace, execute, run_scenario)
from .errors import ParameterError, SignalError
from .fleet import (AclUnit, Dist, FleetArrays, FleetSpec, UncontrolledTrace,
                    default_fleet_spec, sample_fleet, simulate_thermostat)
from .market import (ClearingResult, DemandCurve, aggregate_response,
                     build_demand_curve, clear)
from .metrics import (MetricsReport, SoaStats, build_report, daily_on_counts,
                      fluctuation_rate, soa_stats, switching_cycles,
                      tracking_rmse)
from .signals import (SignalSeries, clear_sky_solar, gen_load,
                      gen_outdoor_temperature, gen_regd, gen_solar, gen_wind,
                      resample_to_grid)
from .target_signal import (LpfState, PowerBalanceInputs, estimate_baseline,
                            fm_target, hold_hourly, hourly_mean, lpf_alpha,
                            lpf_step, reg_target, tie_line_power)
from .thermal import (GeometryRules, HouseParams, HouseSample, ThermalState,
                      derive_envelope, etp_advance, etp_coefficients,
                      step_house, thermostat_step)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
