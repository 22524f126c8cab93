//! Energy and exergy model of a dual-spool mixed-flow turbofan with inlet air
//! cooling, batch sweeps over its design space, and a small from-scratch MLP
//! surrogate trained on the generated performance data.
//!
//! The crate is organised bottom-up:
//!
//! * [`atmosphere`]: 1976 standard atmosphere (dead state for exergy).
//! * [`gasprops`]: temperature-dependent air / combustion-gas properties and the fuel table.
//! * [`cycle`]: station-by-station on-design solution (thrust, TSFC, efficiencies).
//! * [`exergy`]: per-component exergy efficiency and destruction.
//! * [`sweep`]: parameter grids and Latin-hypercube dataset generation.
//! * [`surrogate`]: ReLU MLP trained with Adam on MSE.
//! * [`metrics`]: R, R², RMSE, MSE, MAE, MAPE.
//! * [`exec`]: sequential / rayon executors shared by the batch code.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atmosphere;
pub mod cycle;
pub mod error;
pub mod exec;
pub mod exergy;
pub mod gasprops;
pub mod metrics;
pub mod report;
pub mod surrogate;
pub mod sweep;

mod numeric;

pub use atmosphere::{isa_state, AmbientState};
pub use cycle::{solve_cycle, CycleSolution, EngineConfig, FlightCondition, MixerPressure, StationState};
pub use error::{Error, Result};
pub use exec::Execution;
pub use exergy::{component_exergy, ExergyReport};
pub use gasprops::{fuel_lookup, Fuel, FuelDb, GasModel, PropertyModel};
pub use metrics::{evaluate, EvalMetrics};
