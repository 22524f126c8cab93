//! Sea-level static reference values for the design-point engine on JP10.

use serde::Serialize;
use turbofan_exergy::{fuel_lookup, solve_cycle, EngineConfig, FlightCondition, Result};

pub const THRUST_KN: f64 = 118.580;
pub const TSFC_G_PER_KNS: f64 = 26.43;
pub const FUEL_FLOW_KG_S: f64 = 3.134;
pub const TOLERANCE: f64 = 0.08;

#[derive(Debug, Serialize)]
pub struct Check {
    pub quantity: &'static str,
    pub computed: f64,
    pub reference: f64,
    pub relative_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn check(quantity: &'static str, computed: f64, reference: f64) -> Check {
    let relative_error = (computed - reference) / reference;
    Check {
        quantity,
        computed,
        reference,
        relative_error,
        tolerance: TOLERANCE,
        pass: relative_error.abs() <= TOLERANCE,
    }
}

pub fn sea_level_static(cfg: &EngineConfig) -> Result<Vec<Check>> {
    let fuel = fuel_lookup("JP10")?;
    let sol = solve_cycle(cfg, &FlightCondition::new(0.0, 0.0, 0.0), &fuel)?;
    Ok(vec![
        check("thrust_kN", sol.thrust, THRUST_KN),
        check("tsfc_g_per_kNs", sol.tsfc, TSFC_G_PER_KNS),
        check("fuel_flow_kg_s", sol.mdot_fuel, FUEL_FLOW_KG_S),
    ])
}
