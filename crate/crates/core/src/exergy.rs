//! Exergy bookkeeping over a solved cycle.
//!
//! The dead state is the flight ambient (T0, P0). Stations 2–8 are stagnation
//! states; the nozzle exit is a static state, so its flow exergy carries the
//! jet kinetic term `V9²/2`.

use serde::{Deserialize, Serialize};

use crate::atmosphere::AmbientState;
use crate::cycle::{CycleSolution, StationState};
use crate::error::Result;
use crate::gasprops::{Fuel, GasModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Fan,
    Hpc,
    Cc,
    Hpt,
    Lpt,
    Mixer,
    Nozzle,
}

impl Component {
    pub const ALL: [Component; 7] = [
        Component::Fan,
        Component::Hpc,
        Component::Cc,
        Component::Hpt,
        Component::Lpt,
        Component::Mixer,
        Component::Nozzle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::Fan => "fan",
            Component::Hpc => "hpc",
            Component::Cc => "cc",
            Component::Hpt => "hpt",
            Component::Lpt => "lpt",
            Component::Mixer => "mixer",
            Component::Nozzle => "nozzle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentExergy {
    pub component: Component,
    /// `None` when the defining denominator is zero (e.g. a turbomachine with no work).
    pub eta_ex: Option<f64>,
    /// Exergy destruction rate, MW.
    pub destruction: f64,
    /// Exergy supplied to the component (the efficiency denominator), MW.
    pub supplied: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExergyReport {
    pub components: Vec<ComponentExergy>,
    /// F·V0 over fuel exergy rate.
    pub overall_eta_ex: f64,
    /// (station, exergy rate MW) using each station's own mass flow.
    pub station_exergy: Vec<(u8, f64)>,
    /// MW
    pub fuel_exergy_rate: f64,
}

impl ExergyReport {
    pub fn get(&self, c: Component) -> &ComponentExergy {
        self.components
            .iter()
            .find(|r| r.component == c)
            .expect("every component is reported")
    }

    pub fn total_destruction(&self) -> f64 {
        self.components.iter().map(|c| c.destruction).sum()
    }

    /// Component with the largest destruction rate.
    pub fn dominant(&self) -> Component {
        self.components
            .iter()
            .max_by(|a, b| a.destruction.total_cmp(&b.destruction))
            .map(|c| c.component)
            .expect("non-empty")
    }
}

/// Specific flow exergy `(h - h0) - T0 (s - s0)`, J/kg. The enthalpy and
/// entropy terms use cp averaged over [T0, T] in the matching sense.
pub fn physical_exergy(t: f64, p: f64, dead: &AmbientState, gas: &GasModel) -> Result<f64> {
    let dh = gas.mean_cp(dead.t0, t)? * (t - dead.t0);
    let ds = gas.mean_cp_entropy(dead.t0, t)? * (t / dead.t0).ln() - gas.r() * (p / dead.p0).ln();
    Ok(dh - dead.t0 * ds)
}

/// MW
pub fn exergy_flow(mdot: f64, e: f64) -> f64 {
    mdot * e * 1e-6
}

/// MW
pub fn fuel_exergy_rate(mdot_fuel: f64, fuel: &Fuel) -> f64 {
    mdot_fuel * fuel.chem_exergy
}

fn stream(s: &StationState, mdot: f64, dead: &AmbientState, gas: &GasModel) -> Result<f64> {
    Ok(exergy_flow(mdot, physical_exergy(s.t, s.p, dead, gas)?))
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

/// Work-consuming component: efficiency `(E_out - E_in)/W`, destruction `W + E_in - E_out`.
fn consumer(component: Component, work: f64, e_in: f64, e_out: f64) -> ComponentExergy {
    ComponentExergy {
        component,
        eta_ex: ratio(e_out - e_in, work),
        destruction: work + e_in - e_out,
        supplied: work,
    }
}

/// Work-producing component: efficiency `W/(E_in - E_out)`, destruction `E_in - E_out - W`.
fn producer(component: Component, work: f64, e_in: f64, e_out: f64) -> ComponentExergy {
    ComponentExergy {
        component,
        eta_ex: ratio(work, e_in - e_out),
        destruction: e_in - e_out - work,
        supplied: e_in - e_out,
    }
}

/// Flow-through component: efficiency `E_out/E_in`, destruction `E_in - E_out`.
fn passive(component: Component, e_in: f64, e_out: f64) -> ComponentExergy {
    ComponentExergy {
        component,
        eta_ex: ratio(e_out, e_in),
        destruction: e_in - e_out,
        supplied: e_in,
    }
}

pub fn component_exergy(sol: &CycleSolution, dead: &AmbientState, fuel: &Fuel) -> Result<ExergyReport> {
    let air = GasModel::air(sol.core_gas.model);
    let core = &sol.core_gas;
    let exhaust = &sol.exhaust_gas;
    let st = |i: u8| sol.station(i);

    let m_fan = sol.fan_mass_flow;
    let e2_fan = stream(st(2), m_fan, dead, &air)?;
    let e3_fan = stream(st(3), m_fan, dead, &air)?;
    let e3_core = stream(st(3), sol.m_core, dead, &air)?;
    let e4 = stream(st(4), st(4).mdot, dead, &air)?;
    let e5 = stream(st(5), st(5).mdot, dead, core)?;
    let e6 = stream(st(6), st(6).mdot, dead, core)?;
    let e7 = stream(st(7), st(7).mdot, dead, core)?;
    let e3_bypass = stream(&sol.bypass, sol.bypass.mdot, dead, &air)?;
    let e8 = stream(st(8), st(8).mdot, dead, exhaust)?;
    let e9 = stream(st(9), st(9).mdot, dead, exhaust)? + exergy_flow(st(9).mdot, 0.5 * sol.v9 * sol.v9);
    let ef = fuel_exergy_rate(sol.mdot_fuel, fuel);

    let components = vec![
        consumer(Component::Fan, sol.w_fan, e2_fan, e3_fan),
        consumer(Component::Hpc, sol.w_hpc, e3_core, e4),
        passive(Component::Cc, e4 + ef, e5),
        producer(Component::Hpt, sol.w_hpt, e5, e6),
        producer(Component::Lpt, sol.w_lpt, e6, e7),
        passive(Component::Mixer, e3_bypass + e7, e8),
        passive(Component::Nozzle, e8, e9),
    ];

    let mut station_exergy = Vec::with_capacity(9);
    for i in 1..=3u8 {
        station_exergy.push((i, stream(st(i), st(i).mdot, dead, &air)?));
    }
    station_exergy.extend([(4, e4), (5, e5), (6, e6), (7, e7), (8, e8), (9, e9)]);

    let thrust_power = sol.thrust * 1e3 * sol.v0 * 1e-6;
    Ok(ExergyReport {
        components,
        overall_eta_ex: if ef > 0.0 { thrust_power / ef } else { 0.0 },
        station_exergy,
        fuel_exergy_rate: ef,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atmosphere::{isa_state, R_AIR};
    use crate::cycle::{solve_cycle, EngineConfig, FlightCondition};
    use crate::gasprops::{fuel_lookup, PropertyModel};
    use approx::assert_relative_eq;

    fn report(cfg: &EngineConfig, fc: FlightCondition, fuel: &str) -> (CycleSolution, ExergyReport) {
        let fuel = fuel_lookup(fuel).unwrap();
        let sol = solve_cycle(cfg, &fc, &fuel).unwrap();
        let rep = component_exergy(&sol, &sol.ambient, &fuel).unwrap();
        (sol, rep)
    }

    #[test]
    fn dead_state_has_no_exergy() {
        let dead = isa_state(10_000.0).unwrap();
        let air = GasModel::air(PropertyModel::Nasa);
        assert_eq!(physical_exergy(dead.t0, dead.p0, &dead, &air).unwrap(), 0.0);
    }

    #[test]
    fn pressure_term_closed_form() {
        let dead = isa_state(0.0).unwrap();
        let air = GasModel::air(PropertyModel::Nasa);
        let e = physical_exergy(dead.t0, 2.0 * dead.p0, &dead, &air).unwrap();
        assert_relative_eq!(e, R_AIR * dead.t0 * 2f64.ln(), max_relative = 1e-5);
    }

    proptest::proptest! {
        #[test]
        fn exergy_positive_above_ambient_pressure(t in 160.0..2900.0f64, pr in 1.0..60.0f64) {
            let dead = isa_state(11_000.0).unwrap();
            proptest::prop_assume!(!(t == dead.t0 && pr == 1.0));
            let air = GasModel::air(PropertyModel::Nasa);
            proptest::prop_assert!(physical_exergy(t, pr * dead.p0, &dead, &air).unwrap() > 0.0);
        }
    }

    #[test]
    fn flow_and_fuel_rates() {
        assert_eq!(exergy_flow(0.0, 123.0), 0.0);
        assert_relative_eq!(exergy_flow(1.0, 1e6), 1.0);
        assert_relative_eq!(exergy_flow(3.0, 2e5), 3.0 * exergy_flow(1.0, 2e5), max_relative = 1e-15);
        let jp10 = fuel_lookup("JP10").unwrap();
        assert_relative_eq!(fuel_exergy_rate(3.134, &jp10), 140.78, epsilon = 5e-3);
        assert_eq!(fuel_exergy_rate(0.0, &jp10), 0.0);
        let h2 = fuel_lookup("Hydrogen").unwrap();
        assert_relative_eq!(
            fuel_exergy_rate(1.0, &h2) / fuel_exergy_rate(1.0, &jp10),
            134.778 / 44.921,
            max_relative = 1e-12
        );
    }

    #[test]
    fn static_engine_has_zero_overall_efficiency() {
        let (_, rep) = report(&EngineConfig::default(), FlightCondition::default(), "JP10");
        assert_eq!(rep.overall_eta_ex, 0.0);
    }

    #[test]
    fn reversible_limits_destroy_nothing() {
        // isentropic turbomachinery and nozzle with constant cp; combustor and
        // mixer remain irreversible
        let cfg = EngineConfig {
            eta_fan: 1.0,
            eta_c: 1.0,
            eta_hpt: 1.0,
            eta_lpt: 1.0,
            eta_n: 1.0,
            properties: PropertyModel::constant_gamma(1.4),
            ..Default::default()
        };
        let (_, rep) = report(&cfg, FlightCondition::new(1.5, 10_000.0, 0.0), "JP10");
        for c in [
            Component::Fan,
            Component::Hpc,
            Component::Hpt,
            Component::Lpt,
            Component::Nozzle,
        ] {
            let r = rep.get(c);
            assert!(
                r.destruction.abs() < 1e-6 * r.supplied.abs().max(1.0),
                "{c:?}: {}",
                r.destruction
            );
        }
        assert!(rep.get(Component::Cc).destruction > 1.0);
    }

    #[test]
    fn combustor_dominates_at_20km_mach2() {
        let (_, rep) = report(
            &EngineConfig::default(),
            FlightCondition::new(2.0, 20_000.0, 0.0),
            "JP10",
        );
        assert_eq!(rep.dominant(), Component::Cc);
    }

    #[test]
    fn bookkeeping_identities() {
        let (sol, rep) = report(
            &EngineConfig::default(),
            FlightCondition::new(2.0, 15_000.0, 0.0),
            "Hydrogen",
        );
        for r in &rep.components {
            assert!(r.destruction >= 0.0, "{:?}", r);
            let eta = r.eta_ex.unwrap();
            let lhs = r.supplied * (1.0 - eta);
            assert_relative_eq!(lhs, r.destruction, max_relative = 1e-12, epsilon = 1e-12);
            if r.component == Component::Cc {
                assert!(eta > 0.0 && eta < 1.0);
            } else {
                assert!((0.0..=1.0).contains(&eta), "{:?}", r);
            }
        }
        let fuel = fuel_lookup("Hydrogen").unwrap();
        assert_relative_eq!(
            rep.overall_eta_ex,
            sol.thrust * 1e3 * sol.v0 / (sol.mdot_fuel * fuel.chem_exergy_j_per_kg()),
            max_relative = 1e-12
        );
    }

    #[test]
    fn absent_efficiency_without_work() {
        let r = consumer(Component::Fan, 0.0, 1.0, 1.0);
        assert_eq!(r.eta_ex, None);
        assert_eq!(r.destruction, 0.0);
    }
}
