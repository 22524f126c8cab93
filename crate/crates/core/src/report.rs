//! Tabular and structured-text output shared by single-point runs and sweeps.

use std::io::Write;

use serde::Serialize;

use crate::cycle::{CycleSolution, EngineConfig, FlightCondition, StationState};
use crate::error::Result;
use crate::exergy::{Component, ExergyReport};

/// One CSV row: operating point inputs, status, and (when solved) outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRecord {
    pub index: usize,
    pub fuel: String,
    pub mach: f64,
    pub altitude_m: f64,
    pub dt_iat_k: f64,
    pub pi_fan: f64,
    pub pi_c: f64,
    pub tit_k: f64,
    pub alpha: f64,
    pub status: &'static str,
    pub reason: String,
    pub m_total_kg_s: Option<f64>,
    pub mdot_fuel_kg_s: Option<f64>,
    pub v0_m_s: Option<f64>,
    pub v9_m_s: Option<f64>,
    pub thrust_kn: Option<f64>,
    pub tsfc_g_per_kns: Option<f64>,
    pub eta_th: Option<f64>,
    pub eta_p: Option<f64>,
    pub eta_ex: Option<f64>,
    pub heat_rate_mw: Option<f64>,
    pub t3_k: Option<f64>,
    pub t4_k: Option<f64>,
    pub t6_k: Option<f64>,
    pub t7_k: Option<f64>,
    pub t8_k: Option<f64>,
    pub t9_k: Option<f64>,
    pub p8_pa: Option<f64>,
    pub ed_fan_mw: Option<f64>,
    pub ed_hpc_mw: Option<f64>,
    pub ed_cc_mw: Option<f64>,
    pub ed_hpt_mw: Option<f64>,
    pub ed_lpt_mw: Option<f64>,
    pub ed_mixer_mw: Option<f64>,
    pub ed_nozzle_mw: Option<f64>,
}

/// Outcome of evaluating one operating point.
#[derive(Debug, Clone)]
pub enum PointOutcome {
    Solved(Box<(CycleSolution, ExergyReport)>),
    /// Solved but with non-positive thrust.
    Infeasible(Box<(CycleSolution, ExergyReport)>),
    Failed(String),
}

impl PointRecord {
    pub fn new(index: usize, cfg: &EngineConfig, fc: &FlightCondition, fuel: &str, outcome: &PointOutcome) -> Self {
        let mut rec = PointRecord {
            index,
            fuel: fuel.to_string(),
            mach: fc.mach,
            altitude_m: fc.altitude,
            dt_iat_k: fc.dt_iat,
            pi_fan: cfg.pi_fan,
            pi_c: cfg.pi_c,
            tit_k: cfg.tit,
            alpha: cfg.alpha,
            status: "ok",
            reason: String::new(),
            m_total_kg_s: None,
            mdot_fuel_kg_s: None,
            v0_m_s: None,
            v9_m_s: None,
            thrust_kn: None,
            tsfc_g_per_kns: None,
            eta_th: None,
            eta_p: None,
            eta_ex: None,
            heat_rate_mw: None,
            t3_k: None,
            t4_k: None,
            t6_k: None,
            t7_k: None,
            t8_k: None,
            t9_k: None,
            p8_pa: None,
            ed_fan_mw: None,
            ed_hpc_mw: None,
            ed_cc_mw: None,
            ed_hpt_mw: None,
            ed_lpt_mw: None,
            ed_mixer_mw: None,
            ed_nozzle_mw: None,
        };
        let (sol, ex) = match outcome {
            PointOutcome::Failed(msg) => {
                rec.status = "failed";
                rec.reason = msg.clone();
                return rec;
            }
            PointOutcome::Infeasible(b) => {
                rec.status = "infeasible";
                rec.reason = "non-positive thrust".into();
                (&b.0, &b.1)
            }
            PointOutcome::Solved(b) => (&b.0, &b.1),
        };
        let t = |i: u8| Some(sol.station(i).t);
        let ed = |c: Component| Some(ex.get(c).destruction);
        PointRecord {
            m_total_kg_s: Some(sol.m_total),
            mdot_fuel_kg_s: Some(sol.mdot_fuel),
            v0_m_s: Some(sol.v0),
            v9_m_s: Some(sol.v9),
            thrust_kn: Some(sol.thrust),
            tsfc_g_per_kns: Some(sol.tsfc),
            eta_th: Some(sol.eta_th),
            eta_p: Some(sol.eta_p),
            eta_ex: Some(ex.overall_eta_ex),
            heat_rate_mw: Some(sol.heat_rate),
            t3_k: t(3),
            t4_k: t(4),
            t6_k: t(6),
            t7_k: t(7),
            t8_k: t(8),
            t9_k: t(9),
            p8_pa: Some(sol.station(8).p),
            ed_fan_mw: ed(Component::Fan),
            ed_hpc_mw: ed(Component::Hpc),
            ed_cc_mw: ed(Component::Cc),
            ed_hpt_mw: ed(Component::Hpt),
            ed_lpt_mw: ed(Component::Lpt),
            ed_mixer_mw: ed(Component::Mixer),
            ed_nozzle_mw: ed(Component::Nozzle),
            ..rec
        }
    }
}

pub fn write_records<W: Write>(out: W, records: &[PointRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| crate::Error::io("<csv>", e))?;
    Ok(())
}

#[derive(Serialize)]
struct ExergyRow<'a> {
    component: &'a str,
    eta_ex: Option<f64>,
    #[serde(rename = "E_D_MW")]
    e_d_mw: f64,
}

/// `component,eta_ex,E_D_MW` table, one row per component plus `overall`.
pub fn write_exergy_csv<W: Write>(out: W, report: &ExergyReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for c in &report.components {
        w.serialize(ExergyRow {
            component: c.component.name(),
            eta_ex: c.eta_ex,
            e_d_mw: c.destruction,
        })?;
    }
    w.serialize(ExergyRow {
        component: "overall",
        eta_ex: Some(report.overall_eta_ex),
        e_d_mw: report.total_destruction(),
    })?;
    w.flush().map_err(|e| crate::Error::io("<csv>", e))?;
    Ok(())
}

#[derive(Serialize)]
struct Performance {
    m_total_kg_s: f64,
    m_core_kg_s: f64,
    m_bypass_kg_s: f64,
    mdot_fuel_kg_s: f64,
    v0_m_s: f64,
    v9_m_s: f64,
    thrust_kn: f64,
    tsfc_g_per_kns: f64,
    eta_th: f64,
    eta_p: f64,
    heat_rate_mw: f64,
    w_fan_mw: f64,
    w_hpc_mw: f64,
    w_hpt_mw: f64,
    w_lpt_mw: f64,
    feasible: bool,
}

#[derive(Serialize)]
struct ComponentText {
    component: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta_ex: Option<f64>,
    destruction_mw: f64,
}

#[derive(Serialize)]
struct ExergyText {
    overall_eta_ex: f64,
    fuel_exergy_rate_mw: f64,
    total_destruction_mw: f64,
    components: Vec<ComponentText>,
}

#[derive(Serialize)]
struct SimulationText<'a> {
    fuel: &'a str,
    flight: &'a FlightCondition,
    performance: Performance,
    #[serde(skip_serializing_if = "Option::is_none")]
    exergy: Option<ExergyText>,
    stations: &'a [StationState],
}

/// TOML rendering of a single solved point.
pub fn simulation_text(sol: &CycleSolution, exergy: Option<&ExergyReport>) -> String {
    let text = SimulationText {
        fuel: &sol.fuel_name,
        flight: &sol.flight,
        performance: Performance {
            m_total_kg_s: sol.m_total,
            m_core_kg_s: sol.m_core,
            m_bypass_kg_s: sol.m_bypass,
            mdot_fuel_kg_s: sol.mdot_fuel,
            v0_m_s: sol.v0,
            v9_m_s: sol.v9,
            thrust_kn: sol.thrust,
            tsfc_g_per_kns: sol.tsfc,
            eta_th: sol.eta_th,
            eta_p: sol.eta_p,
            heat_rate_mw: sol.heat_rate,
            w_fan_mw: sol.w_fan,
            w_hpc_mw: sol.w_hpc,
            w_hpt_mw: sol.w_hpt,
            w_lpt_mw: sol.w_lpt,
            feasible: sol.is_feasible(),
        },
        exergy: exergy.map(|ex| ExergyText {
            overall_eta_ex: ex.overall_eta_ex,
            fuel_exergy_rate_mw: ex.fuel_exergy_rate,
            total_destruction_mw: ex.total_destruction(),
            components: ex
                .components
                .iter()
                .map(|c| ComponentText {
                    component: c.component.name(),
                    eta_ex: c.eta_ex,
                    destruction_mw: c.destruction,
                })
                .collect(),
        }),
        stations: &sol.stations,
    };
    toml::to_string(&text).expect("report serializes")
}
