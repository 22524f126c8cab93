//! On-design station solution of the dual-spool mixed-flow turbofan.
//!
//! Station numbering: 0 ambient, 1 after the inlet air cooler, 2 diffuser
//! exit, 3 fan exit, 4 HPC exit, 5 combustor exit (= TIT), 6 HPT exit,
//! 7 LPT exit, 8 mixer exit, 9 nozzle exit. All temperatures and pressures
//! past station 1 are stagnation values except the fully expanded nozzle
//! exit.
//!
//! Each component evaluates cp and k at the arithmetic mean of its inlet and
//! outlet temperature and iterates that to a fixed point. The chain has no
//! feedback from downstream components, so one pass over converged components
//! is the converged cycle.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::atmosphere::{isa_state, AmbientState, R_AIR};
use crate::error::{Error, Result};
use crate::gasprops::{Fuel, GasModel, PropertyModel};
use crate::numeric::{fixed_point, mean, TEMPERATURE_TOL};

/// Reference condition for intake flow scaling when no intake area is given.
const REFERENCE_MACH: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    pub pi_fan: f64,
    pub pi_c: f64,
    /// Turbine inlet temperature, K.
    pub tit: f64,
    /// Bypass ratio.
    pub alpha: f64,
    pub eta_fan: f64,
    pub eta_c: f64,
    pub eta_hpt: f64,
    pub eta_lpt: f64,
    pub eta_n: f64,
    pub eta_cc: f64,
    /// Combustor total-pressure loss as a fraction of P4.
    pub dpcc_frac: f64,
    /// Capture area for `m = rho V0 A`, m². When absent, flight mass flow is
    /// `design_mass_flow` scaled by rho·V0 against sea level at Mach 0.8.
    pub intake_area: Option<f64>,
    /// Static (and reference) intake mass flow, kg/s.
    pub design_mass_flow: Option<f64>,
    /// Charge the fan work on the whole intake flow (`true`) or on the bypass
    /// flow alone (`false`).
    pub fan_full_flow: bool,
    pub mixer_pressure: MixerPressure,
    pub properties: PropertyModel,
}

/// How the mixer exit pressure is formed from the two inlet streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixerPressure {
    /// `ln P8 = sum(m R ln P) / sum(m R)`: the pressure part of the mixing
    /// entropy change is zero, so mixing never creates exergy.
    #[default]
    LogMean,
    /// `P8 = sum(m P) / sum(m)`. Can report negative mixer destruction when
    /// the inlet pressures differ widely.
    MassWeighted,
}

impl Default for EngineConfig {
    /// Design point.
    fn default() -> Self {
        EngineConfig {
            pi_fan: 4.7,
            pi_c: 6.0,
            tit: 2175.0,
            alpha: 0.57,
            eta_fan: 0.90,
            eta_c: 0.85,
            eta_hpt: 0.90,
            eta_lpt: 0.91,
            eta_n: 0.98,
            eta_cc: 0.995,
            dpcc_frac: 0.04,
            intake_area: None,
            design_mass_flow: Some(147.0),
            fan_full_flow: true,
            mixer_pressure: MixerPressure::LogMean,
            properties: PropertyModel::Nasa,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        for (name, v) in [("pi_fan", self.pi_fan), ("pi_c", self.pi_c)] {
            if !(v >= 1.0) {
                return bad(format!("{name} = {v} must be at least 1"));
            }
        }
        for (name, v) in [
            ("eta_fan", self.eta_fan),
            ("eta_c", self.eta_c),
            ("eta_hpt", self.eta_hpt),
            ("eta_lpt", self.eta_lpt),
            ("eta_n", self.eta_n),
            ("eta_cc", self.eta_cc),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return bad(format!("{name} = {v} must be in (0, 1]"));
            }
        }
        if !(self.alpha >= 0.0) {
            return bad(format!("alpha = {} must be non-negative", self.alpha));
        }
        if !(0.0..0.2).contains(&self.dpcc_frac) {
            return bad(format!("dpcc_frac = {} must be in [0, 0.2)", self.dpcc_frac));
        }
        if !(self.tit > 0.0) {
            return bad(format!("tit = {} must be positive", self.tit));
        }
        if let Some(a) = self.intake_area {
            if !(a > 0.0) {
                return bad(format!("intake_area = {a} must be positive"));
            }
        }
        if let Some(m) = self.design_mass_flow {
            if !(m > 0.0) {
                return bad(format!("design_mass_flow = {m} must be positive"));
            }
        }
        if let PropertyModel::Constant { cp, mw } = self.properties {
            if !(cp > 0.0 && mw > 0.0) {
                return bad("constant property model needs positive cp and mw".into());
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: EngineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str::<EngineConfig>(&text)
            .map_err(|e| Error::parse(path, e))
            .and_then(|cfg| cfg.validate().map(|_| cfg))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("engine config serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlightCondition {
    pub mach: f64,
    /// m
    pub altitude: f64,
    /// Inlet air temperature change from the cooler, K (negative = cooling).
    pub dt_iat: f64,
}

impl Default for FlightCondition {
    fn default() -> Self {
        FlightCondition {
            mach: 0.0,
            altitude: 0.0,
            dt_iat: 0.0,
        }
    }
}

impl FlightCondition {
    pub fn new(mach: f64, altitude: f64, dt_iat: f64) -> Self {
        FlightCondition { mach, altitude, dt_iat }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mach >= 0.0 && self.mach.is_finite()) {
            return Err(Error::Config(format!("mach = {} must be >= 0", self.mach)));
        }
        if !self.dt_iat.is_finite() {
            return Err(Error::Config("dt_iat must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationState {
    pub station: u8,
    /// K
    pub t: f64,
    /// Pa
    pub p: f64,
    /// kg/s
    pub mdot: f64,
}

impl StationState {
    fn new(station: u8, t: f64, p: f64, mdot: f64) -> Result<Self> {
        if !(t > 0.0 && p > 0.0 && mdot >= 0.0) {
            return Err(Error::Infeasible(format!(
                "station {station}: T = {t}, P = {p}, mdot = {mdot}"
            )));
        }
        Ok(StationState { station, t, p, mdot })
    }
}

/// Station 1 plus the flow split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intake {
    pub state: StationState,
    pub v0: f64,
    pub m_total: f64,
    /// Core (hot) flow, kg/s.
    pub m_core: f64,
    /// Bypass (cold) flow, kg/s.
    pub m_bypass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Compression {
    pub state: StationState,
    /// W
    pub work: f64,
    /// Mean-temperature cp used for the work, J/(kg·K).
    pub cp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Combustion {
    pub state: StationState,
    pub mdot_fuel: f64,
    /// W
    pub heat_rate: f64,
    /// Gas leaving the combustor.
    pub gas: GasModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expansion {
    pub state: StationState,
    /// Work recovered from the exit state, W.
    pub work: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mixed {
    pub state: StationState,
    pub gas: GasModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NozzleExit {
    pub state: StationState,
    pub v9: f64,
}

fn flight_speed(amb: &AmbientState, mach: f64, model: PropertyModel) -> Result<f64> {
    let gamma = GasModel::air(model).gamma(amb.t0)?;
    Ok(mach * (gamma * R_AIR * amb.t0).sqrt())
}

/// Inlet air cooler and core/bypass split.
pub fn intake(amb: &AmbientState, fc: &FlightCondition, cfg: &EngineConfig) -> Result<Intake> {
    let t1 = amb.t0 + fc.dt_iat;
    let p1 = amb.p0;
    if !(t1 > 0.0) {
        return Err(Error::Infeasible(format!("intake temperature {t1} K")));
    }
    let v0 = flight_speed(amb, fc.mach, cfg.properties)?;
    let rho1 = p1 / (R_AIR * t1);

    let m_total = match (v0 > 0.0, cfg.intake_area, cfg.design_mass_flow) {
        (true, Some(area), _) => rho1 * v0 * area,
        (true, None, Some(design)) => {
            let sl = isa_state(0.0)?;
            let flux_ref = sl.rho0 * flight_speed(&sl, REFERENCE_MACH, cfg.properties)?;
            design * rho1 * v0 / flux_ref
        }
        (false, _, Some(design)) => design,
        (true, None, None) => {
            return Err(Error::Config(
                "flight mass flow needs intake_area or design_mass_flow".into(),
            ))
        }
        (false, _, None) => return Err(Error::Config("static operation needs design_mass_flow".into())),
    };
    let m_core = m_total / (cfg.alpha + 1.0);
    let m_bypass = m_total - m_core;
    Ok(Intake {
        state: StationState::new(1, t1, p1, m_total)?,
        v0,
        m_total,
        m_core,
        m_bypass,
    })
}

/// Ram compression to stagnation conditions.
pub fn diffuser(s1: &StationState, mach: f64, model: PropertyModel) -> Result<StationState> {
    if mach == 0.0 {
        return StationState::new(2, s1.t, s1.p, s1.mdot);
    }
    let air = GasModel::air(model);
    let ram = |t2: f64| -> Result<f64> {
        let k = air.gamma(mean(s1.t, t2))?;
        Ok(s1.t * (1.0 + 0.5 * (k - 1.0) * mach * mach))
    };
    let t2 = fixed_point("diffuser temperature", s1.t, TEMPERATURE_TOL, ram)?;
    let x = air.isentropic_exponent(mean(s1.t, t2))?;
    StationState::new(2, t2, s1.p * (t2 / s1.t).powf(1.0 / x), s1.mdot)
}

/// Exit temperature and mean cp of an adiabatic compression.
fn compress(gas: &GasModel, t_in: f64, pr: f64, eta: f64) -> Result<(f64, f64)> {
    let exit = |t_out: f64| -> Result<f64> {
        let x = gas.isentropic_exponent(mean(t_in, t_out))?;
        Ok(t_in + t_in / eta * (pr.powf(x) - 1.0))
    };
    let t_out = fixed_point("compressor exit temperature", t_in, TEMPERATURE_TOL, exit)?;
    Ok((t_out, gas.cp(mean(t_in, t_out))?))
}

/// Fan on the full intake flow; `m_bypass` is needed when the fan work is
/// charged to the bypass stream only.
pub fn fan(s2: &StationState, m_bypass: f64, cfg: &EngineConfig) -> Result<Compression> {
    let air = GasModel::air(cfg.properties);
    let (t3, cp) = compress(&air, s2.t, cfg.pi_fan, cfg.eta_fan)?;
    let m_work = if cfg.fan_full_flow { s2.mdot } else { m_bypass };
    Ok(Compression {
        state: StationState::new(3, t3, cfg.pi_fan * s2.p, s2.mdot)?,
        work: m_work * cp * (t3 - s2.t),
        cp,
    })
}

/// High-pressure compressor on the core stream (`s3.mdot` is the core flow).
pub fn compressor(s3: &StationState, cfg: &EngineConfig) -> Result<Compression> {
    let air = GasModel::air(cfg.properties);
    let (t4, cp) = compress(&air, s3.t, cfg.pi_c, cfg.eta_c)?;
    Ok(Compression {
        state: StationState::new(4, t4, cfg.pi_c * s3.p, s3.mdot)?,
        work: s3.mdot * cp * (t4 - s3.t),
        cp,
    })
}

pub fn combustor(s4: &StationState, cfg: &EngineConfig, fuel: &Fuel) -> Result<Combustion> {
    let t5 = cfg.tit;
    if t5 <= s4.t {
        return Err(Error::Infeasible(format!(
            "TIT {t5:.2} K does not exceed compressor exit {:.2} K",
            s4.t
        )));
    }
    let m_air = s4.mdot;
    let fhv = fuel.fhv_j_per_kg();
    let gas_at = |mdot_fuel: f64| GasModel::products(cfg.properties, fuel.composition, mdot_fuel / m_air);
    let fuel_flow = |mdot_fuel: f64| -> Result<f64> {
        let c_av = gas_at(mdot_fuel)?.cp(mean(s4.t, t5))?;
        Ok(m_air * c_av * (t5 - s4.t) / (fhv * cfg.eta_cc))
    };
    let first_guess = fuel_flow(0.0)?;
    let mdot_fuel = fixed_point("combustor fuel flow", first_guess, 1e-12 * m_air, fuel_flow)?;
    let gas = gas_at(mdot_fuel)?;
    let heat_rate = mdot_fuel * fhv * cfg.eta_cc;
    Ok(Combustion {
        state: StationState::new(5, t5, s4.p * (1.0 - cfg.dpcc_frac), m_air + mdot_fuel)?,
        mdot_fuel,
        heat_rate,
        gas,
    })
}

/// Turbine delivering `work` (W) with isentropic efficiency `eta`.
fn expand(station: u8, s_in: &StationState, gas: &GasModel, work: f64, eta: f64) -> Result<Expansion> {
    let m = s_in.mdot;
    let exit = |t_out: f64| -> Result<f64> {
        let t = s_in.t - work / (m * gas.cp(mean(s_in.t, t_out))?);
        if t <= 0.0 {
            return Err(Error::Infeasible(format!(
                "turbine {station} cannot deliver {:.3} MW",
                work * 1e-6
            )));
        }
        Ok(t)
    };
    let t_out = fixed_point("turbine exit temperature", s_in.t, TEMPERATURE_TOL, exit)?;
    let t_mean = mean(s_in.t, t_out);
    let x = gas.isentropic_exponent(t_mean)?;
    let bracket = 1.0 - (1.0 - t_out / s_in.t) / eta;
    if bracket <= 0.0 {
        return Err(Error::Infeasible(format!(
            "turbine {station} expansion beyond zero pressure"
        )));
    }
    let p_out = s_in.p * bracket.powf(1.0 / x);
    Ok(Expansion {
        state: StationState::new(station, t_out, p_out, m)?,
        work: m * gas.cp(t_mean)? * (s_in.t - t_out),
    })
}

/// HPT sized to drive the HPC.
pub fn hpt(s5: &StationState, gas: &GasModel, w_hpc: f64, cfg: &EngineConfig) -> Result<Expansion> {
    expand(6, s5, gas, w_hpc, cfg.eta_hpt)
}

/// LPT sized to drive the fan.
pub fn lpt(s6: &StationState, gas: &GasModel, w_fan: f64, cfg: &EngineConfig) -> Result<Expansion> {
    expand(7, s6, gas, w_fan, cfg.eta_lpt)
}

/// Adiabatic mixing of the core exhaust `s7` with the bypass stream `s3b`
/// (station-3 state at bypass flow). Each stream's cp is taken at the mean of
/// its inlet temperature and the mixed-out temperature, so the balance is a
/// convex combination; pressure is the mass-weighted mean.
pub fn mixer(
    s7: &StationState,
    core_gas: &GasModel,
    s3b: &StationState,
    mdot_fuel: f64,
    model: PropertyModel,
    pressure: MixerPressure,
) -> Result<Mixed> {
    let air = GasModel::air(model);
    let m_g = s7.mdot + s3b.mdot;
    let m_air = m_g - mdot_fuel;
    let gas = match core_gas.fuel {
        Some(fuel) if mdot_fuel > 0.0 => GasModel::products(model, fuel, mdot_fuel / m_air)?,
        _ => air,
    };
    let t8 = if s3b.mdot == 0.0 {
        s7.t
    } else {
        let balance = |t8: f64| -> Result<f64> {
            let c7 = s7.mdot * core_gas.cp(mean(s7.t, t8))?;
            let c3 = s3b.mdot * air.cp(mean(s3b.t, t8))?;
            Ok((c7 * s7.t + c3 * s3b.t) / (c7 + c3))
        };
        fixed_point("mixer temperature", s7.t, TEMPERATURE_TOL, balance)?
    };
    let p8 = match pressure {
        MixerPressure::MassWeighted => (s7.mdot * s7.p + s3b.mdot * s3b.p) / m_g,
        MixerPressure::LogMean => {
            let (w7, w3) = (s7.mdot * core_gas.r(), s3b.mdot * air.r());
            ((w7 * s7.p.ln() + w3 * s3b.p.ln()) / (w7 + w3)).exp()
        }
    };
    Ok(Mixed {
        state: StationState::new(8, t8, p8, m_g)?,
        gas,
    })
}

/// Convergent-divergent nozzle, fully expanded to ambient.
pub fn nozzle(s8: &StationState, gas: &GasModel, amb: &AmbientState, cfg: &EngineConfig) -> Result<NozzleExit> {
    let p9 = amb.p0;
    if s8.p <= p9 {
        return Err(Error::Infeasible(format!(
            "nozzle inlet pressure {:.1} Pa does not exceed ambient {:.1} Pa",
            s8.p, p9
        )));
    }
    let exit = |t9: f64| -> Result<f64> {
        let x = gas.isentropic_exponent(mean(s8.t, t9))?;
        Ok(s8.t * (1.0 - cfg.eta_n * (1.0 - (p9 / s8.p).powf(x))))
    };
    let t9 = fixed_point("nozzle exit temperature", s8.t, TEMPERATURE_TOL, exit)?;
    let t_mean = mean(s8.t, t9);
    let x = gas.isentropic_exponent(t_mean)?;
    // V² = 2 eta_n k/(k-1) R T8 [1 - (P9/P8)^((k-1)/k)]
    let v9 = (2.0 * cfg.eta_n * gas.r() / x * s8.t * (1.0 - (p9 / s8.p).powf(x))).sqrt();
    Ok(NozzleExit {
        state: StationState::new(9, t9, p9, s8.mdot)?,
        v9,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleSolution {
    /// Stations 0–9; station 3 carries the whole fan exit flow.
    pub stations: Vec<StationState>,
    /// Bypass stream at the mixer inlet (station-3 state, bypass flow).
    pub bypass: StationState,
    pub ambient: AmbientState,
    pub flight: FlightCondition,
    pub fuel_name: String,
    pub m_total: f64,
    pub m_core: f64,
    pub m_bypass: f64,
    pub mdot_fuel: f64,
    /// Flow on which the fan work is charged, kg/s.
    pub fan_mass_flow: f64,
    pub v0: f64,
    pub v9: f64,
    /// kN
    pub thrust: f64,
    /// g/(kN·s)
    pub tsfc: f64,
    pub eta_th: f64,
    pub eta_p: f64,
    /// MW
    pub heat_rate: f64,
    /// MW
    pub w_fan: f64,
    pub w_hpc: f64,
    pub w_hpt: f64,
    pub w_lpt: f64,
    #[serde(skip)]
    pub core_gas: GasModel,
    #[serde(skip)]
    pub exhaust_gas: GasModel,
}

impl CycleSolution {
    pub fn station(&self, idx: u8) -> &StationState {
        &self.stations[idx as usize]
    }

    /// A point with non-positive thrust solves but is not a usable operating point.
    pub fn is_feasible(&self) -> bool {
        self.thrust > 0.0 && self.thrust.is_finite()
    }

    pub fn hp_spool_residual(&self) -> f64 {
        (self.w_hpt - self.w_hpc).abs() / self.w_hpc
    }

    pub fn lp_spool_residual(&self) -> f64 {
        (self.w_lpt - self.w_fan).abs() / self.w_fan
    }

    pub fn mass_residual(&self) -> f64 {
        let expected = self.m_core + self.m_bypass + self.mdot_fuel;
        (self.station(9).mdot - expected).abs() / expected
    }
}

pub(crate) struct Flow {
    pub ambient: AmbientState,
    pub intake: Intake,
    pub s2: StationState,
    pub fan: Compression,
    pub hpc: Compression,
    pub cc: Combustion,
    pub hpt: Expansion,
    pub lpt: Expansion,
    pub bypass: StationState,
    pub mix: Mixed,
    pub noz: NozzleExit,
}

/// Assembles thrust, TSFC and efficiencies from solved stations.
pub(crate) fn performance(flow: Flow, fc: &FlightCondition, fuel: &Fuel, fan_mass_flow: f64) -> CycleSolution {
    let Flow {
        ambient,
        intake,
        s2,
        fan,
        hpc,
        cc,
        hpt,
        lpt,
        bypass,
        mix,
        noz,
    } = flow;
    let m_g = noz.state.mdot;
    let v0 = intake.v0;
    let v9 = noz.v9;
    let thrust_n = m_g * (v9 - v0);
    let kinetic = 0.5 * m_g * (v9 * v9 - v0 * v0);
    let eta_p = if v0 == 0.0 { 0.0 } else { thrust_n * v0 / kinetic };
    let s0 = StationState {
        station: 0,
        t: ambient.t0,
        p: ambient.p0,
        mdot: intake.m_total,
    };
    CycleSolution {
        stations: vec![
            s0,
            intake.state,
            s2,
            fan.state,
            hpc.state,
            cc.state,
            hpt.state,
            lpt.state,
            mix.state,
            noz.state,
        ],
        bypass,
        ambient,
        flight: *fc,
        fuel_name: fuel.name.clone(),
        m_total: intake.m_total,
        m_core: intake.m_core,
        m_bypass: intake.m_bypass,
        mdot_fuel: cc.mdot_fuel,
        fan_mass_flow,
        v0,
        v9,
        thrust: thrust_n * 1e-3,
        tsfc: cc.mdot_fuel * 1e6 / thrust_n,
        eta_th: kinetic / (cc.mdot_fuel * fuel.fhv_j_per_kg()),
        eta_p,
        heat_rate: cc.heat_rate * 1e-6,
        w_fan: fan.work * 1e-6,
        w_hpc: hpc.work * 1e-6,
        w_hpt: hpt.work * 1e-6,
        w_lpt: lpt.work * 1e-6,
        core_gas: cc.gas,
        exhaust_gas: mix.gas,
    }
}

pub fn solve_cycle(cfg: &EngineConfig, fc: &FlightCondition, fuel: &Fuel) -> Result<CycleSolution> {
    cfg.validate()?;
    fc.validate()?;
    let ambient = isa_state(fc.altitude)?;
    let model = cfg.properties;

    let intake = intake(&ambient, fc, cfg)?;
    let s2 = diffuser(&intake.state, fc.mach, model)?;
    let fan = fan(&s2, intake.m_bypass, cfg)?;
    let core_in = StationState {
        mdot: intake.m_core,
        ..fan.state
    };
    let hpc = compressor(&core_in, cfg)?;
    let cc = combustor(&hpc.state, cfg, fuel)?;
    let hpt = hpt(&cc.state, &cc.gas, hpc.work, cfg)?;
    let lpt = lpt(&hpt.state, &cc.gas, fan.work, cfg)?;
    let bypass = StationState {
        mdot: intake.m_bypass,
        ..fan.state
    };
    let mix = mixer(&lpt.state, &cc.gas, &bypass, cc.mdot_fuel, model, cfg.mixer_pressure)?;
    let noz = nozzle(&mix.state, &mix.gas, &ambient, cfg)?;

    let fan_mass_flow = if cfg.fan_full_flow {
        intake.m_total
    } else {
        intake.m_bypass
    };
    let flow = Flow {
        ambient,
        intake,
        s2,
        fan,
        hpc,
        cc,
        hpt,
        lpt,
        bypass,
        mix,
        noz,
    };
    Ok(performance(flow, fc, fuel, fan_mass_flow))
}
