//! Thermodynamic properties of dry air and lean combustion products, and the
//! fuel table.
//!
//! Species heat capacities use the NASA 7-coefficient polynomials (GRI-Mech
//! 3.0 data, two ranges split at 1000 K). Air is the standard dry composition;
//! combustion gas is air with a fraction of it converted to complete
//! stoichiometric products (CO2, H2O, inerts) for the given fuel-air ratio.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::atmosphere::R_AIR;
use crate::error::{Error, Result};
use crate::numeric::mean;

/// Universal gas constant, J/(mol·K).
pub const R_UNIVERSAL: f64 = 8.314_462_618;
/// Molar mass of dry air consistent with [`R_AIR`], g/mol.
pub const MW_AIR: f64 = R_UNIVERSAL * 1000.0 / R_AIR;

pub const T_MIN: f64 = 150.0;
pub const T_MAX: f64 = 3000.0;

struct Species {
    molar_mass: f64,
    low: [f64; 5],
    high: [f64; 5],
}

impl Species {
    /// cp in J/(mol·K).
    fn cp_molar(&self, t: f64) -> f64 {
        let c = if t < 1000.0 { &self.low } else { &self.high };
        R_UNIVERSAL * (c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4]))))
    }

    fn coeffs(&self, t: f64) -> &[f64; 5] {
        if t < 1000.0 {
            &self.low
        } else {
            &self.high
        }
    }

    /// Integral of cp over [a, b], J/mol, split at the range boundary.
    fn cp_integral(&self, a: f64, b: f64) -> f64 {
        let prim =
            |c: &[f64; 5], t: f64| t * (c[0] + t * (c[1] / 2.0 + t * (c[2] / 3.0 + t * (c[3] / 4.0 + t * c[4] / 5.0))));
        self.piecewise(a, b, prim)
    }

    /// Integral of cp/T over [a, b], J/(mol·K).
    fn cp_over_t_integral(&self, a: f64, b: f64) -> f64 {
        let prim =
            |c: &[f64; 5], t: f64| c[0] * t.ln() + t * (c[1] + t * (c[2] / 2.0 + t * (c[3] / 3.0 + t * c[4] / 4.0)));
        self.piecewise(a, b, prim)
    }

    fn piecewise(&self, a: f64, b: f64, prim: impl Fn(&[f64; 5], f64) -> f64) -> f64 {
        let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
        let span = |x: f64, y: f64| {
            let c = self.coeffs(mean(x, y));
            prim(c, y) - prim(c, x)
        };
        let total = if lo < 1000.0 && hi > 1000.0 {
            span(lo, 1000.0) + span(1000.0, hi)
        } else {
            span(lo, hi)
        };
        sign * R_UNIVERSAL * total
    }
}

const N2: Species = Species {
    molar_mass: 28.0134,
    low: [3.298677, 1.4082404e-3, -3.963222e-6, 5.641515e-9, -2.444854e-12],
    high: [2.92664, 1.4879768e-3, -5.68476e-7, 1.0097038e-10, -6.753351e-15],
};
const O2: Species = Species {
    molar_mass: 31.9988,
    low: [
        3.78245636,
        -2.99673416e-3,
        9.84730201e-6,
        -9.68129509e-9,
        3.24372837e-12,
    ],
    high: [
        3.28253784,
        1.48308754e-3,
        -7.57966669e-7,
        2.09470555e-10,
        -2.16717794e-14,
    ],
};
const AR: Species = Species {
    molar_mass: 39.948,
    low: [2.5, 0.0, 0.0, 0.0, 0.0],
    high: [2.5, 0.0, 0.0, 0.0, 0.0],
};
const CO2: Species = Species {
    molar_mass: 44.0095,
    low: [
        2.35677352,
        8.98459677e-3,
        -7.12356269e-6,
        2.45919022e-9,
        -1.43699548e-13,
    ],
    high: [
        3.85746029,
        4.41437026e-3,
        -2.21481404e-6,
        5.23490188e-10,
        -4.72084164e-14,
    ],
};
const H2O: Species = Species {
    molar_mass: 18.01528,
    low: [4.19864056, -2.0364341e-3, 6.52040211e-6, -5.48797062e-9, 1.77197817e-12],
    high: [
        3.03399249,
        2.17691804e-3,
        -1.64072518e-7,
        -9.7041987e-11,
        1.68200992e-14,
    ],
};

// dry air mole fractions
const X_N2: f64 = 0.78084;
const X_O2: f64 = 0.20946;
const X_AR: f64 = 0.00934;
const X_CO2: f64 = 0.00036;

const MW_C: f64 = 12.011;
const MW_H: f64 = 1.008;

/// How specific heats are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropertyModel {
    /// Temperature-dependent species polynomials.
    #[default]
    Nasa,
    /// Calorically perfect gas with fixed cp (J/(kg·K)) and molar mass (g/mol)
    /// for every stream. Used for closed-form checks.
    Constant { cp: f64, mw: f64 },
}

impl PropertyModel {
    /// Calorically perfect gas with the given ratio of specific heats and the
    /// molar mass of air.
    pub fn constant_gamma(gamma: f64) -> Self {
        PropertyModel::Constant {
            cp: gamma / (gamma - 1.0) * R_UNIVERSAL * 1000.0 / MW_AIR,
            mw: MW_AIR,
        }
    }
}

/// Carbon and hydrogen atom counts of a CaHb fuel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Composition {
    pub carbon: u32,
    pub hydrogen: u32,
}

impl Composition {
    pub fn molar_mass(&self) -> f64 {
        MW_C * self.carbon as f64 + MW_H * self.hydrogen as f64
    }

    fn o2_per_mole(&self) -> f64 {
        self.carbon as f64 + self.hydrogen as f64 / 4.0
    }

    fn air_moles_per_mole(&self) -> f64 {
        self.o2_per_mole() / X_O2
    }

    /// Stoichiometric fuel-air mass ratio.
    pub fn stoichiometric_far(&self) -> f64 {
        self.molar_mass() / (self.air_moles_per_mole() * MW_AIR)
    }

    /// cp of the complete stoichiometric products, J/(kg·K).
    fn products_cp(&self, t: f64) -> f64 {
        self.products_specific(|s| s.cp_molar(t))
    }

    fn products_specific(&self, f: impl Fn(&Species) -> f64) -> f64 {
        let n_air = self.air_moles_per_mole();
        let molar = (self.carbon as f64 + X_CO2 * n_air) * f(&CO2)
            + 0.5 * self.hydrogen as f64 * f(&H2O)
            + X_N2 * n_air * f(&N2)
            + X_AR * n_air * f(&AR);
        let mass = self.molar_mass() + n_air * MW_AIR;
        molar / mass * 1000.0
    }

    fn products_moles_per_mole(&self) -> f64 {
        self.carbon as f64 + 0.5 * self.hydrogen as f64 + self.air_moles_per_mole() * (1.0 - X_O2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fuel {
    pub name: String,
    pub composition: Composition,
    /// Fuel heating value, MJ/kg.
    pub fhv: f64,
    /// Specific chemical exergy, MJ/kg.
    pub chem_exergy: f64,
    /// g/mol
    pub molecular_weight: f64,
}

impl Fuel {
    pub fn fhv_j_per_kg(&self) -> f64 {
        self.fhv * 1e6
    }

    pub fn chem_exergy_j_per_kg(&self) -> f64 {
        self.chem_exergy * 1e6
    }

    fn validate(&self) -> Result<()> {
        if self.fhv <= 0.0 || self.chem_exergy <= 0.0 || self.molecular_weight <= 0.0 {
            return Err(Error::Config(format!(
                "fuel {}: heating value, chemical exergy and molecular weight must be positive",
                self.name
            )));
        }
        if self.composition.hydrogen < 1 {
            return Err(Error::Config(format!(
                "fuel {}: needs at least one hydrogen atom",
                self.name
            )));
        }
        Ok(())
    }
}

fn builtin_fuels() -> Vec<Fuel> {
    let fuel = |name: &str, carbon, hydrogen, fhv, chem_exergy, molecular_weight| Fuel {
        name: name.to_string(),
        composition: Composition { carbon, hydrogen },
        fhv,
        chem_exergy,
        molecular_weight,
    };
    vec![
        fuel("JP10", 10, 16, 42.075, 44.921, 136.0),
        fuel("Diesel", 12, 23, 42.740, 44.661, 167.0),
        fuel("NaturalGas", 1, 4, 49.736, 55.168, 16.0),
        fuel("Hydrogen", 0, 2, 118.429, 134.778, 2.0),
    ]
}

fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Fuel table. Starts from the four built-in fuels; more can be loaded from a
/// CSV file with header `name,a,b,fhv_mj_per_kg,chem_exergy_mj_per_kg,mw_g_per_mol`.
#[derive(Debug, Clone)]
pub struct FuelDb {
    fuels: Vec<Fuel>,
}

impl Default for FuelDb {
    fn default() -> Self {
        FuelDb { fuels: builtin_fuels() }
    }
}

#[derive(Deserialize)]
struct FuelRecord {
    name: String,
    a: u32,
    b: u32,
    fhv_mj_per_kg: f64,
    chem_exergy_mj_per_kg: f64,
    mw_g_per_mol: f64,
}

impl FuelDb {
    pub fn fuels(&self) -> &[Fuel] {
        &self.fuels
    }

    pub fn lookup(&self, name: &str) -> Result<Fuel> {
        let key = normalize_name(name);
        self.fuels
            .iter()
            .find(|f| normalize_name(&f.name) == key)
            .cloned()
            .ok_or_else(|| Error::UnknownFuel(name.to_string()))
    }

    /// Adds or replaces a fuel (matched by normalized name).
    pub fn insert(&mut self, fuel: Fuel) -> Result<()> {
        fuel.validate()?;
        let key = normalize_name(&fuel.name);
        match self.fuels.iter_mut().find(|f| normalize_name(&f.name) == key) {
            Some(slot) => *slot = fuel,
            None => self.fuels.push(fuel),
        }
        Ok(())
    }

    pub fn extend_from_reader<R: std::io::Read>(&mut self, reader: R) -> Result<()> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        for rec in rdr.deserialize::<FuelRecord>() {
            let rec = rec?;
            self.insert(Fuel {
                name: rec.name,
                composition: Composition {
                    carbon: rec.a,
                    hydrogen: rec.b,
                },
                fhv: rec.fhv_mj_per_kg,
                chem_exergy: rec.chem_exergy_mj_per_kg,
                molecular_weight: rec.mw_g_per_mol,
            })?;
        }
        Ok(())
    }

    pub fn extend_from_path(&mut self, path: &Path) -> Result<()> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        self.extend_from_reader(file).map_err(|e| match e {
            Error::Csv(c) => Error::parse(path, c),
            other => other,
        })
    }
}

/// Built-in fuel by name (case and punctuation insensitive).
pub fn fuel_lookup(name: &str) -> Result<Fuel> {
    FuelDb::default().lookup(name)
}

/// Hydrocarbon chemical exergy correlation `FHV (1.04224 + 0.011925 a/b - 0.042/a)`,
/// MJ/kg. Tabulated values take precedence; this is for fuels without one.
pub fn chemical_exergy_hydrocarbon(fhv: f64, carbon: u32, hydrogen: u32) -> Result<f64> {
    if carbon == 0 {
        return Err(Error::Config(
            "correlation needs at least one carbon atom; use a tabulated value".into(),
        ));
    }
    if hydrogen == 0 || fhv <= 0.0 {
        return Err(Error::Config(
            "hydrogen count and heating value must be positive".into(),
        ));
    }
    let (a, b) = (carbon as f64, hydrogen as f64);
    Ok(fhv * (1.04224 + 0.011925 * a / b - 0.042 / a))
}

/// Working fluid of one stream: air, or air plus burned fuel at `far`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    pub model: PropertyModel,
    pub fuel: Option<Composition>,
    /// Fuel-air mass ratio.
    pub far: f64,
}

impl GasModel {
    pub fn air(model: PropertyModel) -> Self {
        GasModel {
            model,
            fuel: None,
            far: 0.0,
        }
    }

    pub fn products(model: PropertyModel, fuel: Composition, far: f64) -> Result<Self> {
        if !(far >= 0.0) {
            return Err(Error::Config(format!("fuel-air ratio {far} must be non-negative")));
        }
        let stoich = fuel.stoichiometric_far();
        if far > stoich {
            return Err(Error::Infeasible(format!(
                "fuel-air ratio {far:.5} exceeds stoichiometric {stoich:.5}"
            )));
        }
        Ok(GasModel {
            model,
            fuel: if far > 0.0 { Some(fuel) } else { None },
            far,
        })
    }

    /// Mass fraction of the stream that is stoichiometric combustion products.
    fn products_fraction(&self, fuel: &Composition) -> f64 {
        self.far * (1.0 + 1.0 / fuel.stoichiometric_far()) / (1.0 + self.far)
    }

    /// Specific heat at constant pressure, J/(kg·K).
    pub fn cp(&self, t: f64) -> Result<f64> {
        match self.model {
            PropertyModel::Constant { cp, .. } => Ok(cp),
            PropertyModel::Nasa => {
                check_temperature(t)?;
                let air = air_cp_unchecked(t);
                Ok(match (&self.fuel, self.far > 0.0) {
                    (Some(fuel), true) => {
                        let x = self.products_fraction(fuel);
                        (1.0 - x) * air + x * fuel.products_cp(t)
                    }
                    _ => air,
                })
            }
        }
    }

    fn specific(&self, f: impl Fn(&Species) -> f64) -> f64 {
        let air = air_specific(&f);
        match (&self.fuel, self.far > 0.0) {
            (Some(fuel), true) => {
                let x = self.products_fraction(fuel);
                (1.0 - x) * air + x * fuel.products_specific(&f)
            }
            _ => air,
        }
    }

    /// Enthalpy-weighted mean cp over [a, b]: `(h(b) - h(a)) / (b - a)`.
    pub fn mean_cp(&self, a: f64, b: f64) -> Result<f64> {
        match self.model {
            PropertyModel::Constant { cp, .. } => Ok(cp),
            PropertyModel::Nasa => {
                check_temperature(a)?;
                check_temperature(b)?;
                if (b - a).abs() < 1e-9 {
                    return self.cp(mean(a, b));
                }
                Ok(self.specific(|s| s.cp_integral(a, b)) / (b - a))
            }
        }
    }

    /// Entropy-weighted mean cp over [a, b]: `(s°(b) - s°(a)) / ln(b/a)`.
    pub fn mean_cp_entropy(&self, a: f64, b: f64) -> Result<f64> {
        match self.model {
            PropertyModel::Constant { cp, .. } => Ok(cp),
            PropertyModel::Nasa => {
                check_temperature(a)?;
                check_temperature(b)?;
                if (b - a).abs() < 1e-9 {
                    return self.cp(mean(a, b));
                }
                Ok(self.specific(|s| s.cp_over_t_integral(a, b)) / (b / a).ln())
            }
        }
    }

    /// Molar mass, g/mol.
    pub fn mw(&self) -> f64 {
        match self.model {
            PropertyModel::Constant { mw, .. } => mw,
            PropertyModel::Nasa => match (&self.fuel, self.far > 0.0) {
                (Some(fuel), true) => {
                    let burned_air = self.far / fuel.stoichiometric_far();
                    let moles =
                        (1.0 - burned_air) / MW_AIR + self.far / fuel.molar_mass() * fuel.products_moles_per_mole();
                    (1.0 + self.far) / moles
                }
                _ => MW_AIR,
            },
        }
    }

    /// Specific gas constant, J/(kg·K).
    pub fn r(&self) -> f64 {
        R_UNIVERSAL * 1000.0 / self.mw()
    }

    /// Ratio of specific heats cp/cv.
    pub fn gamma(&self, t: f64) -> Result<f64> {
        let cp = self.cp(t)?;
        Ok(cp / (cp - self.r()))
    }

    /// `(k - 1) / k`, i.e. R/cp, the isentropic exponent.
    pub fn isentropic_exponent(&self, t: f64) -> Result<f64> {
        Ok(self.r() / self.cp(t)?)
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if !(T_MIN..=T_MAX).contains(&t) {
        return Err(Error::OutOfRange {
            quantity: "temperature",
            value: t,
            min: T_MIN,
            max: T_MAX,
        });
    }
    Ok(())
}

fn air_cp_unchecked(t: f64) -> f64 {
    air_specific(|s| s.cp_molar(t))
}

/// Converts a molar species property to a per-kg dry-air value.
fn air_specific(f: impl Fn(&Species) -> f64) -> f64 {
    let molar = X_N2 * f(&N2) + X_O2 * f(&O2) + X_AR * f(&AR) + X_CO2 * f(&CO2);
    let mass = X_N2 * N2.molar_mass + X_O2 * O2.molar_mass + X_AR * AR.molar_mass + X_CO2 * CO2.molar_mass;
    molar / mass * 1000.0
}

/// Dry-air cp, J/(kg·K).
pub fn cp_air(t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(air_cp_unchecked(t))
}

/// Dry-air cp/cv.
pub fn gamma_air(t: f64) -> Result<f64> {
    GasModel::air(PropertyModel::Nasa).gamma(t)
}

pub fn cp_gas(t: f64, gas: &GasModel) -> Result<f64> {
    gas.cp(t)
}

pub fn mw_products(gas: &GasModel) -> f64 {
    gas.mw()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn products(name: &str, far: f64) -> GasModel {
        let fuel = fuel_lookup(name).unwrap();
        GasModel::products(PropertyModel::Nasa, fuel.composition, far).unwrap()
    }

    #[test]
    fn air_cp_against_table() {
        // ideal-gas air table: 1.005 kJ/kgK @300 K, 1.142 @1000 K
        assert_relative_eq!(cp_air(300.0).unwrap(), 1005.0, max_relative = 0.01);
        assert_relative_eq!(cp_air(1000.0).unwrap(), 1142.0, max_relative = 0.01);
        assert_relative_eq!(cp_air(1500.0).unwrap(), 1216.0, max_relative = 0.01);
        assert_relative_eq!(gamma_air(300.0).unwrap(), 1.400, epsilon = 2e-3);
    }

    #[test]
    fn species_against_janaf() {
        // J/(mol K), JANAF: N2 29.12 / 34.85, CO2 37.22 / 58.38, H2O 33.60 / 47.06 at 300 / 1500 K
        for (sp, lo, hi) in [(&N2, 29.12, 34.85), (&CO2, 37.22, 58.38), (&H2O, 33.60, 47.06)] {
            assert_relative_eq!(sp.cp_molar(300.0), lo, max_relative = 0.01);
            assert_relative_eq!(sp.cp_molar(1500.0), hi, max_relative = 0.01);
        }
    }

    #[test]
    fn range_check() {
        assert!(cp_air(T_MIN - 1.0).is_err());
        assert!(cp_air(T_MAX + 1.0).is_err());
        assert!(products("JP10", 0.02).cp(3100.0).is_err());
    }

    #[test]
    fn air_cp_monotone() {
        let mut prev = cp_air(250.0).unwrap();
        for i in 1..=350 {
            let t = 250.0 + i as f64 * 5.0;
            let cp = cp_air(t).unwrap();
            assert!(cp > prev, "cp not increasing at {t}");
            prev = cp;
        }
    }

    #[test]
    fn zero_far_is_air() {
        for name in ["JP10", "Hydrogen"] {
            let gas = products(name, 0.0);
            for t in [200.0, 700.0, 1400.0, 2500.0] {
                assert_eq!(gas.cp(t).unwrap(), cp_air(t).unwrap());
            }
            assert_eq!(gas.mw(), MW_AIR);
        }
    }

    #[test]
    fn water_vapour_raises_cp() {
        assert!(products("Hydrogen", 0.02).cp(1500.0).unwrap() > cp_air(1500.0).unwrap());
    }

    #[test]
    fn cp_monotone_in_far() {
        for name in ["JP10", "Diesel", "NaturalGas", "Hydrogen"] {
            let stoich = fuel_lookup(name).unwrap().composition.stoichiometric_far();
            let mut prev = cp_air(1500.0).unwrap();
            for i in 1..=20 {
                let far = if i == 20 { stoich } else { stoich * i as f64 / 20.0 };
                let cp = products(name, far).cp(1500.0).unwrap();
                assert!(cp > prev);
                prev = cp;
            }
        }
    }

    #[test]
    fn mean_cp_matches_quadrature() {
        let gas = products("JP10", 0.02);
        for (a, b) in [(220.0, 900.0), (300.0, 2100.0), (1200.0, 1800.0), (1500.0, 400.0)] {
            let n = 20_000;
            let dt = (b - a) / n as f64;
            let (mut h, mut s) = (0.0, 0.0);
            for i in 0..n {
                let t = a + (i as f64 + 0.5) * dt;
                let cp = gas.cp(t).unwrap();
                h += cp * dt;
                s += cp / t * dt;
            }
            assert_relative_eq!(gas.mean_cp(a, b).unwrap(), h / (b - a), max_relative = 1e-6);
            assert_relative_eq!(
                gas.mean_cp_entropy(a, b).unwrap(),
                s / (b / a).ln(),
                max_relative = 1e-6
            );
        }
        let air = GasModel::air(PropertyModel::Nasa);
        assert_eq!(air.mean_cp(700.0, 700.0).unwrap(), cp_air(700.0).unwrap());
    }

    #[test]
    fn rich_mixture_rejected() {
        let h2 = fuel_lookup("Hydrogen").unwrap().composition;
        assert!(GasModel::products(PropertyModel::Nasa, h2, 0.03).is_err());
        assert_relative_eq!(h2.stoichiometric_far(), 0.0292, max_relative = 0.01);
    }

    // Independent mole balance: H2 + 0.5 O2 -> H2O burning in air.
    #[test]
    fn mixture_molar_mass() {
        assert_relative_eq!(mw_products(&GasModel::air(PropertyModel::Nasa)), 28.97, epsilon = 0.01);

        let far = 0.01;
        // per kg air: mol air, mol H2 burned, O2 consumed = 0.5 H2, H2O formed = H2
        let n_air = 1000.0 / MW_AIR;
        let n_h2 = far * 1000.0 / 2.016;
        let n_total = n_air + n_h2 - 0.5 * n_h2;
        let expected = (1000.0 + far * 1000.0) / n_total;
        assert_relative_eq!(products("Hydrogen", far).mw(), expected, max_relative = 1e-12);
        assert!(expected < 28.97);

        for far in [0.005, 0.015, 0.03] {
            assert_relative_eq!(products("JP10", far).mw(), 28.97, max_relative = 0.01);
        }
    }

    #[test]
    fn correlation_matches_diesel_row() {
        let ex = chemical_exergy_hydrocarbon(42.740, 12, 23).unwrap();
        assert_relative_eq!(ex, 44.66, epsilon = 5e-3);
    }

    #[test]
    fn correlation_as_printed_for_jp10_and_methane() {
        let jp10 = chemical_exergy_hydrocarbon(42.075, 10, 16).unwrap();
        assert_relative_eq!(
            jp10,
            42.075 * (1.04224 + 0.011925 * 10.0 / 16.0 - 0.0042),
            epsilon = 1e-12
        );
        assert_relative_eq!(jp10, 43.99, epsilon = 5e-3);
        let ch4 = chemical_exergy_hydrocarbon(49.736, 1, 4).unwrap();
        assert_relative_eq!(ch4, 49.736 * (1.04224 + 0.011925 / 4.0 - 0.042), epsilon = 1e-12);
        assert!(chemical_exergy_hydrocarbon(118.429, 0, 2).is_err());
    }

    #[test]
    fn table_rows() {
        let h2 = fuel_lookup("Hydrogen").unwrap();
        assert_eq!((h2.fhv, h2.chem_exergy, h2.molecular_weight), (118.429, 134.778, 2.0));
        assert_eq!(h2.composition, Composition { carbon: 0, hydrogen: 2 });
        let jp10 = fuel_lookup("jp-10").unwrap();
        assert_eq!(
            (jp10.fhv, jp10.chem_exergy, jp10.molecular_weight),
            (42.075, 44.921, 136.0)
        );
        assert_eq!(
            jp10.composition,
            Composition {
                carbon: 10,
                hydrogen: 16
            }
        );
        let ng = fuel_lookup("Natural gas").unwrap();
        assert_eq!((ng.fhv, ng.chem_exergy, ng.molecular_weight), (49.736, 55.168, 16.0));
        assert!(matches!(fuel_lookup("kerosene"), Err(Error::UnknownFuel(_))));
    }

    #[test]
    fn table_exergy_ratio_band() {
        for fuel in FuelDb::default().fuels() {
            let ratio = fuel.chem_exergy / fuel.fhv;
            assert!((1.04..=1.14).contains(&ratio), "{}: {ratio}", fuel.name);
            assert!(fuel.chem_exergy >= fuel.fhv);
        }
    }

    #[test]
    fn fuel_file_extends_table() {
        let csv = "name,a,b,fhv_mj_per_kg,chem_exergy_mj_per_kg,mw_g_per_mol\n\
                   Propane, 3, 8, 46.35, 48.54, 44.1\n";
        let mut db = FuelDb::default();
        db.extend_from_reader(csv.as_bytes()).unwrap();
        let p = db.lookup("propane").unwrap();
        assert_eq!(p.composition, Composition { carbon: 3, hydrogen: 8 });
        assert_eq!(db.fuels().len(), 5);

        let bad = "name,a,b,fhv_mj_per_kg,chem_exergy_mj_per_kg,mw_g_per_mol\nX,1,0,1,1,1\n";
        assert!(FuelDb::default().extend_from_reader(bad.as_bytes()).is_err());
    }

    #[test]
    fn constant_model() {
        let m = PropertyModel::constant_gamma(1.4);
        let air = GasModel::air(m);
        assert_relative_eq!(air.gamma(5000.0).unwrap(), 1.4, epsilon = 1e-12);
        assert_relative_eq!(air.r(), R_AIR, max_relative = 1e-12);
    }
}
