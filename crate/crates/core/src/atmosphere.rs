//! U.S. Standard Atmosphere 1976 up to 47 km. Altitudes are taken as
//! geopotential metres, the convention of the standard's layer table.
//!
//! The troposphere and the two lower stratosphere layers are the only ones the
//! cycle ever visits; the 32–47 km layer is included so the supported range
//! has some margin above the 30 km design altitude.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Specific gas constant of dry air, J/(kg·K).
pub const R_AIR: f64 = 287.05;
const G0: f64 = 9.80665;
pub const MAX_ALTITUDE: f64 = 47_000.0;

/// (base altitude m, base temperature K, lapse rate K/m)
const LAYERS: [(f64, f64, f64); 4] = [
    (0.0, 288.15, -0.0065),
    (11_000.0, 216.65, 0.0),
    (20_000.0, 216.65, 0.001),
    (32_000.0, 228.65, 0.0028),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbientState {
    pub altitude: f64,
    /// Static temperature, K.
    pub t0: f64,
    /// Static pressure, Pa.
    pub p0: f64,
    /// Density, kg/m³.
    pub rho0: f64,
}

impl AmbientState {
    /// Speed of sound for a given ratio of specific heats.
    pub fn speed_of_sound(&self, gamma: f64) -> f64 {
        (gamma * R_AIR * self.t0).sqrt()
    }
}

fn layer_pressure(p_base: f64, t_base: f64, lapse: f64, dh: f64) -> f64 {
    if lapse == 0.0 {
        p_base * (-G0 * dh / (R_AIR * t_base)).exp()
    } else {
        let t = t_base + lapse * dh;
        p_base * (t / t_base).powf(-G0 / (lapse * R_AIR))
    }
}

/// Ambient state at `altitude` (m).
pub fn isa_state(altitude: f64) -> Result<AmbientState> {
    if !(0.0..=MAX_ALTITUDE).contains(&altitude) {
        return Err(Error::OutOfRange {
            quantity: "altitude",
            value: altitude,
            min: 0.0,
            max: MAX_ALTITUDE,
        });
    }
    let h = altitude;

    let mut p_base = 101_325.0;
    let mut idx = 0;
    while idx + 1 < LAYERS.len() && h > LAYERS[idx + 1].0 {
        let (h_b, t_b, lapse) = LAYERS[idx];
        p_base = layer_pressure(p_base, t_b, lapse, LAYERS[idx + 1].0 - h_b);
        idx += 1;
    }
    let (h_b, t_b, lapse) = LAYERS[idx];
    let t0 = t_b + lapse * (h - h_b);
    let p0 = layer_pressure(p_base, t_b, lapse, h - h_b);
    Ok(AmbientState {
        altitude,
        t0,
        p0,
        rho0: p0 / (R_AIR * t0),
    })
}
