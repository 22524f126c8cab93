use crate::error::{Error, Result};

pub(crate) const TEMPERATURE_TOL: f64 = 1e-9;
pub(crate) const MAX_ITERATIONS: usize = 200;

/// Iterates `x <- update(x)` until successive values differ by less than
/// `tol`. Switches to 0.5 under-relaxation once the step changes sign without
/// shrinking (oscillation).
pub(crate) fn fixed_point<F>(what: &'static str, x0: f64, tol: f64, mut update: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x = x0;
    let mut prev_step: Option<f64> = None;
    let mut relax = 1.0;
    for _ in 0..MAX_ITERATIONS {
        let target = update(x)?;
        if !target.is_finite() {
            return Err(Error::Infeasible(format!("{what} produced a non-finite value")));
        }
        let step = target - x;
        if step.abs() < tol {
            return Ok(target);
        }
        if let Some(p) = prev_step {
            if p.signum() != step.signum() && step.abs() >= p.abs() {
                relax = 0.5;
            }
        }
        prev_step = Some(step);
        x += relax * step;
    }
    Err(Error::NoConvergence {
        what,
        iterations: MAX_ITERATIONS,
    })
}

pub(crate) fn mean(a: f64, b: f64) -> f64 {
    0.5 * (a + b)
}
