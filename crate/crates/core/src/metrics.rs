//! Regression metrics for surrogate evaluation.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalMetrics {
    /// Pearson correlation; `None` when either vector has zero variance.
    pub r: Option<f64>,
    /// Square of `r`.
    pub r2: Option<f64>,
    pub rmse: f64,
    pub mse: f64,
    pub mae: f64,
    /// Mean absolute percentage error, %.
    pub mape_percent: f64,
}

fn check(y: &[f64], yhat: &[f64], min_len: usize) -> Result<()> {
    if y.len() != yhat.len() {
        return Err(Error::Dimension(format!(
            "{} targets vs {} predictions",
            y.len(),
            yhat.len()
        )));
    }
    if y.len() < min_len {
        return Err(Error::Dimension(format!(
            "need at least {min_len} samples, got {}",
            y.len()
        )));
    }
    Ok(())
}

pub fn mse(y: &[f64], yhat: &[f64]) -> Result<f64> {
    check(y, yhat, 1)?;
    Ok(y.iter().zip(yhat).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / y.len() as f64)
}

pub fn mae(y: &[f64], yhat: &[f64]) -> Result<f64> {
    check(y, yhat, 1)?;
    Ok(y.iter().zip(yhat).map(|(a, b)| (a - b).abs()).sum::<f64>() / y.len() as f64)
}

pub fn rmse(y: &[f64], yhat: &[f64]) -> Result<f64> {
    mse(y, yhat).map(f64::sqrt)
}

/// Percent; fails on any zero target.
pub fn mape(y: &[f64], yhat: &[f64]) -> Result<f64> {
    check(y, yhat, 1)?;
    if let Some(i) = y.iter().position(|&v| v == 0.0) {
        return Err(Error::Metric(format!("MAPE undefined: target {i} is zero")));
    }
    let sum: f64 = y.iter().zip(yhat).map(|(a, b)| ((a - b) / a).abs()).sum();
    Ok(100.0 * sum / y.len() as f64)
}

pub fn pearson_r(y: &[f64], yhat: &[f64]) -> Result<Option<f64>> {
    check(y, yhat, 2)?;
    let n = y.len() as f64;
    let my = y.iter().sum::<f64>() / n;
    let mp = yhat.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in y.iter().zip(yhat) {
        let (da, db) = (a - my, b - mp);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)))
}

pub fn evaluate(y: &[f64], yhat: &[f64]) -> Result<EvalMetrics> {
    check(y, yhat, 2)?;
    let r = pearson_r(y, yhat)?;
    let mse = mse(y, yhat)?;
    Ok(EvalMetrics {
        r,
        r2: r.map(|r| r * r),
        rmse: mse.sqrt(),
        mse,
        mae: mae(y, yhat)?,
        mape_percent: mape(y, yhat)?,
    })
}

/// Number of predictions whose absolute error is at most `band`.
pub fn within_band(y: &[f64], yhat: &[f64], band: f64) -> usize {
    y.iter().zip(yhat).filter(|(a, b)| (*a - *b).abs() <= band).count()
}
