//! Feed-forward ReLU regression networks predicting one cycle output each
//! from the five design inputs.
//!
//! Inputs are min/max scaled onto [0, 1]; targets are fitted in their raw
//! units. Training is plain minibatch Adam on MSE and is fully determined by
//! the seed.

mod adam;
mod checkpoint;
mod mlp;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use ndarray::{Array2, Axis};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use adam::AdamState;
pub use checkpoint::{load_model, read_model, save_model, write_model, CHECKPOINT_VERSION};
pub use mlp::{mse, relu, Init, MlpModel, Params, DEFAULT_DIMS};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::sweep::DatasetRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Thrust,
    Tsfc,
    EtaEx,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::Thrust, Target::Tsfc, Target::EtaEx];

    pub fn name(self) -> &'static str {
        match self {
            Target::Thrust => "thrust",
            Target::Tsfc => "tsfc",
            Target::EtaEx => "eta_ex",
        }
    }

    pub fn value(self, row: &DatasetRow) -> f64 {
        match self {
            Target::Thrust => row.thrust,
            Target::Tsfc => row.tsfc,
            Target::EtaEx => row.eta_ex,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "thrust" => Ok(Target::Thrust),
            "tsfc" => Ok(Target::Tsfc),
            "eta_ex" | "etaex" => Ok(Target::EtaEx),
            other => Err(Error::Config(format!("unknown target `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
    pub lr: f64,
    pub dims: Vec<usize>,
    pub init: Init,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 200,
            batch_size: 64,
            seed: 1,
            lr: 1e-3,
            dims: DEFAULT_DIMS.to_vec(),
            init: Init::He,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 || self.batch_size == 0 {
            return Err(Error::Config("epochs and batch_size must be at least 1".into()));
        }
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return Err(Error::Config(format!("learning rate {} must be positive", self.lr)));
        }
        Ok(())
    }
}

/// Trained model and its per-epoch training MSE; entry 0 is the loss before
/// the first update.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub model: MlpModel,
    pub loss_history: Vec<f64>,
}

/// Per-input `(min, max)` over the rows.
pub fn input_ranges(rows: &[DatasetRow]) -> Vec<(f64, f64)> {
    (0..5)
        .map(|j| {
            rows.iter()
                .map(|r| r.inputs()[j])
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        })
        .collect()
}

/// Trains one network. `scaling` defaults to the min/max of `rows`.
pub fn train(
    rows: &[DatasetRow],
    target: Target,
    scaling: Option<Vec<(f64, f64)>>,
    cfg: &TrainConfig,
) -> Result<TrainOutcome> {
    cfg.validate()?;
    if rows.is_empty() {
        return Err(Error::Config("no training rows".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let scaling = scaling.unwrap_or_else(|| input_ranges(rows));
    let mut model = MlpModel::new(&cfg.dims, target, scaling, cfg.init, &mut rng)?;
    let inputs: Vec<[f64; 5]> = rows.iter().map(DatasetRow::inputs).collect();
    let x = model.design_matrix(&inputs)?;
    let y: Vec<f64> = rows.iter().map(|r| target.value(r)).collect();

    let full_loss = |m: &MlpModel| -> Result<f64> {
        let out = m.forward_normalized(x.view())?;
        mse(&y, out.as_slice().expect("contiguous"))
    };
    let mut history = vec![full_loss(&model)?];
    let mut adam = AdamState::new(&model.params).with_lr(cfg.lr);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut xb = Array2::zeros((0, x.ncols()));
    let mut yb = Vec::with_capacity(cfg.batch_size);
    for epoch in 1..=cfg.epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(cfg.batch_size) {
            xb = x.select(Axis(0), chunk);
            yb.clear();
            yb.extend(chunk.iter().map(|&i| y[i]));
            let (loss, grads) = model.backprop(xb.view(), &yb)?;
            if !loss.is_finite() {
                return Err(Error::Diverged { epoch, loss });
            }
            adam.step(&mut model.params, &grads)?;
        }
        let loss = full_loss(&model)?;
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch, loss });
        }
        log::debug!("{target}: epoch {epoch} loss {loss:e}");
        history.push(loss);
    }
    drop(xb);
    if !early_drop_ok(&history) {
        log::warn!("{target}: loss fell less than 90% of its total drop in the first ten epochs");
    }
    Ok(TrainOutcome {
        model,
        loss_history: history,
    })
}

/// True when the first ten epochs account for at least 90% of the total loss
/// reduction.
pub fn early_drop_ok(history: &[f64]) -> bool {
    let (Some(&first), Some(&last)) = (history.first(), history.last()) else {
        return true;
    };
    let total = first - last;
    if total <= 0.0 || history.len() <= 11 {
        return true;
    }
    first - history[10] >= 0.9 * total
}

/// Independent networks for every target, possibly trained concurrently.
pub fn train_all(
    rows: &[DatasetRow],
    scaling: Option<Vec<(f64, f64)>>,
    cfg: &TrainConfig,
    exec: Execution,
) -> Result<Vec<TrainOutcome>> {
    exec.map(&Target::ALL, |_, &t| train(rows, t, scaling.clone(), cfg))
        .into_iter()
        .collect()
}

pub fn write_loss_csv<W: Write>(out: W, history: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["epoch", "loss"])?;
    for (epoch, loss) in history.iter().enumerate() {
        w.write_record([epoch.to_string(), loss.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<loss>", e))?;
    Ok(())
}

/// Predictions of `model` for each row's inputs.
pub fn predict_rows(model: &MlpModel, rows: &[DatasetRow]) -> Result<Vec<f64>> {
    let inputs: Vec<[f64; 5]> = rows.iter().map(DatasetRow::inputs).collect();
    model.predict(&inputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gasprops::FuelDb;
    use crate::sweep::{gen_dataset, DatasetSpec};

    fn small_rows() -> Vec<DatasetRow> {
        gen_dataset(&DatasetSpec::default(), &FuelDb::default(), 4, 300, Execution::Parallel)
            .unwrap()
            .train
    }

    fn small_cfg() -> TrainConfig {
        TrainConfig {
            epochs: 30,
            batch_size: 32,
            seed: 5,
            dims: vec![5, 32, 16, 1],
            ..TrainConfig::default()
        }
    }

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("thrust_kN".parse::<Target>().is_err());
    }

    #[test]
    fn training_reduces_loss_and_is_deterministic() {
        let rows = small_rows();
        let cfg = small_cfg();
        let a = train(&rows, Target::Tsfc, None, &cfg).unwrap();
        let b = train(&rows, Target::Tsfc, None, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.loss_history.len(), cfg.epochs + 1);
        let h = &a.loss_history;
        assert!(h.last().unwrap() < &(0.05 * h[0]));
        // no 10-epoch window ends more than 5% above where it started
        for w in h[1..].windows(11) {
            assert!(w[10] <= w[0] * 1.05, "{:?}", w);
        }
        let c = train(&rows, Target::Tsfc, None, &TrainConfig { seed: 6, ..cfg }).unwrap();
        assert_ne!(a.model.params, c.model.params);
    }

    #[test]
    fn train_all_matches_individual_runs() {
        let rows = small_rows();
        let cfg = TrainConfig {
            epochs: 3,
            ..small_cfg()
        };
        let all = train_all(&rows, None, &cfg, Execution::Parallel).unwrap();
        for (out, t) in all.iter().zip(Target::ALL) {
            assert_eq!(out.model.target, t);
            assert_eq!(out, &train(&rows, t, None, &cfg).unwrap());
        }
    }

    #[test]
    fn divergence_reported() {
        let rows = small_rows();
        let cfg = TrainConfig {
            lr: 1e300,
            epochs: 5,
            ..small_cfg()
        };
        assert!(matches!(
            train(&rows, Target::Thrust, None, &cfg),
            Err(Error::Diverged { .. })
        ));
    }

    #[test]
    fn bad_config_rejected() {
        let rows = small_rows();
        for cfg in [
            TrainConfig {
                epochs: 0,
                ..small_cfg()
            },
            TrainConfig {
                batch_size: 0,
                ..small_cfg()
            },
        ] {
            assert!(train(&rows, Target::Thrust, None, &cfg).is_err());
        }
        assert!(train(&[], Target::Thrust, None, &small_cfg()).is_err());
    }

    #[test]
    fn early_drop_check() {
        let fast: Vec<f64> = (0..30)
            .map(|e| if e < 10 { 100.0 - 10.0 * e as f64 } else { 1.0 })
            .collect();
        assert!(early_drop_ok(&fast));
        let slow: Vec<f64> = (0..30).map(|e| 100.0 - 3.0 * e as f64).collect();
        assert!(!early_drop_ok(&slow));
    }

    #[test]
    fn loss_csv_layout() {
        let mut buf = Vec::new();
        write_loss_csv(&mut buf, &[4.0, 2.5, 0.125]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "epoch,loss\n0,4\n1,2.5\n2,0.125\n");
    }
}
