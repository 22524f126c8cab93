use ndarray::Zip;

use super::mlp::Params;
use crate::error::{Error, Result};

/// Adam moments and hyperparameters. The denominator is `sqrt(v_hat + eps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    /// Steps taken.
    pub t: u64,
    pub m: Params,
    pub v: Params,
    pub beta1: f64,
    pub beta2: f64,
    pub lr: f64,
    pub eps: f64,
}

impl AdamState {
    pub fn new(like: &Params) -> Self {
        AdamState {
            t: 0,
            m: Params::zeros_like(like),
            v: Params::zeros_like(like),
            beta1: 0.9,
            beta2: 0.999,
            lr: 1e-3,
            eps: 1e-8,
        }
    }

    pub fn with_lr(mut self, lr: f64) -> Self {
        self.lr = lr;
        self
    }

    pub fn step(&mut self, params: &mut Params, grads: &Params) -> Result<()> {
        if !params.same_shape(grads) || !params.same_shape(&self.m) {
            return Err(Error::Dimension("gradient shape does not match parameters".into()));
        }
        self.t += 1;
        let (b1, b2, lr, eps) = (self.beta1, self.beta2, self.lr, self.eps);
        let c1 = 1.0 - b1.powi(self.t as i32);
        let c2 = 1.0 - b2.powi(self.t as i32);
        let update = |w: &mut f64, &g: &f64, m: &mut f64, v: &mut f64| {
            *m = b1 * *m + (1.0 - b1) * g;
            *v = b2 * *v + (1.0 - b2) * g * g;
            let m_hat = *m / c1;
            let v_hat = *v / c2;
            *w -= lr * m_hat / (v_hat + eps).sqrt();
        };
        for l in 0..params.weights.len() {
            Zip::from(&mut params.weights[l])
                .and(&grads.weights[l])
                .and(&mut self.m.weights[l])
                .and(&mut self.v.weights[l])
                .for_each(update);
            Zip::from(&mut params.biases[l])
                .and(&grads.biases[l])
                .and(&mut self.m.biases[l])
                .and(&mut self.v.biases[l])
                .for_each(update);
        }
        Ok(())
    }
}
