use ndarray::{Array1, Array2, ArrayView2, Axis, Zip};
use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::Target;
use crate::error::{Error, Result};

/// Weights and biases of every affine layer. Also used for gradients and for
/// the optimizer moments, which share the layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    /// Layer `l` maps `dims[l]` inputs to `dims[l+1]` outputs: shape `(out, in)`.
    pub weights: Vec<Array2<f64>>,
    pub biases: Vec<Array1<f64>>,
}

impl Params {
    pub fn zeros(dims: &[usize]) -> Self {
        Params {
            weights: dims.windows(2).map(|d| Array2::zeros((d[1], d[0]))).collect(),
            biases: dims.windows(2).map(|d| Array1::zeros(d[1])).collect(),
        }
    }

    pub fn zeros_like(other: &Params) -> Self {
        Params {
            weights: other.weights.iter().map(|w| Array2::zeros(w.raw_dim())).collect(),
            biases: other.biases.iter().map(|b| Array1::zeros(b.raw_dim())).collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.weights.iter().map(|w| w.ncols()).collect();
        if let Some(last) = self.weights.last() {
            dims.push(last.nrows());
        }
        dims
    }

    pub fn same_shape(&self, other: &Params) -> bool {
        self.weights.len() == other.weights.len()
            && self.biases.len() == other.biases.len()
            && self.weights.iter().zip(&other.weights).all(|(a, b)| a.dim() == b.dim())
            && self.biases.iter().zip(&other.biases).all(|(a, b)| a.dim() == b.dim())
    }

    pub fn len(&self) -> usize {
        self.weights.iter().map(|w| w.len()).sum::<usize>() + self.biases.iter().map(|b| b.len()).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|w| w.iter().all(|v| v.is_finite()))
            && self.biases.iter().all(|b| b.iter().all(|v| v.is_finite()))
    }

    /// Every scalar, weights of each layer then its bias, layer by layer.
    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.weights
            .iter()
            .zip(&self.biases)
            .flat_map(|(w, b)| w.iter().chain(b.iter()))
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.weights
            .iter_mut()
            .zip(self.biases.iter_mut())
            .flat_map(|(w, b)| w.iter_mut().chain(b.iter_mut()))
    }
}

/// Elementwise `max(x, 0)`.
pub fn relu(x: &Array1<f64>) -> Array1<f64> {
    x.mapv(|v| v.max(0.0))
}

/// Derivative of ReLU, taking 0 at the kink.
fn relu_grad(z: f64) -> f64 {
    if z > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Mean squared error; lengths must match and be non-zero.
pub fn mse(y: &[f64], yhat: &[f64]) -> Result<f64> {
    crate::metrics::mse(y, yhat)
}

/// Weight initialization scheme.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Init {
    /// `N(0, 2/fan_in)` weights, zero biases.
    #[default]
    He,
    /// All parameters zero.
    Zeros,
}

/// Fully connected ReLU network with a single linear output.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    pub target: Target,
    pub params: Params,
    /// Per-input `(min, max)`; inputs are mapped onto [0, 1] before the first layer.
    pub input_scaling: Vec<(f64, f64)>,
}

pub const DEFAULT_DIMS: [usize; 5] = [5, 512, 256, 128, 1];

impl MlpModel {
    pub fn new<R: Rng>(
        dims: &[usize],
        target: Target,
        input_scaling: Vec<(f64, f64)>,
        init: Init,
        rng: &mut R,
    ) -> Result<Self> {
        if dims.len() < 2 || dims.contains(&0) {
            return Err(Error::Dimension(format!("bad layer dimensions {dims:?}")));
        }
        if *dims.last().unwrap() != 1 {
            return Err(Error::Dimension("output layer must have one neuron".into()));
        }
        let mut params = Params::zeros(dims);
        if init == Init::He {
            for w in &mut params.weights {
                let std = (2.0 / w.ncols() as f64).sqrt();
                let normal = Normal::new(0.0, std).expect("positive std");
                w.mapv_inplace(|_| normal.sample(rng));
            }
        }
        let model = MlpModel {
            target,
            params,
            input_scaling,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        if p.weights.is_empty() || p.weights.len() != p.biases.len() {
            return Err(Error::Dimension("weights and biases disagree on layer count".into()));
        }
        for (l, (w, b)) in p.weights.iter().zip(&p.biases).enumerate() {
            if w.nrows() != b.len() {
                return Err(Error::Dimension(format!(
                    "layer {l}: {} rows but {} biases",
                    w.nrows(),
                    b.len()
                )));
            }
            if l > 0 && p.weights[l - 1].nrows() != w.ncols() {
                return Err(Error::Dimension(format!(
                    "layer {l} input does not match layer {} output",
                    l - 1
                )));
            }
        }
        if p.weights.last().unwrap().nrows() != 1 {
            return Err(Error::Dimension("output layer must have one neuron".into()));
        }
        if self.input_scaling.len() != self.n_inputs() {
            return Err(Error::Dimension(format!(
                "{} scaling entries for {} inputs",
                self.input_scaling.len(),
                self.n_inputs()
            )));
        }
        if !p.is_finite() {
            return Err(Error::Dimension("non-finite parameter".into()));
        }
        Ok(())
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.params.dims()
    }

    pub fn n_inputs(&self) -> usize {
        self.params.weights[0].ncols()
    }

    /// Maps raw inputs onto the unit box. Degenerate ranges map to 0.
    pub fn normalize(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_inputs() {
            return Err(Error::Dimension(format!(
                "expected {} inputs, got {}",
                self.n_inputs(),
                x.len()
            )));
        }
        Ok(x.iter()
            .zip(&self.input_scaling)
            .map(|(&v, &(lo, hi))| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .collect())
    }

    /// Normalized design matrix for a batch of raw inputs. Logs a warning when
    /// any input falls outside the scaling box.
    pub fn design_matrix(&self, xs: &[[f64; 5]]) -> Result<Array2<f64>> {
        let n_in = self.n_inputs();
        if n_in != 5 {
            return Err(Error::Dimension(format!("model takes {n_in} inputs, rows have 5")));
        }
        let mut out = Array2::zeros((xs.len(), n_in));
        let mut outside = 0usize;
        for (mut row, x) in out.rows_mut().into_iter().zip(xs) {
            let z = self.normalize(x)?;
            if z.iter().any(|v| !(-1e-12..=1.0 + 1e-12).contains(v)) {
                outside += 1;
            }
            row.assign(&Array1::from(z));
        }
        if outside > 0 {
            log::warn!("{outside} of {} inputs lie outside the training range", xs.len());
        }
        Ok(out)
    }

    /// Output for an already-normalized batch `(n, inputs)`.
    pub fn forward_normalized(&self, x: ArrayView2<f64>) -> Result<Array1<f64>> {
        if x.ncols() != self.n_inputs() {
            return Err(Error::Dimension(format!(
                "expected {} columns, got {}",
                self.n_inputs(),
                x.ncols()
            )));
        }
        Ok(self.activations(x).pop().expect("output layer").column(0).to_owned())
    }

    /// Single prediction. `raw` inputs are normalized first; otherwise `x` is
    /// taken to be on the unit box already.
    pub fn forward(&self, x: &[f64], raw: bool) -> Result<f64> {
        let z = if raw {
            let z = self.normalize(x)?;
            if z.iter().any(|v| !(-1e-12..=1.0 + 1e-12).contains(v)) {
                log::warn!("input {x:?} lies outside the training range");
            }
            z
        } else {
            if x.len() != self.n_inputs() {
                return Err(Error::Dimension(format!(
                    "expected {} inputs, got {}",
                    self.n_inputs(),
                    x.len()
                )));
            }
            x.to_vec()
        };
        let m = Array2::from_shape_vec((1, z.len()), z).expect("row shape");
        Ok(self.forward_normalized(m.view())?[0])
    }

    pub fn predict(&self, xs: &[[f64; 5]]) -> Result<Vec<f64>> {
        let x = self.design_matrix(xs)?;
        Ok(self.forward_normalized(x.view())?.to_vec())
    }

    /// Post-activation outputs of every layer, input first. Hidden layers are
    /// stored after ReLU; the last entry is the linear output.
    fn activations(&self, x: ArrayView2<f64>) -> Vec<Array2<f64>> {
        let n_layers = self.params.weights.len();
        let mut acts = Vec::with_capacity(n_layers + 1);
        acts.push(x.to_owned());
        for (l, (w, b)) in self.params.weights.iter().zip(&self.params.biases).enumerate() {
            let mut z = acts[l].dot(&w.t());
            z += b;
            if l + 1 < n_layers {
                z.mapv_inplace(|v| v.max(0.0));
            }
            acts.push(z);
        }
        acts
    }

    /// Batch MSE and its exact gradient with respect to every parameter, for
    /// normalized inputs `x` of shape `(n, inputs)`.
    pub fn backprop(&self, x: ArrayView2<f64>, y: &[f64]) -> Result<(f64, Params)> {
        let n = x.nrows();
        if n == 0 || y.len() != n {
            return Err(Error::Dimension(format!(
                "batch of {n} inputs with {} targets",
                y.len()
            )));
        }
        if x.ncols() != self.n_inputs() {
            return Err(Error::Dimension(format!(
                "expected {} columns, got {}",
                self.n_inputs(),
                x.ncols()
            )));
        }
        let acts = self.activations(x);
        let out = acts.last().unwrap().column(0);
        let resid: Array1<f64> = Zip::from(&out).and(y).map_collect(|&p, &t| p - t);
        let loss = resid.iter().map(|r| r * r).sum::<f64>() / n as f64;

        let mut grads = Params::zeros_like(&self.params);
        // dL/d(output pre-activation), shape (n, 1)
        let mut delta = (resid * (2.0 / n as f64)).insert_axis(Axis(1));
        for l in (0..self.params.weights.len()).rev() {
            grads.weights[l] = delta.t().dot(&acts[l]);
            grads.biases[l] = delta.sum_axis(Axis(0));
            if l > 0 {
                let mut back = delta.dot(&self.params.weights[l]);
                Zip::from(&mut back).and(&acts[l]).for_each(|d, &a| *d *= relu_grad(a));
                delta = back;
            }
        }
        Ok((loss, grads))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use ndarray::array;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_scaling(n: usize) -> Vec<(f64, f64)> {
        vec![(0.0, 1.0); n]
    }

    fn random_batch(rng: &mut ChaCha8Rng, n: usize, k: usize) -> (Array2<f64>, Vec<f64>) {
        let x = Array2::from_shape_fn((n, k), |_| rng.random::<f64>());
        let y = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        (x, y)
    }

    fn loss_at(model: &MlpModel, x: &Array2<f64>, y: &[f64]) -> f64 {
        let out = model.forward_normalized(x.view()).unwrap();
        mse(y, out.as_slice().unwrap()).unwrap()
    }

    #[test]
    fn relu_values() {
        assert_eq!(relu(&array![-1.0, 0.0, 2.0]), array![0.0, 0.0, 2.0]);
        assert_eq!(relu_grad(0.0), 0.0);
    }

    #[test]
    fn mse_values() {
        assert_eq!(mse(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
        assert_eq!(mse(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(mse(&[1.0, 2.0], &[1.0, 3.0]).unwrap(), 0.5);
        assert!(mse(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn zero_network_outputs_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = MlpModel::new(&DEFAULT_DIMS, Target::Thrust, unit_scaling(5), Init::Zeros, &mut rng).unwrap();
        assert_eq!(m.layer_dims(), DEFAULT_DIMS);
        for x in [[0.3, 0.1, 0.9, 0.5, 0.2], [10.0, -4.0, 0.0, 7.0, 1.0]] {
            assert_eq!(m.forward(&x, true).unwrap(), 0.0);
        }
    }

    #[test]
    fn hand_network() {
        // One hidden neuron with unit weights, output weight 2, output bias 0.5:
        // y = 2 * max(x1 + x2 + x3 + x4 + x5, 0) + 0.5
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut m = MlpModel::new(&[5, 1, 1], Target::Tsfc, unit_scaling(5), Init::Zeros, &mut rng).unwrap();
        m.params.weights[0].fill(1.0);
        m.params.weights[1][[0, 0]] = 2.0;
        m.params.biases[1][0] = 0.5;
        assert_eq!(m.forward(&[0.1, 0.2, 0.3, 0.4, 0.5], false).unwrap(), 2.0 * 1.5 + 0.5);
        assert_eq!(m.forward(&[-0.1, -0.2, -0.3, -0.4, -0.5], false).unwrap(), 0.5);
    }

    #[test]
    fn normalization_maps_box_to_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let scaling = vec![(4.0, 8.0), (3.0, 6.0), (1600.0, 2200.0), (-30.0, 0.0), (0.3, 1.0)];
        let m = MlpModel::new(&DEFAULT_DIMS, Target::EtaEx, scaling, Init::He, &mut rng).unwrap();
        assert_eq!(m.normalize(&[4.0, 3.0, 1600.0, -30.0, 0.3]).unwrap(), vec![0.0; 5]);
        assert_eq!(m.normalize(&[8.0, 6.0, 2200.0, 0.0, 1.0]).unwrap(), vec![1.0; 5]);
        assert!(m.normalize(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn dimension_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(MlpModel::new(&[5, 4, 2], Target::Thrust, unit_scaling(5), Init::He, &mut rng).is_err());
        assert!(MlpModel::new(&[5, 0, 1], Target::Thrust, unit_scaling(5), Init::He, &mut rng).is_err());
        assert!(MlpModel::new(&[5, 4, 1], Target::Thrust, unit_scaling(3), Init::He, &mut rng).is_err());
        let m = MlpModel::new(&[5, 4, 1], Target::Thrust, unit_scaling(5), Init::He, &mut rng).unwrap();
        assert!(m.forward(&[0.0; 4], false).is_err());
        assert!(m.backprop(Array2::zeros((3, 5)).view(), &[0.0; 2]).is_err());
    }

    #[test]
    fn backprop_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let dims = [5, 8, 4, 2, 1];
        let mut model = MlpModel::new(&dims, Target::Thrust, unit_scaling(5), Init::He, &mut rng).unwrap();
        for b in &mut model.params.biases {
            b.mapv_inplace(|_| rng.random::<f64>() * 0.2);
        }
        let (x, y) = random_batch(&mut rng, 16, 5);
        let (_, grads) = model.backprop(x.view(), &y).unwrap();
        let analytic: Vec<f64> = grads.iter().copied().collect();
        let mut worst: f64 = 0.0;
        for (i, &g) in analytic.iter().enumerate() {
            let w0 = *model.params.iter().nth(i).unwrap();
            let h = 1e-6 * w0.abs().max(1.0);
            let mut bump = |delta: f64| {
                *model.params.iter_mut().nth(i).unwrap() = w0 + delta;
                loss_at(&model, &x, &y)
            };
            let numeric = (bump(h) - bump(-h)) / (2.0 * h);
            *model.params.iter_mut().nth(i).unwrap() = w0;
            let denom = numeric.abs().max(g.abs()).max(1e-6);
            worst = worst.max((numeric - g).abs() / denom);
        }
        assert!(worst < 1e-5, "max relative deviation {worst:e}");
    }

    #[test]
    fn linear_model_gradient_closed_form() {
        // dims [5, 1]: yhat = Xw + b, dL/dw = 2/n X^T (Xw + b - y), dL/db = 2/n sum(r)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let model = MlpModel::new(&[5, 1], Target::Thrust, unit_scaling(5), Init::He, &mut rng).unwrap();
        let (x, y) = random_batch(&mut rng, 12, 5);
        let (_, g) = model.backprop(x.view(), &y).unwrap();
        let w = model.params.weights[0].row(0).to_owned();
        let b = model.params.biases[0][0];
        let r: Array1<f64> = x.dot(&w) + b - Array1::from(y.clone());
        let gw = x.t().dot(&r) * (2.0 / 12.0);
        let gb = r.sum() * 2.0 / 12.0;
        for j in 0..5 {
            assert_relative_eq!(g.weights[0][[0, j]], gw[j], max_relative = 1e-12);
        }
        assert_relative_eq!(g.biases[0][0], gb, max_relative = 1e-12);
    }

    #[test]
    fn zero_residual_gives_zero_gradient() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let model = MlpModel::new(&[5, 6, 3, 1], Target::Thrust, unit_scaling(5), Init::He, &mut rng).unwrap();
        let (x, _) = random_batch(&mut rng, 8, 5);
        let y = model.forward_normalized(x.view()).unwrap().to_vec();
        let (loss, g) = model.backprop(x.view(), &y).unwrap();
        assert_eq!(loss, 0.0);
        assert!(g.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn batch_and_single_predictions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = MlpModel::new(&[5, 16, 8, 1], Target::Thrust, unit_scaling(5), Init::He, &mut rng).unwrap();
        let xs = [[0.1, 0.2, 0.3, 0.4, 0.5], [0.9, 0.8, 0.7, 0.6, 0.5]];
        let batch = m.predict(&xs).unwrap();
        for (x, p) in xs.iter().zip(&batch) {
            assert_relative_eq!(m.forward(x, true).unwrap(), *p, max_relative = 1e-14);
        }
    }
}
