//! Plain-text checkpoint:
//!
//! ```text
//! tfx-mlp <version>
//! target <name>
//! dims <d0> <d1> ... <dL>
//! scaling <min> <max>        one line per input
//! weights <l>                then one line per output row
//! biases <l> <b0> <b1> ...
//! ```
//!
//! Floats are written with Rust's shortest round-trip formatting.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use ndarray::{Array1, Array2};

use super::mlp::{MlpModel, Params};
use super::Target;
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;
const MAGIC: &str = "tfx-mlp";

pub fn write_model<W: Write>(mut out: W, model: &MlpModel) -> Result<()> {
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC} {CHECKPOINT_VERSION}");
    let _ = writeln!(s, "target {}", model.target);
    let dims: Vec<String> = model.layer_dims().iter().map(usize::to_string).collect();
    let _ = writeln!(s, "dims {}", dims.join(" "));
    for (lo, hi) in &model.input_scaling {
        let _ = writeln!(s, "scaling {lo} {hi}");
    }
    for (l, (w, b)) in model.params.weights.iter().zip(&model.params.biases).enumerate() {
        let _ = writeln!(s, "weights {l}");
        for row in w.rows() {
            let vals: Vec<String> = row.iter().map(f64::to_string).collect();
            let _ = writeln!(s, "{}", vals.join(" "));
        }
        let vals: Vec<String> = b.iter().map(f64::to_string).collect();
        let _ = writeln!(s, "biases {l} {}", vals.join(" "));
    }
    out.write_all(s.as_bytes()).map_err(|e| Error::io("<checkpoint>", e))
}

pub fn save_model(path: &Path, model: &MlpModel) -> Result<()> {
    let mut buf = Vec::new();
    write_model(&mut buf, model)?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: &Path) -> Result<MlpModel> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    read_model(&text).map_err(|e| match e {
        Error::Config(msg) => Error::parse(path, msg),
        other => other,
    })
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| Error::Config(format!("unexpected end of checkpoint, expected {what}")))
    }

    /// Next line, which must start with `key`; returns the remaining fields.
    fn keyed(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (n, line) = self.next(key)?;
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some(k) if k == key => Ok((n, fields.collect())),
            _ => Err(Error::Config(format!("line {n}: expected `{key}`"))),
        }
    }
}

fn floats(n: usize, fields: &[&str]) -> Result<Vec<f64>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<f64>()
                .map_err(|_| Error::Config(format!("line {n}: bad number `{f}`")))
        })
        .collect()
}

/// Parses a checkpoint; the result passes [`MlpModel::validate`].
pub fn read_model(text: &str) -> Result<MlpModel> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (_, header) = lines.keyed(MAGIC)?;
    match header.as_slice() {
        [v] if v.parse::<u32>() == Ok(CHECKPOINT_VERSION) => {}
        [v] => {
            return Err(Error::Config(format!(
                "checkpoint version {v} is not supported (expected {CHECKPOINT_VERSION})"
            )))
        }
        _ => return Err(Error::Config("malformed checkpoint header".into())),
    }
    let (n, target) = lines.keyed("target")?;
    let target: Target = match target.as_slice() {
        [t] => t.parse()?,
        _ => return Err(Error::Config(format!("line {n}: malformed target"))),
    };
    let (n, dims) = lines.keyed("dims")?;
    let dims: Vec<usize> = dims
        .iter()
        .map(|d| {
            d.parse()
                .map_err(|_| Error::Config(format!("line {n}: bad dimension `{d}`")))
        })
        .collect::<Result<_>>()?;
    if dims.len() < 2 {
        return Err(Error::Config(format!("line {n}: need at least two dimensions")));
    }
    let mut input_scaling = Vec::with_capacity(dims[0]);
    for _ in 0..dims[0] {
        let (n, f) = lines.keyed("scaling")?;
        match floats(n, &f)?.as_slice() {
            [lo, hi] => input_scaling.push((*lo, *hi)),
            _ => return Err(Error::Config(format!("line {n}: scaling needs min and max"))),
        }
    }
    let mut params = Params::zeros(&dims);
    for l in 0..dims.len() - 1 {
        let (n, f) = lines.keyed("weights")?;
        if f != [l.to_string().as_str()] {
            return Err(Error::Config(format!("line {n}: expected weights for layer {l}")));
        }
        let (rows, cols) = (dims[l + 1], dims[l]);
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (n, line) = lines.next("weight row")?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != cols {
                return Err(Error::Config(format!(
                    "line {n}: expected {cols} weights, found {}",
                    fields.len()
                )));
            }
            data.extend(floats(n, &fields)?);
        }
        params.weights[l] = Array2::from_shape_vec((rows, cols), data).expect("checked shape");
        let (n, f) = lines.keyed("biases")?;
        if f.first() != Some(&l.to_string().as_str()) || f.len() != rows + 1 {
            return Err(Error::Config(format!("line {n}: expected {rows} biases for layer {l}")));
        }
        params.biases[l] = Array1::from(floats(n, &f[1..])?);
    }
    if let Ok((n, _)) = lines.next("") {
        return Err(Error::Config(format!("line {n}: trailing content")));
    }
    let model = MlpModel {
        target,
        params,
        input_scaling,
    };
    model.validate().map_err(|e| Error::Config(e.to_string()))?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surrogate::Init;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn model() -> MlpModel {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let scaling = vec![(4.0, 8.0), (3.0, 6.0), (1600.0, 2200.0), (-30.0, 0.0), (0.3, 1.0)];
        let mut m = MlpModel::new(&[5, 7, 3, 1], Target::EtaEx, scaling, Init::He, &mut rng).unwrap();
        m.params.biases[0][2] = 1.0 / 3.0;
        m.params.biases[2][0] = -2.5e-300;
        m
    }

    #[test]
    fn round_trip_is_lossless() {
        let m = model();
        let mut buf = Vec::new();
        write_model(&mut buf, &m).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let back = read_model(&text).unwrap();
        assert_eq!(back, m);
        let x = [5.0, 4.0, 1900.0, -10.0, 0.6];
        assert_eq!(back.forward(&x, true).unwrap(), m.forward(&x, true).unwrap());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.ckpt");
        save_model(&path, &model()).unwrap();
        assert_eq!(load_model(&path).unwrap(), model());
        assert!(matches!(load_model(&dir.path().join("missing")), Err(Error::Io { .. })));
    }

    #[test]
    fn version_mismatch_rejected() {
        let mut buf = Vec::new();
        write_model(&mut buf, &model()).unwrap();
        let text = String::from_utf8(buf).unwrap().replacen("tfx-mlp 1", "tfx-mlp 2", 1);
        let err = read_model(&text).unwrap_err().to_string();
        assert!(err.contains("version"), "{err}");
    }

    #[test]
    fn malformed_files_rejected() {
        let mut buf = Vec::new();
        write_model(&mut buf, &model()).unwrap();
        let good = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = good.lines().collect();
        let truncated = lines[..lines.len() - 1].join("\n");
        assert!(read_model(&truncated).is_err());
        assert!(read_model(&good.replacen("target eta_ex", "target lift", 1)).is_err());
        assert!(read_model(&format!("{good}extra\n")).is_err());
        let short_row = good.replacen(&format!("{}\n", lines[9]), "1 2\n", 1);
        assert!(read_model(&short_row).is_err());
        assert!(read_model(&good.replacen("biases 0 ", "biases 0 NaNx ", 1)).is_err());
        assert!(read_model("").is_err());
    }
}
