//! Parameter sweeps over the cycle and Latin-hypercube dataset generation for
//! the surrogate.
//!
//! Both entry points evaluate independent points through [`Execution::map`]
//! and emit rows in sample order, so the output is the same whichever
//! executor runs them.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycle::{solve_cycle, EngineConfig, FlightCondition};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exergy::component_exergy;
use crate::gasprops::{Fuel, FuelDb};
use crate::report::{PointOutcome, PointRecord};

/// Upper bound on sweep size unless the spec overrides it.
pub const DEFAULT_MAX_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Mach,
    Altitude,
    #[serde(alias = "dT_iat")]
    DtIat,
    PiC,
    PiFan,
    #[serde(alias = "TIT")]
    Tit,
    Alpha,
    Fuel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisValues {
    Numbers(Vec<f64>),
    Names(Vec<String>),
}

impl AxisValues {
    fn len(&self) -> usize {
        match self {
            AxisValues::Numbers(v) => v.len(),
            AxisValues::Names(v) => v.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub parameter: Parameter,
    pub values: AxisValues,
}

impl Axis {
    pub fn numbers(parameter: Parameter, values: impl Into<Vec<f64>>) -> Self {
        Axis {
            parameter,
            values: AxisValues::Numbers(values.into()),
        }
    }

    pub fn fuels<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Axis {
            parameter: Parameter::Fuel,
            values: AxisValues::Names(names.into_iter().map(Into::into).collect()),
        }
    }
}

/// Baseline point plus the axes to vary, read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub fuel: String,
    pub engine: EngineConfig,
    pub flight: FlightCondition,
    pub axes: Vec<Axis>,
    pub max_points: usize,
    pub output: Option<PathBuf>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            fuel: "JP10".into(),
            engine: EngineConfig::default(),
            flight: FlightCondition::default(),
            axes: Vec::new(),
            max_points: DEFAULT_MAX_POINTS,
            output: None,
        }
    }
}

/// One fully specified operating point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub engine: EngineConfig,
    pub flight: FlightCondition,
    pub fuel: Fuel,
}

impl SweepSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::parse(path, e))
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Expands the Cartesian product, last axis varying fastest, validating
    /// every value against its parameter's range.
    pub fn points(&self, db: &FuelDb) -> Result<Vec<SweepPoint>> {
        let n = self.len();
        if n > self.max_points {
            return Err(Error::Config(format!(
                "sweep has {n} points, above the cap of {}",
                self.max_points
            )));
        }
        let base = SweepPoint {
            engine: self.engine.clone(),
            flight: self.flight,
            fuel: db.lookup(&self.fuel)?,
        };
        let mut points = vec![base];
        for axis in &self.axes {
            let mut next = Vec::with_capacity(points.len() * axis.values.len());
            for p in &points {
                match (&axis.values, axis.parameter) {
                    (AxisValues::Names(names), Parameter::Fuel) => {
                        for name in names {
                            let mut q = p.clone();
                            q.fuel = db.lookup(name)?;
                            next.push(q);
                        }
                    }
                    (AxisValues::Numbers(values), param) if param != Parameter::Fuel => {
                        for &v in values {
                            let mut q = p.clone();
                            assign(&mut q, param, v);
                            q.engine.validate()?;
                            q.flight.validate()?;
                            if param == Parameter::Altitude {
                                crate::atmosphere::isa_state(v)?;
                            }
                            next.push(q);
                        }
                    }
                    (_, param) => return Err(Error::Config(format!("axis {param:?} has values of the wrong type"))),
                }
            }
            points = next;
        }
        Ok(points)
    }
}

fn assign(p: &mut SweepPoint, param: Parameter, v: f64) {
    match param {
        Parameter::Mach => p.flight.mach = v,
        Parameter::Altitude => p.flight.altitude = v,
        Parameter::DtIat => p.flight.dt_iat = v,
        Parameter::PiC => p.engine.pi_c = v,
        Parameter::PiFan => p.engine.pi_fan = v,
        Parameter::Tit => p.engine.tit = v,
        Parameter::Alpha => p.engine.alpha = v,
        Parameter::Fuel => unreachable!("fuel axis carries names"),
    }
}

/// Solves the cycle and its exergy balance at one point.
pub fn evaluate_point(engine: &EngineConfig, flight: &FlightCondition, fuel: &Fuel) -> PointOutcome {
    let solved = solve_cycle(engine, flight, fuel)
        .and_then(|sol| component_exergy(&sol, &sol.ambient, fuel).map(|ex| (sol, ex)));
    match solved {
        Ok(pair) if pair.0.is_feasible() => PointOutcome::Solved(Box::new(pair)),
        Ok(pair) => PointOutcome::Infeasible(Box::new(pair)),
        Err(e) => PointOutcome::Failed(e.to_string()),
    }
}

/// Evaluates every grid point; failures become rows with a reason.
pub fn run_sweep(spec: &SweepSpec, db: &FuelDb, exec: Execution) -> Result<Vec<PointRecord>> {
    let points = spec.points(db)?;
    log::info!("sweep: {} points", points.len());
    Ok(exec.map(&points, |i, p| {
        let outcome = evaluate_point(&p.engine, &p.flight, &p.fuel);
        PointRecord::new(i, &p.engine, &p.flight, &p.fuel.name, &outcome)
    }))
}

/// Sampling box for the five surrogate inputs, each `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetRanges {
    pub pi_c: (f64, f64),
    pub pi_fan: (f64, f64),
    pub tit: (f64, f64),
    pub dt_iat: (f64, f64),
    pub alpha: (f64, f64),
}

impl Default for DatasetRanges {
    fn default() -> Self {
        DatasetRanges {
            pi_c: (4.0, 8.0),
            pi_fan: (3.0, 6.0),
            tit: (1600.0, 2200.0),
            dt_iat: (-30.0, 0.0),
            alpha: (0.3, 1.0),
        }
    }
}

impl DatasetRanges {
    fn as_array(&self) -> [(f64, f64); 5] {
        [self.pi_c, self.pi_fan, self.tit, self.dt_iat, self.alpha]
    }

    fn validate(&self) -> Result<()> {
        for (lo, hi) in self.as_array() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Config(format!("bad sampling range [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    /// Maps a point of the unit cube onto the box.
    pub fn scale(&self, u: [f64; 5]) -> [f64; 5] {
        let r = self.as_array();
        std::array::from_fn(|j| r[j].0 + u[j] * (r[j].1 - r[j].0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetSpec {
    pub ranges: DatasetRanges,
    pub engine: EngineConfig,
    pub flight: FlightCondition,
    pub fuel: String,
    pub train_fraction: f64,
}

impl Default for DatasetSpec {
    fn default() -> Self {
        DatasetSpec {
            ranges: DatasetRanges::default(),
            engine: EngineConfig::default(),
            flight: FlightCondition::new(2.5, 30_000.0, 0.0),
            fuel: "Hydrogen".into(),
            train_fraction: 0.8,
        }
    }
}

pub const INPUT_COLUMNS: [&str; 5] = ["pi_c", "pi_fan", "tit_K", "dt_iat_K", "alpha"];
pub const OUTPUT_COLUMNS: [&str; 3] = ["thrust_kN", "tsfc_g_per_kNs", "eta_ex"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub pi_c: f64,
    pub pi_fan: f64,
    #[serde(rename = "tit_K")]
    pub tit: f64,
    #[serde(rename = "dt_iat_K")]
    pub dt_iat: f64,
    pub alpha: f64,
    #[serde(rename = "thrust_kN")]
    pub thrust: f64,
    #[serde(rename = "tsfc_g_per_kNs")]
    pub tsfc: f64,
    pub eta_ex: f64,
}

impl DatasetRow {
    pub fn inputs(&self) -> [f64; 5] {
        [self.pi_c, self.pi_fan, self.tit, self.dt_iat, self.alpha]
    }

    pub fn outputs(&self) -> [f64; 3] {
        [self.thrust, self.tsfc, self.eta_ex]
    }

    /// Value of the named column.
    pub fn column(&self, name: &str) -> Option<f64> {
        let i = INPUT_COLUMNS.iter().position(|c| *c == name);
        let o = OUTPUT_COLUMNS.iter().position(|c| *c == name);
        match (i, o) {
            (Some(i), _) => Some(self.inputs()[i]),
            (_, Some(o)) => Some(self.outputs()[o]),
            _ => None,
        }
    }
}

/// Per-column `(min, max)` over a set of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    pub columns: Vec<(String, f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct NormRow {
    column: String,
    min: f64,
    max: f64,
}

impl Normalization {
    pub fn from_rows(rows: &[DatasetRow]) -> Self {
        let columns = INPUT_COLUMNS
            .iter()
            .chain(OUTPUT_COLUMNS.iter())
            .map(|&name| {
                let (lo, hi) = rows
                    .iter()
                    .filter_map(|r| r.column(name))
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
                (name.to_string(), lo, hi)
            })
            .collect();
        Normalization { columns }
    }

    pub fn get(&self, name: &str) -> Option<(f64, f64)> {
        self.columns
            .iter()
            .find(|(c, _, _)| c == name)
            .map(|&(_, lo, hi)| (lo, hi))
    }

    /// `(min, max)` of the five input columns, in input order.
    pub fn input_ranges(&self) -> Result<[(f64, f64); 5]> {
        let mut out = [(0.0, 0.0); 5];
        for (slot, name) in out.iter_mut().zip(INPUT_COLUMNS) {
            *slot = self
                .get(name)
                .ok_or_else(|| Error::Config(format!("normalization lacks column {name}")))?;
        }
        Ok(out)
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for (column, min, max) in &self.columns {
            w.serialize(NormRow {
                column: column.clone(),
                min: *min,
                max: *max,
            })?;
        }
        w.flush().map_err(|e| Error::io("<normalization>", e))?;
        Ok(())
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let mut columns = Vec::new();
        for row in csv::Reader::from_reader(input).deserialize() {
            let row: NormRow = row?;
            columns.push((row.column, row.min, row.max));
        }
        Ok(Normalization { columns })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::read(File::open(path).map_err(|e| Error::io(path, e))?)
    }
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub train: Vec<DatasetRow>,
    pub test: Vec<DatasetRow>,
    /// Samples drawn but discarded as failed or infeasible.
    pub rejected: usize,
    /// Min/max over the training split.
    pub normalization: Normalization,
}

impl Dataset {
    /// Writes `train.csv`, `test.csv` and `normalization.csv` into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_rows_path(&dir.join("train.csv"), &self.train)?;
        write_rows_path(&dir.join("test.csv"), &self.test)?;
        let path = dir.join("normalization.csv");
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        self.normalization.write(BufWriter::new(file))
    }
}

/// Latin hypercube in the unit cube: each axis is cut into `n` strata and
/// every stratum holds exactly one sample.
pub fn latin_hypercube<R: Rng>(n: usize, rng: &mut R) -> Vec<[f64; 5]> {
    let mut samples = vec![[0.0; 5]; n];
    let mut perm: Vec<usize> = (0..n).collect();
    for j in 0..5 {
        perm.shuffle(rng);
        for (s, &k) in samples.iter_mut().zip(&perm) {
            s[j] = (k as f64 + rng.random::<f64>()) / n as f64;
        }
    }
    samples
}

fn solve_sample(spec: &DatasetSpec, fuel: &Fuel, x: [f64; 5]) -> Option<DatasetRow> {
    let mut engine = spec.engine.clone();
    engine.pi_c = x[0];
    engine.pi_fan = x[1];
    engine.tit = x[2];
    engine.alpha = x[4];
    let mut flight = spec.flight;
    flight.dt_iat = x[3];
    match evaluate_point(&engine, &flight, fuel) {
        PointOutcome::Solved(b) => {
            let (sol, ex) = *b;
            let row = DatasetRow {
                pi_c: x[0],
                pi_fan: x[1],
                tit: x[2],
                dt_iat: x[3],
                alpha: x[4],
                thrust: sol.thrust,
                tsfc: sol.tsfc,
                eta_ex: ex.overall_eta_ex,
            };
            row.outputs().iter().all(|v| v.is_finite()).then_some(row)
        }
        _ => None,
    }
}

/// Draws LHS batches at the design flight condition until `n` solved rows
/// exist, then splits them by a seeded shuffle.
pub fn gen_dataset(spec: &DatasetSpec, db: &FuelDb, seed: u64, n: usize, exec: Execution) -> Result<Dataset> {
    if n < 10 {
        return Err(Error::Config(format!("dataset size {n} is below the minimum of 10")));
    }
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(Error::Config(format!(
            "train_fraction = {} must be in (0, 1)",
            spec.train_fraction
        )));
    }
    spec.ranges.validate()?;
    spec.engine.validate()?;
    spec.flight.validate()?;
    let fuel = db.lookup(&spec.fuel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n);
    let mut rejected = 0;
    let mut batch = n;
    for round in 0.. {
        if round >= 50 {
            return Err(Error::Infeasible(format!(
                "only {} of {n} samples solved after {round} sampling rounds",
                rows.len()
            )));
        }
        let samples: Vec<[f64; 5]> = latin_hypercube(batch, &mut rng)
            .into_iter()
            .map(|u| spec.ranges.scale(u))
            .collect();
        let solved = exec.map(&samples, |_, &x| solve_sample(spec, &fuel, x));
        for row in solved {
            match row {
                Some(r) if rows.len() < n => rows.push(r),
                Some(_) => {}
                None => rejected += 1,
            }
        }
        if rows.len() == n {
            break;
        }
        let missing = n - rows.len();
        log::debug!("dataset: {missing} rows short after round {round}, resampling");
        batch = missing + missing / 4 + 10;
    }
    if rejected > 0 {
        log::info!("dataset: {rejected} infeasible samples discarded");
    }
    rows.shuffle(&mut rng);
    let n_train = (spec.train_fraction * n as f64).floor() as usize;
    let test = rows.split_off(n_train);
    let normalization = Normalization::from_rows(&rows);
    Ok(Dataset {
        train: rows,
        test,
        rejected,
        normalization,
    })
}

pub fn write_rows<W: Write>(out: W, rows: &[DatasetRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("<dataset>", e))?;
    Ok(())
}

pub fn write_rows_path(path: &Path, rows: &[DatasetRow]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_rows(BufWriter::new(file), rows)
}

pub fn read_rows<R: Read>(input: R) -> Result<Vec<DatasetRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn read_rows_path(path: &Path) -> Result<Vec<DatasetRow>> {
    read_rows(File::open(path).map_err(|e| Error::io(path, e))?)
}
