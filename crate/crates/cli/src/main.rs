//! `tfx`: run the turbofan cycle, sweeps, dataset generation and surrogate
//! training from the command line.
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 solver failure,
//! 4 I/O error, 5 acceptance failure (`validate`, `eval` thresholds).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use turbofan_exergy::metrics::{evaluate, within_band, EvalMetrics};
use turbofan_exergy::report::{simulation_text, write_exergy_csv, write_records, PointRecord};
use turbofan_exergy::surrogate::{load_model, predict_rows, save_model, train, write_loss_csv, Target, TrainConfig};
use turbofan_exergy::sweep::{
    evaluate_point, gen_dataset, read_rows_path, run_sweep, DatasetSpec, Normalization, SweepSpec,
};
use turbofan_exergy::{component_exergy, solve_cycle, EngineConfig, Error, Execution, FlightCondition, FuelDb};

mod golden;

#[derive(Parser)]
#[command(
    name = "tfx",
    version,
    about = "Turbofan energy/exergy cycle model and MLP surrogate"
)]
struct Cli {
    /// Repeat for more log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one operating point.
    Simulate(SimulateArgs),
    /// Evaluate a grid of operating points described by a TOML file.
    Sweep(SweepArgs),
    /// Generate the surrogate training/test dataset.
    Dataset(DatasetArgs),
    /// Train one surrogate network.
    Train(TrainArgs),
    /// Score a trained network on one or more datasets.
    Eval(EvalArgs),
    /// Compare the sea-level static point with reference values.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct Common {
    /// Extra fuels as CSV (name,a,b,fhv_mj_per_kg,chem_exergy_mj_per_kg,mw_g_per_mol).
    #[arg(long)]
    fuel_db: Option<PathBuf>,
    /// Run batch work on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn db(&self) -> Result<FuelDb, Error> {
        let mut db = FuelDb::default();
        if let Some(path) = &self.fuel_db {
            db.extend_from_path(path)?;
        }
        Ok(db)
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    Exergy,
}

#[derive(Args)]
struct SimulateArgs {
    /// Engine configuration (TOML); defaults to the design point.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    mach: f64,
    /// Altitude, m.
    #[arg(long, default_value_t = 0.0)]
    altitude: f64,
    /// Inlet air temperature change, K (negative cools).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    dt_iat: f64,
    #[arg(long)]
    fuel: String,
    /// Add the component exergy balance.
    #[arg(long, value_enum)]
    report: Option<ReportKind>,
    /// Write the point as a one-row CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the exergy table (component,eta_ex,E_D_MW) as CSV.
    #[arg(long)]
    exergy_csv: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep description (TOML).
    #[arg(long)]
    spec: PathBuf,
    /// Output CSV; overrides the spec's `output`. Standard output when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DatasetArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 7599)]
    n: usize,
    /// Receives train.csv, test.csv and normalization.csv.
    #[arg(long)]
    out_dir: PathBuf,
    /// Sampling ranges and baseline (TOML).
    #[arg(long)]
    spec: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    target: String,
    /// Training CSV.
    #[arg(long)]
    data: PathBuf,
    /// Normalization sidecar; defaults to normalization.csv next to the data.
    #[arg(long)]
    norm: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    epochs: usize,
    #[arg(long, default_value_t = 64)]
    batch_size: usize,
    #[arg(long, default_value_t = 1e-3)]
    lr: f64,
    /// Checkpoint path; defaults to <target>.ckpt.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Loss history CSV; defaults to the checkpoint path with a .loss.csv suffix.
    #[arg(long)]
    loss_csv: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    model: PathBuf,
    /// One or more dataset CSVs; each becomes a column of the table.
    #[arg(long, num_args = 1.., required = true)]
    data: Vec<PathBuf>,
    /// Fail (exit 5) when MAPE on any dataset exceeds this, in percent.
    #[arg(long)]
    max_mape: Option<f64>,
    /// Fail (exit 5) when R on any dataset is below this.
    #[arg(long)]
    min_r: Option<f64>,
    /// Relative band for the within-band count, in percent.
    #[arg(long, default_value_t = 1.0)]
    band: f64,
    /// Also write the metrics as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Engine configuration (TOML); defaults to the design point.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Machine-readable verdict.
    #[arg(long)]
    json: bool,
}

enum Failure {
    Lib(Error),
    Acceptance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 4,
        Error::Csv(c) if c.is_io_error() => 4,
        e if e.is_solver_failure() => 3,
        Error::Diverged { .. } => 3,
        _ => 2,
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn load_config(path: Option<&Path>) -> Result<EngineConfig, Error> {
    match path {
        Some(p) => EngineConfig::from_path(p),
        None => Ok(EngineConfig::default()),
    }
}

fn simulate(args: &SimulateArgs) -> CmdResult {
    let cfg = load_config(args.config.as_deref())?;
    let fuel = args.common.db()?.lookup(&args.fuel)?;
    let flight = FlightCondition::new(args.mach, args.altitude, args.dt_iat);
    let sol = solve_cycle(&cfg, &flight, &fuel)?;
    let exergy = match (args.report, &args.exergy_csv, &args.csv) {
        (None, None, None) => None,
        _ => Some(component_exergy(&sol, &sol.ambient, &fuel)?),
    };
    let shown = args.report.map(|_| exergy.as_ref()).unwrap_or(None);
    print!("{}", simulation_text(&sol, shown));
    if let Some(path) = &args.csv {
        let outcome = evaluate_point(&cfg, &flight, &fuel);
        let record = PointRecord::new(0, &cfg, &flight, &fuel.name, &outcome);
        write_records(create(path)?, &[record])?;
    }
    if let (Some(path), Some(ex)) = (&args.exergy_csv, &exergy) {
        write_exergy_csv(create(path)?, ex)?;
    }
    if !sol.is_feasible() {
        log::warn!("non-positive thrust at this operating point");
    }
    Ok(())
}

fn sweep(args: &SweepArgs) -> CmdResult {
    let spec = SweepSpec::from_path(&args.spec)?;
    let records = run_sweep(&spec, &args.common.db()?, args.common.exec())?;
    let failed = records.iter().filter(|r| r.status != "ok").count();
    match args.out.as_ref().or(spec.output.as_ref()) {
        Some(path) => {
            write_records(create(path)?, &records)?;
            eprintln!(
                "{} points written to {} ({failed} not ok)",
                records.len(),
                path.display()
            );
        }
        None => write_records(io::stdout().lock(), &records)?,
    }
    Ok(())
}

fn dataset(args: &DatasetArgs) -> CmdResult {
    let spec = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(io_err(path))?;
            toml::from_str::<DatasetSpec>(&text).map_err(|e| Error::Parse {
                path: path.clone(),
                msg: e.to_string(),
            })?
        }
        None => DatasetSpec::default(),
    };
    let ds = gen_dataset(&spec, &args.common.db()?, args.seed, args.n, args.common.exec())?;
    ds.write_dir(&args.out_dir)?;
    println!(
        "train {} rows, test {} rows, {} infeasible samples discarded -> {}",
        ds.train.len(),
        ds.test.len(),
        ds.rejected,
        args.out_dir.display()
    );
    Ok(())
}

fn train_cmd(args: &TrainArgs) -> CmdResult {
    let target: Target = args.target.parse()?;
    let rows = read_rows_path(&args.data)?;
    let norm_path = args
        .norm
        .clone()
        .or_else(|| Some(args.data.parent()?.join("normalization.csv")).filter(|p| p.exists()));
    let scaling = match norm_path {
        Some(p) => Some(Normalization::from_path(&p)?.input_ranges()?.to_vec()),
        None => {
            log::warn!("no normalization file; scaling inputs by the training data range");
            None
        }
    };
    let cfg = TrainConfig {
        epochs: args.epochs,
        batch_size: args.batch_size,
        seed: args.seed,
        lr: args.lr,
        ..TrainConfig::default()
    };
    let outcome = train(&rows, target, scaling, &cfg)?;
    let ckpt = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{target}.ckpt")));
    save_model(&ckpt, &outcome.model)?;
    let loss_path = args.loss_csv.clone().unwrap_or_else(|| {
        let mut s = ckpt.clone().into_os_string();
        s.push(".loss.csv");
        PathBuf::from(s)
    });
    write_loss_csv(create(&loss_path)?, &outcome.loss_history)?;
    println!(
        "{target}: {} epochs, final training MSE {} -> {}",
        cfg.epochs,
        outcome.loss_history.last().copied().unwrap_or(f64::NAN),
        ckpt.display()
    );
    Ok(())
}

struct EvalColumn {
    name: String,
    n: usize,
    metrics: EvalMetrics,
    within_band: usize,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6}"))
}

fn eval_cmd(args: &EvalArgs) -> CmdResult {
    let model = load_model(&args.model)?;
    let mut columns = Vec::new();
    for path in &args.data {
        let rows = read_rows_path(path)?;
        let y: Vec<f64> = rows.iter().map(|r| model.target.value(r)).collect();
        let yhat = predict_rows(&model, &rows)?;
        let metrics = evaluate(&y, &yhat)?;
        let band = within_band(&y, &yhat, args.band / 100.0);
        let name = path
            .file_stem()
            .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        columns.push(EvalColumn {
            name,
            n: rows.len(),
            metrics,
            within_band: band,
        });
    }
    let mut table: Vec<(String, Vec<String>)> = vec![
        ("n".into(), columns.iter().map(|c| c.n.to_string()).collect()),
        ("R".into(), columns.iter().map(|c| fmt_opt(c.metrics.r)).collect()),
        ("R2".into(), columns.iter().map(|c| fmt_opt(c.metrics.r2)).collect()),
        (
            "RMSE".into(),
            columns.iter().map(|c| format!("{:.6}", c.metrics.rmse)).collect(),
        ),
        (
            "MSE".into(),
            columns.iter().map(|c| format!("{:.6e}", c.metrics.mse)).collect(),
        ),
        (
            "MAE".into(),
            columns.iter().map(|c| format!("{:.6}", c.metrics.mae)).collect(),
        ),
        (
            "MAPE_%".into(),
            columns
                .iter()
                .map(|c| format!("{:.4}", c.metrics.mape_percent))
                .collect(),
        ),
    ];
    table.push((
        format!("within_{}%", args.band),
        columns.iter().map(|c| c.within_band.to_string()).collect(),
    ));
    let header: Vec<String> = columns.iter().map(|c| c.name.clone()).collect();
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "target: {}", model.target);
    let _ = writeln!(
        out,
        "{:<12} {}",
        "metric",
        header.iter().map(|h| format!("{h:>14}")).collect::<String>()
    );
    for (label, vals) in &table {
        let _ = writeln!(
            out,
            "{label:<12} {}",
            vals.iter().map(|v| format!("{v:>14}")).collect::<String>()
        );
    }
    if let Some(path) = &args.csv {
        let mut w = create(path)?;
        let mut line = String::from("metric");
        for h in &header {
            line.push(',');
            line.push_str(h);
        }
        writeln!(w, "{line}").map_err(io_err(path))?;
        for (label, vals) in &table {
            writeln!(w, "{label},{}", vals.join(",")).map_err(io_err(path))?;
        }
        w.flush().map_err(io_err(path))?;
    }
    let mut misses = Vec::new();
    for c in &columns {
        if let Some(max) = args.max_mape {
            if c.metrics.mape_percent.is_nan() || c.metrics.mape_percent > max {
                misses.push(format!("{}: MAPE {:.4}% > {max}%", c.name, c.metrics.mape_percent));
            }
        }
        if let Some(min) = args.min_r {
            if !c.metrics.r.is_some_and(|r| r >= min) {
                misses.push(format!("{}: R {} < {min}", c.name, fmt_opt(c.metrics.r)));
            }
        }
    }
    if misses.is_empty() {
        Ok(())
    } else {
        Err(Failure::Acceptance(misses.join("; ")))
    }
}

#[derive(Serialize)]
struct Verdict {
    pass: bool,
    checks: Vec<golden::Check>,
}

fn validate(args: &ValidateArgs) -> CmdResult {
    let cfg = load_config(args.config.as_deref())?;
    let checks = golden::sea_level_static(&cfg)?;
    let pass = checks.iter().all(|c| c.pass);
    if args.json {
        let verdict = Verdict { pass, checks };
        println!(
            "{}",
            serde_json::to_string_pretty(&verdict).expect("verdict serializes")
        );
    } else {
        println!(
            "{:<18} {:>12} {:>12} {:>9} {:>8}  verdict",
            "quantity", "computed", "reference", "error_%", "tol_%"
        );
        for c in &checks {
            println!(
                "{:<18} {:>12.4} {:>12.4} {:>9.2} {:>8.1}  {}",
                c.quantity,
                c.computed,
                c.reference,
                c.relative_error * 100.0,
                c.tolerance * 100.0,
                if c.pass { "pass" } else { "FAIL" }
            );
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Acceptance(
            "sea-level static point outside reference tolerance".into(),
        ))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Sweep(a) => sweep(a),
        Command::Dataset(a) => dataset(a),
        Command::Train(a) => train_cmd(a),
        Command::Eval(a) => eval_cmd(a),
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Acceptance(msg)) => {
            eprintln!("acceptance failure: {msg}");
            ExitCode::from(5)
        }
    }
}
