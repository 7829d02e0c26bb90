//! Command-line front end. `run` returns the process exit code:
//! 0 success, 2 invalid arguments or parameters, 3 I/O failure, 4 failed
//! validation verdict.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::drawdown::{drawdown_distribution, expjump_atom0_asymptotic};
use crate::error::Error;
use crate::models::{cumulants_of, parse_model_kv, Family, LevyModel, ModelInput};
use crate::montecarlo::{simulate, validate_model, Histogram, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_FAIL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "levy-drawdown", version, about = "Drawdown-time laws of Lévy models without up-jumps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate the density of the continuous part as `t,density`.
    Density(TableArgs),
    /// Tabulate `P(τ ≤ t)` as `t,cdf`; the row at `T` excludes the atom at `T`.
    Cdf(TableArgs),
    /// Print the probability that the path ends at its maximum.
    Atom(AtomArgs),
    /// Convert native parameters to cumulants or back.
    Convert(ModelArgs),
    /// Simulate drawdown times.
    Simulate(SimulateArgs),
    /// Compare a simulation with the analytic law and write a JSON report.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Brownian,
    Expjump,
    Ig,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Brownian => Family::Brownian,
            FamilyArg::Expjump => Family::ExpJump,
            FamilyArg::Ig => Family::Ig,
        }
    }
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Model family.
    #[arg(long, visible_alias = "family", value_enum)]
    model: FamilyArg,
    /// Drift.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    /// Brownian volatility.
    #[arg(long)]
    sigma: Option<f64>,
    /// Jump rate (expjump).
    #[arg(long)]
    lambda: Option<f64>,
    /// Mean jump size (expjump).
    #[arg(long)]
    xi: Option<f64>,
    /// Inverse Gaussian rate parameter (ig).
    #[arg(long)]
    alpha: Option<f64>,
    /// Inverse Gaussian scale parameter (ig).
    #[arg(long)]
    beta: Option<f64>,
    /// Mean per unit time.
    #[arg(long, allow_negative_numbers = true)]
    mu_hat: Option<f64>,
    /// Standard deviation per unit time.
    #[arg(long)]
    sigma_hat: Option<f64>,
    /// Normalized skewness.
    #[arg(long, allow_negative_numbers = true)]
    kappa_hat: Option<f64>,
}

impl ModelArgs {
    fn input(&self) -> Result<ModelInput, Error> {
        let family: Family = self.model.into();
        let mut kv = format!("model={family}");
        for (key, value) in [
            ("mu", self.mu),
            ("sigma", self.sigma),
            ("lambda", self.lambda),
            ("xi", self.xi),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("mu_hat", self.mu_hat),
            ("sigma_hat", self.sigma_hat),
            ("kappa_hat", self.kappa_hat),
        ] {
            if let Some(v) = value {
                kv.push_str(&format!(" {key}={v:?}"));
            }
        }
        parse_model_kv(&kv)
    }

    fn model(&self) -> Result<LevyModel, Error> {
        self.input()?.resolve()
    }
}

#[derive(Debug, Args)]
struct HorizonArg {
    /// Horizon T.
    #[arg(short = 'T', long = "horizon")]
    horizon: f64,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    horizon: HorizonArg,
    /// Grid `start:stop:step`, both ends included.
    #[arg(long)]
    grid: String,
    /// Output file; standard output if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AtomArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    horizon: HorizonArg,
    /// Also print the large-drift approximation (expjump only).
    #[arg(long)]
    approx: bool,
}

#[derive(Debug, Args)]
struct SimArgs {
    /// Number of paths.
    #[arg(long, default_value_t = 100_000)]
    paths: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time step of the grid samplers; must divide T.
    #[arg(long, default_value_t = 1e-3)]
    grid_step: f64,
    #[arg(long, default_value_t = 0.1)]
    bin_width: f64,
    /// Paths per random stream.
    #[arg(long, default_value_t = 10_000)]
    chunk_size: usize,
}

impl SimArgs {
    fn config(&self, horizon: f64) -> SimConfig {
        SimConfig::new(self.paths, self.seed, horizon)
            .with_grid_step(self.grid_step)
            .with_bin_width(self.bin_width)
            .with_chunk_size(self.chunk_size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    horizon: HorizonArg,
    #[command(flatten)]
    sim: SimArgs,
    /// `csv` writes one τ per line, `json` a histogram summary.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    horizon: HorizonArg,
    #[command(flatten)]
    sim: SimArgs,
    /// Analytic model as key-value text, e.g. "model=expjump mu=0.3 lambda=4 xi=0.125";
    /// defaults to the simulated model.
    #[arg(long)]
    analytic: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct SimulationSummary {
    schema: u32,
    model: LevyModel,
    config: SimConfig,
    exact_sampler: bool,
    atom0_frequency: f64,
    atom_t_frequency: f64,
    mean_rate: f64,
    histogram: Histogram,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Parses `start:stop:step` into points from `start` to `stop` inclusive;
/// `stop` is kept when it lies within `1e-9` (relative to the step) of the
/// last multiple.
pub fn parse_grid(text: &str, horizon: f64) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(Error::Grid(format!("expected start:stop:step, got '{text}'")));
    };
    let num = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| Error::Grid(format!("cannot parse '{s}' in '{text}'")))
    };
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Grid(format!("step must be positive, got {step}")));
    }
    if !(start <= stop) {
        return Err(Error::Grid(format!("start {start} exceeds stop {stop}")));
    }
    let tol = 1e-9;
    if start < -tol * step || stop > horizon + tol * step {
        return Err(Error::Grid(format!("grid [{start}, {stop}] is not within [0, {horizon}]")));
    }
    let span = (stop - start) / step;
    let n = (span + tol).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|k| (start + k as f64 * step).clamp(0.0, horizon)).collect();
    if (span - n as f64).abs() <= tol {
        *grid.last_mut().unwrap() = stop.clamp(0.0, horizon);
    }
    Ok(grid)
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn table(args: &TableArgs, cumulative: bool) -> Result<(), Failure> {
    let model = args.model.model()?;
    let horizon = args.horizon.horizon;
    let dist = drawdown_distribution(&model, horizon)?;
    let grid = parse_grid(&args.grid, horizon)?;
    let rows: Vec<(f64, f64)> = if cumulative {
        dist.cdf_on_grid(&grid)?
            .into_iter()
            .map(|(t, v)| (t, if t == horizon { 1.0 - dist.atom_t() } else { v }))
            .collect()
    } else {
        grid.iter().map(|&t| dist.density_at(t).map(|d| (t, d))).collect::<Result<_, _>>()?
    };
    let mut out = open_output(&args.output)?;
    writeln!(out, "t,{}", if cumulative { "cdf" } else { "density" })?;
    for (t, v) in rows {
        writeln!(out, "{t:.16e},{v:.16e}")?;
    }
    writeln!(out, "# atom0={:.16e} atomT={:.16e}", dist.atom0(), dist.atom_t())?;
    out.flush()?;
    Ok(())
}

fn atom(args: &AtomArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let model = args.model.model()?;
    let horizon = args.horizon.horizon;
    if let LevyModel::Brownian(_) = model {
        return Err(Failure::Usage("atoms are zero for Brownian".into()));
    }
    let dist = drawdown_distribution(&model, horizon)?;
    writeln!(out, "atom0={:.16e}", dist.atom0())?;
    if args.approx {
        let LevyModel::ExpJump(p) = model else {
            return Err(Failure::Usage("--approx is available for expjump only".into()));
        };
        writeln!(out, "atom0_approx={:.16e}", expjump_atom0_asymptotic(&p, horizon)?)?;
    }
    Ok(())
}

fn convert(args: &ModelArgs, out: &mut dyn Write) -> Result<(), Failure> {
    match args.input()? {
        ModelInput::Native(m) => {
            m.validate()?;
            writeln!(out, "model={} {}", m.family(), cumulants_of(&m))?;
        }
        input @ ModelInput::Cumulant { .. } => writeln!(out, "{}", input.resolve()?)?,
    }
    Ok(())
}

fn simulate_cmd(args: &SimulateArgs) -> Result<(), Failure> {
    let model = args.model.model()?;
    let config = args.sim.config(args.horizon.horizon);
    let emp = simulate(&model, &config)?;
    let mut out = open_output(&args.output)?;
    match args.format {
        Format::Csv => emp.write_tau_csv(&mut out)?,
        Format::Json => {
            let summary = SimulationSummary {
                schema: 1,
                model,
                config,
                exact_sampler: emp.is_exact(),
                atom0_frequency: emp.atom0_frequency(),
                atom_t_frequency: emp.atom_t_frequency(),
                mean_rate: emp.mean_rate(),
                histogram: emp.histogram().clone(),
            };
            serde_json::to_writer_pretty(&mut out, &summary).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn validate_cmd(args: &ValidateArgs) -> Result<bool, Failure> {
    let simulated = args.model.model()?;
    let analytic = match &args.analytic {
        Some(text) => text.parse::<LevyModel>()?,
        None => simulated,
    };
    let config = args.sim.config(args.horizon.horizon);
    let report = validate_model(&analytic, &simulated, &config)?;
    let mut out = open_output(&args.output)?;
    serde_json::to_writer_pretty(&mut out, &report).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(report.pass)
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let result = match &cli.command {
        Command::Density(a) => table(a, false).map(|_| true),
        Command::Cdf(a) => table(a, true).map(|_| true),
        Command::Atom(a) => atom(a, &mut lock).map(|_| true),
        Command::Convert(a) => convert(a, &mut lock).map(|_| true),
        Command::Simulate(a) => simulate_cmd(a).map(|_| true),
        Command::Validate(a) => validate_cmd(a),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("validation verdict: fail");
            EXIT_FAIL
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            EXIT_IO
        }
    }
}
