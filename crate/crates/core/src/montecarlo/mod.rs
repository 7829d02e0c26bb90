//! Monte Carlo oracle for the drawdown time.
//!
//! Paths are simulated in fixed-size chunks. Chunk `k` draws from a ChaCha8
//! stream `(seed, k)`, and results are concatenated in chunk order, so the
//! output depends only on `(seed, chunk_size)` and not on the thread count.
//!
//! Ties in the running maximum resolve to the first attainment:
//! `τ = T - min{t : X_t = max_{[0,T]} X}`.

mod compare;
mod samplers;

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use compare::{
    histogram_compare, ks_critical_99, ks_distance, validate_model, AtomCheck, BinReport,
    HistogramReport, KsCheck, MeanCheck, ValidationReport, GRID_BIAS_ALLOWANCE, MIN_EXPECTED,
};
pub use samplers::{ig_increment, simulate, simulate_brownian, simulate_expjump, simulate_ig};

use crate::error::{domain, finite, Error, Result};

/// Relative tolerance for `grid_step` dividing the horizon.
const GRID_DIVISION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_paths: usize,
    pub seed: u64,
    pub horizon: f64,
    /// Time step of the grid samplers (Brownian, IG).
    pub grid_step: f64,
    pub bin_width: f64,
    /// Paths per random stream; fixes the output for a given seed.
    pub chunk_size: usize,
}

impl SimConfig {
    pub fn new(n_paths: usize, seed: u64, horizon: f64) -> Self {
        Self { n_paths, seed, horizon, grid_step: 1e-3, bin_width: 0.1, chunk_size: 10_000 }
    }

    pub fn with_grid_step(mut self, grid_step: f64) -> Self {
        self.grid_step = grid_step;
        self
    }

    pub fn with_bin_width(mut self, bin_width: f64) -> Self {
        self.bin_width = bin_width;
        self
    }

    pub fn with_chunk_size(mut self, chunk_size: usize) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(domain("n_paths must be at least 1"));
        }
        if self.chunk_size == 0 {
            return Err(domain("chunk_size must be at least 1"));
        }
        for (name, v) in
            [("T", self.horizon), ("grid_step", self.grid_step), ("bin_width", self.bin_width)]
        {
            finite(name, v)?;
            if !(v > 0.0) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        self.n_steps().map(|_| ())
    }

    /// Number of grid steps; `grid_step` must divide `T`.
    pub fn n_steps(&self) -> Result<usize> {
        let ratio = self.horizon / self.grid_step;
        let n = ratio.round();
        if !(n >= 1.0) || (ratio - n).abs() > GRID_DIVISION_TOL * n {
            return Err(Error::Grid(format!(
                "grid_step {} does not divide T = {}",
                self.grid_step, self.horizon
            )));
        }
        Ok(n as usize)
    }

    pub fn n_bins(&self) -> usize {
        ((self.horizon / self.bin_width) - 1e-9).ceil().max(1.0) as usize
    }
}

/// Counts of `τ` in bins of width `bin_width` over `(0, T)`, with the two
/// atoms kept apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: Vec<u64>,
    pub atom0: u64,
    pub atom_t: u64,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.atom0 + self.atom_t
    }

    /// Index of the bin holding an interior `τ`.
    pub fn bin_of(&self, tau: f64) -> usize {
        ((tau / self.bin_width + 1e-9).floor() as usize).min(self.counts.len() - 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDrawdown {
    horizon: f64,
    tau: Vec<f64>,
    terminal: Vec<f64>,
    sorted: Vec<f64>,
    histogram: Histogram,
    exact: bool,
}

impl EmpiricalDrawdown {
    /// Builds the summaries from per-path `τ` and terminal values `X_T`.
    pub fn from_samples(
        horizon: f64,
        bin_width: f64,
        tau: Vec<f64>,
        terminal: Vec<f64>,
        exact: bool,
    ) -> Result<Self> {
        if tau.is_empty() || tau.len() != terminal.len() {
            return Err(domain("need one terminal value per tau sample, and at least one sample"));
        }
        if let Some(&bad) = tau.iter().find(|&&t| !(0.0..=horizon).contains(&t)) {
            return Err(domain(format!("tau sample {bad} outside [0, {horizon}]")));
        }
        let n_bins = SimConfig { bin_width, ..SimConfig::new(1, 0, horizon) }.n_bins();
        let mut histogram = Histogram { bin_width, counts: vec![0; n_bins], atom0: 0, atom_t: 0 };
        for &t in &tau {
            if t == 0.0 {
                histogram.atom0 += 1;
            } else if t == horizon {
                histogram.atom_t += 1;
            } else {
                let k = histogram.bin_of(t);
                histogram.counts[k] += 1;
            }
        }
        let mut sorted = tau.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { horizon, tau, terminal, sorted, histogram, exact })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn n_paths(&self) -> usize {
        self.tau.len()
    }

    /// `τ` per path, in path order.
    pub fn tau_samples(&self) -> &[f64] {
        &self.tau
    }

    /// `X_T` per path.
    pub fn terminal_values(&self) -> &[f64] {
        &self.terminal
    }

    pub fn sorted_samples(&self) -> &[f64] {
        &self.sorted
    }

    pub fn histogram(&self) -> &Histogram {
        &self.histogram
    }

    pub fn atom0_count(&self) -> u64 {
        self.histogram.atom0
    }

    pub fn atom_t_count(&self) -> u64 {
        self.histogram.atom_t
    }

    pub fn atom0_frequency(&self) -> f64 {
        self.histogram.atom0 as f64 / self.n_paths() as f64
    }

    pub fn atom_t_frequency(&self) -> f64 {
        self.histogram.atom_t as f64 / self.n_paths() as f64
    }

    /// True when the sampler is grid-free.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Empirical `P(τ ≤ t)`.
    pub fn ecdf(&self, t: f64) -> f64 {
        self.sorted.partition_point(|&x| x <= t) as f64 / self.sorted.len() as f64
    }

    /// Sample mean of `X_T / T`.
    pub fn mean_rate(&self) -> f64 {
        self.terminal.iter().sum::<f64>() / (self.terminal.len() as f64 * self.horizon)
    }

    /// Writes `τ` samples, one per line with 17 significant digits, under a
    /// `tau` header.
    pub fn write_tau_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "tau")?;
        for t in &self.tau {
            writeln!(out, "{t:.16e}")?;
        }
        out.flush()
    }
}

/// Runs `path` for every path index in chunked, seeded streams.
pub(crate) fn run_paths<F>(config: &SimConfig, exact: bool, path: F) -> Result<EmpiricalDrawdown>
where
    F: Fn(&mut ChaCha8Rng) -> (f64, f64) + Sync,
{
    config.validate()?;
    let n = config.n_paths;
    let chunks = n.div_ceil(config.chunk_size);
    let per_chunk: Vec<Vec<(f64, f64)>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k as u64);
            let len = config.chunk_size.min(n - k * config.chunk_size);
            (0..len).map(|_| path(&mut rng)).collect()
        })
        .collect();
    let (tau, terminal): (Vec<f64>, Vec<f64>) = per_chunk.into_iter().flatten().unzip();
    EmpiricalDrawdown::from_samples(config.horizon, config.bin_width, tau, terminal, exact)
}
