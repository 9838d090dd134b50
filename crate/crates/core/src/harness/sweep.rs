//! Phase-diagram sweeps over `(alpha, beta)` at a fixed instance size.
//!
//! Clustering cells use `p = 2q = n^-alpha` and `K = round(n^beta)`;
//! submatrix cells use `mu^2 = n^-alpha`, `K_L = K_R = round(n^beta)` on a
//! square `n x n` matrix. The cluster count is `floor(n/K)` or `1` depending
//! on [`ClusterMap`].

use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::trials::{run_trials_in_pool, with_pool, wilson_interval, Algorithm, ModelKind, ModelParams, TrialConfig, WILSON_Z};
use crate::error::{Error, Result};
use crate::model::{Noise, PlantedParams, SubmatrixParams};
use crate::regimes::{asymptotic_regime_clustering, asymptotic_regime_submatrix, RegimeLabel};
use crate::sdp::SolverOptions;
use crate::seed::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterMap {
    /// `r = floor(n / K)`: nearly every node is clustered.
    #[default]
    Partition,
    /// `r = 1`: a single planted community or block.
    Single,
}

fn yes() -> bool {
    true
}

fn gaussian() -> Noise {
    Noise::Gaussian
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub model: ModelKind,
    pub n: usize,
    pub alpha_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
    pub algorithms: Vec<Algorithm>,
    pub trials: usize,
    pub master_seed: Seed,
    #[serde(default)]
    pub cluster_map: ClusterMap,
    #[serde(default = "gaussian")]
    pub noise: Noise,
    #[serde(default)]
    pub solver_opts: SolverOptions,
    #[serde(default = "yes")]
    pub flip_if_needed: bool,
    #[serde(default)]
    pub use_non_neighbors: bool,
    /// Fill the `wall_ms` column. Off by default so that reruns produce
    /// byte-identical files.
    #[serde(default)]
    pub record_timing: bool,
}

/// One grid point. `params` is `None` when the derived sizes are invalid
/// (`K < 2` or `rK > n`); such cells are written with zero trials and empty
/// rate columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub index: usize,
    pub alpha: f64,
    pub beta: f64,
    pub r: usize,
    pub k: usize,
    pub params: Option<ModelParams>,
    pub predicted: RegimeLabel,
}

/// One output row, in the exact column order of the CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub model: String,
    pub algorithm: String,
    pub n: usize,
    pub r: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub mu: Option<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: Option<f64>,
    pub wilson_lo: Option<f64>,
    pub wilson_hi: Option<f64>,
    pub predicted_regime: String,
    pub wall_ms: Option<f64>,
}

pub const CSV_COLUMNS: [&str; 17] = [
    "model",
    "algorithm",
    "n",
    "r",
    "K",
    "p",
    "q",
    "mu",
    "alpha",
    "beta",
    "trials",
    "successes",
    "success_rate",
    "wilson_lo",
    "wilson_hi",
    "predicted_regime",
    "wall_ms",
];

fn strictly_increasing_in_unit(grid: &[f64]) -> bool {
    !grid.is_empty() && grid.iter().all(|&x| x > 0.0 && x < 1.0) && grid.windows(2).all(|w| w[0] < w[1])
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.n < 2 {
            return bad(format!("n = {} is too small", self.n));
        }
        if !strictly_increasing_in_unit(&self.alpha_grid) || !strictly_increasing_in_unit(&self.beta_grid) {
            return bad("alpha_grid and beta_grid must be nonempty, strictly increasing and inside (0, 1)".into());
        }
        if self.trials == 0 || self.algorithms.is_empty() {
            return bad("trials and algorithms must be nonempty".into());
        }
        if let Some(a) = self.algorithms.iter().find(|a| !a.supports(self.model)) {
            return bad(format!("algorithm {} does not apply to the {} model", a.as_str(), self.model.as_str()));
        }
        self.solver_opts.validate()
    }

    /// Seed shared by every algorithm in cell `index`, so algorithms see the
    /// same instances.
    pub fn cell_seed(&self, index: usize) -> Seed {
        self.master_seed.derive(index as u64)
    }

    /// Grid cells in alpha-major order.
    pub fn cells(&self) -> Result<Vec<SweepCell>> {
        let n = self.n as f64;
        let mut out = Vec::with_capacity(self.alpha_grid.len() * self.beta_grid.len());
        for &alpha in &self.alpha_grid {
            for &beta in &self.beta_grid {
                let k = n.powf(beta).round() as usize;
                let r = match self.cluster_map {
                    ClusterMap::Partition if k > 0 => self.n / k,
                    _ => 1,
                };
                let valid = k >= 2 && r >= 1 && r * k <= self.n;
                let (params, predicted) = match self.model {
                    ModelKind::Clustering => {
                        let p = n.powf(-alpha);
                        let params = if valid { Some(ModelParams::Clustering(PlantedParams::new(self.n, r, k, p, p / 2.0)?)) } else { None };
                        (params, asymptotic_regime_clustering(alpha, beta)?)
                    }
                    ModelKind::Submatrix => {
                        let mu = n.powf(-alpha / 2.0);
                        let params = if valid {
                            Some(ModelParams::Submatrix(SubmatrixParams::square(self.n, k, r, mu, self.noise)?))
                        } else {
                            None
                        };
                        (params, asymptotic_regime_submatrix(alpha, beta)?)
                    }
                };
                out.push(SweepCell { index: out.len(), alpha, beta, r, k, params, predicted });
            }
        }
        Ok(out)
    }

    /// The trial configuration of one cell and algorithm.
    pub fn trial_config(&self, cell: &SweepCell, algorithm: Algorithm) -> Option<TrialConfig> {
        let params = cell.params?;
        Some(TrialConfig {
            params,
            algorithm,
            trials: self.trials,
            master_seed: self.cell_seed(cell.index),
            solver_opts: self.solver_opts,
            flip_if_needed: self.flip_if_needed,
            use_non_neighbors: self.use_non_neighbors,
            record_timing: self.record_timing,
        })
    }
}

fn skipped_row(cfg: &SweepConfig, cell: &SweepCell, algorithm: Algorithm) -> SweepRow {
    let n = cfg.n as f64;
    let (p, q, mu) = match cfg.model {
        ModelKind::Clustering => {
            let p = n.powf(-cell.alpha);
            (Some(p), Some(p / 2.0), None)
        }
        ModelKind::Submatrix => (None, None, Some(n.powf(-cell.alpha / 2.0))),
    };
    SweepRow {
        model: cfg.model.as_str().into(),
        algorithm: algorithm.as_str().into(),
        n: cfg.n,
        r: cell.r,
        k: cell.k,
        p,
        q,
        mu,
        alpha: cell.alpha,
        beta: cell.beta,
        trials: 0,
        successes: 0,
        success_rate: None,
        wilson_lo: None,
        wilson_hi: None,
        predicted_regime: cell.predicted.as_str().into(),
        wall_ms: None,
    }
}

/// Runs every `(cell, algorithm)` pair. Cells whose derived parameters are
/// invalid, or where the algorithm's configuration is rejected (for example
/// an MLE over the enumeration budget), produce a skipped row.
pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let cells = cfg.cells()?;
    with_pool(|| {
        let mut rows = Vec::new();
        for cell in &cells {
            for &algorithm in &cfg.algorithms {
                let mut row = skipped_row(cfg, cell, algorithm);
                let Some(tc) = cfg.trial_config(cell, algorithm) else {
                    rows.push(row);
                    continue;
                };
                if tc.validate().is_err() {
                    rows.push(row);
                    continue;
                }
                let start = Instant::now();
                let report = run_trials_in_pool(&tc)?;
                let (lo, hi) = wilson_interval(report.successes, report.trials.len(), WILSON_Z);
                row.trials = tc.trials;
                row.successes = report.successes;
                row.success_rate = Some(report.success_rate);
                row.wilson_lo = Some(lo);
                row.wilson_hi = Some(hi);
                row.wall_ms = Some(if cfg.record_timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 });
                rows.push(row);
            }
        }
        Ok(rows)
    })?
}

pub fn write_sweep_csv(rows: &[SweepRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_COLUMNS)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the sweep and writes the CSV to `path`.
pub fn run_sweep(cfg: &SweepConfig, path: impl AsRef<Path>) -> Result<Vec<SweepRow>> {
    let rows = sweep_rows(cfg)?;
    let file = File::create(path.as_ref())?;
    write_sweep_csv(&rows, file)?;
    Ok(rows)
}
