//! Seeded Monte Carlo trials for a single parameter configuration.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{cluster_space_size, mle_clustering, mle_submatrix, DEFAULT_BUDGET};
use crate::generate::{sample_assignment, sample_bicluster, sample_planted_graph, sample_submatrix_instance};
use crate::model::{
    assignments_equal_up_to_relabeling, bicluster_to_matrix, flip_graph, BiClusterAssignment, ClusterAssignment,
    Graph, PlantedParams, RealMatrix, SubmatrixParams,
};
use crate::sdp::{round_and_certify, round_and_certify_bicluster, solve_clustering, solve_submatrix, Rounded, SolverOptions};
use crate::seed::Seed;
use crate::simple::{counting_algorithm, elementwise_thresholding, submatrix_thresholding, Recovery};

/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959963984540054;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PLANTED_BENCH_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Clustering,
    Submatrix,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Clustering => "clustering",
            ModelKind::Submatrix => "submatrix",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Mle,
    Cvx,
    Counting,
    Thresholding,
    Element,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Mle => "mle",
            Algorithm::Cvx => "cvx",
            Algorithm::Counting => "counting",
            Algorithm::Thresholding => "thresholding",
            Algorithm::Element => "element",
        }
    }

    pub fn supports(self, model: ModelKind) -> bool {
        match self {
            Algorithm::Mle | Algorithm::Cvx => true,
            Algorithm::Counting => model == ModelKind::Clustering,
            Algorithm::Thresholding | Algorithm::Element => model == ModelKind::Submatrix,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelParams {
    Clustering(PlantedParams),
    Submatrix(SubmatrixParams),
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Clustering(_) => ModelKind::Clustering,
            ModelParams::Submatrix(_) => ModelKind::Submatrix,
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub params: ModelParams,
    pub algorithm: Algorithm,
    pub trials: usize,
    pub master_seed: Seed,
    #[serde(default)]
    pub solver_opts: SolverOptions,
    /// Run clustering algorithms on the complement graph when `p < q`.
    #[serde(default = "yes")]
    pub flip_if_needed: bool,
    /// Counting variant that links nodes by common non-neighbors.
    #[serde(default)]
    pub use_non_neighbors: bool,
    /// Record per-trial wall-clock time. Off by default so that reports are
    /// byte-identical across runs.
    #[serde(default)]
    pub record_timing: bool,
}

impl TrialConfig {
    pub fn new(params: ModelParams, algorithm: Algorithm, trials: usize, master_seed: impl Into<Seed>) -> Self {
        Self {
            params,
            algorithm,
            trials,
            master_seed: master_seed.into(),
            solver_opts: SolverOptions::default(),
            flip_if_needed: true,
            use_non_neighbors: false,
            record_timing: false,
        }
    }

    pub fn model(&self) -> ModelKind {
        self.params.kind()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be positive".into()));
        }
        if !self.algorithm.supports(self.model()) {
            return Err(Error::InvalidParams(format!(
                "algorithm {} does not apply to the {} model",
                self.algorithm.as_str(),
                self.model().as_str()
            )));
        }
        self.solver_opts.validate()?;
        match self.params {
            ModelParams::Clustering(p) => {
                if self.algorithm == Algorithm::Counting && p.p() < p.q() && !self.flip_if_needed {
                    return Err(Error::Precondition("counting needs p > q; enable flip_if_needed".into()));
                }
                if self.algorithm == Algorithm::Mle {
                    crate::exact::enumerate::within_budget(&cluster_space_size(p.n(), p.r(), p.k())?, DEFAULT_BUDGET)?;
                }
            }
            ModelParams::Submatrix(s) => {
                if self.algorithm == Algorithm::Mle {
                    mle_budget_submatrix(&s)?;
                }
            }
        }
        Ok(())
    }
}

fn mle_budget_submatrix(s: &SubmatrixParams) -> Result<()> {
    let factorial = (1..=s.r()).fold(num_bigint::BigUint::from(1u32), |acc, i| acc * num_bigint::BigUint::from(i));
    let joint = cluster_space_size(s.n_left(), s.r(), s.k_left())?
        * cluster_space_size(s.n_right(), s.r(), s.k_right())?
        * factorial;
    crate::exact::enumerate::within_budget(&joint, DEFAULT_BUDGET).map(|_| ())
}

/// A sampled instance together with its planted truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Instance {
    Clustering { params: PlantedParams, truth: ClusterAssignment, graph: Graph },
    Submatrix { params: SubmatrixParams, truth: BiClusterAssignment, matrix: RealMatrix },
}

/// Samples truth from `seed.derive(0)` and the observation from `seed.derive(1)`.
pub fn sample_instance(params: &ModelParams, seed: Seed) -> Result<Instance> {
    Ok(match params {
        ModelParams::Clustering(p) => {
            let truth = sample_assignment(p, seed.derive(0));
            let graph = sample_planted_graph(p, &truth, seed.derive(1))?;
            Instance::Clustering { params: *p, truth, graph }
        }
        ModelParams::Submatrix(s) => {
            let truth = sample_bicluster(s, seed.derive(0));
            let matrix = sample_submatrix_instance(s, &truth, seed.derive(1))?;
            Instance::Submatrix { params: *s, truth, matrix }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    WrongAnswer,
    Tie,
    Inconsistent,
    NonConverged,
    Unroundable,
    /// A numerical routine reported an error during the trial.
    SolverError,
}

/// What an algorithm returned on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimate {
    Clustering(ClusterAssignment),
    Bicluster(BiClusterAssignment),
    Matrix(RealMatrix),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub algorithm: Algorithm,
    pub success: bool,
    pub failure: Option<FailureKind>,
    pub estimate: Estimate,
    pub objective: Option<f64>,
    pub iterations: Option<usize>,
    pub flipped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveSettings {
    pub solver_opts: SolverOptions,
    pub flip_if_needed: bool,
    pub use_non_neighbors: bool,
}

impl Default for SolveSettings {
    fn default() -> Self {
        Self { solver_opts: SolverOptions::default(), flip_if_needed: true, use_non_neighbors: false }
    }
}

/// Runs one algorithm on one instance and scores it against the truth:
/// clusterings up to relabeling, bi-clusterings on the block matrix.
/// Errors are returned only for inputs the algorithm rejects outright (for
/// example an MLE over the enumeration budget).
pub fn solve_instance(instance: &Instance, algorithm: Algorithm, settings: &SolveSettings) -> Result<SolveOutcome> {
    let mut out = SolveOutcome {
        algorithm,
        success: false,
        failure: None,
        estimate: Estimate::None,
        objective: None,
        iterations: None,
        flipped: false,
    };
    let fail = |out: &mut SolveOutcome, kind| {
        out.success = false;
        out.failure = Some(kind);
    };
    match instance {
        Instance::Clustering { params, truth, graph } => {
            if !algorithm.supports(ModelKind::Clustering) {
                return Err(Error::InvalidParams(format!("{} does not apply to clustering", algorithm.as_str())));
            }
            let flip = settings.flip_if_needed && params.p() < params.q();
            let (g, p) = if flip { (flip_graph(graph), params.flipped()) } else { (graph.clone(), *params) };
            out.flipped = flip;
            let judge = |out: &mut SolveOutcome, est: ClusterAssignment| -> Result<()> {
                out.success = assignments_equal_up_to_relabeling(&est, truth)?;
                if !out.success {
                    out.failure = Some(FailureKind::WrongAnswer);
                }
                out.estimate = Estimate::Clustering(est);
                Ok(())
            };
            match algorithm {
                Algorithm::Mle => {
                    let res = mle_clustering(&g, p.r(), p.k())?;
                    out.objective = Some(res.objective);
                    judge(&mut out, res.best)?;
                    if !res.unique {
                        fail(&mut out, FailureKind::Tie);
                    }
                }
                Algorithm::Cvx => match solve_clustering(&g, &p, &settings.solver_opts) {
                    Ok(sol) => {
                        out.objective = Some(sol.objective);
                        out.iterations = Some(sol.iterations);
                        let (rounded, _) = round_and_certify(&sol.y_hat, truth, settings.solver_opts.round_threshold);
                        match rounded {
                            Rounded::Assignment(a) => judge(&mut out, a)?,
                            Rounded::Unroundable => fail(&mut out, FailureKind::Unroundable),
                        }
                        if !sol.converged {
                            fail(&mut out, FailureKind::NonConverged);
                        }
                    }
                    Err(Error::Decomposition(_)) => fail(&mut out, FailureKind::SolverError),
                    Err(e) => return Err(e),
                },
                Algorithm::Counting => match counting_algorithm(&g, &p, settings.use_non_neighbors)? {
                    Recovery::Recovered(a) => judge(&mut out, a)?,
                    Recovery::Inconsistent => fail(&mut out, FailureKind::Inconsistent),
                },
                Algorithm::Thresholding | Algorithm::Element => unreachable!("rejected above"),
            }
        }
        Instance::Submatrix { params, truth, matrix } => {
            if !algorithm.supports(ModelKind::Submatrix) {
                return Err(Error::InvalidParams(format!("{} does not apply to submatrix", algorithm.as_str())));
            }
            let target = bicluster_to_matrix(truth);
            let judge = |out: &mut SolveOutcome, est: BiClusterAssignment| {
                out.success = bicluster_to_matrix(&est) == target;
                if !out.success {
                    out.failure = Some(FailureKind::WrongAnswer);
                }
                out.estimate = Estimate::Bicluster(est);
            };
            match algorithm {
                Algorithm::Mle => {
                    let res = mle_submatrix(matrix, params)?;
                    out.objective = Some(res.objective);
                    judge(&mut out, res.best);
                    if !res.unique {
                        fail(&mut out, FailureKind::Tie);
                    }
                }
                Algorithm::Cvx => match solve_submatrix(matrix, params, &settings.solver_opts) {
                    Ok(sol) => {
                        out.objective = Some(sol.objective);
                        out.iterations = Some(sol.iterations);
                        let (rounded, _) =
                            round_and_certify_bicluster(&sol.y_hat, truth, settings.solver_opts.round_threshold);
                        match rounded {
                            Rounded::Assignment(a) => judge(&mut out, a),
                            Rounded::Unroundable => fail(&mut out, FailureKind::Unroundable),
                        }
                        if !sol.converged {
                            fail(&mut out, FailureKind::NonConverged);
                        }
                    }
                    Err(Error::Decomposition(_)) => fail(&mut out, FailureKind::SolverError),
                    Err(e) => return Err(e),
                },
                Algorithm::Thresholding => match submatrix_thresholding(matrix, params)? {
                    Recovery::Recovered(a) => judge(&mut out, a),
                    Recovery::Inconsistent => fail(&mut out, FailureKind::Inconsistent),
                },
                Algorithm::Element => {
                    let y = elementwise_thresholding(matrix, params.mu())?;
                    out.success = y == target;
                    if !out.success {
                        out.failure = Some(FailureKind::WrongAnswer);
                    }
                    out.estimate = Estimate::Matrix(y);
                }
                Algorithm::Counting => unreachable!("rejected above"),
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: Seed,
    pub success: bool,
    /// Zero unless timing was requested.
    pub wall_ms: f64,
    pub failure: Option<FailureKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: TrialConfig,
    pub trials: Vec<TrialRecord>,
    pub successes: usize,
    pub success_rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

impl ExperimentReport {
    pub fn failures(&self, kind: FailureKind) -> usize {
        self.trials.iter().filter(|t| t.failure == Some(kind)).count()
    }

    pub fn max_wall_ms(&self) -> f64 {
        self.trials.iter().map(|t| t.wall_ms).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Wilson score interval for `successes` out of `trials` at `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Worker count: the value of `PLANTED_BENCH_THREADS` if set and positive,
/// otherwise the available parallelism.
pub fn worker_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) if cap > 0 => cap,
        _ => available,
    }
}

pub(crate) fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Runs `cfg.trials` independent trials. Trial `t` uses the seed
/// `master_seed.derive(t)`; records are ordered by trial index whatever the
/// execution order.
pub fn run_trials(cfg: &TrialConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    with_pool(|| run_trials_in_pool(cfg))?
}

pub(crate) fn run_trials_in_pool(cfg: &TrialConfig) -> Result<ExperimentReport> {
    let settings = SolveSettings {
        solver_opts: cfg.solver_opts,
        flip_if_needed: cfg.flip_if_needed,
        use_non_neighbors: cfg.use_non_neighbors,
    };
    let records: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| -> Result<TrialRecord> {
            let seed = cfg.master_seed.derive(t as u64);
            let start = Instant::now();
            let instance = sample_instance(&cfg.params, seed)?;
            let outcome = solve_instance(&instance, cfg.algorithm, &settings)?;
            let wall_ms = if cfg.record_timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            Ok(TrialRecord { index: t, seed, success: outcome.success, wall_ms, failure: outcome.failure })
        })
        .collect::<Result<_>>()?;
    let successes = records.iter().filter(|r| r.success).count();
    let (wilson_lo, wilson_hi) = wilson_interval(successes, cfg.trials, WILSON_Z);
    Ok(ExperimentReport {
        config: cfg.clone(),
        successes,
        success_rate: successes as f64 / cfg.trials as f64,
        wilson_lo,
        wilson_hi,
        trials: records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Noise;

    #[test]
    fn wilson_reference_values() {
        // Closed form at phat = 1/2: center 1/2, half-width z sqrt(n/4 + z^2/4) / (n + z^2).
        let (lo, hi) = wilson_interval(10, 20, WILSON_Z);
        let z = WILSON_Z;
        let half = z * (20.0f64 / 4.0 + z * z / 4.0).sqrt() / (20.0 + z * z);
        assert!((lo - (0.5 - half)).abs() < 1e-15 && (hi - (0.5 + half)).abs() < 1e-15);
        let (lo, hi) = wilson_interval(0, 10, WILSON_Z);
        assert_eq!(lo, 0.0);
        assert!((hi - z * z / (10.0 + z * z)).abs() < 1e-15);
        let (lo, hi) = wilson_interval(10, 10, WILSON_Z);
        assert!((lo - 10.0 / (10.0 + z * z)).abs() < 1e-15);
        assert!((hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn noiseless_element_always_succeeds() {
        let s = SubmatrixParams::square(30, 5, 2, 0.3, Noise::None).unwrap();
        let report = run_trials(&TrialConfig::new(ModelParams::Submatrix(s), Algorithm::Element, 10, 1)).unwrap();
        assert_eq!(report.success_rate, 1.0);
    }

    #[test]
    fn rejects_mismatched_algorithm_and_oversize_mle() {
        let p = PlantedParams::new(40, 2, 10, 0.5, 0.1).unwrap();
        let cfg = TrialConfig::new(ModelParams::Clustering(p), Algorithm::Element, 3, 1);
        assert!(run_trials(&cfg).is_err());
        let cfg = TrialConfig::new(ModelParams::Clustering(p), Algorithm::Mle, 3, 1);
        assert!(matches!(run_trials(&cfg), Err(Error::BudgetExceeded { .. })));
    }
}
