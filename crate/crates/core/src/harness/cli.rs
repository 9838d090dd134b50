//! Command-line front end: `gen`, `solve`, `sweep` and `regime`.
//!
//! Exit codes: 0 on success, 1 on a usage error, 2 on a runtime failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::sweep::{run_sweep, SweepConfig};
use super::trials::{sample_instance, solve_instance, Algorithm, Instance, ModelParams, SolveSettings};
use crate::error::{Error, Result};
use crate::generate::{preset_params, ModelPreset};
use crate::io::{write_edge_list, write_matrix_csv};
use crate::model::{Noise, PlantedParams, SubmatrixParams};
use crate::regimes::{
    asymptotic_regime_clustering, asymptotic_regime_submatrix, check_submatrix_conditions, clustering_report,
    ConditionConstants,
};
use crate::sdp::SolverOptions;
use crate::seed::Seed;

#[derive(Parser, Debug)]
#[command(name = "planted", version, about = "Planted clustering and submatrix localization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample an instance and write it to a directory.
    Gen {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Print a JSON summary to stdout.
        #[arg(long)]
        json: bool,
    },
    /// Run one algorithm on one instance and print a JSON result.
    Solve {
        #[arg(long = "alg", value_enum)]
        algorithm: AlgArg,
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Read `instance.json` from a directory written by `gen` instead of sampling.
        #[arg(long)]
        instance_dir: Option<PathBuf>,
        /// Solver options as JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        non_neighbors: bool,
        #[arg(long)]
        no_flip: bool,
        /// Print the full estimate, not just the outcome.
        #[arg(long)]
        json: bool,
    },
    /// Run a phase sweep from a JSON configuration and write a CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the configuration's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also print the rows as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Classify an asymptotic point or evaluate the recovery conditions at finite size.
    Regime {
        #[arg(long, value_enum, default_value_t = ModelArg::Clustering)]
        model: ModelArg,
        #[arg(long, requires = "beta")]
        alpha: Option<f64>,
        #[arg(long, requires = "alpha")]
        beta: Option<f64>,
        #[command(flatten)]
        params: ParamArgs,
        /// Condition constants as JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Clustering,
    Submatrix,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AlgArg {
    Mle,
    Cvx,
    Counting,
    Thresholding,
    Element,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Mle => Algorithm::Mle,
            AlgArg::Cvx => Algorithm::Cvx,
            AlgArg::Counting => Algorithm::Counting,
            AlgArg::Thresholding => Algorithm::Thresholding,
            AlgArg::Element => Algorithm::Element,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    Clique,
    Densest,
    Partition,
    Coloring,
    Custom,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum NoiseArg {
    Gaussian,
    Rademacher,
    None,
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long = "k")]
    k: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Column count for rectangular submatrix instances (default: n).
    #[arg(long)]
    n_right: Option<usize>,
    /// Column block size (default: k).
    #[arg(long)]
    k_right: Option<usize>,
    #[arg(long, value_enum)]
    noise: Option<NoiseArg>,
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Clustering)]
    model: ModelArg,
    #[command(flatten)]
    params: ParamArgs,
}

fn missing(name: &str) -> Error {
    Error::InvalidParams(format!("--{name} is required"))
}

impl ParamArgs {
    fn clustering(&self) -> Result<PlantedParams> {
        let n = self.n.ok_or_else(|| missing("n"))?;
        let r = self.r.unwrap_or(1);
        let k = self.k.ok_or_else(|| missing("k"))?;
        let q = self.q.ok_or_else(|| missing("q"))?;
        let kind = match self.preset.unwrap_or(PresetArg::Custom) {
            PresetArg::Clique => ModelPreset::RDisjointClique,
            PresetArg::Densest => ModelPreset::PlantedDensestSubgraph,
            PresetArg::Partition => ModelPreset::PlantedPartition,
            PresetArg::Coloring => ModelPreset::PlantedColoring,
            PresetArg::Custom => ModelPreset::Custom,
        };
        preset_params(kind, n, r, k, self.p, q)
    }

    fn submatrix(&self) -> Result<SubmatrixParams> {
        let n = self.n.ok_or_else(|| missing("n"))?;
        let k = self.k.ok_or_else(|| missing("k"))?;
        let mu = self.mu.ok_or_else(|| missing("mu"))?;
        let noise = match self.noise.unwrap_or(NoiseArg::Gaussian) {
            NoiseArg::Gaussian => Noise::Gaussian,
            NoiseArg::Rademacher => Noise::Rademacher,
            NoiseArg::None => Noise::None,
        };
        SubmatrixParams::new(n, self.n_right.unwrap_or(n), k, self.k_right.unwrap_or(k), self.r.unwrap_or(1), mu, noise)
    }

    fn model_params(&self, model: ModelArg) -> Result<ModelParams> {
        Ok(match model {
            ModelArg::Clustering => ModelParams::Clustering(self.clustering()?),
            ModelArg::Submatrix => ModelParams::Submatrix(self.submatrix()?),
        })
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn write_instance(instance: &Instance, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("instance.json"), serde_json::to_string(instance)?)?;
    match instance {
        Instance::Clustering { params, truth, graph } => {
            fs::write(dir.join("params.json"), serde_json::to_string_pretty(params)?)?;
            fs::write(dir.join("truth.json"), serde_json::to_string_pretty(truth)?)?;
            write_edge_list(graph, fs::File::create(dir.join("graph.edges"))?)?;
        }
        Instance::Submatrix { params, truth, matrix } => {
            fs::write(dir.join("params.json"), serde_json::to_string_pretty(params)?)?;
            fs::write(dir.join("truth.json"), serde_json::to_string_pretty(truth)?)?;
            write_matrix_csv(matrix, fs::File::create(dir.join("matrix.csv"))?)?;
        }
    }
    Ok(())
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Gen { instance, seed, out, json } => {
            let params = instance.params.model_params(instance.model)?;
            let inst = sample_instance(&params, Seed::new(seed))?;
            write_instance(&inst, &out)?;
            if json {
                let summary = serde_json::json!({ "params": params, "seed": seed, "out": out });
                writeln!(stdout, "{}", serde_json::to_string_pretty(&summary)?)?;
            } else {
                writeln!(stdout, "wrote {}", out.display())?;
            }
        }
        Command::Solve { algorithm, instance, seed, instance_dir, config, non_neighbors, no_flip, json } => {
            let inst = match instance_dir {
                Some(dir) => read_json::<Instance>(&dir.join("instance.json"))?,
                None => sample_instance(&instance.params.model_params(instance.model)?, Seed::new(seed))?,
            };
            let solver_opts = match config {
                Some(path) => read_json::<SolverOptions>(&path)?,
                None => SolverOptions::default(),
            };
            solver_opts.validate()?;
            let settings = SolveSettings { solver_opts, flip_if_needed: !no_flip, use_non_neighbors: non_neighbors };
            let mut outcome = solve_instance(&inst, algorithm.into(), &settings)?;
            if !json {
                outcome.estimate = super::trials::Estimate::None;
            }
            writeln!(stdout, "{}", serde_json::to_string_pretty(&outcome)?)?;
        }
        Command::Sweep { config, out, seed, json } => {
            let mut cfg = SweepConfig::from_json(&fs::read_to_string(&config)?)?;
            if let Some(s) = seed {
                cfg.master_seed = Seed::new(s);
            }
            let rows = run_sweep(&cfg, &out)?;
            if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                writeln!(stdout, "wrote {} rows to {}", rows.len(), out.display())?;
            }
        }
        Command::Regime { model, alpha, beta, params, config, json } => {
            if let (Some(alpha), Some(beta)) = (alpha, beta) {
                let label = match model {
                    ModelArg::Clustering => asymptotic_regime_clustering(alpha, beta)?,
                    ModelArg::Submatrix => asymptotic_regime_submatrix(alpha, beta)?,
                };
                if json {
                    writeln!(stdout, "{}", serde_json::to_string(&label)?)?;
                } else {
                    writeln!(stdout, "{}", label.as_str())?;
                }
                return Ok(());
            }
            let consts = match config {
                Some(path) => read_json::<ConditionConstants>(&path)?,
                None => ConditionConstants::default(),
            };
            consts.validate()?;
            let report = match params.model_params(model)? {
                ModelParams::Clustering(p) => {
                    let p = if p.p() < p.q() { p.flipped() } else { p };
                    clustering_report(&p, &consts)?
                }
                ModelParams::Submatrix(s) => check_submatrix_conditions(&s, &consts)?,
            };
            if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(stdout, "{report}")?;
            }
        }
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Output goes to `stdout`; diagnostics to stderr.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock())
}
