//! Seeded Monte Carlo experiments, phase sweeps and the command line.

pub mod cli;
pub mod sweep;
pub mod trials;

pub use sweep::{run_sweep, sweep_rows, write_sweep_csv, ClusterMap, SweepCell, SweepConfig, SweepRow, CSV_COLUMNS};
pub use trials::{
    run_trials, sample_instance, solve_instance, wilson_interval, worker_count, Algorithm, Estimate,
    ExperimentReport, FailureKind, Instance, ModelKind, ModelParams, SolveOutcome, SolveSettings, TrialConfig,
    TrialRecord, THREADS_ENV, WILSON_Z,
};
