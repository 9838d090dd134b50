//! First-order solver for `max <A, Y>` over
//! `S = {||Y||_* <= radius} ∩ {0 <= Y <= 1, sum Y = total}`.
//!
//! Projected gradient ascent `Y <- P_S(Y + eta A)`. The projection onto `S`
//! is computed by Dykstra's alternating projections between the trace ball
//! `T` and the box-sum set `B`. Dykstra is block coordinate descent on the
//! dual of the projection problem, so its correction term can be carried
//! over from one outer iteration to the next as a warm start.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::projection::{box_sum_in_place, nuclear_norm, project_trace_ball};
use crate::error::{Error, Result};
use crate::model::RealMatrix;

/// Gradient step: `Auto` uses `radius / ||A||_F`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum StepSize {
    #[default]
    Auto,
    Fixed(f64),
}

impl Serialize for StepSize {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            StepSize::Auto => s.serialize_str("auto"),
            StepSize::Fixed(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for StepSize {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = StepSize;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"auto\" or a positive number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<StepSize, E> {
                match v {
                    "auto" => Ok(StepSize::Auto),
                    _ => Err(E::custom(format!("unknown step size {v:?}"))),
                }
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<StepSize, E> {
                Ok(StepSize::Fixed(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<StepSize, E> {
                Ok(StepSize::Fixed(v as f64))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<StepSize, E> {
                Ok(StepSize::Fixed(v as f64))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    pub max_iters: usize,
    pub step_size: StepSize,
    pub tol_feas: f64,
    /// Relative objective change below which the ascent may stop.
    pub tol_obj: f64,
    /// Relative primal and dual residual below which the single-sweep
    /// iteration may stop.
    pub tol_residual: f64,
    pub dykstra_inner_iters: usize,
    pub round_threshold: f64,
    /// Run Dykstra to convergence at every ascent step. When false (the
    /// default) each step makes a single warm-started Dykstra sweep and the
    /// step size is rebalanced from the residuals.
    pub exact_projection: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            step_size: StepSize::Auto,
            tol_feas: 1e-6,
            tol_obj: 1e-7,
            tol_residual: 1e-4,
            dykstra_inner_iters: 50,
            round_threshold: 0.5,
            exact_projection: false,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.max_iters == 0 || self.dykstra_inner_iters == 0 {
            return bad("max_iters and dykstra_inner_iters must be positive".into());
        }
        if let StepSize::Fixed(s) = self.step_size {
            if !(s > 0.0 && s.is_finite()) {
                return bad(format!("step size {s} must be positive"));
            }
        }
        if !(self.tol_feas >= 0.0 && self.tol_obj >= 0.0 && self.tol_residual >= 0.0) {
            return bad("tolerances must be nonnegative".into());
        }
        if !(self.round_threshold > 0.0 && self.round_threshold < 1.0) {
            return bad(format!("round_threshold = {} must lie in (0, 1)", self.round_threshold));
        }
        Ok(())
    }
}

/// Output of [`solve_convex`]. `objective` and `feasibility_gap` are
/// evaluated directly on `y_hat`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexSolution {
    pub y_hat: RealMatrix,
    pub objective: f64,
    /// Largest of: box violation, relative sum error, relative trace-norm excess.
    pub feasibility_gap: f64,
    pub iterations: usize,
    /// Objective after each ascent step.
    pub history: Vec<f64>,
    /// True when the stopping rule fired before `max_iters` and the final
    /// point is feasible within `tol_feas`.
    pub converged: bool,
}

/// Feasibility gap of `y` for the relaxation with the given radius and total.
pub fn feasibility_gap(y: &RealMatrix, radius: f64, total: f64) -> Result<f64> {
    let box_violation = y.as_slice().iter().fold(0.0f64, |acc, &v| acc.max(-v).max(v - 1.0));
    let sum_error = (y.sum() - total).abs() / total;
    let trace_excess = (nuclear_norm(y)? - radius).max(0.0) / radius;
    Ok(box_violation.max(sum_error).max(trace_excess))
}

/// Over-relaxation factor of the single-sweep iteration.
const RELAXATION: f64 = 1.6;

struct Dykstra {
    radius: f64,
    total: f64,
    /// Correction for the box-sum block, persisted across ascent steps.
    w: Vec<f64>,
    lambda: Option<f64>,
    shape: (usize, usize),
}

struct Sweep {
    /// Trace-ball iterate.
    y: Vec<f64>,
    /// Box-sum iterate.
    x: Vec<f64>,
}

impl Dykstra {
    /// One sweep. With `relax = Some((x_prev, alpha))` the trace-ball
    /// iterate is replaced by `alpha y + (1 - alpha) x_prev` before the
    /// box-sum step.
    fn sweep(&mut self, z: &[f64], relax: Option<(&[f64], f64)>) -> Result<Sweep> {
        let (rows, cols) = self.shape;
        let shifted: Vec<f64> = z.iter().zip(&self.w).map(|(a, b)| a - b).collect();
        let y = project_trace_ball(&RealMatrix::from_vec_unchecked(rows, cols, shifted), self.radius)?.into_vec();
        let mixed: Vec<f64> = match relax {
            Some((prev, alpha)) => y.iter().zip(prev).map(|(a, b)| alpha * a + (1.0 - alpha) * b).collect(),
            None => y.clone(),
        };
        let mut x: Vec<f64> = mixed.iter().zip(&self.w).map(|(a, b)| a + b).collect();
        self.lambda = Some(box_sum_in_place(&mut x, self.total, self.lambda));
        for ((w, &yi), &xi) in self.w.iter_mut().zip(&mixed).zip(&x) {
            *w += yi - xi;
        }
        Ok(Sweep { y, x })
    }

    /// Up to `iters` sweeps towards `P_S(z)`; stops once the two blocks agree
    /// within `tol` relative to the iterate.
    fn project(&mut self, z: &[f64], iters: usize, tol: f64) -> Result<Vec<f64>> {
        let mut last = Vec::new();
        for _ in 0..iters {
            let Sweep { y, x } = self.sweep(z, None)?;
            let agree = norm_diff(&x, &y) <= tol * norm(&x).max(f64::MIN_POSITIVE);
            last = x;
            if agree {
                break;
            }
        }
        Ok(last)
    }

    fn rescale(&mut self, factor: f64) {
        self.w.iter_mut().for_each(|w| *w *= factor);
    }
}

/// Maximizes `<A, Y>` over the trace ball of `radius` intersected with the
/// box `[0, 1]` and the hyperplane `sum Y = total`.
///
/// Each ascent step forms `Z = Y + eta A` and projects it with Dykstra's
/// alternation, warm-started from the previous correction. With
/// `exact_projection` the projection runs to `tol_feas` and the objective is
/// nondecreasing. Otherwise one sweep is made per step; the iteration is then
/// the alternating direction method of multipliers with penalty `1/eta`, and
/// stops when the primal residual `||Y_T - Y_B||`, the dual residual
/// `||Y_B - Y_B'|| / eta` and the relative objective change are all small.
/// A run that hits `max_iters` returns its last iterate with
/// `converged = false`.
pub fn solve_convex(a: &RealMatrix, radius: f64, total: f64, opts: &SolverOptions) -> Result<ConvexSolution> {
    opts.validate()?;
    let (rows, cols) = a.shape();
    let entries = (rows * cols) as f64;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParams(format!("radius = {radius} must be positive")));
    }
    if !(total > 0.0 && total < entries) {
        return Err(Error::InvalidParams(format!(
            "total = {total} must lie strictly between 0 and the entry count {entries}"
        )));
    }
    let a_norm = a.frobenius_norm();
    let mut eta = match opts.step_size {
        StepSize::Fixed(s) => s,
        StepSize::Auto if a_norm > 0.0 => radius / a_norm,
        StepSize::Auto => 1.0,
    };
    let adaptive = !opts.exact_projection && opts.step_size == StepSize::Auto;

    let mut dykstra = Dykstra { radius, total, w: vec![0.0; rows * cols], lambda: None, shape: (rows, cols) };
    let flat = vec![total / entries; rows * cols];
    let mut y = dykstra.project(&flat, opts.dykstra_inner_iters, opts.tol_feas)?;
    dykstra.w.iter_mut().for_each(|w| *w = 0.0);
    let mut objective = dot(a.as_slice(), &y);
    let mut iterations = 0;
    let mut settled = false;
    let mut last_z = flat;
    let mut history = Vec::new();
    while iterations < opts.max_iters {
        iterations += 1;
        let z: Vec<f64> = y.iter().zip(a.as_slice()).map(|(yi, ai)| yi + eta * ai).collect();
        let (next, primal, primal_scale) = if opts.exact_projection {
            let x = dykstra.project(&z, opts.dykstra_inner_iters, opts.tol_feas)?;
            (x, 0.0, 1.0)
        } else {
            let Sweep { y: yt, x } = dykstra.sweep(&z, Some((&y, RELAXATION)))?;
            let primal = norm_diff(&yt, &x);
            let scale = norm(&yt).max(norm(&x)).max(f64::MIN_POSITIVE);
            (x, primal, scale)
        };
        let dual = norm_diff(&next, &y) / eta;
        let dual_scale = (norm(&dykstra.w) / eta).max(f64::MIN_POSITIVE);
        let next_objective = dot(a.as_slice(), &next);
        let change = (next_objective - objective).abs();
        y = next;
        objective = next_objective;
        history.push(objective);
        last_z = z;
        let small_change = change <= opts.tol_obj * objective.abs().max(1.0);
        let residuals_ok = if opts.exact_projection {
            true
        } else {
            primal <= opts.tol_residual * primal_scale && dual <= opts.tol_residual * dual_scale
        };
        if small_change && residuals_ok {
            settled = true;
            break;
        }
        if adaptive && iterations % 10 == 0 {
            let (rp, rd) = (primal / primal_scale, dual / dual_scale);
            if rp > 10.0 * rd {
                // Larger penalty: smaller step.
                eta /= 2.0;
                dykstra.rescale(0.5);
            } else if rd > 10.0 * rp {
                eta *= 2.0;
                dykstra.rescale(2.0);
            }
        }
    }

    if !opts.exact_projection {
        restore_trace(&mut y, radius, total, (rows, cols))?;
    }
    let mut y_hat = RealMatrix::from_vec_unchecked(rows, cols, y);
    let mut gap = feasibility_gap(&y_hat, radius, total)?;
    let mut polish = 0;
    while gap > opts.tol_feas && polish < 10 && opts.exact_projection {
        polish += 1;
        let x = dykstra.project(&last_z, opts.dykstra_inner_iters, opts.tol_feas * 1e-2)?;
        y_hat = RealMatrix::from_vec_unchecked(rows, cols, x);
        gap = feasibility_gap(&y_hat, radius, total)?;
    }
    Ok(ConvexSolution {
        objective: a.dot(&y_hat),
        y_hat,
        feasibility_gap: gap,
        iterations,
        history,
        converged: settled && gap <= opts.tol_feas,
    })
}

/// Pulls a box-sum feasible point inside the trace ball by mixing it with
/// the flat point `total / N`, which lies in the box, on the hyperplane and
/// strictly inside the ball whenever some hypothesis is feasible.
fn restore_trace(x: &mut [f64], radius: f64, total: f64, shape: (usize, usize)) -> Result<()> {
    let current = nuclear_norm(&RealMatrix::from_vec_unchecked(shape.0, shape.1, x.to_vec()))?;
    let flat_value = total / (shape.0 * shape.1) as f64;
    let flat_norm = flat_value * ((shape.0 * shape.1) as f64).sqrt();
    if current <= radius || flat_norm >= radius {
        return Ok(());
    }
    let theta = ((current - radius) / (current - flat_norm)).min(1.0);
    x.iter_mut().for_each(|v| *v = (1.0 - theta) * *v + theta * flat_value);
    Ok(())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
