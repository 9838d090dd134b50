//! Finite-n calculators for the recovery and failure conditions of both
//! models. Each check evaluates the stated inequalities with the constants in
//! [`ConditionConstants`] and reports every side: left value, right value,
//! orientation and outcome. Logarithms are natural.
//!
//! Explicit numeric factors of the bounds (`1/192`, `1/193`, `1/12`, `4`) are
//! part of each formula; the configurable constants multiply the right-hand
//! side on top of them, so the defaults reproduce the bounds exactly as
//! stated.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::asymptotic::RegimeLabel;
use super::kl::{bernoulli_kl, Extended};
use crate::error::{Error, Result};
use crate::model::{Noise, PlantedParams, SubmatrixParams};

/// Multipliers for the unspecified universal constants. All default to 1
/// except `eps0`, the margin in the `p <= 1 - eps0` side condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConditionConstants {
    pub c_impossible: f64,
    pub c_mle: f64,
    pub c_mle_corollary: f64,
    pub c_cvx: f64,
    pub c_cvx_converse: f64,
    pub c_cvx_converse_side: f64,
    pub c_simple1: f64,
    pub c_simple2: f64,
    pub c_simple_converse: f64,
    pub c_simple_converse_side: f64,
    pub eps0: f64,
    pub c_sub_impossible: f64,
    pub c_sub_mle: f64,
    pub c_sub_cvx: f64,
    pub c_sub_cvx_converse: f64,
    pub c_sub_cvx_converse_side: f64,
    pub c_sub_simple1: f64,
    pub c_sub_simple2: f64,
    pub c_sub_simple_converse1: f64,
    pub c_sub_simple_converse2: f64,
    pub c_element: f64,
}

impl Default for ConditionConstants {
    fn default() -> Self {
        Self {
            c_impossible: 1.0,
            c_mle: 1.0,
            c_mle_corollary: 1.0,
            c_cvx: 1.0,
            c_cvx_converse: 1.0,
            c_cvx_converse_side: 1.0,
            c_simple1: 1.0,
            c_simple2: 1.0,
            c_simple_converse: 1.0,
            c_simple_converse_side: 1.0,
            eps0: 0.05,
            c_sub_impossible: 1.0,
            c_sub_mle: 1.0,
            c_sub_cvx: 1.0,
            c_sub_cvx_converse: 1.0,
            c_sub_cvx_converse_side: 1.0,
            c_sub_simple1: 1.0,
            c_sub_simple2: 1.0,
            c_sub_simple_converse1: 1.0,
            c_sub_simple_converse2: 1.0,
            c_element: 1.0,
        }
    }
}

impl ConditionConstants {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.c_impossible,
            self.c_mle,
            self.c_mle_corollary,
            self.c_cvx,
            self.c_cvx_converse,
            self.c_cvx_converse_side,
            self.c_simple1,
            self.c_simple2,
            self.c_simple_converse,
            self.c_simple_converse_side,
            self.eps0,
            self.c_sub_impossible,
            self.c_sub_mle,
            self.c_sub_cvx,
            self.c_sub_cvx_converse,
            self.c_sub_cvx_converse_side,
            self.c_sub_simple1,
            self.c_sub_simple2,
            self.c_sub_simple_converse1,
            self.c_sub_simple_converse2,
            self.c_element,
        ];
        if all.iter().any(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(Error::InvalidParams("condition constants must be positive and finite".into()));
        }
        if self.eps0 >= 1.0 {
            return Err(Error::InvalidParams(format!("eps0 = {} must lie in (0, 1)", self.eps0)));
        }
        Ok(())
    }
}

/// How a row's left value is compared with its right value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    AtMost,
    Below,
    AtLeast,
    Above,
}

impl Orientation {
    fn holds(self, lhs: Extended, rhs: Extended) -> bool {
        match self {
            Orientation::AtMost => lhs <= rhs,
            Orientation::Below => lhs < rhs,
            Orientation::AtLeast => lhs >= rhs,
            Orientation::Above => lhs > rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Orientation::AtMost => "<=",
            Orientation::Below => "<",
            Orientation::AtLeast => ">=",
            Orientation::Above => ">",
        }
    }
}

/// Whether a row decides the report's conclusion, restates it in simplified
/// form, or is a technical side assumption of the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Main,
    Simplified,
    Side,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionRow {
    pub name: String,
    pub role: Role,
    pub lhs: Extended,
    pub orientation: Orientation,
    pub rhs: Extended,
    pub satisfied: bool,
}

fn row(name: &str, role: Role, lhs: Extended, orientation: Orientation, rhs: f64) -> ConditionRow {
    let rhs = Extended::from_f64(rhs);
    ConditionRow {
        name: name.to_string(),
        role,
        lhs,
        orientation,
        rhs,
        satisfied: orientation.holds(lhs, rhs),
    }
}

fn finite(v: f64) -> Extended {
    Extended::from_f64(v)
}

/// Outcome of one check. `holds` is the conclusion computed from the main
/// rows (the result's own combination rule, e.g. "either" or "both"); side
/// assumptions are evaluated and reported but do not gate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub title: String,
    pub rows: Vec<ConditionRow>,
    pub holds: bool,
    pub side_conditions_hold: bool,
    pub suggested_regime: Option<RegimeLabel>,
}

impl ConditionReport {
    fn new(title: &str, rows: Vec<ConditionRow>, holds: bool) -> Self {
        let side_conditions_hold = rows.iter().filter(|r| r.role == Role::Side).all(|r| r.satisfied);
        Self { title: title.to_string(), rows, holds, side_conditions_hold, suggested_regime: None }
    }

    pub fn row(&self, name: &str) -> Option<&ConditionRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.rows {
            let role = match r.role {
                Role::Main => "main",
                Role::Simplified => "simpl",
                Role::Side => "side",
            };
            writeln!(
                f,
                "  {:<width$}  {:<5}  {:>14} {:>2} {:<14}  {}",
                r.name,
                role,
                r.lhs.to_string(),
                r.orientation.symbol(),
                r.rhs.to_string(),
                if r.satisfied { "yes" } else { "no" },
            )?;
        }
        write!(f, "  holds: {}", self.holds)?;
        if !self.side_conditions_hold {
            write!(f, " (side assumptions not met)")?;
        }
        if let Some(label) = self.suggested_regime {
            write!(f, "\n  suggested regime: {label}")?;
        }
        Ok(())
    }
}

fn ln(x: f64) -> f64 {
    x.ln()
}

fn require_p_above_q(params: &PlantedParams) -> Result<()> {
    if params.p() > params.q() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "conditions assume p > q (got p = {}, q = {}); flip the graph first",
            params.p(),
            params.q()
        )))
    }
}

struct Cl {
    n: f64,
    r: f64,
    k: f64,
    p: f64,
    q: f64,
}

impl Cl {
    fn new(params: &PlantedParams) -> Self {
        Self {
            n: params.n() as f64,
            r: params.r() as f64,
            k: params.k() as f64,
            p: params.p(),
            q: params.q(),
        }
    }
}

/// Sufficient conditions for information-theoretic impossibility: either
/// `K D(q||p) <= (1/192) min(ln rK, K)` or `K D(p||q) <= (1/192) ln n`.
pub fn check_impossible_clustering(
    params: &PlantedParams,
    consts: &ConditionConstants,
) -> Result<ConditionReport> {
    require_p_above_q(params)?;
    consts.validate()?;
    let Cl { n, r, k, p, q } = Cl::new(params);
    let c = consts.c_impossible;
    let d_qp = bernoulli_kl(q, p)?.scale(k);
    let d_pq = bernoulli_kl(p, q)?.scale(k);
    let log_rk_or_k = ln(r * k).min(k);
    let kp_log = if q == 0.0 { Extended::Infinite } else { finite(k * p * ln(p / q)) };
    let rows = vec![
        row("K*D(q||p)", Role::Main, d_qp, Orientation::AtMost, c / 192.0 * log_rk_or_k),
        row("K*D(p||q)", Role::Main, d_pq, Orientation::AtMost, c / 192.0 * ln(n)),
        row("K(p-q)^2", Role::Simplified, finite(k * (p - q).powi(2)), Orientation::AtMost, c / 192.0 * q * (1.0 - q) * ln(n)),
        row("Kp", Role::Simplified, finite(k * p), Orientation::AtMost, c / 193.0 * log_rk_or_k),
        row("Kp*ln(p/q)", Role::Simplified, kp_log, Orientation::AtMost, c / 192.0 * ln(n)),
        row("K>=128", Role::Side, finite(k), Orientation::AtLeast, 128.0),
        row("K<=n/2", Role::Side, finite(k), Orientation::AtMost, n / 2.0),
    ];
    let holds = rows[0].satisfied || rows[1].satisfied;
    Ok(ConditionReport::new("impossible (clustering)", rows, holds))
}

/// Sufficient conditions for the combinatorial MLE: both
/// `K D(q||p) >= c ln(gamma rK)` and `K D(p||q) >= c ln n`.
pub fn check_mle_clustering(
    params: &PlantedParams,
    gamma: f64,
    consts: &ConditionConstants,
) -> Result<ConditionReport> {
    require_p_above_q(params)?;
    consts.validate()?;
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return Err(Error::InvalidParams(format!("gamma = {gamma} must be at least 1")));
    }
    let Cl { n, r, k, p, q } = Cl::new(params);
    let (c, c2) = (consts.c_mle, consts.c_mle_corollary);
    let kp_log = if q == 0.0 { Extended::Infinite } else { finite(k * p * ln(p / q)) };
    let rows = vec![
        row("K*D(q||p)", Role::Main, bernoulli_kl(q, p)?.scale(k), Orientation::AtLeast, c * ln(gamma * r * k)),
        row("K*D(p||q)", Role::Main, bernoulli_kl(p, q)?.scale(k), Orientation::AtLeast, c * ln(n)),
        row("K(p-q)^2", Role::Simplified, finite(k * (p - q).powi(2)), Orientation::AtLeast, c2 * q * (1.0 - q) * ln(n)),
        row("Kp", Role::Simplified, finite(k * p), Orientation::AtLeast, c2 * ln(gamma * r * k)),
        row("Kp*ln(p/q)", Role::Simplified, kp_log, Orientation::AtLeast, c2 * ln(n)),
    ];
    let holds = rows[0].satisfied && rows[1].satisfied;
    Ok(ConditionReport::new("mle succeeds (clustering)", rows, holds))
}

/// Sufficient condition for the convex relaxation:
/// `K^2 (p-q)^2 >= c [p(1-q) K ln n + q(1-q) n]`.
pub fn check_cvx_clustering(params: &PlantedParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    require_p_above_q(params)?;
    consts.validate()?;
    let Cl { n, k, p, q, .. } = Cl::new(params);
    let rhs = consts.c_cvx * (p * (1.0 - q) * k * ln(n) + q * (1.0 - q) * n);
    let rows = vec![row("K^2(p-q)^2", Role::Main, finite(k * k * (p - q).powi(2)), Orientation::AtLeast, rhs)];
    let holds = rows[0].satisfied;
    Ok(ConditionReport::new("convex relaxation succeeds (clustering)", rows, holds))
}

/// Failure condition for the convex relaxation:
/// `K^2 (p-q)^2 <= c (Kp + qn)`, under `c' ln n <= K <= n/2`,
/// `q >= c' ln n / n` and `p <= 1 - eps0`.
pub fn check_cvx_converse_clustering(
    params: &PlantedParams,
    consts: &ConditionConstants,
) -> Result<ConditionReport> {
    require_p_above_q(params)?;
    consts.validate()?;
    let Cl { n, k, p, q, .. } = Cl::new(params);
    let c1 = consts.c_cvx_converse_side;
    let rows = vec![
        row("K^2(p-q)^2", Role::Main, finite(k * k * (p - q).powi(2)), Orientation::AtMost, consts.c_cvx_converse * (k * p + q * n)),
        row("K>=c*ln(n)", Role::Side, finite(k), Orientation::AtLeast, c1 * ln(n)),
        row("K<=n/2", Role::Side, finite(k), Orientation::AtMost, n / 2.0),
        row("q>=c*ln(n)/n", Role::Side, finite(q), Orientation::AtLeast, c1 * ln(n) / n),
        row("p<=1-eps0", Role::Side, finite(p), Orientation::AtMost, 1.0 - consts.eps0),
    ];
    let holds = rows[0].satisfied;
    Ok(ConditionReport::new("convex relaxation fails (clustering)", rows, holds))
}

/// Sufficient conditions for the counting algorithm. The degree condition
/// `K^2 (p-q)^2 >= c1 [Kp(1-q) + nq(1-q)] ln n` covers isolated-node
/// detection; for `r > 1` cluster separation also needs
/// `K^2 (p-q)^4 >= c2 [Kp^2(1-q^2) + nq^2(1-q^2)] ln n`, evaluated at
/// `(1-p, 1-q)` when counting common non-neighbors.
pub fn check_simple_clustering(
    params: &PlantedParams,
    consts: &ConditionConstants,
    use_non_neighbors: bool,
) -> Result<ConditionReport> {
    require_p_above_q(params)?;
    consts.validate()?;
    let Cl { n, r, k, p, q } = Cl::new(params);
    let (ps, qs) = if use_non_neighbors { (1.0 - p, 1.0 - q) } else { (p, q) };
    let degree_rhs = consts.c_simple1 * (k * p * (1.0 - q) + n * q * (1.0 - q)) * ln(n);
    let common_rhs =
        consts.c_simple2 * (k * ps * ps * (1.0 - qs * qs) + n * qs * qs * (1.0 - qs * qs)) * ln(n);
    let rows = vec![
        row("K^2(p-q)^2", Role::Main, finite(k * k * (p - q).powi(2)), Orientation::AtLeast, degree_rhs),
        row("K^2(p-q)^4", Role::Main, finite(k * k * (p - q).powi(4)), Orientation::AtLeast, common_rhs),
    ];
    let holds = rows[0].satisfied && (r == 1.0 || rows[1].satisfied);
    let title = if use_non_neighbors {
        "counting succeeds, non-neighbor variant (clustering)"
    } else {
        "counting succeeds (clustering)"
    };
    Ok(ConditionReport::new(title, rows, holds))
}

/// Failure conditions for the counting algorithm:
/// `K^2 (p-q)^2 < c [(Kp + nq) ln(rK) + nq ln(n - rK)]` (isolated nodes) or,
/// for `r > 1`, `K^2 (p-q)^4 < c (Kp^2 + nq^2) ln(rK)` (clusters). With no
/// isolated nodes `ln(n - rK)` is taken as `ln 1 = 0`.
pub fn check_simple_converse_clustering(
    params: &PlantedParams,
    consts: &ConditionConstants,
) -> Result<ConditionReport> {
    require_p_above_q(params)?;
    consts.validate()?;
    let Cl { n, r, k, p, q } = Cl::new(params);
    let (c, c1) = (consts.c_simple_converse, consts.c_simple_converse_side);
    let isolated = (params.isolated() as f64).max(1.0);
    let degree_rhs = c * ((k * p + n * q) * ln(r * k) + n * q * ln(isolated));
    let common_rhs = c * (k * p * p + n * q * q) * ln(r * k);
    let rows = vec![
        row("K^2(p-q)^2", Role::Main, finite(k * k * (p - q).powi(2)), Orientation::Below, degree_rhs),
        row("K^2(p-q)^4", Role::Main, finite(k * k * (p - q).powi(4)), Orientation::Below, common_rhs),
        row("K<=n/2", Role::Side, finite(k), Orientation::AtMost, n / 2.0),
        row("p<=1-eps0", Role::Side, finite(p), Orientation::AtMost, 1.0 - consts.eps0),
        row("q>=c*ln(n)/n", Role::Side, finite(q), Orientation::AtLeast, c1 * ln(n) / n),
        row("Kp^2+nq^2", Role::Side, finite(k * p * p + n * q * q), Orientation::AtLeast, c1 * ln(n)),
    ];
    let holds = rows[0].satisfied || (r > 1.0 && rows[1].satisfied);
    Ok(ConditionReport::new("counting fails (clustering)", rows, holds))
}

/// All clustering checks, concatenated, with a suggested regime: the first
/// of impossible, simple, easy, hard whose conclusion holds, and `Boundary`
/// when none does (the order-wise conditions leave a gap at finite n).
pub fn clustering_report(params: &PlantedParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    let reports = [
        check_impossible_clustering(params, consts)?,
        check_mle_clustering(params, 1.0, consts)?,
        check_cvx_clustering(params, consts)?,
        check_cvx_converse_clustering(params, consts)?,
        check_simple_clustering(params, consts, false)?,
        check_simple_converse_clustering(params, consts)?,
    ];
    let label = if reports[0].holds {
        RegimeLabel::Impossible
    } else if reports[4].holds {
        RegimeLabel::Simple
    } else if reports[2].holds {
        RegimeLabel::Easy
    } else if reports[1].holds {
        RegimeLabel::Hard
    } else {
        RegimeLabel::Boundary
    };
    Ok(combine("clustering", &reports, label))
}

fn combine(title: &str, reports: &[ConditionReport], label: RegimeLabel) -> ConditionReport {
    let rows = reports
        .iter()
        .flat_map(|rep| {
            let prefix = rep.title.split(" (").next().unwrap_or(&rep.title).to_string();
            rep.rows.iter().map(move |r| ConditionRow { name: format!("{prefix}: {}", r.name), ..r.clone() })
        })
        .collect();
    let mut out = ConditionReport::new(title, rows, true);
    out.suggested_regime = Some(label);
    out
}

struct Sub {
    nl: f64,
    nr: f64,
    kl: f64,
    kr: f64,
    r: f64,
    mu2: f64,
    n: f64,
}

impl Sub {
    fn new(p: &SubmatrixParams) -> Self {
        Self {
            nl: p.n_left() as f64,
            nr: p.n_right() as f64,
            kl: p.k_left() as f64,
            kr: p.k_right() as f64,
            r: p.r() as f64,
            mu2: p.mu() * p.mu(),
            n: p.n() as f64,
        }
    }
}

fn gaussian_row(params: &SubmatrixParams) -> ConditionRow {
    let g = if params.noise() == Noise::Gaussian { 1.0 } else { 0.0 };
    row("gaussian noise", Role::Side, finite(g), Orientation::AtLeast, 1.0)
}

/// Impossibility: `mu^2 <= (1/12) max{ln(n_R-K_R)/K_L, ln(n_L-K_L)/K_R}`.
pub fn check_impossible_submatrix(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    consts.validate()?;
    let Sub { nl, nr, kl, kr, mu2, .. } = Sub::new(params);
    let rhs = consts.c_sub_impossible / 12.0 * (ln(nr - kr) / kl).max(ln(nl - kl) / kr);
    let rows = vec![
        row("mu^2", Role::Main, finite(mu2), Orientation::AtMost, rhs),
        row("n_L>=128", Role::Side, finite(nl), Orientation::AtLeast, 128.0),
        row("n_R>=128", Role::Side, finite(nr), Orientation::AtLeast, 128.0),
        row("K_L<=n_L/2", Role::Side, finite(kl), Orientation::AtMost, nl / 2.0),
        row("K_R<=n_R/2", Role::Side, finite(kr), Orientation::AtMost, nr / 2.0),
        gaussian_row(params),
    ];
    let holds = rows[0].satisfied;
    Ok(ConditionReport::new("impossible (submatrix)", rows, holds))
}

/// MLE success: `mu^2 >= c ln n / min(K_L, K_R)`.
pub fn check_mle_submatrix(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    consts.validate()?;
    let Sub { kl, kr, mu2, n, .. } = Sub::new(params);
    let rows = vec![
        row("mu^2", Role::Main, finite(mu2), Orientation::AtLeast, consts.c_sub_mle * ln(n) / kl.min(kr)),
        row("min(K_L,K_R)>=8", Role::Side, finite(kl.min(kr)), Orientation::AtLeast, 8.0),
    ];
    let holds = rows[0].satisfied;
    Ok(ConditionReport::new("mle succeeds (submatrix)", rows, holds))
}

/// Convex relaxation success: `mu^2 >= c (ln n / min(K_L, K_R) + n / (K_L K_R))`.
pub fn check_cvx_submatrix(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    consts.validate()?;
    let Sub { kl, kr, mu2, n, .. } = Sub::new(params);
    let rhs = consts.c_sub_cvx * (ln(n) / kl.min(kr) + n / (kl * kr));
    let rows = vec![row("mu^2", Role::Main, finite(mu2), Orientation::AtLeast, rhs)];
    let holds = rows[0].satisfied;
    Ok(ConditionReport::new("convex relaxation succeeds (submatrix)", rows, holds))
}

/// Convex relaxation failure: `mu^2 <= c n / (K_L K_R)`, stated for square
/// instances with `mu <= 1/100`, `c' ln n <= K <= n/2` and Gaussian noise.
pub fn check_cvx_converse_submatrix(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    consts.validate()?;
    let Sub { nl, nr, kl, kr, mu2, n, .. } = Sub::new(params);
    let c1 = consts.c_sub_cvx_converse_side;
    let square = if nl == nr && kl == kr { 1.0 } else { 0.0 };
    let rows = vec![
        row("mu^2", Role::Main, finite(mu2), Orientation::AtMost, consts.c_sub_cvx_converse * n / (kl * kr)),
        row("mu<=1/100", Role::Side, finite(mu2.sqrt()), Orientation::AtMost, 0.01),
        row("square", Role::Side, finite(square), Orientation::AtLeast, 1.0),
        row("K>=c*ln(n)", Role::Side, finite(kl.min(kr)), Orientation::AtLeast, c1 * ln(n)),
        row("K<=n/2", Role::Side, finite(kl.max(kr)), Orientation::AtMost, n / 2.0),
        gaussian_row(params),
    ];
    let holds = rows[0].satisfied;
    Ok(ConditionReport::new("convex relaxation fails (submatrix)", rows, holds))
}

fn simple_sub_rhs(s: &Sub) -> (f64, f64) {
    let isolated = (s.nl * ln(s.nr) / (s.kl * s.kl)).max(s.nr * ln(s.nl) / (s.kr * s.kr));
    let clusters = (s.nl * ln(s.r * s.kr) / (s.kl * s.kl)).max(s.nr * ln(s.r * s.kl) / (s.kr * s.kr));
    (isolated, clusters)
}

/// Thresholding success: `mu^2 >= c1 max{n_L ln n_R / K_L^2, n_R ln n_L / K_R^2}`
/// and, for `r > 1`, `mu^4 >= c2 max{n_L ln(r K_R) / K_L^2, n_R ln(r K_L) / K_R^2}`.
pub fn check_simple_submatrix(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    consts.validate()?;
    let s = Sub::new(params);
    let (iso, clu) = simple_sub_rhs(&s);
    let rows = vec![
        row("mu^2", Role::Main, finite(s.mu2), Orientation::AtLeast, consts.c_sub_simple1 * iso),
        row("mu^4", Role::Main, finite(s.mu2 * s.mu2), Orientation::AtLeast, consts.c_sub_simple2 * clu),
    ];
    let holds = rows[0].satisfied && (s.r == 1.0 || rows[1].satisfied);
    Ok(ConditionReport::new("thresholding succeeds (submatrix)", rows, holds))
}

/// Thresholding failure: the reverse inequalities of
/// [`check_simple_submatrix`], for Gaussian noise and `K_L, K_R >= ln n`.
pub fn check_simple_converse_submatrix(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    consts.validate()?;
    let s = Sub::new(params);
    let (iso, clu) = simple_sub_rhs(&s);
    let rows = vec![
        row("mu^2", Role::Main, finite(s.mu2), Orientation::AtMost, consts.c_sub_simple_converse1 * iso),
        row("mu^4", Role::Main, finite(s.mu2 * s.mu2), Orientation::AtMost, consts.c_sub_simple_converse2 * clu),
        row("min(K_L,K_R)>=ln(n)", Role::Side, finite(s.kl.min(s.kr)), Orientation::AtLeast, ln(s.n)),
        row("n_L>=rK_R", Role::Side, finite(s.nl), Orientation::AtLeast, s.r * s.kr),
        row("n_R>=rK_L", Role::Side, finite(s.nr), Orientation::AtLeast, s.r * s.kl),
        gaussian_row(params),
    ];
    let holds = rows[0].satisfied || (s.r > 1.0 && rows[1].satisfied);
    Ok(ConditionReport::new("thresholding fails (submatrix)", rows, holds))
}

/// Element-wise thresholding: succeeds when `mu^2 > c ln n`; fails when
/// `mu^2 <= 4 ln n` (Gaussian noise, one side at most half full). `holds`
/// reports the success condition.
pub fn check_element_submatrix(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    consts.validate()?;
    let Sub { nl, nr, kl, kr, mu2, n, .. } = Sub::new(params);
    let half = if kl <= nl / 2.0 || kr <= nr / 2.0 { 1.0 } else { 0.0 };
    let rows = vec![
        row("mu^2 (success)", Role::Main, finite(mu2), Orientation::Above, consts.c_element * ln(n)),
        row("mu^2 (failure)", Role::Main, finite(mu2), Orientation::AtMost, 4.0 * ln(n)),
        row("K_L<=n_L/2 or K_R<=n_R/2", Role::Side, finite(half), Orientation::AtLeast, 1.0),
        gaussian_row(params),
    ];
    let holds = rows[0].satisfied;
    Ok(ConditionReport::new("element-wise thresholding (submatrix)", rows, holds))
}

/// All submatrix checks, one row per condition, with a suggested regime:
/// `HighSNR` when element-wise thresholding succeeds, then the first of
/// impossible, simple, easy, hard whose conclusion holds, else `Boundary`.
pub fn check_submatrix_conditions(params: &SubmatrixParams, consts: &ConditionConstants) -> Result<ConditionReport> {
    let reports = [
        check_impossible_submatrix(params, consts)?,
        check_mle_submatrix(params, consts)?,
        check_cvx_submatrix(params, consts)?,
        check_cvx_converse_submatrix(params, consts)?,
        check_simple_submatrix(params, consts)?,
        check_simple_converse_submatrix(params, consts)?,
        check_element_submatrix(params, consts)?,
    ];
    let label = if reports[6].holds {
        RegimeLabel::HighSnr
    } else if reports[0].holds {
        RegimeLabel::Impossible
    } else if reports[4].holds {
        RegimeLabel::Simple
    } else if reports[2].holds {
        RegimeLabel::Easy
    } else if reports[1].holds {
        RegimeLabel::Hard
    } else {
        RegimeLabel::Boundary
    };
    Ok(combine("submatrix", &reports, label))
}
