use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Regime of a parameter point, ordered from hardest to easiest for the four
/// main regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeLabel {
    /// No estimator recovers the planted structure.
    Impossible,
    /// Only the exhaustive MLE is known to succeed.
    Hard,
    /// The convex relaxation succeeds; counting does not.
    Easy,
    /// Counting or thresholding succeeds.
    Simple,
    /// Submatrix model with `mu^2` of order `log n`: element-wise
    /// thresholding already succeeds.
    HighSnr,
    /// On a boundary line, or undetermined by the finite-n conditions.
    Boundary,
}

impl RegimeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::Impossible => "impossible",
            RegimeLabel::Hard => "hard",
            RegimeLabel::Easy => "easy",
            RegimeLabel::Simple => "simple",
            RegimeLabel::HighSnr => "high_snr",
            RegimeLabel::Boundary => "boundary",
        }
    }

    /// Position in the order impossible < hard < easy < simple; `None` for
    /// the two labels outside that chain.
    pub fn rank(self) -> Option<u8> {
        match self {
            RegimeLabel::Impossible => Some(0),
            RegimeLabel::Hard => Some(1),
            RegimeLabel::Easy => Some(2),
            RegimeLabel::Simple => Some(3),
            RegimeLabel::HighSnr | RegimeLabel::Boundary => None,
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Points within this distance of a boundary line are labeled `Boundary`.
pub const BOUNDARY_EPS: f64 = 1e-12;

/// The three boundary lines at `alpha`: information limit `beta = alpha`,
/// computational limit `beta = (1 + alpha)/2` (conjectured for polynomial
/// time algorithms), and counting limit `beta = alpha + 1/2`.
pub fn regime_boundaries(alpha: f64) -> [f64; 3] {
    [alpha, (1.0 + alpha) / 2.0, alpha + 0.5]
}

fn classify(alpha: f64, beta: f64) -> Result<RegimeLabel> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::InvalidParams(format!("{name} = {v} must lie in (0, 1)")));
        }
    }
    let bounds = regime_boundaries(alpha);
    if bounds.iter().any(|b| (beta - b).abs() <= BOUNDARY_EPS) {
        return Ok(RegimeLabel::Boundary);
    }
    let [info, comp, count] = bounds;
    Ok(if beta < info {
        RegimeLabel::Impossible
    } else if beta < comp {
        RegimeLabel::Hard
    } else if beta < count {
        RegimeLabel::Easy
    } else {
        RegimeLabel::Simple
    })
}

/// Regime of planted clustering with `p = 2q = n^-alpha` and `K = n^beta`.
pub fn asymptotic_regime_clustering(alpha: f64, beta: f64) -> Result<RegimeLabel> {
    classify(alpha, beta)
}

/// Regime of submatrix localization with `mu^2 = n^-alpha` and
/// `K_L = K_R = n^beta`. The boundaries coincide with the clustering map.
pub fn asymptotic_regime_submatrix(alpha: f64, beta: f64) -> Result<RegimeLabel> {
    classify(alpha, beta)
}
