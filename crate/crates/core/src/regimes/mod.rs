//! Information-theoretic and algorithmic regime calculators.

pub mod asymptotic;
pub mod conditions;
pub mod kl;

pub use asymptotic::{
    asymptotic_regime_clustering, asymptotic_regime_submatrix, regime_boundaries, RegimeLabel,
};
pub use conditions::{
    check_cvx_clustering, check_cvx_converse_clustering, check_cvx_converse_submatrix,
    check_cvx_submatrix, check_element_submatrix, check_impossible_clustering,
    check_impossible_submatrix, check_mle_clustering, check_mle_submatrix,
    check_simple_clustering, check_simple_converse_clustering, check_simple_converse_submatrix,
    check_simple_submatrix, check_submatrix_conditions, clustering_report, ConditionConstants,
    ConditionReport, ConditionRow, Orientation, Role,
};
pub use kl::{bernoulli_kl, Extended};
