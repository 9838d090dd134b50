//! Euclidean projections onto the two constraint blocks of the relaxation:
//! the trace-norm ball and the box-with-fixed-sum set.

use faer::{Mat, Side};

use crate::error::{Error, Result};
use crate::model::RealMatrix;

/// Projection of `v` onto the l1 ball of radius `radius`: soft-thresholding
/// `sign(v_i) max(|v_i| - theta, 0)` with the pivot `theta` found exactly
/// from the sorted magnitudes.
pub fn project_l1_ball(v: &[f64], radius: f64) -> Vec<f64> {
    let theta = l1_pivot(v, radius);
    v.iter().map(|&x| if x.abs() > theta { x.signum() * (x.abs() - theta) } else { 0.0 }).collect()
}

fn l1_pivot(v: &[f64], radius: f64) -> f64 {
    let norm: f64 = v.iter().map(|x| x.abs()).sum();
    if norm <= radius {
        return 0.0;
    }
    if radius <= 0.0 {
        return f64::INFINITY;
    }
    let mut mags: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    mags.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &a) in mags.iter().enumerate() {
        cumsum += a;
        let t = (cumsum - radius) / (j + 1) as f64;
        if a - t > 0.0 {
            theta = t;
        } else {
            break;
        }
    }
    theta
}

fn to_faer(m: &RealMatrix) -> Mat<f64> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j))
}

fn from_faer(m: &Mat<f64>) -> RealMatrix {
    let mut entries = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            entries.push(m[(i, j)]);
        }
    }
    RealMatrix::from_vec_unchecked(m.nrows(), m.ncols(), entries)
}

/// Sum of singular values.
pub fn nuclear_norm(m: &RealMatrix) -> Result<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    let a = to_faer(m);
    if m.is_symmetric() {
        let eig = a
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Decomposition(format!("{e:?}")))?;
        Ok(eig.iter().map(|x| x.abs()).sum())
    } else {
        let svd = a.thin_svd().map_err(|e| Error::Decomposition(format!("{e:?}")))?;
        Ok(svd.S().column_vector().iter().sum())
    }
}

/// Projection onto `{X : ||X||_* <= radius}`. Symmetric inputs go through an
/// eigendecomposition (eigenvalue magnitudes are the singular values);
/// everything else through a thin SVD.
pub fn project_trace_ball(m: &RealMatrix, radius: f64) -> Result<RealMatrix> {
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParams(format!("radius = {radius} must be nonnegative")));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(m.clone());
    }
    if m.is_symmetric() {
        project_trace_ball_symmetric(m, radius)
    } else {
        project_trace_ball_svd(m, radius)
    }
}

/// Eigendecomposition route; `m` must be symmetric.
pub fn project_trace_ball_symmetric(m: &RealMatrix, radius: f64) -> Result<RealMatrix> {
    debug_assert!(m.is_symmetric());
    let a = to_faer(m);
    let evd = a.self_adjoint_eigen(Side::Lower).map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let lambda: Vec<f64> = evd.S().column_vector().iter().copied().collect();
    if lambda.iter().map(|x| x.abs()).sum::<f64>() <= radius {
        return Ok(m.clone());
    }
    let shrunk = project_l1_ball(&lambda, radius);
    let u = evd.U();
    let keep: Vec<usize> = (0..shrunk.len()).filter(|&k| shrunk[k] != 0.0).collect();
    let n = m.rows();
    let uk = Mat::from_fn(n, keep.len(), |i, c| u[(i, keep[c])]);
    let scaled = Mat::from_fn(n, keep.len(), |i, c| uk[(i, c)] * shrunk[keep[c]]);
    let x = &scaled * uk.transpose();
    // Symmetrize to remove rounding asymmetry from the product.
    let mut out = from_faer(&x);
    let e = out.as_mut_slice();
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (e[i * n + j] + e[j * n + i]);
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
    }
    Ok(out)
}

/// Thin-SVD route, valid for any shape.
pub fn project_trace_ball_svd(m: &RealMatrix, radius: f64) -> Result<RealMatrix> {
    let a = to_faer(m);
    let svd = a.thin_svd().map_err(|e| Error::Decomposition(format!("{e:?}")))?;
    let sigma: Vec<f64> = svd.S().column_vector().iter().copied().collect();
    if sigma.iter().sum::<f64>() <= radius {
        return Ok(m.clone());
    }
    let shrunk = project_l1_ball(&sigma, radius);
    let (u, v) = (svd.U(), svd.V());
    let keep: Vec<usize> = (0..shrunk.len()).filter(|&k| shrunk[k] != 0.0).collect();
    let us = Mat::from_fn(m.rows(), keep.len(), |i, c| u[(i, keep[c])] * shrunk[keep[c]]);
    let vk = Mat::from_fn(m.cols(), keep.len(), |j, c| v[(j, keep[c])]);
    Ok(from_faer(&(&us * vk.transpose())))
}

/// Shift `lambda` with `sum_i clip(values_i - lambda, 0, 1) = total`, and the
/// clipped values written back in place. `hint` seeds the search.
///
/// The sum is piecewise linear and nonincreasing in `lambda`; Newton steps on
/// the current linear piece are safeguarded by a shrinking bracket and fall
/// back to bisection when they leave it.
pub(crate) fn box_sum_in_place(values: &mut [f64], total: f64, hint: Option<f64>) -> f64 {
    let sum_at = |lambda: f64, values: &[f64]| -> (f64, usize) {
        let mut s = 0.0;
        let mut free = 0;
        for &v in values {
            let c = v - lambda;
            if c >= 1.0 {
                s += 1.0;
            } else if c > 0.0 {
                s += c;
                free += 1;
            }
        }
        (s, free)
    };
    let (mut lo, mut hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    lo -= 1.0;
    let mut lambda = match hint {
        Some(h) if h > lo && h < hi => h,
        _ => 0.5 * (lo + hi),
    };
    let tol = 1e-12 * total;
    for _ in 0..200 {
        let (s, free) = sum_at(lambda, values);
        let g = s - total;
        if g.abs() <= tol {
            break;
        }
        if g > 0.0 {
            lo = lambda;
        } else {
            hi = lambda;
        }
        let newton = if free > 0 { lambda + g / free as f64 } else { f64::NAN };
        lambda = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if hi - lo <= 4.0 * f64::EPSILON * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
    }
    for v in values.iter_mut() {
        *v = (*v - lambda).clamp(0.0, 1.0);
    }
    lambda
}

/// Projection onto `{X : 0 <= X_ij <= 1, sum_ij X_ij = total}`.
pub fn project_box_sum(m: &RealMatrix, total: f64) -> Result<RealMatrix> {
    let count = (m.rows() * m.cols()) as f64;
    if !(total > 0.0 && total < count) {
        return Err(Error::InvalidParams(format!(
            "total = {total} must lie strictly between 0 and the entry count {count}"
        )));
    }
    let mut out = m.clone();
    box_sum_in_place(out.as_mut_slice(), total, None);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l1_ball_cases() {
        assert_eq!(project_l1_ball(&[1.0, 1.0], 1.0), vec![0.5, 0.5]);
        assert_eq!(project_l1_ball(&[0.2, -0.3], 1.0), vec![0.2, -0.3]);
        assert_eq!(project_l1_ball(&[3.0, -1.0, 0.5], 2.0), vec![2.0, -0.0, 0.0]);
        let p = project_l1_ball(&[3.0, -2.0, 0.5], 2.0);
        assert_eq!(p, vec![1.5, -0.5, 0.0]);
    }

    #[test]
    fn trace_ball_examples() {
        let z = RealMatrix::zeros(3, 3);
        assert_eq!(project_trace_ball(&z, 2.0).unwrap(), z);
        let p = project_trace_ball(&RealMatrix::identity(2), 1.0).unwrap();
        assert!(p.max_abs_diff(&RealMatrix::identity(2).scaled(0.5)) < 1e-12);
        let inside = RealMatrix::from_rows(&[vec![0.1, 0.2], vec![0.0, 0.3]]).unwrap();
        assert_eq!(project_trace_ball(&inside, 5.0).unwrap(), inside);
    }

    #[test]
    fn symmetric_and_svd_routes_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for n in [1, 2, 5, 17] {
            let raw = RealMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
            let sym = raw.add_scaled(1.0, &raw.transpose()).scaled(0.5);
            for radius in [0.0, 0.5, 2.0, 100.0] {
                let a = project_trace_ball_symmetric(&sym, radius).unwrap();
                let b = project_trace_ball_svd(&sym, radius).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-10, "n={n} radius={radius}");
                assert!(nuclear_norm(&a).unwrap() <= radius + 1e-8);
            }
        }
    }

    #[test]
    fn box_sum_examples() {
        let twos = RealMatrix::from_rows(&[vec![2.0, 2.0], vec![2.0, 2.0]]).unwrap();
        assert_eq!(project_box_sum(&twos, 2.0).unwrap(), RealMatrix::from_rows(&[vec![0.5; 2], vec![0.5; 2]]).unwrap());
        let zeros = RealMatrix::zeros(2, 2);
        assert_eq!(project_box_sum(&zeros, 2.0).unwrap(), RealMatrix::from_rows(&[vec![0.5; 2], vec![0.5; 2]]).unwrap());
        let feasible = RealMatrix::from_rows(&[vec![0.25, 1.0], vec![0.0, 0.75]]).unwrap();
        assert!(project_box_sum(&feasible, 2.0).unwrap().max_abs_diff(&feasible) < 1e-15);
        assert!(project_box_sum(&zeros, 4.0).is_err());
        assert!(project_box_sum(&zeros, 0.0).is_err());
    }
}
