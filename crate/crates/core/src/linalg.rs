//! Thin helpers over faer. Every routine runs single-threaded; parallelism
//! lives one level up, across frequency nodes.

use std::sync::Once;

use faer::{Mat, MatRef, Par, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

static INIT: Once = Once::new();

fn init() {
    INIT.call_once(|| faer::set_global_parallelism(Par::Seq));
}

pub fn max_abs(m: MatRef<'_, f64>) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            best = best.max(m[(i, j)].abs());
        }
    }
    best
}

/// `max |M - Mᵀ| / max |M|`, zero for the zero matrix.
pub fn asymmetry(m: MatRef<'_, f64>) -> f64 {
    let scale = max_abs(m);
    if scale == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..j {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst / scale
}

pub fn symmetrize(m: MatRef<'_, f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

/// Eigenvalues of a symmetric matrix in ascending order; only the lower
/// triangle is read.
pub fn sym_eigenvalues(m: MatRef<'_, f64>) -> Result<Vec<f64>> {
    init();
    if m.nrows() == 0 {
        return Ok(vec![]);
    }
    let mut v = m.self_adjoint_eigenvalues(Side::Lower).map_err(|e| Error::Solver(format!("{e:?}")))?;
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Eigen-decomposition `M = U diag(s) Uᵀ`, eigenvalues ascending.
pub fn sym_eigen(m: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    init();
    let evd = m.self_adjoint_eigen(Side::Lower).map_err(|e| Error::Solver(format!("{e:?}")))?;
    let s = evd.S();
    let vals: Vec<f64> = (0..m.nrows()).map(|i| s[i]).collect();
    Ok((vals, evd.U().to_owned()))
}

/// Eigenvalues of a general real matrix.
pub fn eigenvalues(m: MatRef<'_, f64>) -> Result<Vec<Complex64>> {
    init();
    if m.nrows() == 0 {
        return Ok(vec![]);
    }
    let v = m.eigenvalues().map_err(|e| Error::Solver(format!("{e:?}")))?;
    Ok(v.into_iter().map(|c| Complex64::new(c.re, c.im)).collect())
}

/// Lower Cholesky factor, or `None` if the matrix is not positive definite.
pub fn cholesky(m: MatRef<'_, f64>) -> Option<Mat<f64>> {
    init();
    let llt = m.llt(Side::Lower).ok()?;
    Some(llt.L().to_owned())
}

/// `L⁻¹ B` for lower-triangular `L`.
pub fn solve_lower(l: MatRef<'_, f64>, b: MatRef<'_, f64>) -> Mat<f64> {
    init();
    let mut x = b.to_owned();
    l.solve_lower_triangular_in_place(x.as_mut());
    x
}

/// `L⁻¹ M L⁻ᵀ`, symmetrized.
pub fn congruence_inverse(l: MatRef<'_, f64>, m: MatRef<'_, f64>) -> Mat<f64> {
    let x = solve_lower(l, m);
    let y = solve_lower(l, x.transpose());
    symmetrize(y.as_ref())
}

/// `L₁⁻¹ M L₂⁻ᵀ`.
pub fn two_sided_solve(l1: MatRef<'_, f64>, m: MatRef<'_, f64>, l2: MatRef<'_, f64>) -> Mat<f64> {
    let x = solve_lower(l2, m.transpose());
    solve_lower(l1, x.transpose())
}

/// Inverse via partial-pivot LU, for matrices that need not be definite.
pub fn inverse(m: MatRef<'_, f64>) -> Result<Mat<f64>> {
    use faer::linalg::solvers::DenseSolveCore;
    init();
    let inv = m.partial_piv_lu().inverse();
    if inv.col_iter().all(|c| c.iter().all(|v| v.is_finite())) {
        Ok(inv)
    } else {
        Err(Error::Solver("singular matrix".into()))
    }
}

pub fn identity(n: usize) -> Mat<f64> {
    Mat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
}

pub fn matmul(a: MatRef<'_, f64>, b: MatRef<'_, f64>) -> Mat<f64> {
    init();
    a * b
}

/// `Σ log(1 - x)` with `log1p` so tiny eigenvalues keep full precision.
pub fn sum_log1m(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().map(|x| (-x).ln_1p()).sum()
}
