//! Per-body T operators and the coupled matrices whose spectra give the energy.
//!
//! With `c = ξ²χ` uniform on a body, `T = c (1 + c G)⁻¹ = W⁻¹` where
//! `W = 1/c + G`. The Cholesky factor `W = C Cᵀ` gives `T = C⁻ᵀ C⁻¹`, which is
//! manifestly symmetric and positive. Spectra are taken from congruences by
//! `C⁻¹`, which are orthogonally similar to the `√T · √T` forms but avoid the
//! explicit square roots. The explicit forms are available for checking.

use faer::{Mat, MatRef};

use crate::dielectric::{chi_at, DielectricModel};
use crate::error::{Error, Result};
use crate::geometry::{ReflectionOperator, VoxelBody};
use crate::greens::KernelMatrix;
use crate::linalg;

#[derive(Debug, Clone)]
pub struct ScatteringOperator {
    /// `T` in operator form, same basis as the kernel blocks.
    pub matrix: Mat<f64>,
    pub xi: f64,
    pub body_label: String,
    pub chi: f64,
    factor: Factor,
}

#[derive(Debug, Clone)]
enum Factor {
    /// `χ = 0`: T vanishes.
    Zero,
    /// Lower Cholesky factor of `W`.
    Cholesky(Mat<f64>),
    /// `W` is indefinite (only reachable with negative χ).
    Indefinite,
}

impl ScatteringOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.factor, Factor::Zero)
    }

    /// Whether the body satisfies the hypotheses, i.e. T is positive definite.
    pub fn is_definite(&self) -> bool {
        !matches!(self.factor, Factor::Indefinite)
    }

    /// The voxel-weighted matrix `h^d T`, the form in which a single voxel
    /// reads `ξ²χh^d / (1 + ξ²χ h^d G_self)`.
    pub fn weighted(&self, voxel_volume: f64) -> Mat<f64> {
        Mat::from_fn(self.dim(), self.dim(), |i, j| voxel_volume * self.matrix[(i, j)])
    }

    pub(crate) fn cholesky(&self) -> Option<MatRef<'_, f64>> {
        match &self.factor {
            Factor::Cholesky(c) => Some(c.as_ref()),
            _ => None,
        }
    }
}

/// T operator of one body. Rejects negative χ and indefinite `1 + χG`.
pub fn t_operator(body: &VoxelBody, model: &DielectricModel, xi: f64, g_aa: &KernelMatrix) -> Result<ScatteringOperator> {
    let chi = chi_at(model, xi)?;
    let t = t_operator_from_chi(&body.label, chi, xi, g_aa)?;
    if !t.is_definite() {
        return Err(Error::NotPositiveDefinite { label: body.label.clone(), xi });
    }
    Ok(t)
}

/// As [`t_operator`] with an explicit susceptibility. Negative values are
/// accepted and produce an indefinite T via an LU inverse; this exists to
/// exercise the checks on scenarios that violate the hypotheses.
pub fn t_operator_from_chi(label: &str, chi: f64, xi: f64, g_aa: &KernelMatrix) -> Result<ScatteringOperator> {
    let n = g_aa.block.nrows();
    if g_aa.block.ncols() != n {
        return Err(Error::Dimension("self block must be square".into()));
    }
    if chi == 0.0 {
        return Ok(ScatteringOperator {
            matrix: Mat::zeros(n, n),
            xi,
            body_label: label.to_string(),
            chi,
            factor: Factor::Zero,
        });
    }
    let c = xi * xi * chi;
    let w = Mat::from_fn(n, n, |i, j| {
        let g = 0.5 * (g_aa.block[(i, j)] + g_aa.block[(j, i)]);
        if i == j {
            g + 1.0 / c
        } else {
            g
        }
    });
    if chi > 0.0 {
        if let Some(l) = linalg::cholesky(w.as_ref()) {
            let linv = linalg::solve_lower(l.as_ref(), linalg::identity(n).as_ref());
            let t = linalg::matmul(linv.transpose(), linv.as_ref());
            return Ok(ScatteringOperator {
                matrix: linalg::symmetrize(t.as_ref()),
                xi,
                body_label: label.to_string(),
                chi,
                factor: Factor::Cholesky(l),
            });
        }
    }
    let t = linalg::inverse(w.as_ref())?;
    Ok(ScatteringOperator {
        matrix: linalg::symmetrize(t.as_ref()),
        xi,
        body_label: label.to_string(),
        chi,
        factor: Factor::Indefinite,
    })
}

/// Symmetric PSD square root by spectral decomposition.
pub fn sqrt_psd(m: MatRef<'_, f64>) -> Result<Mat<f64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let (vals, u) = linalg::sym_eigen(m)?;
    let top = vals.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let clip = -1e-12 * top;
    if let Some(&bad) = vals.iter().find(|&&v| v < clip) {
        return Err(Error::NegativeEigenvalue { value: bad, threshold: clip });
    }
    let s: Vec<f64> = vals.iter().map(|&v| v.max(0.0).sqrt()).collect();
    let us = Mat::from_fn(n, n, |i, j| u[(i, j)] * s[j]);
    let r = linalg::matmul(us.as_ref(), u.transpose());
    Ok(linalg::symmetrize(r.as_ref()))
}

/// `N = T_A G_AB T_B G_BA` together with its symmetric similar form
/// `√T_A G_AB T_B G_BA √T_A`.
pub struct Coupling {
    pub n: Mat<f64>,
    pub symmetric: Mat<f64>,
}

pub fn coupling_general(
    t_a: &ScatteringOperator,
    g_ab: &KernelMatrix,
    t_b: &ScatteringOperator,
    g_ba: &KernelMatrix,
) -> Result<Coupling> {
    check_abt(t_a, g_ab, t_b, g_ba)?;
    let gtg = linalg::matmul(linalg::matmul(g_ab.block.as_ref(), t_b.matrix.as_ref()).as_ref(), g_ba.block.as_ref());
    let n = linalg::matmul(t_a.matrix.as_ref(), gtg.as_ref());
    let root = sqrt_psd(t_a.matrix.as_ref())?;
    let sym = linalg::matmul(linalg::matmul(root.as_ref(), gtg.as_ref()).as_ref(), root.as_ref());
    Ok(Coupling { n, symmetric: linalg::symmetrize(sym.as_ref()) })
}

fn check_abt(t_a: &ScatteringOperator, g_ab: &KernelMatrix, t_b: &ScatteringOperator, g_ba: &KernelMatrix) -> Result<()> {
    let (na, nb) = (t_a.dim(), t_b.dim());
    if g_ab.block.nrows() != na || g_ab.block.ncols() != nb || g_ba.block.nrows() != nb || g_ba.block.ncols() != na {
        return Err(Error::Dimension(format!(
            "T_A {na}, T_B {nb}, G_AB {}x{}, G_BA {}x{}",
            g_ab.block.nrows(),
            g_ab.block.ncols(),
            g_ba.block.nrows(),
            g_ba.block.ncols()
        )));
    }
    Ok(())
}

/// Eigenvalues of the symmetric form of `N`, ascending.
///
/// With both bodies definite this is `eig(Z Zᵀ)`, `Z = C_A⁻¹ G_AB C_B⁻ᵀ`.
/// Otherwise the spectrum of the raw product is returned (real parts), which
/// is what exposes a violated hypothesis.
pub fn coupling_spectrum(t_a: &ScatteringOperator, g_ab: &KernelMatrix, t_b: &ScatteringOperator) -> Result<Vec<f64>> {
    let (na, nb) = (t_a.dim(), t_b.dim());
    if g_ab.block.nrows() != na || g_ab.block.ncols() != nb {
        return Err(Error::Dimension("G_AB does not match the T operators".into()));
    }
    if t_a.is_zero() || t_b.is_zero() {
        return Ok(vec![0.0; na]);
    }
    match (t_a.cholesky(), t_b.cholesky()) {
        (Some(ca), Some(cb)) => {
            let z = linalg::two_sided_solve(ca, g_ab.block.as_ref(), cb);
            let zz = if na <= nb { linalg::matmul(z.as_ref(), z.transpose()) } else { linalg::matmul(z.transpose(), z.as_ref()) };
            let mut ev = linalg::sym_eigenvalues(zz.as_ref())?;
            if na > nb {
                ev.splice(0..0, std::iter::repeat_n(0.0, na - nb));
            }
            Ok(ev)
        }
        _ => {
            let gt = g_ab.block.transpose().to_owned();
            let n = linalg::matmul(
                linalg::matmul(linalg::matmul(t_a.matrix.as_ref(), g_ab.block.as_ref()).as_ref(), t_b.matrix.as_ref()).as_ref(),
                gt.as_ref(),
            );
            let mut ev: Vec<f64> = linalg::eigenvalues(n.as_ref())?.iter().map(|c| c.re).collect();
            ev.sort_by(f64::total_cmp);
            Ok(ev)
        }
    }
}

const ASYMMETRY_TOL: f64 = 1e-12;

/// `G_AB 𝒥`, checked for symmetry.
pub fn gab_j(g_ab: &KernelMatrix, j: &ReflectionOperator) -> Result<Mat<f64>> {
    let m = j.right_apply(g_ab.block.as_ref());
    let asym = linalg::asymmetry(m.as_ref());
    if asym > ASYMMETRY_TOL {
        return Err(Error::Asymmetric(asym));
    }
    Ok(linalg::symmetrize(m.as_ref()))
}

/// `Y = √T_A G_AB 𝒥 √T_A`.
pub fn coupling_mirror(t_a: &ScatteringOperator, g_ab: &KernelMatrix, j: &ReflectionOperator) -> Result<Mat<f64>> {
    let m = gab_j(g_ab, j)?;
    let root = sqrt_psd(t_a.matrix.as_ref())?;
    let y = linalg::matmul(linalg::matmul(root.as_ref(), m.as_ref()).as_ref(), root.as_ref());
    Ok(linalg::symmetrize(y.as_ref()))
}

/// Eigenvalues of `Y` from the congruence `C_A⁻¹ (G_AB 𝒥) C_A⁻ᵀ`, ascending.
pub fn mirror_spectrum(t_a: &ScatteringOperator, gabj: MatRef<'_, f64>) -> Result<Vec<f64>> {
    if t_a.is_zero() {
        return Ok(vec![0.0; t_a.dim()]);
    }
    let c = t_a.cholesky().ok_or_else(|| Error::NotPositiveDefinite { label: t_a.body_label.clone(), xi: t_a.xi })?;
    let y = linalg::congruence_inverse(c, gabj);
    linalg::sym_eigenvalues(y.as_ref())
}

/// `M = G_A→image 𝒥 T_A` for a body in front of a Dirichlet mirror. Its
/// spectrum coincides with that of `Y`; see [`mirror_spectrum`].
pub fn coupling_mirror_plane(t_a: &ScatteringOperator, g_image: &KernelMatrix, j: &ReflectionOperator) -> Result<Mat<f64>> {
    let m = gab_j(g_image, j)?;
    Ok(linalg::matmul(m.as_ref(), t_a.matrix.as_ref()))
}
