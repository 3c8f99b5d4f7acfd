//! Imaginary-frequency free propagators and their voxel matrices.
//!
//! Blocks are in operator form: entry `(i, j)` is the kernel between centers
//! `i` and `j` times the voxel volume `h^d`, so that `G v` approximates
//! `∫ G(x, x') v(x') dx'`.

use std::f64::consts::PI;

use faer::Mat;

use crate::cylinder::{CylinderKernel, CylinderSpec};
use crate::error::{invalid, Result};
use crate::geometry::{Point, VoxelBody};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    Scalar { dim: usize },
    Em,
    /// Scalar d = 3 inside an infinite rectangular cylinder along `axis`.
    Cylinder { spec: CylinderSpec, axis: usize },
}

impl Kernel {
    pub fn components(&self) -> usize {
        match self {
            Kernel::Em => 3,
            _ => 1,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Kernel::Scalar { dim } => *dim,
            _ => 3,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Kernel::Scalar { dim: 1 } => "scalar-1d",
            Kernel::Scalar { dim: 2 } => "scalar-2d",
            Kernel::Scalar { .. } => "scalar-3d",
            Kernel::Em => "em",
            Kernel::Cylinder { .. } => "cylinder",
        }
    }
}

#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub block: Mat<f64>,
    pub xi: f64,
    pub kind: &'static str,
}

fn check_xi(xi: f64) -> Result<()> {
    if xi > 0.0 && xi.is_finite() {
        Ok(())
    } else {
        Err(invalid("xi", format!("frequency must be positive, got {xi}")))
    }
}

/// Free scalar kernel of `-∇² + ξ²` in `d` dimensions at distance `r > 0`.
pub fn g0_scalar(d: usize, xi: f64, r: f64) -> Result<f64> {
    check_xi(xi)?;
    if !(r > 0.0) {
        return Err(invalid("r", "coincident points need the self term"));
    }
    match d {
        1 => Ok((-xi * r).exp() / (2.0 * xi)),
        2 => Ok(puruspe::Kn(0, xi * r) / (2.0 * PI)),
        3 => Ok((-xi * r).exp() / (4.0 * PI * r)),
        _ => Err(invalid("d", format!("dimension must be 1, 2 or 3, got {d}"))),
    }
}

/// Regularized diagonal value: the kernel averaged over a ball of volume `h^d`
/// centred on the singularity. In one dimension the kernel is bounded and the
/// point value `1/(2ξ)` is used.
pub fn g0_self(d: usize, xi: f64, h: f64) -> Result<f64> {
    check_xi(xi)?;
    if !(h > 0.0) {
        return Err(invalid("h", "voxel edge must be positive"));
    }
    match d {
        1 => Ok(1.0 / (2.0 * xi)),
        2 => {
            let r = h / PI.sqrt();
            Ok(one_minus_x_k1(xi * r) / (PI * r * r * xi * xi))
        }
        3 => {
            let r = h * (3.0 / (4.0 * PI)).cbrt();
            let y = xi * r;
            // (1 - (1 + y) e^{-y}) / y², by series where it cancels.
            let f = if y < 0.1 {
                (2..16).map(|k| (k as f64 - 1.0) * (-y).powi(k as i32 - 2) / factorial(k)).sum()
            } else {
                (1.0 - (1.0 + y) * (-y).exp()) / (y * y)
            };
            Ok(f * r * r / (h * h * h))
        }
        _ => Err(invalid("d", format!("dimension must be 1, 2 or 3, got {d}"))),
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

fn digamma_int(n: usize) -> f64 {
    -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>()
}

/// `1 - x K₁(x) = ∫₀ˣ t K₀(t) dt`.
pub(crate) fn one_minus_x_k1(x: f64) -> f64 {
    if x > 1.0 {
        return 1.0 - x * puruspe::Kn(1, x);
    }
    let q = 0.25 * x * x;
    let l = (0.5 * x).ln();
    let mut pow = q;
    let mut fact = 1.0; // k! (k+1)!
    let mut sum = 0.0;
    for k in 0..20 {
        if k > 0 {
            pow *= q;
            fact *= k as f64 * (k + 1) as f64;
        }
        sum += pow / fact * (digamma_int(k + 1) + digamma_int(k + 2) - 2.0 * l);
    }
    sum
}

/// Real-space EM dyadic `(δ_ij - ∂_i∂_j/ξ²) e^{-ξr}/(4πr)`, the inverse
/// Fourier transform of `(δ_ij + k_i k_j/ξ²)/(k² + ξ²)`.
pub fn g0_em_dyadic(xi: f64, x: &Point, xp: &Point) -> Result<[[f64; 3]; 3]> {
    check_xi(xi)?;
    let d = [x[0] - xp[0], x[1] - xp[1], x[2] - xp[2]];
    let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if !(r > 0.0) {
        return Err(invalid("x", "coincident points need the self rule"));
    }
    Ok(dyadic(xi, &d, r))
}

fn dyadic(xi: f64, d: &[f64; 3], r: f64) -> [[f64; 3]; 3] {
    let g = (-xi * r).exp() / (4.0 * PI * r);
    let u = 1.0 / (xi * r);
    let a = 1.0 + u + u * u;
    let b = 1.0 + 3.0 * u + 3.0 * u * u;
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { a } else { 0.0 };
            out[i][j] = g * (delta - b * d[i] * d[j] / (r * r));
        }
    }
    out
}

/// Kernel value of the EM diagonal block, `1/(3ξ²h³)`.
///
/// This keeps only the contact term of `-∂∂/ξ²` at the origin. Together with
/// the T-operator assembly it reproduces the Clausius-Mossotti polarizability
/// `3h³χ/(3+χ)` of an isolated voxel.
pub fn em_self_rule(xi: f64, h: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok(1.0 / (3.0 * xi * xi * h * h * h))
}

fn distance(p: &Point, q: &Point) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
}

/// Block with rows on `target` voxels and columns on `source` voxels.
/// Coincident centers are treated as the same cell and get the self term.
pub fn assemble_block(source: &VoxelBody, target: &VoxelBody, xi: f64, kernel: &Kernel) -> Result<KernelMatrix> {
    check_xi(xi)?;
    if source.h != target.h || source.dim != target.dim {
        return Err(invalid("bodies", "voxel edge and dimension must agree across bodies"));
    }
    if source.dim != kernel.dim() {
        return Err(invalid("kernel", format!("{} kernel on a {}-d body", kernel.tag(), source.dim)));
    }
    let h = source.h;
    let w = source.voxel_volume();
    let (nt, ns) = (target.len(), source.len());
    let block = match kernel {
        Kernel::Scalar { dim } => {
            let d = *dim;
            let self_value = g0_self(d, xi, h)? * w;
            Mat::from_fn(nt, ns, |i, j| {
                let r = distance(&target.centers[i], &source.centers[j]);
                if r == 0.0 {
                    self_value
                } else {
                    w * match d {
                        1 => (-xi * r).exp() / (2.0 * xi),
                        2 => puruspe::Kn(0, xi * r) / (2.0 * PI),
                        _ => (-xi * r).exp() / (4.0 * PI * r),
                    }
                }
            })
        }
        Kernel::Em => {
            let self_value = em_self_rule(xi, h)? * w;
            let mut m = Mat::<f64>::zeros(3 * nt, 3 * ns);
            for i in 0..nt {
                for j in 0..ns {
                    let (p, q) = (&target.centers[i], &source.centers[j]);
                    let d = [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
                    let r = distance(p, q);
                    if r == 0.0 {
                        for s in 0..3 {
                            m[(3 * i + s, 3 * j + s)] = self_value;
                        }
                    } else {
                        let blk = dyadic(xi, &d, r);
                        for s in 0..3 {
                            for t in 0..3 {
                                m[(3 * i + s, 3 * j + t)] = w * blk[s][t];
                            }
                        }
                    }
                }
            }
            m
        }
        Kernel::Cylinder { spec, axis } => {
            let k = CylinderKernel::new(spec, *axis, xi)?;
            k.matrix(&target.centers, &source.centers, h)?
        }
    };
    Ok(KernelMatrix { block, xi, kind: kernel.tag() })
}
