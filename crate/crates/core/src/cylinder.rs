//! Scalar propagator inside an infinite cylinder of rectangular cross section.
//!
//! The cylinder axis is the normal axis of the scenario; the cross section is
//! `[0, lx] × [0, ly]` in the two remaining coordinates (in increasing order).
//! Off-axis separations are evaluated as a transverse mode sum. Voxel matrices
//! use an Ewald split of the image series instead, because the mode sum does
//! not converge for points in the same layer: images of the source under the
//! wall reflections carry a sign `-1` per reflection for Dirichlet walls and
//! `+1` for Neumann walls; the short-range part is summed over images in real
//! space, the long-range part over the reciprocal lattice.

use std::collections::HashMap;
use std::f64::consts::PI;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geometry::Point;
use crate::greens::g0_self;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallBc {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeCutoff {
    /// Keep modes until the last one is suppressed by 1e-12 relative to the
    /// first; matrices use the image/Ewald form.
    Adaptive,
    /// A fixed number of lowest modes, used verbatim everywhere including on
    /// the diagonal. Meant for few-mode model problems.
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderSpec {
    pub lx: f64,
    pub ly: f64,
    pub wall: WallBc,
    #[serde(default = "adaptive")]
    pub modes: ModeCutoff,
}

fn adaptive() -> ModeCutoff {
    ModeCutoff::Adaptive
}

impl CylinderSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lx > 0.0 && self.ly > 0.0 && self.lx.is_finite() && self.ly.is_finite()) {
            return Err(invalid("cylinder", "cross-section sides must be positive"));
        }
        if self.modes == ModeCutoff::Fixed(0) {
            return Err(invalid("cylinder.modes", "at least one mode is required"));
        }
        Ok(())
    }
}

pub fn transverse_axes(axis: usize) -> [usize; 2] {
    match axis {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransverseModeSet {
    pub bc: WallBc,
    pub lx: f64,
    pub ly: f64,
    /// Mode numbers `(m, n)`, sorted by energy.
    pub indices: Vec<(u32, u32)>,
    pub energies: Vec<f64>,
}

impl TransverseModeSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Normalized mode function `φ_j(x, y)`.
    pub fn phi(&self, j: usize, x: f64, y: f64) -> f64 {
        let (m, n) = self.indices[j];
        mode_factor(self.bc, m, self.lx, x) * mode_factor(self.bc, n, self.ly, y)
    }
}

fn mode_factor(bc: WallBc, m: u32, l: f64, x: f64) -> f64 {
    let k = m as f64 * PI / l;
    match bc {
        WallBc::Dirichlet => (2.0 / l).sqrt() * (k * x).sin(),
        WallBc::Neumann if m == 0 => (1.0 / l).sqrt(),
        WallBc::Neumann => (2.0 / l).sqrt() * (k * x).cos(),
    }
}

fn mode_energy(lx: f64, ly: f64, m: u32, n: u32) -> f64 {
    (m as f64 * PI / lx).powi(2) + (n as f64 * PI / ly).powi(2)
}

fn sorted_set(bc: WallBc, lx: f64, ly: f64, mut idx: Vec<(u32, u32)>) -> TransverseModeSet {
    idx.sort_by(|a, b| mode_energy(lx, ly, a.0, a.1).total_cmp(&mode_energy(lx, ly, b.0, b.1)).then(a.cmp(b)));
    let energies = idx.iter().map(|&(m, n)| mode_energy(lx, ly, m, n)).collect();
    TransverseModeSet { bc, lx, ly, indices: idx, energies }
}

fn first_index(bc: WallBc) -> u32 {
    match bc {
        WallBc::Dirichlet => 1,
        WallBc::Neumann => 0,
    }
}

/// The `cutoff` lowest modes of the rectangle.
pub fn rectangle_modes(lx: f64, ly: f64, bc: WallBc, cutoff: usize) -> Result<TransverseModeSet> {
    if !(lx > 0.0 && ly > 0.0) {
        return Err(invalid("cylinder", "cross-section sides must be positive"));
    }
    if cutoff == 0 {
        return Err(invalid("cutoff", "at least one mode is required"));
    }
    let m0 = first_index(bc);
    let top = m0 + cutoff as u32;
    let mut idx = Vec::with_capacity(cutoff * cutoff);
    for m in m0..top {
        for n in m0..top {
            idx.push((m, n));
        }
    }
    let mut set = sorted_set(bc, lx, ly, idx);
    set.indices.truncate(cutoff);
    set.energies.truncate(cutoff);
    Ok(set)
}

/// All modes with energy at most `e_max`.
pub fn modes_below(lx: f64, ly: f64, bc: WallBc, e_max: f64) -> TransverseModeSet {
    let m0 = first_index(bc);
    let mmax = (e_max.max(0.0).sqrt() * lx / PI).floor() as u32;
    let nmax = (e_max.max(0.0).sqrt() * ly / PI).floor() as u32;
    let mut idx = vec![];
    for m in m0..=mmax.max(m0) {
        for n in m0..=nmax.max(m0) {
            if mode_energy(lx, ly, m, n) <= e_max || (m == m0 && n == m0) {
                idx.push((m, n));
            }
        }
    }
    sorted_set(bc, lx, ly, idx)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderValue {
    pub value: f64,
    pub modes: usize,
    pub converged: bool,
}

const MODE_TOL: f64 = 1e-12;
const DELTA_ZERO_MODES: usize = 4096;

/// Point kernel `Σ_j φ_j(x⊥) φ_j(x⊥') e^{-κ_j |Δ|} / (2κ_j)`, `κ_j = √(ξ² + E_j)`.
pub fn g0_cylinder(spec: &CylinderSpec, axis: usize, xi: f64, x: &Point, xp: &Point) -> Result<CylinderValue> {
    spec.validate()?;
    if !(xi > 0.0) {
        return Err(invalid("xi", "frequency must be positive"));
    }
    let [t0, t1] = transverse_axes(axis);
    let delta = (x[axis] - xp[axis]).abs();
    let set = match spec.modes {
        ModeCutoff::Fixed(n) => rectangle_modes(spec.lx, spec.ly, spec.wall, n)?,
        ModeCutoff::Adaptive if delta > 0.0 => {
            let e1 = mode_energy(spec.lx, spec.ly, first_index(spec.wall), first_index(spec.wall));
            let kmax = (xi * xi + e1).sqrt() - MODE_TOL.ln() / delta;
            modes_below(spec.lx, spec.ly, spec.wall, kmax * kmax - xi * xi)
        }
        ModeCutoff::Adaptive => rectangle_modes(spec.lx, spec.ly, spec.wall, DELTA_ZERO_MODES)?,
    };
    let mut sum = 0.0;
    for j in 0..set.len() {
        let kappa = (xi * xi + set.energies[j]).sqrt();
        sum += set.phi(j, x[t0], x[t1]) * set.phi(j, xp[t0], xp[t1]) * (-kappa * delta).exp() / (2.0 * kappa);
    }
    let k_first = (xi * xi + set.energies[0]).sqrt();
    let k_last = (xi * xi + set.energies[set.len() - 1]).sqrt();
    // An adaptive set holds every mode up to the cutoff by construction.
    let converged = delta > 0.0
        && (matches!(spec.modes, ModeCutoff::Adaptive) || (-(k_last - k_first) * delta).exp() < MODE_TOL);
    Ok(CylinderValue { value: sum, modes: set.len(), converged })
}

/// Modes needed so the last retained one is 1e-12 below the first at `gap`.
pub fn adaptive_mode_count(spec: &CylinderSpec, xi: f64, gap: f64) -> usize {
    let e1 = mode_energy(spec.lx, spec.ly, first_index(spec.wall), first_index(spec.wall));
    let kmax = (xi * xi + e1).sqrt() - MODE_TOL.ln() / gap;
    modes_below(spec.lx, spec.ly, spec.wall, kmax * kmax - xi * xi).len()
}

/// Matrix-level cylinder kernel at one frequency.
pub struct CylinderKernel {
    spec: CylinderSpec,
    axis: usize,
    xi: f64,
    form: Form,
}

enum Form {
    Modes(TransverseModeSet),
    Ewald(Ewald),
}

struct Ewald {
    eta: f64,
    b: f64,
    sign: f64,
    r_cut: f64,
    /// Reciprocal vectors `(πp/lx, πq/ly)` with their multiplicity.
    kvecs: Vec<(u32, u32, f64, f64)>,
}

impl CylinderKernel {
    pub fn new(spec: &CylinderSpec, axis: usize, xi: f64) -> Result<Self> {
        spec.validate()?;
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(invalid("xi", "frequency must be positive"));
        }
        let form = match spec.modes {
            ModeCutoff::Fixed(n) => Form::Modes(rectangle_modes(spec.lx, spec.ly, spec.wall, n)?),
            ModeCutoff::Adaptive => Form::Ewald(Ewald::new(spec, xi)),
        };
        Ok(CylinderKernel { spec: spec.clone(), axis, xi, form })
    }

    fn check_inside(&self, pts: &[Point], h: f64) -> Result<()> {
        let [t0, t1] = transverse_axes(self.axis);
        let tol = 1e-12 * h;
        for p in pts {
            let ok = p[t0] - 0.5 * h >= -tol
                && p[t0] + 0.5 * h <= self.spec.lx + tol
                && p[t1] - 0.5 * h >= -tol
                && p[t1] + 0.5 * h <= self.spec.ly + tol;
            if !ok {
                return Err(invalid("bodies", format!("voxel at {p:?} is not inside the cylinder")));
            }
        }
        Ok(())
    }

    /// Operator-form block (kernel times `h³`), rows on `targets`.
    pub fn matrix(&self, targets: &[Point], sources: &[Point], h: f64) -> Result<Mat<f64>> {
        self.check_inside(targets, h)?;
        self.check_inside(sources, h)?;
        let w = h * h * h;
        let [t0, t1] = transverse_axes(self.axis);
        let n = self.axis;
        match &self.form {
            Form::Modes(set) => {
                let ut = mode_table(set, targets, t0, t1);
                let us = mode_table(set, sources, t0, t1);
                let kap: Vec<f64> = set.energies.iter().map(|e| (self.xi * self.xi + e).sqrt()).collect();
                Ok(Mat::from_fn(targets.len(), sources.len(), |i, j| {
                    let d = (targets[i][n] - sources[j][n]).abs();
                    w * (0..set.len()).map(|k| ut[i][k] * us[j][k] * (-kap[k] * d).exp() / (2.0 * kap[k])).sum::<f64>()
                }))
            }
            Form::Ewald(ew) => {
                let xi = self.xi;
                let (lx, ly) = (self.spec.lx, self.spec.ly);
                let bc = self.spec.wall;
                let phi = |pt: &Point| -> Vec<f64> {
                    ew.kvecs
                        .iter()
                        .map(|&(p, q, _, _)| mode_factor(bc, p, lx, pt[t0]) * mode_factor(bc, q, ly, pt[t1]))
                        .collect()
                };
                let ut: Vec<Vec<f64>> = targets.iter().map(phi).collect();
                let us: Vec<Vec<f64>> = sources.iter().map(phi).collect();
                let mut fhat_cache: HashMap<u64, Vec<f64>> = HashMap::new();
                let ball = g0_self(3, xi, h)?;
                let mut m = Mat::<f64>::zeros(targets.len(), sources.len());
                for i in 0..targets.len() {
                    for j in 0..sources.len() {
                        let (p, q) = (&targets[i], &sources[j]);
                        let d = (p[n] - q[n]).abs();
                        let fh = fhat_cache.entry(d.to_bits()).or_insert_with(|| ew.fhat_row(xi, d));
                        let long: f64 = (0..fh.len()).map(|k| fh[k] * ut[i][k] * us[j][k]).sum();
                        let coincident = p == q;
                        let short = ew.short_sum(xi, lx, ly, [p[t0], p[t1], p[n]], [q[t0], q[t1], q[n]], coincident);
                        let value = if coincident { ball + short + long - ew.l_free_origin(xi) } else { short + long };
                        m[(i, j)] = w * value;
                    }
                }
                Ok(m)
            }
        }
    }
}

fn mode_table(set: &TransverseModeSet, pts: &[Point], t0: usize, t1: usize) -> Vec<Vec<f64>> {
    pts.iter().map(|p| (0..set.len()).map(|k| set.phi(k, p[t0], p[t1])).collect()).collect()
}

impl Ewald {
    fn new(spec: &CylinderSpec, xi: f64) -> Self {
        let (lx, ly) = (spec.lx, spec.ly);
        let eta = 2.5 / lx.min(ly);
        let b = xi / (2.0 * eta);
        let sign = match spec.wall {
            WallBc::Dirichlet => -1.0,
            WallBc::Neumann => 1.0,
        };
        let r_cut = (6.0 / eta + xi / (2.0 * eta * eta)).min(40.0 / xi);
        // Reciprocal terms are below e^{-36} once κ > 12η.
        let kcap2 = 144.0 * eta * eta - xi * xi;
        let mut kvecs = vec![];
        if kcap2 > 0.0 {
            let m0 = first_index(spec.wall);
            let pmax = (kcap2.sqrt() * lx / PI).floor() as u32;
            let qmax = (kcap2.sqrt() * ly / PI).floor() as u32;
            for p in m0..=pmax.max(m0) {
                for q in m0..=qmax.max(m0) {
                    let (kx, ky) = (p as f64 * PI / lx, q as f64 * PI / ly);
                    if kx * kx + ky * ky <= kcap2 {
                        kvecs.push((p, q, kx, ky));
                    }
                }
            }
        }
        Ewald { eta, b, sign, r_cut, kvecs }
    }

    /// Real-space part `S(r)` of `e^{-ξr}/(4πr)`.
    fn s(&self, xi: f64, r: f64) -> f64 {
        let er = self.eta * r;
        let t1 = (-xi * r).exp() * puruspe::erfc(er - self.b);
        let t2 = (-er * er - self.b * self.b).exp() * puruspe::erfcx(er + self.b);
        (t1 + t2) / (8.0 * PI * r)
    }

    /// `lim_{r→0} (g(r) - S(r))`.
    fn l_free_origin(&self, xi: f64) -> f64 {
        (4.0 * self.eta / PI.sqrt() * (-self.b * self.b).exp() - 2.0 * xi * puruspe::erfc(self.b)) / (8.0 * PI)
    }

    /// Two-dimensional Fourier transform of the smooth part at layer offset `d`.
    fn fhat(&self, kappa: f64, d: f64) -> f64 {
        let eta = self.eta;
        let gauss = (-(kappa * kappa) / (4.0 * eta * eta) - eta * eta * d * d).exp();
        let z1 = kappa / (2.0 * eta) + eta * d;
        let z2 = kappa / (2.0 * eta) - eta * d;
        let t1 = gauss * puruspe::erfcx(z1);
        let t2 = if z2 >= 0.0 { gauss * puruspe::erfcx(z2) } else { (-kappa * d).exp() * puruspe::erfc(z2) };
        (t1 + t2) / (4.0 * kappa)
    }

    /// Coefficients multiplying `φ_pq(x)φ_pq(x')` in the long-range sum.
    fn fhat_row(&self, xi: f64, d: f64) -> Vec<f64> {
        self.kvecs
            .iter()
            .map(|&(_, _, kx, ky)| self.fhat((kx * kx + ky * ky + xi * xi).sqrt(), d))
            .collect()
    }

    /// Signed image sum of `S` in the (t0, t1, n) frame.
    fn short_sum(&self, xi: f64, lx: f64, ly: f64, p: [f64; 3], q: [f64; 3], skip_identity: bool) -> f64 {
        let dz = p[2] - q[2];
        let rc2 = self.r_cut * self.r_cut - dz * dz;
        if rc2 <= 0.0 {
            return 0.0;
        }
        let rc = rc2.sqrt();
        let mut sum = 0.0;
        for (sx, fx) in [(1.0, 1.0), (-1.0, self.sign)] {
            let bx = p[0] - sx * q[0];
            let (plo, phi) = ((bx - rc) / (2.0 * lx), (bx + rc) / (2.0 * lx));
            for pi in plo.ceil() as i64..=phi.floor() as i64 {
                let dx = bx - 2.0 * lx * pi as f64;
                for (sy, fy) in [(1.0, 1.0), (-1.0, self.sign)] {
                    let by = p[1] - sy * q[1];
                    let (qlo, qhi) = ((by - rc) / (2.0 * ly), (by + rc) / (2.0 * ly));
                    for qi in qlo.ceil() as i64..=qhi.floor() as i64 {
                        if skip_identity && sx > 0.0 && sy > 0.0 && pi == 0 && qi == 0 {
                            continue;
                        }
                        let dy = by - 2.0 * ly * qi as f64;
                        let r2 = dx * dx + dy * dy + dz * dz;
                        if r2 > self.r_cut * self.r_cut || r2 == 0.0 {
                            continue;
                        }
                        sum += fx * fy * self.s(xi, r2.sqrt());
                    }
                }
            }
        }
        sum
    }
}

/// Casimir energy of a mirror pair inside the cylinder. Fails on scenarios
/// without a cylinder kernel.
pub fn piston_energy(
    sc: &crate::scenario::Scenario,
    a: f64,
    quad: &crate::energy::QuadratureSpec,
) -> Result<crate::energy::EnergyResult> {
    if !matches!(sc.kernel, crate::greens::Kernel::Cylinder { .. }) {
        return Err(invalid("kernel", "piston energy needs a cylinder scenario"));
    }
    if !sc.is_mirror() {
        return Err(invalid("layout", "piston energy needs a mirror pair"));
    }
    crate::energy::casimir_energy(sc, a, quad)
}
