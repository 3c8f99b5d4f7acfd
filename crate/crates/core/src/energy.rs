//! Casimir energy, free energy at finite temperature, force and spectra.
//!
//! The energy is `E(a) = ∫₀^∞ dξ/2π log det(1 - N(ξ))`. Mirror pairs use
//! `det(1 - N) = det(1 - Y²)`; a body before a Dirichlet mirror uses
//! `det(1 - Y)`. Work items are frequency nodes, mapped in parallel and
//! reduced in index order so results do not depend on the thread count.

use std::num::NonZeroUsize;

use faer::Mat;
use gauss_quad::laguerre::GaussLaguerre;
use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dielectric::chi_at;
use crate::error::{invalid, Error, Result};
use crate::geometry::{min_center_distance, VoxelBody};
use crate::greens::{assemble_block, KernelMatrix};
use crate::linalg;
use crate::scattering::{coupling_spectrum, gab_j, mirror_spectrum, t_operator, t_operator_from_chi, ScatteringOperator};
use crate::scenario::{Layout, Placement, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadRule {
    /// Gauss-Legendre on `ξ = s (1 + t) / (1 - t)`.
    #[default]
    GaussLegendre,
    /// Gauss-Laguerre on `ξ = s t`.
    GaussLaguerre,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    #[serde(default)]
    pub rule: QuadRule,
    pub nodes: usize,
    /// Frequency scale `s`. Defaults to `1 / (2 d)`, with `d` the smallest
    /// center distance between the bodies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    /// Relative tolerance on the node-halving error estimate.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_tolerance() -> f64 {
    1e-6
}

impl QuadratureSpec {
    pub fn gauss_legendre(nodes: usize) -> Self {
        QuadratureSpec { rule: QuadRule::GaussLegendre, nodes, scale: None, tolerance: default_tolerance() }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 4 {
            return Err(invalid("nodes", format!("at least 4 nodes are required, got {}", self.nodes)));
        }
        if let Some(s) = self.scale {
            if !(s > 0.0 && s.is_finite()) {
                return Err(invalid("scale", format!("must be positive, got {s}")));
            }
        }
        if !(self.tolerance > 0.0) {
            return Err(invalid("tolerance", "must be positive"));
        }
        Ok(())
    }

    /// `(ξ_k, w_k)` with `∫₀^∞ f dξ ≈ Σ w_k f(ξ_k)`.
    pub fn nodes(&self, n: usize, scale: f64) -> Vec<(f64, f64)> {
        let n = NonZeroUsize::new(n.max(1)).unwrap();
        match self.rule {
            QuadRule::GaussLegendre => GaussLegendre::new(n)
                .as_node_weight_pairs()
                .iter()
                .map(|&(t, w)| (scale * (1.0 + t) / (1.0 - t), w * 2.0 * scale / ((1.0 - t) * (1.0 - t))))
                .collect(),
            QuadRule::GaussLaguerre => GaussLaguerre::new(n, 0.0.try_into().unwrap())
                .as_node_weight_pairs()
                .iter()
                .filter(|&&(_, w)| w > 0.0)
                .map(|&(t, w)| (scale * t, scale * (t + w.ln()).exp()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    /// `(ξ, integrand)` at every node, in node order.
    pub per_node: Vec<(f64, f64)>,
    pub error_estimate: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// `-dE/da`; negative means attraction.
    pub value: f64,
    pub delta: f64,
    /// The finite difference is at the level of rounding noise.
    pub flagged: bool,
}

/// Per-frequency data that does not depend on the separation.
pub struct SelfPart {
    pub xi: f64,
    pub t_a: ScatteringOperator,
    pub t_b: Option<ScatteringOperator>,
}

fn body_t(sc: &Scenario, body: &VoxelBody, model_is_b: bool, xi: f64) -> Result<ScatteringOperator> {
    let g = assemble_block(body, body, xi, &sc.kernel)?;
    let model = if model_is_b { &sc.model_b } else { &sc.model_a };
    if model_is_b && sc.corrupt_b {
        let chi = -chi_at(model, xi)?;
        return t_operator_from_chi(&body.label, chi, xi, &g);
    }
    t_operator(body, model, xi, &g)
}

fn uses_general_path(sc: &Scenario) -> bool {
    sc.layout == Layout::Pair || (sc.layout == Layout::Mirror && sc.corrupt_b)
}

pub fn self_part(sc: &Scenario, xi: f64) -> Result<SelfPart> {
    let t_a = body_t(sc, &sc.body_a, false, xi)?;
    let t_b = match (&sc.layout, &sc.body_b) {
        (Layout::Pair, Some(b)) => Some(body_t(sc, b, true, xi)?),
        _ => None,
    };
    Ok(SelfPart { xi, t_a, t_b })
}

/// `G_AB`: rows on A, columns on B.
pub fn g_ab(sc: &Scenario, pl: &Placement, xi: f64) -> Result<KernelMatrix> {
    assemble_block(&pl.body_b, &sc.body_a, xi, &sc.kernel)
}

/// The symmetric matrix `G_AB 𝒥` of a mirror layout.
pub fn gabj_matrix(sc: &Scenario, pl: &Placement, xi: f64) -> Result<Mat<f64>> {
    let j = pl.reflection.as_ref().ok_or_else(|| invalid("layout", "G_AB J needs a mirror layout"))?;
    gab_j(&g_ab(sc, pl, xi)?, j)
}

/// Spectrum that enters the determinant, ascending: eigenvalues of `Y` for
/// mirror layouts, of the symmetric form of `N` otherwise.
pub fn spectrum_at(sc: &Scenario, pl: &Placement, sp: &SelfPart) -> Result<Vec<f64>> {
    let gab = g_ab(sc, pl, sp.xi)?;
    if uses_general_path(sc) {
        let owned;
        let t_b = match &sp.t_b {
            Some(t) => t,
            None => {
                owned = body_t(sc, &pl.body_b, true, sp.xi)?;
                &owned
            }
        };
        coupling_spectrum(&sp.t_a, &gab, t_b)
    } else {
        let j = pl.reflection.as_ref().expect("mirror placement");
        let m = gab_j(&gab, j)?;
        mirror_spectrum(&sp.t_a, m.as_ref())
    }
}

fn log_det_from(sc: &Scenario, lambda: &[f64], xi: f64) -> Result<f64> {
    let squared = sc.layout == Layout::Mirror && !uses_general_path(sc);
    for &l in lambda {
        let bad = if squared { !(l.abs() < 1.0) } else { !(l < 1.0) };
        if bad {
            return Err(Error::EigenvalueBound { lambda: l, xi });
        }
    }
    Ok(if squared { linalg::sum_log1m(lambda.iter().map(|l| l * l)) } else { linalg::sum_log1m(lambda.iter().copied()) })
}

fn integrand_from(sc: &Scenario, pl: &Placement, sp: &SelfPart) -> Result<f64> {
    let lambda = spectrum_at(sc, pl, sp)?;
    log_det_from(sc, &lambda, sp.xi)
}

/// `log det(1 - N(ξ))` at separation `a`.
pub fn integrand(sc: &Scenario, a: f64, xi: f64) -> Result<f64> {
    let pl = sc.place(a)?;
    integrand_from(sc, &pl, &self_part(sc, xi)?)
}

/// Default frequency scale at separation `a`.
pub fn auto_scale(sc: &Scenario, a: f64) -> Result<f64> {
    let pl = sc.place(a)?;
    Ok(0.5 / min_center_distance(&sc.body_a, &pl.body_b))
}

/// Integrands at every node for several separations sharing the nodes.
/// Result is indexed `[separation][node]`.
fn integrands(sc: &Scenario, seps: &[f64], nodes: &[(f64, f64)]) -> Result<Vec<Vec<f64>>> {
    let placements = seps.iter().map(|&a| sc.place(a)).collect::<Result<Vec<_>>>()?;
    let per_node: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|&(xi, _)| {
            let sp = self_part(sc, xi)?;
            placements.iter().map(|pl| integrand_from(sc, pl, &sp)).collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..seps.len()).map(|s| per_node.iter().map(|row| row[s]).collect()).collect())
}

fn weighted_sum(nodes: &[(f64, f64)], f: &[f64]) -> f64 {
    nodes.iter().zip(f).map(|(&(_, w), &v)| w * v).sum::<f64>() / (2.0 * std::f64::consts::PI)
}

fn scale_for(sc: &Scenario, quad: &QuadratureSpec, a: f64) -> Result<f64> {
    match quad.scale {
        Some(s) => Ok(s),
        None => auto_scale(sc, a),
    }
}

fn finish(quad: &QuadratureSpec, nodes: &[(f64, f64)], f: Vec<f64>, half: &[(f64, f64)], fh: &[f64]) -> EnergyResult {
    let value = weighted_sum(nodes, &f);
    let coarse = weighted_sum(half, fh);
    let error_estimate = (value - coarse).abs();
    EnergyResult {
        value,
        per_node: nodes.iter().map(|&(x, _)| x).zip(f).collect(),
        error_estimate,
        flagged: error_estimate > quad.tolerance * value.abs() || !value.is_finite(),
    }
}

/// Energy at separation `a` with the given quadrature.
pub fn casimir_energy(sc: &Scenario, a: f64, quad: &QuadratureSpec) -> Result<EnergyResult> {
    quad.validate()?;
    let s = scale_for(sc, quad, a)?;
    let nodes = quad.nodes(quad.nodes, s);
    let half = quad.nodes(quad.nodes / 2, s);
    let f = integrands(sc, &[a], &nodes)?.remove(0);
    let fh = integrands(sc, &[a], &half)?.remove(0);
    Ok(finish(quad, &nodes, f, &half, &fh))
}

/// Energy with the scenario's own quadrature.
pub fn energy(sc: &Scenario, a: f64) -> Result<EnergyResult> {
    casimir_energy(sc, a, &sc.quadrature)
}

fn default_delta(a: f64) -> f64 {
    a / 20.0
}

fn richardson(e: &[f64], delta: f64) -> ForceResult {
    // e = [E(a), E(a+δ), E(a-δ), E(a+δ/2), E(a-δ/2)]
    let d1 = (e[1] - e[2]) / (2.0 * delta);
    let d2 = (e[3] - e[4]) / delta;
    let deriv = (4.0 * d2 - d1) / 3.0;
    let noise = 1e-11 * e[0].abs().max(f64::MIN_POSITIVE);
    ForceResult { value: -deriv, delta, flagged: (e[1] - e[2]).abs() < noise || !deriv.is_finite() }
}

/// `-dE/da` by a central difference with one Richardson step. All shifted
/// energies share the frequency nodes chosen at `a`.
pub fn force(sc: &Scenario, a: f64, delta: Option<f64>) -> Result<ForceResult> {
    energy_and_force(sc, a, delta).map(|(_, f)| f)
}

/// Energy and force together, sharing the per-frequency self terms.
pub fn energy_and_force(sc: &Scenario, a: f64, delta: Option<f64>) -> Result<(EnergyResult, ForceResult)> {
    let quad = &sc.quadrature;
    quad.validate()?;
    let delta = delta.unwrap_or_else(|| default_delta(a));
    if !(delta > 0.0 && delta < a / 10.0) {
        return Err(invalid("delta", format!("step must be in (0, a/10), got {delta} at a = {a}")));
    }
    let s = scale_for(sc, quad, a)?;
    let nodes = quad.nodes(quad.nodes, s);
    let half = quad.nodes(quad.nodes / 2, s);
    let seps = [a, a + delta, a - delta, a + 0.5 * delta, a - 0.5 * delta];
    let mut rows = integrands(sc, &seps, &nodes)?;
    let e: Vec<f64> = rows.iter().map(|f| weighted_sum(&nodes, f)).collect();
    let fh = integrands(sc, &[a], &half)?.remove(0);
    let energy = finish(quad, &nodes, rows.swap_remove(0), &half, &fh);
    Ok((energy, richardson(&e, delta)))
}

/// `-dF/da` at fixed temperature, as [`force`] but on the Matsubara sum.
pub fn free_energy_force(sc: &Scenario, a: f64, temperature: f64, delta: Option<f64>) -> Result<ForceResult> {
    let delta = delta.unwrap_or_else(|| default_delta(a));
    if !(delta > 0.0 && delta < a / 10.0) {
        return Err(invalid("delta", format!("step must be in (0, a/10), got {delta} at a = {a}")));
    }
    let seps = [a, a + delta, a - delta, a + 0.5 * delta, a - 0.5 * delta];
    let e = seps.iter().map(|&x| free_energy_finite_t(sc, x, temperature).map(|r| r.value)).collect::<Result<Vec<_>>>()?;
    Ok(richardson(&e, delta))
}

/// Matsubara free energy `T Σ'_{n≥0} log det(1 - N(2πnT))`, the `n = 0` term
/// at half weight and evaluated at `ξ = 1e-6 / a`.
pub fn free_energy_finite_t(sc: &Scenario, a: f64, temperature: f64) -> Result<EnergyResult> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(invalid("temperature", format!("must be positive, got {temperature}")));
    }
    let pl = sc.place(a)?;
    const CHUNK: usize = 16;
    const MAX_TERMS: usize = 200_000;
    let xi_of = |n: usize| if n == 0 { 1e-6 / a } else { 2.0 * std::f64::consts::PI * n as f64 * temperature };
    let mut sum = 0.0;
    let mut per_node = vec![];
    let mut last = f64::INFINITY;
    let mut start = 0;
    let mut done = false;
    while !done && start < MAX_TERMS {
        let chunk: Vec<f64> = (start..start + CHUNK)
            .into_par_iter()
            .map(|n| integrand_from(sc, &pl, &self_part(sc, xi_of(n))?))
            .collect::<Result<Vec<_>>>()?;
        for (k, f) in chunk.into_iter().enumerate() {
            let n = start + k;
            if !f.is_finite() {
                return Err(invalid("temperature", format!("Matsubara term {n} is not finite")));
            }
            let term = temperature * if n == 0 { 0.5 } else { 1.0 } * f;
            sum += term;
            per_node.push((xi_of(n), f));
            last = term.abs();
            if n > 0 && last <= 1e-12 * sum.abs() {
                done = true;
                break;
            }
        }
        start += CHUNK;
    }
    Ok(EnergyResult { value: sum, per_node, error_estimate: last, flagged: !done })
}

/// Eigenvalues of `Y` (mirror layouts), sorted descending.
pub fn eigen_spectrum(sc: &Scenario, a: f64, xi: f64) -> Result<Vec<f64>> {
    if !sc.is_mirror() {
        return Err(invalid("layout", "the Y spectrum is defined for mirror layouts"));
    }
    let plain = Scenario { corrupt_b: false, ..sc.clone() };
    let pl = plain.place(a)?;
    let mut ev = spectrum_at(&plain, &pl, &self_part(&plain, xi)?)?;
    ev.reverse();
    if let Some(&bad) = ev.iter().find(|&&l| !(-1e-12..1.0).contains(&l)) {
        return Err(Error::EigenvalueBound { lambda: bad, xi });
    }
    Ok(ev)
}

/// Eigenvalues of `√T_A G_AB T_B G_BA √T_A`, ascending, for any layout.
pub fn coupling_eigenvalues(sc: &Scenario, a: f64, xi: f64) -> Result<Vec<f64>> {
    let pl = sc.place(a)?;
    let t_a = body_t(sc, &sc.body_a, false, xi)?;
    let t_b = body_t(sc, &pl.body_b, true, xi)?;
    coupling_spectrum(&t_a, &g_ab(sc, &pl, xi)?, &t_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_map_integrates_exponential() {
        let q = QuadratureSpec::gauss_legendre(64);
        let v: f64 = q.nodes(64, 1.0).iter().map(|&(x, w)| w * (-x).exp()).sum();
        assert!((v - 1.0).abs() < 1e-13);
        let l = QuadratureSpec { rule: QuadRule::GaussLaguerre, ..q };
        let v: f64 = l.nodes(32, 1.0).iter().map(|&(x, w)| w * (-x).exp() * x).sum();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_few_nodes() {
        assert!(QuadratureSpec::gauss_legendre(3).validate().is_err());
    }
}
