//! Susceptibility on the imaginary frequency axis.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DielectricModel {
    /// Frequency independent. Idealized: it never falls off at high frequency.
    Constant {
        chi0: f64,
        #[serde(default = "one")]
        strength_scale: f64,
    },
    Drude {
        omega_p: f64,
        gamma: f64,
        #[serde(default = "one")]
        strength_scale: f64,
    },
    Lorentz {
        omega_p: f64,
        omega_0: f64,
        gamma: f64,
        #[serde(default = "one")]
        strength_scale: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl DielectricModel {
    pub fn constant(chi0: f64) -> Self {
        DielectricModel::Constant { chi0, strength_scale: 1.0 }
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Self {
        DielectricModel::Drude { omega_p, gamma, strength_scale: 1.0 }
    }

    pub fn lorentz(omega_p: f64, omega_0: f64, gamma: f64) -> Self {
        DielectricModel::Lorentz { omega_p, omega_0, gamma, strength_scale: 1.0 }
    }

    pub fn strength_scale(&self) -> f64 {
        match *self {
            DielectricModel::Constant { strength_scale, .. }
            | DielectricModel::Drude { strength_scale, .. }
            | DielectricModel::Lorentz { strength_scale, .. } => strength_scale,
        }
    }

    pub fn with_strength_scale(mut self, s: f64) -> Self {
        match &mut self {
            DielectricModel::Constant { strength_scale, .. }
            | DielectricModel::Drude { strength_scale, .. }
            | DielectricModel::Lorentz { strength_scale, .. } => *strength_scale = s,
        }
        self
    }

    pub fn is_idealized(&self) -> bool {
        matches!(self, DielectricModel::Constant { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        let fine = match *self {
            DielectricModel::Constant { chi0, strength_scale } => ok(chi0) && ok(strength_scale),
            DielectricModel::Drude { omega_p, gamma, strength_scale } => ok(omega_p) && ok(gamma) && ok(strength_scale),
            DielectricModel::Lorentz { omega_p, omega_0, gamma, strength_scale } => {
                ok(omega_p) && ok(omega_0) && ok(gamma) && ok(strength_scale)
            }
        };
        if fine {
            Ok(())
        } else {
            Err(invalid("model", format!("parameters must be finite and non-negative: {self:?}")))
        }
    }
}

/// chi(i xi) for `xi > 0`.
pub fn chi_at(model: &DielectricModel, xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(invalid("xi", format!("imaginary frequency must be positive, got {xi}")));
    }
    let chi = match *model {
        DielectricModel::Constant { chi0, strength_scale } => strength_scale * chi0,
        DielectricModel::Drude { omega_p, gamma, strength_scale } => strength_scale * omega_p * omega_p / (xi * (xi + gamma)),
        DielectricModel::Lorentz { omega_p, omega_0, gamma, strength_scale } => {
            strength_scale * omega_p * omega_p / (omega_0 * omega_0 + xi * xi + gamma * xi)
        }
    };
    if chi < 0.0 || chi.is_nan() {
        return Err(Error::NegativeSusceptibility { chi, xi });
    }
    Ok(chi)
}

/// Geometric ladder of strength scales, `factor` per step, from `base`.
pub fn strength_ladder(base: &DielectricModel, steps: usize, factor: f64) -> Result<Vec<DielectricModel>> {
    if steps < 2 {
        return Err(invalid("steps", format!("a ladder needs at least 2 steps, got {steps}")));
    }
    if !(factor > 1.0 && factor.is_finite()) {
        return Err(invalid("factor", format!("ladder factor must exceed 1, got {factor}")));
    }
    let s0 = base.strength_scale();
    Ok((0..steps).map(|k| base.with_strength_scale(s0 * factor.powi(k as i32))).collect())
}

/// Ladder with a factor of 10 per step, approaching the Dirichlet limit.
pub fn dirichlet_limit_schedule(base: &DielectricModel, steps: usize) -> Result<Vec<DielectricModel>> {
    strength_ladder(base, steps, 10.0)
}
