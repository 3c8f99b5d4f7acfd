//! Scenario descriptions: the declarative config and its compiled form.
//!
//! Units are natural (ħ = c = 1). Lengths are in an arbitrary unit L,
//! frequencies in 1/L, energies in 1/L.

use serde::{Deserialize, Serialize};

use crate::cylinder::CylinderSpec;
use crate::dielectric::DielectricModel;
use crate::energy::QuadratureSpec;
use crate::error::{Error, Result};
use crate::geometry::{
    check_separated, reflect_body, reflection_matrix, voxelize_labeled, ReflectionOperator, ReflectionPlane, ShapeSpec,
    SignRule, VoxelBody,
};
use crate::greens::Kernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Scalar,
    Em,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub shape: ShapeSpec,
    pub model: DielectricModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderSpec {
    pub steps: usize,
    #[serde(default = "ten")]
    pub factor: f64,
}

fn ten() -> f64 {
    10.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    /// Imaginary frequencies at which the fixed-frequency checks run.
    #[serde(default = "default_frequencies")]
    pub frequencies: Vec<f64>,
    /// Random vectors for the quadratic-form check.
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Step for the ∂_a checks, as a fraction of the separation.
    #[serde(default = "default_delta")]
    pub delta_fraction: f64,
    /// Also run the sign-flipped-χ control, which is expected to fail.
    #[serde(default)]
    pub negative_control: bool,
}

fn default_frequencies() -> Vec<f64> {
    vec![0.1, 0.3, 1.0, 3.0, 10.0]
}

fn default_trials() -> usize {
    20
}

fn default_delta() -> f64 {
    0.05
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            frequencies: default_frequencies(),
            trials: default_trials(),
            delta_fraction: default_delta(),
            negative_control: false,
        }
    }
}

/// Declarative problem description, read from TOML.
///
/// * `mirror = true`: one body A; B is its reflection through `x_n = a/2`.
/// * `mirror_plane = true`: one body in front of a Dirichlet mirror at `x_n = a/2`.
/// * neither: two bodies; the second is translated by `a` along the normal axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub id: String,
    pub field: FieldKind,
    pub dimension: usize,
    pub h: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_axis: Option<usize>,
    #[serde(default)]
    pub mirror: bool,
    #[serde(default)]
    pub mirror_plane: bool,
    pub separations: Vec<f64>,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default)]
    pub seed: u64,
    pub quadrature: QuadratureSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<LadderSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cylinder: Option<CylinderSpec>,
    #[serde(default)]
    pub checks: CheckConfig,
    pub bodies: Vec<BodyConfig>,
}

fn cfg_err(field: &str, reason: impl Into<String>) -> Error {
    Error::Config { field: field.to_string(), reason: reason.into() }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
            let path = e.span().map(|s| format!("bytes {}..{}", s.start, s.end)).unwrap_or_default();
            cfg_err(if path.is_empty() { "<document>" } else { &path }, e.message().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn normal_axis(&self) -> usize {
        self.normal_axis.unwrap_or(self.dimension.saturating_sub(1))
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(cfg_err("id", "must not be empty"));
        }
        if !(1..=3).contains(&self.dimension) {
            return Err(cfg_err("dimension", format!("must be 1, 2 or 3, got {}", self.dimension)));
        }
        if self.field == FieldKind::Em && self.dimension != 3 {
            return Err(cfg_err("dimension", "em fields require dimension = 3"));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(cfg_err("h", format!("must be positive, got {}", self.h)));
        }
        if self.normal_axis() >= self.dimension {
            return Err(cfg_err("normal_axis", format!("must be below dimension {}", self.dimension)));
        }
        if self.mirror && self.mirror_plane {
            return Err(cfg_err("mirror_plane", "cannot be combined with mirror"));
        }
        let want = if self.mirror || self.mirror_plane { 1 } else { 2 };
        if self.bodies.len() != want {
            let why = if want == 1 {
                "mirror scenarios take exactly one body; its image is generated"
            } else {
                "two-body scenarios take exactly two bodies"
            };
            return Err(cfg_err("bodies", format!("{why} (got {})", self.bodies.len())));
        }
        for (k, b) in self.bodies.iter().enumerate() {
            if b.shape.dim() != self.dimension {
                return Err(cfg_err(&format!("bodies[{k}].shape"), format!("has dimension {}, expected {}", b.shape.dim(), self.dimension)));
            }
            b.model.validate().map_err(|e| cfg_err(&format!("bodies[{k}].model"), e.to_string()))?;
        }
        if self.separations.is_empty() {
            return Err(cfg_err("separations", "must not be empty"));
        }
        if self.separations.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
            return Err(cfg_err("separations", "all separations must be positive"));
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(cfg_err("temperature", "must be zero or positive"));
        }
        self.quadrature.validate().map_err(|e| cfg_err("quadrature", e.to_string()))?;
        if let Some(l) = &self.ladder {
            if l.steps < 2 || !(l.factor > 1.0) {
                return Err(cfg_err("ladder", "needs steps >= 2 and factor > 1"));
            }
        }
        if let Some(c) = &self.cylinder {
            if self.field != FieldKind::Scalar || self.dimension != 3 {
                return Err(cfg_err("cylinder", "cylinder confinement is implemented for scalar fields in 3 dimensions"));
            }
            c.validate().map_err(|e| cfg_err("cylinder", e.to_string()))?;
        }
        if self.checks.frequencies.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(cfg_err("checks.frequencies", "all frequencies must be positive"));
        }
        if !(self.checks.delta_fraction > 0.0 && self.checks.delta_fraction < 0.1) {
            return Err(cfg_err("checks.delta_fraction", "must be in (0, 0.1)"));
        }
        Ok(())
    }

    pub fn kernel(&self) -> Kernel {
        match (&self.cylinder, self.field) {
            (Some(spec), _) => Kernel::Cylinder { spec: spec.clone(), axis: self.normal_axis() },
            (None, FieldKind::Em) => Kernel::Em,
            (None, FieldKind::Scalar) => Kernel::Scalar { dim: self.dimension },
        }
    }

    pub fn build(&self) -> Result<Scenario> {
        self.validate()?;
        let axis = self.normal_axis();
        let bodies = self
            .bodies
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let label = b.label.clone().unwrap_or_else(|| ["A", "B"][k].to_string());
                voxelize_labeled(&b.shape, self.h, &label, self.seed).map_err(|e| cfg_err(&format!("bodies[{k}].shape"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let layout = if self.mirror {
            Layout::Mirror
        } else if self.mirror_plane {
            Layout::MirrorPlane
        } else {
            Layout::Pair
        };
        let mut it = bodies.into_iter();
        let body_a = it.next().expect("validated");
        let body_b = it.next();
        let model_a = self.bodies[0].model;
        let model_b = self.bodies.get(1).map_or(model_a, |b| b.model);
        let s = Scenario {
            id: self.id.clone(),
            kernel: self.kernel(),
            layout,
            normal_axis: axis,
            body_a,
            model_a,
            body_b,
            model_b,
            quadrature: self.quadrature.clone(),
            corrupt_b: false,
        };
        for &a in &self.separations {
            s.place(a).map_err(|e| cfg_err("separations", format!("a = {a}: {e}")))?;
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Mirror,
    Pair,
    MirrorPlane,
}

/// A compiled scenario: bodies, models, kernel and layout. Positions at a
/// given separation come from [`Scenario::place`].
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub kernel: Kernel,
    pub layout: Layout,
    pub normal_axis: usize,
    /// Body A, at its fixed position.
    pub body_a: VoxelBody,
    pub model_a: DielectricModel,
    /// Template for B in two-body layouts; translated by `a` when placed.
    pub body_b: Option<VoxelBody>,
    pub model_b: DielectricModel,
    pub quadrature: QuadratureSpec,
    /// Flip the sign of χ on body B. Violates the theorem's hypotheses.
    pub corrupt_b: bool,
}

/// The two bodies at one separation.
#[derive(Debug, Clone)]
pub struct Placement {
    pub a: f64,
    pub body_b: VoxelBody,
    pub plane: Option<ReflectionPlane>,
    pub reflection: Option<ReflectionOperator>,
    pub gap: f64,
}

impl Scenario {
    pub fn mirror(id: &str, kernel: Kernel, body: VoxelBody, model: DielectricModel, quadrature: QuadratureSpec) -> Self {
        let axis = body.dim - 1;
        Scenario {
            id: id.to_string(),
            kernel,
            layout: Layout::Mirror,
            normal_axis: axis,
            body_a: body,
            model_a: model,
            body_b: None,
            model_b: model,
            quadrature,
            corrupt_b: false,
        }
    }

    pub fn mirror_plane(id: &str, kernel: Kernel, body: VoxelBody, model: DielectricModel, quadrature: QuadratureSpec) -> Self {
        Scenario { layout: Layout::MirrorPlane, ..Scenario::mirror(id, kernel, body, model, quadrature) }
    }

    pub fn pair(
        id: &str,
        kernel: Kernel,
        a: (VoxelBody, DielectricModel),
        b: (VoxelBody, DielectricModel),
        quadrature: QuadratureSpec,
    ) -> Self {
        let axis = a.0.dim - 1;
        Scenario {
            id: id.to_string(),
            kernel,
            layout: Layout::Pair,
            normal_axis: axis,
            body_a: a.0,
            model_a: a.1,
            body_b: Some(b.0),
            model_b: b.1,
            quadrature,
            corrupt_b: false,
        }
    }

    pub fn is_mirror(&self) -> bool {
        matches!(self.layout, Layout::Mirror | Layout::MirrorPlane)
    }

    pub fn sign_rule(&self) -> SignRule {
        match self.kernel {
            Kernel::Em => SignRule::Vector,
            _ => SignRule::Scalar,
        }
    }

    /// Multiplies the strength scale of every body's model by `factor`.
    pub fn scaled(&self, factor: f64) -> Scenario {
        let mut s = self.clone();
        s.model_a = s.model_a.with_strength_scale(s.model_a.strength_scale() * factor);
        s.model_b = s.model_b.with_strength_scale(s.model_b.strength_scale() * factor);
        s
    }

    /// Same scenario with χ on B sign-flipped.
    pub fn corrupted(&self) -> Scenario {
        let mut s = self.clone();
        s.corrupt_b = true;
        s.id = format!("{}+corrupted-chi", self.id);
        s
    }

    pub fn place(&self, a: f64) -> Result<Placement> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(crate::error::invalid("a", format!("separation must be positive, got {a}")));
        }
        match self.layout {
            Layout::Mirror | Layout::MirrorPlane => {
                let plane = ReflectionPlane::for_separation(self.normal_axis, a);
                let body_b = reflect_body(&self.body_a, &plane)?;
                if self.body_a.max_face(self.normal_axis) >= plane.offset {
                    return Err(Error::CrossesPlane {
                        label: self.body_a.label.clone(),
                        axis: self.normal_axis,
                        extent: self.body_a.max_face(self.normal_axis),
                        plane: plane.offset,
                    });
                }
                let j = reflection_matrix(&self.body_a, &body_b, &plane, self.sign_rule())?;
                let gap = check_separated(&self.body_a, &body_b)?;
                Ok(Placement { a, body_b, plane: Some(plane), reflection: Some(j), gap })
            }
            Layout::Pair => {
                let tpl = self.body_b.as_ref().ok_or_else(|| crate::error::invalid("body_b", "two-body layout without B"))?;
                let body_b = tpl.translated(self.normal_axis, a);
                let gap = check_separated(&self.body_a, &body_b)?;
                Ok(Placement { a, body_b, plane: None, reflection: None, gap })
            }
        }
    }
}
