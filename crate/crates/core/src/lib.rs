//! Casimir interaction energies between dielectric bodies.
//!
//! Bodies are voxelized, the free propagator is assembled per imaginary
//! frequency, and the energy is the frequency integral of
//! `log det(1 - T_A G_AB T_B G_BA)`. The [`theorem`] module checks, on concrete
//! discretizations, each step of the argument that mirror-symmetric pairs
//! attract.

pub mod cylinder;
pub mod dielectric;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod greens;
pub mod linalg;
pub mod presets;
pub mod scattering;
pub mod scenario;
pub mod theorem;

pub use cylinder::{CylinderSpec, ModeCutoff, WallBc};
pub use dielectric::DielectricModel;
pub use energy::{EnergyResult, ForceResult, QuadRule, QuadratureSpec};
pub use error::{Error, Result};
pub use geometry::{ReflectionOperator, ReflectionPlane, ShapeSpec, SignRule, VoxelBody};
pub use greens::{Kernel, KernelMatrix};
pub use presets::{preset, PRESET_NAMES};
pub use scattering::ScatteringOperator;
pub use scenario::{BodyConfig, CheckConfig, FieldKind, Layout, Placement, Scenario, ScenarioConfig};
pub use theorem::CheckReport;
