//! Built-in scenarios.

use crate::cylinder::{CylinderSpec, ModeCutoff, WallBc};
use crate::dielectric::DielectricModel;
use crate::energy::QuadratureSpec;
use crate::error::{Error, Result};
use crate::geometry::ShapeSpec;
use crate::scenario::{BodyConfig, CheckConfig, FieldKind, LadderSpec, ScenarioConfig};

pub const PRESET_NAMES: [&str; 7] =
    ["hemispheres", "em-cubes", "1d-dirichlet-ladder", "casimir-polder", "piston-rect", "mirror-plane", "random-mirror-blob"];

fn base(id: &str, field: FieldKind, dimension: usize, h: f64, separations: Vec<f64>, body: BodyConfig) -> ScenarioConfig {
    ScenarioConfig {
        id: id.to_string(),
        field,
        dimension,
        h,
        normal_axis: None,
        mirror: true,
        mirror_plane: false,
        separations,
        temperature: 0.0,
        seed: 0,
        quadrature: QuadratureSpec::gauss_legendre(32).with_tolerance(1e-3),
        ladder: None,
        cylinder: None,
        checks: CheckConfig::default(),
        bodies: vec![body],
    }
}

fn body(shape: ShapeSpec, model: DielectricModel) -> BodyConfig {
    BodyConfig { label: Some("A".into()), shape, model }
}

/// Unit hemisphere with its flat face on `z = 0`, dome towards `-z`.
pub fn hemisphere_shape(radius: f64) -> ShapeSpec {
    ShapeSpec::Hemisphere { center: vec![0.0, 0.0, 0.0], radius, axis: None }
}

/// Log-spaced separations from `lo` to `hi`, inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let cfg = match name {
        "hemispheres" => base(
            "hemispheres",
            FieldKind::Scalar,
            3,
            0.2,
            vec![0.2, 0.3, 0.45, 0.7, 1.0, 1.5],
            body(hemisphere_shape(1.0), DielectricModel::constant(4.0)),
        ),
        "em-cubes" => base(
            "em-cubes",
            FieldKind::Em,
            3,
            0.25,
            vec![0.25, 0.5, 0.75, 1.0, 1.5, 2.0],
            body(
                ShapeSpec::Box { lo: vec![-0.5, -0.5, -1.0], hi: vec![0.5, 0.5, 0.0] },
                DielectricModel::lorentz(2.0, 1.0, 0.5),
            ),
        ),
        "1d-dirichlet-ladder" => {
            let mut c = base(
                "1d-dirichlet-ladder",
                FieldKind::Scalar,
                1,
                0.5,
                vec![1.0, 2.0, 4.0],
                body(ShapeSpec::PointSet { points: vec![vec![0.0]] }, DielectricModel::constant(100.0)),
            );
            c.quadrature = QuadratureSpec::gauss_legendre(64).with_tolerance(1e-3);
            c.ladder = Some(LadderSpec { steps: 5, factor: 10.0 });
            c
        }
        "casimir-polder" => {
            let mut c = base(
                "casimir-polder",
                FieldKind::Scalar,
                3,
                0.05,
                log_spaced(2.0, 20.0, 6),
                body(ShapeSpec::Ball { center: vec![0.0, 0.0, 0.0], radius: 0.045 }, DielectricModel::constant(0.1)),
            );
            c.quadrature = QuadratureSpec::gauss_legendre(48).with_tolerance(1e-3);
            c
        }
        "piston-rect" => {
            let mut c = base(
                "piston-rect",
                FieldKind::Scalar,
                3,
                0.25,
                vec![0.25, 0.5, 0.75, 1.0, 1.5],
                body(
                    ShapeSpec::Hemisphere { center: vec![1.5, 1.5, 0.0], radius: 1.0, axis: None },
                    DielectricModel::constant(4.0),
                ),
            );
            c.cylinder = Some(CylinderSpec { lx: 3.0, ly: 3.0, wall: WallBc::Dirichlet, modes: ModeCutoff::Adaptive });
            c
        }
        "mirror-plane" => {
            let mut c = base(
                "mirror-plane",
                FieldKind::Scalar,
                3,
                0.25,
                vec![0.25, 0.5, 1.0, 2.0],
                body(ShapeSpec::PointSet { points: block_array() }, DielectricModel::constant(5.0)),
            );
            c.mirror = false;
            c.mirror_plane = true;
            c
        }
        "random-mirror-blob" => {
            let mut c = base(
                "random-mirror-blob",
                FieldKind::Scalar,
                3,
                0.25,
                vec![0.25, 0.5, 0.75, 1.0, 1.5],
                body(
                    ShapeSpec::Blob { lo: vec![-1.0, -1.0, -1.0], hi: vec![1.0, 1.0, 0.0], fill: 0.5, seed: None },
                    DielectricModel::constant(3.0),
                ),
            );
            c.seed = 20240917;
            c
        }
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// A 2×2 array of 2×2×2-voxel blocks, `h = 0.25`, top faces on `z = 0`.
fn block_array() -> Vec<Vec<f64>> {
    let across = [-0.875, -0.625, 0.625, 0.875];
    let mut pts = vec![];
    for &x in &across {
        for &y in &across {
            for z in [-0.375, -0.125] {
                pts.push(vec![x, y, z]);
            }
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap();
            cfg.build().unwrap();
            assert_eq!(ScenarioConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
        }
        assert!(matches!(preset("nope"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn voxel_counts() {
        let count = |n: &str| preset(n).unwrap().build().unwrap().body_a.len();
        assert_eq!(count("hemispheres"), 276);
        assert_eq!(count("em-cubes"), 64);
        assert_eq!(count("casimir-polder"), 8);
        assert_eq!(count("piston-rect"), 140);
        assert_eq!(count("mirror-plane"), 32);
    }
}
