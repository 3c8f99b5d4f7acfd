//! Benchmark fixtures. Run with `cargo bench -p casimir-bench`.

use casimir_core::{preset, Scenario};

/// Builds a preset, optionally at a coarser voxel size.
pub fn scenario(name: &str, h: Option<f64>) -> Scenario {
    let mut cfg = preset(name).expect("known preset");
    if let Some(h) = h {
        cfg.h = h;
    }
    cfg.build().expect("preset builds")
}
