use casimir_core::energy::QuadratureSpec;
use casimir_core::theorem::*;
use casimir_core::*;

fn one_voxel(chi: f64) -> Scenario {
    let body = VoxelBody::from_centers("A", vec![[0.0; 3]], 0.5, 1).unwrap();
    Scenario::mirror("1d", Kernel::Scalar { dim: 1 }, body, DielectricModel::constant(chi), QuadratureSpec::gauss_legendre(32))
}

fn coarse(name: &str) -> Scenario {
    let mut cfg = preset(name).unwrap();
    if name == "hemispheres" {
        cfg.h = 0.25;
    }
    cfg.build().unwrap()
}

const FREQS: [f64; 5] = [0.1, 0.3, 1.0, 3.0, 10.0];

#[test]
fn single_voxel_gabj_value() {
    let sc = one_voxel(1.0);
    let (a, xi) = (1.2, 0.8);
    let m = energy::gabj_matrix(&sc, &sc.place(a).unwrap(), xi).unwrap();
    assert!((m[(0, 0)] - (-xi * a).exp() / (2.0 * xi) * 0.5).abs() < 1e-15);
    assert!(check_gabj_positive(&sc, a, xi).passed);
    assert!(check_gabj_decreasing(&sc, a, xi, 0.05).passed);
}

#[test]
fn hemisphere_proof_steps() {
    let sc = coarse("hemispheres");
    for xi in FREQS {
        for r in [
            check_gabj_positive(&sc, 0.5, xi),
            check_gabj_decreasing(&sc, 0.5, xi, 0.025),
            check_y_spectrum(&sc, 0.5, xi),
            check_eigen_monotone(&sc, 0.5, xi, 0.025),
            check_eigenvalue_bounds(&sc, 0.5, xi),
        ] {
            assert!(r.passed, "{}", r.to_line());
            assert!(r.margin.is_finite() && r.margin > 0.0);
        }
    }
}

#[test]
fn em_cube_gabj_positive_with_sign_rule() {
    let sc = coarse("em-cubes");
    for xi in FREQS {
        let r = check_gabj_positive(&sc, 0.5, xi);
        assert!(r.passed, "{}", r.to_line());
    }
}

#[test]
fn quadratic_form_trials() {
    for name in ["hemispheres", "em-cubes"] {
        let sc = coarse(name);
        let r = check_quadratic_form(&sc, 1.0, &[0.25, 0.5, 1.0, 2.0], 20, 7);
        assert!(r.passed, "{}", r.to_line());
    }
    // A basis vector reduces the form to a diagonal entry.
    let sc = one_voxel(1.0);
    assert!(check_quadratic_form(&sc, 0.5, &[1.0, 2.0], 1, 0).passed);
}

#[test]
fn eigenvalue_bounds_cover_born_strong_and_asymmetric_cases() {
    let born = one_voxel(1e-3);
    let r = check_eigenvalue_bounds(&born, 1.0, 1.0);
    assert!(r.passed, "{}", r.to_line());
    assert!(energy::coupling_eigenvalues(&born, 1.0, 1.0).unwrap().iter().all(|&l| l < 1e-6));

    let strong = coarse("1d-dirichlet-ladder").scaled(100.0);
    let r = check_eigenvalue_bounds(&strong, 0.6, 0.3);
    assert!(r.passed, "{}", r.to_line());

    let h = 0.25;
    let ball = geometry::voxelize(&ShapeSpec::Ball { center: vec![0.0, 0.0, -0.5], radius: 0.4 }, h).unwrap();
    let cube = geometry::voxelize(&ShapeSpec::Box { lo: vec![-0.5, -0.5, 0.0], hi: vec![0.5, 0.25, 0.75] }, h).unwrap();
    let pair = Scenario::pair(
        "ball-box",
        Kernel::Scalar { dim: 3 },
        (ball, DielectricModel::constant(6.0)),
        (cube, DielectricModel::drude(4.0, 0.3)),
        QuadratureSpec::gauss_legendre(16),
    );
    for xi in FREQS {
        let r = check_eigenvalue_bounds(&pair, 0.3, xi);
        assert!(r.passed, "{}", r.to_line());
    }
}

#[test]
fn attraction_on_mirror_scenarios() {
    let sc = coarse("hemispheres");
    let r = check_monotonic_attraction(&sc, &[0.25, 0.5, 0.75, 1.0], &[0.3, 3.0]);
    assert!(r.passed, "{}", r.to_line());
    let r = check_finite_t_monotone(&sc, &[0.25, 0.5, 0.75, 1.0], 4.0);
    assert!(r.passed, "{}", r.to_line());
    assert!(check_monotonic_attraction(&sc, &[0.5, 0.25, 1.0, 2.0], &[1.0]).margin < 0.0);
}

#[test]
fn body_before_a_mirror_attracts() {
    let body = VoxelBody::from_centers("A", vec![[0.0; 3]], 0.5, 1).unwrap();
    let sc = Scenario::mirror_plane("1d-plane", Kernel::Scalar { dim: 1 }, body, DielectricModel::constant(10.0), QuadratureSpec::gauss_legendre(32));
    let r = check_mirror_plane_attraction(&sc, &[1.0, 1.5, 2.0, 3.0]);
    assert!(r.passed, "{}", r.to_line());

    let blocks = coarse("mirror-plane");
    let r = check_mirror_plane_attraction(&blocks, &[0.25, 0.5, 1.0, 2.0]);
    assert!(r.passed, "{}", r.to_line());

    // χ → 0 from below, linearly: one factor of T per round trip.
    let e1 = energy::energy(&sc.scaled(1e-3), 1.0).unwrap().value;
    let e2 = energy::energy(&sc.scaled(1e-6), 1.0).unwrap().value;
    assert!(e1 < 0.0 && e2 < 0.0);
    assert!((e2 / e1 / 1e-3 - 1.0).abs() < 0.01, "{e1} {e2}");
}

#[test]
fn corrupted_susceptibility_is_caught() {
    let sc = coarse("hemispheres");
    let bad = sc.corrupted();
    let failures = FREQS.iter().filter(|&&xi| !check_eigenvalue_bounds(&bad, 0.5, xi).passed).count();
    assert!(failures > 0);
    let ctl = negative_control(&sc, &[0.5], &FREQS);
    assert!(ctl.passed, "{}", ctl.to_line());
}

#[test]
fn suite_reports_are_complete_and_sorted() {
    let sc = coarse("em-cubes");
    let cfg = CheckConfig { frequencies: vec![0.5, 2.0], trials: 5, negative_control: true, ..CheckConfig::default() };
    let reports = proof_step_suite(&sc, &[0.5, 1.0], &cfg, 11);
    // 5 checks × 2 ξ × 2 a, 2 quadratic forms, 1 control.
    assert_eq!(reports.len(), 23);
    assert!(reports.iter().all(|r| r.passed), "{:#?}", reports.iter().filter(|r| !r.passed).collect::<Vec<_>>());
    let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(reports.iter().all(|r| r.to_line().split('\t').count() == 7));
}

#[test]
fn checks_on_two_body_layouts_report_errors_not_panics() {
    let sc = coarse("hemispheres");
    let pl = sc.place(0.5).unwrap();
    let pair = Scenario::pair("pair", sc.kernel.clone(), (sc.body_a.clone(), sc.model_a), (pl.body_b.translated(2, -0.5), sc.model_a), sc.quadrature.clone());
    let r = check_gabj_positive(&pair, 0.5, 1.0);
    assert!(!r.passed && r.detail.starts_with("error"));
}

#[test]
fn cylinder_confined_pair_satisfies_decrease() {
    let mut cfg = preset("piston-rect").unwrap();
    cfg.h = 0.5;
    let sc = cfg.build().unwrap();
    for xi in [0.3, 3.0] {
        let r = check_gabj_decreasing(&sc, 0.5, xi, 0.025);
        assert!(r.passed, "{}", r.to_line());
    }
}
