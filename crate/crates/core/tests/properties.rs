use casimir_core::energy::{self, QuadratureSpec};
use casimir_core::geometry::reflect_body;
use casimir_core::linalg::{asymmetry, max_abs, sym_eigenvalues};
use casimir_core::*;
use proptest::prelude::*;
use proptest::sample::subsequence;

const H: f64 = 0.25;

fn lattice() -> Vec<[f64; 3]> {
    let mut pts = vec![];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..3 {
                pts.push([(i as f64 - 1.5) * H, (j as f64 - 1.5) * H, -(k as f64 + 0.5) * H]);
            }
        }
    }
    pts
}

fn blob() -> impl Strategy<Value = VoxelBody> {
    subsequence(lattice(), 1..10).prop_map(|c| VoxelBody::from_centers("A", c, H, 3).unwrap())
}

fn mirror(body: VoxelBody, chi: f64, em: bool) -> Scenario {
    let (kernel, model) = if em {
        (Kernel::Em, DielectricModel::lorentz(chi.sqrt(), 1.0, 0.5))
    } else {
        (Kernel::Scalar { dim: 3 }, DielectricModel::constant(chi))
    };
    Scenario::mirror("blob", kernel, body, model, QuadratureSpec::gauss_legendre(8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gabj_is_symmetric_and_positive(body in blob(), em in any::<bool>(), a in 0.1f64..2.0, xi in 0.05f64..8.0) {
        let sc = mirror(body, 2.0, em);
        let m = energy::gabj_matrix(&sc, &sc.place(a).unwrap(), xi).unwrap();
        let scale = max_abs(m.as_ref());
        prop_assert!(asymmetry(m.as_ref()) <= 1e-12 * scale);
        let ev = sym_eigenvalues(m.as_ref()).unwrap();
        prop_assert!(ev.iter().all(|&l| l >= -1e-12 * scale), "{ev:?}");
    }

    #[test]
    fn reflection_is_an_involution(body in blob(), a in 0.1f64..3.0) {
        let plane = ReflectionPlane::for_separation(2, a);
        let once = reflect_body(&body, &plane).unwrap();
        let twice = reflect_body(&once, &plane).unwrap();
        prop_assert_eq!(&twice.centers, &body.centers);
        prop_assert!(once.min_face(2) > plane.offset);
    }

    #[test]
    fn integrand_never_positive(body in blob(), em in any::<bool>(), chi in 0.01f64..50.0, a in 0.1f64..2.0, xi in 0.01f64..20.0) {
        let sc = mirror(body, chi, em);
        prop_assert!(energy::integrand(&sc, a, xi).unwrap() <= 0.0);
    }

    #[test]
    fn coupling_eigenvalues_stay_in_unit_interval(body in blob(), em in any::<bool>(), chi in 0.01f64..200.0, a in 0.1f64..2.0, xi in 0.01f64..20.0) {
        let sc = mirror(body, chi, em);
        let ev = energy::coupling_eigenvalues(&sc, a, xi).unwrap();
        prop_assert!(ev.iter().all(|&l| (-1e-12..1.0).contains(&l)), "{ev:?}");
    }
}
