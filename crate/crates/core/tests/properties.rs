use dratio_core::geometry::{SymmetricBody, Vector};
use dratio_core::john::{john_inscribed, mvee_symmetric};
use dratio_core::linalg::Matrix;
use dratio_core::ratio::{denominator, denominator_mc_lower, ratio};
use dratio_core::sphere::{expected_abs_dot, expected_abs_dot_along, sample_sphere};
use dratio_core::{gen_instance, rng_from_seed, BodyKind, Instance};
use proptest::prelude::*;
use rand::Rng;

fn kind() -> impl Strategy<Value = BodyKind> {
    prop_oneof![Just(BodyKind::Polytope), Just(BodyKind::Ellipsoid)]
}

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=5, 0usize..=4, 1usize..=6, kind(), any::<u64>())
        .prop_map(|(m, extra, n, kind, seed)| gen_instance(m, m + extra, n, kind, seed).unwrap())
}

/// Diagonally dominated random matrix, comfortably invertible.
fn well_conditioned(m: usize, seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    Matrix::from_fn(m, m, |i, j| {
        let x: f64 = rng.random_range(-1.0..1.0);
        x + if i == j { 2.5 } else { 0.0 }
    })
}

fn directions(m: usize, n: usize, seed: u64) -> Vec<Vector> {
    let mut rng = rng_from_seed(seed);
    (0..n).map(|_| sample_sphere(m, &mut rng).unwrap()).collect()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_is_symmetric_homogeneous_subadditive(inst in instance(), seed in any::<u64>(), c in 0.0f64..10.0) {
        let k = &inst.body;
        let dirs = directions(inst.dim(), 20, seed);
        for pair in dirs.windows(2) {
            let (u, w) = (&pair[0], &pair[1]);
            let su = k.support(u).unwrap();
            prop_assert!(close(su, k.support(&u.neg()).unwrap(), 1e-12));
            prop_assert!(close(k.support(&u.scaled(c)).unwrap(), c * su, 1e-10) || c == 0.0);
            prop_assert!(k.support(&u.add(w)).unwrap() <= su + k.support(w).unwrap() + 1e-10);
        }
    }

    #[test]
    fn membership_is_dual_to_support(inst in instance(), seed in any::<u64>(), t in 0.0f64..1.5) {
        let k = &inst.body;
        let m = inst.dim();
        let mut rng = rng_from_seed(seed);
        for _ in 0..5 {
            let u = sample_sphere(m, &mut rng).unwrap();
            // Radial point at gauge t.
            let x = u.scaled(t / k.gauge(&u).unwrap());
            let inside = k.contains(&x, 0.0).unwrap();
            if t < 1.0 - 1e-9 { prop_assert!(inside); }
            if t > 1.0 + 1e-9 { prop_assert!(!inside); }
            prop_assert!(k.contains(&x.neg(), 1e-9).unwrap() == k.contains(&x, 1e-9).unwrap());
            if inside {
                for d in directions(m, 10, seed ^ 1) {
                    prop_assert!(d.dot(&x) <= k.support(&d).unwrap() + 1e-10);
                }
            }
        }
    }

    #[test]
    fn linear_image_support_consistency(inst in instance(), seed in any::<u64>()) {
        let m = inst.dim();
        let b = well_conditioned(m, seed);
        let img = inst.body.linear_image(&b).unwrap();
        for u in directions(m, 20, seed ^ 7) {
            let bt_u = Vector::from_dvector(b.transpose() * u.as_dvector()).unwrap();
            prop_assert!(close(img.support(&u).unwrap(), inst.body.support(&bt_u).unwrap(), 1e-10));
        }
    }

    #[test]
    fn ratio_sandwich_and_bound(inst in instance()) {
        let r = ratio(&inst.vectors, &inst.body).unwrap();
        prop_assert!(r.ratio >= 1.0 - 1e-10);
        prop_assert!(r.ratio <= inst.vectors.len() as f64 + 1e-10);
        prop_assert!(r.ratio <= r.bound);
        prop_assert_eq!(r.coefficient, 2.0 * r.ratio);
    }

    #[test]
    fn ratio_is_transform_invariant(inst in instance(), seed in any::<u64>()) {
        // h ↦ Bh on the body pairs with v ↦ B⁻ᵀv on the vectors.
        let b = well_conditioned(inst.dim(), seed);
        let b_inv_t = b.clone().try_inverse().unwrap().transpose();
        let img = inst.body.linear_image(&b).unwrap();
        let vs = inst.vectors.map(|v| Vector::from_dvector(&b_inv_t * v.as_dvector()).unwrap()).unwrap();
        let r0 = ratio(&inst.vectors, &inst.body).unwrap().ratio;
        let r1 = ratio(&vs, &img).unwrap().ratio;
        prop_assert!(close(r0, r1, 1e-8), "{} vs {}", r0, r1);
    }

    #[test]
    fn ratio_is_scale_invariant(inst in instance(), c in 0.01f64..100.0) {
        let r0 = ratio(&inst.vectors, &inst.body).unwrap().ratio;
        let scaled_v = inst.vectors.map(|v| v.scaled(c)).unwrap();
        prop_assert!(close(ratio(&scaled_v, &inst.body).unwrap().ratio, r0, 1e-10));
        let scaled_k: SymmetricBody = inst.body.linear_image(&(Matrix::identity(inst.dim(), inst.dim()) * c)).unwrap();
        prop_assert!(close(ratio(&inst.vectors, &scaled_k).unwrap().ratio, r0, 1e-10));
    }

    #[test]
    fn mc_lower_never_exceeds_denominator(inst in instance(), seed in any::<u64>()) {
        let exact = denominator(&inst.vectors, &inst.body).unwrap();
        let lo = denominator_mc_lower(&inst.vectors, &inst.body, 200, seed).unwrap();
        prop_assert!(lo <= exact * (1.0 + 1e-12));
    }

    #[test]
    fn mvee_encloses_and_john_is_inside(m in 2usize..=5, extra in 0usize..=6, seed in any::<u64>()) {
        let inst = gen_instance(m, m + extra, 1, BodyKind::Polytope, seed).unwrap();
        let gens = inst.body.as_polytope().unwrap().generators();
        let mvee = mvee_symmetric(gens, 1e-6, 100 * gens.len() * m).unwrap();
        for g in gens.iter() {
            let g = g.as_dvector();
            prop_assert!(g.dot(&(mvee.ellipsoid.shape() * g)) <= 1.0 + 1e-10);
        }
        prop_assert!((mvee.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let j = john_inscribed(&inst.body, 1e-6, 200, seed).unwrap();
        prop_assert!(j.outer_ok && j.inner_ok);
        let ata = j.factor.transpose() * &j.factor;
        prop_assert!((ata - j.inner.shape()).abs().max() <= 1e-10 * j.inner.shape().abs().max());
        prop_assert!((&j.factor - j.factor.transpose()).abs().max() < 1e-12 * j.factor.abs().max());
        for u in directions(m, 50, seed ^ 3) {
            let sk = inst.body.support(&u).unwrap();
            prop_assert!(j.inner.support(&u) <= sk + 1e-8 * sk);
        }
    }

    #[test]
    fn john_is_equivariant_and_deterministic(m in 2usize..=5, extra in 0usize..=4, seed in any::<u64>()) {
        let eps = 1e-6;
        let inst = gen_instance(m, m + extra, 1, BodyKind::Polytope, seed).unwrap();
        let b = well_conditioned(m, seed ^ 5);
        let j0 = john_inscribed(&inst.body, eps, 50, seed).unwrap();
        prop_assert_eq!(&j0, &john_inscribed(&inst.body, eps, 50, seed).unwrap());
        let j1 = john_inscribed(&inst.body.linear_image(&b).unwrap(), eps, 50, seed).unwrap();
        let binv = b.try_inverse().unwrap();
        let expect = binv.transpose() * j0.inner.shape() * &binv;
        let rel = (j1.inner.shape() - &expect).abs().max() / expect.abs().max();
        prop_assert!(rel <= 2.0 * eps, "relative deviation {}", rel);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sphere_expectation_is_rotation_invariant_and_bracketed(m in 2usize..=12, seed in any::<u64>()) {
        let n = 100_000;
        let a = expected_abs_dot(m, n, seed).unwrap();
        let u = sample_sphere(m, &mut rng_from_seed(seed ^ 9)).unwrap();
        let b = expected_abs_dot_along(&u, n, seed ^ 11).unwrap();
        let combined = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        prop_assert!((a.mean - b.mean).abs() <= 5.0 * combined);
        let root_m = (m as f64).sqrt();
        let c = dratio_core::c_m(m).unwrap();
        prop_assert!(a.mean >= c / root_m - 5.0 * a.stderr);
        prop_assert!(a.mean <= 1.0 / root_m + 5.0 * a.stderr);
        prop_assert_eq!(a, expected_abs_dot(m, n, seed).unwrap());
    }
}
