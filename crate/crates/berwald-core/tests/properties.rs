//! Property-based invariants over randomized inputs.

use berwald_core::chart::FlatteningChart;
use berwald_core::domain::{origin, DomainSpec};
use berwald_core::linalg::{hermitian_eigen, hermitian_sqrt, singular_values};
use berwald_core::mat::ComplexMatrix;
use berwald_core::metric::metric;
use berwald_core::norm::{minkowski_f, minkowski_f_sv};
use berwald_core::phi::PhiProfile;
use berwald_core::sample::{sample_orthogonal, sample_point, sample_unitary};
use num_complex::Complex64;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(entry(), rows * cols)
        .prop_map(move |data| ComplexMatrix::from_slice(rows, cols, &data).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chart_roundtrip_is_exact_for_unit_weights(m in matrix(4, 4)) {
        // Type III: all chart coefficients are 0 or ±1.
        let spec = DomainSpec::type_iii(4, 0.0, 2).unwrap();
        let chart = FlatteningChart::new(&spec);
        let v = m.antisymmetrize();
        let rt = chart.unflatten(&chart.flatten(&v).unwrap()).unwrap();
        prop_assert_eq!(rt, v);
        // Type I likewise.
        let spec = DomainSpec::type_i(4, 4, 0.0, 2).unwrap();
        let chart = FlatteningChart::new(&spec);
        let rt = chart.unflatten(&chart.flatten(&m).unwrap()).unwrap();
        prop_assert_eq!(rt, m);
    }

    #[test]
    fn chart_roundtrip_type_ii_within_ulp(m in matrix(3, 3)) {
        // The √2 weight on off-diagonal slots round-trips to 1 ulp.
        let spec = DomainSpec::type_ii(3, 0.0, 2).unwrap();
        let chart = FlatteningChart::new(&spec);
        let v = m.symmetrize();
        let rt = chart.unflatten(&chart.flatten(&v).unwrap()).unwrap();
        for i in 0..3 {
            prop_assert_eq!(rt[(i, i)], v[(i, i)]);
            for j in 0..3 {
                let err = (rt[(i, j)] - v[(i, j)]).norm();
                prop_assert!(err <= 3.0 * f64::EPSILON * v[(i, j)].norm());
            }
        }
    }

    #[test]
    fn minkowski_norm_absolute_homogeneity(
        v in matrix(2, 3),
        lam_re in -2.0f64..2.0,
        lam_im in -2.0f64..2.0,
        t in 0.0f64..3.0,
    ) {
        let lam = Complex64::new(lam_re, lam_im);
        let f = minkowski_f(&v, t, 2).unwrap();
        let f_scaled = minkowski_f(&v.scale(lam), t, 2).unwrap();
        prop_assert!((f_scaled - lam.norm() * f).abs() <= 1e-12 * f_scaled.max(1e-12));
    }

    #[test]
    fn minkowski_norm_two_routes_agree(v in matrix(3, 4), t in 0.0f64..3.0, k in 2u32..5) {
        let a = minkowski_f(&v, t, k).unwrap();
        let b = minkowski_f_sv(&v, t, k).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.max(1e-12), "{} vs {}", a, b);
    }

    #[test]
    fn minkowski_norm_unitary_bi_invariance(v in matrix(2, 3), seed in 1u64..5000, t in 0.0f64..2.0) {
        let a = sample_unitary(2, seed);
        let b = sample_unitary(3, seed + 1);
        let f0 = minkowski_f(&v, t, 3).unwrap();
        let f1 = minkowski_f(&a.matmul(&v).matmul(&b), t, 3).unwrap();
        prop_assert!((f0 - f1).abs() <= 1e-10 * f0.max(1e-12));
        // Transposed variant with compatible unitary shapes.
        let a2 = sample_unitary(3, seed + 2);
        let b2 = sample_unitary(2, seed + 3);
        let f2 = minkowski_f(&a2.matmul(&v.transpose()).matmul(&b2), t, 3).unwrap();
        prop_assert!((f0 - f2).abs() <= 1e-10 * f0.max(1e-12));
    }

    #[test]
    fn membership_invariant_under_isotropy(seed in 0u64..2000) {
        let spec = DomainSpec::type_i(2, 3, 0.0, 2).unwrap();
        let z = sample_point(&spec, seed).unwrap();
        let a = sample_unitary(2, seed + 1);
        let b = sample_unitary(3, seed + 2);
        let moved = a.matmul(&z).matmul(&b.adjoint());
        let before = spec.contains(&z).unwrap();
        let after = spec.contains(&moved).unwrap();
        prop_assert!(after.inside);
        prop_assert!((before.margin - after.margin).abs() < 1e-10);

        // Congruence actions of the symmetric and skew classes.
        let spec = DomainSpec::type_ii(3, 0.0, 2).unwrap();
        let z = sample_point(&spec, seed).unwrap();
        let a = sample_unitary(3, seed + 7);
        let moved = a.matmul(&z).matmul(&a.transpose());
        let before = spec.contains(&z).unwrap();
        let after = spec.contains(&moved).unwrap();
        prop_assert!(after.inside);
        prop_assert!((before.margin - after.margin).abs() < 1e-10);

        let spec = DomainSpec::type_iii(4, 0.0, 2).unwrap();
        let z = sample_point(&spec, seed).unwrap();
        let a = sample_unitary(4, seed + 8);
        let moved = a.matmul(&z).matmul(&a.transpose());
        let before = spec.contains(&z).unwrap();
        let after = spec.contains(&moved).unwrap();
        prop_assert!(after.inside);
        prop_assert!((before.margin - after.margin).abs() < 1e-10);

        let spec = DomainSpec::type_iv(5, PhiProfile::Bergman).unwrap();
        let z = sample_point(&spec, seed).unwrap();
        let d = sample_orthogonal(5, seed + 3);
        let theta = seed as f64 * 0.01;
        let moved = z.matmul(&d).scale(Complex64::new(0.0, theta).exp());
        let before = spec.contains(&z).unwrap();
        let after = spec.contains(&moved).unwrap();
        prop_assert!(after.inside);
        prop_assert!((before.margin - after.margin).abs() < 1e-10);
    }

    #[test]
    fn sampled_points_have_positive_margin(seed in 0u64..1500) {
        for spec in [
            DomainSpec::type_i(2, 3, 0.0, 2).unwrap(),
            DomainSpec::type_ii(3, 0.0, 2).unwrap(),
            DomainSpec::type_iii(4, 0.0, 2).unwrap(),
            DomainSpec::type_iv(5, PhiProfile::Bergman).unwrap(),
        ] {
            let z = sample_point(&spec, seed).unwrap();
            prop_assert!(spec.contains(&z).unwrap().margin > 1e-6);
        }
    }

    #[test]
    fn hermitian_sqrt_squares_back(g in matrix(4, 4)) {
        let m = g.matmul(&g.adjoint()).add(&ComplexMatrix::identity(4).scale_re(0.3)).hermitize();
        let s = hermitian_sqrt(&m).unwrap();
        let err = s.matmul(&s).sub(&m).frobenius_norm() / m.frobenius_norm();
        prop_assert!(err < 1e-10, "err = {}", err);
    }

    #[test]
    fn singular_values_unitarily_invariant(v in matrix(2, 4), seed in 1u64..5000) {
        let a = sample_unitary(2, seed);
        let b = sample_unitary(4, seed + 1);
        let sv0 = singular_values(&v);
        let sv1 = singular_values(&a.matmul(&v).matmul(&b));
        for (x, y) in sv0.values.iter().zip(&sv1.values) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn eigenvalues_stable_under_conjugation(g in matrix(5, 5), seed in 1u64..5000) {
        let m = g.add(&g.adjoint()).scale_re(0.5);
        let u = sample_unitary(5, seed);
        let conj = u.adjoint().matmul(&m).matmul(&u);
        let e0 = hermitian_eigen(&m).unwrap();
        let e1 = hermitian_eigen(&conj.hermitize()).unwrap();
        for (x, y) in e0.values.iter().zip(&e1.values) {
            prop_assert!((x - y).abs() < 1e-9, "{} vs {}", x, y);
        }
    }

    #[test]
    fn metric_positive_on_nonzero_tangents(v in matrix(3, 3), t in 0.0f64..2.0) {
        let sym = v.symmetrize();
        prop_assume!(sym.frobenius_norm() > 1e-6);
        let spec = DomainSpec::type_ii(3, t, 2).unwrap();
        let value = metric(&spec, &origin(&spec), &sym).unwrap();
        prop_assert!(value.f > 0.0);
        prop_assert!((value.f * value.f - value.f_squared).abs() <= 1e-14 * value.f_squared);
    }
}
