//! Acceptance suite: one test per certified claim about the metric
//! families, run at the documented tolerances.  Each test prints a
//! `criterion NN ... PASS` line (visible with `--nocapture`); a failed
//! assertion fails the corresponding criterion.

use std::time::Instant;

use berwald_core::automorphism::{normalizer, transported_tangent};
use berwald_core::curvature::{bisectional, sectional, sectional_bounds};
use berwald_core::domain::{origin, DomainSpec};
use berwald_core::mat::{row_dot_h, row_dot_t, ComplexMatrix};
use berwald_core::metric::{bergman, cal_b, frak_b, metric, reference_norm_ck};
use berwald_core::norm::f_iv_norm;
use berwald_core::phi::PhiProfile;
use berwald_core::sample::{sample_orthogonal, sample_point, sample_tangent, sample_unitary};
use berwald_core::verify::{run_suite, Suite, SuiteConfig};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit(rows: usize, cols: usize, i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::unit(rows, cols, i, j)
}

fn skew_pair(q: usize, i: usize, j: usize) -> ComplexMatrix {
    unit(q, q, i, j).sub(&unit(q, q, j, i))
}

fn block_v0(q: usize) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(q, q);
    for b in 0..q / 2 {
        v[(2 * b, 2 * b + 1)] = c(1.0, 0.0);
        v[(2 * b + 1, 2 * b)] = c(-1.0, 0.0);
    }
    v
}

fn run_and_assert(suite: Suite, spec: &DomainSpec, samples: usize, seed: u64) {
    let mut cfg = SuiteConfig::for_suite(suite);
    cfg.samples = samples;
    cfg.seed = seed;
    let report = run_suite(suite, spec, &cfg).unwrap();
    let failures: Vec<_> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| {
            format!(
                "{} (margin {:.3e}, worst {})",
                c.name, c.margin, c.worst_case_inputs_digest
            )
        })
        .collect();
    assert!(
        failures.is_empty(),
        "{} suite on {}: {failures:?}",
        suite.name(),
        spec.kind_tag()
    );
}

#[test]
fn criterion_01_extremal_sectional_values() {
    // Type I (m=2, n=3, t=1, k=2).
    let spec = DomainSpec::type_i(2, 3, 1.0, 2).unwrap();
    let z0 = origin(&spec);
    let k = sectional(&spec, &z0, &unit(2, 3, 0, 0)).unwrap();
    assert!((k + 0.8).abs() < 1e-12, "K(0;E11) = {k}");
    let k = sectional(&spec, &z0, &unit(2, 3, 0, 0).add(&unit(2, 3, 1, 1))).unwrap();
    let expected = -0.8 * 2.0 / (2.0 + 2.0_f64.sqrt());
    assert!((k - expected).abs() < 1e-12, "{k} vs {expected}");

    // Type II (p=3, t=1, k=2).
    let spec = DomainSpec::type_ii(3, 1.0, 2).unwrap();
    let z0 = origin(&spec);
    let k = sectional(&spec, &z0, &unit(3, 3, 0, 0)).unwrap();
    assert!((k + 1.0).abs() < 1e-12, "K(0;E11) = {k}");
    let k = sectional(&spec, &z0, &ComplexMatrix::identity(3)).unwrap();
    let expected = -2.0 / (3.0 + 3.0_f64.sqrt());
    assert!((k - expected).abs() < 1e-12, "{k} vs {expected}");

    // Type III (q=4 and q=5, t=1, k=2).
    for q in [4usize, 5] {
        let spec = DomainSpec::type_iii(q, 1.0, 2).unwrap();
        let z0 = origin(&spec);
        let cq = (q - 1) as f64;
        let k = sectional(&spec, &z0, &skew_pair(q, 0, 1)).unwrap();
        let expected = -4.0 / cq * 2.0 / (2.0 + 2.0_f64.sqrt());
        assert!((k - expected).abs() < 1e-12, "q={q}: {k} vs {expected}");
        let k = sectional(&spec, &z0, &block_v0(q)).unwrap();
        let two_nu = 2.0 * (q / 2) as f64;
        let expected = -4.0 / cq * 2.0 / (two_nu + two_nu.sqrt());
        assert!((k - expected).abs() < 1e-12, "q={q}: {k} vs {expected}");
    }
    println!("criterion 01 (extremal sectional values): PASS");
}

#[test]
fn criterion_02_invariance_suite() {
    let start = Instant::now();
    let mut specs = vec![
        DomainSpec::type_i(2, 3, 1.0, 2).unwrap(),
        DomainSpec::type_ii(3, 1.0, 2).unwrap(),
        DomainSpec::type_iii(4, 1.0, 2).unwrap(),
        DomainSpec::type_iii(5, 1.0, 2).unwrap(),
    ];
    for profile in [
        PhiProfile::Bergman,
        PhiProfile::Kobayashi,
        PhiProfile::Sqrt1p,
    ] {
        specs.push(DomainSpec::type_iv(5, profile).unwrap());
    }
    for spec in &specs {
        run_and_assert(Suite::Invariance, spec, 200, 42);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "invariance batches took {elapsed:.2}s");
    println!("criterion 02 (invariance suite, {elapsed:.2}s): PASS");
}

#[test]
fn criterion_03_strong_pseudoconvexity() {
    let specs = [
        DomainSpec::type_i(2, 3, 1.0, 2).unwrap(),
        DomainSpec::type_ii(3, 1.0, 2).unwrap(),
        DomainSpec::type_iii(4, 1.0, 2).unwrap(),
        DomainSpec::type_iv(5, PhiProfile::Sqrt1p).unwrap(),
        DomainSpec::type_iv(5, PhiProfile::ExpFamily { t: 0.05, k: 2 }).unwrap(),
    ];
    for spec in &specs {
        run_and_assert(Suite::Pseudoconvexity, spec, 100, 42);
    }
    println!("criterion 03 (strong pseudoconvexity, analytic + FD Hessians): PASS");
}

#[test]
fn criterion_04_kahler_berwald_criterion() {
    let specs = [
        DomainSpec::type_i(2, 3, 1.0, 3).unwrap(),
        DomainSpec::type_ii(3, 1.0, 2).unwrap(),
        DomainSpec::type_iii(4, 0.5, 2).unwrap(),
        DomainSpec::type_iv(5, PhiProfile::Sqrt1p).unwrap(),
    ];
    for spec in &specs {
        run_and_assert(Suite::KahlerBerwald, spec, 50, 42);
    }
    println!("criterion 04 (Kähler-Berwald residual + second-order decay): PASS");
}

#[test]
fn criterion_05_curvature_oracle_agreement() {
    let start = Instant::now();
    let specs = [
        DomainSpec::type_i(2, 3, 1.0, 2).unwrap(),
        DomainSpec::type_ii(3, 1.0, 2).unwrap(),
        DomainSpec::type_iii(4, 1.0, 2).unwrap(),
        DomainSpec::type_iv(5, PhiProfile::Sqrt1p).unwrap(),
    ];
    for spec in &specs {
        run_and_assert(Suite::CurvatureOracle, spec, 50, 42);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < 60.0,
        "curvature-oracle batches took {elapsed:.2}s"
    );
    println!("criterion 05 (closed-form vs FD curvature oracles, {elapsed:.2}s): PASS");
}

#[test]
fn criterion_06_pinching_and_sign() {
    let specs = [
        DomainSpec::type_i(2, 3, 1.0, 2).unwrap(),
        DomainSpec::type_ii(3, 1.0, 2).unwrap(),
        DomainSpec::type_iii(4, 1.0, 2).unwrap(),
        DomainSpec::type_iii(5, 1.0, 2).unwrap(),
        DomainSpec::type_iv(5, PhiProfile::Sqrt1p).unwrap(),
    ];
    for spec in &specs {
        run_and_assert(Suite::Bounds, spec, 500, 42);
    }
    // The stated bisectional floors, written out.
    let floors = [
        (DomainSpec::type_i(2, 3, 1.0, 2).unwrap(), -4.0 / 5.0),
        (DomainSpec::type_ii(3, 1.0, 2).unwrap(), -1.0),
        (
            DomainSpec::type_iii(4, 1.0, 2).unwrap(),
            -4.0 * 2.0 / (3.0 * (2.0 + 2.0_f64.sqrt())),
        ),
    ];
    for (spec, floor) in &floors {
        let z0 = origin(spec);
        for seed in 0..50 {
            let v = sample_tangent(spec, seed);
            let w = sample_tangent(spec, seed + 1_000);
            let b = bisectional(spec, &z0, &v, &w).unwrap();
            assert!(b <= 1e-10, "{}: B = {b}", spec.kind_tag());
            assert!(
                b >= floor - 1e-9,
                "{}: B = {b} under floor {floor}",
                spec.kind_tag()
            );
        }
    }
    println!("criterion 06 (pinching, sign, bisectional floors): PASS");
}

#[test]
fn criterion_07_bergman_collapse() {
    // t = 0 metrics reduce to the Bergman quadratic forms, and their
    // curvatures to the classical specializations.
    let specs = [
        DomainSpec::type_i(2, 3, 0.0, 2).unwrap(),
        DomainSpec::type_ii(3, 0.0, 2).unwrap(),
        DomainSpec::type_iii(4, 0.0, 2).unwrap(),
    ];
    for spec in &specs {
        let scale = spec.scale();
        for seed in 0..40 {
            let z = sample_point(spec, seed).unwrap();
            let v = sample_tangent(spec, seed + 7).scale_re(1.3);
            let f2 = metric(spec, &z, &v).unwrap().f_squared;
            let quad = bergman(spec, &z, &v).unwrap();
            assert!((f2 - quad).abs() <= 1e-12 * quad, "{}", spec.kind_tag());
            // Classical sectional curvature: -4𝔅₂/(c·𝔅₁²).
            let k = sectional(spec, &z, &v).unwrap();
            let b1 = frak_b(spec, 1, &z, &v).unwrap();
            let b2 = frak_b(spec, 2, &z, &v).unwrap();
            let classical = -4.0 * b2 / (scale * b1 * b1);
            assert!(
                (k - classical).abs() <= 1e-12 * k.abs(),
                "{}",
                spec.kind_tag()
            );
        }
    }
    // φ ≡ 1: the type-IV metric is the Bergman form and
    // K = -(2/N)(2 - s̃).
    let spec = DomainSpec::type_iv(5, PhiProfile::Bergman).unwrap();
    for seed in 0..40 {
        let z = sample_point(&spec, seed).unwrap();
        let v = sample_tangent(&spec, seed + 7);
        let value = metric(&spec, &z, &v).unwrap();
        let quad = bergman(&spec, &z, &v).unwrap();
        assert!((value.f_squared - quad).abs() <= 1e-12 * quad);
        let k = sectional(&spec, &z, &v).unwrap();
        let s = value.components["s_tilde"];
        let classical = -2.0 / 5.0 * (2.0 - s);
        assert!((k - classical).abs() <= 1e-12 * k.abs());
    }

    // Parallelogram law: holds at t = 0, fails by more than 1e-6 at t = 1.
    let e11 = unit(2, 2, 0, 0);
    let e22 = unit(2, 2, 1, 1);
    for (t, violated) in [(0.0, false), (1.0, true)] {
        let spec = DomainSpec::type_i(2, 2, t, 2).unwrap();
        let z0 = origin(&spec);
        let lhs = metric(&spec, &z0, &e11.add(&e22)).unwrap().f_squared
            + metric(&spec, &z0, &e11.sub(&e22)).unwrap().f_squared;
        let rhs = 2.0 * metric(&spec, &z0, &e11).unwrap().f_squared
            + 2.0 * metric(&spec, &z0, &e22).unwrap().f_squared;
        let gap = (lhs - rhs).abs();
        if violated {
            assert!(gap > 1e-6, "t=1 gap {gap}");
        } else {
            assert!(gap < 1e-12, "t=0 gap {gap}");
        }
    }
    println!("criterion 07 (Bergman collapse and parallelogram witness): PASS");
}

#[test]
fn criterion_08_kobayashi_coincidence() {
    let spec = DomainSpec::type_iv(5, PhiProfile::Kobayashi).unwrap();
    for seed in 0..100 {
        let xi = sample_tangent(&spec, seed).scale_re(0.2 + (seed % 17) as f64 * 0.15);
        let via_profile = f_iv_norm(&xi, &PhiProfile::Kobayashi).unwrap().0;
        let nsq = row_dot_h(&xi, &xi).re;
        let cross = row_dot_t(&xi, &xi).norm_sqr();
        let closed = (nsq + (nsq * nsq - cross).max(0.0).sqrt()).sqrt();
        assert!(
            (via_profile - closed).abs() <= 1e-12 * closed,
            "seed {seed}: {via_profile} vs {closed}"
        );
        // Same value through the library's reference norm.
        let reference = reference_norm_ck(&spec, &xi).unwrap();
        assert!((via_profile - reference).abs() <= 1e-12 * reference);
    }
    println!("criterion 08 (Kobayashi coincidence on the Lie ball): PASS");
}

#[test]
fn criterion_09_transport_identities() {
    let specs = [
        DomainSpec::type_i(2, 3, 1.0, 2).unwrap(),
        DomainSpec::type_ii(3, 1.0, 3).unwrap(),
        DomainSpec::type_iii(4, 1.0, 2).unwrap(),
    ];
    for spec in &specs {
        let k = spec.deformation().unwrap().k;
        let z_origin = origin(spec);
        for seed in 0..200 {
            let z = sample_point(spec, seed).unwrap();
            let v = sample_tangent(spec, seed + 10_000);
            let w = sample_tangent(spec, seed + 20_000);
            let aut = normalizer(spec, &z).unwrap();
            let xi = aut.differential(&v).unwrap();
            let eta = aut.differential(&w).unwrap();
            for l in [1, 2, 3, k, k + 1] {
                let lhs = frak_b(spec, l, &z, &v).unwrap();
                let rhs = frak_b(spec, l, &z_origin, &xi).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-9 * lhs.max(1e-30),
                    "{} seed {seed} l={l}: {lhs} vs {rhs}",
                    spec.kind_tag()
                );
            }
            for (i, j) in [(1, 1), (k, 1)] {
                let lhs = cal_b(spec, i, j, &z, &v, &w).unwrap();
                let rhs = cal_b(spec, i, j, &z_origin, &xi, &eta).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1e-30),
                    "{} seed {seed} ({i},{j}): {lhs} vs {rhs}",
                    spec.kind_tag()
                );
            }
        }
    }
    println!("criterion 09 (transport identities for the trace blocks): PASS");
}

#[test]
fn criterion_10_isotropy_invariance() {
    // 500 random group elements per family; includes the transposed
    // sandwich for the square type-I case and the entry permutation at
    // q = 4.
    let drift = |f0: f64, f1: f64| (f1 - f0).abs() / f0;

    // Type I rectangular and square.
    for (m, n) in [(2usize, 3usize), (2, 2)] {
        let spec = DomainSpec::type_i(m, n, 1.0, 2).unwrap();
        let z0 = origin(&spec);
        for seed in 0..500u64 {
            let v = sample_tangent(&spec, seed);
            let f0 = metric(&spec, &z0, &v).unwrap().f;
            let a = sample_unitary(m, 3 * seed + 1);
            let b = sample_unitary(n, 3 * seed + 2);
            let moved = if m == n && seed % 2 == 1 {
                a.matmul(&v.transpose()).matmul(&b)
            } else {
                a.matmul(&v).matmul(&b)
            };
            let f1 = metric(&spec, &z0, &moved).unwrap().f;
            assert!(
                drift(f0, f1) < 1e-10,
                "I({m},{n}) seed {seed}: {}",
                drift(f0, f1)
            );
        }
    }

    // Types II and III (congruence action; q = 4 adds the swap).
    let spec = DomainSpec::type_ii(3, 1.0, 2).unwrap();
    let z0 = origin(&spec);
    for seed in 0..500u64 {
        let v = sample_tangent(&spec, seed);
        let a = sample_unitary(3, 7 * seed + 5);
        let moved = a.matmul(&v).matmul(&a.transpose());
        let f0 = metric(&spec, &z0, &v).unwrap().f;
        let f1 = metric(&spec, &z0, &moved).unwrap().f;
        assert!(drift(f0, f1) < 1e-10, "II seed {seed}");
    }
    let spec = DomainSpec::type_iii(4, 1.0, 2).unwrap();
    let z0 = origin(&spec);
    for seed in 0..500u64 {
        let v = sample_tangent(&spec, seed);
        let moved = if seed % 5 == 0 {
            berwald_core::automorphism::type_iii_q4_swap(&v)
        } else {
            let a = sample_unitary(4, 7 * seed + 5);
            a.matmul(&v).matmul(&a.transpose())
        };
        let f0 = metric(&spec, &z0, &v).unwrap().f;
        let f1 = metric(&spec, &z0, &moved).unwrap().f;
        assert!(drift(f0, f1) < 1e-10, "III seed {seed}");
    }

    // Type IV rotations and orthogonal factors.
    let spec = DomainSpec::type_iv(5, PhiProfile::Sqrt1p).unwrap();
    let z0 = origin(&spec);
    for seed in 0..500u64 {
        let v = sample_tangent(&spec, seed);
        let d = sample_orthogonal(5, 7 * seed + 5);
        let theta = seed as f64 * 0.0137;
        let moved = v.matmul(&d).scale(Complex64::new(0.0, theta).exp());
        let f0 = metric(&spec, &z0, &v).unwrap().f;
        let f1 = metric(&spec, &z0, &moved).unwrap().f;
        assert!(drift(f0, f1) < 1e-10, "IV seed {seed}");
    }
    println!("criterion 10 (isotropy invariance of the origin norms): PASS");
}

#[test]
fn metric_transport_consistency_smoke() {
    // F(Z;V) computed globally equals the origin norm of the transported
    // tangent; quick cross-check binding criteria 1-2 together.
    for spec in berwald_core::verify::standard_specs().unwrap() {
        for seed in 0..10 {
            let z = sample_point(&spec, seed).unwrap();
            let v = sample_tangent(&spec, seed + 5);
            let xi = transported_tangent(&spec, &z, &v).unwrap();
            let direct = metric(&spec, &z, &v).unwrap().f;
            let through_origin = metric(&spec, &origin(&spec), &xi).unwrap().f;
            assert!((direct - through_origin).abs() <= 1e-9 * direct);
            // Sectional bounds hold at interior points too.
            let bounds = sectional_bounds(&spec).unwrap();
            let k = sectional(&spec, &z, &v).unwrap();
            assert!(bounds.lower - 1e-9 <= k && k <= bounds.upper + 1e-9);
        }
    }
}
