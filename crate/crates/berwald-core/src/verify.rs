//! Batch verification suites with machine-readable reports.
//!
//! Five suites certify the structural properties of the metric families on
//! randomized batches: automorphism invariance (with the transport
//! identities of the `𝔅`/`ℬ` blocks and the isotropy actions at the
//! origin), strong pseudoconvexity of the vertical Hessians, the
//! Kähler-Berwald criterion, agreement of the closed-form curvatures with
//! the finite-difference oracles, and the curvature pinching bounds.
//!
//! Every check reports a *margin*: the signed distance to its failure
//! boundary, nonnegative exactly when the check passes.  Sample `i` of a
//! batch draws its inputs from seeds derived from `(seed, i)` alone, so a
//! batch may be evaluated in any order (or in parallel) and aggregated
//! deterministically; reports are byte-identical for identical
//! `(suite, spec, samples, seed, tolerance)` inputs.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::automorphism::{normalizer, r_s_tilde, r_s_tilde_closed, type_iii_q4_swap};
use crate::curvature::{
    bisectional, bisectional_bounds, fd_bisectional_oracle, fd_sectional_oracle,
    kahler_berwald_residual, sectional, sectional_bounds,
};
use crate::digest::Digest;
use crate::domain::{origin, DomainSpec};
use crate::linalg::{hermitian_eigen, lu_det};
use crate::mat::ComplexMatrix;
use crate::metric::{cal_b, frak_b, metric};
use crate::norm::{hessian_iv, hessian_origin, vertical_hessian_fd};
use crate::sample::{sample_orthogonal, sample_point, sample_tangent, sample_unitary};
use crate::Result;

use num_complex::Complex64;

/// Which verification suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Invariance,
    Pseudoconvexity,
    KahlerBerwald,
    CurvatureOracle,
    Bounds,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Invariance => "invariance",
            Suite::Pseudoconvexity => "pseudoconvexity",
            Suite::KahlerBerwald => "kahler-berwald",
            Suite::CurvatureOracle => "curvature-oracle",
            Suite::Bounds => "bounds",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "invariance" => Some(Suite::Invariance),
            "pseudoconvexity" => Some(Suite::Pseudoconvexity),
            "kahler-berwald" => Some(Suite::KahlerBerwald),
            "curvature-oracle" => Some(Suite::CurvatureOracle),
            "bounds" => Some(Suite::Bounds),
            _ => None,
        }
    }

    pub const ALL: [Suite; 5] = [
        Suite::Invariance,
        Suite::Pseudoconvexity,
        Suite::KahlerBerwald,
        Suite::CurvatureOracle,
        Suite::Bounds,
    ];

    /// Headline tolerance of the suite (overridable per run).
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Suite::Invariance => 1e-8,
            Suite::Pseudoconvexity => 1e-5,
            Suite::KahlerBerwald => 1e-5,
            Suite::CurvatureOracle => 5e-4,
            Suite::Bounds => 1e-9,
        }
    }

    /// Default batch size of the suite.
    pub fn default_samples(&self) -> usize {
        match self {
            Suite::Invariance => 200,
            Suite::Pseudoconvexity => 100,
            Suite::KahlerBerwald => 50,
            Suite::CurvatureOracle => 50,
            Suite::Bounds => 500,
        }
    }
}

/// Batch parameters.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    /// Step of the finite-difference checks.
    pub fd_step: f64,
    /// Overrides the suite's headline tolerance when set.
    pub tol: Option<f64>,
}

impl SuiteConfig {
    pub fn for_suite(suite: Suite) -> Self {
        SuiteConfig {
            samples: suite.default_samples(),
            seed: 42,
            fd_step: crate::curvature::DEFAULT_FD_STEP,
            tol: None,
        }
    }

    fn tolerance(&self, suite: Suite) -> f64 {
        self.tol.unwrap_or_else(|| suite.default_tolerance())
    }
}

/// One named check outcome of a suite.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// Signed distance to the failure boundary; nonnegative iff `pass`.
    pub margin: f64,
    pub worst_case_inputs_digest: String,
}

/// Full report of one suite run.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    pub suite: String,
    pub spec: DomainSpec,
    pub samples: usize,
    pub seed: u64,
    /// Effective tolerances, echoed for reproducibility.
    pub tolerances: BTreeMap<String, f64>,
    pub checks: Vec<CheckResult>,
    /// Populated by callers that time the run; excluded from the
    /// byte-determinism contract.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub wall_time: Option<f64>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Named margin from one sample.
#[derive(Clone, Debug)]
pub struct SampleCheck {
    pub name: &'static str,
    pub margin: f64,
    pub digest: String,
}

fn derived_seed(seed: u64, index: usize, salt: u64) -> u64 {
    Digest::new().u64(seed).u64(index as u64).u64(salt).finish()
}

fn rel_diff(a: f64, b: f64, scale_floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(scale_floor)
}

/// Evaluate every per-sample check of a suite for batch index `index`.
pub fn sample_checks(
    suite: Suite,
    spec: &DomainSpec,
    cfg: &SuiteConfig,
    index: usize,
) -> Result<Vec<SampleCheck>> {
    match suite {
        Suite::Invariance => invariance_sample(spec, cfg, index),
        Suite::Pseudoconvexity => pseudoconvexity_sample(spec, cfg, index),
        Suite::KahlerBerwald => kahler_berwald_sample(spec, cfg, index),
        Suite::CurvatureOracle => curvature_oracle_sample(spec, cfg, index),
        Suite::Bounds => bounds_sample(spec, cfg, index),
    }
}

fn invariance_sample(
    spec: &DomainSpec,
    cfg: &SuiteConfig,
    index: usize,
) -> Result<Vec<SampleCheck>> {
    let tol = cfg.tolerance(Suite::Invariance);
    let s_z0 = derived_seed(cfg.seed, index, 1);
    let s_z = derived_seed(cfg.seed, index, 2);
    let s_v = derived_seed(cfg.seed, index, 3);
    let s_w = derived_seed(cfg.seed, index, 4);
    let z0 = sample_point(spec, s_z0)?;
    let z = sample_point(spec, s_z)?;
    let v = sample_tangent(spec, s_v);
    let w = sample_tangent(spec, s_w);
    let digest = Digest::new()
        .spec(spec)
        .matrix(&z0)
        .matrix(&z)
        .matrix(&v)
        .u64(cfg.seed)
        .hex();
    let mut out = Vec::new();

    let aut = normalizer(spec, &z0)?;
    out.push(SampleCheck {
        name: "normalization",
        margin: 1e-10 - aut.apply(&z0)?.frobenius_norm(),
        digest: digest.clone(),
    });

    let z_img = aut.apply(&z)?;
    out.push(SampleCheck {
        name: "membership-preserved",
        margin: spec.contains(&z_img)?.margin,
        digest: digest.clone(),
    });

    let v_img = aut.differential_at(&z, &v)?;
    let f_before = metric(spec, &z, &v)?.f;
    let f_after = metric(spec, &z_img, &v_img)?.f;
    out.push(SampleCheck {
        name: "metric-invariance",
        margin: tol - (f_after - f_before).abs() / f_before,
        digest: digest.clone(),
    });

    match spec {
        DomainSpec::TypeIV { .. } => {
            // Dual-route normalized invariants.
            let push = r_s_tilde(spec, &z, &v)?;
            let closed = r_s_tilde_closed(spec, &z, &v)?;
            let worst = rel_diff(closed.r_tilde, push.r_tilde, 1.0)
                .max((closed.s_tilde - push.s_tilde).abs());
            out.push(SampleCheck {
                name: "invariants-dual-path",
                margin: 1e-9 - worst,
                digest: digest.clone(),
            });
        }
        _ => {
            let k = spec.deformation().unwrap().k;
            let xi = aut.differential(&v)?;
            let eta = aut.differential(&w)?;
            let z_origin = origin(spec);
            let mut worst = 0.0f64;
            for l in [1, 2, 3, k, k + 1] {
                let at_z0 = frak_b(spec, l, &z0, &v)?;
                let at_origin = frak_b(spec, l, &z_origin, &xi)?;
                worst = worst.max(rel_diff(at_z0, at_origin, 1e-30));
            }
            out.push(SampleCheck {
                name: "transport-frak",
                margin: 1e-9 - worst,
                digest: digest.clone(),
            });
            let mut worst = 0.0f64;
            for (i, j) in [(1, 1), (k, 1)] {
                let at_z0 = cal_b(spec, i, j, &z0, &v, &w)?;
                let at_origin = cal_b(spec, i, j, &z_origin, &xi, &eta)?;
                worst = worst.max(rel_diff(at_z0, at_origin, 1e-30));
            }
            out.push(SampleCheck {
                name: "transport-cal",
                margin: 1e-9 - worst,
                digest: digest.clone(),
            });
        }
    }

    out.push(SampleCheck {
        name: "isotropy-invariance",
        margin: 1e-10 - isotropy_drift(spec, &v, cfg.seed, index)?,
        digest,
    });
    Ok(out)
}

/// Relative drift of the origin norm under one random isotropy element.
fn isotropy_drift(spec: &DomainSpec, v: &ComplexMatrix, seed: u64, index: usize) -> Result<f64> {
    let z_origin = origin(spec);
    let f0 = metric(spec, &z_origin, v)?.f;
    let s_g = derived_seed(seed, index, 5);
    let moved = match spec {
        DomainSpec::TypeI { m, n, .. } => {
            let a = sample_unitary(*m, s_g);
            let b = sample_unitary(*n, s_g ^ 1);
            if m == n && index % 2 == 1 {
                // The transposed sandwich is an isotropy of the square case.
                a.matmul(&v.transpose()).matmul(&b)
            } else {
                a.matmul(v).matmul(&b)
            }
        }
        DomainSpec::TypeII { p, .. } => {
            let a = sample_unitary(*p, s_g);
            a.matmul(v).matmul(&a.transpose())
        }
        DomainSpec::TypeIII { q, .. } => {
            if *q == 4 && index % 2 == 1 {
                type_iii_q4_swap(v)
            } else {
                let a = sample_unitary(*q, s_g);
                a.matmul(v).matmul(&a.transpose())
            }
        }
        DomainSpec::TypeIV { dim, .. } => {
            let d = sample_orthogonal(*dim, s_g);
            let theta = (s_g % 62_832) as f64 / 10_000.0;
            v.matmul(&d).scale(Complex64::new(0.0, theta).exp())
        }
    };
    let f1 = metric(spec, &z_origin, &moved)?.f;
    Ok((f1 - f0).abs() / f0)
}

fn pseudoconvexity_sample(
    spec: &DomainSpec,
    cfg: &SuiteConfig,
    index: usize,
) -> Result<Vec<SampleCheck>> {
    let fd_tol = cfg.tolerance(Suite::Pseudoconvexity);
    let s_v = derived_seed(cfg.seed, index, 11);
    let v = sample_tangent(spec, s_v);
    let digest = Digest::new().spec(spec).matrix(&v).u64(cfg.seed).hex();
    let mut out = Vec::new();

    let analytic = match spec {
        DomainSpec::TypeIV { profile, .. } => hessian_iv(&v, profile)?.0,
        _ => hessian_origin(spec, &v)?,
    };
    let eig = hermitian_eigen(&analytic)?;
    out.push(SampleCheck {
        name: "hessian-pd",
        margin: eig.values[0] - 1e-10 * analytic.frobenius_norm(),
        digest: digest.clone(),
    });

    let fd = vertical_hessian_fd(spec, &v, cfg.fd_step)?;
    let scale_factor = match spec {
        // The analytic type-IV Hessian is for f², the FD one matches it.
        DomainSpec::TypeIV { .. } => 1.0,
        _ => 1.0,
    };
    let dev = analytic.max_abs_diff(&fd.scale_re(scale_factor));
    out.push(SampleCheck {
        name: "fd-hessian-agreement",
        margin: fd_tol - dev,
        digest: digest.clone(),
    });
    let eig_fd = hermitian_eigen(&fd.hermitize())?;
    out.push(SampleCheck {
        name: "fd-hessian-pd",
        margin: eig_fd.values[0] - 1e-10 * fd.frobenius_norm(),
        digest: digest.clone(),
    });

    if let DomainSpec::TypeIV { profile, dim } = spec {
        let (h, spectrum) = hessian_iv(&v, profile)?;
        let predicted = spectrum.sorted();
        let mut worst = 0.0f64;
        for (got, want) in eig.values.iter().zip(&predicted) {
            worst = worst.max((got - want).abs());
        }
        out.push(SampleCheck {
            name: "spectrum-prediction",
            margin: 1e-9 - worst,
            digest: digest.clone(),
        });

        // Determinant identity at a few spread-out probe values.
        let n = *dim;
        let b_half = 0.5 * (spectrum.predicted[n - 2] + spectrum.predicted[n - 1]);
        let mut worst = 0.0f64;
        for probe in 0..5 {
            let lam = -1.0 + probe as f64 * (b_half + 2.0) / 4.0;
            let shifted = ComplexMatrix::identity(n).scale_re(lam).sub(&h);
            let det = lu_det(&shifted)?;
            let mut expected = Complex64::new(1.0, 0.0);
            for root in &spectrum.predicted {
                expected *= Complex64::new(lam - root, 0.0);
            }
            worst = worst.max((det - expected).norm() / expected.norm().max(1e-8));
        }
        out.push(SampleCheck {
            name: "determinant-identity",
            margin: 1e-8 - worst,
            digest,
        });
    }
    Ok(out)
}

fn kahler_berwald_sample(
    spec: &DomainSpec,
    cfg: &SuiteConfig,
    index: usize,
) -> Result<Vec<SampleCheck>> {
    let tol = cfg.tolerance(Suite::KahlerBerwald);
    let s_v = derived_seed(cfg.seed, index, 21);
    let v = sample_tangent(spec, s_v);
    let digest = Digest::new().spec(spec).matrix(&v).u64(cfg.seed).hex();
    let residual = kahler_berwald_residual(spec, &v, cfg.fd_step)?;
    Ok(alloc::vec![SampleCheck {
        name: "kb-residual",
        margin: tol - residual,
        digest,
    }])
}

fn curvature_oracle_sample(
    spec: &DomainSpec,
    cfg: &SuiteConfig,
    index: usize,
) -> Result<Vec<SampleCheck>> {
    let tol = cfg.tolerance(Suite::CurvatureOracle);
    let s_v = derived_seed(cfg.seed, index, 31);
    let s_w = derived_seed(cfg.seed, index, 32);
    let v = sample_tangent(spec, s_v);
    let w = sample_tangent(spec, s_w);
    let z_origin = origin(spec);
    let digest = Digest::new()
        .spec(spec)
        .matrix(&v)
        .matrix(&w)
        .u64(cfg.seed)
        .hex();
    let k_cf = sectional(spec, &z_origin, &v)?;
    let k_fd = fd_sectional_oracle(spec, &v, cfg.fd_step)?;
    let b_cf = bisectional(spec, &z_origin, &v, &w)?;
    let b_fd = fd_bisectional_oracle(spec, &v, &w, cfg.fd_step)?;
    Ok(alloc::vec![
        SampleCheck {
            name: "sectional-oracle",
            margin: tol - (k_cf - k_fd).abs() / k_cf.abs(),
            digest: digest.clone(),
        },
        SampleCheck {
            name: "bisectional-oracle",
            margin: tol - (b_cf - b_fd).abs() / b_cf.abs().max(1e-2),
            digest,
        },
    ])
}

fn bounds_sample(spec: &DomainSpec, cfg: &SuiteConfig, index: usize) -> Result<Vec<SampleCheck>> {
    let slack = cfg.tolerance(Suite::Bounds);
    let s_z = derived_seed(cfg.seed, index, 41);
    let s_v = derived_seed(cfg.seed, index, 42);
    let s_w = derived_seed(cfg.seed, index, 43);
    let z = sample_point(spec, s_z)?;
    let v = sample_tangent(spec, s_v);
    let w = sample_tangent(spec, s_w);
    let digest = Digest::new()
        .spec(spec)
        .matrix(&z)
        .matrix(&v)
        .matrix(&w)
        .u64(cfg.seed)
        .hex();
    let bounds = sectional_bounds(spec)?;
    let k = sectional(spec, &z, &v)?;
    let mut out = alloc::vec![
        SampleCheck {
            name: "sectional-negative",
            margin: -k,
            digest: digest.clone(),
        },
        SampleCheck {
            name: "sectional-above-lower",
            margin: k - (bounds.lower - slack),
            digest: digest.clone(),
        },
        SampleCheck {
            name: "sectional-below-upper",
            margin: (bounds.upper + slack) - k,
            digest: digest.clone(),
        },
    ];
    let bi = bisectional_bounds(spec)?;
    if bi.nonpositivity_certified {
        let b = bisectional(spec, &z, &v, &w)?;
        out.push(SampleCheck {
            name: "bisectional-nonpositive",
            margin: 1e-10 - b,
            digest: digest.clone(),
        });
        out.push(SampleCheck {
            name: "bisectional-above-floor",
            margin: b - (bi.lower - slack),
            digest,
        });
    }
    Ok(out)
}

/// Suite-level checks that are not per-sample.
fn aggregate_extras(
    suite: Suite,
    spec: &DomainSpec,
    cfg: &SuiteConfig,
) -> Result<Vec<SampleCheck>> {
    let mut out = Vec::new();
    match suite {
        Suite::KahlerBerwald => {
            // Second-order decay: halving the step must shrink the
            // residual.  Run in the truncation-dominated regime; at the
            // default step the residual of the exactly-zero target already
            // sits near the roundoff floor of the stencil.
            let mut worst_ratio = 0.0f64;
            let mut worst_digest = String::new();
            for index in 0..cfg.samples.min(8) {
                let s_v = derived_seed(cfg.seed, index, 21);
                let v = sample_tangent(spec, s_v);
                let coarse = kahler_berwald_residual(spec, &v, 1e-3)?;
                let fine = kahler_berwald_residual(spec, &v, 5e-4)?;
                let ratio = fine / coarse.max(1e-300);
                if ratio > worst_ratio {
                    worst_ratio = ratio;
                    worst_digest = Digest::new().spec(spec).matrix(&v).u64(cfg.seed).hex();
                }
            }
            out.push(SampleCheck {
                name: "kb-second-order",
                margin: 1.0 - worst_ratio,
                digest: worst_digest,
            });
        }
        Suite::Bounds => {
            let bounds = sectional_bounds(spec)?;
            let z_origin = origin(spec);
            if let (Some(lo), Some(up)) = (&bounds.attaining_lower, &bounds.attaining_upper) {
                let k_lo = sectional(spec, &z_origin, lo)?;
                let k_up = sectional(spec, &z_origin, up)?;
                let digest = Digest::new().spec(spec).u64(cfg.seed).hex();
                out.push(SampleCheck {
                    name: "attaining-lower",
                    margin: 1e-10 - (k_lo - bounds.lower).abs(),
                    digest: digest.clone(),
                });
                out.push(SampleCheck {
                    name: "attaining-upper",
                    margin: 1e-10 - (k_up - bounds.upper).abs(),
                    digest,
                });
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Aggregate per-sample margins into one [`CheckResult`] per check name,
/// keeping the worst margin and the digest of the sample attaining it.
pub fn aggregate(
    suite: Suite,
    spec: &DomainSpec,
    cfg: &SuiteConfig,
    outcomes: Vec<Vec<SampleCheck>>,
) -> Result<VerificationReport> {
    let mut order: Vec<&'static str> = Vec::new();
    let mut worst: BTreeMap<&'static str, (f64, String)> = BTreeMap::new();
    let mut record = |checks: Vec<SampleCheck>| {
        for check in checks {
            match worst.get_mut(check.name) {
                None => {
                    order.push(check.name);
                    worst.insert(check.name, (check.margin, check.digest));
                }
                Some(entry) => {
                    if check.margin < entry.0 {
                        *entry = (check.margin, check.digest);
                    }
                }
            }
        }
    };
    for checks in outcomes {
        record(checks);
    }
    record(aggregate_extras(suite, spec, cfg)?);

    let checks: Vec<CheckResult> = order
        .iter()
        .map(|name| {
            let (margin, digest) = worst.remove(name).unwrap();
            CheckResult {
                name: String::from(*name),
                pass: margin >= 0.0,
                margin,
                worst_case_inputs_digest: digest,
            }
        })
        .collect();

    let mut tolerances = BTreeMap::new();
    tolerances.insert(String::from("headline"), cfg.tolerance(suite));
    tolerances.insert(String::from("fd_step"), cfg.fd_step);
    if suite == Suite::Bounds {
        let bi = bisectional_bounds(spec)?;
        tolerances.insert(String::from("bisectional_floor"), bi.lower);
    }

    Ok(VerificationReport {
        suite: String::from(suite.name()),
        spec: spec.clone(),
        samples: cfg.samples,
        seed: cfg.seed,
        tolerances,
        checks,
        wall_time: None,
    })
}

/// Run a suite sequentially.
pub fn run_suite(suite: Suite, spec: &DomainSpec, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut outcomes = Vec::with_capacity(cfg.samples);
    for index in 0..cfg.samples {
        outcomes.push(sample_checks(suite, spec, cfg, index)?);
    }
    aggregate(suite, spec, cfg, outcomes)
}

/// Standard spec roster used by the acceptance batches, pairing each kind
/// with desk-scale dimensions.
pub fn standard_specs() -> Result<Vec<DomainSpec>> {
    use crate::phi::PhiProfile;
    Ok(alloc::vec![
        DomainSpec::type_i(2, 3, 1.0, 2)?,
        DomainSpec::type_ii(3, 1.0, 2)?,
        DomainSpec::type_iii(4, 1.0, 2)?,
        DomainSpec::type_iii(5, 1.0, 2)?,
        DomainSpec::type_iv(5, PhiProfile::Sqrt1p)?,
    ])
}
