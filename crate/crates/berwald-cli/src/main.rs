//! Command-line interface for the invariant-metric library: point
//! evaluation, curvature, bound constants, sampling, profile validation
//! and batch verification suites, all with JSON output on stdout.
//!
//! Exit codes: 0 on success (and all checks passing), 1 on a failed check
//! or a library error (reported as a JSON error envelope), 2 on usage or
//! parse errors.

mod inputs;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use berwald_core::curvature::{
    bisectional_bounds, curvature_report, sectional_bounds, OracleConfig, DEFAULT_FD_STEP,
};
use berwald_core::metric::metric;
use berwald_core::phi::{PhiProfile, VALIDATION_GRID};
use berwald_core::sample::{sample_point, sample_tangent};
use berwald_core::verify::{aggregate, run_suite, sample_checks, Suite, SuiteConfig};
use clap::{Args, Parser, Subcommand};
use inputs::{parse_matrix, parse_profile, SpecArgs};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "berwald",
    version,
    about = "Invariant Kähler-Berwald metrics on the classical matrix domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeedArg {
    /// RNG seed; FINSLER_SEED overrides the default when the flag is
    /// absent.
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedArg {
    fn resolve(&self) -> Result<u64> {
        if let Some(seed) = self.seed {
            return Ok(seed);
        }
        match std::env::var("FINSLER_SEED") {
            Ok(raw) => raw
                .parse()
                .map_err(|_| anyhow!("FINSLER_SEED must be an unsigned integer")),
            Err(_) => Ok(42),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the metric at a base point and tangent.
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        /// Base point: origin, inline JSON, or @file.
        #[arg(long, default_value = "origin")]
        point: String,
        /// Tangent: identity, e11/e1, inline JSON, or @file.
        #[arg(long)]
        tangent: String,
    },
    /// Holomorphic sectional (and optionally bisectional) curvature.
    Curvature {
        #[command(flatten)]
        spec: SpecArgs,
        /// Evaluate at the origin (same as --point origin).
        #[arg(long, default_value_t = false)]
        origin: bool,
        #[arg(long, default_value = "origin")]
        point: String,
        #[arg(long)]
        tangent: String,
        /// Second tangent for the bisectional curvature.
        #[arg(long)]
        tangent2: Option<String>,
        /// Also run the finite-difference oracle and report the residual.
        #[arg(long, default_value_t = false)]
        oracle: bool,
        /// Step of the finite-difference oracle.
        #[arg(long, default_value_t = DEFAULT_FD_STEP)]
        fd_step: f64,
        /// Richardson-extrapolate the oracle from steps h and h/2.
        #[arg(long, default_value_t = false)]
        richardson: bool,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// invariance | pseudoconvexity | kahler-berwald | curvature-oracle | bounds
        #[arg(long)]
        suite: String,
        /// Batch size (defaults to the suite's documented size).
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
        /// Override the suite's headline tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Step of the finite-difference checks.
        #[arg(long, default_value_t = DEFAULT_FD_STEP)]
        fd_step: f64,
        /// Worker-thread cap for the batch (defaults to the CPU count).
        #[arg(long)]
        jobs: Option<usize>,
        /// Include wall time in the JSON report (off by default so that
        /// identical invocations are byte-identical).
        #[arg(long, default_value_t = false)]
        timings: bool,
    },
    /// Sample interior points (and optionally unit tangents).
    Sample {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = false)]
        with_tangents: bool,
    },
    /// Closed-form curvature bound constants of a spec.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Certify the strong pseudoconvexity conditions of a profile.
    ValidatePhi {
        /// Profile name or inline JSON.
        #[arg(long)]
        profile: String,
        /// Grid density of the certification.
        #[arg(long, default_value_t = VALIDATION_GRID)]
        grid: usize,
    },
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value).context("serialization failed")?;
    writeln!(stdout)?;
    Ok(())
}

#[derive(serde::Serialize)]
struct ErrorEnvelope<'a> {
    error: ErrorBody<'a>,
}

#[derive(serde::Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

/// Print a library error as a JSON envelope and exit 1.
fn library_error(err: berwald_core::Error) -> ExitCode {
    let envelope = ErrorEnvelope {
        error: ErrorBody {
            code: err.code(),
            message: err.to_string(),
        },
    };
    let _ = print_json(&envelope);
    ExitCode::from(1)
}

fn usage_error(err: anyhow::Error) -> ExitCode {
    eprintln!("error: {err:#}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Eval {
            spec,
            point,
            tangent,
        } => {
            let spec = spec.resolve().map_err(usage_error)?;
            let z = parse_matrix(&spec, &point).map_err(usage_error)?;
            let v = parse_matrix(&spec, &tangent).map_err(usage_error)?;
            let value = metric(&spec, &z, &v).map_err(library_error)?;
            print_json(&value).map_err(usage_error)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curvature {
            spec,
            origin,
            point,
            tangent,
            tangent2,
            oracle,
            fd_step,
            richardson,
            seed,
        } => {
            let spec = spec.resolve().map_err(usage_error)?;
            let point = if origin { "origin" } else { point.as_str() };
            let z = parse_matrix(&spec, point).map_err(usage_error)?;
            let v = parse_matrix(&spec, &tangent).map_err(usage_error)?;
            let w = tangent2
                .as_deref()
                .map(|raw| parse_matrix(&spec, raw))
                .transpose()
                .map_err(usage_error)?;
            let seed = seed.resolve().map_err(usage_error)?;
            let oracle = oracle.then_some(OracleConfig {
                step: fd_step,
                richardson,
            });
            let report =
                curvature_report(&spec, &z, &v, w.as_ref(), seed, oracle).map_err(library_error)?;
            print_json(&report).map_err(usage_error)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            spec,
            suite,
            samples,
            seed,
            tol,
            fd_step,
            jobs,
            timings,
        } => {
            let spec = spec.resolve().map_err(usage_error)?;
            let suite = Suite::parse(&suite)
                .ok_or_else(|| usage_error(anyhow!("--suite: unknown suite `{suite}`")))?;
            let mut cfg = SuiteConfig::for_suite(suite);
            if let Some(samples) = samples {
                cfg.samples = samples;
            }
            cfg.seed = seed.resolve().map_err(usage_error)?;
            cfg.tol = tol;
            cfg.fd_step = fd_step;
            let jobs = jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
                .max(1);
            let start = Instant::now();
            let mut report = if jobs == 1 {
                run_suite(suite, &spec, &cfg).map_err(library_error)?
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| usage_error(anyhow!("--jobs: {e}")))?;
                let outcomes = pool
                    .install(|| {
                        (0..cfg.samples)
                            .into_par_iter()
                            .map(|index| sample_checks(suite, &spec, &cfg, index))
                            .collect::<berwald_core::Result<Vec<_>>>()
                    })
                    .map_err(library_error)?;
                aggregate(suite, &spec, &cfg, outcomes).map_err(library_error)?
            };
            let elapsed = start.elapsed().as_secs_f64();
            if timings {
                report.wall_time = Some(elapsed);
            }
            eprintln!(
                "suite {} on type {}: {} checks in {elapsed:.2}s",
                suite.name(),
                spec.kind_tag(),
                report.checks.len()
            );
            print_json(&report).map_err(usage_error)?;
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sample {
            spec,
            count,
            seed,
            with_tangents,
        } => {
            let spec = spec.resolve().map_err(usage_error)?;
            let seed = seed.resolve().map_err(usage_error)?;
            let mut points = Vec::with_capacity(count);
            let mut tangents = Vec::new();
            for i in 0..count {
                points.push(sample_point(&spec, seed + i as u64).map_err(library_error)?);
                if with_tangents {
                    tangents.push(sample_tangent(&spec, seed + i as u64));
                }
            }
            #[derive(serde::Serialize)]
            struct SampleOutput {
                spec: berwald_core::domain::DomainSpec,
                seed: u64,
                points: Vec<berwald_core::ComplexMatrix>,
                #[serde(skip_serializing_if = "Vec::is_empty")]
                tangents: Vec<berwald_core::ComplexMatrix>,
            }
            print_json(&SampleOutput {
                spec,
                seed,
                points,
                tangents,
            })
            .map_err(usage_error)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { spec } => {
            let spec = spec.resolve().map_err(usage_error)?;
            let sectional = sectional_bounds(&spec).map_err(library_error)?;
            let bisectional = bisectional_bounds(&spec).map_err(library_error)?;
            #[derive(serde::Serialize)]
            struct BoundsOutput {
                spec: berwald_core::domain::DomainSpec,
                sectional: berwald_core::curvature::CurvatureBounds,
                bisectional: berwald_core::curvature::BisectionalBounds,
            }
            print_json(&BoundsOutput {
                spec,
                sectional,
                bisectional,
            })
            .map_err(usage_error)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ValidatePhi { profile, grid } => {
            let profile: PhiProfile = parse_profile(&profile).map_err(usage_error)?;
            let report = profile.validate(grid);
            print_json(&report).map_err(usage_error)?;
            Ok(if report.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(code) => code,
    }
}
