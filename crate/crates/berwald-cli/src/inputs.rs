//! Input parsing: domain specs from flags or config files, matrices from
//! inline JSON, files, or named shortcuts.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use berwald_core::domain::DomainSpec;
use berwald_core::mat::ComplexMatrix;
use berwald_core::phi::PhiProfile;
use clap::Args;
use num_complex::Complex64;

/// Domain selection, either by flags or by a named entry of a config file.
#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Domain kind: I, II, III or IV.
    #[arg(long)]
    pub kind: Option<String>,
    /// Rows m (type I).
    #[arg(short = 'm', long)]
    pub m: Option<usize>,
    /// Columns n (type I) or dimension N (type IV).
    #[arg(short = 'n', long)]
    pub n: Option<usize>,
    /// Matrix order p (type II).
    #[arg(short = 'p', long)]
    pub p: Option<usize>,
    /// Matrix order q (type III).
    #[arg(short = 'q', long)]
    pub q: Option<usize>,
    /// Deformation weight t ≥ 0 (types I-III).
    #[arg(short = 't', long)]
    pub t: Option<f64>,
    /// Trace-power exponent k ≥ 2 (types I-III).
    #[arg(short = 'k', long)]
    pub k: Option<u32>,
    /// Profile name or inline JSON (type IV): bergman, kobayashi, sqrt1p,
    /// exp-family(t,k), or {"name":...,"phi":[...]}.
    #[arg(long)]
    pub profile: Option<String>,
    /// Admit dimensions below the standing assumptions (q < 4, N < 5).
    #[arg(long, default_value_t = false)]
    pub relaxed: bool,
    /// Full spec as inline JSON; overrides the per-field flags.
    #[arg(long)]
    pub spec_json: Option<String>,
    /// JSON config file with named specs: {"specs": {"name": {...}}}.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Name of the spec inside --config.
    #[arg(long)]
    pub spec: Option<String>,
}

#[derive(serde::Deserialize)]
struct ConfigFile {
    specs: BTreeMap<String, DomainSpec>,
}

pub fn parse_profile(text: &str) -> Result<PhiProfile> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).context("invalid profile JSON");
    }
    PhiProfile::parse_name(text).ok_or_else(|| anyhow!("--profile: unknown profile name `{text}`"))
}

impl SpecArgs {
    pub fn resolve(&self) -> Result<DomainSpec> {
        if let Some(path) = &self.config {
            let name = self
                .spec
                .as_ref()
                .ok_or_else(|| anyhow!("--config requires --spec <name>"))?;
            let raw = fs::read_to_string(path)
                .with_context(|| format!("--config: cannot read {}", path.display()))?;
            let config: ConfigFile =
                serde_json::from_str(&raw).context("--config: invalid config JSON")?;
            return config
                .specs
                .get(name)
                .cloned()
                .ok_or_else(|| anyhow!("--spec: no spec named `{name}` in config"));
        }
        if let Some(raw) = &self.spec_json {
            return serde_json::from_str(raw).context("--spec-json: invalid spec JSON");
        }
        let kind = self
            .kind
            .as_ref()
            .ok_or_else(|| anyhow!("--kind is required (I, II, III or IV)"))?;
        let t = self.t.unwrap_or(0.0);
        let k = self.k.unwrap_or(2);
        let spec = match kind.as_str() {
            "I" => DomainSpec::type_i(
                self.m.ok_or_else(|| anyhow!("--kind I requires --m"))?,
                self.n.ok_or_else(|| anyhow!("--kind I requires --n"))?,
                t,
                k,
            ),
            "II" => DomainSpec::type_ii_relaxed(
                self.p.ok_or_else(|| anyhow!("--kind II requires --p"))?,
                t,
                k,
                self.relaxed,
            ),
            "III" => DomainSpec::type_iii_relaxed(
                self.q.ok_or_else(|| anyhow!("--kind III requires --q"))?,
                t,
                k,
                self.relaxed,
            ),
            "IV" => {
                let dim = self
                    .n
                    .ok_or_else(|| anyhow!("--kind IV requires --n (the dimension N)"))?;
                let profile = match &self.profile {
                    Some(text) => parse_profile(text)?,
                    None => PhiProfile::Bergman,
                };
                DomainSpec::type_iv_relaxed(dim, profile, self.relaxed)
            }
            other => bail!("--kind: `{other}` is not one of I, II, III, IV"),
        };
        spec.map_err(|e| anyhow!("invalid spec parameters: {e}"))
    }
}

fn matrix_from_json(raw: &str) -> Result<ComplexMatrix> {
    serde_json::from_str(raw).context("invalid matrix JSON")
}

/// Parse a point/tangent argument: `origin`, `identity`, `e11`, `e1`,
/// inline JSON, or `@file`.
pub fn parse_matrix(spec: &DomainSpec, text: &str) -> Result<ComplexMatrix> {
    let (rows, cols) = spec.shape();
    match text {
        "origin" | "zero" => Ok(ComplexMatrix::zeros(rows, cols)),
        "identity" => {
            if rows == 1 {
                bail!("--tangent identity: undefined for row-vector domains; use e1");
            }
            let mut m = ComplexMatrix::zeros(rows, cols);
            for i in 0..rows.min(cols) {
                m[(i, i)] = Complex64::new(1.0, 0.0);
            }
            Ok(m)
        }
        "e11" | "e1" => Ok(ComplexMatrix::unit(rows, cols, 0, 0)),
        _ if text.starts_with('@') => {
            let raw = fs::read_to_string(&text[1..])
                .with_context(|| format!("cannot read matrix file {}", &text[1..]))?;
            matrix_from_json(&raw)
        }
        _ => matrix_from_json(text),
    }
}
