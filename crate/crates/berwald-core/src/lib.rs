//! Invariant strongly pseudoconvex complex Finsler metrics on the classical
//! matrix domains.
//!
//! The four irreducible classical domains are realized as matrix balls:
//!
//! * type I — complex `m×n` matrices with `I - Z Z̄' > 0` (`m ≤ n`),
//! * type II — symmetric `p×p` matrices with `I - Z Z̄ > 0`,
//! * type III — skew-symmetric `q×q` matrices with `I + Z Z̄ > 0`,
//! * type IV — row vectors `z ∈ ℂ^N` with `1 + |zz'|² - 2 z z̄' > 0` and
//!   `1 - |zz'| > 0` (the Lie ball).
//!
//! On each of them this crate evaluates a family of holomorphically invariant
//! Kähler-Berwald metrics obtained by deforming the Bergman metric: for types
//! I–III
//!
//! ```text
//! F²(Z;V) = c/(1+t) · { 𝔅₁(Z;V) + t · 𝔅ₖ(Z;V)^(1/k) },
//! 𝔅ₗ(Z;V) = tr{ [(I-ZZ̄')⁻¹ V (I-Z̄'Z)⁻¹ V̄']ˡ },
//! ```
//!
//! with `c = m+n`, `p+1`, `q-1`, and for type IV `F²(z;v) = r̃·φ(s̃)` for a
//! positive profile `φ` on `[0,1]`.  The crate ships the closed-form
//! holomorphic sectional/bisectional curvatures of these metrics, their sharp
//! bounds, finite-difference oracles that re-derive the curvatures from the
//! metric alone, and batch verification suites for the structural identities
//! (automorphism invariance, strong pseudoconvexity, the vanishing mixed
//! derivative that certifies the Kähler-Berwald property, transport of the
//! `𝔅` blocks to the origin).
//!
//! The crate is `no_std`-compatible (requires `alloc`); IO, JSON formats and
//! the command-line interface live in the companion `berwald-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod automorphism;
pub mod chart;
pub mod curvature;
pub mod digest;
pub mod domain;
pub mod error;
pub mod fd;
pub mod kron;
pub mod linalg;
pub mod mat;
pub mod metric;
pub mod norm;
pub mod phi;
pub mod sample;
pub mod tol;
pub mod verify;

pub use error::Error;
pub use mat::ComplexMatrix;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
