//! Error type shared by all modules.

use core::fmt;

/// Failure modes of the library operations.
///
/// Each variant has a stable machine-readable code (see [`Error::code`])
/// used by the CLI JSON envelope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Input expected to be Hermitian fails the symmetry check.
    NotHermitian,
    /// Hermitian input has an eigenvalue `≤ 0` where positivity is required.
    NotPositiveDefinite,
    /// Square matrix expected.
    NotSquare,
    /// Matrix dimensions do not match the expected shape.
    ShapeMismatch,
    /// Symmetric/skew-symmetric structure violated beyond tolerance.
    SymmetryViolation,
    /// Base point lies outside the domain.
    NotInDomain,
    /// Rejection sampler exceeded its retry budget.
    SamplerExhausted,
    /// Operation undefined for a zero tangent vector.
    ZeroTangent,
    /// Parameter outside its admissible range (`t < 0`, `k < 2`, bad dims).
    BadParams,
    /// Profile fails the strong pseudoconvexity conditions.
    InvalidProfile,
    /// A Gram matrix is not positive definite within tolerance; the base
    /// point is too close to the boundary for reliable factors.
    NumericalBreakdown,
    /// A linear solve hit a (near-)singular pivot.
    SingularPivot,
}

impl Error {
    /// Stable identifier for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotHermitian => "NotHermitian",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::NotSquare => "NotSquare",
            Error::ShapeMismatch => "ShapeMismatch",
            Error::SymmetryViolation => "SymmetryViolation",
            Error::NotInDomain => "NotInDomain",
            Error::SamplerExhausted => "SamplerExhausted",
            Error::ZeroTangent => "ZeroTangent",
            Error::BadParams => "BadParams",
            Error::InvalidProfile => "InvalidProfile",
            Error::NumericalBreakdown => "NumericalBreakdown",
            Error::SingularPivot => "SingularPivot",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::NotHermitian => "matrix is not Hermitian within tolerance",
            Error::NotPositiveDefinite => "matrix is not positive definite",
            Error::NotSquare => "matrix is not square",
            Error::ShapeMismatch => "matrix shape does not match the expected dimensions",
            Error::SymmetryViolation => "matrix violates the required symmetry class",
            Error::NotInDomain => "point is not inside the domain",
            Error::SamplerExhausted => "sampler exhausted its retry budget",
            Error::ZeroTangent => "operation is undefined for the zero tangent vector",
            Error::BadParams => "parameter outside admissible range",
            Error::InvalidProfile => "profile violates the strong pseudoconvexity conditions",
            Error::NumericalBreakdown => "Gram matrix not positive definite within tolerance",
            Error::SingularPivot => "linear solve hit a singular pivot",
        };
        f.write_str(msg)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
