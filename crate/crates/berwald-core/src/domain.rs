//! The four classical matrix domains: specifications, membership tests and
//! symmetry-class handling.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::linalg;
use crate::mat::{row_dot_h, row_dot_t, ComplexMatrix};
use crate::phi::PhiProfile;
use crate::tol;
use crate::Result;

/// Deformation parameters of the type I–III metric families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deformation {
    /// Deformation weight `t ≥ 0`; `t = 0` recovers the Bergman metric.
    pub t: f64,
    /// Trace-power exponent `k ≥ 2`.
    pub k: u32,
}

impl Deformation {
    pub fn new(t: f64, k: u32) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) || k < 2 {
            return Err(Error::BadParams);
        }
        Ok(Deformation { t, k })
    }

    /// Bergman case `t = 0` (the exponent is immaterial).
    pub fn bergman() -> Self {
        Deformation { t: 0.0, k: 2 }
    }
}

/// Which classical domain, its dimensions and metric parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainSpec {
    /// `m×n` complex matrices, `I - ZZ̄' > 0`, `m ≤ n`.
    TypeI {
        m: usize,
        n: usize,
        deform: Deformation,
    },
    /// Symmetric `p×p` matrices, `I - ZZ̄ > 0`.
    TypeII { p: usize, deform: Deformation },
    /// Skew-symmetric `q×q` matrices, `I + ZZ̄ > 0`.
    TypeIII { q: usize, deform: Deformation },
    /// Row vectors in `ℂ^N` with `1 + |zz'|² - 2zz̄' > 0`, `1 - |zz'| > 0`.
    TypeIV { dim: usize, profile: PhiProfile },
}

/// Membership verdict with the margin to the boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    pub inside: bool,
    /// Minimum eigenvalue of the defining Hermitian matrix (types I–III) or
    /// the smaller slack of the two defining inequalities (type IV).
    pub margin: f64,
}

impl DomainSpec {
    pub fn type_i(m: usize, n: usize, t: f64, k: u32) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::BadParams);
        }
        Ok(DomainSpec::TypeI {
            m,
            n,
            deform: Deformation::new(t, k)?,
        })
    }

    pub fn type_ii(p: usize, t: f64, k: u32) -> Result<Self> {
        Self::type_ii_relaxed(p, t, k, false)
    }

    pub fn type_ii_relaxed(p: usize, t: f64, k: u32, relaxed: bool) -> Result<Self> {
        if p < 2 && !relaxed || p < 1 {
            return Err(Error::BadParams);
        }
        Ok(DomainSpec::TypeII {
            p,
            deform: Deformation::new(t, k)?,
        })
    }

    pub fn type_iii(q: usize, t: f64, k: u32) -> Result<Self> {
        Self::type_iii_relaxed(q, t, k, false)
    }

    /// The metric formulas stay meaningful for `q ∈ {2, 3}`; such sizes are
    /// admitted only behind the `relaxed` flag for brute-force testing.
    pub fn type_iii_relaxed(q: usize, t: f64, k: u32, relaxed: bool) -> Result<Self> {
        if q < 4 && !relaxed || q < 2 {
            return Err(Error::BadParams);
        }
        Ok(DomainSpec::TypeIII {
            q,
            deform: Deformation::new(t, k)?,
        })
    }

    pub fn type_iv(dim: usize, profile: PhiProfile) -> Result<Self> {
        Self::type_iv_relaxed(dim, profile, false)
    }

    pub fn type_iv_relaxed(dim: usize, profile: PhiProfile, relaxed: bool) -> Result<Self> {
        if dim < 5 && !relaxed || dim < 2 {
            return Err(Error::BadParams);
        }
        Ok(DomainSpec::TypeIV { dim, profile })
    }

    /// Matrix shape of points and tangents: `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        match self {
            DomainSpec::TypeI { m, n, .. } => (*m, *n),
            DomainSpec::TypeII { p, .. } => (*p, *p),
            DomainSpec::TypeIII { q, .. } => (*q, *q),
            DomainSpec::TypeIV { dim, .. } => (1, *dim),
        }
    }

    /// Intrinsic complex dimension.
    pub fn complex_dim(&self) -> usize {
        match self {
            DomainSpec::TypeI { m, n, .. } => m * n,
            DomainSpec::TypeII { p, .. } => p * (p + 1) / 2,
            DomainSpec::TypeIII { q, .. } => q * (q - 1) / 2,
            DomainSpec::TypeIV { dim, .. } => *dim,
        }
    }

    /// Rank of the domain (length of the singular-value profile).
    pub fn rank(&self) -> usize {
        match self {
            DomainSpec::TypeI { m, .. } => *m,
            DomainSpec::TypeII { p, .. } => *p,
            DomainSpec::TypeIII { q, .. } => q / 2,
            DomainSpec::TypeIV { .. } => 2,
        }
    }

    /// Bergman normalization constant: `m+n`, `p+1`, `q-1`, or `2N`.
    pub fn scale(&self) -> f64 {
        match self {
            DomainSpec::TypeI { m, n, .. } => (m + n) as f64,
            DomainSpec::TypeII { p, .. } => (p + 1) as f64,
            DomainSpec::TypeIII { q, .. } => (q - 1) as f64,
            DomainSpec::TypeIV { dim, .. } => 2.0 * *dim as f64,
        }
    }

    /// Deformation parameters for types I–III; `None` for type IV.
    pub fn deformation(&self) -> Option<Deformation> {
        match self {
            DomainSpec::TypeI { deform, .. }
            | DomainSpec::TypeII { deform, .. }
            | DomainSpec::TypeIII { deform, .. } => Some(*deform),
            DomainSpec::TypeIV { .. } => None,
        }
    }

    pub fn profile(&self) -> Option<&PhiProfile> {
        match self {
            DomainSpec::TypeIV { profile, .. } => Some(profile),
            _ => None,
        }
    }

    /// One-letter tag: "I", "II", "III", "IV".
    pub fn kind_tag(&self) -> &'static str {
        match self {
            DomainSpec::TypeI { .. } => "I",
            DomainSpec::TypeII { .. } => "II",
            DomainSpec::TypeIII { .. } => "III",
            DomainSpec::TypeIV { .. } => "IV",
        }
    }

    /// Check the shape and symmetry class of a point or tangent matrix.
    /// Returns the exactly symmetrized copy used by all computations.
    pub fn check_class(&self, z: &ComplexMatrix) -> Result<ComplexMatrix> {
        if z.shape() != self.shape() {
            return Err(Error::ShapeMismatch);
        }
        if !z.is_finite() {
            return Err(Error::BadParams);
        }
        match self {
            DomainSpec::TypeI { .. } | DomainSpec::TypeIV { .. } => Ok(z.clone()),
            DomainSpec::TypeII { .. } => {
                if z.symmetric_defect() > tol::STRUCTURE.bound(z.frobenius_norm()) {
                    return Err(Error::SymmetryViolation);
                }
                Ok(z.symmetrize())
            }
            DomainSpec::TypeIII { .. } => {
                if z.skew_defect() > tol::STRUCTURE.bound(z.frobenius_norm()) {
                    return Err(Error::SymmetryViolation);
                }
                Ok(z.antisymmetrize())
            }
        }
    }

    /// Membership test with margin.
    ///
    /// For types I–III the defining matrix reduces to `I - ZZ̄'` in all
    /// three cases (for symmetric `Z` one has `Z̄ = Z̄'`, for skew `Z` one
    /// has `Z̄ = -Z̄'`), so the margin is the minimum eigenvalue of that
    /// single Hermitian matrix.  For type IV both scalar slacks are
    /// reported through their minimum.
    pub fn contains(&self, z: &ComplexMatrix) -> Result<Membership> {
        let z = self.check_class(z)?;
        match self {
            DomainSpec::TypeIV { .. } => {
                let zz_t = row_dot_t(&z, &z);
                let zz_h = row_dot_h(&z, &z).re;
                let a = 1.0 + zz_t.norm_sqr() - 2.0 * zz_h;
                let b = 1.0 - zz_t.norm();
                let margin = a.min(b);
                Ok(Membership {
                    inside: margin > 0.0,
                    margin,
                })
            }
            _ => {
                let gram = defining_matrix(&z);
                let eig = linalg::hermitian_eigen(&gram)?;
                let margin = eig.values[0];
                Ok(Membership {
                    inside: margin > 0.0,
                    margin,
                })
            }
        }
    }
}

/// `I - ZZ̄'` for a matrix point (types I–III share this form).
pub(crate) fn defining_matrix(z: &ComplexMatrix) -> ComplexMatrix {
    let m = z.rows();
    ComplexMatrix::identity(m)
        .sub(&z.matmul(&z.adjoint()))
        .hermitize()
}

/// Convenience origin point for a spec.
pub fn origin(spec: &DomainSpec) -> ComplexMatrix {
    let (r, c) = spec.shape();
    ComplexMatrix::zeros(r, c)
}

/// Scalar invariants of a type-IV point: `σ = zz'`, `‖z‖²`, and
/// `Δ(z) = 1 + |zz'|² - 2zz̄'`.
pub(crate) fn type_iv_invariants(z: &ComplexMatrix) -> (Complex64, f64, f64) {
    let sigma = row_dot_t(z, z);
    let norm_sq = row_dot_h(z, z).re;
    let delta = 1.0 + sigma.norm_sqr() - 2.0 * norm_sq;
    (sigma, norm_sq, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn center_is_inside_every_domain() {
        let specs = vec![
            DomainSpec::type_i(2, 3, 1.0, 2).unwrap(),
            DomainSpec::type_ii(3, 0.5, 2).unwrap(),
            DomainSpec::type_iii(4, 1.0, 3).unwrap(),
            DomainSpec::type_iv(5, PhiProfile::Bergman).unwrap(),
        ];
        for spec in &specs {
            let m = spec.contains(&origin(spec)).unwrap();
            assert!(m.inside);
            assert!((m.margin - 1.0).abs() < 1e-14, "margin = {}", m.margin);
        }
    }

    #[test]
    fn boundary_point_rejected() {
        let spec = DomainSpec::type_i(2, 2, 0.0, 2).unwrap();
        let z = ComplexMatrix::diag(&[1.0, 0.0]);
        let m = spec.contains(&z).unwrap();
        assert!(!m.inside);
        assert!(m.margin.abs() < 1e-14);
    }

    #[test]
    fn type_iv_hand_example() {
        let spec = DomainSpec::type_iv(5, PhiProfile::Bergman).unwrap();
        let z = ComplexMatrix::row_vector(&[
            c(0.5, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]);
        let m = spec.contains(&z).unwrap();
        assert!(m.inside);
        // 1 + 0.0625 - 0.5 = 0.5625 and 1 - 0.25 = 0.75; margin is the smaller.
        assert!((m.margin - 0.5625).abs() < 1e-15);
    }

    #[test]
    fn symmetry_violations_detected() {
        let spec2 = DomainSpec::type_ii(2, 0.0, 2).unwrap();
        let mut z = ComplexMatrix::zeros(2, 2);
        z[(0, 1)] = c(0.3, 0.0);
        assert_eq!(spec2.contains(&z).unwrap_err(), Error::SymmetryViolation);

        let spec3 = DomainSpec::type_iii(4, 0.0, 2).unwrap();
        let mut z = ComplexMatrix::zeros(4, 4);
        z[(0, 1)] = c(0.3, 0.0);
        z[(1, 0)] = c(0.3, 0.0);
        assert_eq!(spec3.contains(&z).unwrap_err(), Error::SymmetryViolation);
    }

    #[test]
    fn shape_mismatch_detected() {
        let spec = DomainSpec::type_i(2, 3, 0.0, 2).unwrap();
        let z = ComplexMatrix::zeros(2, 2);
        assert_eq!(spec.contains(&z).unwrap_err(), Error::ShapeMismatch);
    }

    #[test]
    fn standing_assumptions_enforced_unless_relaxed() {
        assert!(DomainSpec::type_iii(3, 0.0, 2).is_err());
        assert!(DomainSpec::type_iii_relaxed(3, 0.0, 2, true).is_ok());
        assert!(DomainSpec::type_iv(4, PhiProfile::Bergman).is_err());
        assert!(DomainSpec::type_iv_relaxed(4, PhiProfile::Bergman, true).is_ok());
        assert!(DomainSpec::type_i(3, 2, 0.0, 2).is_err());
        assert!(DomainSpec::type_i(2, 3, -0.5, 2).is_err());
        assert!(DomainSpec::type_i(2, 3, 1.0, 1).is_err());
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::{Deformation, DomainSpec};
    use crate::phi::PhiProfile;
    use alloc::collections::BTreeMap;
    use alloc::string::String;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Wire format:
    /// `{"kind": "I"|"II"|"III"|"IV", "dims": {...}, "t": ..., "k": ...,
    ///   "phi": ..., "relaxed": bool}`.
    #[derive(Serialize, Deserialize)]
    struct Repr {
        kind: String,
        dims: BTreeMap<String, usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phi: Option<PhiProfile>,
        #[serde(default, skip_serializing_if = "core::ops::Not::not")]
        relaxed: bool,
    }

    impl Serialize for DomainSpec {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            let mut dims = BTreeMap::new();
            let (mut t, mut k, mut phi) = (None, None, None);
            let kind = String::from(self.kind_tag());
            let relaxed = match self {
                DomainSpec::TypeI { m, n, deform } => {
                    dims.insert(String::from("m"), *m);
                    dims.insert(String::from("n"), *n);
                    t = Some(deform.t);
                    k = Some(deform.k);
                    false
                }
                DomainSpec::TypeII { p, deform } => {
                    dims.insert(String::from("p"), *p);
                    t = Some(deform.t);
                    k = Some(deform.k);
                    *p < 2
                }
                DomainSpec::TypeIII { q, deform } => {
                    dims.insert(String::from("q"), *q);
                    t = Some(deform.t);
                    k = Some(deform.k);
                    *q < 4
                }
                DomainSpec::TypeIV { dim, profile } => {
                    dims.insert(String::from("N"), *dim);
                    phi = Some(profile.clone());
                    *dim < 5
                }
            };
            Repr {
                kind,
                dims,
                t,
                k,
                phi,
                relaxed,
            }
            .serialize(serializer)
        }
    }

    impl<'de> Deserialize<'de> for DomainSpec {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            let repr = Repr::deserialize(deserializer)?;
            let dim = |key: &str| -> Result<usize, D::Error> {
                repr.dims
                    .get(key)
                    .copied()
                    .ok_or_else(|| D::Error::custom("missing dimension"))
            };
            let deform = || -> Result<Deformation, D::Error> {
                Deformation::new(repr.t.unwrap_or(0.0), repr.k.unwrap_or(2))
                    .map_err(|e| D::Error::custom(e.code()))
            };
            let spec = match repr.kind.as_str() {
                "I" => {
                    let d = deform()?;
                    DomainSpec::type_i(dim("m")?, dim("n")?, d.t, d.k)
                }
                "II" => {
                    let d = deform()?;
                    DomainSpec::type_ii_relaxed(dim("p")?, d.t, d.k, repr.relaxed)
                }
                "III" => {
                    let d = deform()?;
                    DomainSpec::type_iii_relaxed(dim("q")?, d.t, d.k, repr.relaxed)
                }
                "IV" => {
                    let profile = repr
                        .phi
                        .ok_or_else(|| D::Error::custom("type IV requires a phi profile"))?;
                    DomainSpec::type_iv_relaxed(dim("N")?, profile, repr.relaxed)
                }
                _ => return Err(D::Error::custom("kind must be I, II, III or IV")),
            };
            spec.map_err(|e| D::Error::custom(e.code()))
        }
    }
}
