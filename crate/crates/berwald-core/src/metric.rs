//! Global evaluation of the invariant metrics and their building blocks.
//!
//! For types I–III everything reduces to traces of powers of
//!
//! ```text
//! X(Z;V) = (I - ZZ̄')⁻¹ V (I - Z̄'Z)⁻¹ V̄',
//! ```
//!
//! the single formula covering all three symmetry classes (`Z̄' = Z̄` for
//! symmetric `Z`, `Z̄' = -Z̄` for skew `Z`).  Type IV is evaluated through
//! the closed-form normalized invariants `(r̃, s̃)` rather than by
//! composing the Möbius map, which avoids the worst conditioning.
//!
//! Tangents are rescaled to unit Frobenius norm before evaluation and the
//! result is scaled back by absolute homogeneity; the trace powers then
//! stay in a benign range for every admissible input.

use alloc::collections::BTreeMap;
use alloc::string::String;

#[allow(unused_imports)]
use num_traits::Float;

use crate::automorphism::r_s_tilde_closed;
use crate::domain::DomainSpec;
use crate::error::Error;
use crate::linalg::{lu_inverse, singular_values, trace_power};
use crate::mat::{row_dot_h, row_dot_t, ComplexMatrix};
use crate::Result;

/// Metric value at a tangent pair, with its building blocks.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MetricValue {
    pub f: f64,
    pub f_squared: f64,
    /// `B_1`/`B_k` for types I–III, `r_tilde`/`s_tilde` for type IV.
    pub components: BTreeMap<String, f64>,
}

/// Precomputed inverses of the defining matrices at a base point.
pub(crate) struct BlockCache {
    /// `(I - ZZ̄')⁻¹`.
    left: ComplexMatrix,
    /// `(I - Z̄'Z)⁻¹`.
    right: ComplexMatrix,
}

impl BlockCache {
    pub(crate) fn new(z: &ComplexMatrix) -> Result<Self> {
        let m = z.rows();
        let n = z.cols();
        let left = lu_inverse(&ComplexMatrix::identity(m).sub(&z.matmul(&z.adjoint())))?;
        let right = lu_inverse(&ComplexMatrix::identity(n).sub(&z.adjoint().matmul(z)))?;
        Ok(BlockCache { left, right })
    }

    pub(crate) fn block(&self, v: &ComplexMatrix) -> ComplexMatrix {
        self.left.matmul(v).matmul(&self.right).matmul(&v.adjoint())
    }

    /// `𝔅_l(Z;V) = tr(X(Z;V)ˡ)`.
    pub(crate) fn frak(&self, l: u32, v: &ComplexMatrix) -> f64 {
        trace_power(&self.block(v), l)
            .expect("block matrix is square")
            .re
    }

    /// `ℬ_{i,j}(Z;V,W) = tr(X(Z;V)ⁱ X(Z;W)ʲ)`.
    pub(crate) fn cal(&self, i: u32, j: u32, v: &ComplexMatrix, w: &ComplexMatrix) -> f64 {
        let xv = self.block(v);
        let xw = self.block(w);
        let mut acc = ComplexMatrix::identity(xv.rows());
        for _ in 0..i {
            acc = acc.matmul(&xv);
        }
        for _ in 0..j {
            acc = acc.matmul(&xw);
        }
        acc.trace().re
    }
}

fn validated_pair(
    spec: &DomainSpec,
    z: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let membership = spec.contains(z)?;
    if !membership.inside {
        return Err(Error::NotInDomain);
    }
    let z = spec.check_class(z)?;
    let v = spec.check_class(v)?;
    Ok((z, v))
}

/// `𝔅_l(Z;V)`: trace of the `l`-th power of the invariant block (types
/// I–III).
pub fn frak_b(spec: &DomainSpec, l: u32, z: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    if matches!(spec, DomainSpec::TypeIV { .. }) {
        return Err(Error::BadParams);
    }
    let (z, v) = validated_pair(spec, z, v)?;
    Ok(BlockCache::new(&z)?.frak(l, &v))
}

/// `ℬ_{i,j}(Z;V,W)` (types I–III); collapses to `𝔅_{i+j}` at `W = V`.
pub fn cal_b(
    spec: &DomainSpec,
    i: u32,
    j: u32,
    z: &ComplexMatrix,
    v: &ComplexMatrix,
    w: &ComplexMatrix,
) -> Result<f64> {
    if matches!(spec, DomainSpec::TypeIV { .. }) {
        return Err(Error::BadParams);
    }
    let (z, v) = validated_pair(spec, z, v)?;
    let w = spec.check_class(w)?;
    Ok(BlockCache::new(&z)?.cal(i, j, &v, &w))
}

/// `F²` evaluation without membership revalidation; base point and tangent
/// must already be in the right class.  Used by the finite-difference
/// drivers that perturb around validated inputs.
pub(crate) fn f_squared_unchecked(
    spec: &DomainSpec,
    z: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<f64> {
    match spec {
        DomainSpec::TypeIV { profile, .. } => {
            let data = r_s_tilde_closed(spec, z, v)?;
            Ok(data.r_tilde * profile.eval(data.s_tilde))
        }
        _ => {
            let deform = spec.deformation().unwrap();
            let cache = BlockCache::new(z)?;
            let b1 = cache.frak(1, v);
            if b1 == 0.0 {
                return Ok(0.0);
            }
            let bk = cache.frak(deform.k, v);
            Ok(spec.scale() / (1.0 + deform.t) * (b1 + deform.t * bk.powf(1.0 / deform.k as f64)))
        }
    }
}

/// Invariant metric `F(Z;V)` with its components.
pub fn metric(spec: &DomainSpec, z: &ComplexMatrix, v: &ComplexMatrix) -> Result<MetricValue> {
    let (z, v) = validated_pair(spec, z, v)?;
    let norm = v.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let unit = v.scale_re(1.0 / norm);
    let mut components = BTreeMap::new();
    let f_squared = match spec {
        DomainSpec::TypeIV { profile, .. } => {
            let data = r_s_tilde_closed(spec, &z, &v)?;
            components.insert(String::from("r_tilde"), data.r_tilde);
            components.insert(String::from("s_tilde"), data.s_tilde);
            data.r_tilde * profile.eval(data.s_tilde)
        }
        _ => {
            let deform = spec.deformation().unwrap();
            let cache = BlockCache::new(&z)?;
            let b1_unit = cache.frak(1, &unit);
            let bk_unit = cache.frak(deform.k, &unit);
            let unit_sq = spec.scale() / (1.0 + deform.t)
                * (b1_unit + deform.t * bk_unit.powf(1.0 / deform.k as f64));
            let scale2 = norm * norm;
            components.insert(String::from("B_1"), scale2 * b1_unit);
            components.insert(String::from("B_k"), scale2.powi(deform.k as i32) * bk_unit);
            scale2 * unit_sq
        }
    };
    Ok(MetricValue {
        f: f_squared.sqrt(),
        f_squared,
        components,
    })
}

/// Bergman quadratic form `ds²` on `(V, V̄)`: the `t = 0` (respectively
/// `φ ≡ 1`) member of the family.
pub fn bergman(spec: &DomainSpec, z: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    let (z, v) = validated_pair(spec, z, v)?;
    match spec {
        DomainSpec::TypeIV { .. } => {
            if v.frobenius_norm() == 0.0 {
                return Ok(0.0);
            }
            Ok(r_s_tilde_closed(spec, &z, &v)?.r_tilde)
        }
        _ => Ok(spec.scale() * BlockCache::new(&z)?.frak(1, &v)),
    }
}

/// Carathéodory = Kobayashi norm at the origin: the largest singular value
/// of the tangent matrix (types I–III), or
/// `√(‖ξ‖² + √(‖ξ‖⁴ - |ξξ'|²))` (type IV).  Reference value only; it is
/// not smooth and not a member of the Finsler family.
pub fn reference_norm_ck(spec: &DomainSpec, xi: &ComplexMatrix) -> Result<f64> {
    let xi = spec.check_class(xi)?;
    if xi.frobenius_norm() == 0.0 {
        return Err(Error::ZeroTangent);
    }
    match spec {
        DomainSpec::TypeIV { .. } => {
            let nsq = row_dot_h(&xi, &xi).re;
            let cross = row_dot_t(&xi, &xi).norm_sqr();
            Ok((nsq + (nsq * nsq - cross).max(0.0).sqrt()).sqrt())
        }
        _ => Ok(singular_values(&xi).max()),
    }
}

/// Sum `Σ λᵢ^(2l)` over singular values; the spectral route to `𝔅_l(0;·)`.
pub fn frak_b_origin_sv(v: &ComplexMatrix, l: u32) -> f64 {
    singular_values(v)
        .values
        .iter()
        .map(|x| x.powi(2 * l as i32))
        .sum()
}
