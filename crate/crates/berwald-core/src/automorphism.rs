//! Normalizing automorphisms `Φ_{Z₀}` with `Φ_{Z₀}(Z₀) = 0`, their
//! differentials, and the type-IV normalized invariants `(r̃, s̃)`.
//!
//! The factor matrices are pinned down by Gram conditions only, so they are
//! determined up to a unitary left factor; this module always takes the
//! Hermitian (real symmetric for type IV) principal square root, which
//! makes construction deterministic:
//!
//! * type I — `Ā'A = (I - Z₀Z̄₀')⁻¹`, `D̄'D = (I - Z̄₀'Z₀)⁻¹`,
//!   `Φ(Z) = A(Z-Z₀)(I - Z̄₀'Z)⁻¹D⁻¹`;
//! * type II — `Ā'A = (I - Z₀Z̄₀)⁻¹`, `Φ(Z) = A(Z-Z₀)(I - Z̄₀Z)⁻¹Ā⁻¹`;
//! * type III — `Ā'A = (I + Z₀Z̄₀)⁻¹`, `Φ(Z) = A(Z-Z₀)(I + Z̄₀Z)⁻¹Ā⁻¹`;
//! * type IV — real `X₀` (2×N), `AA' = (I - X₀X₀')⁻¹` with `det A > 0`,
//!   `DD' = (I - X₀'X₀)⁻¹`, and the scalar-prefactor Möbius form.
//!
//! Differentials are closed-form at every interior point, not only at
//! `Z₀`; the finite-difference consistency of `differential_at` against
//! `apply` is part of the test suite.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::domain::{type_iv_invariants, DomainSpec};
use crate::error::Error;
use crate::linalg::{hermitian_sqrt, lu_inverse};
use crate::mat::{row_dot_h, row_dot_t, ComplexMatrix};
use crate::tol::NEAR_BOUNDARY_MARGIN;
use crate::Result;

/// Normalizing automorphism of a classical domain, with its factor
/// matrices.
#[derive(Clone, Debug)]
pub enum Automorphism {
    TypeI {
        z0: ComplexMatrix,
        a: ComplexMatrix,
        d: ComplexMatrix,
    },
    TypeII {
        z0: ComplexMatrix,
        a: ComplexMatrix,
    },
    TypeIII {
        z0: ComplexMatrix,
        a: ComplexMatrix,
    },
    TypeIV {
        z0: ComplexMatrix,
        x0: ComplexMatrix,
        a: ComplexMatrix,
        d: ComplexMatrix,
    },
}

/// Normalized invariants of a type-IV tangent pair: `r̃` is the Bergman
/// quadratic form, `s̃ ∈ [0,1]` measures isotropy of the direction.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NormalizedIvData {
    pub r_tilde: f64,
    pub s_tilde: f64,
}

/// Real 2×N matrix `X₀` of the type-IV normalizer.
pub(crate) fn x0_matrix(z0: &ComplexMatrix) -> ComplexMatrix {
    let n = z0.cols();
    let (sigma, _, _) = type_iv_invariants(z0);
    let denom = 1.0 - sigma.norm_sqr();
    let mut x0 = ComplexMatrix::zeros(2, n);
    let i_unit = Complex64::new(0.0, 1.0);
    for j in 0..n {
        let zj = z0[(0, j)];
        let row1 = (sigma.conj() - 1.0) * zj + (sigma - 1.0) * zj.conj();
        let row2 = i_unit * (sigma + 1.0) * zj.conj() - i_unit * (sigma.conj() + 1.0) * zj;
        x0[(0, j)] = Complex64::new(-row1.re / denom, 0.0);
        x0[(1, j)] = Complex64::new(-row2.re / denom, 0.0);
    }
    x0
}

fn real_sym_sqrt_inverse(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    // Principal symmetric square root of g⁻¹ for a real symmetric PD g.
    let inv = lu_inverse(g).map_err(|_| Error::NumericalBreakdown)?;
    let s = hermitian_sqrt(&inv.hermitize()).map_err(|_| Error::NumericalBreakdown)?;
    // Real input keeps the root real; drop roundoff in the imaginary part.
    Ok(ComplexMatrix::from_fn(s.rows(), s.cols(), |i, j| {
        Complex64::new(s[(i, j)].re, 0.0)
    }))
}

/// `((1+zz')/2, (1-zz')/(2i))` as a 1×2 row.
fn half_circle_row(z: &ComplexMatrix) -> ComplexMatrix {
    let sigma = row_dot_t(z, z);
    let one = Complex64::new(1.0, 0.0);
    let two_i = Complex64::new(0.0, 2.0);
    ComplexMatrix::row_vector(&[(one + sigma) * 0.5, (one - sigma) / two_i])
}

/// Column `(1; i)`.
fn one_i_column() -> ComplexMatrix {
    let mut c = ComplexMatrix::zeros(2, 1);
    c[(0, 0)] = Complex64::new(1.0, 0.0);
    c[(1, 0)] = Complex64::new(0.0, 1.0);
    c
}

/// Construct the normalizer carrying `z0` to the origin.
///
/// Fails with `NotInDomain` outside the domain and `NumericalBreakdown`
/// when the membership margin is below `1e-8` (the Gram inverses are too
/// ill-conditioned near the boundary to honor the factor tolerances).
pub fn normalizer(spec: &DomainSpec, z0: &ComplexMatrix) -> Result<Automorphism> {
    let membership = spec.contains(z0)?;
    if !membership.inside {
        return Err(Error::NotInDomain);
    }
    if membership.margin < NEAR_BOUNDARY_MARGIN {
        return Err(Error::NumericalBreakdown);
    }
    let z0 = spec.check_class(z0)?;
    match spec {
        DomainSpec::TypeI { m, n, .. } => {
            let gram_left = ComplexMatrix::identity(*m).sub(&z0.matmul(&z0.adjoint()));
            let gram_right = ComplexMatrix::identity(*n).sub(&z0.adjoint().matmul(&z0));
            let a = hermitian_sqrt(&lu_inverse(&gram_left.hermitize())?.hermitize())?;
            let d = hermitian_sqrt(&lu_inverse(&gram_right.hermitize())?.hermitize())?;
            Ok(Automorphism::TypeI { z0, a, d })
        }
        DomainSpec::TypeII { p, .. } => {
            let gram = ComplexMatrix::identity(*p).sub(&z0.matmul(&z0.conj()));
            let a = hermitian_sqrt(&lu_inverse(&gram.hermitize())?.hermitize())?;
            Ok(Automorphism::TypeII { z0, a })
        }
        DomainSpec::TypeIII { q, .. } => {
            let gram = ComplexMatrix::identity(*q).add(&z0.matmul(&z0.conj()));
            let a = hermitian_sqrt(&lu_inverse(&gram.hermitize())?.hermitize())?;
            Ok(Automorphism::TypeIII { z0, a })
        }
        DomainSpec::TypeIV { dim, .. } => {
            let x0 = x0_matrix(&z0);
            let gram_a = ComplexMatrix::identity(2).sub(&x0.matmul(&x0.transpose()));
            let gram_d = ComplexMatrix::identity(*dim).sub(&x0.transpose().matmul(&x0));
            let a = real_sym_sqrt_inverse(&gram_a)?;
            let d = real_sym_sqrt_inverse(&gram_d)?;
            Ok(Automorphism::TypeIV { z0, x0, a, d })
        }
    }
}

impl Automorphism {
    pub fn base_point(&self) -> &ComplexMatrix {
        match self {
            Automorphism::TypeI { z0, .. }
            | Automorphism::TypeII { z0, .. }
            | Automorphism::TypeIII { z0, .. }
            | Automorphism::TypeIV { z0, .. } => z0,
        }
    }

    /// Apply the automorphism to an interior point.
    pub fn apply(&self, z: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            Automorphism::TypeI { z0, a, d } => {
                let n = z0.cols();
                let middle = ComplexMatrix::identity(n).sub(&z0.adjoint().matmul(z));
                let inv = lu_inverse(&middle)?;
                let d_inv = lu_inverse(d)?;
                Ok(a.matmul(&z.sub(z0)).matmul(&inv).matmul(&d_inv))
            }
            Automorphism::TypeII { z0, a } => {
                let p = z0.rows();
                let middle = ComplexMatrix::identity(p).sub(&z0.conj().matmul(z));
                let inv = lu_inverse(&middle)?;
                let a_bar_inv = lu_inverse(&a.conj())?;
                Ok(a.matmul(&z.sub(z0)).matmul(&inv).matmul(&a_bar_inv))
            }
            Automorphism::TypeIII { z0, a } => {
                let q = z0.rows();
                let middle = ComplexMatrix::identity(q).add(&z0.conj().matmul(z));
                let inv = lu_inverse(&middle)?;
                let a_bar_inv = lu_inverse(&a.conj())?;
                Ok(a.matmul(&z.sub(z0)).matmul(&inv).matmul(&a_bar_inv))
            }
            Automorphism::TypeIV { x0, a, d, .. } => {
                let u = half_circle_row(z);
                let rho = u
                    .sub(&z.matmul(&x0.transpose()))
                    .matmul(a)
                    .matmul(&one_i_column())[(0, 0)];
                if rho.norm() < 1e-150 {
                    return Err(Error::SingularPivot);
                }
                let num = z.sub(&u.matmul(x0));
                Ok(num.matmul(d).scale(rho.inv()))
            }
        }
    }

    /// Differential at the base point `Z₀`: the matrix sandwich `AVD̄'`
    /// (type I), the congruence `AVA'` (types II/III), or `v·J(z₀)` with
    /// the closed Jacobian (type IV).
    pub fn differential(&self, v: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            Automorphism::TypeI { a, d, .. } => Ok(a.matmul(v).matmul(&d.adjoint())),
            Automorphism::TypeII { a, .. } | Automorphism::TypeIII { a, .. } => {
                Ok(a.matmul(v).matmul(&a.transpose()))
            }
            Automorphism::TypeIV { z0, d, .. } => {
                let n = z0.cols();
                let (sigma, _, delta) = type_iv_invariants(z0);
                let denom = 1.0 - sigma.norm_sqr();
                // 𝔘 = I - 2/(1-|σ|²) · (z₀'z̄₀ - σ̄ z₀'z₀)
                let zt_zbar = z0.transpose().matmul(&z0.conj());
                let zt_z = z0.transpose().matmul(z0);
                let u_mat = ComplexMatrix::identity(n)
                    .sub(&zt_zbar.sub(&zt_z.scale(sigma.conj())).scale_re(2.0 / denom));
                let j = u_mat.matmul(&d.transpose()).scale_re(1.0 / delta.sqrt());
                Ok(v.matmul(&j))
            }
        }
    }

    /// Differential at an arbitrary interior point `Z`, obtained by
    /// differentiating the Möbius form in closed form.  Agrees with
    /// [`Automorphism::differential`] at `Z = Z₀`.
    pub fn differential_at(&self, z: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            Automorphism::TypeI { z0, a, d } => {
                let n = z0.cols();
                let m = z0.rows();
                let middle = lu_inverse(&ComplexMatrix::identity(n).sub(&z0.adjoint().matmul(z)))?;
                let d_inv = lu_inverse(d)?;
                let left = ComplexMatrix::identity(m)
                    .add(&z.sub(z0).matmul(&middle).matmul(&z0.adjoint()));
                Ok(a.matmul(&left).matmul(v).matmul(&middle).matmul(&d_inv))
            }
            Automorphism::TypeII { z0, a } => {
                let p = z0.rows();
                let middle = lu_inverse(&ComplexMatrix::identity(p).sub(&z0.conj().matmul(z)))?;
                let a_bar_inv = lu_inverse(&a.conj())?;
                let left =
                    ComplexMatrix::identity(p).add(&z.sub(z0).matmul(&middle).matmul(&z0.conj()));
                Ok(a.matmul(&left).matmul(v).matmul(&middle).matmul(&a_bar_inv))
            }
            Automorphism::TypeIII { z0, a } => {
                let q = z0.rows();
                let middle = lu_inverse(&ComplexMatrix::identity(q).add(&z0.conj().matmul(z)))?;
                let a_bar_inv = lu_inverse(&a.conj())?;
                let left =
                    ComplexMatrix::identity(q).sub(&z.sub(z0).matmul(&middle).matmul(&z0.conj()));
                Ok(a.matmul(&left).matmul(v).matmul(&middle).matmul(&a_bar_inv))
            }
            Automorphism::TypeIV { x0, a, d, .. } => {
                let u = half_circle_row(z);
                let col = one_i_column();
                let rho = u.sub(&z.matmul(&x0.transpose())).matmul(a).matmul(&col)[(0, 0)];
                if rho.norm() < 1e-150 {
                    return Err(Error::SingularPivot);
                }
                let vz = row_dot_t(v, z);
                // du = (vz')·(1, i)
                let du = ComplexMatrix::row_vector(&[vz, vz * Complex64::new(0.0, 1.0)]);
                let drho = du.sub(&v.matmul(&x0.transpose())).matmul(a).matmul(&col)[(0, 0)];
                let num = z.sub(&u.matmul(x0));
                let dnum = v.sub(&du.matmul(x0));
                let rho_inv = rho.inv();
                let first = num.matmul(d).scale(-drho * rho_inv * rho_inv);
                let second = dnum.matmul(d).scale(rho_inv);
                Ok(first.add(&second))
            }
        }
    }
}

/// Push a tangent at `z` to the origin through the normalizer of `z`.
pub fn transported_tangent(
    spec: &DomainSpec,
    z: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    normalizer(spec, z)?.differential(v)
}

/// Type-IV normalized invariants via the push-forward:
/// `r̃ = 2N·ξξ̄'`, `s̃ = |ξξ'|²/(ξξ̄')²` with `ξ = (Φ_{z₀})_*(v)`.
pub fn r_s_tilde(
    spec: &DomainSpec,
    z: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<NormalizedIvData> {
    let dim = match spec {
        DomainSpec::TypeIV { dim, .. } => *dim,
        _ => return Err(Error::BadParams),
    };
    if v.shape() != spec.shape() {
        return Err(Error::ShapeMismatch);
    }
    if v.frobenius_norm() == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let xi = transported_tangent(spec, z, v)?;
    let r = row_dot_h(&xi, &xi).re;
    let s = (row_dot_t(&xi, &xi).norm_sqr() / (r * r)).min(1.0);
    Ok(NormalizedIvData {
        r_tilde: 2.0 * dim as f64 * r,
        s_tilde: s,
    })
}

/// Type-IV normalized invariants in closed form, with no automorphism
/// construction:
///
/// ```text
/// r̃ = (2N/Δ²)·v[ΔI - 2(z̄z̄')z'z - 2(1-2zz̄')z'z̄ + 2z̄'z - 2(zz')z̄'z̄]v̄',
/// s̃ = 4N²|vv'|² / (Δ²·r̃²),   Δ = 1 + |zz'|² - 2zz̄'.
/// ```
pub fn r_s_tilde_closed(
    spec: &DomainSpec,
    z: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<NormalizedIvData> {
    let dim = match spec {
        DomainSpec::TypeIV { dim, .. } => *dim,
        _ => return Err(Error::BadParams),
    };
    if z.shape() != spec.shape() || v.shape() != spec.shape() {
        return Err(Error::ShapeMismatch);
    }
    if v.frobenius_norm() == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let n = dim as f64;
    let (sigma, norm_sq, delta) = type_iv_invariants(z);
    let zt_z = z.transpose().matmul(z);
    let zt_zbar = z.transpose().matmul(&z.conj());
    let zh_z = z.adjoint().matmul(z);
    let zh_zbar = z.adjoint().matmul(&z.conj());
    let core = ComplexMatrix::identity(dim)
        .scale_re(delta)
        .sub(&zt_z.scale(sigma.conj() * 2.0))
        .sub(&zt_zbar.scale_re(2.0 * (1.0 - 2.0 * norm_sq)))
        .add(&zh_z.scale_re(2.0))
        .sub(&zh_zbar.scale(sigma * 2.0));
    let quad = v.matmul(&core).matmul(&v.adjoint())[(0, 0)].re;
    let r_tilde = 2.0 * n / (delta * delta) * quad;
    let vv = row_dot_t(v, v).norm_sqr();
    let s_tilde = (4.0 * n * n * vv / (delta * delta * r_tilde * r_tilde)).min(1.0);
    Ok(NormalizedIvData { r_tilde, s_tilde })
}

/// Entry permutation of 4×4 skew-symmetric matrices that swaps the (1,4)
/// and (2,3) slots; an isotropy of the type-III domain at `q = 4` that is
/// not of the congruence form.
pub fn type_iii_q4_swap(z: &ComplexMatrix) -> ComplexMatrix {
    debug_assert_eq!(z.shape(), (4, 4));
    let mut w = z.clone();
    w[(0, 3)] = z[(1, 2)];
    w[(3, 0)] = -z[(1, 2)];
    w[(1, 2)] = z[(0, 3)];
    w[(2, 1)] = -z[(0, 3)];
    w
}

#[cfg(feature = "serde")]
impl serde::Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        // Audit format: kind tag, base point, factor matrices.
        match self {
            Automorphism::TypeI { z0, a, d } => {
                let mut st = serializer.serialize_struct("Automorphism", 4)?;
                st.serialize_field("kind", "I")?;
                st.serialize_field("z0", z0)?;
                st.serialize_field("a", a)?;
                st.serialize_field("d", d)?;
                st.end()
            }
            Automorphism::TypeII { z0, a } => {
                let mut st = serializer.serialize_struct("Automorphism", 3)?;
                st.serialize_field("kind", "II")?;
                st.serialize_field("z0", z0)?;
                st.serialize_field("a", a)?;
                st.end()
            }
            Automorphism::TypeIII { z0, a } => {
                let mut st = serializer.serialize_struct("Automorphism", 3)?;
                st.serialize_field("kind", "III")?;
                st.serialize_field("z0", z0)?;
                st.serialize_field("a", a)?;
                st.end()
            }
            Automorphism::TypeIV { z0, x0, a, d } => {
                let mut st = serializer.serialize_struct("Automorphism", 5)?;
                st.serialize_field("kind", "IV")?;
                st.serialize_field("z0", z0)?;
                st.serialize_field("x0", x0)?;
                st.serialize_field("a", a)?;
                st.serialize_field("d", d)?;
                st.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::origin;
    use crate::phi::PhiProfile;
    use crate::sample::{sample_point, sample_tangent};
    use alloc::vec;
    use alloc::vec::Vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn all_specs() -> Vec<DomainSpec> {
        vec![
            DomainSpec::type_i(2, 3, 1.0, 2).unwrap(),
            DomainSpec::type_ii(3, 0.5, 2).unwrap(),
            DomainSpec::type_iii(4, 1.0, 3).unwrap(),
            DomainSpec::type_iv(5, PhiProfile::Sqrt1p).unwrap(),
        ]
    }

    #[test]
    fn normalizer_at_center_is_identity() {
        let spec = DomainSpec::type_i(2, 3, 0.0, 2).unwrap();
        let aut = normalizer(&spec, &origin(&spec)).unwrap();
        match &aut {
            Automorphism::TypeI { a, d, .. } => {
                assert!(a.sub(&ComplexMatrix::identity(2)).frobenius_norm() < 1e-13);
                assert!(d.sub(&ComplexMatrix::identity(3)).frobenius_norm() < 1e-13);
            }
            _ => unreachable!(),
        }
        let z = sample_point(&spec, 5).unwrap();
        assert!(aut.apply(&z).unwrap().sub(&z).frobenius_norm() < 1e-12);
    }

    #[test]
    fn factor_equations_hold() {
        for spec in &all_specs() {
            for seed in 0..20 {
                let z0 = sample_point(spec, seed).unwrap();
                let aut = normalizer(spec, &z0).unwrap();
                match &aut {
                    Automorphism::TypeI { a, d, .. } => {
                        let target =
                            lu_inverse(&ComplexMatrix::identity(2).sub(&z0.matmul(&z0.adjoint())))
                                .unwrap();
                        let got = a.adjoint().matmul(a);
                        assert!(
                            got.sub(&target).frobenius_norm() < 1e-10 * target.frobenius_norm()
                        );
                        let target =
                            lu_inverse(&ComplexMatrix::identity(3).sub(&z0.adjoint().matmul(&z0)))
                                .unwrap();
                        let got = d.adjoint().matmul(d);
                        assert!(
                            got.sub(&target).frobenius_norm() < 1e-10 * target.frobenius_norm()
                        );
                    }
                    Automorphism::TypeII { a, .. } => {
                        let target =
                            lu_inverse(&ComplexMatrix::identity(3).sub(&z0.matmul(&z0.conj())))
                                .unwrap();
                        let got = a.adjoint().matmul(a);
                        assert!(
                            got.sub(&target).frobenius_norm() < 1e-10 * target.frobenius_norm()
                        );
                    }
                    Automorphism::TypeIII { a, .. } => {
                        let target =
                            lu_inverse(&ComplexMatrix::identity(4).add(&z0.matmul(&z0.conj())))
                                .unwrap();
                        let got = a.adjoint().matmul(a);
                        assert!(
                            got.sub(&target).frobenius_norm() < 1e-10 * target.frobenius_norm()
                        );
                    }
                    Automorphism::TypeIV { x0, a, d, .. } => {
                        assert!(x0.as_slice().iter().all(|z| z.im == 0.0));
                        let gram = ComplexMatrix::identity(2).sub(&x0.matmul(&x0.transpose()));
                        let got = a.matmul(&a.transpose());
                        assert!(
                            got.sub(&lu_inverse(&gram).unwrap()).frobenius_norm()
                                < 1e-10 * got.frobenius_norm()
                        );
                        let gram = ComplexMatrix::identity(5).sub(&x0.transpose().matmul(x0));
                        let got = d.matmul(&d.transpose());
                        assert!(
                            got.sub(&lu_inverse(&gram).unwrap()).frobenius_norm()
                                < 1e-10 * got.frobenius_norm()
                        );
                        // det A > 0 for the 2×2 real factor.
                        let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
                        assert!(det.re > 0.0 && det.im.abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn normalizer_sends_base_point_to_origin() {
        for spec in &all_specs() {
            for seed in 0..20 {
                let z0 = sample_point(spec, seed).unwrap();
                let aut = normalizer(spec, &z0).unwrap();
                let img = aut.apply(&z0).unwrap();
                assert!(
                    img.frobenius_norm() < 1e-10,
                    "{}: |Φ(Z₀)| = {}",
                    spec.kind_tag(),
                    img.frobenius_norm()
                );
            }
        }
    }

    #[test]
    fn apply_preserves_membership() {
        for spec in &all_specs() {
            for seed in 0..30 {
                let z0 = sample_point(spec, seed).unwrap();
                let z = sample_point(spec, seed + 1000).unwrap();
                let aut = normalizer(spec, &z0).unwrap();
                let w = aut.apply(&z).unwrap();
                let m = spec.contains(&w).unwrap();
                assert!(
                    m.inside,
                    "{} seed {seed}: margin {}",
                    spec.kind_tag(),
                    m.margin
                );
            }
        }
    }

    #[test]
    fn normalizer_rejects_outside_points() {
        let spec = DomainSpec::type_i(2, 2, 0.0, 2).unwrap();
        let z = ComplexMatrix::diag(&[1.5, 0.0]);
        assert_eq!(normalizer(&spec, &z).unwrap_err(), Error::NotInDomain);
    }

    #[test]
    fn differential_matches_general_form_at_base_point() {
        for spec in &all_specs() {
            for seed in 0..10 {
                let z0 = sample_point(spec, seed).unwrap();
                let v = sample_tangent(spec, seed);
                let aut = normalizer(spec, &z0).unwrap();
                let fast = aut.differential(&v).unwrap();
                let general = aut.differential_at(&z0, &v).unwrap();
                assert!(
                    fast.sub(&general).frobenius_norm() < 1e-11,
                    "{}: {}",
                    spec.kind_tag(),
                    fast.sub(&general).frobenius_norm()
                );
            }
        }
    }

    #[test]
    fn differential_agrees_with_finite_differences_of_apply() {
        for spec in &all_specs() {
            let z0 = sample_point(spec, 3).unwrap();
            let z = sample_point(spec, 77).unwrap();
            let v = sample_tangent(spec, 5);
            let aut = normalizer(spec, &z0).unwrap();
            let analytic = aut.differential_at(&z, &v).unwrap();
            // Central differences of apply along the tangent direction.
            let h = 1e-6;
            let plus = aut.apply(&z.add(&v.scale_re(h))).unwrap();
            let minus = aut.apply(&z.sub(&v.scale_re(h))).unwrap();
            let fd = plus.sub(&minus).scale_re(0.5 / h);
            let err = analytic.sub(&fd).frobenius_norm() / analytic.frobenius_norm();
            assert!(err < 1e-6, "{}: rel err {err}", spec.kind_tag());
        }
    }

    #[test]
    fn differential_preserves_symmetry_class() {
        let spec = DomainSpec::type_ii(3, 0.5, 2).unwrap();
        let z0 = sample_point(&spec, 1).unwrap();
        let v = sample_tangent(&spec, 2);
        let out = normalizer(&spec, &z0).unwrap().differential(&v).unwrap();
        assert!(out.symmetric_defect() < 1e-12);

        let spec = DomainSpec::type_iii(4, 0.5, 2).unwrap();
        let z0 = sample_point(&spec, 1).unwrap();
        let v = sample_tangent(&spec, 2);
        let out = normalizer(&spec, &z0).unwrap().differential(&v).unwrap();
        assert!(out.skew_defect() < 1e-12);
    }

    #[test]
    fn r_s_tilde_hand_values_at_origin() {
        let spec = DomainSpec::type_iv(5, PhiProfile::Bergman).unwrap();
        let z0 = origin(&spec);
        // v = e₁: r̃ = 2N = 10, s̃ = 1.
        let v = ComplexMatrix::unit(1, 5, 0, 0);
        let data = r_s_tilde(&spec, &z0, &v).unwrap();
        assert!((data.r_tilde - 10.0).abs() < 1e-12);
        assert!((data.s_tilde - 1.0).abs() < 1e-12);
        // At the origin r̃ = 2N·vv̄' and s̃ = |vv'|²/(vv̄')² for any v.
        let v = sample_tangent(&spec, 4);
        let data = r_s_tilde(&spec, &z0, &v).unwrap();
        let r = row_dot_h(&v, &v).re;
        let s = row_dot_t(&v, &v).norm_sqr() / (r * r);
        assert!((data.r_tilde - 10.0 * r).abs() < 1e-12);
        assert!((data.s_tilde - s).abs() < 1e-12);
    }

    #[test]
    fn r_s_tilde_dual_paths_agree() {
        let spec = DomainSpec::type_iv(5, PhiProfile::Bergman).unwrap();
        for seed in 0..50 {
            let z = sample_point(&spec, seed).unwrap();
            let v = sample_tangent(&spec, seed + 1);
            let push = r_s_tilde(&spec, &z, &v).unwrap();
            let closed = r_s_tilde_closed(&spec, &z, &v).unwrap();
            assert!(
                (push.r_tilde - closed.r_tilde).abs() <= 1e-9 * closed.r_tilde,
                "seed {seed}: r̃ {} vs {}",
                push.r_tilde,
                closed.r_tilde
            );
            assert!(
                (push.s_tilde - closed.s_tilde).abs() <= 1e-9,
                "seed {seed}: s̃ {} vs {}",
                push.s_tilde,
                closed.s_tilde
            );
        }
    }

    #[test]
    fn q4_swap_preserves_class_and_eigenvalues() {
        let spec = DomainSpec::type_iii(4, 0.0, 2).unwrap();
        let z = sample_point(&spec, 9).unwrap();
        let w = type_iii_q4_swap(&z);
        assert!(w.skew_defect() == 0.0);
        // WW̄ and ZZ̄ share eigenvalues, so the singular values agree.
        let sz = crate::linalg::singular_values(&z);
        let sw = crate::linalg::singular_values(&w);
        for (a, b) in sz.values.iter().zip(&sw.values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn x0_hand_example() {
        // z0 = (0.3, 0, 0, 0, 0): X0 = [2·0.3/(1+0.09)·e₁ ; 0].
        let z0 = ComplexMatrix::row_vector(&[
            c(0.3, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]);
        let x0 = x0_matrix(&z0);
        assert!((x0[(0, 0)].re - 0.6 / 1.09).abs() < 1e-15);
        assert!(x0[(1, 0)].norm() < 1e-15);
        // I - X0X0' is positive definite.
        let gram = ComplexMatrix::identity(2).sub(&x0.matmul(&x0.transpose()));
        let eig = crate::linalg::hermitian_eigen(&gram).unwrap();
        assert!(eig.values[0] > 0.0);
    }
}
