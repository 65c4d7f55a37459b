//! Origin Minkowski norms and their vertical Hessians.
//!
//! Types I–III share the deformed trace norm on `m×n` matrices,
//!
//! ```text
//! f²(V) = [ tr(VV̄') + t·tr((VV̄')ᵏ)^(1/k) ] / (1+t),
//! ```
//!
//! which is invariant under `V ↦ AVB` for unitary `A, B` and therefore a
//! symmetric function of the singular values of `V`.  Its complex vertical
//! Hessian at a nonzero `V` is assembled from the sesquilinear form
//! obtained by polarizing the positivity estimate: with `G = VV̄'`,
//! `𝒜 = tr(Gᵏ)`,
//!
//! ```text
//! (1+t)·h(W,U) = tr(WŪ') + t𝒜^(1/k-1) tr(WŪ'G^(k-1))
//!   + t𝒜^(1/k-2) Σ_{i=0}^{k-2} [ 𝒜 tr(W(V̄'V)^(i+1)Ū'G^(k-i-2))
//!                                - tr(WV̄'G^(k-1)) · conj(tr(UV̄'G^(k-1))) ].
//! ```
//!
//! Type IV uses `f²(ξ) = r·φ(s)` with `r = ξξ̄'`, `s = |ξξ'|²/r²`; its
//! Hessian is a rank-two perturbation `c₀I + BXB*` whose spectrum is known
//! in closed form: `c₀` with multiplicity `N-2` plus the two real roots of
//! `λ² - 2[φ + (2-3s)φ' + 2s(1-s)φ'']λ + k̃`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::chart::FlatteningChart;
use crate::domain::DomainSpec;
use crate::error::Error;
use crate::linalg::{self, trace_power};
use crate::mat::{row_dot_h, row_dot_t, ComplexMatrix};
use crate::phi::PhiProfile;
use crate::Result;

fn check_params(t: f64, k: u32) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) || k < 2 {
        return Err(Error::BadParams);
    }
    Ok(())
}

/// Deformed trace norm via traces of Gram powers.
pub fn minkowski_f(v: &ComplexMatrix, t: f64, k: u32) -> Result<f64> {
    check_params(t, k)?;
    let gram = v.matmul(&v.adjoint());
    let b1 = gram.trace().re;
    if b1 == 0.0 {
        return Ok(0.0);
    }
    let bk = trace_power(&gram, k)?.re;
    let sq = (b1 + t * bk.powf(1.0 / k as f64)) / (1.0 + t);
    Ok(sq.sqrt())
}

/// Deformed trace norm via the singular-value form; independent route used
/// to cross-check [`minkowski_f`].
pub fn minkowski_f_sv(v: &ComplexMatrix, t: f64, k: u32) -> Result<f64> {
    check_params(t, k)?;
    let sv = linalg::singular_values(v);
    let sum_sq: f64 = sv.values.iter().map(|x| x * x).sum();
    if sum_sq == 0.0 {
        return Ok(0.0);
    }
    let sum_2k: f64 = sv.values.iter().map(|x| x.powi(2 * k as i32)).sum();
    let sq = (sum_sq + t * sum_2k.powf(1.0 / k as f64)) / (1.0 + t);
    Ok(sq.sqrt())
}

/// Sesquilinear vertical Hessian form of `f²` at a fixed nonzero `V`.
struct HessianForm {
    t: f64,
    k: u32,
    /// Powers `G⁰ … G^(k-1)` of the left Gram matrix.
    g_pows: Vec<ComplexMatrix>,
    /// Powers `(V̄'V)¹ … (V̄'V)^(k-1)` of the right Gram matrix.
    h_pows: Vec<ComplexMatrix>,
    /// `𝒜 = tr(Gᵏ)`.
    a_trace: f64,
    /// `V̄'·G^(k-1)`, so `tr(W·vh_gk1)` is the rank-one factor.
    vh_gk1: ComplexMatrix,
}

impl HessianForm {
    fn new(v: &ComplexMatrix, t: f64, k: u32) -> Result<Self> {
        check_params(t, k)?;
        if v.frobenius_norm() == 0.0 {
            return Err(Error::ZeroTangent);
        }
        let g = v.matmul(&v.adjoint());
        let h = v.adjoint().matmul(v);
        let kk = k as usize;
        let mut g_pows = Vec::with_capacity(kk);
        g_pows.push(ComplexMatrix::identity(g.rows()));
        for i in 1..kk {
            g_pows.push(g_pows[i - 1].matmul(&g));
        }
        let mut h_pows = Vec::with_capacity(kk);
        h_pows.push(h.clone());
        for i in 1..kk {
            let next = h_pows[i - 1].matmul(&h);
            h_pows.push(next);
        }
        let a_trace = g_pows[kk - 1].matmul(&g).trace().re;
        let vh_gk1 = v.adjoint().matmul(&g_pows[kk - 1]);
        Ok(HessianForm {
            t,
            k,
            g_pows,
            h_pows,
            a_trace,
            vh_gk1,
        })
    }

    fn eval(&self, w: &ComplexMatrix, u: &ComplexMatrix) -> Complex64 {
        let u_adj = u.adjoint();
        let mut acc = w.matmul(&u_adj).trace();
        if self.t > 0.0 {
            let k = self.k as usize;
            let a1 = self.a_trace.powf(1.0 / self.k as f64 - 1.0);
            let a2 = self.a_trace.powf(1.0 / self.k as f64 - 2.0);
            let mut tail = w.matmul(&u_adj).matmul(&self.g_pows[k - 1]).trace() * a1;
            let tw = w.matmul(&self.vh_gk1).trace();
            let tu = u.matmul(&self.vh_gk1).trace();
            let mut series = Complex64::new(0.0, 0.0);
            for i in 0..=(k - 2) {
                let middle = w.matmul(&self.h_pows[i]).matmul(&u_adj);
                let full = middle.matmul(&self.g_pows[k - i - 2]).trace();
                series += full * self.a_trace - tw * tu.conj();
            }
            tail += series * a2;
            acc += tail * self.t;
        }
        acc / (1.0 + self.t)
    }
}

/// Complex vertical Hessian of `F²(0;·)` at `V`, in the flattened chart
/// coordinates of the spec (types I–III).  Hermitian positive definite.
pub fn hessian_origin(spec: &DomainSpec, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let deform = spec.deformation().ok_or(Error::BadParams)?;
    let v = spec.check_class(v)?;
    if v.frobenius_norm() == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let form = HessianForm::new(&v, deform.t, deform.k)?;
    let chart = FlatteningChart::new(spec);
    let d = chart.dim();
    let mut basis = Vec::with_capacity(d);
    let mut e = alloc::vec![Complex64::new(0.0, 0.0); d];
    for slot in 0..d {
        e[slot] = Complex64::new(1.0, 0.0);
        basis.push(chart.unflatten(&e)?);
        e[slot] = Complex64::new(0.0, 0.0);
    }
    let scale = spec.scale();
    let mut h = ComplexMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            h[(a, b)] = form.eval(&basis[a], &basis[b]) * scale;
        }
    }
    debug_assert!(h.hermitian_defect() <= 1e-11 * h.frobenius_norm().max(1.0));
    Ok(h.hermitize())
}

/// Profile norm value on `ℂ^N` together with the invariants `(r, s)`.
pub fn f_iv_norm(xi: &ComplexMatrix, profile: &PhiProfile) -> Result<(f64, f64, f64)> {
    if xi.rows() != 1 {
        return Err(Error::ShapeMismatch);
    }
    let r = row_dot_h(xi, xi).re;
    if r == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let s_raw = row_dot_t(xi, xi).norm_sqr() / (r * r);
    let s = s_raw.min(1.0);
    let value = (r * profile.eval(s)).sqrt();
    Ok((value, r, s))
}

/// Exact spectrum prediction for the type-IV vertical Hessian.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HessianIvSpectrum {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub k_tilde: f64,
    /// `c0` with multiplicity `N-2`, then the two quadratic roots in
    /// ascending order.
    pub predicted: Vec<f64>,
}

impl HessianIvSpectrum {
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.predicted.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }
}

/// Vertical Hessian of `f_IV² = r·φ(s)` at `ξ ≠ 0`, with its predicted
/// spectrum.
pub fn hessian_iv(
    xi: &ComplexMatrix,
    profile: &PhiProfile,
) -> Result<(ComplexMatrix, HessianIvSpectrum)> {
    let n = xi.cols();
    let (_, r, s) = f_iv_norm(xi, profile)?;
    // Same margin the grid validator requires; profiles sitting exactly on
    // the degeneracy (the Kobayashi one) land at roundoff scale and must be
    // refused.
    let (m1, m2) = profile.margins_at(s);
    if !(profile.eval(s) > 0.0 && m1 > 1e-9 && m2 > 1e-9) {
        return Err(Error::InvalidProfile);
    }
    let phi = profile.eval(s);
    let d1 = profile.d1(s);
    let d2 = profile.d2(s);
    let c0 = phi - 2.0 * s * d1;
    let c1 = 4.0 * (d1 + s * d2);
    let c2 = -2.0 * (d1 + 2.0 * s * d2);
    let xx = row_dot_t(xi, xi);

    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let xi_i = xi[(0, i)];
            let xi_j = xi[(0, j)];
            let mut entry = Complex64::new(0.0, 0.0);
            if i == j {
                entry += Complex64::new(c0, 0.0);
            }
            entry += xi_i * xi_j.conj() * (c1 / r);
            entry += xx * (xi_i * xi_j).conj() * (c2 / (r * r));
            entry += xx.conj() * xi_i * xi_j * (c2 / (r * r));
            entry -= xi_i.conj() * xi_j * (s * c2 / r);
            h[(i, j)] = entry;
        }
    }

    // Quadratic λ² - 2bλ + k̃; the discriminant has a nonnegative closed
    // form, so the roots are computed without cancellation.
    let b = phi + (2.0 - 3.0 * s) * d1 + 2.0 * s * (1.0 - s) * d2;
    let k_tilde =
        phi * (phi + 2.0 * (2.0 - 3.0 * s) * d1) + 4.0 * s * (1.0 - s) * (phi * d2 - d1 * d1);
    let half_disc = {
        let u = (2.0 - 3.0 * s) * d1 + 2.0 * s * (1.0 - s) * d2;
        (u * u + 4.0 * s * (1.0 - s) * d1 * d1).sqrt()
    };
    let mut predicted = alloc::vec![c0; n - 2];
    predicted.push(b - half_disc);
    predicted.push(b + half_disc);

    Ok((
        h,
        HessianIvSpectrum {
            c0,
            c1,
            c2,
            k_tilde,
            predicted,
        },
    ))
}

/// Vertical Hessian of `F²(0;·)` by central finite differences in the
/// flattened coordinates; the analytic-free cross-check route.
pub fn vertical_hessian_fd(spec: &DomainSpec, v: &ComplexMatrix, h: f64) -> Result<ComplexMatrix> {
    let v = spec.check_class(v)?;
    if v.frobenius_norm() == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let chart = FlatteningChart::new(spec);
    let at = chart.flatten(&v)?;
    let spec_cl = spec.clone();
    let f = move |coords: &[Complex64]| -> f64 {
        let w = chart.unflatten(coords).expect("chart dimension fixed");
        match &spec_cl {
            DomainSpec::TypeIV { profile, .. } => {
                let r = row_dot_h(&w, &w).re;
                let s = (row_dot_t(&w, &w).norm_sqr() / (r * r)).min(1.0);
                r * profile.eval(s)
            }
            _ => {
                let d = spec_cl.deformation().unwrap();
                let f = minkowski_f(&w, d.t, d.k).expect("params validated");
                spec_cl.scale() * f * f
            }
        }
    };
    Ok(crate::fd::mixed_hessian(f, &at, h))
}
