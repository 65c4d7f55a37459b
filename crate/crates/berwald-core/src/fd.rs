//! Central finite differences for mixed Wirtinger derivatives.
//!
//! With `z = x + iy` the mixed derivatives used by the curvature oracles
//! and the Kähler-Berwald residual are assembled from real partials as
//!
//! ```text
//! ∂²f/∂z_α∂z̄_β = ¼[(∂ₓ∂ₓ' + ∂_y∂_y') + i(∂ₓ∂_y' - ∂_y∂ₓ')],
//! ```
//!
//! each real mixed partial by the 4-point central stencil (the 3-point
//! second-difference stencil on the diagonal).  Everything here is
//! second-order accurate in the step.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::mat::ComplexMatrix;

fn perturb(base: &[Complex64], idx: usize, dre: f64, dim: f64) -> Vec<Complex64> {
    let mut out = base.to_vec();
    out[idx] += Complex64::new(dre, dim);
    out
}

/// `∂²f/∂a∂b` for two distinct real directions, 4-point stencil.
fn cross_partial(
    f: &mut impl FnMut(&[Complex64]) -> f64,
    base: &[Complex64],
    (ia, rea): (usize, bool),
    (ib, reb): (usize, bool),
    h: f64,
) -> f64 {
    let step = |v: &mut Vec<Complex64>, i: usize, re: bool, s: f64| {
        v[i] += if re {
            Complex64::new(s, 0.0)
        } else {
            Complex64::new(0.0, s)
        };
    };
    let mut eval = |sa: f64, sb: f64| {
        let mut v = base.to_vec();
        step(&mut v, ia, rea, sa);
        step(&mut v, ib, reb, sb);
        f(&v)
    };
    (eval(h, h) - eval(h, -h) - eval(-h, h) + eval(-h, -h)) / (4.0 * h * h)
}

/// Second derivative along one real direction, 3-point stencil.
fn second_partial(
    f: &mut impl FnMut(&[Complex64]) -> f64,
    base: &[Complex64],
    idx: usize,
    re: bool,
    h: f64,
) -> f64 {
    let f0 = f(base);
    let (fp, fm) = if re {
        (
            f(&perturb(base, idx, h, 0.0)),
            f(&perturb(base, idx, -h, 0.0)),
        )
    } else {
        (
            f(&perturb(base, idx, 0.0, h)),
            f(&perturb(base, idx, 0.0, -h)),
        )
    };
    (fp - 2.0 * f0 + fm) / (h * h)
}

/// Mixed complex Hessian `H_αβ = ∂²f/∂z_α∂z̄_β` at `base`.
pub fn mixed_hessian(
    mut f: impl FnMut(&[Complex64]) -> f64,
    base: &[Complex64],
    h: f64,
) -> ComplexMatrix {
    let d = base.len();
    let mut out = ComplexMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            let entry = if a == b {
                let xx = second_partial(&mut f, base, a, true, h);
                let yy = second_partial(&mut f, base, a, false, h);
                Complex64::new(0.25 * (xx + yy), 0.0)
            } else {
                let xx = cross_partial(&mut f, base, (a, true), (b, true), h);
                let yy = cross_partial(&mut f, base, (a, false), (b, false), h);
                let xy = cross_partial(&mut f, base, (a, true), (b, false), h);
                let yx = cross_partial(&mut f, base, (a, false), (b, true), h);
                Complex64::new(0.25 * (xx + yy), 0.25 * (xy - yx))
            };
            out[(a, b)] = entry;
        }
    }
    out
}

/// Mixed cross derivatives `M_αβ = ∂²f/∂z_α∂w̄_β` of `f(z, w)` at
/// `(z0, w0)`; the two argument blocks are perturbed independently.
pub fn mixed_cross_hessian(
    mut f: impl FnMut(&[Complex64], &[Complex64]) -> f64,
    z0: &[Complex64],
    w0: &[Complex64],
    h: f64,
) -> ComplexMatrix {
    let dz = z0.len();
    let dw = w0.len();
    let mut out = ComplexMatrix::zeros(dz, dw);
    let mut eval = |a: usize, are: bool, sa: f64, b: usize, bre: bool, sb: f64| {
        let z = if are {
            perturb(z0, a, sa, 0.0)
        } else {
            perturb(z0, a, 0.0, sa)
        };
        let w = if bre {
            perturb(w0, b, sb, 0.0)
        } else {
            perturb(w0, b, 0.0, sb)
        };
        f(&z, &w)
    };
    let mut cross = |a: usize, are: bool, b: usize, bre: bool, h: f64| {
        (eval(a, are, h, b, bre, h) - eval(a, are, h, b, bre, -h) - eval(a, are, -h, b, bre, h)
            + eval(a, are, -h, b, bre, -h))
            / (4.0 * h * h)
    };
    for a in 0..dz {
        for b in 0..dw {
            let xx = cross(a, true, b, true, h);
            let yy = cross(a, false, b, false, h);
            let xy = cross(a, true, b, false, h);
            let yx = cross(a, false, b, true, h);
            out[(a, b)] = Complex64::new(0.25 * (xx + yy), 0.25 * (xy - yx));
        }
    }
    out
}

/// `Σ H_αβ v_α v̄_β`.
pub fn quadratic_form(h: &ComplexMatrix, v: &[Complex64]) -> Complex64 {
    let d = v.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..d {
        for b in 0..d {
            acc += h[(a, b)] * v[a] * v[b].conj();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    #[allow(unused_imports)]
    use num_traits::Float;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hessian_of_hermitian_form() {
        // f(z) = z A z̄' with A = [[2, i], [-i, 3]]: mixed Hessian is A
        // (in the convention H_ab = ∂²f/∂z_a∂z̄_b = A_ab).
        let a00 = c(2.0, 0.0);
        let a01 = c(0.0, 1.0);
        let a10 = c(0.0, -1.0);
        let a11 = c(3.0, 0.0);
        let f = |z: &[Complex64]| {
            (a00 * z[0] * z[0].conj()
                + a01 * z[0] * z[1].conj()
                + a10 * z[1] * z[0].conj()
                + a11 * z[1] * z[1].conj())
            .re
        };
        let base = vec![c(0.3, -0.2), c(0.1, 0.4)];
        let h = mixed_hessian(f, &base, 1e-4);
        // The quadratic has zero truncation error; the 1e-7 allowance is
        // the roundoff floor of the h⁻² stencils.
        assert!((h[(0, 0)] - a00).norm() < 1e-7);
        assert!((h[(0, 1)] - a01).norm() < 1e-7);
        assert!((h[(1, 0)] - a10).norm() < 1e-7);
        assert!((h[(1, 1)] - a11).norm() < 1e-7);
    }

    #[test]
    fn holomorphic_square_has_zero_mixed_hessian() {
        // f = Re(z²) has ∂²f/∂z∂z̄ = 0.
        let f = |z: &[Complex64]| (z[0] * z[0]).re;
        let h = mixed_hessian(f, &[c(0.7, 0.1)], 1e-4);
        assert!(h[(0, 0)].norm() < 1e-7);
    }

    #[test]
    fn cross_hessian_of_bilinear_coupling() {
        // f(z, w) = |1 + z w̄'|²ish: take f = Re(z_0 w̄_0) + Im(z_0) Im(w_0):
        // ∂²f/∂z∂w̄ = ½ + ¼·(i)(i)... verified against the analytic value.
        let f = |z: &[Complex64], w: &[Complex64]| (z[0] * w[0].conj()).re;
        let m = mixed_cross_hessian(f, &[c(0.2, 0.3)], &[c(-0.1, 0.5)], 1e-4);
        // z w̄ = (x+iy)(u-iv): Re = xu + yv; ∂²/∂x∂u = 1, ∂²/∂y∂v = 1,
        // cross terms 0 → ¼(1+1) = ½.
        assert!((m[(0, 0)] - c(0.5, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn quadratic_form_contracts() {
        let h = ComplexMatrix::identity(2);
        let v = [c(1.0, 1.0), c(0.0, 2.0)];
        assert!((quadratic_form(&h, &v) - c(6.0, 0.0)).norm() < 1e-15);
    }
}
