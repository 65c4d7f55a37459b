//! Dense complex linear algebra kernels: LU inversion, Hermitian
//! eigendecomposition (cyclic Jacobi), principal square roots, singular
//! values and traces of matrix powers.
//!
//! Matrix powers in [`trace_power`] are accumulated by repeated
//! multiplication so the result is exact for non-normal inputs; the
//! eigendecomposition route is kept as an independent oracle in the tests.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::mat::ComplexMatrix;
use crate::tol::Tolerance;
use crate::Result;

/// Eigendecomposition of a Hermitian matrix: `M = U diag(values) Ū'` with
/// `values` in nondecreasing order and `U` unitary (eigenvectors in columns).
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Nonincreasing singular values `λ₁ ≥ … ≥ λ_r ≥ 0`, `r = min(rows, cols)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

fn check_hermitian(m: &ComplexMatrix, tol: &Tolerance) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    if m.hermitian_defect() > tol.bound(m.frobenius_norm()) {
        return Err(Error::NotHermitian);
    }
    Ok(())
}

/// Inverse by LU decomposition with partial pivoting.
pub fn lu_inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    // Augmented [A | I], eliminated in place.
    let mut a = m.clone();
    let mut inv = ComplexMatrix::identity(n);
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[(col, col)].norm();
        for r in col + 1..n {
            let mag = a[(r, col)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag < 1e-300 {
            return Err(Error::SingularPivot);
        }
        if pivot_row != col {
            for j in 0..n {
                let (x, y) = (a[(col, j)], a[(pivot_row, j)]);
                a[(col, j)] = y;
                a[(pivot_row, j)] = x;
                let (x, y) = (inv[(col, j)], inv[(pivot_row, j)]);
                inv[(col, j)] = y;
                inv[(pivot_row, j)] = x;
            }
        }
        let p = a[(col, col)];
        for j in 0..n {
            a[(col, j)] /= p;
            inv[(col, j)] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[(r, col)];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let acj = a[(col, j)];
                let icj = inv[(col, j)];
                a[(r, j)] -= factor * acj;
                inv[(r, j)] -= factor * icj;
            }
        }
    }
    Ok(inv)
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian within `tol` (relative Frobenius); the exact
/// Hermitian part is used internally.  Eigenvalues come back in
/// nondecreasing order.
pub fn hermitian_eigen_tol(m: &ComplexMatrix, tol: &Tolerance) -> Result<HermitianEigen> {
    check_hermitian(m, tol)?;
    let n = m.rows();
    let mut a = m.hermitize();
    let mut u = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(1.0);
    let stop = f64::EPSILON * scale;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let beta = apq.norm();
                if beta <= f64::EPSILON * stop {
                    continue;
                }
                let phase = apq / beta;
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * beta);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let se = phase * s;
                let se_conj = phase.conj() * s;
                // Column update A <- A J, J unitary in the (p,q) plane.
                for r in 0..n {
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = arp * c - arq * se_conj;
                    a[(r, q)] = arp * se + arq * c;
                }
                // Row update A <- J̄' A.
                for r in 0..n {
                    let apr = a[(p, r)];
                    let aqr = a[(q, r)];
                    a[(p, r)] = apr * c - aqr * se;
                    a[(q, r)] = apr * se_conj + aqr * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for r in 0..n {
                    let urp = u[(r, p)];
                    let urq = u[(r, q)];
                    u[(r, p)] = urp * c - urq * se_conj;
                    u[(r, q)] = urp * se + urq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, cidx| u[(r, order[cidx])]);
    Ok(HermitianEigen { values, vectors })
}

/// [`hermitian_eigen_tol`] with the default tolerance.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eigen_tol(m, &Tolerance::default())
}

/// Hermitian principal square root of a Hermitian positive-definite matrix:
/// the unique Hermitian `S ≻ 0` with `S·S = M`.
pub fn hermitian_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    if eig.values.iter().any(|&v| v <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let n = m.rows();
    let u = &eig.vectors;
    let mut scaled = u.clone();
    for j in 0..n {
        let root = eig.values[j].sqrt();
        for i in 0..n {
            scaled[(i, j)] *= root;
        }
    }
    Ok(scaled.matmul(&u.adjoint()).hermitize())
}

/// Determinant by LU decomposition with partial pivoting.
pub fn lu_det(m: &ComplexMatrix) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[(col, col)].norm();
        for r in col + 1..n {
            let mag = a[(r, col)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if pivot_row != col {
            for j in 0..n {
                let (x, y) = (a[(col, j)], a[(pivot_row, j)]);
                a[(col, j)] = y;
                a[(pivot_row, j)] = x;
            }
            det = -det;
        }
        let p = a[(col, col)];
        det *= p;
        for r in col + 1..n {
            let factor = a[(r, col)] / p;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let acj = a[(col, j)];
                a[(r, j)] -= factor * acj;
            }
        }
    }
    Ok(det)
}

/// `tr(Mˡ)` by repeated multiplication.
pub fn trace_power(m: &ComplexMatrix, l: u32) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    assert!(l >= 1, "trace_power: l must be positive");
    let mut acc = m.clone();
    for _ in 1..l {
        acc = acc.matmul(m);
    }
    Ok(acc.trace())
}

/// Singular values of `V`: square roots of the eigenvalues of the smaller
/// Gram matrix (`V V̄'` or `V̄' V`), in nonincreasing order.
pub fn singular_values(v: &ComplexMatrix) -> SingularSpectrum {
    let gram = if v.rows() <= v.cols() {
        v.matmul(&v.adjoint())
    } else {
        v.adjoint().matmul(v)
    };
    let eig = hermitian_eigen_tol(&gram, &Tolerance::new(1e-9, 1e-9))
        .expect("Gram matrix is Hermitian by construction");
    let mut values: Vec<f64> = eig
        .values
        .iter()
        .rev()
        .map(|&x| if x > 0.0 { x.sqrt() } else { 0.0 })
        .collect();
    // Guard against tiny negative roundoff already handled by the clamp;
    // enforce the nonincreasing invariant exactly.
    for i in 1..values.len() {
        if values[i] > values[i - 1] {
            values[i] = values[i - 1];
        }
    }
    SingularSpectrum { values }
}

/// Largest singular value.
pub fn spectral_norm(v: &ComplexMatrix) -> f64 {
    singular_values(v).max()
}
