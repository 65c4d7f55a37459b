//! Tensor (Kronecker) products and their symmetric / skew-symmetric
//! restrictions.
//!
//! These give the flattened-coordinate representations of the linear maps
//! `V ↦ AVB` on full, symmetric and skew-symmetric matrix spaces, in the
//! same index ordering as the charts in [`crate::chart`].  Row vectors act
//! on the right: `flatten(AVB) = flatten(V) · (A'⊗B)` and so on.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::chart::SQRT2;
use crate::mat::ComplexMatrix;

/// Kronecker product with entries `C_(ab)(ij) = A_ai B_bj`, rows indexed by
/// `(a, b)` in row-major order over `a ∈ 0..m`, `b ∈ 0..n`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let m = a.rows();
    let n = b.rows();
    let mc = a.cols();
    let nc = b.cols();
    ComplexMatrix::from_fn(m * n, mc * nc, |row, col| {
        let (ra, rb) = (row / n, row % n);
        let (ci, cj) = (col / nc, col % nc);
        a[(ra, ci)] * b[(rb, cj)]
    })
}

fn upper_pairs(p: usize, strict: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..p {
        let start = if strict { i + 1 } else { i };
        for j in start..p {
            out.push((i, j));
        }
    }
    out
}

/// Symmetric tensor square: rows/columns indexed by pairs `a ≤ b`, entries
/// `p_ab p_ij (A_ai A_bj + A_aj A_bi)` with `p_ii = 1/√2`, `p_ij = 1`.
pub fn kron_sym(a: &ComplexMatrix) -> ComplexMatrix {
    let p = a.rows();
    let pairs = upper_pairs(p, false);
    let weight = |i: usize, j: usize| if i == j { 1.0 / SQRT2 } else { 1.0 };
    let d = pairs.len();
    ComplexMatrix::from_fn(d, d, |r, c| {
        let (ai, bi) = pairs[r];
        let (i, j) = pairs[c];
        let w = weight(ai, bi) * weight(i, j);
        (a[(ai, i)] * a[(bi, j)] + a[(ai, j)] * a[(bi, i)]) * Complex64::new(w, 0.0)
    })
}

/// Skew-symmetric tensor square: rows/columns indexed by pairs `a < b`,
/// entries `A_ai A_bj - A_aj A_bi`.
pub fn kron_skew(a: &ComplexMatrix) -> ComplexMatrix {
    let q = a.rows();
    let pairs = upper_pairs(q, true);
    let d = pairs.len();
    ComplexMatrix::from_fn(d, d, |r, c| {
        let (ai, bi) = pairs[r];
        let (i, j) = pairs[c];
        a[(ai, i)] * a[(bi, j)] - a[(ai, j)] * a[(bi, i)]
    })
}

/// Row vector times matrix.
pub fn row_times(v: &[Complex64], m: &ComplexMatrix) -> Vec<Complex64> {
    debug_assert_eq!(v.len(), m.rows());
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| v[i] * m[(i, j)]).sum())
        .collect()
}
