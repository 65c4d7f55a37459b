//! Linear flattening charts between matrix coordinates and the intrinsic
//! vector coordinates of each domain.
//!
//! The chart fixes the coordinates in which base-point derivatives,
//! vertical Hessians and the tensor-product representations of the
//! automorphism differentials are expressed:
//!
//! * type I — plain row-major flattening, `v_ij = V_ij`;
//! * type II — `v_ii = V_ii` and `v_ij = √2·V_ij` for `i < j`
//!   (the weights `p_ij` with `p_ii = 1/√2`, `p_ij = 1`);
//! * type III — `v_ij = V_ij` for `i < j`;
//! * type IV — the identity on row vectors.
//!
//! The type II/III orderings enumerate the upper triangle row by row.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::domain::DomainSpec;
use crate::error::Error;
use crate::mat::ComplexMatrix;
use crate::Result;

/// `√2`, the off-diagonal chart weight of type II.
pub const SQRT2: f64 = core::f64::consts::SQRT_2;

/// Flattening chart of a domain: a linear bijection between the symmetry
/// class of matrices and `ℂ^d`.
#[derive(Clone, Debug)]
pub struct FlatteningChart {
    spec: DomainSpec,
}

impl FlatteningChart {
    pub fn new(spec: &DomainSpec) -> Self {
        FlatteningChart { spec: spec.clone() }
    }

    /// Intrinsic complex dimension `d`.
    pub fn dim(&self) -> usize {
        self.spec.complex_dim()
    }

    /// Index pairs `(i, j)` in chart order.
    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        let (rows, cols) = self.spec.shape();
        match &self.spec {
            DomainSpec::TypeI { .. } | DomainSpec::TypeIV { .. } => (0..rows)
                .flat_map(|i| (0..cols).map(move |j| (i, j)))
                .collect(),
            DomainSpec::TypeII { p, .. } => {
                (0..*p).flat_map(|i| (i..*p).map(move |j| (i, j))).collect()
            }
            DomainSpec::TypeIII { q, .. } => (0..*q)
                .flat_map(|i| (i + 1..*q).map(move |j| (i, j)))
                .collect(),
        }
    }

    /// Matrix to vector coordinates.
    pub fn flatten(&self, v: &ComplexMatrix) -> Result<Vec<Complex64>> {
        let v = self.spec.check_class(v)?;
        let out = match &self.spec {
            DomainSpec::TypeI { .. } | DomainSpec::TypeIV { .. } => v.as_slice().to_vec(),
            DomainSpec::TypeII { .. } => self
                .index_pairs()
                .iter()
                .map(|&(i, j)| if i == j { v[(i, i)] } else { v[(i, j)] * SQRT2 })
                .collect(),
            DomainSpec::TypeIII { .. } => {
                self.index_pairs().iter().map(|&(i, j)| v[(i, j)]).collect()
            }
        };
        Ok(out)
    }

    /// Vector to matrix coordinates.
    pub fn unflatten(&self, v: &[Complex64]) -> Result<ComplexMatrix> {
        if v.len() != self.dim() {
            return Err(Error::ShapeMismatch);
        }
        let (rows, cols) = self.spec.shape();
        let mut m = ComplexMatrix::zeros(rows, cols);
        match &self.spec {
            DomainSpec::TypeI { .. } | DomainSpec::TypeIV { .. } => {
                for (slot, &(i, j)) in self.index_pairs().iter().enumerate() {
                    m[(i, j)] = v[slot];
                }
            }
            DomainSpec::TypeII { .. } => {
                for (slot, &(i, j)) in self.index_pairs().iter().enumerate() {
                    if i == j {
                        m[(i, i)] = v[slot];
                    } else {
                        let x = v[slot] / SQRT2;
                        m[(i, j)] = x;
                        m[(j, i)] = x;
                    }
                }
            }
            DomainSpec::TypeIII { .. } => {
                for (slot, &(i, j)) in self.index_pairs().iter().enumerate() {
                    m[(i, j)] = v[slot];
                    m[(j, i)] = -v[slot];
                }
            }
        }
        Ok(m)
    }
}
