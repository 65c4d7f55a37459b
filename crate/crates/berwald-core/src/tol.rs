//! Central tolerance configuration.
//!
//! Every structural check in the crate derives its threshold from the two
//! knobs here: an absolute floor and a relative factor scaled by the
//! Frobenius norm of the matrix under test.

/// Absolute floor / relative factor pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Absolute floor applied regardless of scale.
    pub abs_floor: f64,
    /// Relative factor, scaled by the Frobenius norm of the operand.
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs_floor: f64, rel: f64) -> Self {
        Tolerance { abs_floor, rel }
    }

    /// Threshold for an operand of the given norm scale.
    pub fn bound(&self, scale: f64) -> f64 {
        let r = self.rel * scale;
        if r > self.abs_floor {
            r
        } else {
            self.abs_floor
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(1e-12, 1e-12)
    }
}

/// Tolerance for Hermitian / symmetry-class membership checks.
pub const STRUCTURE: Tolerance = Tolerance::new(1e-12, 1e-12);

/// Membership margin below which normalizer construction is refused: the
/// Gram inverses blow up as the boundary is approached.
pub const NEAR_BOUNDARY_MARGIN: f64 = 1e-8;
