//! Deterministic digests of verification inputs.
//!
//! Reports reference the worst-case sample by a short hash of everything
//! that determined it (spec, points, tangents, seed), so a failing check
//! can be replayed exactly.  FNV-1a over a canonical little-endian byte
//! stream; collision resistance is irrelevant here, stability is not.

use alloc::string::String;

use num_complex::Complex64;

use crate::domain::DomainSpec;
use crate::mat::ComplexMatrix;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Incremental FNV-1a hasher over canonical bytes.
#[derive(Clone, Copy, Debug)]
pub struct Digest {
    state: u64,
}

impl Digest {
    pub fn new() -> Self {
        Digest { state: FNV_OFFSET }
    }

    pub fn bytes(mut self, data: &[u8]) -> Self {
        for &b in data {
            self.state ^= b as u64;
            self.state = self.state.wrapping_mul(FNV_PRIME);
        }
        self
    }

    pub fn u64(self, x: u64) -> Self {
        self.bytes(&x.to_le_bytes())
    }

    pub fn f64(self, x: f64) -> Self {
        self.bytes(&x.to_bits().to_le_bytes())
    }

    pub fn complex(self, z: Complex64) -> Self {
        self.f64(z.re).f64(z.im)
    }

    pub fn matrix(mut self, m: &ComplexMatrix) -> Self {
        self = self.u64(m.rows() as u64).u64(m.cols() as u64);
        for &z in m.as_slice() {
            self = self.complex(z);
        }
        self
    }

    pub fn str(self, s: &str) -> Self {
        self.bytes(s.as_bytes())
    }

    pub fn spec(mut self, spec: &DomainSpec) -> Self {
        self = self.str(spec.kind_tag());
        let (r, c) = spec.shape();
        self = self.u64(r as u64).u64(c as u64);
        if let Some(d) = spec.deformation() {
            self = self.f64(d.t).u64(d.k as u64);
        }
        if let Some(p) = spec.profile() {
            self = self.str(&p.name());
        }
        self
    }

    pub fn finish(self) -> u64 {
        self.state
    }

    /// Hex rendering of the final state.
    pub fn hex(self) -> String {
        use alloc::format;
        format!("{:016x}", self.state)
    }
}

impl Default for Digest {
    fn default() -> Self {
        Self::new()
    }
}
