//! Profiles `φ : [0,1] → (0,∞)` parameterizing the type-IV metric family
//! `F_IV = √(r̃ φ(s̃))`, together with the strong pseudoconvexity validator.
//!
//! A profile supplies its own first and second derivatives; for the
//! polynomial variant they are derived exactly from the coefficient list.
//! The validator certifies the two inequalities
//!
//! ```text
//! φ - 2sφ' > 0
//! φ[φ + 2(2-3s)φ'] + 4s(1-s)[φφ'' - (φ')²] > 0
//! ```
//!
//! on a uniform grid; these are exactly the conditions under which the
//! vertical Hessian of `r·φ(s)` is positive definite at every nonzero
//! tangent vector.

use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

/// A smooth positive profile on `[0,1]` with first and second derivatives.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiProfile {
    /// `φ ≡ 1`: the Bergman metric.
    Bergman,
    /// `φ(s) = 1 + √(1-s)`: reproduces the Carathéodory = Kobayashi norm at
    /// the origin.  Not strongly pseudoconvex (the second validator margin
    /// is identically zero); kept for value-level comparisons.
    Kobayashi,
    /// `φ(s) = 1 + √(1+s)`.
    Sqrt1p,
    /// `φ(s) = exp(1 + t(1+s)^(1/k))`; strongly pseudoconvex with `φ' > 0`
    /// for `t ∈ (0, 1/(4k))`.
    ExpFamily { t: f64, k: u32 },
    /// Polynomial profile with explicit derivative coefficient lists
    /// (ascending powers of `s`).
    Poly {
        name: String,
        phi: Vec<f64>,
        d1: Vec<f64>,
        d2: Vec<f64>,
    },
}

fn horner(coeffs: &[f64], s: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
}

/// Exact derivative of an ascending-power coefficient list.
pub fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

impl PhiProfile {
    /// Polynomial profile; derivatives are computed from the coefficients.
    pub fn poly(name: impl Into<String>, phi: Vec<f64>) -> Self {
        let d1 = poly_derivative(&phi);
        let d2 = poly_derivative(&d1);
        PhiProfile::Poly {
            name: name.into(),
            phi,
            d1,
            d2,
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            PhiProfile::Bergman => 1.0,
            PhiProfile::Kobayashi => 1.0 + (1.0 - s).sqrt(),
            PhiProfile::Sqrt1p => 1.0 + (1.0 + s).sqrt(),
            PhiProfile::ExpFamily { t, k } => (1.0 + t * (1.0 + s).powf(1.0 / *k as f64)).exp(),
            PhiProfile::Poly { phi, .. } => horner(phi, s),
        }
    }

    pub fn d1(&self, s: f64) -> f64 {
        match self {
            PhiProfile::Bergman => 0.0,
            PhiProfile::Kobayashi => -0.5 / (1.0 - s).sqrt(),
            PhiProfile::Sqrt1p => 0.5 / (1.0 + s).sqrt(),
            PhiProfile::ExpFamily { t, k } => {
                let kf = *k as f64;
                let psi1 = t / kf * (1.0 + s).powf(1.0 / kf - 1.0);
                self.eval(s) * psi1
            }
            PhiProfile::Poly { d1, .. } => horner(d1, s),
        }
    }

    pub fn d2(&self, s: f64) -> f64 {
        match self {
            PhiProfile::Bergman => 0.0,
            PhiProfile::Kobayashi => -0.25 / (1.0 - s).powf(1.5),
            PhiProfile::Sqrt1p => -0.25 / (1.0 + s).powf(1.5),
            PhiProfile::ExpFamily { t, k } => {
                let kf = *k as f64;
                let psi1 = t / kf * (1.0 + s).powf(1.0 / kf - 1.0);
                let psi2 = t / kf * (1.0 / kf - 1.0) * (1.0 + s).powf(1.0 / kf - 2.0);
                self.eval(s) * (psi1 * psi1 + psi2)
            }
            PhiProfile::Poly { d2, .. } => horner(d2, s),
        }
    }

    /// Display name; built-ins use their CLI spelling.
    pub fn name(&self) -> String {
        use alloc::format;
        match self {
            PhiProfile::Bergman => String::from("bergman"),
            PhiProfile::Kobayashi => String::from("kobayashi"),
            PhiProfile::Sqrt1p => String::from("sqrt1p"),
            PhiProfile::ExpFamily { t, k } => format!("exp-family({t},{k})"),
            PhiProfile::Poly { name, .. } => name.clone(),
        }
    }

    /// True when `φ' ≥ 0` everywhere on the validation grid; gate for the
    /// nonpositivity claim on the type-IV bisectional curvature.
    pub fn nonneg_derivative(&self, grid: usize) -> bool {
        (0..grid).all(|i| {
            let s = i as f64 / (grid - 1) as f64;
            self.d1(s) >= 0.0
        })
    }

    /// Check the supplied derivatives against central finite differences of
    /// `eval` on the interior of a uniform grid.  Returns the worst absolute
    /// deviation seen for `(d1, d2)`.
    pub fn derivative_consistency(&self, grid: usize, h: f64) -> (f64, f64) {
        let mut worst1 = 0.0f64;
        let mut worst2 = 0.0f64;
        for i in 0..grid {
            let s = i as f64 / (grid - 1) as f64;
            if s - h < 0.0 || s + h > 1.0 {
                continue;
            }
            let fp = self.eval(s + h);
            let fm = self.eval(s - h);
            let f0 = self.eval(s);
            worst1 = worst1.max(((fp - fm) / (2.0 * h) - self.d1(s)).abs());
            worst2 = worst2.max(((fp - 2.0 * f0 + fm) / (h * h) - self.d2(s)).abs());
        }
        (worst1, worst2)
    }

    /// Margins of the two pseudoconvexity conditions at a single `s`.
    pub fn margins_at(&self, s: f64) -> (f64, f64) {
        let phi = self.eval(s);
        let d1 = self.d1(s);
        let d2 = self.d2(s);
        let m1 = phi - 2.0 * s * d1;
        let m2 =
            phi * (phi + 2.0 * (2.0 - 3.0 * s) * d1) + 4.0 * s * (1.0 - s) * (phi * d2 - d1 * d1);
        (m1, m2)
    }

    /// Grid certification of the strong pseudoconvexity conditions.
    pub fn validate(&self, grid: usize) -> PhiValidation {
        let mut min1 = f64::INFINITY;
        let mut min2 = f64::INFINITY;
        let mut argmin = 0.0;
        let mut overall = f64::INFINITY;
        let mut finite = true;
        let mut positive = true;
        for i in 0..grid {
            let s = i as f64 / (grid - 1) as f64;
            let phi = self.eval(s);
            if !phi.is_finite() || phi <= 0.0 {
                positive = false;
            }
            let (m1, m2) = self.margins_at(s);
            if !(phi.is_finite() && m1.is_finite() && m2.is_finite()) {
                finite = false;
                continue;
            }
            if m1 < min1 {
                min1 = m1;
            }
            if m2 < min2 {
                min2 = m2;
            }
            if m1.min(m2) < overall {
                overall = m1.min(m2);
                argmin = s;
            }
        }
        const MARGIN: f64 = 1e-9;
        let valid = finite && positive && min1 > MARGIN && min2 > MARGIN;
        PhiValidation {
            valid,
            min_margin_1: if min1.is_finite() { Some(min1) } else { None },
            min_margin_2: if min2.is_finite() { Some(min2) } else { None },
            argmin_s: argmin,
            grid,
        }
    }
}

/// Report of [`PhiProfile::validate`].
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PhiValidation {
    pub valid: bool,
    /// Worst margin of `φ - 2sφ'`; `None` if a non-finite value was hit.
    pub min_margin_1: Option<f64>,
    /// Worst margin of the determinant condition; `None` if non-finite.
    pub min_margin_2: Option<f64>,
    /// Grid location of the overall worst margin.
    pub argmin_s: f64,
    pub grid: usize,
}

/// Default grid density for profile validation.
pub const VALIDATION_GRID: usize = 2001;


impl PhiProfile {
    /// Parse a built-in profile name: `bergman`, `kobayashi`, `sqrt1p`, or
    /// `exp-family(t,k)`.
    pub fn parse_name(name: &str) -> Option<PhiProfile> {
        match name {
            "bergman" => Some(PhiProfile::Bergman),
            "kobayashi" => Some(PhiProfile::Kobayashi),
            "sqrt1p" => Some(PhiProfile::Sqrt1p),
            _ => {
                let rest = name.strip_prefix("exp-family(")?.strip_suffix(')')?;
                let (t_str, k_str) = rest.split_once(',')?;
                let t: f64 = t_str.trim().parse().ok()?;
                let k: u32 = k_str.trim().parse().ok()?;
                if t >= 0.0 && k >= 2 {
                    Some(PhiProfile::ExpFamily { t, k })
                } else {
                    None
                }
            }
        }
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::{poly_derivative, PhiProfile};
    use alloc::string::String;
    use alloc::vec::Vec;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Wire format: a built-in name string, or a polynomial object with
    /// ascending coefficient lists (derivatives optional, derived exactly
    /// when omitted).
    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Name(String),
        Poly {
            name: String,
            phi: Vec<f64>,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            d1: Option<Vec<f64>>,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            d2: Option<Vec<f64>>,
        },
    }

    impl Serialize for PhiProfile {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            let repr = match self {
                PhiProfile::Poly { name, phi, d1, d2 } => Repr::Poly {
                    name: name.clone(),
                    phi: phi.clone(),
                    d1: Some(d1.clone()),
                    d2: Some(d2.clone()),
                },
                other => Repr::Name(other.name()),
            };
            repr.serialize(serializer)
        }
    }

    impl<'de> Deserialize<'de> for PhiProfile {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            match Repr::deserialize(deserializer)? {
                Repr::Name(name) => PhiProfile::parse_name(&name)
                    .ok_or_else(|| D::Error::custom("unknown profile name")),
                Repr::Poly { name, phi, d1, d2 } => {
                    if phi.is_empty() {
                        return Err(D::Error::custom("empty coefficient list"));
                    }
                    let d1 = d1.unwrap_or_else(|| poly_derivative(&phi));
                    let d2 = d2.unwrap_or_else(|| poly_derivative(&d1));
                    let profile = PhiProfile::Poly { name, phi, d1, d2 };
                    // User-supplied derivative lists must track eval.
                    let (w1, w2) = profile.derivative_consistency(1001, 1e-5);
                    if w1 > 1e-6 || w2 > 1e-4 {
                        return Err(D::Error::custom(
                            "supplied derivatives disagree with finite differences of phi",
                        ));
                    }
                    Ok(profile)
                }
            }
        }
    }
}
