use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Space dimension d (> 1, fractional allowed) together with sigma = (d-1)/2,
/// the single parameter entering every closed formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionParams {
    d: f64,
    sigma: f64,
}

impl DimensionParams {
    pub fn new(d: f64) -> Result<Self> {
        if !(d > 1.0) || !d.is_finite() {
            return Err(Error::Domain(format!("dimension must satisfy d > 1, got {d}")));
        }
        Ok(Self { d, sigma: (d - 1.0) / 2.0 })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Ground-state energy of the one-center (hydrogen-like, unit charge)
    /// problem: -1/(2 sigma^2). This is the separated-atom threshold U(inf).
    pub fn one_center_ground_energy(&self) -> f64 {
        -1.0 / (2.0 * self.sigma * self.sigma)
    }

    /// Shift a raw term value onto the threshold-referenced form
    /// V = U - U(inf) + 1/R.
    pub fn shift_term(&self, u: f64, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("shift_term requires R > 0, got {r}")));
        }
        Ok(u - self.one_center_ground_energy() + 1.0 / r)
    }

    /// Inverse of `shift_term`.
    pub fn unshift_term(&self, v: f64, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("unshift_term requires R > 0, got {r}")));
        }
        Ok(v + self.one_center_ground_energy() - 1.0 / r)
    }
}
