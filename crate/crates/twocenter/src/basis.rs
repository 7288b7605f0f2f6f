//! Gaussian exponent grids. A basis set is a list of pairs (a_i, b_i) of
//! transverse / axial exponents; grids are geometric tensor products, with an
//! optional low-exponent "tilt" block that captures the polarized long-bond
//! regime.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Geometric progression of n values from lo to hi inclusive.
pub fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1 && lo > 0.0 && hi > lo);
    if n == 1 {
        return vec![lo];
    }
    let q = (hi / lo).powf(1.0 / (n as f64 - 1.0));
    (0..n).map(|k| lo * q.powi(k as i32)).collect()
}

/// Exponent pairs (a_i, b_i) of the pair basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisSet {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl BasisSet {
    pub fn tensor(avals: &[f64], bvals: &[f64]) -> Self {
        let mut a = Vec::with_capacity(avals.len() * bvals.len());
        let mut b = Vec::with_capacity(avals.len() * bvals.len());
        for &ai in avals {
            for &bi in bvals {
                a.push(ai);
                b.push(bi);
            }
        }
        Self { a, b }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn extend(&mut self, other: &BasisSet) {
        self.a.extend_from_slice(&other.a);
        self.b.extend_from_slice(&other.b);
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            a: self.a.iter().map(|x| x * factor).collect(),
            b: self.b.iter().map(|x| x * factor).collect(),
        }
    }
}

/// Grid sizes and spans, serializable so scans are reproducible from a
/// config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisConfig {
    pub n_a: usize,
    pub a_lo: f64,
    pub a_hi: f64,
    pub n_b: usize,
    pub b_lo: f64,
    pub b_hi: f64,
    /// Add the low-exponent polarization block for bond lengths >= this.
    pub tilt_from_r: f64,
}

impl Default for BasisConfig {
    fn default() -> Self {
        Self {
            n_a: 18,
            a_lo: 0.3,
            a_hi: 3.0e4,
            n_b: 34,
            b_lo: 0.05,
            b_hi: 2.0e4,
            tilt_from_r: 2.0,
        }
    }
}

impl BasisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_a == 0 || self.n_b == 0 {
            return Err(Error::Config("basis grid sizes must be positive".into()));
        }
        for (lo, hi, name) in
            [(self.a_lo, self.a_hi, "a"), (self.b_lo, self.b_hi, "b")]
        {
            if !(lo > 0.0 && hi > lo) {
                return Err(Error::Config(format!(
                    "basis span for {name} must satisfy 0 < lo < hi, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    /// Basis for bond length R: the atom-centered tensor grid, plus a diffuse
    /// axial block (b ~ 1/R) once the bond is long enough for the electron
    /// cloud to stretch between the centers.
    pub fn build(&self, r: f64) -> Result<BasisSet> {
        self.validate()?;
        let mut set = BasisSet::tensor(
            &geometric(self.a_lo, self.a_hi, self.n_a),
            &geometric(self.b_lo, self.b_hi, self.n_b),
        );
        if r >= self.tilt_from_r {
            let tilt = BasisSet::tensor(
                &geometric(0.3, 100.0, 6),
                &geometric(0.4 / (2.0 * r), 2.8 / (2.0 * r), 6),
            );
            set.extend(&tilt);
        }
        Ok(set)
    }
}

/// Grid tuned for the united-atom (R -> 0) limit of the symmetric term,
/// where the effective charge doubles and every length scale halves.
pub fn united_atom_sym() -> BasisSet {
    BasisConfig::default().build(0.0).expect("default grid").scaled(4.0)
}

/// Wide grid for the R -> 0 limit of the antisymmetric term; the p-like
/// united-atom state needs exponents well below 1.
pub fn united_atom_anti() -> BasisSet {
    BasisSet::tensor(&geometric(0.1, 3.0e4, 16), &geometric(0.1, 3.0e4, 28))
}
