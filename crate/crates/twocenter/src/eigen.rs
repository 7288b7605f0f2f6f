//! Generalized symmetric eigenproblem H c = E S c with a near-singular
//! overlap. Strategy: symmetric diagonal scaling of S, spectral
//! decomposition, pruning of eigendirections below a relative threshold,
//! and a symmetric eigensolve of the projected Hamiltonian.

use crate::{Error, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Lowest generalized eigenvalue.
    pub e0: f64,
    /// Coefficient vector in the original (unnormalized) basis.
    pub coeffs: DVector<f64>,
    /// Number of overlap eigendirections discarded.
    pub pruned: usize,
    /// Ratio of largest to smallest retained overlap eigenvalue.
    pub cond: f64,
}

/// Lowest eigenpair of (H, S). `prune` is the relative overlap-eigenvalue
/// cutoff; directions with lambda < prune * lambda_max are discarded.
pub fn lowest(h: &DMatrix<f64>, s: &DMatrix<f64>, prune: f64) -> Result<EigenResult> {
    let k = s.nrows();
    if k == 0 || h.nrows() != k || !h.is_square() || !s.is_square() {
        return Err(Error::Domain("eigen: dimension mismatch".into()));
    }
    // diagonal scaling: work with D S D where D = diag(1/sqrt(S_ii))
    let mut dscale = DVector::zeros(k);
    for i in 0..k {
        let sii = s[(i, i)];
        if !(sii > 0.0) {
            return Err(Error::SingularBasis(format!(
                "overlap diagonal not positive at index {i}: {sii}"
            )));
        }
        dscale[i] = 1.0 / sii.sqrt();
    }
    let mut sn = s.clone();
    let mut hn = h.clone();
    for i in 0..k {
        for j in 0..k {
            let f = dscale[i] * dscale[j];
            sn[(i, j)] *= f;
            hn[(i, j)] *= f;
        }
    }
    // force exact symmetry before the decomposition
    symmetrize(&mut sn);
    symmetrize(&mut hn);
    let se = SymmetricEigen::new(sn);
    let lmax = se.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(lmax > 0.0) {
        return Err(Error::SingularBasis("overlap has no positive eigenvalues".into()));
    }
    let keep: Vec<usize> =
        (0..k).filter(|&i| se.eigenvalues[i] > prune * lmax).collect();
    if keep.is_empty() {
        return Err(Error::SingularBasis("all overlap directions pruned".into()));
    }
    let m = keep.len();
    let mut x = DMatrix::zeros(k, m);
    let mut lmin = f64::INFINITY;
    for (c, &i) in keep.iter().enumerate() {
        let l = se.eigenvalues[i];
        lmin = lmin.min(l);
        let inv = 1.0 / l.sqrt();
        for rrow in 0..k {
            x[(rrow, c)] = se.eigenvectors[(rrow, i)] * inv;
        }
    }
    let mut hp = x.transpose() * &hn * &x;
    symmetrize(&mut hp);
    let pe = SymmetricEigen::new(hp);
    let mut imin = 0;
    for i in 1..m {
        if pe.eigenvalues[i] < pe.eigenvalues[imin] {
            imin = i;
        }
    }
    let e0 = pe.eigenvalues[imin];
    if !e0.is_finite() {
        return Err(Error::Numeric("non-finite eigenvalue".into()));
    }
    let y = x * pe.eigenvectors.column(imin);
    // undo the diagonal scaling to express coefficients in the raw basis
    let mut coeffs = DVector::zeros(k);
    for i in 0..k {
        coeffs[i] = y[i] * dscale[i];
    }
    Ok(EigenResult { e0, coeffs, pruned: k - m, cond: lmax / lmin })
}

fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}
