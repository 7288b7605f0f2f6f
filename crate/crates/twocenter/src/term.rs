//! Electronic energy terms U(R), V(R) of the two-center problem: assembly of
//! the variational solve, threshold-corrected scans, extrema and zeros of the
//! shifted term, the exchange splitting, and the mean electron size.

use crate::basis::{BasisConfig, BasisSet};
use crate::dim::DimensionParams;
use crate::eigen::{self, EigenResult};
use crate::elements;
use crate::model::{TermCurve, TermPoint, TermSource};
use crate::{Error, Result, Symmetry};

/// Everything needed to reproduce a variational scan.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct TermConfig {
    pub d: f64,
    pub symmetry: Symmetry,
    pub basis: BasisConfig,
    /// Relative overlap-eigenvalue cutoff.
    pub prune: f64,
}

impl TermConfig {
    pub fn new(d: f64, symmetry: Symmetry) -> Result<Self> {
        DimensionParams::new(d)?;
        Ok(Self { d, symmetry, basis: BasisConfig::default(), prune: 1e-12 })
    }

    pub fn dim(&self) -> DimensionParams {
        DimensionParams::new(self.d).expect("validated in new")
    }
}

/// Lowest state of the two-center problem in a given basis.
pub fn solve_lowest(
    basis: &BasisSet,
    r: f64,
    sym: Symmetry,
    d: f64,
    prune: f64,
) -> Result<EigenResult> {
    let (h, s) = elements::hamiltonian_overlap(&basis.a, &basis.b, r, sym, d);
    eigen::lowest(&h, &s, prune)
}

/// Ground state of the separated atom in the same exponent grid. Using the
/// identical grid lets the basis-incompleteness error cancel in U(R) - U(inf).
/// Memoized on the exponent grid: during a scan or line search the grid is
/// often R-independent, and this solve costs as much as the two-center one.
pub fn one_center_energy(basis: &BasisSet, d: f64, prune: f64) -> Result<f64> {
    use std::collections::HashMap;
    use std::hash::{Hash, Hasher};
    use std::sync::Mutex;
    static CACHE: once_cell::sync::Lazy<Mutex<HashMap<u64, f64>>> =
        once_cell::sync::Lazy::new(|| Mutex::new(HashMap::new()));
    let key = {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        d.to_bits().hash(&mut h);
        prune.to_bits().hash(&mut h);
        for v in basis.a.iter().chain(&basis.b) {
            v.to_bits().hash(&mut h);
        }
        h.finish()
    };
    if let Some(&e) = CACHE.lock().unwrap().get(&key) {
        return Ok(e);
    }
    let (h, s) = elements::hamiltonian_overlap_one(&basis.a, &basis.b, d);
    let e = eigen::lowest(&h, &s, prune)?.e0;
    CACHE.lock().unwrap().insert(key, e);
    Ok(e)
}

/// One threshold-corrected point of the term:
/// U(R) = E_var(R) - E_atom,basis + U(inf), V = U - U(inf) + 1/R.
pub fn compute_term(cfg: &TermConfig, r: f64) -> Result<TermPoint> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("compute_term requires R > 0, got {r}")));
    }
    let dim = cfg.dim();
    let basis = cfg.basis.build(r)?;
    let e0 = solve_lowest(&basis, r, cfg.symmetry, cfg.d, cfg.prune)?.e0;
    let e1 = one_center_energy(&basis, cfg.d, cfg.prune)?;
    let u = e0 - e1 + dim.one_center_ground_energy();
    TermPoint::from_u(r, u, &dim)
}

/// Term scan over a list of bond lengths (each point independent, so this is
/// the main data-parallel hot path).
pub fn scan_term(cfg: &TermConfig, rs: &[f64]) -> Result<TermCurve> {
    let pts = crate::par::map_slice(rs, |&r| compute_term(cfg, r));
    let mut points = Vec::with_capacity(rs.len());
    for p in pts {
        points.push(p?);
    }
    TermCurve::new(cfg.symmetry, cfg.dim(), TermSource::Variational, points)
}

/// Golden-section minimum of f on [lo, hi]; returns (argmin, min).
pub fn minimize<F: Fn(f64) -> Result<f64>>(
    f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<(f64, f64)> {
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a) > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d)?;
        }
    }
    let xm = 0.5 * (a + b);
    Ok((xm, f(xm)?))
}

/// Bisection root of f on [lo, hi] (f must change sign there).
pub fn bisect<F: Fn(f64) -> Result<f64>>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket(format!(
            "no sign change on [{lo}, {hi}]: f = {fa:.3e}, {fb:.3e}"
        )));
    }
    while (b - a) > xtol {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Root-mean-square electron-nucleus distance sqrt(<x^2 + z^2>) of the
/// variational ground state.
pub fn rms_electron_distance(cfg: &TermConfig, r: f64) -> Result<f64> {
    let basis = cfg.basis.build(r)?;
    let state = solve_lowest(&basis, r, cfg.symmetry, cfg.d, cfg.prune)?;
    let (x2, z2) = elements::moment_elements(&basis.a, &basis.b, r, cfg.symmetry, cfg.d);
    let k = basis.len();
    let mut s = nalgebra::DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let a = basis.a[i] + basis.a[j];
            let b = basis.b[i] + basis.b[j];
            s[(i, j)] =
                elements::overlap(a, b, basis.b[i] * basis.b[j] / b, r, cfg.symmetry.sign(), cfg.d);
        }
    }
    let n = &state.coeffs;
    let num = (n.transpose() * (&x2 + &z2) * n)[(0, 0)];
    let den = (n.transpose() * s * n)[(0, 0)];
    if !(den > 0.0) {
        return Err(Error::Numeric("non-positive norm in rms distance".into()));
    }
    Ok((num / den).sqrt())
}

/// Exchange splitting E_a(R) - E_s(R) by the common-vector (surface-integral
/// flavored) formula: evaluate both symmetry blocks on the symmetric ground
/// vector N, so the near-degenerate difference is formed analytically rather
/// than as a difference of two separately converged eigenvalues.
pub fn splitting_variational(basis: &BasisSet, r: f64, d: f64, prune: f64) -> Result<f64> {
    let (hs, ss) = elements::hamiltonian_overlap(&basis.a, &basis.b, r, Symmetry::Symmetric, d);
    let (ha, sa) =
        elements::hamiltonian_overlap(&basis.a, &basis.b, r, Symmetry::Antisymmetric, d);
    let n = eigen::lowest(&hs, &ss, prune)?.coeffs;
    let quad = |m: &nalgebra::DMatrix<f64>| (n.transpose() * m * &n)[(0, 0)];
    let h0 = 0.5 * (quad(&hs) + quad(&ha));
    let h1 = 0.5 * (quad(&hs) - quad(&ha));
    let s0 = 0.5 * (quad(&ss) + quad(&sa));
    let s1 = 0.5 * (quad(&ss) - quad(&sa));
    let nss = quad(&ss);
    let nsa = quad(&sa);
    if !(nss > 0.0 && nsa > 0.0) {
        return Err(Error::Numeric("non-positive norms in splitting".into()));
    }
    Ok(2.0 * (h0 * s1 - h1 * s0) / (nsa * nss))
}
