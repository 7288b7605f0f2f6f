//! Matrix elements in the Gaussian pair basis
//!
//!   phi_i(x, z) = exp(-a_i x^2) (exp(-b_i z^2) + s exp(-b_i (z + R)^2)),
//!
//! where x is the (d-1)-dimensional transverse coordinate, z the axis through
//! the two centers, and s = +-1 selects the symmetry. All elements share the
//! overall normalization of the overlap; constant prefactors common to S, T
//! and I cancel in the generalized eigenproblem and are dropped.

use crate::quad::{attraction_panels, paneled_gl48};
use crate::Symmetry;
use nalgebra::DMatrix;

/// Scalar overlap element for exponent sums a = a_i + a_j, b = b_i + b_j,
/// beta = b_i b_j / b.
pub fn overlap(a: f64, b: f64, beta: f64, r: f64, s: f64, d: f64) -> f64 {
    (1.0 + s * (-beta * r * r).exp()) / (a.powf((d - 1.0) / 2.0) * b.sqrt())
}

/// Scalar kinetic element (same normalization as `overlap`).
pub fn kinetic(ai: f64, bi: f64, aj: f64, bj: f64, r: f64, s: f64, d: f64) -> f64 {
    let a = ai + aj;
    let b = bi + bj;
    let beta = bi * bj / b;
    let e = (-beta * r * r).exp();
    (d - 1.0) * ai * aj / (a.powf((d + 1.0) / 2.0) * b.sqrt()) * (1.0 + s * e)
        + bi * bj / (a.powf((d - 1.0) / 2.0) * b.powf(1.5))
            * (1.0 + s * (1.0 - 2.0 * beta * r * r) * e)
}

/// Scalar electron-nucleus attraction element (both centers, same
/// normalization as `overlap`). One-dimensional integral over x in [0, 1]
/// with w = 1 - x^2; the denominator power (d-1)/2 makes the element reduce
/// to the overlap-consistent Coulomb integral in any dimension.
pub fn attraction(
    ai: f64,
    bi: f64,
    aj: f64,
    bj: f64,
    r: f64,
    s: f64,
    d: f64,
    nodes: &(Vec<f64>, Vec<f64>),
) -> f64 {
    let a = ai + aj;
    let b = bi + bj;
    let r2 = r * r;
    let mut sum = 0.0;
    for (&x, &w8) in nodes.0.iter().zip(&nodes.1) {
        let wsq = (1.0 - x * x) * (1.0 - x * x);
        let pre = x.powf(d - 2.0) * (2.0 - x * x).powf((d - 3.0) / 2.0) * w8;
        let den = (a + (b - a) * wsq).powf((d - 1.0) / 2.0);
        let bracket = 1.0
            + (-b * wsq * r2).exp()
            + s * (-(bj * (bi + bj * wsq) / b) * r2).exp()
            + s * (-(bi * (bj + bi * wsq) / b) * r2).exp();
        sum += pre * bracket / den;
    }
    4.0 / std::f64::consts::PI.sqrt() * sum
}

/// One-center attraction element (single nucleus, no image terms). Relative
/// to the two-center element at R = 0 it lacks the factor that doubles the
/// charge seen by the electron.
pub fn attraction_one(a: f64, b: f64, d: f64, nodes: &(Vec<f64>, Vec<f64>)) -> f64 {
    let mut sum = 0.0;
    for (&x, &w8) in nodes.0.iter().zip(&nodes.1) {
        let wsq = (1.0 - x * x) * (1.0 - x * x);
        let pre = x.powf(d - 2.0) * (2.0 - x * x).powf((d - 3.0) / 2.0) * w8;
        sum += pre / (a + (b - a) * wsq).powf((d - 1.0) / 2.0);
    }
    4.0 / std::f64::consts::PI.sqrt() * sum
}

/// Quadrature nodes for the attraction integrals (shared across a matrix).
pub fn attraction_nodes() -> (Vec<f64>, Vec<f64>) {
    paneled_gl48(&attraction_panels())
}

/// Per-node quadrature data precomputed once per matrix at fixed dimension:
/// the (i, j)-independent prefactor x^{d-2} (2 - x^2)^{(d-3)/2} w and the
/// substitution variable w^2 = (1 - x^2)^2, so the inner pair loop does no
/// redundant transcendental work.
pub struct AttractionGrid {
    wsq: Vec<f64>,
    pre: Vec<f64>,
    p: f64,
}

impl AttractionGrid {
    pub fn new(d: f64) -> Self {
        let (xs, ws) = attraction_nodes();
        let wsq = xs
            .iter()
            .map(|&x| {
                let w = 1.0 - x * x;
                w * w
            })
            .collect();
        let pre = xs
            .iter()
            .zip(&ws)
            .map(|(&x, &w8)| x.powf(d - 2.0) * (2.0 - x * x).powf((d - 3.0) / 2.0) * w8)
            .collect();
        Self { wsq, pre, p: (d - 1.0) / 2.0 }
    }

    /// v^{(d-1)/2} with the common half-integer exponents special-cased.
    #[inline]
    fn den(&self, v: f64) -> f64 {
        if self.p == 0.5 {
            v.sqrt()
        } else if self.p == 1.0 {
            v
        } else if self.p == 1.5 {
            v * v.sqrt()
        } else {
            v.powf(self.p)
        }
    }

    /// Two-center attraction element, identical to `attraction`.
    pub fn attraction(&self, ai: f64, bi: f64, aj: f64, bj: f64, r: f64, s: f64) -> f64 {
        let a = ai + aj;
        let b = bi + bj;
        let r2 = r * r;
        let c1 = bj / b * r2;
        let c2 = bi / b * r2;
        let mut sum = 0.0;
        for (&wsq, &pre) in self.wsq.iter().zip(&self.pre) {
            let bracket = 1.0
                + (-b * wsq * r2).exp()
                + s * ((-c1 * (bi + bj * wsq)).exp() + (-c2 * (bj + bi * wsq)).exp());
            sum += pre * bracket / self.den(a + (b - a) * wsq);
        }
        4.0 / std::f64::consts::PI.sqrt() * sum
    }

    /// One-center attraction element, identical to `attraction_one`.
    pub fn attraction_one(&self, a: f64, b: f64) -> f64 {
        let mut sum = 0.0;
        for (&wsq, &pre) in self.wsq.iter().zip(&self.pre) {
            sum += pre / self.den(a + (b - a) * wsq);
        }
        4.0 / std::f64::consts::PI.sqrt() * sum
    }
}

/// H = T - I and S for the two-center problem over exponent lists (a_i, b_i).
pub fn hamiltonian_overlap(
    ai: &[f64],
    bi: &[f64],
    r: f64,
    sym: Symmetry,
    d: f64,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let k = ai.len();
    assert_eq!(k, bi.len());
    let s = sym.sign();
    let grid = AttractionGrid::new(d);
    // both matrices are symmetric: fill the upper triangle (j >= i) only
    let rows = crate::par::map_indices(k, |i| {
        let mut hrow = vec![0.0; k - i];
        let mut srow = vec![0.0; k - i];
        for j in i..k {
            let a = ai[i] + ai[j];
            let b = bi[i] + bi[j];
            let beta = bi[i] * bi[j] / b;
            srow[j - i] = overlap(a, b, beta, r, s, d);
            hrow[j - i] = kinetic(ai[i], bi[i], ai[j], bi[j], r, s, d)
                - grid.attraction(ai[i], bi[i], ai[j], bi[j], r, s);
        }
        (hrow, srow)
    });
    assemble(k, rows)
}

/// H and S for the one-center (separated-atom) problem in the same basis.
pub fn hamiltonian_overlap_one(ai: &[f64], bi: &[f64], d: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let k = ai.len();
    let grid = AttractionGrid::new(d);
    let rows = crate::par::map_indices(k, |i| {
        let mut hrow = vec![0.0; k - i];
        let mut srow = vec![0.0; k - i];
        for j in i..k {
            let a = ai[i] + ai[j];
            let b = bi[i] + bi[j];
            srow[j - i] = 1.0 / (a.powf((d - 1.0) / 2.0) * b.sqrt());
            let t = (d - 1.0) * ai[i] * ai[j] / (a.powf((d + 1.0) / 2.0) * b.sqrt())
                + bi[i] * bi[j] / (a.powf((d - 1.0) / 2.0) * b.powf(1.5));
            hrow[j - i] = t - grid.attraction_one(a, b);
        }
        (hrow, srow)
    });
    assemble(k, rows)
}

/// Elements of x^2 and z^2 (electron coordinate measured from one of the
/// nuclei) used for the root-mean-square electron-nucleus distance
/// sqrt(<x^2 + z^2>) of the variational state. Same normalization as
/// `overlap`.
pub fn moment_elements(
    ai: &[f64],
    bi: &[f64],
    r: f64,
    sym: Symmetry,
    d: f64,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let k = ai.len();
    let s = sym.sign();
    let mut x2 = DMatrix::zeros(k, k);
    let mut z2 = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let a = ai[i] + ai[j];
            let b = bi[i] + bi[j];
            let beta = bi[i] * bi[j] / b;
            let e = (-beta * r * r).exp();
            let sab = overlap(a, b, beta, r, s, d);
            x2[(i, j)] = sab * (d - 1.0) / (2.0 * a);
            // direct pair averages z^2 at offsets 0 and R; the cross pair
            // carries the Gaussian product center b_{i,j} R / b
            z2[(i, j)] = (r * r / 2.0 + 1.0 / (2.0 * b)
                + s * e
                    * ((bi[i] * bi[i] + bi[j] * bi[j]) * r * r / (2.0 * b * b)
                        + 1.0 / (2.0 * b)))
                / (a.powf((d - 1.0) / 2.0) * b.sqrt());
        }
    }
    (x2, z2)
}

fn assemble(
    k: usize,
    rows: Vec<(Vec<f64>, Vec<f64>)>,
) -> (DMatrix<f64>, DMatrix<f64>) {
    // rows hold the upper triangle (row i starts at column i); mirror it
    let mut h = DMatrix::zeros(k, k);
    let mut s = DMatrix::zeros(k, k);
    for (i, (hrow, srow)) in rows.into_iter().enumerate() {
        for (off, (&hv, &sv)) in hrow.iter().zip(&srow).enumerate() {
            let j = i + off;
            h[(i, j)] = hv;
            h[(j, i)] = hv;
            s[(i, j)] = sv;
            s[(j, i)] = sv;
        }
    }
    (h, s)
}

/// Independent validation oracles: the same matrix elements by direct
/// quadrature over the full d-dimensional space in polar coordinates
/// (x = rho sin(theta) transverse, z = rho cos(theta)), sharing nothing
/// with the closed forms above. Since the pair density is mirror-symmetric
/// about the bond midplane, the two-center attraction reduces to twice the
/// single 1/|r| integral, and polar coordinates absorb that singularity.
pub mod oracle {
    use crate::quad::{gauss_legendre, paneled_gl48};
    use once_cell::sync::Lazy;

    fn phi(a: f64, b: f64, r: f64, s: f64, x: f64, z: f64) -> f64 {
        (-a * x * x).exp() * ((-b * z * z).exp() + s * (-b * (z + r) * (z + r)).exp())
    }

    fn dphi(a: f64, b: f64, r: f64, s: f64, x: f64, z: f64) -> (f64, f64) {
        let t = (-a * x * x).exp();
        let g0 = (-b * z * z).exp();
        let g1 = (-b * (z + r) * (z + r)).exp();
        let dx = -2.0 * a * x * t * (g0 + s * g1);
        let dz = t * (-2.0 * b * z * g0 - 2.0 * b * (z + r) * s * g1);
        (dx, dz)
    }

    static THETA: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| {
        let (t, u) = gauss_legendre(48);
        let mut xs = Vec::new();
        let mut ws = Vec::new();
        for seg in 0..4 {
            let lo = std::f64::consts::PI * seg as f64 / 4.0;
            let hi = std::f64::consts::PI * (seg + 1) as f64 / 4.0;
            for (&ti, &ui) in t.iter().zip(&u) {
                xs.push(0.5 * (hi + lo) + 0.5 * (hi - lo) * ti);
                ws.push(0.5 * (hi - lo) * ui);
            }
        }
        (xs, ws)
    });

    fn integrate<F: Fn(f64, f64) -> f64>(f: F, d: f64, rho_max: f64) -> f64 {
        // radial panels biased toward the origin and the bond region
        let edges: Vec<f64> = [0.0, 0.05, 0.15, 0.35, 0.7, 1.0]
            .iter()
            .map(|&e| e * rho_max)
            .collect();
        let (rho, wr) = paneled_gl48(&edges);
        let (th, wt) = &*THETA;
        let mut sum = 0.0;
        for (&t, &w1) in th.iter().zip(wt) {
            let ang = t.sin().powf(d - 2.0) * w1;
            let (st, ct) = (t.sin(), t.cos());
            let mut radial = 0.0;
            for (&p, &w2) in rho.iter().zip(&wr) {
                radial += w2 * p.powf(d - 1.0) * f(p * st, p * ct);
            }
            sum += ang * radial;
        }
        sum
    }

    fn rho_max(ai: f64, bi: f64, aj: f64, bj: f64, r: f64) -> f64 {
        let amin = ai.min(bi).min(aj).min(bj);
        r + 12.0 / amin.sqrt()
    }

    pub fn overlap_direct(ai: f64, bi: f64, aj: f64, bj: f64, r: f64, s: f64, d: f64) -> f64 {
        integrate(
            |x, z| phi(ai, bi, r, s, x, z) * phi(aj, bj, r, s, x, z),
            d,
            rho_max(ai, bi, aj, bj, r),
        )
    }

    pub fn kinetic_direct(ai: f64, bi: f64, aj: f64, bj: f64, r: f64, s: f64, d: f64) -> f64 {
        integrate(
            |x, z| {
                let (dxi, dzi) = dphi(ai, bi, r, s, x, z);
                let (dxj, dzj) = dphi(aj, bj, r, s, x, z);
                0.5 * (dxi * dxj + dzi * dzj)
            },
            d,
            rho_max(ai, bi, aj, bj, r),
        )
    }

    pub fn attraction_direct(ai: f64, bi: f64, aj: f64, bj: f64, r: f64, s: f64, d: f64) -> f64 {
        2.0 * integrate(
            |x, z| {
                let rho = (x * x + z * z).sqrt();
                if rho == 0.0 {
                    0.0
                } else {
                    phi(ai, bi, r, s, x, z) * phi(aj, bj, r, s, x, z) / rho
                }
            },
            d,
            rho_max(ai, bi, aj, bj, r),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_reduces_at_r_zero() {
        // at R = 0 the symmetric pair doubles, the antisymmetric one vanishes
        let s = overlap(2.0, 2.0, 0.5, 0.0, 1.0, 2.0);
        assert!((s - 2.0 / (2.0f64.sqrt() * 2.0f64.sqrt())).abs() < 1e-15);
        let a = overlap(2.0, 2.0, 0.5, 0.0, -1.0, 2.0);
        assert!(a.abs() < 1e-15);
    }

    #[test]
    fn kinetic_value_unit_exponents() {
        // d = 2, a_i = b_i = 1, R = 0, s = +1: both blocks double
        let t = kinetic(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 2.0);
        let expect = (1.0 * 1.0 / (2.0f64.powf(1.5) * 2.0f64.sqrt())) * 2.0
            + (1.0 / (2.0f64.sqrt() * 2.0f64.powf(1.5))) * 2.0;
        assert!((t - expect).abs() < 1e-15);
        assert!((t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrices_are_symmetric() {
        let ai = [0.5, 1.0, 3.0, 0.7];
        let bi = [0.2, 2.0, 0.9, 4.0];
        let (h, s) = hamiltonian_overlap(&ai, &bi, 1.3, Symmetry::Symmetric, 2.0);
        for i in 0..4 {
            for j in 0..4 {
                assert!((h[(i, j)] - h[(j, i)]).abs() < 1e-11 * h[(i, j)].abs().max(1.0));
                assert!((s[(i, j)] - s[(j, i)]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn attraction_is_finite_and_positive() {
        let nodes = attraction_nodes();
        for &d in &[2.0, 2.5, 3.0] {
            let v = attraction(1.0, 1.0, 2.0, 3.0, 1.7, 1.0, d, &nodes);
            assert!(v.is_finite() && v > 0.0, "d = {d}");
        }
    }
}
