//! Born-Oppenheimer vibrational problem on a fitted term: bound-state
//! counting, spectra, critical masses, critical charges and stability
//! curves.
//!
//! The radial equation for the zero-angular-momentum channel,
//!   -(1/(m+1/2)) u'' + [(1/Z - 1)/R + V(R) - c/(4 (m+1/2) R^2)] u = eps u,
//! (c = 1 with the anomalous centripetal attraction, 0 without) is
//! integrated on a logarithmic grid t = ln R with w = u / sqrt(R), where it
//! becomes w_tt = q(t) w with
//!   q = (1 - c)/4 + (m+1/2) (V_eff - eps) R^2,
//! i.e. the centripetal term exactly cancels the 1/4 generated by the
//! substitution. Numerov integration with sign-change node counting; the
//! asymptotic tail contributes at most one more node, decided from the exit
//! values (w linear in t with the centripetal term, u linear in R without).

use crate::fit::RationalApprox;
use crate::model::{CubicSpline, TermCurve};
use crate::term::{bisect, minimize};
use crate::{Error, Result, Symmetry};

/// Term evaluator: a rational approximant, or a spline through a scanned
/// curve with a 1/R^3 tail grafted beyond the last sample.
pub enum TermEval {
    Approx(RationalApprox),
    Curve { spline: CubicSpline, r_lo: f64, r_hi: f64, tail_c3: f64 },
    /// Arbitrary evaluator (model potentials, solver validation).
    Custom(Box<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl TermEval {
    pub fn from_curve(curve: &TermCurve) -> Self {
        let (r_lo, r_hi) = curve.r_range();
        let spline = curve.spline_v();
        let tail_c3 = spline.eval(r_hi) * r_hi.powi(3);
        TermEval::Curve { spline, r_lo, r_hi, tail_c3 }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            TermEval::Approx(a) => {
                let den = a.denominator(r);
                if den.abs() < 1e-300 {
                    return f64::INFINITY;
                }
                let v = a.numerator(r) / den;
                if v.is_nan() {
                    0.0
                } else {
                    v
                }
            }
            TermEval::Curve { spline, r_lo, r_hi, tail_c3 } => {
                if r < *r_lo {
                    // Coulomb-dominated continuation below the first sample
                    spline.eval(*r_lo) + 1.0 / r - 1.0 / *r_lo
                } else if r > *r_hi {
                    tail_c3 / (r * r * r)
                } else {
                    spline.eval(r)
                }
            }
            TermEval::Custom(f) => f(r),
        }
    }
}

pub struct VibrationalProblem {
    /// Heavy-to-light mass ratio m (> 0).
    pub m: f64,
    /// Charge Z of the heavy particles (> 0).
    pub z: f64,
    pub symmetry: Symmetry,
    pub include_centripetal: bool,
    pub term: TermEval,
}

impl VibrationalProblem {
    pub fn new(
        m: f64,
        z: f64,
        symmetry: Symmetry,
        include_centripetal: bool,
        term: TermEval,
    ) -> Result<Self> {
        if !(m > 0.0 && m.is_finite() && z > 0.0 && z.is_finite()) {
            return Err(Error::Domain(format!("m and Z must be positive, got m={m}, Z={z}")));
        }
        Ok(Self { m, z, symmetry, include_centripetal, term })
    }

    /// Electronic-plus-Coulomb part of the effective potential,
    /// (1/Z - 1)/R + V(R), without the centripetal piece.
    pub fn potential(&self, r: f64) -> f64 {
        (1.0 / self.z - 1.0) / r + self.term.eval(r)
    }

    /// Full effective potential including, when requested, the anomalous
    /// centripetal attraction -1/(4 (m+1/2) R^2).
    pub fn effective_potential(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("effective_potential requires R > 0, got {r}")));
        }
        let mut v = self.potential(r);
        if self.include_centripetal {
            v -= 0.25 / ((self.m + 0.5) * r * r);
        }
        Ok(v)
    }

    /// Nodes of the regular solution at energy eps on [r_min, r_max]. By
    /// Sturm oscillation this equals the number of eigenvalues below eps
    /// once r_max covers the classically allowed region.
    fn nodes(&self, eps: f64, r_min: f64, r_max: f64, n: usize) -> usize {
        let mu = self.m + 0.5;
        let c = if self.include_centripetal { 0.0 } else { 0.25 };
        let t0 = r_min.ln();
        let t1 = r_max.ln();
        let h = (t1 - t0) / (n as f64 - 1.0);
        let q = |i: usize| {
            let r = (t0 + h * i as f64).exp();
            c + mu * (self.potential(r) - eps) * r * r
        };
        let f = |i: usize| 1.0 - h * h / 12.0 * q(i);
        // regular branch: w -> const as t -> -inf (q -> c >= 0 there)
        let mut w0 = 1.0f64;
        let mut w1 = 1.0f64;
        let mut f0 = f(0);
        let mut f1 = f(1);
        let mut nodes = 0usize;
        for i in 1..n - 1 {
            let f2 = f(i + 1);
            let w2 = ((12.0 - 10.0 * f1) * w1 - f0 * w0) / f2;
            if (w2 < 0.0) != (w1 < 0.0) && w2 != 0.0 {
                nodes += 1;
            }
            w0 = w1;
            w1 = w2;
            f0 = f1;
            f1 = f2;
            if w1.abs() > 1e100 {
                w0 *= 1e-100;
                w1 *= 1e-100;
            }
        }
        if eps >= 0.0 {
            // one more node may hide beyond any finite grid: the zero-energy
            // asymptotics are w = alpha + beta t (centripetal) or
            // u = alpha R + beta (without), so the exit values decide
            let wt = (w1 - w0) / h;
            let crossing_ahead = if self.include_centripetal {
                w1 * wt < 0.0
            } else {
                w1 * (0.5 * w1 + wt) < 0.0
            };
            if crossing_ahead {
                nodes += 1;
            }
        }
        nodes
    }

    fn grid_points(r_min: f64, r_max: f64) -> usize {
        // ~10^4 points per unit of ln R resolves the fastest oscillations
        // at the largest masses of interest (m ~ 3 x 10^5)
        let span = (r_max / r_min).ln();
        ((span * 1.0e4) as usize).clamp(30_000, 400_000)
    }

    /// Number of negative-energy levels, by node counting at eps = 0 with
    /// outer-boundary escalation 10^3 -> 10^5 -> 10^7; the count is accepted
    /// once stable under two successive escalations.
    pub fn count_bound_states(&self) -> Result<usize> {
        let r_min = 1e-3;
        let mut last: Option<usize> = None;
        let mut stable = 0;
        for &r_max in &[1e3, 1e5, 1e7, 1e8, 1e9] {
            let c = self.nodes(0.0, r_min, r_max, Self::grid_points(r_min, r_max));
            if Some(c) == last {
                stable += 1;
                if stable >= 2 {
                    return Ok(c);
                }
            } else {
                stable = 0;
            }
            last = Some(c);
        }
        Err(Error::Numeric(format!(
            "bound-state count did not stabilize under boundary escalation (last = {last:?})"
        )))
    }

    /// All eigenvalues in (eps_floor, 0), each bisected to 1e-10 relative
    /// (1e-14 absolute). The outer boundary doubles automatically until the
    /// count at eps_floor stops changing.
    pub fn solve_spectrum(&self, eps_floor: f64) -> Result<SpectrumResult> {
        if !(eps_floor < 0.0) {
            return Err(Error::Domain("eps_floor must be negative".into()));
        }
        let total = self.count_bound_states()?;
        let r_min = 1e-3;
        // choose r_max so the shallowest level's turning point is covered
        let mut r_max = 1e3;
        let n_at = |rm: f64, e: f64| self.nodes(e, r_min, rm, Self::grid_points(r_min, rm));
        let mut levels = Vec::new();
        let below_floor = n_at(r_max, eps_floor);
        for k in below_floor..total {
            // eigenvalue eps_k: nodes(eps) jumps from k to k+1
            let mut lo = eps_floor;
            let mut hi = 0.0;
            // ensure the bracketing holds at the current boundary; deepen
            // r_max if the level is too shallow to resolve
            let mut guard = 0;
            while n_at(r_max, hi - 1e-300) < k + 1 && guard < 6 {
                r_max *= 10.0;
                guard += 1;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if n_at(r_max, mid) >= k + 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if (hi - lo).abs() <= 1e-10 * hi.abs().max(1e-4 * eps_floor.abs()) + 1e-14 {
                    break;
                }
            }
            levels.push(0.5 * (lo + hi));
        }
        Ok(SpectrumResult { levels, n_found: total, r_max_used: r_max })
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Eigenvalues above the floor, ascending, all negative.
    pub levels: Vec<f64>,
    /// Total number of negative-energy levels (including any below floor).
    pub n_found: usize,
    pub r_max_used: f64,
}

/// Critical mass for the n-th level (n = 0 is the ground state): smallest m
/// at which count_bound_states reaches n+1, bisected to 1e-4 relative.
/// Returns 0 when the level is bound for every tested mass.
pub fn critical_mass(
    n: usize,
    symmetry: Symmetry,
    z: f64,
    include_centripetal: bool,
    term: impl Fn() -> TermEval,
) -> Result<f64> {
    let count = |m: f64| -> Result<usize> {
        VibrationalProblem::new(m, z, symmetry, include_centripetal, term())?
            .count_bound_states()
    };
    let mut lo = 1e-3;
    if count(lo)? >= n + 1 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while count(hi)? < n + 1 {
        lo = hi;
        hi *= 4.0;
        if hi > 1e7 {
            return Err(Error::Bracket(format!(
                "no mass below 1e7 binds level {n} ({symmetry:?})"
            )));
        }
    }
    while (hi - lo) > 1e-4 * hi {
        let mid = 0.5 * (lo + hi);
        if count(mid)? >= n + 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Infinite-mass critical charge: Z_crit = min over R of [1 - R V(R)]^(-1),
/// located by coarse grid bracketing plus golden-section refinement.
/// Returns (Z_crit, R_crit).
pub fn z_critical_large_m(term: &TermEval) -> Result<(f64, f64)> {
    let g = |r: f64| 1.0 / (1.0 - r * term.eval(r));
    let mut best = (f64::INFINITY, 0.0);
    let mut r = 0.05;
    while r <= 20.0 {
        let v = g(r);
        if v.is_finite() && v > 0.0 && v < best.0 {
            best = (v, r);
        }
        r += 0.01;
    }
    if !best.0.is_finite() || best.1 == 0.0 {
        return Err(Error::Bracket("no interior minimum of [1 - R V]^-1".into()));
    }
    let (rc, zc) = minimize(|r| Ok(g(r)), best.1 - 0.02, best.1 + 0.02, 1e-7)?;
    if zc >= 1.0 + 1e-9 || zc <= 0.0 {
        return Err(Error::Bracket(format!(
            "threshold charge {zc} outside (0, 1]: term not binding"
        )));
    }
    Ok((zc, rc))
}

/// Per-state stability threshold in the (m, Z) plane: for each mass in the
/// grid, bisect on Z for the appearance of the n-th level.
pub struct StabilityCurve {
    pub n: usize,
    pub symmetry: Symmetry,
    /// (m, Z_threshold) samples; failed points are skipped.
    pub samples: Vec<(f64, f64)>,
}

pub fn stability_curve(
    n: usize,
    symmetry: Symmetry,
    include_centripetal: bool,
    m_grid: &[f64],
    term: impl Fn() -> TermEval + Sync,
) -> StabilityCurve {
    let pts = crate::par::map_slice(m_grid, |&m| {
        let bound_at = |z: f64| -> Result<bool> {
            Ok(
                VibrationalProblem::new(m, z, symmetry, include_centripetal, term())?
                    .count_bound_states()?
                    >= n + 1,
            )
        };
        // Z threshold: larger Z binds more strongly (the repulsive
        // (1/Z - 1)/R piece weakens), so bracket upward from small Z
        let zc = (|| -> Result<f64> {
            let mut lo = 1e-3;
            let mut hi = 1.0;
            if bound_at(lo)? {
                return Ok(lo);
            }
            while !bound_at(hi)? {
                lo = hi;
                hi *= 2.0;
                if hi > 1e4 {
                    return Err(Error::Bracket(format!("level {n} unbound up to Z = 1e4")));
                }
            }
            bisect(|z| Ok(if bound_at(z)? { 1.0 } else { -1.0 }), lo, hi, 1e-4 * hi)
        })();
        zc.ok().map(|z| (m, z))
    });
    StabilityCurve { n, symmetry, samples: pts.into_iter().flatten().collect() }
}

/// Quasiclassical action J = Integral sqrt(-V) dR over the classically
/// allowed region, including the full 1/R^(3/2) tail (substitution
/// R = 1/t^2 maps the tail onto a finite integrand).
pub fn quasiclassical_j(term: &TermEval) -> Result<f64> {
    let v = |r: f64| term.eval(r);
    // locate the sign change bounding the negative region from below
    let mut r0 = None;
    let mut r = 0.05;
    let mut prev = v(r);
    while r < 12.0 {
        let rn = r + 0.01;
        let cur = v(rn);
        if prev > 0.0 && cur <= 0.0 {
            r0 = Some(bisect(|x| Ok(v(x)), r, rn, 1e-12)?);
            break;
        }
        prev = cur;
        r = rn;
    }
    let r0 = r0.ok_or_else(|| Error::Bracket("term has no negative region".into()))?;
    let rcut = 50.0;
    let inner = crate::quad::adaptive(&|r: f64| (-v(r)).max(0.0).sqrt(), r0, rcut, 1e-9);
    let tail = crate::quad::adaptive(
        &|t: f64| {
            let r = 1.0 / (t * t);
            2.0 * (-v(r)).max(0.0).sqrt() / (t * t * t)
        },
        0.0,
        1.0 / rcut.sqrt(),
        1e-9,
    );
    Ok(inner + tail)
}

/// Published square-law approximations for the critical masses.
pub fn mcrit_approx(n: usize, symmetry: Symmetry) -> f64 {
    let nf = n as f64;
    match symmetry {
        Symmetry::Symmetric => 2.47 * (nf + 1.0) * (nf + 1.0) - 3.3,
        Symmetry::Antisymmetric => 138.6 * nf * (nf + 1.0) + 51.0,
    }
}

/// Quasiclassical critical-mass law m = (pi/J)^2 n (n+1).
pub fn mcrit_quasiclassical(j: f64, n: usize) -> f64 {
    let nf = n as f64;
    (std::f64::consts::PI / j).powi(2) * nf * (nf + 1.0)
}

/// Level count implied by the square laws at mass m: the number of n with
/// mcrit_approx(n) <= m.
pub fn level_count_approx(m: f64, symmetry: Symmetry) -> usize {
    let mut n = 0;
    while mcrit_approx(n, symmetry) <= m {
        n += 1;
        if n > 10_000 {
            break;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Finite circular well of depth v0 and radius 1.
    fn well(v0: f64) -> TermEval {
        TermEval::Custom(Box::new(move |r| if r < 1.0 { -v0 } else { 0.0 }))
    }

    #[test]
    fn one_dimensional_well_threshold_counts() {
        // without the centripetal piece the reduced equation is the 1D
        // half-line well u'' + mu (eps - V) u = 0, u(0) = 0: the n-th level
        // appears at sqrt(mu v0) = (n - 1/2) pi for a unit-radius well
        let v0 = 1.0;
        let threshold = |n: f64| (n - 0.5) * (n - 0.5) * std::f64::consts::PI.powi(2) / v0;
        for n in 1..=3 {
            let mc = threshold(n as f64);
            for (mu, want) in [(mc * 0.98, n - 1), (mc * 1.02, n)] {
                let p = VibrationalProblem::new(
                    mu - 0.5,
                    1.0,
                    Symmetry::Symmetric,
                    false,
                    well(v0),
                )
                .unwrap();
                assert_eq!(p.count_bound_states().unwrap(), want, "mu = {mu}");
            }
        }
    }

    #[test]
    fn count_monotone_in_mass() {
        let term = || TermEval::Approx(crate::fit::reference_symmetric());
        let mut last = 0;
        for &m in &[0.5, 5.0, 50.0, 500.0] {
            let c = VibrationalProblem::new(m, 1.0, Symmetry::Symmetric, true, term())
                .unwrap()
                .count_bound_states()
                .unwrap();
            assert!(c >= last, "m = {m}: {c} < {last}");
            last = c;
        }
    }

    #[test]
    fn always_bound_ground_state() {
        // 2D attractive well binds at any mass once the centripetal
        // attraction is included
        for &m in &[1e-3, 0.1, 1.0, 10.0] {
            let p = VibrationalProblem::new(
                m,
                1.0,
                Symmetry::Symmetric,
                true,
                TermEval::Approx(crate::fit::reference_symmetric()),
            )
            .unwrap();
            assert!(p.count_bound_states().unwrap() >= 1, "m = {m}");
        }
    }

    #[test]
    fn mcrit_approx_values() {
        assert!((mcrit_approx(3, Symmetry::Symmetric) - 36.22).abs() < 1e-10);
        assert!((mcrit_approx(1, Symmetry::Antisymmetric) - 328.2).abs() < 1e-10);
        assert_eq!(level_count_approx(1836.152701, Symmetry::Symmetric), 27);
        assert_eq!(level_count_approx(1836.152701, Symmetry::Antisymmetric), 4);
    }

    #[test]
    fn effective_potential_pieces() {
        let p = VibrationalProblem::new(
            10.0,
            1.0,
            Symmetry::Symmetric,
            false,
            TermEval::Approx(crate::fit::reference_symmetric()),
        )
        .unwrap();
        // Z = 1 kills the Coulomb-like piece; without centripetal the bare
        // term comes back
        let r = 0.7;
        let bare = crate::fit::reference_symmetric().evaluate(r).unwrap();
        assert!((p.effective_potential(r).unwrap() - bare).abs() < 1e-14);
    }
}
