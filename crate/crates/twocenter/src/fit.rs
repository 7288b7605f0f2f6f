//! Constrained rational approximants of the d = 2 shifted terms
//!
//!   V(R) = (b0 + b1 R + ... + b7 R^7 [+ b_exp 32 R^10 e^{-2R-1}/pi])
//!          / (R (a0 + a1 R + ... + a9 R^9)),
//!
//! with the b coefficients tied to the short-bond and large-R expansions so
//! that only the denominator coefficients (plus, for the antisymmetric
//! variant, b4, b5 and the exponential amplitude) are free. Fitting is
//! multi-start damped least squares; a linearized solve (residuals are
//! linear in the coefficients after clearing the denominator) provides one
//! additional deterministic start.

use crate::model::TermCurve;
use crate::{Error, Result, Symmetry};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Tail coefficients of the shifted term, -3/32 R^-3 - 21/256 R^-4
/// - 135/2048 R^-5 - 159/1024 R^-6.
const TAIL: [f64; 4] = [-3.0 / 32.0, -21.0 / 256.0, -135.0 / 2048.0, -159.0 / 1024.0];

#[derive(Debug, Clone, PartialEq)]
pub struct RationalApprox {
    pub variant: Symmetry,
    /// Denominator degree (the paper's choice, and our default, is 9).
    pub n: usize,
    /// Denominator coefficients a0..an.
    pub a: Vec<f64>,
    /// Numerator coefficients b0..b_{n-2}.
    pub b: Vec<f64>,
    /// Amplitude of the antisymmetric exponential numerator term.
    pub b_exp: Option<f64>,
}

/// The constraint relations: free antisymmetric coefficients b4, b5 are
/// supplied by the caller (ignored for the symmetric variant).
pub fn apply_constraints(
    a: &[f64],
    variant: Symmetry,
    free_b45: Option<(f64, f64)>,
) -> Result<Vec<f64>> {
    if a.len() != 10 {
        return Err(Error::Config(format!(
            "constraints are defined for n = 9 (10 a-coefficients), got {}",
            a.len()
        )));
    }
    let mut b = vec![0.0; 8];
    b[0] = a[0];
    // short-bond expansion: V -> 1/R - 6 (symmetric), 1/R + 10/9 (anti)
    let c = match variant {
        Symmetry::Symmetric => -6.0,
        Symmetry::Antisymmetric => 10.0 / 9.0,
    };
    b[1] = a[1] + c * a[0];
    b[2] = a[2] + c * a[1];
    b[3] = 1.0;
    b[7] = TAIL[0] * a[9];
    b[6] = TAIL[0] * a[8] + TAIL[1] * a[9];
    match variant {
        Symmetry::Symmetric => {
            b[5] = TAIL[0] * a[7] + TAIL[1] * a[8] + TAIL[2] * a[9];
            b[4] = TAIL[0] * a[6] + TAIL[1] * a[7] + TAIL[2] * a[8] + TAIL[3] * a[9];
        }
        Symmetry::Antisymmetric => {
            let (b4, b5) = free_b45.ok_or_else(|| {
                Error::Config("antisymmetric constraints need free b4, b5".into())
            })?;
            b[4] = b4;
            b[5] = b5;
        }
    }
    Ok(b)
}

impl RationalApprox {
    pub fn from_free(
        variant: Symmetry,
        a: &[f64],
        free_b45: Option<(f64, f64)>,
        b_exp: Option<f64>,
    ) -> Result<Self> {
        let b = apply_constraints(a, variant, free_b45)?;
        Ok(Self { variant, n: a.len() - 1, a: a.to_vec(), b, b_exp })
    }

    pub fn denominator(&self, r: f64) -> f64 {
        let mut p = 0.0;
        for &ak in self.a.iter().rev() {
            p = p * r + ak;
        }
        r * p
    }

    pub fn numerator(&self, r: f64) -> f64 {
        let mut p = 0.0;
        for &bk in self.b.iter().rev() {
            p = p * r + bk;
        }
        if let Some(be) = self.b_exp {
            p += be * 32.0 * r.powi(self.n as i32 + 1) * (-2.0 * r - 1.0).exp()
                / std::f64::consts::PI;
        }
        p
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("evaluate requires R > 0, got {r}")));
        }
        let den = self.denominator(r);
        let num = self.numerator(r);
        if den.abs() < 1e-300 || !(num / den).is_finite() {
            return Err(Error::Pole(r));
        }
        Ok(num / den)
    }

    /// Check the invariants: constraints hold and the denominator never
    /// vanishes on (1e-3, 1e3).
    pub fn validate(&self) -> Result<()> {
        let bref = apply_constraints(
            &self.a,
            self.variant,
            Some((self.b[4], self.b[5])),
        )?;
        for (k, (&have, &want)) in self.b.iter().zip(&bref).enumerate() {
            if (have - want).abs() > 1e-12 * want.abs().max(1.0) {
                return Err(Error::Config(format!(
                    "constraint violated at b{k}: {have} vs {want}"
                )));
            }
        }
        let mut sign = 0.0;
        for k in 0..10_000 {
            let r = 1e-3 * (1e6f64).powf(k as f64 / 9_999.0);
            let den = self.denominator(r);
            if den == 0.0 || (sign != 0.0 && den.signum() != sign) {
                return Err(Error::Pole(r));
            }
            sign = den.signum();
        }
        Ok(())
    }
}

/// JSON image with all coefficients as 17-significant-digit decimal strings
/// (lossless for f64 round-trips).
#[derive(Debug, Serialize, Deserialize)]
struct RationalApproxJson {
    variant: String,
    n: usize,
    a: Vec<String>,
    b: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_exp: Option<String>,
}

fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

impl RationalApprox {
    pub fn to_json(&self) -> Result<String> {
        let img = RationalApproxJson {
            variant: self.variant.label().to_string(),
            n: self.n,
            a: self.a.iter().map(|&x| fmt17(x)).collect(),
            b: self.b.iter().map(|&x| fmt17(x)).collect(),
            b_exp: self.b_exp.map(fmt17),
        };
        Ok(serde_json::to_string_pretty(&img)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let img: RationalApproxJson = serde_json::from_str(text)?;
        let parse = |s: &String| -> Result<f64> {
            s.parse::<f64>().map_err(|e| Error::Parse(format!("bad coefficient '{s}': {e}")))
        };
        let mut a = Vec::with_capacity(img.a.len());
        for s in &img.a {
            a.push(parse(s)?);
        }
        let mut b = Vec::with_capacity(img.b.len());
        for s in &img.b {
            b.push(parse(s)?);
        }
        let b_exp = match &img.b_exp {
            Some(s) => Some(parse(s)?),
            None => None,
        };
        Ok(Self { variant: Symmetry::parse(&img.variant)?, n: img.n, a, b, b_exp })
    }
}

/// The published coefficients (Table 2 of the source analysis) as a known
/// reference approximant.
pub fn reference_symmetric() -> RationalApprox {
    let a = [
        0.13241, 1.84394, 4.12047, 1.30497, 1.29747, 0.03477, -0.00581, 0.19956, -0.06119,
        0.01156,
    ];
    RationalApprox::from_free(Symmetry::Symmetric, &a, None, None).expect("static coefficients")
}

pub fn reference_antisymmetric() -> RationalApprox {
    let a = [
        1.5067, 0.9674, 1.3044, 0.073, 2.5425, 0.8491, -0.3083, -3.4974, 3.0725, 0.072605,
    ];
    RationalApprox::from_free(
        Symmetry::Antisymmetric,
        &a,
        Some((-2.1696, 0.4898)),
        Some(1.8518),
    )
    .expect("static coefficients")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport {
    pub chi2: f64,
    pub window: (f64, f64),
    pub n_points: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitConfig {
    pub window: (f64, f64),
    pub n_starts: usize,
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self { window: (0.1, 6.5), n_starts: 16, seed: 0, max_iter: 300 }
    }
}

/// Unweighted residual sum of squares of the approximant over the curve
/// points inside the window.
pub fn chi2(approx: &RationalApprox, curve: &TermCurve, window: (f64, f64)) -> Result<f64> {
    let mut s = 0.0;
    let mut used = 0;
    for p in &curve.points {
        if p.r < window.0 - 1e-12 || p.r > window.1 + 1e-12 {
            continue;
        }
        let d = approx.evaluate(p.r)? - p.v;
        s += d * d;
        used += 1;
    }
    if used == 0 {
        return Err(Error::Domain("no curve points inside the fit window".into()));
    }
    Ok(s)
}

fn free_count(variant: Symmetry) -> usize {
    match variant {
        Symmetry::Symmetric => 10,
        Symmetry::Antisymmetric => 13,
    }
}

fn build(variant: Symmetry, p: &[f64]) -> Result<RationalApprox> {
    match variant {
        Symmetry::Symmetric => RationalApprox::from_free(variant, &p[..10], None, None),
        Symmetry::Antisymmetric => RationalApprox::from_free(
            variant,
            &p[..10],
            Some((p[10], p[11])),
            Some(p[12]),
        ),
    }
}

fn residuals(variant: Symmetry, p: &[f64], rs: &[f64], vs: &[f64]) -> Option<DVector<f64>> {
    let approx = build(variant, p).ok()?;
    let mut out = DVector::zeros(rs.len());
    for (i, (&r, &v)) in rs.iter().zip(vs).enumerate() {
        let den = approx.denominator(r);
        if den.abs() < 1e-30 {
            return None;
        }
        let val = approx.numerator(r) / den;
        if !val.is_finite() {
            return None;
        }
        out[i] = val - v;
    }
    Some(out)
}

/// Damped (Levenberg-Marquardt) least squares with a forward-difference
/// Jacobian. Returns (params, chi2).
fn levmar(
    variant: Symmetry,
    start: &[f64],
    rs: &[f64],
    vs: &[f64],
    max_iter: usize,
) -> Option<(Vec<f64>, f64)> {
    let np = start.len();
    let mut p = start.to_vec();
    let mut res = residuals(variant, &p, rs, vs)?;
    let mut cost = res.norm_squared();
    let mut lambda = 1e-3;
    for _ in 0..max_iter {
        // Jacobian
        let mut jac = DMatrix::zeros(rs.len(), np);
        for k in 0..np {
            let h = 1e-7 * p[k].abs().max(1e-4);
            let mut pp = p.clone();
            pp[k] += h;
            let rp = residuals(variant, &pp, rs, vs)?;
            for i in 0..rs.len() {
                jac[(i, k)] = (rp[i] - res[i]) / h;
            }
        }
        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * &res;
        let mut improved = false;
        for _ in 0..30 {
            let mut m = jtj.clone();
            for k in 0..np {
                m[(k, k)] += lambda * jtj[(k, k)].max(1e-12);
            }
            let step = match m.cholesky() {
                Some(ch) => ch.solve(&jtr),
                None => {
                    lambda *= 10.0;
                    continue;
                }
            };
            let cand: Vec<f64> = (0..np).map(|k| p[k] - step[k]).collect();
            if let Some(rc) = residuals(variant, &cand, rs, vs) {
                let cc = rc.norm_squared();
                if cc < cost {
                    let rel = (cost - cc) / cost.max(1e-300);
                    p = cand;
                    res = rc;
                    cost = cc;
                    lambda = (lambda * 0.3).max(1e-12);
                    improved = true;
                    if rel < 1e-12 {
                        return Some((p, cost));
                    }
                    break;
                }
            }
            lambda *= 10.0;
            if lambda > 1e12 {
                return Some((p, cost));
            }
        }
        if !improved {
            break;
        }
    }
    Some((p, cost))
}

/// Linearized warm start: multiply through by the denominator so that the
/// residuals V_i R_i sum(a_k R_i^k) - sum(b_k(a, ..) R_i^k) are linear in
/// all free coefficients (the b3 = 1 constraint supplies the
/// inhomogeneity), then solve by SVD.
fn linearized_start(variant: Symmetry, rs: &[f64], vs: &[f64]) -> Option<Vec<f64>> {
    let np = free_count(variant);
    let m = rs.len();
    let mut design = DMatrix::zeros(m, np);
    let mut rhs = DVector::zeros(m);
    for (i, (&r, &v)) in rs.iter().zip(vs).enumerate() {
        // residual = v * r * sum a_k r^k - num(a, b4, b5, b_exp; r)
        // basis function for a_k: v r^{k+1} - d(num)/d(a_k)
        let powers: Vec<f64> = (0..10).map(|k| r.powi(k as i32)).collect();
        let c = match variant {
            Symmetry::Symmetric => -6.0,
            Symmetry::Antisymmetric => 10.0 / 9.0,
        };
        // d(num)/d(a_k) from the constraint relations
        let mut dnum = [0.0; 10];
        dnum[0] = powers[0] + c * powers[1]; // b0 = a0, b1 += c a0
        dnum[1] = powers[1] + c * powers[2];
        dnum[2] = powers[2];
        dnum[8] += TAIL[0] * powers[6];
        dnum[9] += TAIL[0] * powers[7] + TAIL[1] * powers[6];
        match variant {
            Symmetry::Symmetric => {
                dnum[7] += TAIL[0] * powers[5];
                dnum[8] += TAIL[1] * powers[5];
                dnum[9] += TAIL[2] * powers[5];
                dnum[6] += TAIL[0] * powers[4];
                dnum[7] += TAIL[1] * powers[4];
                dnum[8] += TAIL[2] * powers[4];
                dnum[9] += TAIL[3] * powers[4];
            }
            Symmetry::Antisymmetric => {}
        }
        for k in 0..10 {
            design[(i, k)] = v * r * powers[k] - dnum[k];
        }
        if variant == Symmetry::Antisymmetric {
            design[(i, 10)] = -powers[4];
            design[(i, 11)] = -powers[5];
            design[(i, 12)] =
                -32.0 * r.powi(10) * (-2.0 * r - 1.0).exp() / std::f64::consts::PI;
        }
        rhs[i] = powers[3]; // move the fixed b3 R^3 term to the right side
    }
    let svd = design.svd(true, true);
    svd.solve(&rhs, 1e-12).ok().map(|x| x.iter().cloned().collect())
}

/// Deterministic xorshift-style generator for the multi-start seeds.
struct SplitMix(u64);
impl SplitMix {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z = z ^ (z >> 31);
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Multi-start constrained fit of the curve inside the window. The starts
/// are `n_starts` log-uniform magnitude draws in [1e-2, 10] plus one
/// linearized-solve start; the best final chi2 wins (lowest start index on
/// ties).
pub fn fit(
    curve: &TermCurve,
    variant: Symmetry,
    cfg: &FitConfig,
) -> Result<(RationalApprox, FitReport)> {
    let mut rs = Vec::new();
    let mut vs = Vec::new();
    for p in &curve.points {
        if p.r >= cfg.window.0 - 1e-12 && p.r <= cfg.window.1 + 1e-12 {
            rs.push(p.r);
            vs.push(p.v);
        }
    }
    let np = free_count(variant);
    if rs.len() < np {
        return Err(Error::Config(format!(
            "fit window contains {} points for {np} parameters",
            rs.len()
        )));
    }
    let mut rng = SplitMix(cfg.seed.wrapping_mul(0x9e3779b9).wrapping_add(1));
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for _ in 0..cfg.n_starts {
        let s: Vec<f64> = (0..np)
            .map(|_| {
                let mag = 1e-2 * 1e3f64.powf(rng.next_f64());
                mag
            })
            .collect();
        starts.push(s);
    }
    if let Some(lin) = linearized_start(variant, &rs, &vs) {
        starts.push(lin);
    }
    let results = crate::par::map_slice(&starts, |s| levmar(variant, s, &rs, &vs, cfg.max_iter));
    let mut best: Option<(usize, Vec<f64>, f64)> = None;
    for (idx, r) in results.into_iter().enumerate() {
        if let Some((p, cost)) = r {
            if build(variant, &p).map(|a| a.validate().is_ok()).unwrap_or(false) {
                let better = match &best {
                    None => true,
                    Some((_, _, bc)) => cost < *bc,
                };
                if better {
                    best = Some((idx, p, cost));
                }
            }
        }
    }
    let (_, p, cost) = best.ok_or(Error::FitFailure {
        best_chi2: f64::INFINITY,
        message: "no start converged to a pole-free approximant".into(),
    })?;
    let approx = build(variant, &p)?;
    let report = FitReport {
        chi2: cost,
        window: cfg.window,
        n_points: rs.len(),
        converged: cost.is_finite(),
    };
    Ok((approx, report))
}
