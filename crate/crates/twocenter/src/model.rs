use crate::dim::DimensionParams;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Permutation symmetry of the electronic state under exchange of the two
/// identical heavy centers (gerade / ungerade analog).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    /// The sign s = +-1 entering the basis functions and matrix elements.
    pub fn sign(&self) -> f64 {
        match self {
            Symmetry::Symmetric => 1.0,
            Symmetry::Antisymmetric => -1.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Symmetry::Symmetric => "s",
            Symmetry::Antisymmetric => "a",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "sym" | "symmetric" => Ok(Symmetry::Symmetric),
            "a" | "anti" | "antisymmetric" => Ok(Symmetry::Antisymmetric),
            other => Err(Error::Parse(format!("unknown symmetry label '{other}'"))),
        }
    }
}

/// How the points of a term curve were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermSource {
    Variational,
    Asymptotic,
    Approximant,
}

/// One sampled point of an energy term: raw U(R) and the shifted
/// V(R) = U(R) - U(inf) + 1/R.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TermPoint {
    pub r: f64,
    pub u: f64,
    pub v: f64,
}

impl TermPoint {
    pub fn from_u(r: f64, u: f64, dim: &DimensionParams) -> Result<Self> {
        Ok(Self { r, u, v: dim.shift_term(u, r)? })
    }
}

/// A sampled energy term, strictly ascending in R.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermCurve {
    pub symmetry: Symmetry,
    pub dim: DimensionParams,
    pub source: TermSource,
    pub points: Vec<TermPoint>,
}

impl TermCurve {
    pub fn new(
        symmetry: Symmetry,
        dim: DimensionParams,
        source: TermSource,
        points: Vec<TermPoint>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("term curve must be nonempty".into()));
        }
        for w in points.windows(2) {
            if !(w[1].r > w[0].r) {
                return Err(Error::Domain(format!(
                    "term curve R values must strictly increase ({} then {})",
                    w[0].r, w[1].r
                )));
            }
        }
        Ok(Self { symmetry, dim, source, points })
    }

    pub fn r_range(&self) -> (f64, f64) {
        (self.points[0].r, self.points[self.points.len() - 1].r)
    }

    /// Natural cubic spline interpolation of V(R) over the sampled range.
    pub fn spline_v(&self) -> CubicSpline {
        let xs: Vec<f64> = self.points.iter().map(|p| p.r).collect();
        let ys: Vec<f64> = self.points.iter().map(|p| p.v).collect();
        CubicSpline::fit(&xs, &ys)
    }
}

/// Natural cubic spline through (x_i, y_i); used when a vibrational problem
/// is driven by a raw scan instead of a rational approximant.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    m: Vec<f64>, // second derivatives at the knots
}

impl CubicSpline {
    pub fn fit(xs: &[f64], ys: &[f64]) -> Self {
        let n = xs.len();
        assert!(n >= 2 && n == ys.len());
        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal solve for natural boundary conditions
            let mut sub = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut sup = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                sub[i] = h0 / 6.0;
                diag[i] = (h0 + h1) / 3.0;
                sup[i] = h1 / 6.0;
                rhs[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
            }
            for i in 2..n - 1 {
                let w = sub[i] / diag[i - 1];
                diag[i] -= w * sup[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            for i in (1..n - 1).rev() {
                m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
            }
        }
        Self { xs: xs.to_vec(), ys: ys.to_vec(), m }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}
