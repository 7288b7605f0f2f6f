//! Quadrature rules: Gauss-Legendre (arbitrary order, Newton on the Legendre
//! polynomial), the fixed panel cascade used for the potential integral, an
//! adaptive Gauss pair, and tanh-sinh for endpoint-singular integrands.

use once_cell::sync::Lazy;

/// Gauss-Legendre nodes/weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi-like initial guess, then Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pd(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        xs[n / 2] = 0.0;
    }
    (xs, ws)
}

fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached 48-point rule, the workhorse for panelized integrals.
pub static GL48: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(48));

/// Integrate f over [lo, hi] with the cached 48-point rule.
pub fn gl48_panel<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    let (xs, ws) = &*GL48;
    let c = 0.5 * (hi + lo);
    let h = 0.5 * (hi - lo);
    xs.iter().zip(ws).map(|(&x, &w)| w * f(c + h * x)).sum::<f64>() * h
}

/// Panel edges on x in [0, 1] for the electron-nucleus attraction integral.
/// The geometric cascade sqrt(1 - w), w = 0.05 / 8^k, resolves the boundary
/// layer at x -> 1 where the Gaussian factors switch on.
pub fn attraction_panels() -> Vec<f64> {
    let mut edges = vec![0.0, 0.3, 0.6, 0.8, 0.9, 0.95];
    let mut w = 0.05f64;
    while w > 1e-14 {
        edges.push((1.0 - w).sqrt());
        w /= 8.0;
    }
    edges.push(1.0);
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.dedup();
    edges
}

/// Nodes and weights of the 48-point rule mapped over a set of panel edges.
pub fn paneled_gl48(edges: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (t, u) = &*GL48;
    let mut xs = Vec::with_capacity(48 * (edges.len() - 1));
    let mut ws = Vec::with_capacity(48 * (edges.len() - 1));
    for pair in edges.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let c = 0.5 * (hi + lo);
        let h = 0.5 * (hi - lo);
        for (&ti, &ui) in t.iter().zip(u) {
            xs.push(c + h * ti);
            ws.push(h * ui);
        }
    }
    (xs, ws)
}

/// Adaptive Gauss quadrature by interval bisection, comparing GL-24 against
/// GL-48 on each interval.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    static GL24: Lazy<(Vec<f64>, Vec<f64>)> = Lazy::new(|| gauss_legendre(24));
    fn rule<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, r: &(Vec<f64>, Vec<f64>)) -> f64 {
        let c = 0.5 * (hi + lo);
        let h = 0.5 * (hi - lo);
        r.0.iter().zip(&r.1).map(|(&x, &w)| w * f(c + h * x)).sum::<f64>() * h
    }
    fn rec<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64, depth: u32) -> f64 {
        let coarse = rule(f, lo, hi, &GL24);
        let fine = rule(f, lo, hi, &GL48);
        // the relative floor stops the recursion once the panel estimate is
        // rounding-limited, which an absolute target alone cannot guarantee
        if (fine - coarse).abs() <= tol + 1e-14 * fine.abs() || depth >= 24 {
            fine
        } else {
            let mid = 0.5 * (lo + hi);
            rec(f, lo, mid, 0.5 * tol, depth + 1) + rec(f, mid, hi, 0.5 * tol, depth + 1)
        }
    }
    rec(f, lo, hi, tol, 0)
}

/// Tanh-sinh quadrature over [lo, hi]; handles integrable endpoint
/// singularities (needed for the angular measure sin^{d-2} at fractional d).
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    let h = 0.5 * (hi - lo);
    let g = |t: f64| {
        let u = 0.5 * std::f64::consts::PI * t.sinh();
        let dw = 0.5 * std::f64::consts::PI * t.cosh() / u.cosh().powi(2);
        // abscissa referenced to the nearer endpoint: 1 -/+ tanh(u) =
        // 2 / (1 + exp(+/-2u)), which keeps the endpoint distance accurate
        // where c + h tanh(u) would lose it to cancellation
        let x = if u < 0.0 {
            lo + h * 2.0 / (1.0 + (-2.0 * u).exp())
        } else {
            hi - h * 2.0 / (1.0 + (2.0 * u).exp())
        };
        if x <= lo || x >= hi || !dw.is_finite() {
            0.0
        } else {
            f(x) * dw * h
        }
    };
    let mut step = 1.0;
    let mut sum = g(0.0);
    let mut prev;
    for level in 0..12 {
        prev = sum * step;
        if level > 0 {
            step *= 0.5;
        }
        let mut k = 1.0;
        loop {
            let t = if level == 0 { k * step } else { (2.0 * k - 1.0) * step };
            let gp = g(t);
            let gm = g(-t);
            sum += gp + gm;
            if t > 4.0 && gp.abs() + gm.abs() < 1e-300 {
                break;
            }
            k += 1.0;
            if k > 1e6 {
                break;
            }
        }
        let cur = sum * step;
        if level > 2 && (cur - prev).abs() <= tol * cur.abs().max(1.0) {
            return cur;
        }
    }
    sum * step
}
