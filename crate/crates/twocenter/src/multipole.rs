//! Multipole moments of hydrogen-like states in d dimensions.
//!
//! Conventions: the quadrupole operator is Q2 = 3z^2 - r^2 = 2 r^2 P2(cos),
//! while the higher moments use Qk = r^k Pk(cos). The general even-moment
//! formula `q2n_ground` uses the Pk convention throughout, so its n = 1
//! value is half of `quadrupole(Ground, ..)`.

use crate::dim::DimensionParams;
use crate::quad::{adaptive, tanh_sinh};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HydrogenState {
    /// 1s-like ground state, psi = B exp(-r / sigma).
    Ground,
    /// First radially excited s-like state,
    /// psi = B (1 - r / (sigma (sigma + 1))) exp(-r / (sigma + 1)).
    RadialExcited,
    /// Angular momentum 1, psi = B z exp(-r / (sigma + 1)).
    PState,
}

impl HydrogenState {
    /// Radial factor of the wave function (unnormalized).
    pub fn radial(&self, dim: &DimensionParams, r: f64) -> f64 {
        let s = dim.sigma();
        match self {
            HydrogenState::Ground => (-r / s).exp(),
            HydrogenState::RadialExcited => {
                (1.0 - r / (s * (s + 1.0))) * (-r / (s + 1.0)).exp()
            }
            HydrogenState::PState => r * (-r / (s + 1.0)).exp(),
        }
    }

    /// Exact energy of the state in the one-center problem.
    pub fn energy(&self, dim: &DimensionParams) -> f64 {
        let s = dim.sigma();
        match self {
            HydrogenState::Ground => -1.0 / (2.0 * s * s),
            // both the first radial excitation and the P state sit on the
            // principal level n = 2: E = -2/(d+1)^2
            HydrogenState::RadialExcited | HydrogenState::PState => {
                -1.0 / (2.0 * (s + 1.0) * (s + 1.0))
            }
        }
    }

    /// Extra angular weight cos^2 carried by the density of the P state.
    fn angular_weight_cos2(&self) -> bool {
        matches!(self, HydrogenState::PState)
    }
}

/// <3z^2 - r^2> in closed form.
pub fn quadrupole(state: HydrogenState, dim: &DimensionParams) -> f64 {
    let d = dim.d();
    match state {
        HydrogenState::Ground => (3.0 - d) * (1.0 + d) * (d - 1.0) * (d - 1.0) / 16.0,
        HydrogenState::RadialExcited => (d + 1.0).powi(2) * (d + 11.0) * (3.0 - d) / 16.0,
        HydrogenState::PState => (d + 1.0).powi(2) * (d + 3.0) * (7.0 - d) / 16.0,
    }
}

/// <r^4 P4> in closed form.
pub fn octupole(state: HydrogenState, dim: &DimensionParams) -> f64 {
    let d = dim.d();
    match state {
        HydrogenState::Ground => {
            3.0 * (d - 1.0).powi(4) * (1.0 + d) * (9.0 - d * d) * (5.0 - d) / 2048.0
        }
        // the published closed form carries denominator 128; direct
        // integration of |psi_1|^2 r^4 P4 fixes it to 2048 (exactly 16x off)
        HydrogenState::RadialExcited => {
            3.0 * (d + 1.0).powi(4) * (d + 29.0) * (9.0 - d * d) * (5.0 - d) / 2048.0
        }
        HydrogenState::PState => {
            3.0 * (d + 1.0).powi(4) * (d + 5.0) * (9.0 - d * d) * (21.0 - d) / 2048.0
        }
    }
}

/// General even ground-state moment <r^{2n} P_{2n}>:
/// (2n-1)!!/(2^{5n} n!) (d-1)^{2n} (d+1) (3^2-d^2)(5^2-d^2)...((2n-1)^2-d^2)
/// (2n+1-d).
pub fn q2n_ground(n: usize, dim: &DimensionParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("moment order n must be >= 1".into()));
    }
    let d = dim.d();
    let mut pre = 1.0;
    for k in 1..=n {
        // (2n-1)!! / n! accumulated as prod (2k-1)/k
        pre *= (2.0 * k as f64 - 1.0) / k as f64;
    }
    pre /= 2.0f64.powi(5 * n as i32);
    let mut prod = (d - 1.0).powi(2 * n as i32) * (d + 1.0);
    let mut m = 3.0;
    while m <= 2.0 * n as f64 - 1.0 {
        prod *= m * m - d * d;
        m += 2.0;
    }
    Ok(pre * prod * (2.0 * n as f64 + 1.0 - d))
}

/// Mean squared dipole <z^2> of the ground state: sigma^2 (d+1)/4.
pub fn dipole_squared_ground(dim: &DimensionParams) -> f64 {
    let s = dim.sigma();
    s * s * (dim.d() + 1.0) / 4.0
}

/// Legendre polynomial P_k by the three-term recurrence.
pub fn legendre(k: usize, x: f64) -> f64 {
    let mut p0 = 1.0;
    if k == 0 {
        return p0;
    }
    let mut p1 = x;
    for m in 2..=k {
        let m = m as f64;
        let p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Independent check of any moment by direct quadrature:
/// <r^k Pk(cos)> over |psi|^2 with the d-dimensional measure
/// r^{d-1} dr sin^{d-2}(theta) dtheta (tanh-sinh in theta handles the
/// endpoint singularity at fractional d < 2).
pub fn moment_by_quadrature(
    state: HydrogenState,
    dim: &DimensionParams,
    k: usize,
) -> Result<f64> {
    let d = dim.d();
    let rmax = 80.0 * (dim.sigma() + 1.0);
    // substitute r = u^2: the measure r^{d-1} dr becomes 2 u^{2d-1} du, which
    // removes the fractional-power derivative singularity at the origin
    let radial = |pow: f64| {
        adaptive(
            &|u: f64| {
                let r = u * u;
                2.0 * u * r.powf(pow + d - 1.0) * state.radial(dim, r).powi(2)
            },
            0.0,
            rmax.sqrt(),
            1e-13,
        )
    };
    let rnum = radial(k as f64);
    let rden = radial(0.0);
    let wcos = state.angular_weight_cos2();
    // fold [0, pi] onto two copies of [0, pi/2] so the sin^{d-2} endpoint
    // singularity always sits at t = 0, where sin(t) keeps full relative
    // accuracy (near t = pi it is limited to ~ulp(pi)/(pi - t))
    let ang = |f: &dyn Fn(f64) -> f64| {
        let half = |upper: bool| {
            tanh_sinh(
                &|t: f64| {
                    let c = if upper { -t.cos() } else { t.cos() };
                    let w = t.sin().powf(d - 2.0) * if wcos { c * c } else { 1.0 };
                    w * f(c)
                },
                0.0,
                std::f64::consts::FRAC_PI_2,
                // near machine tolerance: for moments that vanish by angular
                // cancellation this absolute floor is what survives after
                // multiplication by the large radial factor <r^k>
                1e-15,
            )
        };
        half(false) + half(true)
    };
    let anum = ang(&|c| legendre(k, c));
    let aden = ang(&|_| 1.0);
    if !(rden > 0.0 && aden > 0.0) {
        return Err(Error::Numeric("degenerate normalization in moment".into()));
    }
    Ok(rnum / rden * anum / aden)
}
