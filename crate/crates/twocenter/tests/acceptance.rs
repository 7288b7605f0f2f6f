//! Acceptance suite: one test per headline result, each printing a single
//! measured-vs-expected line. Reference numbers come from the published
//! tables for this system; independently derived cross-checks come from an
//! out-of-tree elliptic-coordinate (Mathieu) solver of the same two-center
//! problem.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` to see
//! every line; the slow fixtures (production-grid scans, critical-mass
//! tables) are shared across tests.

use once_cell::sync::Lazy;
use twocenter::asym::{large_r_shifted, splitting_large_r};
use twocenter::fit::{fit, reference_antisymmetric, reference_symmetric, FitConfig};
use twocenter::model::TermCurve;
use twocenter::multipole::{
    dipole_squared_ground, moment_by_quadrature, octupole, q2n_ground, quadrupole, HydrogenState,
};
use twocenter::term::{
    bisect, compute_term, minimize, rms_electron_distance, scan_term, splitting_variational,
    TermConfig,
};
use twocenter::vib::{
    critical_mass, level_count_approx, quasiclassical_j, z_critical_large_m, TermEval,
    VibrationalProblem,
};
use twocenter::{DimensionParams, Symmetry};

struct Line {
    label: &'static str,
    clauses: Vec<(String, bool)>,
}

impl Line {
    fn new(label: &'static str) -> Self {
        Self { label, clauses: Vec::new() }
    }

    fn check(&mut self, what: &str, measured: f64, expected: f64, tol: f64) {
        let ok = measured.is_finite() && (measured - expected).abs() <= tol;
        self.clauses.push((
            format!("{what} = {measured:.6e} (expected {expected:.6e} +- {tol:.1e})"),
            ok,
        ));
    }

    fn assert_flag(&mut self, what: &str, ok: bool) {
        self.clauses.push((what.to_string(), ok));
    }

    fn finish(self) {
        let ok = self.clauses.iter().all(|c| c.1);
        println!(
            "acceptance {}: {}",
            self.label,
            if ok { "PASS".to_string() } else { "FAIL".to_string() }
        );
        for (msg, cok) in &self.clauses {
            println!("    [{}] {}", if *cok { "ok" } else { "FAIL" }, msg);
        }
        assert!(ok, "{} failed", self.label);
    }
}

static SYM_CFG: Lazy<TermConfig> =
    Lazy::new(|| TermConfig::new(2.0, Symmetry::Symmetric).unwrap());
static ANTI_CFG: Lazy<TermConfig> =
    Lazy::new(|| TermConfig::new(2.0, Symmetry::Antisymmetric).unwrap());

/// Production-grid symmetric minimum (shared by several tests).
static SYM_MIN: Lazy<(f64, f64)> = Lazy::new(|| {
    minimize(|r| Ok(compute_term(&SYM_CFG, r)?.v), 0.40, 0.65, 2e-4).unwrap()
});

/// Production-grid antisymmetric minimum.
static ANTI_MIN: Lazy<(f64, f64)> = Lazy::new(|| {
    minimize(|r| Ok(compute_term(&ANTI_CFG, r)?.v), 4.5, 7.0, 5e-4).unwrap()
});

/// Full symmetric scan over the fit window (the expensive fixture).
static SYM_CURVE: Lazy<TermCurve> = Lazy::new(|| {
    let rs: Vec<f64> = (0..=128).map(|k| 0.1 + 0.05 * k as f64).collect();
    scan_term(&SYM_CFG, &rs).unwrap()
});

#[test]
fn a01_planar_term_extrema() {
    let mut line = Line::new("01 planar term extrema");
    let (rmin, vmin) = *SYM_MIN;
    line.check("sym R_min", rmin, 0.51357, 1e-3);
    line.check("sym V_min", vmin, -0.820, 2e-3);
    let r0 = bisect(|r| Ok(compute_term(&SYM_CFG, r)?.v), 0.15, 0.35, 5e-5).unwrap();
    line.check("sym R_0", r0, 0.2391, 2e-3);
    let (ra, va) = *ANTI_MIN;
    line.check("anti R_min", ra, 5.59, 0.02 * 5.59);
    line.check("anti V_min", va, -4.235e-4, 0.1 * 4.235e-4);
    let r0a = bisect(|r| Ok(compute_term(&ANTI_CFG, r)?.v), 3.8, 5.2, 5e-5).unwrap();
    line.check("anti R_0", r0a, 4.625, 0.02 * 4.625);
    line.finish();
}

#[test]
fn a02_three_dimensional_term_minimum() {
    let mut line = Line::new("02 three-dimensional term minimum");
    let cfg = TermConfig::new(3.0, Symmetry::Symmetric).unwrap();
    let (rmin, vmin) =
        minimize(|r| Ok(compute_term(&cfg, r)?.v), 1.7, 2.3, 2e-4).unwrap();
    line.check("R_min", rmin, 1.99719, 1e-3);
    // the 1e-4 energy target exceeds what the separable Gaussian pair basis
    // reaches at this grid; kept at the stated tolerance and allowed to fail
    line.check("V_min", vmin, -0.102635, 1e-4);
    line.finish();
}

#[test]
fn a03_united_and_separated_atom_limits() {
    let mut line = Line::new("03 united/separated atom limits");
    let d = 2.0;
    let us = twocenter::term::solve_lowest(
        &twocenter::basis::united_atom_sym(),
        0.0,
        Symmetry::Symmetric,
        d,
        1e-12,
    )
    .unwrap()
    .e0;
    line.check("U_s(0)", us, -8.0, 1e-3);
    // the antisymmetric combination vanishes identically at R = 0; probe the
    // limit at a bond length where the quadratic correction is ~1e-5
    let r_small = 0.003;
    let ua = twocenter::term::solve_lowest(
        &twocenter::basis::united_atom_anti(),
        r_small,
        Symmetry::Antisymmetric,
        d,
        1e-12,
    )
    .unwrap()
    .e0;
    line.check("U_a(0)", ua, -8.0 / 9.0, 1e-3);
    let u50 = compute_term(&SYM_CFG, 50.0).unwrap().u;
    let expect = -2.0 - 1.0 / 50.0 - 3.0 / (32.0 * 50.0f64.powi(3));
    line.check("U(50)", u50, expect, 1e-3);
    line.finish();
}

#[test]
fn a04_mean_electron_size_anomaly() {
    let mut line = Line::new("04 mean electron size vs bond length");
    let (rs, _) = *SYM_MIN;
    // The symmetric rms size computed from the two-center state itself is
    // 0.5443 (basis-converged and confirmed by a finite-field
    // Hellmann-Feynman check); the published 0.5821 appears to come from a
    // different (finite-mass) calculation. Kept at the stated tolerance and
    // allowed to fail.
    let r31s = rms_electron_distance(&SYM_CFG, rs).unwrap();
    line.check("sym R31 at R_min", r31s, 0.5821, 0.01 * 0.5821);
    line.assert_flag(
        &format!("sym R31 {r31s:.4} exceeds R_min {rs:.4}"),
        r31s > rs,
    );
    let (ra, _) = *ANTI_MIN;
    let r31a = rms_electron_distance(&ANTI_CFG, ra).unwrap();
    line.check("anti R31 at R_min", r31a, 3.9994, 0.01 * 3.9994);
    line.assert_flag(
        &format!("anti R31 {r31a:.4} below R_min {ra:.4}"),
        r31a < ra,
    );
    line.finish();
}

#[test]
fn a05_large_bond_asymptotics() {
    let mut line = Line::new("05 large-bond asymptotic matching");
    let dim = DimensionParams::new(2.0).unwrap();
    for r in [8.0, 10.0, 12.0] {
        let v = compute_term(&SYM_CFG, r).unwrap().v;
        let series = large_r_shifted(&dim, r, 6).unwrap();
        let miss = (v - series.value).abs();
        // bound: 3x the first omitted term (estimated by the last included);
        // the variational deficit at the production grid exceeds this scale,
        // so the clause is allowed to fail at the stated tolerance
        line.check(
            &format!("|V_var - series| at R = {r}"),
            miss,
            0.0,
            3.0 * series.estimated_error,
        );
    }
    let basis = SYM_CFG.basis.build(10.0).unwrap();
    let de = splitting_variational(&basis, 10.0, 2.0, 1e-12).unwrap();
    let ratio = de / splitting_large_r(&dim, 10.0).unwrap();
    line.check("splitting ratio at R = 10", ratio, 1.0, 0.25);
    line.finish();
}

#[test]
fn a06_multipole_closed_forms() {
    let mut line = Line::new("06 multipole closed forms vs quadrature");
    let states = [
        HydrogenState::Ground,
        HydrogenState::RadialExcited,
        HydrogenState::PState,
    ];
    let mut worst_rel: f64 = 0.0;
    let mut worst_zero: f64 = 0.0;
    for &d in &[1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 7.0] {
        let dim = DimensionParams::new(d).unwrap();
        for state in states {
            for k in [2usize, 4] {
                let closed = if k == 2 {
                    quadrupole(state, &dim)
                } else {
                    octupole(state, &dim)
                };
                let mut q = moment_by_quadrature(state, &dim, k).unwrap();
                if k == 2 {
                    q *= 2.0; // explicit operator is 3z^2 - r^2 = 2 r^2 P2
                }
                if closed == 0.0 {
                    worst_zero = worst_zero.max(q.abs());
                } else {
                    worst_rel = worst_rel.max(((q - closed) / closed).abs());
                }
            }
        }
        // general even-moment product formula for the ground state, n <= 3
        for n in [1usize, 2, 3] {
            let closed = q2n_ground(n, &dim).unwrap();
            let q = moment_by_quadrature(HydrogenState::Ground, &dim, 2 * n).unwrap();
            if closed.abs() < 1e-14 {
                worst_zero = worst_zero.max(q.abs());
            } else {
                worst_rel = worst_rel.max(((q - closed) / closed).abs());
            }
        }
    }
    line.check("worst relative error", worst_rel, 0.0, 1e-8);
    line.check("worst value at analytic zeros", worst_zero, 0.0, 1e-10);
    // zero pattern: every spherstate moment vanishes in 3D, P-state does not
    let d3 = DimensionParams::new(3.0).unwrap();
    line.assert_flag(
        "3D zeros (ground/excited) and non-zeros (P state)",
        quadrupole(HydrogenState::Ground, &d3) == 0.0
            && octupole(HydrogenState::Ground, &d3) == 0.0
            && quadrupole(HydrogenState::RadialExcited, &d3) == 0.0
            && quadrupole(HydrogenState::PState, &d3) > 0.0,
    );
    // sign pattern: ground quadrupole positive below 3D, negative above
    let flip = |d: f64| quadrupole(HydrogenState::Ground, &DimensionParams::new(d).unwrap());
    line.assert_flag(
        "ground quadrupole sign flips across d = 3",
        flip(2.0) > 0.0 && flip(2.5) > 0.0 && flip(4.0) < 0.0 && flip(5.0) < 0.0,
    );
    line.assert_flag(
        "ground dipole spread positive",
        dipole_squared_ground(&DimensionParams::new(2.0).unwrap()) > 0.0,
    );
    line.finish();
}

#[test]
fn a07_constrained_fit_quality() {
    let mut line = Line::new("07 constrained rational fit quality");
    let (approx, report) = fit(&SYM_CURVE, Symmetry::Symmetric, &FitConfig::default()).unwrap();
    line.check("chi2 over 0.1..6.5", report.chi2, 0.0, 5e-6);
    line.assert_flag("constraints hold to 1e-12", approx.validate().is_ok());
    let dim = DimensionParams::new(2.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut r = 7.0;
    while r <= 20.0 {
        let series = large_r_shifted(&dim, r, 6).unwrap().value;
        worst = worst.max((approx.evaluate(r).unwrap() - series).abs());
        r += 0.5;
    }
    line.check("tail mismatch on [7, 20]", worst, 0.0, 1e-4);
    line.finish();
}

#[test]
fn a08_critical_mass_tables() {
    let mut line = Line::new("08 critical-mass tables");
    let sym = || TermEval::Approx(reference_symmetric());
    let anti = || TermEval::Approx(reference_antisymmetric());
    // symmetric, with centripetal attraction
    let expect_cent = [0.0, 6.01, 19.03, 37.27, 59.03, 84.43];
    for (n, &e) in expect_cent.iter().enumerate() {
        let m = critical_mass(n, Symmetry::Symmetric, 1.0, true, sym).unwrap();
        if e == 0.0 {
            line.assert_flag("sym m_crit(0) identically bound", m == 0.0);
        } else {
            line.check(&format!("sym m_crit({n})"), m, e, 0.03 * e);
        }
    }
    // symmetric, centripetal dropped; reference row not reproduced from the
    // stated potential (documented discrepancy) - kept at stated tolerance
    let expect_nc = [0.75, 8.09, 22.19, 42.67, 68.92, 99.89];
    for (n, &e) in expect_nc.iter().enumerate() {
        let m = critical_mass(n, Symmetry::Symmetric, 1.0, false, sym).unwrap();
        line.check(&format!("sym no-cent m_crit({n})"), m, e, 0.05 * e);
    }
    // antisymmetric, with centripetal attraction; reference row consistent
    // with a finite outer box rather than the infinite domain used here
    let expect_anti = [55.8, 335.5, 916.5, 1741.5, 2807.0];
    for (n, &e) in expect_anti.iter().enumerate() {
        let m = critical_mass(n, Symmetry::Antisymmetric, 1.0, true, anti).unwrap();
        line.check(&format!("anti m_crit({n})"), m, e, 0.05 * e);
    }
    line.finish();
}

#[test]
fn a09_critical_charges() {
    let mut line = Line::new("09 critical charges at infinite mass");
    let (zs, rs) = z_critical_large_m(&TermEval::Approx(reference_symmetric())).unwrap();
    line.check("Z_crit symmetric", zs, 0.64686, 1e-3);
    line.check("R at Z_crit symmetric", rs, 0.89, 0.02);
    let (za, ra) = z_critical_large_m(&TermEval::Approx(reference_antisymmetric())).unwrap();
    line.check("Z_crit antisymmetric", za, 0.9976, 2e-3);
    line.check("R at Z_crit antisymmetric", ra, 5.7, 0.2);
    line.finish();
}

#[test]
fn a10_quasiclassical_action() {
    let mut line = Line::new("10 quasiclassical action integrals");
    let j = quasiclassical_j(&TermEval::Approx(reference_symmetric())).unwrap();
    // the reference J appears to come from the underlying grid rather than
    // the fitted approximant; off by ~2e-3 - kept at the stated tolerance
    line.check("J symmetric", j, 1.84785, 1e-3);
    line.check("(pi/J)^2 symmetric", (std::f64::consts::PI / j).powi(2), 2.89, 1e-2);
    let ja = quasiclassical_j(&TermEval::Approx(reference_antisymmetric())).unwrap();
    line.check(
        "(pi/J)^2 antisymmetric",
        (std::f64::consts::PI / ja).powi(2),
        129.845,
        0.01 * 129.845,
    );
    line.finish();
}

#[test]
fn a11_hydrogen_ion_level_counts() {
    let mut line = Line::new("11 hydrogen-ion level counts");
    let m = 1836.152701;
    let ns = level_count_approx(m, Symmetry::Symmetric);
    let na = level_count_approx(m, Symmetry::Antisymmetric);
    line.assert_flag(
        &format!("26 excited symmetric levels (got {})", ns.saturating_sub(1)),
        ns == 27,
    );
    line.assert_flag(&format!("4 antisymmetric levels (got {na})"), na == 4);
    line.finish();
}

#[test]
fn a12_structural_properties() {
    let mut line = Line::new("12 structural property suite");
    use twocenter::basis::{geometric, BasisSet};
    use twocenter::term::solve_lowest;
    // variational monotonicity in basis size
    let mut prev = f64::INFINITY;
    let mut mono = true;
    for n in [2usize, 4, 8] {
        let b = BasisSet::tensor(&geometric(0.25, 60.0, n), &geometric(0.25, 60.0, n));
        let e = solve_lowest(&b, 1.0, Symmetry::Symmetric, 2.0, 1e-12).unwrap().e0;
        mono &= e <= prev + 1e-10;
        prev = e;
    }
    line.assert_flag("variational energy monotone in basis size", mono);
    // symmetric term below antisymmetric pointwise
    let b = BasisSet::tensor(&geometric(0.2, 100.0, 7), &geometric(0.2, 100.0, 9));
    let order = [0.5, 1.5, 3.0].iter().all(|&r| {
        let es = solve_lowest(&b, r, Symmetry::Symmetric, 2.0, 1e-12).unwrap().e0;
        let ea = solve_lowest(&b, r, Symmetry::Antisymmetric, 2.0, 1e-12).unwrap().e0;
        es <= ea + 1e-12
    });
    line.assert_flag("symmetric term below antisymmetric", order);
    // bound-state count monotone in mass
    let count = |m: f64| {
        VibrationalProblem::new(
            m,
            1.0,
            Symmetry::Symmetric,
            true,
            TermEval::Approx(reference_symmetric()),
        )
        .unwrap()
        .count_bound_states()
        .unwrap()
    };
    line.assert_flag(
        "bound count monotone in mass",
        count(10.0) <= count(40.0) && count(40.0) <= count(160.0),
    );
    // radial solver against the exactly solvable Morse well
    let depth = 5.0;
    let prob = VibrationalProblem::new(
        19.5,
        1.0,
        Symmetry::Symmetric,
        false,
        TermEval::Custom(Box::new(move |r: f64| {
            depth * ((-2.0 * (r - 6.0)).exp() - 2.0 * (-(r - 6.0)).exp())
        })),
    )
    .unwrap();
    let spec = prob.solve_spectrum(-1.2 * depth).unwrap();
    let lam = (20.0f64 * depth).sqrt(); // sqrt(mu D) / alpha = 10
    let exact0 = -depth * (1.0 - 0.5 / lam).powi(2);
    let worst = spec
        .levels
        .iter()
        .enumerate()
        .map(|(n, &e)| {
            let x = 1.0 - (n as f64 + 0.5) / lam;
            (e + depth * x * x).abs()
        })
        .fold(0.0f64, f64::max);
    line.check("Morse ground level", spec.levels[0], exact0, 1e-8 * exact0.abs());
    line.check("Morse spectrum worst abs error", worst, 0.0, 1e-8 * depth);
    line.finish();
}
