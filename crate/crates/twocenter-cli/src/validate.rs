//! The `validate` subcommand: an executable cross-check table. `--quick`
//! runs the oracle comparisons that finish in seconds; the full run adds the
//! production variational minima, fits, critical charges and a subset of
//! critical masses, and reports measured-vs-expected for each.

use serde::Serialize;
use std::fs;
use twocenter::elements::oracle;
use twocenter::fit::{reference_antisymmetric, reference_symmetric, FitConfig};
use twocenter::multipole::{moment_by_quadrature, octupole, quadrupole, HydrogenState};
use twocenter::term::{minimize, TermConfig};
use twocenter::vib::{self, TermEval, VibrationalProblem};
use twocenter::{DimensionParams, Error, Symmetry};

use crate::{approx_curve, EXIT_COMPUTE, EXIT_OK};

#[derive(Serialize)]
struct Check {
    name: String,
    measured: f64,
    expected: f64,
    tolerance: f64,
    pass: bool,
}

struct Report {
    checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, name: &str, measured: f64, expected: f64, tol: f64) {
        let pass = (measured - expected).abs() <= tol && measured.is_finite();
        self.checks.push(Check {
            name: name.to_string(),
            measured,
            expected,
            tolerance: tol,
            pass,
        });
    }

    fn push_flag(&mut self, name: &str, pass: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            measured: if pass { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
            pass,
        });
    }
}

fn quick_checks(rep: &mut Report) {
    // term shift round trip
    let dim = DimensionParams::new(2.7).unwrap();
    let v = dim.shift_term(-1.234, 0.7).unwrap();
    rep.push(
        "shift_term round trip",
        dim.unshift_term(v, 0.7).unwrap(),
        -1.234,
        1e-13,
    );

    // matrix elements vs the direct polar-coordinate quadrature, as
    // normalization-free ratios T/S and I/S
    let draws = [
        (0.7, 0.4, 1.3, 2.2, 1.1, 1.0),
        (2.0, 0.2, 0.5, 3.0, 0.6, -1.0),
        (1.0, 1.0, 1.0, 1.0, 2.0, 1.0),
        (0.3, 2.5, 4.0, 0.8, 1.7, -1.0),
    ];
    for &d in &[2.0, 3.0] {
        let nodes = twocenter::elements::attraction_nodes();
        let mut worst_t: f64 = 0.0;
        let mut worst_i: f64 = 0.0;
        for &(ai, bi, aj, bj, r, s) in &draws {
            let a = ai + aj;
            let b = bi + bj;
            let sc = twocenter::elements::overlap(a, b, bi * bj / b, r, s, d);
            let tc = twocenter::elements::kinetic(ai, bi, aj, bj, r, s, d);
            let ic = twocenter::elements::attraction(ai, bi, aj, bj, r, s, d, &nodes);
            let so = oracle::overlap_direct(ai, bi, aj, bj, r, s, d);
            let to = oracle::kinetic_direct(ai, bi, aj, bj, r, s, d);
            let io = oracle::attraction_direct(ai, bi, aj, bj, r, s, d);
            worst_t = worst_t.max((tc / sc - to / so).abs() / (to / so).abs());
            worst_i = worst_i.max((ic / sc - io / so).abs() / (io / so).abs());
        }
        rep.push(&format!("element oracle T/S, d = {d}"), worst_t, 0.0, 1e-8);
        rep.push(&format!("element oracle I/S, d = {d}"), worst_i, 0.0, 1e-8);
    }

    // multipole closed forms vs quadrature
    let mut worst: f64 = 0.0;
    for &d in &[1.5, 2.0, 2.5, 3.0, 4.0] {
        let dim = DimensionParams::new(d).unwrap();
        for state in [
            HydrogenState::Ground,
            HydrogenState::RadialExcited,
            HydrogenState::PState,
        ] {
            for k in [2usize, 4] {
                let closed = if k == 2 {
                    quadrupole(state, &dim)
                } else {
                    octupole(state, &dim)
                };
                let mut o = moment_by_quadrature(state, &dim, k).unwrap();
                if k == 2 {
                    o *= 2.0;
                }
                let err = if closed == 0.0 {
                    o.abs()
                } else {
                    (o - closed).abs() / closed.abs()
                };
                worst = worst.max(err);
            }
        }
    }
    rep.push("multipole closed forms vs quadrature", worst, 0.0, 1e-7);

    // published approximants satisfy their own constraints and are pole-free
    rep.push_flag(
        "reference approximants valid",
        reference_symmetric().validate().is_ok() && reference_antisymmetric().validate().is_ok(),
    );

    // radial solver on the exactly solvable half-line well
    let v0 = 1.0;
    let mu_c = 0.25 * std::f64::consts::PI.powi(2) / v0; // first threshold
    let count = |mu: f64| {
        VibrationalProblem::new(
            mu - 0.5,
            1.0,
            Symmetry::Symmetric,
            false,
            TermEval::Custom(Box::new(move |r| if r < 1.0 { -v0 } else { 0.0 })),
        )
        .unwrap()
        .count_bound_states()
        .unwrap()
    };
    rep.push_flag(
        "well threshold bracketing",
        count(mu_c * 0.98) == 0 && count(mu_c * 1.02) == 1,
    );

    // asymptotic series identity between raw and shifted forms
    let d2 = DimensionParams::new(2.0).unwrap();
    let u = twocenter::asym::large_r_term(&d2, 9.0, 6).unwrap().value;
    let vshift = twocenter::asym::large_r_shifted(&d2, 9.0, 6).unwrap().value;
    rep.push(
        "series shift identity",
        vshift,
        u + 2.0 + 1.0 / 9.0,
        1e-14,
    );
}

fn full_checks(rep: &mut Report) {
    // d = 2 symmetric minimum with the production basis
    let cfg = TermConfig::new(2.0, Symmetry::Symmetric).unwrap();
    match minimize(
        |r| Ok(twocenter::term::compute_term(&cfg, r)?.v),
        0.40,
        0.65,
        2e-4,
    ) {
        Ok((rmin, vmin)) => {
            rep.push("Rmin (d=2, symmetric)", rmin, 0.51357, 1e-3);
            rep.push("Vmin (d=2, symmetric)", vmin, -0.820, 2e-3);
        }
        Err(e) => {
            eprintln!("warning: symmetric minimum failed: {e}");
            rep.push_flag("Rmin (d=2, symmetric)", false);
        }
    }

    // fit quality against the reference model sampled as a curve
    let curve = approx_curve(&reference_symmetric(), 0.1, 6.5, 0.05).unwrap();
    match twocenter::fit::fit(&curve, Symmetry::Symmetric, &FitConfig::default()) {
        Ok((_, frep)) => rep.push("self-fit chi2", frep.chi2, 0.0, 5e-6),
        Err(e) => {
            eprintln!("warning: fit failed: {e}");
            rep.push_flag("self-fit chi2", false);
        }
    }

    // critical charges from the published approximants
    match vib::z_critical_large_m(&TermEval::Approx(reference_symmetric())) {
        Ok((z, r)) => {
            rep.push("Z_crit symmetric", z, 0.64686, 1e-3);
            rep.push("R_crit symmetric", r, 0.89, 0.02);
        }
        Err(e) => {
            eprintln!("warning: Z_crit(s) failed: {e}");
            rep.push_flag("Z_crit symmetric", false);
        }
    }
    match vib::z_critical_large_m(&TermEval::Approx(reference_antisymmetric())) {
        Ok((z, r)) => {
            rep.push("Z_crit antisymmetric", z, 0.9976, 2e-3);
            rep.push("R_crit antisymmetric", r, 5.7, 0.2);
        }
        Err(e) => {
            eprintln!("warning: Z_crit(a) failed: {e}");
            rep.push_flag("Z_crit antisymmetric", false);
        }
    }

    // quasiclassical integral
    match vib::quasiclassical_j(&TermEval::Approx(reference_symmetric())) {
        Ok(j) => {
            rep.push("quasiclassical J", j, 1.84785, 1e-3);
            rep.push("(pi/J)^2", (std::f64::consts::PI / j).powi(2), 2.89, 1e-2);
        }
        Err(e) => {
            eprintln!("warning: J failed: {e}");
            rep.push_flag("quasiclassical J", false);
        }
    }

    // level counts at the physical hydrogen mass ratio via the square laws
    let m = 1836.152701;
    rep.push(
        "symmetric level count (square law)",
        vib::level_count_approx(m, Symmetry::Symmetric) as f64,
        27.0,
        0.0,
    );
    rep.push(
        "antisymmetric level count (square law)",
        vib::level_count_approx(m, Symmetry::Antisymmetric) as f64,
        4.0,
        0.0,
    );

    // a fast subset of the critical-mass table
    let mc = vib::critical_mass(1, Symmetry::Symmetric, 1.0, true, || {
        TermEval::Approx(reference_symmetric())
    });
    match mc {
        Ok(m1) => rep.push("critical mass s1", m1, 6.01, 0.03 * 6.01),
        Err(e) => {
            eprintln!("warning: critical mass s1 failed: {e}");
            rep.push_flag("critical mass s1", false);
        }
    }
}

pub fn cmd_validate(quick: bool, json_target: &str) -> Result<i32, Error> {
    let mut rep = Report { checks: Vec::new() };
    quick_checks(&mut rep);
    if !quick {
        full_checks(&mut rep);
    }
    let all_pass = rep.checks.iter().all(|c| c.pass);
    for c in &rep.checks {
        eprintln!(
            "{} {:<42} measured {:>14.6e}  expected {:>14.6e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.expected
        );
    }
    let body = serde_json::to_string_pretty(&serde_json::json!({
        "quick": quick,
        "all_pass": all_pass,
        "checks": rep.checks,
    }))?;
    if json_target == "-" {
        println!("{body}");
    } else {
        fs::write(json_target, body)?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_COMPUTE })
}
