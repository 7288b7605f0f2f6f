//! Structural property suites: invariants that hold for any correct
//! implementation, independent of any published reference value.

use proptest::prelude::*;
use twocenter::basis::{geometric, BasisSet};
use twocenter::elements::{self, AttractionGrid};
use twocenter::term::solve_lowest;
use twocenter::vib::{TermEval, VibrationalProblem};
use twocenter::{DimensionParams, Symmetry};

fn small_exponent() -> impl Strategy<Value = f64> {
    (-1.2f64..2.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Matrix elements are symmetric under exchange of the pair indices.
    #[test]
    fn elements_are_index_symmetric(
        ai in small_exponent(), bi in small_exponent(),
        aj in small_exponent(), bj in small_exponent(),
        r in 0.0f64..4.0, s in prop_oneof![Just(1.0f64), Just(-1.0f64)],
        d in 1.5f64..4.0,
    ) {
        let grid = AttractionGrid::new(d);
        let t1 = elements::kinetic(ai, bi, aj, bj, r, s, d);
        let t2 = elements::kinetic(aj, bj, ai, bi, r, s, d);
        prop_assert!((t1 - t2).abs() <= 1e-12 * t1.abs().max(1.0));
        let i1 = grid.attraction(ai, bi, aj, bj, r, s);
        let i2 = grid.attraction(aj, bj, ai, bi, r, s);
        prop_assert!((i1 - i2).abs() <= 1e-12 * i1.abs().max(1.0));
    }

    /// Threshold shift and its inverse are a round trip.
    #[test]
    fn term_shift_round_trip(d in 1.2f64..5.0, u in -10.0f64..0.0, r in 0.01f64..20.0) {
        let dim = DimensionParams::new(d).unwrap();
        let v = dim.shift_term(u, r).unwrap();
        prop_assert!((dim.unshift_term(v, r).unwrap() - u).abs() < 1e-10);
    }

    /// Bound-state count never decreases with mass at fixed charge.
    #[test]
    fn count_monotone_in_mass(m in 1.0f64..200.0) {
        let term = || TermEval::Approx(twocenter::fit::reference_symmetric());
        let count = |m: f64| {
            VibrationalProblem::new(m, 1.0, Symmetry::Symmetric, true, term())
                .unwrap()
                .count_bound_states()
                .unwrap()
        };
        prop_assert!(count(m) <= count(1.5 * m));
    }
}

/// Enlarging the basis never raises the variational ground energy.
#[test]
fn variational_energy_monotone_in_basis_size() {
    let d = 2.0;
    let r = 1.0;
    let mut prev = f64::INFINITY;
    for n in [2usize, 4, 8, 12] {
        // nested grids: each refinement keeps the previous span
        let basis = BasisSet::tensor(&geometric(0.25, 60.0, n), &geometric(0.25, 60.0, n));
        let e = solve_lowest(&basis, r, Symmetry::Symmetric, d, 1e-12).unwrap().e0;
        assert!(
            e <= prev + 1e-10,
            "energy rose when growing the basis: {prev} -> {e} at n = {n}"
        );
        prev = e;
    }
}

/// The symmetric term lies below the antisymmetric term pointwise: the
/// node-free combination always binds at least as well.
#[test]
fn symmetric_term_below_antisymmetric() {
    let d = 2.0;
    let basis = BasisSet::tensor(&geometric(0.2, 100.0, 7), &geometric(0.2, 100.0, 9));
    for r in [0.4, 1.0, 2.0, 4.0] {
        let es = solve_lowest(&basis, r, Symmetry::Symmetric, d, 1e-12).unwrap().e0;
        let ea = solve_lowest(&basis, r, Symmetry::Antisymmetric, d, 1e-12).unwrap().e0;
        assert!(es <= ea + 1e-12, "E_s = {es} above E_a = {ea} at R = {r}");
    }
}

/// Bound-state count never decreases with the heavy-center charge.
#[test]
fn count_monotone_in_charge() {
    let term = || TermEval::Approx(twocenter::fit::reference_symmetric());
    let count = |z: f64| {
        VibrationalProblem::new(50.0, z, Symmetry::Symmetric, true, term())
            .unwrap()
            .count_bound_states()
            .unwrap()
    };
    let mut prev = 0;
    for z in [0.55, 0.7, 0.85, 1.0] {
        let c = count(z);
        assert!(c >= prev, "count dropped from {prev} to {c} at Z = {z}");
        prev = c;
    }
}

/// Radial solver against an exactly solvable smooth well: the Morse
/// potential, whose spectrum is known in closed form. With the log-grid
/// Numerov step used here the eigenvalues must match to 1e-8.
#[test]
fn radial_solver_matches_morse_spectrum() {
    let depth = 5.0;
    let alpha = 1.0;
    let r0 = 6.0;
    let m = 19.5; // internal reduced mass is m + 1/2 = 20
    let mu = 20.0;
    let term = TermEval::Custom(Box::new(move |r: f64| {
        depth * ((-2.0 * alpha * (r - r0)).exp() - 2.0 * (-alpha * (r - r0)).exp())
    }));
    let prob = VibrationalProblem::new(m, 1.0, Symmetry::Symmetric, false, term).unwrap();
    // plain radial problem: the centripetal-free reduction
    let spec = prob.solve_spectrum(-1.2 * depth).unwrap();
    let lam = (mu * depth).sqrt() / alpha; // = 10
    let n_exact = (lam - 0.5).ceil() as usize; // 10 bound levels
    assert_eq!(spec.levels.len(), n_exact, "levels: {:?}", spec.levels);
    for (n, &e) in spec.levels.iter().enumerate() {
        let x = 1.0 - (n as f64 + 0.5) / lam;
        let exact = -depth * x * x;
        assert!(
            (e - exact).abs() <= 1e-8 * exact.abs().max(1e-2),
            "level {n}: {e} vs {exact}"
        );
    }
}
