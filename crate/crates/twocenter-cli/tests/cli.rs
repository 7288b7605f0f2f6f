//! End-to-end checks of the `twocenter` binary: exit codes, CSV/JSON
//! artifact shape, and byte-level determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use twocenter::model::{TermCurve, TermPoint, TermSource};
use twocenter::{DimensionParams, Symmetry};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twocenter"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn twocenter")
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["term", "scan", "--help"]).status.code(), Some(0));
}

#[test]
fn unknown_flag_is_config_error() {
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn missing_input_file_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&[
        "fit",
        "--input",
        "/no/such/file.csv",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn inverted_scan_grid_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = run(&[
        "term", "scan", "--rmin", "2.0", "--rmax", "1.0", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn scan_writes_metadata_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.csv");
    let o = run(&[
        "term", "scan", "--symmetry", "s", "--rmin", "0.8", "--rmax", "1.2",
        "--step", "0.2", "--basis", "4,6", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# command: term scan\n"));
    assert!(text.contains("# symmetry: s"));
    assert!(text.contains("\nR,U,V\n"));
    let rows: Vec<&str> =
        text.lines().skip_while(|l| l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let cols: Vec<f64> =
            row.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 3);
        // 12 significant digits in scientific notation
        assert_eq!(row.split(',').next().unwrap().split('e').next().unwrap().len(), 13);
        assert!(cols[1] < 0.0 && cols[2] < 0.0, "unbound term in {row}");
    }
}

fn write_reference_curve(path: &Path) {
    let approx = twocenter::fit::reference_symmetric();
    let dim = DimensionParams::new(2.0).unwrap();
    let points: Vec<TermPoint> = (0..129)
        .map(|i| {
            let r = 0.1 + 0.05 * i as f64;
            let v = approx.evaluate(r).unwrap();
            TermPoint { r, u: dim.unshift_term(v, r).unwrap(), v }
        })
        .collect();
    let curve =
        TermCurve::new(Symmetry::Symmetric, dim, TermSource::Approximant, points)
            .unwrap();
    let mut file = fs::File::create(path).unwrap();
    twocenter::io::write_term_csv(&mut file, &curve, &[("command", "test".into())])
        .unwrap();
}

#[test]
fn fit_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("curve.csv");
    write_reference_curve(&input);
    let mut outputs = Vec::new();
    for name in ["a.json", "b.json"] {
        let out = dir.path().join(name);
        let o = run(&[
            "fit", "--input", input.to_str().unwrap(), "--seed", "0",
            "--output", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "fit output not byte-identical across runs");
    let approx = twocenter::fit::RationalApprox::from_json(
        std::str::from_utf8(&outputs[0]).unwrap(),
    )
    .unwrap();
    assert_eq!(approx.variant, Symmetry::Symmetric);
    approx.validate().unwrap();
    // fitting a curve sampled from an approximant must recover it closely
    let reference = twocenter::fit::reference_symmetric();
    for i in 0..13 {
        let r = 0.5 + 0.5 * i as f64;
        let (got, want) = (approx.evaluate(r).unwrap(), reference.evaluate(r).unwrap());
        assert!(
            (got - want).abs() <= 1e-6 * want.abs().max(1e-4),
            "refit deviates at R = {r}: {got} vs {want}"
        );
    }
}

#[test]
fn critical_mass_of_ground_state_is_zero() {
    let o = run(&["critical-mass", "--n", "0", "--symmetry", "s"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains('0'), "unexpected output: {text}");
}
