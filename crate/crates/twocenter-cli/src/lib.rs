//! `twocenter` command-line pipeline.
//!
//! Exit codes: 0 success, 1 configuration error, 2 partial failure (some
//! requested items failed, partial output retained), 3 computation failure.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::PathBuf;
use twocenter::fit::{FitConfig, RationalApprox};
use twocenter::model::{TermCurve, TermPoint, TermSource};
use twocenter::term::TermConfig;
use twocenter::vib::{TermEval, VibrationalProblem};
use twocenter::{DimensionParams, Error, Symmetry};

mod validate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "twocenter",
    version,
    about = "Two-center Coulomb terms in d dimensions: scans, fits, spectra, stability diagrams"
)]
struct Cli {
    /// JSON config file with defaults (flags override file values).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Electronic term operations.
    Term {
        #[command(subcommand)]
        sub: TermCommand,
    },
    /// Fit a constrained rational approximant to a scanned curve.
    Fit(FitArgs),
    /// Stability diagrams in the (m, Z) plane.
    Diagram(DiagramArgs),
    /// Run the validation suite.
    Validate(ValidateArgs),
    /// Multipole moment tables.
    Multipole(MultipoleArgs),
    /// Asymptotic series evaluation.
    Asymptotics(AsymArgs),
    /// Vibrational spectrum at fixed mass and charge.
    Spectrum(SpectrumArgs),
    /// Critical mass of a vibrational level.
    CriticalMass(CritMassArgs),
}

#[derive(Subcommand)]
enum TermCommand {
    /// Scan the variational term over a bond-length grid.
    Scan(ScanArgs),
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 2.0)]
    dim: f64,
    #[arg(long, default_value = "s")]
    symmetry: String,
    #[arg(long, default_value_t = 0.1)]
    rmin: f64,
    #[arg(long, default_value_t = 6.5)]
    rmax: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    /// Output CSV path.
    #[arg(short, long)]
    output: PathBuf,
    /// Per-axis basis sizes as NA,NB (default production grid 18,34).
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Args)]
struct FitArgs {
    /// Input TermCurve CSV (from `term scan`).
    #[arg(short, long)]
    input: PathBuf,
    /// Fit window as LO:HI.
    #[arg(long, default_value = "0.1:6.5")]
    window: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Output approximant JSON path.
    #[arg(short, long)]
    output: PathBuf,
    /// Fit report JSON path (default: OUTPUT with .report.json).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DiagramArgs {
    /// States to compute, e.g. s0,s1,a0.
    #[arg(long, default_value = "s0")]
    states: String,
    /// Mass grid as LO:HI:COUNT (log-spaced).
    #[arg(long, default_value = "1:10000:13")]
    m_grid: String,
    /// Symmetric approximant JSON (defaults to built-in reference fit).
    #[arg(long)]
    sym_approx: Option<PathBuf>,
    /// Antisymmetric approximant JSON (defaults to built-in reference fit).
    #[arg(long)]
    anti_approx: Option<PathBuf>,
    /// Output directory.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    /// Oracle subsets only (seconds instead of minutes).
    #[arg(long)]
    quick: bool,
    /// Report path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    json: String,
}

#[derive(Args)]
struct MultipoleArgs {
    /// ground | excited | p
    #[arg(long, default_value = "ground")]
    state: String,
    /// Moment order (2 or 4).
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Comma-separated dimensions.
    #[arg(long, default_value = "2,3,4")]
    dims: String,
    /// Optional output CSV (stdout table otherwise).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AsymArgs {
    #[arg(long, default_value_t = 2.0)]
    dim: f64,
    /// Comma-separated distances.
    #[arg(long, default_value = "8,10,12")]
    r: String,
    /// Highest inverse power of R included (3..=6).
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    m: f64,
    #[arg(long, default_value_t = 1.0)]
    z: f64,
    #[arg(long, default_value = "s")]
    symmetry: String,
    /// Approximant JSON (defaults to built-in reference coefficients).
    #[arg(long)]
    approx: Option<PathBuf>,
    /// Drop the anomalous centripetal attraction.
    #[arg(long)]
    no_centripetal: bool,
    /// Energy floor for reported eigenvalues.
    #[arg(long, default_value_t = -10.0)]
    floor: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CritMassArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "s")]
    symmetry: String,
    #[arg(long, default_value_t = 1.0)]
    z: f64,
    #[arg(long)]
    approx: Option<PathBuf>,
    #[arg(long)]
    no_centripetal: bool,
}

/// File-level defaults; any present field is used where the corresponding
/// flag was left at its default.
#[derive(Debug, Default, Deserialize, Serialize)]
struct FileConfig {
    seed: Option<u64>,
    threads: Option<usize>,
}

fn load_file_config(path: &Option<PathBuf>) -> Result<FileConfig, Error> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::Domain(_) | Error::Io(_) | Error::Serde(_) => {
            EXIT_CONFIG
        }
        Error::Numeric(_)
        | Error::SingularBasis(_)
        | Error::Bracket(_)
        | Error::FitFailure { .. }
        | Error::Pole(_) => EXIT_COMPUTE,
    }
}

/// Short stable hash of the effective configuration, recorded in CSV
/// metadata for reproducibility.
fn config_hash(desc: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in desc.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are successes, anything else is config
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let fcfg = match load_file_config(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let result = match cli.command {
        Command::Term { sub: TermCommand::Scan(a) } => cmd_scan(&a),
        Command::Fit(a) => cmd_fit(&a, &fcfg),
        Command::Diagram(a) => cmd_diagram(&a),
        Command::Validate(a) => validate::cmd_validate(a.quick, &a.json),
        Command::Multipole(a) => cmd_multipole(&a),
        Command::Asymptotics(a) => cmd_asymptotics(&a),
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::CriticalMass(a) => cmd_critical_mass(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn parse_symmetry(s: &str) -> Result<Symmetry, Error> {
    Symmetry::parse(s)
}

fn parse_pair(s: &str, sep: char) -> Result<(f64, f64), Error> {
    let (a, b) = s
        .split_once(sep)
        .ok_or_else(|| Error::Config(format!("expected LO{sep}HI, got '{s}'")))?;
    let lo = a.trim().parse().map_err(|e| Error::Config(format!("bad number '{a}': {e}")))?;
    let hi = b.trim().parse().map_err(|e| Error::Config(format!("bad number '{b}': {e}")))?;
    Ok((lo, hi))
}

fn parse_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("bad number '{t}': {e}")))
        })
        .collect()
}

fn load_approx(
    path: &Option<PathBuf>,
    variant: Symmetry,
) -> Result<RationalApprox, Error> {
    let approx = match path {
        Some(p) => RationalApprox::from_json(&fs::read_to_string(p)?)?,
        None => match variant {
            Symmetry::Symmetric => twocenter::fit::reference_symmetric(),
            Symmetry::Antisymmetric => twocenter::fit::reference_antisymmetric(),
        },
    };
    if approx.variant != variant {
        return Err(Error::Config(format!(
            "approximant variant {:?} does not match requested {:?}",
            approx.variant, variant
        )));
    }
    approx.validate()?;
    Ok(approx)
}

fn write_or_stdout(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => {
            fs::write(p, content)?;
        }
        None => {
            print!("{content}");
        }
    }
    Ok(())
}

fn cmd_scan(a: &ScanArgs) -> Result<i32, Error> {
    let sym = parse_symmetry(&a.symmetry)?;
    let dim = DimensionParams::new(a.dim)?;
    if !(a.step > 0.0 && a.rmax > a.rmin && a.rmin > 0.0) {
        return Err(Error::Config(format!(
            "bad grid: rmin={}, rmax={}, step={}",
            a.rmin, a.rmax, a.step
        )));
    }
    let mut cfg = TermConfig::new(a.dim, sym)?;
    if let Some(b) = &a.basis {
        let (na, nb) = parse_pair(b, ',')?;
        cfg.basis.n_a = na as usize;
        cfg.basis.n_b = nb as usize;
        cfg.basis.validate()?;
    }
    let n = ((a.rmax - a.rmin) / a.step + 1.5) as usize;
    let rs: Vec<f64> = (0..n).map(|i| a.rmin + a.step * i as f64).collect();
    let results = twocenter::par::map_slice(&rs, |&r| twocenter::term::compute_term(&cfg, r));
    let mut points = Vec::new();
    let mut failures = 0usize;
    for res in results {
        match res {
            Ok(p) => points.push(p),
            Err(e) => {
                eprintln!("warning: point failed: {e}");
                failures += 1;
            }
        }
    }
    if points.is_empty() {
        return Err(Error::Numeric("every scan point failed".into()));
    }
    let curve = TermCurve::new(sym, dim, TermSource::Variational, points)?;
    let desc = format!(
        "scan dim={} symmetry={} rmin={} rmax={} step={} basis={:?}",
        a.dim, a.symmetry, a.rmin, a.rmax, a.step, a.basis
    );
    let mut file = fs::File::create(&a.output)?;
    twocenter::io::write_term_csv(
        &mut file,
        &curve,
        &[
            ("command", "term scan".to_string()),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
            ("config", config_hash(&desc)),
        ],
    )?;
    Ok(if failures > 0 { EXIT_PARTIAL } else { EXIT_OK })
}

fn cmd_fit(a: &FitArgs, fcfg: &FileConfig) -> Result<i32, Error> {
    let text = fs::read_to_string(&a.input)?;
    let curve = twocenter::io::read_term_csv(std::io::BufReader::new(text.as_bytes()))?;
    let window = parse_pair(&a.window, ':')?;
    let mut cfg = FitConfig::default();
    cfg.window = window;
    cfg.seed = a.seed.or(fcfg.seed).unwrap_or(0);
    let (approx, report) = twocenter::fit::fit(&curve, curve.symmetry, &cfg)?;
    fs::write(&a.output, approx.to_json()?)?;
    let report_path = a
        .report
        .clone()
        .unwrap_or_else(|| a.output.with_extension("report.json"));
    fs::write(&report_path, serde_json::to_string_pretty(&report)?)?;
    println!("chi2 = {:.6e} over {} points", report.chi2, report.n_points);
    Ok(EXIT_OK)
}

fn cmd_diagram(a: &DiagramArgs) -> Result<i32, Error> {
    let sym_approx = load_approx(&a.sym_approx, Symmetry::Symmetric)?;
    let anti_approx = load_approx(&a.anti_approx, Symmetry::Antisymmetric)?;
    let parts: Vec<&str> = a.m_grid.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("m-grid must be LO:HI:COUNT, got '{}'", a.m_grid)));
    }
    let lo: f64 = parts[0].parse().map_err(|_| Error::Config("bad m-grid LO".into()))?;
    let hi: f64 = parts[1].parse().map_err(|_| Error::Config("bad m-grid HI".into()))?;
    let count: usize = parts[2].parse().map_err(|_| Error::Config("bad m-grid COUNT".into()))?;
    if !(lo > 0.0 && hi >= lo && count >= 1) {
        return Err(Error::Config("m-grid must satisfy 0 < LO <= HI, COUNT >= 1".into()));
    }
    fs::create_dir_all(&a.output)?;
    let mut failures = 0usize;
    let mut asym = serde_json::Map::new();
    let (zs, _) = twocenter::vib::z_critical_large_m(&TermEval::Approx(sym_approx.clone()))?;
    let (za, _) = twocenter::vib::z_critical_large_m(&TermEval::Approx(anti_approx.clone()))?;
    asym.insert("Z_s".into(), serde_json::json!(zs));
    asym.insert("Z_a".into(), serde_json::json!(za));
    let mut vertical = serde_json::Map::new();
    for state in a.states.split(',') {
        let state = state.trim();
        let (sym, n) = match state.split_at(1) {
            ("s", rest) => (Symmetry::Symmetric, rest),
            ("a", rest) => (Symmetry::Antisymmetric, rest),
            _ => return Err(Error::Config(format!("state must look like s0 or a2: '{state}'"))),
        };
        let n: usize =
            n.parse().map_err(|_| Error::Config(format!("bad state index '{state}'")))?;
        let approx = match sym {
            Symmetry::Symmetric => sym_approx.clone(),
            Symmetry::Antisymmetric => anti_approx.clone(),
        };
        let m_grid: Vec<f64> = if count == 1 {
            vec![lo]
        } else {
            (0..count)
                .map(|i| lo * (hi / lo).powf(i as f64 / (count as f64 - 1.0)))
                .collect()
        };
        let mcrit = twocenter::vib::critical_mass(n, sym, 1.0, true, || {
            TermEval::Approx(approx.clone())
        });
        match &mcrit {
            Ok(m) => {
                vertical.insert(state.to_string(), serde_json::json!(m));
            }
            Err(e) => {
                eprintln!("warning: critical mass for {state} failed: {e}");
                failures += 1;
            }
        }
        let usable: Vec<f64> = match &mcrit {
            Ok(mc) => m_grid.iter().cloned().filter(|m| *m > *mc).collect(),
            Err(_) => m_grid.clone(),
        };
        let curve = twocenter::vib::stability_curve(n, sym, true, &usable, || {
            TermEval::Approx(approx.clone())
        });
        if curve.samples.len() < usable.len() {
            failures += usable.len() - curve.samples.len();
        }
        let rows: Vec<Vec<f64>> =
            curve.samples.iter().map(|&(m, z)| vec![m, z]).collect();
        let mut file = fs::File::create(a.output.join(format!("{state}.csv")))?;
        twocenter::io::write_table(
            &mut file,
            &[
                ("command", "diagram".to_string()),
                ("version", env!("CARGO_PKG_VERSION").to_string()),
                ("state", state.to_string()),
                ("config", config_hash(&format!("{state} {}", a.m_grid))),
            ],
            &["m", "Z_threshold"],
            &rows,
        )?;
    }
    asym.insert("m_crit".into(), serde_json::Value::Object(vertical));
    fs::write(
        a.output.join("asymptotes.json"),
        serde_json::to_string_pretty(&serde_json::Value::Object(asym))?,
    )?;
    Ok(if failures > 0 { EXIT_PARTIAL } else { EXIT_OK })
}

fn cmd_multipole(a: &MultipoleArgs) -> Result<i32, Error> {
    use twocenter::multipole::{moment_by_quadrature, octupole, quadrupole, HydrogenState};
    let state = match a.state.to_ascii_lowercase().as_str() {
        "ground" => HydrogenState::Ground,
        "excited" => HydrogenState::RadialExcited,
        "p" => HydrogenState::PState,
        other => return Err(Error::Config(format!("unknown state '{other}'"))),
    };
    if a.k != 2 && a.k != 4 {
        return Err(Error::Config(format!("moment order must be 2 or 4, got {}", a.k)));
    }
    let dims = parse_list(&a.dims)?;
    let mut rows = Vec::new();
    for &d in &dims {
        let dim = DimensionParams::new(d)?;
        let closed = if a.k == 2 { quadrupole(state, &dim) } else { octupole(state, &dim) };
        let oracle = moment_by_quadrature(state, &dim, a.k)?;
        let oracle = if a.k == 2 { 2.0 * oracle } else { oracle };
        rows.push(vec![d, closed, oracle]);
    }
    let mut buf = Vec::new();
    twocenter::io::write_table(
        &mut buf,
        &[
            ("command", "multipole".to_string()),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
            ("state", a.state.clone()),
            ("config", config_hash(&format!("{} {} {}", a.state, a.k, a.dims))),
        ],
        &["d", "closed_form", "quadrature"],
        &rows,
    )?;
    write_or_stdout(&a.output, &String::from_utf8_lossy(&buf))?;
    Ok(EXIT_OK)
}

fn cmd_asymptotics(a: &AsymArgs) -> Result<i32, Error> {
    let dim = DimensionParams::new(a.dim)?;
    let rs = parse_list(&a.r)?;
    let mut rows = Vec::new();
    for &r in &rs {
        let u = twocenter::asym::large_r_term(&dim, r, a.order)?;
        let de = twocenter::asym::splitting_large_r(&dim, r)?;
        rows.push(vec![r, u.value, u.estimated_error, de]);
    }
    let mut buf = Vec::new();
    twocenter::io::write_table(
        &mut buf,
        &[
            ("command", "asymptotics".to_string()),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
            ("config", config_hash(&format!("{} {} {}", a.dim, a.r, a.order))),
        ],
        &["R", "U_series", "estimated_error", "splitting"],
        &rows,
    )?;
    write_or_stdout(&a.output, &String::from_utf8_lossy(&buf))?;
    Ok(EXIT_OK)
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<i32, Error> {
    let sym = parse_symmetry(&a.symmetry)?;
    let approx = load_approx(&a.approx, sym)?;
    let problem = VibrationalProblem::new(
        a.m,
        a.z,
        sym,
        !a.no_centripetal,
        TermEval::Approx(approx),
    )?;
    let spec = problem.solve_spectrum(a.floor)?;
    let rows: Vec<Vec<f64>> = spec
        .levels
        .iter()
        .enumerate()
        .map(|(i, &e)| vec![i as f64, e])
        .collect();
    let mut buf = Vec::new();
    twocenter::io::write_table(
        &mut buf,
        &[
            ("command", "spectrum".to_string()),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
            ("m", format!("{}", a.m)),
            ("Z", format!("{}", a.z)),
            ("symmetry", a.symmetry.clone()),
            ("levels_total", format!("{}", spec.n_found)),
            ("config", config_hash(&format!("{} {} {}", a.m, a.z, a.symmetry))),
        ],
        &["n", "eps"],
        &rows,
    )?;
    write_or_stdout(&a.output, &String::from_utf8_lossy(&buf))?;
    eprintln!("{} levels total", spec.n_found);
    Ok(EXIT_OK)
}

fn cmd_critical_mass(a: &CritMassArgs) -> Result<i32, Error> {
    let sym = parse_symmetry(&a.symmetry)?;
    let approx = load_approx(&a.approx, sym)?;
    let m = twocenter::vib::critical_mass(a.n, sym, a.z, !a.no_centripetal, || {
        TermEval::Approx(approx.clone())
    })?;
    println!("{m:.6}");
    Ok(EXIT_OK)
}

/// Shared helper for validate: evaluate a curve from an approximant.
pub(crate) fn approx_curve(
    approx: &RationalApprox,
    rmin: f64,
    rmax: f64,
    step: f64,
) -> Result<TermCurve, Error> {
    let dim = DimensionParams::new(2.0)?;
    let mut pts = Vec::new();
    let mut r = rmin;
    while r <= rmax + 1e-9 {
        let v = approx.evaluate(r)?;
        pts.push(TermPoint { r, u: dim.unshift_term(v, r)?, v });
        r += step;
    }
    TermCurve::new(approx.variant, dim, TermSource::Approximant, pts)
}
