//! `fts`: verification suites, Lie-dimension certificates, serialized map
//! checks and isotope demos.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! a usage, parse or I/O error.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fts_core::exact::{Field, Mode, PrimeField, RationalField, Rng};
use fts_core::format::{self, Shape};
use fts_core::fts::InvarianceCheck;
use fts_core::groups::{lie_dim, ConstraintMode, LieTarget};
use fts_core::isotopy::{orbit_element, orbit_element_from, witness, Factor, WitnessConfig};
use fts_core::report::Report;
use fts_core::suites::{check_map, lie_line, Suite, SuiteConfig};
use fts_core::{par, Error};

#[derive(Parser, Debug)]
#[command(name = "fts", version, about = "Exact checks for the octonion, Albert, Brown and Freudenthal triple system tower")]
struct Cli {
    /// Scalar field: `rational` or `prime:<p>` with p >= 5.
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<Mode>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Exhaustive basis constraints instead of random sampling.
    #[arg(long, global = true)]
    exhaustive: bool,

    /// Random 4-tuples per invariance check.
    #[arg(long, global = true, default_value_t = 4000)]
    tuples: usize,

    /// Report file (verify, lie-dim, check-map) or artifact directory (isotope-demo).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Run the data-parallel kernels on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity suites and print a report.
    Verify {
        /// Comma-separated subset of suites; all by default.
        #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
        suite: Vec<Suite>,
    },
    /// Certify a Lie-algebra dimension (prime mode only).
    LieDim {
        #[arg(value_parser = parse_target)]
        target: LieTarget,
    },
    /// Check a serialized 27x27 or 56x56 matrix.
    CheckMap { file: PathBuf },
    /// Build a principal isotope from an orbit element and verify it.
    IsotopeDemo {
        /// Comma-separated factors, or `none` for the identity composite.
        /// A random composite is drawn from the seed when omitted.
        #[arg(long, value_parser = parse_factors)]
        factors: Option<Factors>,
    },
}

#[derive(Clone, Debug)]
struct Factors(Vec<Factor>);

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_target(s: &str) -> Result<LieTarget, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("unknown suite `{s}` (one of {})", names.join(", "))
    })
}

fn parse_factors(s: &str) -> Result<Factors, String> {
    if s == "none" {
        return Ok(Factors(Vec::new()));
    }
    s.split(',').map(|t| t.trim().parse().map_err(|e: Error| e.to_string())).collect::<Result<_, _>>().map(Factors)
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Io(_) | Error::InvalidPrime(_) | Error::Dimension { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    say(text);
    match &cli.out {
        Some(p) => write_file(p, text),
        None => Ok(()),
    }
}

impl Cli {
    fn check(&self) -> InvarianceCheck {
        InvarianceCheck { random_tuples: self.tuples, exhaustive: self.exhaustive }
    }

    fn mode(&self) -> Mode {
        self.mode.unwrap_or(Mode::Rational)
    }
}

fn verify<F: Field>(cli: &Cli, field: F, selected: &[Suite]) -> Outcome {
    let cfg = SuiteConfig { seed: cli.seed, check: cli.check(), ..SuiteConfig::default() };
    let suites: &[Suite] = if selected.is_empty() { &Suite::ALL } else { selected };
    let mut rep = Report::new(format!("verify mode={} seed={}", field.mode(), cli.seed));
    for s in suites {
        rep.absorb(s.run(field, &cfg));
    }
    emit(cli, &rep.to_string())?;
    Ok(rep.passed())
}

fn lie(cli: &Cli, target: LieTarget) -> Outcome {
    let Mode::Prime(p) = cli.mode() else {
        return Err(usage("lie-dim needs --mode prime:<p>"));
    };
    let constraints = if cli.exhaustive { ConstraintMode::Exhaustive } else { ConstraintMode::Random };
    let cert = lie_dim(target, PrimeField::new(p)?, constraints, cli.seed)?;
    let mut rep = Report::new(format!("lie-dim {target} mode={} seed={}", cli.mode(), cli.seed));
    lie_line(&mut rep, &cert);
    let mut text = rep.to_string();
    text.push_str(&format!("dimension {}\nexpected {}\n", cert.dim, target.expected_dim()));
    emit(cli, &text)?;
    Ok(cert.matches_expected())
}

fn check_file<F: Field>(cli: &Cli, field: F, text: &str) -> Outcome {
    let m = format::parse_matrix(field, text)?;
    let mut rng = Rng::new(cli.seed);
    let (rep, rho) = check_map(&m, cli.check(), &mut rng);
    let mut out = rep.to_string();
    if let Some(r) = rho {
        out.push_str("# reconstructed rho\n");
        out.push_str(&format::matrix_to_string(&r));
    }
    emit(cli, &out)?;
    Ok(rep.passed())
}

fn check(cli: &Cli, file: &Path) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let (mode, _, shape) = format::inspect(&text)?;
    if shape != Shape::Matrix {
        return Err(usage(format!("{} does not hold a square matrix", file.display())));
    }
    if let Some(m) = cli.mode {
        if m != mode {
            return Err(usage(format!("--mode {m} does not match the file mode {mode}")));
        }
    }
    match mode {
        Mode::Rational => check_file(cli, RationalField, &text),
        Mode::Prime(p) => check_file(cli, PrimeField::new(p)?, &text),
    }
}

fn isotope_demo(cli: &Cli, factors: Option<&Factors>) -> Outcome {
    if cli.mode() != Mode::Rational {
        return Err(usage("isotope-demo runs in rational mode only"));
    }
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("fts-isotope-demo"));
    fs::create_dir_all(&dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    let f = RationalField;
    let mut rng = Rng::new(cli.seed);
    let orbit = match factors {
        Some(Factors(list)) => orbit_element_from(f, list, cli.check(), &mut rng)?,
        None => orbit_element(f, cli.check(), &mut rng)?,
    };
    let wcfg = WitnessConfig { check: cli.check(), ..WitnessConfig::default() };
    let w = witness(orbit, wcfg, &mut rng)?;

    let mut rep = Report::new(format!("isotope-demo seed={}", cli.seed));
    let names: Vec<String> = w.orbit.factors.iter().map(|x| x.to_string()).collect();
    let composite = if names.is_empty() { "identity".to_string() } else { names.join(" * ") };
    rep.push("orbit", "composite", true, composite);
    rep.push("orbit", "u moves the unit", true, w.orbit.moves_unit().to_string());
    rep.push("orbit", "relation to the base algebra", true, w.note.clone());
    rep.absorb(w.report.clone());
    let text = rep.to_string();

    write_file(&dir.join("phi.ftsv"), &format::matrix_to_string(&w.orbit.phi))?;
    write_file(&dir.join("u.ftsv"), &format::element_to_string(&w.orbit.u.coords()))?;
    write_file(&dir.join("u_hat.ftsv"), &format::element_to_string(&w.u_hat.coords()))?;
    write_file(&dir.join("isotope.ftsv"), &format::structure_to_string(&w.structure))?;
    write_file(&dir.join("report.txt"), &text)?;
    say(&text);
    say(&format!("# artifacts written to {}\n", dir.display()));
    Ok(rep.passed())
}

fn run(cli: &Cli) -> Outcome {
    if cli.sequential {
        par::set_enabled(false);
    }
    match &cli.command {
        Command::Verify { suite } => match cli.mode() {
            Mode::Rational => verify(cli, RationalField, suite),
            Mode::Prime(p) => verify(cli, PrimeField::new(p)?, suite),
        },
        Command::LieDim { target } => lie(cli, *target),
        Command::CheckMap { file } => check(cli, file),
        Command::IsotopeDemo { factors } => isotope_demo(cli, factors.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("fts: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("fts: {msg}");
            ExitCode::from(2)
        }
    }
}
