//! `hopfkit`: batch verification of Hopf algebra fixtures and JSON inputs.

mod checks;
mod fixtures;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hopfkit_core::commutative::enumerate_twists;
use hopfkit_core::hopf::dual;
use hopfkit_core::hopf::{tensor_from_json, tensor_to_json, HopfJson, TensorJson};
use hopfkit_core::isocat::run_pipeline;
use hopfkit_core::twist::{apply_twist, check_twist};
use hopfkit_core::{Error, Field};
use serde::Serialize;
use serde_json::json;

use fixtures::Subject;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_)
            | Error::Json(_)
            | Error::NotPrime(_)
            | Error::BudgetExceeded { .. }
            | Error::Shape(_)
            | Error::FieldMismatch(..)
            | Error::Unsupported(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "hopfkit", version, about = "Exact checks for finite-dimensional Hopf algebras and Drinfeld twists")]
struct Cli {
    /// Field for generic targets such as `group:Z/3`; files must match it.
    #[arg(long, global = true, value_parser = parse_field_arg)]
    field: Option<Field>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Verdict-only output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the named fixtures.
    Catalog {
        /// Only fixtures in this section (`p-lie`, `commutative`, `controls`, `isocategorical`).
        #[arg(long)]
        section: Option<String>,
    },
    /// Run a fixture or an input file through its checks.
    Verify {
        /// Fixture name, or a Hopf, `{hopf, twist}` or pipeline JSON file.
        target: String,
        /// Comma-separated subset of checks.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, default_value = "65536", value_parser = parse_budget)]
        budget: u128,
    },
    /// Run the staged isocategorical pipeline; exits 10 + the failing stage.
    Isocat {
        /// Pipeline JSON file or fixture name.
        pipeline: String,
    },
    /// Enumerate all twists of a small Hopf algebra over F_p, as JSON lines.
    Enumerate {
        /// Fixture name, `group:<G>`, `fun:<G>`, `alpha`, or a Hopf JSON file.
        target: String,
        /// Largest number of candidates to try; accepts `2^k`.
        #[arg(long, default_value = "65536", value_parser = parse_budget)]
        budget: u128,
    },
    /// Print the dual Hopf algebra as JSON.
    Dual { target: String },
    /// Print H^J as JSON, for a twisted fixture or a Hopf file and a twist file.
    TwistApply {
        target: String,
        /// Twist JSON (`{arity, terms}`), when `target` is not a twisted fixture.
        twist: Option<PathBuf>,
    },
}

fn parse_field_arg(s: &str) -> Result<Field, String> {
    fixtures::parse_field(s).map_err(|e| e.message)
}

fn parse_budget(s: &str) -> Result<u128, String> {
    let bad = || format!("budget must be an integer or 2^k, got {s:?}");
    match s.split_once('^') {
        Some((b, e)) => {
            let b: u128 = b.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            b.checked_pow(e).ok_or_else(bad)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn emit<T: Serialize>(value: &T) {
    // A closed pipe (`| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn catalog(cli: &Cli, section: &Option<String>) -> Result<(), CliError> {
    let all = fixtures::all();
    let list: Vec<_> = all.iter().filter(|f| section.as_ref().is_none_or(|s| &f.section == s)).collect();
    if list.is_empty() {
        return Err(CliError::input(format!("no fixtures in section {:?}", section.as_deref().unwrap_or(""))));
    }
    if cli.json {
        emit(&list);
    } else if cli.quiet {
        for f in list {
            println!("{}", f.name);
        }
    } else {
        let width = list.iter().map(|f| f.name.len()).max().unwrap_or(0);
        for f in list {
            println!("{:width$}  {:<26} {}", f.name, f.family, f.summary);
        }
    }
    Ok(())
}

fn verify(cli: &Cli, target: &str, only: &[String], budget: u128) -> Result<(), CliError> {
    let (subject, expect) = fixtures::resolve(target)?;
    check_field(cli, &subject)?;
    let report = checks::verify(target, &subject, &expect, only, budget)?;
    let verdict = if report.passed { "PASS" } else { "FAIL" };
    if cli.json && cli.quiet {
        emit(&json!({ "target": report.target, "passed": report.passed }));
    } else if cli.json {
        emit(&report);
    } else {
        println!("{verdict} {target}");
        if !cli.quiet {
            for c in &report.checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                let mut line = format!("  {mark} {} = {}", c.name, c.value);
                if let (Some(e), Some(s)) = (&c.expected, &c.source) {
                    line += &format!(" (expected {e}, {s})");
                }
                if let Some(d) = &c.detail {
                    line += &format!(" [{d}]");
                }
                if let Some(w) = &c.witness {
                    line += &format!(" at {} [{}]", w.identity, w.labels.join(", "));
                }
                println!("{line}");
            }
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError { code: 1, message: String::new() })
    }
}

fn check_field(cli: &Cli, subject: &Subject) -> Result<(), CliError> {
    let have = match subject {
        Subject::Hopf(h) | Subject::Enumerate(h) | Subject::Twisted { parent: h, .. } => h.field(),
        Subject::Reduced(ex) => ex.lie.field(),
        Subject::Pipeline(p) => p.embedding()?.field(),
    };
    match cli.field {
        Some(f) if f != have => Err(CliError::input(format!("input is over {have}, not {f}"))),
        _ => Ok(()),
    }
}

fn isocat(cli: &Cli, target: &str) -> Result<(), CliError> {
    let input = match fixtures::resolve(target)?.0 {
        Subject::Pipeline(p) => p,
        _ => return Err(CliError::input(format!("{target:?} is not an isocat pipeline"))),
    };
    let out = run_pipeline(&input)?;
    if cli.quiet {
        match out.failed_stage {
            None => println!("PASS {target}"),
            Some(s) => println!("FAIL {target} at stage {s} ({})", hopfkit_core::isocat::STAGES[s]),
        }
    } else if cli.json {
        emit(&out);
    } else {
        for s in &out.stages {
            print!("{}", s.report);
        }
        if let Some(t) = &out.g_b_type {
            println!("G_b ≅ {t}");
        }
        if let Some(b) = out.shifted_isomorphic {
            println!("shifted G_b isomorphic: {b}");
        }
    }
    match out.failed_stage {
        None => Ok(()),
        Some(s) => Err(CliError { code: 10 + s as u8, message: String::new() }),
    }
}

fn enumerate(cli: &Cli, target: &str, budget: u128) -> Result<(), CliError> {
    let h = fixtures::resolve_hopf(target, cli.field)?;
    let e = enumerate_twists(&h, budget)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if !cli.quiet {
        for (i, j) in e.twists.iter().enumerate() {
            let line = json!({ "index": i, "orbit": e.orbit[i], "twist": tensor_to_json(&h, j) });
            writeln!(out, "{line}").map_err(|e| CliError::input(e.to_string()))?;
        }
    }
    let summary = json!({
        "summary": {
            "target": target,
            "candidates": e.candidates as u64,
            "twists": e.twists.len(),
            "orbits": e.orbit_count,
            "gauge_elements": e.gauge_count,
        }
    });
    writeln!(out, "{summary}").map_err(|e| CliError::input(e.to_string()))?;
    Ok(())
}

fn twist_apply(cli: &Cli, target: &str, twist: &Option<PathBuf>) -> Result<(), CliError> {
    let (h, j) = match twist {
        Some(path) => {
            let h = fixtures::resolve_hopf(target, cli.field)?;
            let t: TensorJson = serde_json::from_value(fixtures::read_json(path)?)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            let j = tensor_from_json(&h, &t)?;
            (h, j)
        }
        None => match fixtures::resolve(target)?.0 {
            Subject::Twisted { parent, twist } => (parent, twist),
            _ => return Err(CliError::input(format!("{target:?} has no twist; pass a twist file"))),
        },
    };
    let report = check_twist(&h, &j);
    if !report.passed() {
        eprint!("{report}");
        return Err(CliError::check("not a twist"));
    }
    emit(&HopfJson::from_hopf(&apply_twist(&h, &j)?));
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Catalog { section } => catalog(cli, section),
        Command::Verify { target, checks, budget } => verify(cli, target, checks, *budget),
        Command::Isocat { pipeline } => isocat(cli, pipeline),
        Command::Enumerate { target, budget } => enumerate(cli, target, *budget),
        Command::Dual { target } => {
            emit(&HopfJson::from_hopf(&dual(&fixtures::resolve_hopf(target, cli.field)?)));
            Ok(())
        }
        Command::TwistApply { target, twist } => twist_apply(cli, target, twist),
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("HOPFKIT_THREADS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input("HOPFKIT_THREADS must be a positive integer"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match init_threads().and_then(|()| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("hopfkit: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets_accept_powers() {
        assert_eq!(parse_budget("2^16"), Ok(65536));
        assert_eq!(parse_budget("1000"), Ok(1000));
        assert!(parse_budget("2^x").is_err());
        assert_eq!(parse_budget("2^32"), Ok(1 << 32));
    }

    #[test]
    fn fields_parse() {
        assert_eq!(parse_field_arg("Q"), Ok(Field::Q));
        assert_eq!(parse_field_arg("Fp:7"), Ok(Field::Fp(7)));
        assert!(parse_field_arg("Fp:8").is_err());
        assert!(parse_field_arg("F7").is_err());
    }

    #[test]
    fn every_fixture_builds() {
        let all = fixtures::all();
        assert!(all.len() >= 12);
        for f in &all {
            let subject = f.subject().unwrap_or_else(|e| panic!("{}: {}", f.name, e.message));
            let names = checks::available(&subject);
            for e in &f.expect {
                assert!(names.contains(&e.check.as_str()), "{}: {}", f.name, e.check);
                assert!(["example", "derived", "trivial"].contains(&e.source.as_str()));
            }
        }
    }
}
