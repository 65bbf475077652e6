//! Command-line surface over the bounded-root-functional library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 unreadable or unparsable
//! input, 3 column cap exceeded, 4 precondition failure (the diagnostics
//! name the violated truncated generator where one exists).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use rootfunc::bezout::{product_functional, BezoutError};
use rootfunc::functional::Functional;
use rootfunc::ideal::{
    annihilates, root_functional_basis_with_cap, IdealError, DEFAULT_COLUMN_CAP,
};
use rootfunc::ring::{poly_parse, system_parse};
use rootfunc::suites::{
    run_all, run_lemma1, run_lemma2, run_thm1, run_thm1_uniqueness, run_thm2,
    run_thm2_membership, run_thm3, run_thm4, RunReport, SuiteOptions,
};
use rootfunc::{Rat, SystemProfile};

#[derive(Parser)]
#[command(
    name = "rootfunc",
    version,
    about = "Bounded root functionals of square polynomial systems"
)]
struct Cli {
    /// Print compact single-line JSON instead of pretty-printed JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a basis of the functionals annihilating the truncated ideal
    /// piece of a system at a given degree.
    Basis {
        /// System file: one polynomial per line, variables x1, x2, ...
        #[arg(long)]
        system: PathBuf,
        /// Truncation degree D >= 0.
        #[arg(long)]
        degree: i64,
    },
    /// Multiply two bounded root functionals; prints the product on the
    /// enlarged bound with a re-checked annihilation stamp.
    Extend {
        /// System file: one polynomial per line, variables x1, x2, ...
        #[arg(long)]
        system: PathBuf,
        /// First functional (JSON file).
        #[arg(long)]
        l1: PathBuf,
        /// Extension degree of the first functional.
        #[arg(long)]
        delta1: i64,
        /// Second functional (JSON file).
        #[arg(long)]
        l2: PathBuf,
        /// Extension degree of the second functional.
        #[arg(long)]
        delta2: i64,
    },
    /// Run a seeded verification suite; prints one report per sub-suite.
    Verify {
        /// One of: lemma1, lemma2, thm1, thm2, thm3, thm4, all.
        suite: String,
        /// Base seed; case `i` draws from an independent stream of this seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random cases per sub-suite.
        #[arg(long, default_value_t = 25)]
        cases: usize,
        /// Largest number of variables drawn.
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// Largest polynomial degree drawn.
        #[arg(long, default_value_t = 3)]
        degmax: i64,
    },
    /// Apply a functional from a JSON file to a polynomial.
    Eval {
        /// Functional (JSON file).
        #[arg(long)]
        functional: PathBuf,
        /// Polynomial in the text grammar, over the functional's variables.
        poly: String,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn read_system(path: &Path) -> Result<SystemProfile<Rat>, Failure> {
    let text = read_file(path)?;
    system_parse(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn read_functional(path: &Path) -> Result<Functional<Rat>, Failure> {
    let text = read_file(path)?;
    Functional::from_json_str(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn ideal_failure(e: IdealError) -> Failure {
    let code = match e {
        IdealError::ColumnCapExceeded { .. } => 3,
        _ => 4,
    };
    fail(code, e.to_string())
}

fn bezout_failure(e: BezoutError) -> Failure {
    fail(4, e.to_string())
}

fn render(value: &serde_json::Value, compact: bool) -> String {
    if compact {
        value.to_string()
    } else {
        serde_json::to_string_pretty(value).expect("JSON rendering")
    }
}

fn suite_reports(suite: &str, opts: &SuiteOptions) -> Option<Vec<RunReport>> {
    match suite {
        "lemma1" => Some(vec![run_lemma1(opts)]),
        "lemma2" => Some(vec![run_lemma2(opts)]),
        "thm1" => Some(vec![run_thm1(opts), run_thm1_uniqueness(opts)]),
        "thm2" => Some(vec![run_thm2(opts), run_thm2_membership(opts)]),
        "thm3" => Some(vec![run_thm3(opts)]),
        "thm4" => Some(vec![run_thm4(opts)]),
        "all" => Some(run_all(opts)),
        _ => None,
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    match &cli.cmd {
        Cmd::Basis { system, degree } => {
            let f = read_system(system)?;
            if *degree < 0 {
                return Err(fail(2, format!("degree {degree} is negative")));
            }
            let basis = root_functional_basis_with_cap(&f, *degree, DEFAULT_COLUMN_CAP)
                .map_err(ideal_failure)?;
            Ok((render(&basis.to_json_value(), cli.json), 0))
        }
        Cmd::Extend {
            system,
            l1,
            delta1,
            l2,
            delta2,
        } => {
            let f = read_system(system)?;
            let lf1 = read_functional(l1)?;
            let lf2 = read_functional(l2)?;
            for (path, l) in [(l1, &lf1), (l2, &lf2)] {
                if l.nvars() != f.nvars() {
                    return Err(fail(
                        2,
                        format!(
                            "{}: functional over {} variables, system over {}",
                            path.display(),
                            l.nvars(),
                            f.nvars()
                        ),
                    ));
                }
            }
            let prod =
                product_functional(&lf1, *delta1, &lf2, *delta2, &f).map_err(bezout_failure)?;
            let d_out = f.delta_f() + delta1 + delta2 + 1;
            let stamp = annihilates(&prod, &f, d_out).map_err(ideal_failure)?;
            let out = json!({
                "system": f.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "delta1": delta1,
                "delta2": delta2,
                "bound": d_out,
                "product": prod.to_json_value(),
                "verified_annihilates": stamp,
            });
            Ok((render(&out, cli.json), if stamp { 0 } else { 1 }))
        }
        Cmd::Verify {
            suite,
            seed,
            cases,
            nmax,
            degmax,
        } => {
            let opts = SuiteOptions {
                seed: *seed,
                cases: *cases,
                nmax: *nmax,
                degmax: *degmax,
                corrupt_derivatives: false,
            };
            let reports = suite_reports(suite, &opts).ok_or_else(|| {
                fail(
                    2,
                    format!(
                        "unknown suite '{suite}'; expected one of lemma1, lemma2, thm1, thm2, thm3, thm4, all"
                    ),
                )
            })?;
            let any_failed = reports.iter().any(|r| !r.ok());
            let value = serde_json::to_value(&reports).expect("report serialization");
            Ok((render(&value, cli.json), u8::from(any_failed)))
        }
        Cmd::Eval { functional, poly } => {
            let l = read_functional(functional)?;
            let p = poly_parse(poly, l.nvars()).map_err(|e| fail(2, e.to_string()))?;
            let value = l.apply(&p).map_err(|e| fail(4, e.to_string()))?;
            let out = json!({ "value": value.to_string() });
            Ok((render(&out, cli.json), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, code)) => {
            println!("{output}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
