//! Command-line front end: emit the universal pair, transform concrete
//! rational functions, and run named verification suites.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or guard
//! violation, 3 domain error (bad modulus, zero denominator, ...),
//! 4 parse error. Output for a fixed invocation is byte-stable.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use landen_core::landen::{generic_gh, transform, Transformed};
use landen_core::ratfunc::RatFunc;
use landen_core::rings::{parse_rational, Field, PrimeField, RatField, Ring};
use landen_core::suites::{run_suite, SuiteOptions, SUITE_NAMES};
use landen_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "landen",
    version,
    about = "Coefficient-extraction transforms of rational functions, exactly",
    after_help = "Coefficient lists are descending: the first entry is the \
coefficient of the highest power."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Sampled,
    Symbolic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the universal numerator/denominator pair at (d, m, k).
    Generic {
        /// Formal degree of the rational function.
        #[arg(long)]
        d: usize,
        /// Sampling stride: keep every m-th Taylor coefficient.
        #[arg(long)]
        m: u32,
        /// Sampling offset, 0 <= k < m.
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Transform one rational function, given by coefficient lists.
    Transform {
        /// Numerator coefficients, descending, comma separated (e.g. 1,0,1).
        #[arg(long)]
        num: String,
        /// Denominator coefficients, descending, same length as --num.
        #[arg(long)]
        den: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Work over the prime field F_p instead of Q.
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        /// Also print the unreduced pair at formal degree d.
        #[arg(long)]
        raw: bool,
        /// Write a JSON record of the result to this file.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Run a named verification suite and exit 0 exactly when it passes.
    Verify {
        /// One of: composition, resultant, jacobian, frobenius, hm,
        /// gradings, zeta, embedding, subspaces, conjecture-probe.
        #[arg(long)]
        suite: String,
        /// Largest formal degree in the grid.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Largest stride in the grid.
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Samples per grid cell in sampled mode.
        #[arg(long, default_value_t = 25)]
        trials: u32,
        /// RNG seed; required by sampled suites.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Sampled)]
        mode: Mode,
        /// Prime for the characteristic-p suite (default: 2, 3, 5).
        #[arg(long)]
        p: Option<u64>,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 4,
        Error::GuardExceeded(_) | Error::InvalidArgument(_) => 2,
        Error::CharDividesM { .. }
        | Error::NotPrime(_)
        | Error::ZeroDenominator
        | Error::IndeterminatePoint
        | Error::AllZero => 3,
        _ => 1,
    }
}

fn parse_coeff_list(text: &str) -> Result<Vec<BigRational>> {
    text.split(',').map(parse_rational).collect()
}

fn join_coeffs<F: Field>(field: &F, coeffs: &[F::Elem]) -> String {
    coeffs
        .iter()
        .map(|c| field.elem_string(c))
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_transformed<F: Field>(field: &F, t: &Transformed<F>, raw: bool) {
    println!("num: {}", join_coeffs(field, &t.reduced.num));
    println!("den: {}", join_coeffs(field, &t.reduced.den));
    println!("degree preserved: {}", t.degree_preserved);
    if raw {
        println!("raw num: {}", join_coeffs(field, &t.raw.num));
        println!("raw den: {}", join_coeffs(field, &t.raw.den));
    }
}

fn write_json_record<F: Field>(
    path: &PathBuf,
    m: u32,
    k: u32,
    t: &Transformed<F>,
    raw: bool,
) -> Result<()> {
    let mut record = serde_json::json!({
        "m": m,
        "k": k,
        "reduced": t.reduced.to_json(),
        "degree_preserved": t.degree_preserved,
    });
    if raw {
        record["raw"] = t.raw.to_json();
    }
    let mut file = std::fs::File::create(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot create {}: {e}", path.display())))?;
    writeln!(file, "{record}")
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn run_generic(d: usize, m: u32, k: u32, format: Format) -> Result<i32> {
    let pair = generic_gh(d, m, k)?;
    match format {
        Format::Text => {
            println!("d = {d}, m = {m}, k = {k}");
            println!("G = {}", pair.g().to_text());
            println!("H = {}", pair.h().to_text());
        }
        Format::Json => println!("{}", pair.to_json()),
        Format::Latex => println!("{}", pair.to_latex()),
    }
    Ok(0)
}

fn run_transform(
    num: &str,
    den: &str,
    m: u32,
    k: u32,
    modulus: Option<u64>,
    raw: bool,
    json: Option<PathBuf>,
) -> Result<i32> {
    let num_q = parse_coeff_list(num)?;
    let den_q = parse_coeff_list(den)?;
    if num_q.len() != den_q.len() {
        return Err(Error::Parse(format!(
            "numerator has {} coefficients but denominator has {}",
            num_q.len(),
            den_q.len()
        )));
    }
    let d = num_q.len() - 1;
    match modulus {
        None => {
            let phi = RatFunc::new(RatField, d, num_q, den_q)?;
            let t = transform(&phi, m, k)?;
            print_transformed(&RatField, &t, raw);
            if let Some(path) = &json {
                write_json_record(path, m, k, &t, raw)?;
            }
        }
        Some(p) => {
            let field = PrimeField::new(p)?;
            let reduce = |q: &BigRational| -> Result<u64> {
                let n = field.reduce_bigint(q.numer());
                let dd = field.reduce_bigint(q.denom());
                let inv = field.inv(&dd).ok_or(Error::ZeroDenominator)?;
                Ok(field.mul(&n, &inv))
            };
            let num_p = num_q.iter().map(&reduce).collect::<Result<Vec<_>>>()?;
            let den_p = den_q.iter().map(&reduce).collect::<Result<Vec<_>>>()?;
            let phi = RatFunc::new(field, d, num_p, den_p)?;
            let t = transform(&phi, m, k)?;
            print_transformed(&field, &t, raw);
            if let Some(path) = &json {
                write_json_record(path, m, k, &t, raw)?;
            }
        }
    }
    Ok(0)
}

fn run_verify(
    suite: &str,
    d: usize,
    m: u32,
    trials: u32,
    seed: Option<u64>,
    mode: Mode,
    p: Option<u64>,
) -> Result<i32> {
    let opts = SuiteOptions {
        d_max: d,
        m_max: m,
        trials,
        seed,
        symbolic: mode == Mode::Symbolic,
        p,
    };
    if !SUITE_NAMES.contains(&suite) {
        return Err(Error::InvalidArgument(format!(
            "unknown suite '{suite}'; available: {}",
            SUITE_NAMES.join(", ")
        )));
    }
    let report = run_suite(suite, &opts)?;
    println!("suite: {}", report.name);
    println!("cells: {}", report.cells);
    for note in &report.notes {
        println!("note: {note}");
    }
    for failure in &report.failures {
        println!("failure: {failure}");
    }
    if report.pass {
        println!("PASS");
        Ok(0)
    } else {
        println!("FAIL");
        Ok(1)
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Generic { d, m, k, format } => run_generic(d, m, k, format),
        Cmd::Transform {
            num,
            den,
            m,
            k,
            modulus,
            raw,
            json,
        } => run_transform(&num, &den, m, k, modulus, raw, json),
        Cmd::Verify {
            suite,
            d,
            m,
            trials,
            seed,
            mode,
            p,
        } => run_verify(&suite, d, m, trials, seed, mode, p),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}
