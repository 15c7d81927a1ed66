use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Once;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use arith_equiv::arith::{divisors, primes_up_to};
use arith_equiv::equiv::{
    compare_counts, compare_types, criteria_consistency, run_corpus, CorpusReport, FieldPair,
    RunMode,
};
use arith_equiv::gcd_matrix::verify_smith;
use arith_equiv::signature::{reconstruct, GcdSumSignature};
use arith_equiv::spectra::{
    block_permutation, charpoly_product, cycle_count_power, mult_one_power, one_valuation,
    DegreeSequence,
};
use arith_equiv::splitting::{classify_prime, IntPolynomial};
use arith_equiv::Error;

/// Exact splitting-type toolkit: GCD-matrix determinant checks, gcd-sum
/// signature reconstruction, permutation eigenvalue multiplicities, and
/// prime-by-prime comparison of number fields.
#[derive(Parser)]
#[command(name = "arith-equiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the determinant identity over the divisors of a number
    SmithVerify {
        /// The set is the divisors of this value
        #[arg(long)]
        lcm: u64,
    },
    /// Recover a multiset from its gcd-sum signature
    Reconstruct {
        /// Signature values at N = 1, 2, ..., B, comma-separated
        #[arg(long)]
        signature: String,
    },
    /// Eigenvalue-1 multiplicity of a permutation-matrix power, with both
    /// oracles
    Eigmult {
        /// Cycle degrees, comma-separated
        #[arg(long)]
        degrees: String,
        /// The power to raise the matrix to
        #[arg(long)]
        power: u64,
    },
    /// Arithmetic type of one prime
    Type {
        /// Monic polynomial coefficients, low-to-high, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        prime: u64,
    },
    /// Classify every prime up to a bound, one JSON object per line
    Scan {
        /// Monic polynomial coefficients, low-to-high, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        bound: u64,
    },
    /// Compare two fields prime by prime
    Equiv {
        /// First polynomial, coefficients low-to-high
        #[arg(long, allow_hyphen_values = true)]
        poly_a: String,
        /// Second polynomial, coefficients low-to-high
        #[arg(long, allow_hyphen_values = true)]
        poly_b: String,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Compare every pair in a JSON corpus file
    Corpus {
        /// JSON array of {"name", "a", "b"} entries
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Also write a CSV summary to this path
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Types,
    Counts,
    Both,
}

impl From<ModeArg> for RunMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Types => RunMode::Types,
            ModeArg::Counts => RunMode::Counts,
            ModeArg::Both => RunMode::Both,
        }
    }
}

enum CliError {
    /// Bad flags or flag values: exit code 1.
    Usage(String),
    /// Unreadable or malformed input data: exit code 2.
    Parse(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::SmithVerify { lcm } => {
            if lcm < 1 {
                return Err(CliError::Usage("--lcm must be at least 1".into()));
            }
            let report = verify_smith(&divisors(lcm)).expect("divisor sets are nonempty");
            emit(&report);
        }
        Command::Reconstruct { signature } => {
            let values = parse_u64_list(&signature, "--signature")?;
            match reconstruct(&GcdSumSignature::new(values)) {
                Ok(multiset) => emit(&json!({ "elements": multiset.elements() })),
                Err(e @ (Error::BoundTooSmall | Error::EmptySignature)) => {
                    // Unrealizable signatures are data, not failures.
                    emit(&json!({ "error": error_tag(&e) }));
                }
                Err(e) => return Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Eigmult { degrees, power } => {
            let degrees = parse_u64_list(&degrees, "--degrees")?;
            if degrees.contains(&0) {
                return Err(CliError::Usage("--degrees entries must be positive".into()));
            }
            if power < 1 {
                return Err(CliError::Usage("--power must be at least 1".into()));
            }
            let f = DegreeSequence::new(degrees);
            let p = block_permutation(&f).map_err(|e| CliError::Usage(e.to_string()))?;
            let power_type = DegreeSequence::new(p.pow(power).cycle_lengths());
            emit(&json!({
                "multiplicity": mult_one_power(&f, power),
                "oracle_cycles": cycle_count_power(&p, power),
                "oracle_valuation": one_valuation(&charpoly_product(&power_type)),
            }));
        }
        Command::Type { poly, prime } => {
            let f = parse_poly(&poly, "--poly")?;
            let classification =
                classify_prime(&f, prime).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&classification);
        }
        Command::Scan { poly, bound } => {
            let f = parse_poly(&poly, "--poly")?;
            check_bound(bound)?;
            let stdout = std::io::stdout().lock();
            let mut out = BufWriter::new(stdout);
            let mut processed = 0u64;
            for l in primes_up_to(bound) {
                processed += 1;
                if processed.is_multiple_of(10_000) {
                    eprintln!("progress: {processed} primes processed (at {l})");
                }
                let c = classify_prime(&f, l).expect("sieve yields primes");
                writeln!(out, "{}", serde_json::to_string(&c).expect("serializable"))
                    .map_err(|e| CliError::Parse(format!("stdout: {e}")))?;
            }
            out.flush()
                .map_err(|e| CliError::Parse(format!("stdout: {e}")))?;
        }
        Command::Equiv {
            poly_a,
            poly_b,
            bound,
            mode,
        } => {
            let a = parse_poly(&poly_a, "--poly-a")?;
            let b = parse_poly(&poly_b, "--poly-b")?;
            check_bound(bound)?;
            let pair = FieldPair::new("pair", a, b);
            match mode {
                ModeArg::Types => emit(&compare_types(&pair, bound)),
                ModeArg::Counts => emit(&compare_counts(&pair, bound)),
                ModeArg::Both => {
                    let report = criteria_consistency(&pair, bound);
                    if report.violation {
                        eprintln!(
                            "WARNING: splitting numbers agree up to {bound} but types do not"
                        );
                    }
                    emit(&report);
                }
            }
        }
        Command::Corpus {
            file,
            bound,
            mode,
            csv,
        } => {
            check_bound(bound)?;
            let reports = run_corpus(&file, bound, RunMode::from(mode))
                .map_err(|e| CliError::Parse(e.to_string()))?;
            for report in &reports {
                if report.violation == Some(true) {
                    eprintln!(
                        "WARNING: {}: splitting numbers agree up to {bound} but types do not",
                        report.name
                    );
                }
                emit(report);
            }
            if let Some(path) = csv {
                write_csv_summary(&path, &reports, bound)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            }
        }
    }
    Ok(())
}

fn emit<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

/// One row per comparison actually run: name, mode, bound, agree,
/// first_mismatch_prime (empty when the pair agrees).
fn write_csv_summary(
    path: &std::path::Path,
    reports: &[CorpusReport],
    bound: u64,
) -> Result<(), Box<dyn std::error::Error>> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["name", "mode", "bound", "agree", "first_mismatch_prime"])?;
    for report in reports {
        for (mode, comparison) in [("types", &report.types), ("counts", &report.counts)] {
            let Some(comparison) = comparison else {
                continue;
            };
            let mismatch = comparison
                .first_mismatch
                .as_ref()
                .map(|m| m.prime.to_string())
                .unwrap_or_default();
            writer.write_record([
                report.name.as_str(),
                mode,
                &bound.to_string(),
                &comparison.agree.to_string(),
                &mismatch,
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::BoundTooSmall => "BoundTooSmall",
        Error::EmptySignature => "EmptySignature",
        _ => "Error",
    }
}

fn check_bound(bound: u64) -> Result<(), CliError> {
    if bound < 2 {
        return Err(CliError::Usage("--bound must be at least 2".into()));
    }
    Ok(())
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Usage(format!("{what}: bad entry {:?}: {e}", t.trim())))
        })
        .collect()
}

fn parse_poly(text: &str, what: &str) -> Result<IntPolynomial, CliError> {
    let coeffs: Vec<i64> = text
        .split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|e| {
                CliError::Usage(format!("{what}: bad coefficient {:?}: {e}", t.trim()))
            })
        })
        .collect::<Result<_, _>>()?;
    let poly =
        IntPolynomial::try_new(coeffs).map_err(|e| CliError::Usage(format!("{what}: {e}")))?;
    irreducibility_note();
    Ok(poly)
}

fn irreducibility_note() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| {
        eprintln!(
            "note: splitting data is meaningful only when the polynomial is \
             irreducible over the rationals; irreducibility is not checked"
        );
    });
}
