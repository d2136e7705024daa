//! Command-line interface for the totally p-adic cubic height search.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tau3_cli::build_corpus_parallel;
use tau3_cli::format::{load_corpus, save_corpus, FormatError};
use tau3_cli::table::{emit_abelian_table, emit_tau_table, format_sig, TableFormat};
use tau3_cli::validate::{cross_validate, ValidateError};
use tau3_core::abelian::{build_abelian_table, verify_global_bound, AbelianError};
use tau3_core::arith::primes_up_to;
use tau3_core::corpus::{
    tau3, Corpus, CorpusError, TauError, TauResult, DEFAULT_LENGTH_MAX, DEFAULT_MEASURE_MAX,
};
use tau3_core::padic::PadicError;
use tau3_core::splitting::SplitError;

/// Compute the smallest Weil height of totally p-adic cubic numbers.
#[derive(Parser)]
#[command(name = "tau3", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the candidate corpus and optionally save it to a cache file.
    Enumerate {
        /// Maximum coefficient 1-norm.
        #[arg(long, default_value_t = DEFAULT_LENGTH_MAX)]
        length_max: u64,
        /// Maximum Mahler measure (inclusive under certified error).
        #[arg(long, default_value_t = DEFAULT_MEASURE_MAX)]
        measure_max: f64,
        /// Write the corpus cache here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop imprimitive entries (coefficient gcd above 1). The
        /// canonical list keeps them; their primitive parts sort earlier,
        /// so search results are unaffected either way.
        #[arg(long)]
        primitive_only: bool,
    },
    /// The minimal height tau_{3,p} for one prime or a range of primes.
    Tau {
        /// A single prime p >= 5.
        #[arg(long, conflicts_with = "prime_range")]
        prime: Option<u64>,
        /// An inclusive range like `5..443`.
        #[arg(long)]
        prime_range: Option<String>,
        /// Load the corpus from this cache file instead of building it.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
        /// Significant figures for printed heights.
        #[arg(long, default_value_t = 5)]
        precision: usize,
    },
    /// The results table over a prime range.
    Table {
        /// An inclusive range like `5..443`.
        #[arg(long, default_value = "5..443")]
        range: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        precision: usize,
    },
    /// The abelian cubics with conductors and splitting classes.
    Abelian {
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        precision: usize,
    },
    /// Verify the global height bound certificate (search termination).
    VerifyBound {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Cross-validate the splitting criteria against independent oracles.
    CrossValidate {
        /// Oracle sweep runs over primes 5..=prime_bound.
        #[arg(long, default_value_t = 199)]
        prime_bound: u64,
        /// Frobenius sweep runs over primes 5..=abelian_prime_bound.
        #[arg(long, default_value_t = 1000)]
        abelian_prime_bound: u64,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad input, missing files, unsupported primes: exit code 1.
    Domain(String),
    /// Violated internal invariants (numerics failed to certify, corpus
    /// exhausted, bound exceeded, oracle mismatch): exit code 2.
    Alarm(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Alarm(msg)) => {
            eprintln!("invariant alarm: {msg}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enumerate {
            length_max,
            measure_max,
            out,
            primitive_only,
        } => {
            if !(measure_max.is_finite() && measure_max >= 1.0) {
                return Err(CliError::Domain(
                    "--measure-max must be a finite number >= 1".into(),
                ));
            }
            let mut corpus = build_corpus_parallel(length_max, measure_max).map_err(corpus_err)?;
            if primitive_only {
                let before = corpus.len();
                corpus.entries.retain(|e| e.poly.content() == 1);
                println!("dropped {} imprimitive entries", before - corpus.len());
            }
            println!(
                "enumerated {} irreducible cubics with length <= {} and measure <= {}",
                corpus.len(),
                length_max,
                measure_max
            );
            if let Some(path) = out {
                save_corpus(&corpus, &path).map_err(format_err)?;
                println!("saved corpus to {}", path.display());
            }
            Ok(())
        }
        Command::Tau {
            prime,
            prime_range,
            corpus,
            format,
            precision,
        } => {
            let primes = match (prime, prime_range) {
                (Some(p), None) => vec![p],
                (None, Some(range)) => parse_prime_range(&range)?,
                (None, None) => {
                    return Err(CliError::Domain(
                        "pass --prime P or --prime-range LO..HI".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let corpus = acquire_corpus(corpus.as_deref())?;
            let results = run_tau(&primes, &corpus)?;
            print!("{}", emit_tau_table(&results, format, precision));
            Ok(())
        }
        Command::Table {
            range,
            format,
            out,
            corpus,
            precision,
        } => {
            let primes = parse_prime_range(&range)?;
            let corpus = acquire_corpus(corpus.as_deref())?;
            let results = run_tau(&primes, &corpus)?;
            let doc = emit_tau_table(&results, format, precision);
            write_out(out.as_deref(), &doc)
        }
        Command::Abelian {
            format,
            out,
            corpus,
            precision,
        } => {
            let corpus = acquire_corpus(corpus.as_deref())?;
            let records = build_abelian_table(&corpus.entries).map_err(abelian_err)?;
            println!("{} abelian cubics", records.len());
            let doc = emit_abelian_table(&records, format, precision);
            write_out(out.as_deref(), &doc)
        }
        Command::VerifyBound { corpus } => {
            let corpus = acquire_corpus(corpus.as_deref())?;
            let records = build_abelian_table(&corpus.entries).map_err(abelian_err)?;
            let cert = verify_global_bound(&records).map_err(abelian_err)?;
            println!(
                "coverage modulus {}: {} residue classes assigned",
                cert.modulus,
                cert.assignments.len()
            );
            for (p, w) in &cert.special_primes {
                println!(
                    "direct witness for p = {p}: {} (height {})",
                    w.poly,
                    format_sig(w.height, 5)
                );
            }
            println!("certificate bound: {}", format_sig(cert.bound, 5));
            if cert.respects_global_bound() {
                println!("global bound holds: every prime p >= 5 has tau <= 0.70376");
                Ok(())
            } else {
                Err(CliError::Alarm(format!(
                    "certificate bound {} exceeds the global bound",
                    cert.bound
                )))
            }
        }
        Command::CrossValidate {
            prime_bound,
            abelian_prime_bound,
            corpus,
        } => {
            let corpus = acquire_corpus(corpus.as_deref())?;
            let report =
                cross_validate(&corpus, prime_bound, abelian_prime_bound).map_err(validate_err)?;
            print!("{report}");
            if report.is_clean() {
                Ok(())
            } else {
                Err(CliError::Alarm(
                    "cross-validation found verdict mismatches".into(),
                ))
            }
        }
    }
}

fn run_tau(primes: &[u64], corpus: &Corpus) -> Result<Vec<TauResult>, CliError> {
    primes
        .iter()
        .map(|&p| tau3(p, corpus).map_err(tau_err))
        .collect()
}

/// Inclusive prime range `LO..HI` (both ends included); only primes >= 5
/// qualify.
fn parse_prime_range(s: &str) -> Result<Vec<u64>, CliError> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| CliError::Domain(format!("range `{s}` is not of the form LO..HI")))?;
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|_| CliError::Domain(format!("bad range start in `{s}`")))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|_| CliError::Domain(format!("bad range end in `{s}`")))?;
    if lo > hi {
        return Err(CliError::Domain(format!("empty range `{s}`")));
    }
    Ok(primes_up_to(hi)
        .into_iter()
        .filter(|&p| p >= 5.max(lo))
        .collect())
}

/// Load the corpus from the given path, from the cache directory named by
/// `TAU3_CACHE_DIR`, or build the canonical corpus in memory.
fn acquire_corpus(path: Option<&Path>) -> Result<Corpus, CliError> {
    if let Some(path) = path {
        return load_corpus(path).map_err(format_err);
    }
    if let Ok(dir) = std::env::var("TAU3_CACHE_DIR") {
        let cache = Path::new(&dir).join(format!(
            "corpus-L{DEFAULT_LENGTH_MAX}-M{DEFAULT_MEASURE_MAX}.tau3corp"
        ));
        if cache.is_file() {
            match load_corpus(&cache) {
                Ok(corpus) => return Ok(corpus),
                Err(e) => eprintln!("cache at {} unusable ({e}); rebuilding", cache.display()),
            }
        }
        let corpus =
            build_corpus_parallel(DEFAULT_LENGTH_MAX, DEFAULT_MEASURE_MAX).map_err(corpus_err)?;
        if std::fs::create_dir_all(&dir).is_ok() {
            if let Err(e) = save_corpus(&corpus, &cache) {
                eprintln!("could not write cache {}: {e}", cache.display());
            }
        }
        return Ok(corpus);
    }
    eprintln!("building the canonical corpus (set TAU3_CACHE_DIR to cache it) ...");
    build_corpus_parallel(DEFAULT_LENGTH_MAX, DEFAULT_MEASURE_MAX).map_err(corpus_err)
}

fn write_out(path: Option<&Path>, doc: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, doc)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

fn format_err(e: FormatError) -> CliError {
    CliError::Domain(e.to_string())
}

fn corpus_err(e: CorpusError) -> CliError {
    // Enumeration failures mean the certified numerics broke, not bad input.
    CliError::Alarm(e.to_string())
}

fn split_err(e: SplitError) -> CliError {
    match &e {
        SplitError::Padic(PadicError::UnsupportedPrime { .. })
        | SplitError::Padic(PadicError::NotTwoModThree { .. }) => CliError::Domain(e.to_string()),
        _ => CliError::Alarm(e.to_string()),
    }
}

fn tau_err(e: TauError) -> CliError {
    match e {
        TauError::Split(s) => split_err(s),
        TauError::ExhaustedCorpus { .. } | TauError::BoundViolation { .. } => {
            CliError::Alarm(e.to_string())
        }
    }
}

fn abelian_err(e: AbelianError) -> CliError {
    match e {
        AbelianError::Split(s) => split_err(s),
        _ => CliError::Alarm(e.to_string()),
    }
}

fn validate_err(e: ValidateError) -> CliError {
    match e {
        ValidateError::Split(s) => split_err(s),
        ValidateError::Abelian(a) => abelian_err(a),
        ValidateError::Oracle { .. } => CliError::Alarm(e.to_string()),
    }
}
