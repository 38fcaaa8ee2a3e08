//! permbin: exhaustive search and verification of permutation binomials
//! x^i + ax over GF(2^n).
//!
//! Exit codes: 0 on success / verified, 1 on discrepancies or I/O failures,
//! 2 on usage and parameter errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use permbin_core::error::Error;
use permbin_core::field::{build_field, FieldElement, FieldSpec};
use permbin_core::index::compute_index;
use permbin_core::index::is_pp_via_agw;
use permbin_core::perm::{hermite_power_sum, is_pp_direct, is_pp_hermite, BinomialSpec};
use permbin_core::report::{parse_hex_element, ReportFormat};
use permbin_core::search::{run_search, SearchConfig, Tester};
use permbin_core::theorems::{f1_case, f2_case, f3_case, f4_case, h2_case, validate, FamilyTag};

#[derive(Parser)]
#[command(
    name = "permbin",
    version,
    about = "Permutation binomials x^i + ax over GF(2^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify all exponents over GF(2^n)
    Search {
        #[arg(long)]
        n: u32,
        /// direct | agw | hermite | cross-check (default: auto)
        #[arg(long, default_value = "auto")]
        tester: String,
        #[arg(long)]
        skip_linearized: bool,
        /// Single exponent or inclusive range LO..HI
        #[arg(long)]
        i: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// json | csv
        #[arg(long, default_value = "json")]
        format: String,
        /// Worker count (overrides PERMBIN_WORKERS)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Validate one binomial family against brute force
    Verify {
        /// f1 | f2 | h2 | f3 | f4
        #[arg(long)]
        case: String,
        /// Base degree: q = 2^base_n
        #[arg(long)]
        base_n: u32,
    },
    /// Print the index decomposition of an exponent
    Index {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
    },
    /// Hermite coefficients of (x^i + ax)^t
    Hermite {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        /// Coefficient, lowercase 0x hex
        #[arg(long)]
        a: String,
        /// Power t, or "all" for the full criterion
        #[arg(long, default_value = "all")]
        t: String,
    },
    /// Test a single (i, a) pair with every applicable tester
    Test {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        /// Coefficient, lowercase 0x hex
        #[arg(long)]
        a: String,
    },
}

fn parse_element(field: &FieldSpec, s: &str) -> Result<FieldElement, Error> {
    let v = parse_hex_element(s)?;
    if v == 0 || v >= field.q() {
        return Err(Error::Config(format!(
            "coefficient {s} outside the nonzero elements of GF(2^{})",
            field.n()
        )));
    }
    Ok(FieldElement(v))
}

fn parse_i_range(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::Config(format!("exponent range '{s}' is not N or LO..HI"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = lo.parse().map_err(|_| bad())?;
        let hi = hi.parse().map_err(|_| bad())?;
        Ok((lo, hi))
    } else {
        let v: u32 = s.parse().map_err(|_| bad())?;
        Ok((v, v))
    }
}

/// Parameter and configuration errors exit 2; runtime failures
/// (I/O, parse, tester disagreement) exit 1.
fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Io { .. } | Error::Parse(_) | Error::TesterDisagreement { .. } => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Search {
            n,
            tester,
            skip_linearized,
            i,
            out,
            format,
            workers,
        } => {
            let mut config = SearchConfig::new(n);
            config.tester = tester.parse::<Tester>()?;
            config.skip_linearized = skip_linearized;
            config.workers = workers;
            if let Some(spec) = i {
                config.i_range = Some(parse_i_range(&spec)?);
            }
            let format = format.parse::<ReportFormat>()?;
            if let Some(path) = out {
                config.output = Some((path.clone(), format));
                let report = run_search(&config)?;
                eprintln!("wrote {} rows to {}", report.rows.len(), path.display());
            } else {
                let report = run_search(&config)?;
                print!("{}", report.render(format)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { case, base_n } => {
            let tag = case.parse::<FamilyTag>()?;
            let multiplier = match tag {
                FamilyTag::F1Q2 => 2,
                FamilyTag::F2Q3 | FamilyTag::H2Q3 => 3,
                FamilyTag::F3Q4 | FamilyTag::F4Q4 => 4,
            };
            let field = build_field(base_n * multiplier)?;
            let case = match tag {
                FamilyTag::F1Q2 => f1_case(&field, base_n)?,
                FamilyTag::F2Q3 => f2_case(&field, base_n)?,
                FamilyTag::H2Q3 => h2_case(&field, base_n)?,
                FamilyTag::F3Q4 => f3_case(&field, base_n)?,
                FamilyTag::F4Q4 => f4_case(&field, base_n)?,
            };
            let rep = validate(&field, &case)?;
            println!(
                "{} base_n={} field=GF(2^{}) i={}: predicted {} valid, brute {} valid, {} discrepancies ({} ms)",
                tag,
                rep.base_n,
                rep.field_n,
                rep.exponent,
                rep.predicted.len(),
                rep.brute.len(),
                rep.discrepancies.len(),
                rep.elapsed_ms
            );
            if rep.verified() {
                println!("verified");
                Ok(ExitCode::SUCCESS)
            } else {
                for a in &rep.discrepancies {
                    println!("discrepancy at a={a:#x}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Index { n, i } => {
            let field = build_field(n)?;
            let form = compute_index(&field, i)?;
            println!(
                "i={} over GF(2^{}): s=gcd(i-1, q-1)={} d=(q-1)/s={} e=(i-1)/s={}",
                form.i, n, form.s, form.d, form.e
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Hermite { n, i, a, t } => {
            if n > 10 {
                return Err(Error::HermiteRefused(n));
            }
            let field = build_field(n)?;
            let a = parse_element(&field, &a)?;
            let b = BinomialSpec::new(&field, i, a)?;
            if t == "all" {
                let verdict = is_pp_hermite(&b);
                println!(
                    "x^{i} + {a}x over GF(2^{n}): {}",
                    if verdict {
                        "permutation (Hermite criterion satisfied)"
                    } else {
                        "not a permutation"
                    }
                );
                Ok(ExitCode::SUCCESS)
            } else {
                let t: u32 = t
                    .parse()
                    .map_err(|_| Error::Config(format!("t '{t}' is not an integer or 'all'")))?;
                let c = hermite_power_sum(&b, t)?;
                println!("coefficient of x^(q-1) in (x^{i} + {a}x)^{t}: {c}");
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Test { n, i, a } => {
            let field = build_field(n)?;
            let a = parse_element(&field, &a)?;
            let b = BinomialSpec::new(&field, i, a)?;
            let direct = is_pp_direct(&b);
            let agw = is_pp_via_agw(&field, i, a)?;
            let hermite = (n <= 10).then(|| is_pp_hermite(&b));
            if direct != agw || hermite.is_some_and(|h| h != direct) {
                return Err(Error::TesterDisagreement {
                    i,
                    a: a.0,
                    direct,
                    agw,
                    hermite,
                });
            }
            println!(
                "x^{i} + {a}x over GF(2^{n}): {} (direct, agw{} agree)",
                if direct {
                    "permutation"
                } else {
                    "not a permutation"
                },
                if hermite.is_some() { ", hermite" } else { "" }
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
