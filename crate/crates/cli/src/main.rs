//! `susp`: arithmetic, factorization, class groups and smoothness checks in
//! suspension rings `R[u,v]/(uv - f)` over `QQ[x_1, ..., x_n]`.

mod commands;
mod error;
mod paper;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{Context, FittingArgs, Output};
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "susp",
    version,
    about = "Exact algebra in suspension rings R[u,v]/(uv - f)"
)]
struct Cli {
    /// Base ring, for example `QQ[x,y]`.
    #[arg(long, global = true, value_name = "SPEC")]
    ring: Option<String>,

    /// Suspension function of the next tower level; repeat to build a tower.
    #[arg(long = "f", global = true, value_name = "EXPR")]
    fs: Vec<String>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Normal form of an expression at the top level of the tower.
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of two expressions.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Factorization in the base ring, or in S for a one-level tower.
    Factor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Primality of an element; without one, of u, v and f at the top level.
    IsPrime {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Whether an element is invertible.
    IsUnit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Divisor class group of the suspension.
    ClassGroup,
    /// Jacobian criterion for `{f = 0}`, or for `{expr = 0}` in the base ring.
    Smooth {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
    },
    /// Primality, smoothness and class group of a one-level suspension.
    Report,
    /// Smith normal form of an integer matrix given as JSON rows.
    Snf { matrix: String },
    /// Fitting ideals of a presentation (JSON rows of polynomials). Without a
    /// matrix, prints the cyclicity report for the graded component A_1.
    Fitting {
        matrix: Option<String>,
        /// Only this Fitting ideal.
        #[arg(long)]
        k: Option<usize>,
        /// Number of generators, needed when there are no relations.
        #[arg(long)]
        cols: Option<usize>,
        /// Treat the matrix as a complete presentation of A_1 on u1, u2.
        #[arg(long)]
        cyclicity: bool,
    },
    /// Re-check the worked examples.
    VerifyPaper,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Context {
        ring: cli.ring.clone(),
        fs: cli.fs.clone(),
    };
    match &cli.verb {
        Verb::Nf { expr } => commands::nf(&ctx, expr),
        Verb::Mul { a, b } => commands::mul(&ctx, a, b),
        Verb::Factor { expr } => commands::factor(&ctx, expr),
        Verb::IsPrime { expr } => commands::is_prime(&ctx, expr.as_deref()),
        Verb::IsUnit { expr } => commands::is_unit(&ctx, expr),
        Verb::ClassGroup => commands::class_group_cmd(&ctx),
        Verb::Smooth { expr } => commands::smooth(&ctx, expr.as_deref()),
        Verb::Report => commands::report(&ctx),
        Verb::Snf { matrix } => commands::snf(matrix),
        Verb::Fitting {
            matrix,
            k,
            cols,
            cyclicity,
        } => commands::fitting(
            &ctx,
            &FittingArgs {
                matrix: matrix.as_deref(),
                k: *k,
                cols: *cols,
                cyclicity: *cyclicity,
            },
        ),
        Verb::VerifyPaper => {
            let checks = paper::run(&commands::groebner_config()?);
            let all = checks.iter().all(|c| c.passed);
            let text = paper::render(&checks);
            Ok(Output {
                text,
                json: json!({ "passed": all, "checks": checks }),
                negative: !all,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if std::env::args().any(|a| a == "--json") {
                let err = CliError::Usage(e.kind().to_string());
                println!("{}", err.to_json());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(u8::from(out.negative))
        }
        Err(e) => {
            if cli.json {
                println!("{}", e.to_json());
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(2)
        }
    }
}
