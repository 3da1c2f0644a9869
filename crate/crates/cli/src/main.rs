//! `graded-zeta`: Hilbert series, zeta values, residues and multiplicities of
//! graded modules from JSON module descriptions.

mod commands;
mod error;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "graded-zeta", version, about)]
struct Cli {
    /// Absolute tolerance for Hurwitz evaluations.
    #[arg(long, global = true, env = "GRADED_ZETA_TOL")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients H(M, 0..=N) of the Hilbert series.
    Hilbert {
        /// Module spec JSON file, or `-` for stdin.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Period, alpha and coefficient table of the Hilbert quasi-polynomial.
    Quasipoly {
        #[arg(long)]
        spec: PathBuf,
    },
    /// zeta_M(z, w) from the closed form.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        /// `RE` or `RE,IM`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        w: f64,
        /// Also sum the Dirichlet series directly and report the difference.
        #[arg(long)]
        direct: bool,
    },
    /// Exact residues at z = 1, ..., m as polynomials in w.
    Residues {
        #[arg(long)]
        spec: PathBuf,
        /// Specialize at w, given as an integer or `p/q`.
        #[arg(long)]
        w: Option<String>,
        /// Residues of the w -> 0 limit function.
        #[arg(long)]
        limit: bool,
        /// Compute from the graded Betti numbers (or numerator shifts).
        #[arg(long)]
        betti_route: bool,
        /// Use the I-th iterated Hilbert function.
        #[arg(long, default_value_t = 0)]
        iterate: usize,
    },
    /// Multiplicity and Hilbert coefficients of a standard graded module.
    Mult {
        #[arg(long)]
        spec: PathBuf,
        /// Treat the spec as gr_I(M) and report e(M, I).
        #[arg(long)]
        samuel: bool,
    },
    /// Restricted partition counts p_a(n), or bounded denumerants f_a(n).
    Partition {
        /// Comma-separated weights.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        bounded: bool,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Check {
        #[arg(long, value_parser = graded_zeta::verify::SUITE_NAMES)]
        suite: String,
    },
    /// CSV of |zeta_M| and arg over a rectangle, for plotting.
    Grid {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        w: f64,
        /// `LO:HI:STEP`.
        #[arg(long, allow_hyphen_values = true)]
        re: String,
        #[arg(long, allow_hyphen_values = true)]
        im: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok((doc, passed)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => report(e),
    }
}

fn report(e: CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    e.exit_code()
}
