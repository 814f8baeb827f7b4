use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use charlier_core::charlier::charlier;
use charlier_core::diffeq::CoeffTable;
use charlier_core::generalized::gen_charlier;
use charlier_core::suite::{self, Suite, SuiteSpec};
use charlier_core::Poly;
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod render;

const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "charlier",
    version,
    about = "Charlier polynomials with a point mass: coefficients and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolyFormat {
    Text,
    Latex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Charlier,
    Generalized,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Classical,
    Generalized,
    Diffeq,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Classical => Suite::Classical,
            SuiteArg::Generalized => Suite::Generalized,
            SuiteArg::Diffeq => Suite::Diffeq,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of the difference equation coefficients A_0(n, a) and A_i(a, x)
    Coeffs {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        i_max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A single classical or generalized Charlier polynomial
    Poly {
        #[arg(value_enum)]
        family: Family,
        n: u32,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites and print a JSON report
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        i_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace A_1 by +x before verifying (test fixture)
        #[arg(long, hide = true)]
        mutate_a1: bool,
    },
    /// Moments of the Poisson weight as polynomials in a
    Moments {
        #[arg(long, default_value_t = 10)]
        max_k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Coeffs { i_max, format, out } => {
            let table = CoeffTable::build(i_max);
            let text = match format {
                TableFormat::Json => {
                    render::coeffs_json(&render::CoeffListing::new(&table, i_max))?
                }
                TableFormat::Csv => render::coeffs_csv(&render::CoeffListing::new(&table, i_max))?,
                TableFormat::Latex => render::coeffs_latex(&table, i_max),
            };
            emit(out.as_ref(), &text)?;
        }
        Command::Poly {
            family,
            n,
            format,
            out,
        } => {
            let p = match family {
                Family::Charlier => charlier(n as i64),
                Family::Generalized => gen_charlier(n).poly,
            };
            let text = match format {
                PolyFormat::Text => p.to_string(),
                PolyFormat::Latex => p.to_latex(),
            };
            emit(out.as_ref(), &(text + "\n"))?;
        }
        Command::Verify {
            suite,
            n_max,
            i_max,
            out,
            mutate_a1,
        } => {
            let spec = SuiteSpec {
                suite: suite.into(),
                n_max,
                i_max,
            };
            let mut table = CoeffTable::build(spec.table_size());
            if mutate_a1 {
                table = table.with_ai(1, Poly::x());
            }
            let report = suite::run_with_table(&spec, &table);
            emit(
                out.as_ref(),
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )?;
            if !report.all_passed() {
                return Ok(ExitCode::from(EXIT_VERIFICATION_FAILED));
            }
        }
        Command::Moments { max_k, out } => {
            emit(out.as_ref(), &render::moments_json(max_k)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("charlier: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
