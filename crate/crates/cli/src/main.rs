//! `modvar`: analyze bound quiver algebras and their module varieties.
//!
//! `modvar analyze file.quiv` parses a presentation, runs every analysis
//! that applies (admissibility, cycle obstructions, glueing, catalog
//! recognition, Gorenstein samples, stratifications for requested
//! dimension vectors, reducibility certificates) and prints one report.
//! `modvar gen` prints built-in families in the same `.quiv` format.
//!
//! Exit codes: 0 analyzed with no reducibility witness, 10 a verified
//! certificate was produced, 2 input error.

mod analyze;
mod quiv;
mod report;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use modvar_core::algebra::AlgebraTable;
use modvar_core::builders;
use modvar_core::field::{Field, PrimeField, Rationals};

use analyze::Options;
use quiv::FieldChoice;

#[derive(Parser)]
#[command(
    name = "modvar",
    version,
    about = "Analyzer for bound quiver algebras and their module varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a `.quiv` presentation file (`-` reads stdin)
    Analyze {
        /// Input file
        file: PathBuf,
        /// Dimension vectors to stratify, semicolon-separated: `1,1;2,2`
        #[arg(long, default_value = "")]
        dims: String,
        /// Ground field, `Q` or `F<p>`; overrides the file's field line
        #[arg(long)]
        field: Option<String>,
        /// Seed for randomized subroutines, recorded in the report
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tuple budget for exhaustive finite-field point counts
        #[arg(long = "max-enum", default_value_t = 10_000_000)]
        max_enum: u64,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a built-in presentation in `.quiv` form
    Gen {
        /// Family name: `B`, `truncpoly`, or `linear`
        family: String,
        /// Parameters: `B m n`, `truncpoly m`, `linear n c0..cn`
        params: Vec<usize>,
        /// Ground field for the emitted file
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

const EXIT_WITNESSED: u8 = 10;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(error) => {
            eprintln!("modvar: {error:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Analyze {
            file,
            dims,
            field,
            seed,
            max_enum,
            format,
        } => {
            let text = read_input(&file)?;
            let parsed = quiv::parse(&text)?;
            let choice = match field {
                Some(ref token) => FieldChoice::parse(token).map_err(|m| anyhow!(m))?,
                None => parsed
                    .field()
                    .ok_or_else(|| anyhow!("the file has no `field` line; pass --field"))?,
            };
            let dims = parse_dims(&dims, parsed.vertex_count())?;
            let opts = Options {
                dims,
                seed,
                max_enum,
            };
            match choice {
                FieldChoice::Rationals => run_analysis(&parsed, &Rationals, &opts, format),
                FieldChoice::Prime(p) => {
                    let f = PrimeField::new(p).expect("validated by FieldChoice");
                    run_analysis(&parsed, &f, &opts, format)
                }
            }
        }
        Command::Gen {
            family,
            params,
            field,
        } => {
            let choice = FieldChoice::parse(&field).map_err(|m| anyhow!(m))?;
            match choice {
                FieldChoice::Rationals => generate(&family, &params, &Rationals),
                FieldChoice::Prime(p) => {
                    let f = PrimeField::new(p).expect("validated by FieldChoice");
                    generate(&family, &params, &f)
                }
            }
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| path.display().to_string())
    }
}

fn parse_dims(arg: &str, vertices: usize) -> Result<Vec<Vec<usize>>> {
    if arg.is_empty() {
        return Ok(Vec::new());
    }
    arg.split(';')
        .map(|chunk| {
            let d: Vec<usize> = chunk
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| anyhow!("bad dimension vector `{chunk}`"))?;
            if d.len() != vertices {
                bail!(
                    "dimension vector `{chunk}` has {} entries, the quiver has {vertices} vertices",
                    d.len()
                );
            }
            Ok(d)
        })
        .collect()
}

fn run_analysis<F: Field>(
    parsed: &quiv::ParsedQuiv,
    field: &F,
    opts: &Options,
    format: Format,
) -> Result<ExitCode> {
    let presentation = quiv::instantiate(parsed, field)?;
    let table = AlgebraTable::new(presentation)
        .map(Arc::new)
        .map_err(|e| anyhow!("building the algebra: {e}"))?;
    let analysis = analyze::analyze(&table, opts);
    let rendered = match format {
        Format::Json => report::to_json(&analysis.report),
        Format::Text => report::to_text(&analysis.report),
    };
    print!("{rendered}");
    Ok(if analysis.witnessed {
        ExitCode::from(EXIT_WITNESSED)
    } else {
        ExitCode::SUCCESS
    })
}

fn generate<F: Field>(family: &str, params: &[usize], field: &F) -> Result<ExitCode> {
    let presentation = match (family, params) {
        ("B", [m, n]) => builders::b_class(field, *m, *n),
        ("truncpoly", [m]) => builders::trunc_poly(field, *m),
        ("linear", [n, cs @ ..]) => {
            if cs.len() != n + 1 {
                bail!("linear needs n + 1 loop degrees after n, got {} for n = {n}", cs.len());
            }
            builders::linear(field, cs, &vec![1; *n])
        }
        _ => bail!("unknown generator `{family}`; try `B m n`, `truncpoly m`, or `linear n c0..cn`"),
    }
    .map_err(|e| anyhow!(e.to_string()))?;
    print!("{}", quiv::emit(&presentation));
    Ok(ExitCode::SUCCESS)
}
