//! `quotinv`: invariants, classification and η tables for ℤ₂-quotients of S²×S³.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use quotinv::char_series::SeriesKernel;
use quotinv::classification::{classify, ClassificationError, DiffeoType, ParameterRange};
use quotinv::graded_ring::{builtin, parse_presentation, RingElement, RingPresentation, BUILTIN_NAMES};
use quotinv::invariants::{FamilyDescriptor, SignConvention};
use quotinv::moduli::{moduli_row, table_descriptors, ModuliError, ModuliRow, ModuliTable};
use quotinv::verify::{mutants, run_all};

use output::Format;

#[derive(Parser)]
#[command(name = "quotinv", version, about = "Invariants of ℤ₂-quotients of S²×S³ with nonnegatively curved metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chern class, ⟨c², [B]⟩, bordism classes, η by both methods and the w₂ report
    Invariants {
        #[command(flatten)]
        descriptor: DescriptorArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Diffeomorphism type of one descriptor
    Classify {
        #[command(flatten)]
        descriptor: DescriptorArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate η over the representatives of one diffeomorphism type
    Enumerate {
        /// X0, X2, X4, X6, X8, Q0, Q2, Q4, Q6 or Q8
        #[arg(long = "type", value_parser = parse_type)]
        diffeo_type: DiffeoType,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        count: u32,
        /// Walk r = 0, 1, −1, 2, −2, … instead of r = 0, 1, 2, …
        #[arg(long)]
        allow_negative_r: bool,
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Normal forms and pairings in a graded cohomology ring
    Ring {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES), conflicts_with = "presentation", required_unless_present = "presentation")]
        builtin: Option<String>,
        /// File in the presentation language
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Expression to reduce and pair with the fundamental class
        #[arg(long)]
        eval: Option<String>,
    },
    /// Run every cross-check suite
    Verify {
        #[arg(long, hide = true, value_enum)]
        mutate: Option<Mutation>,
    },
}

#[derive(Args)]
struct DescriptorArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(short, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(short, allow_negative_numbers = true)]
    l: Option<i64>,
    #[arg(short, allow_negative_numbers = true)]
    d: Option<i64>,
}

#[derive(Args)]
struct CommonArgs {
    /// Sign convention in the bordism formula: +1, -1 or both
    #[arg(long, default_value = "both", allow_negative_numbers = true, value_parser = parse_eps)]
    eps: EpsChoice,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "caseI")]
    CaseI,
    #[value(name = "caseII")]
    CaseII,
    #[value(name = "brieskorn")]
    Brieskorn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutation {
    InvCoshSign,
}

#[derive(Clone, Copy)]
struct EpsChoice(&'static [SignConvention]);

fn parse_eps(s: &str) -> Result<EpsChoice, String> {
    match s {
        "+1" | "1" => Ok(EpsChoice(&[SignConvention::Plus])),
        "-1" => Ok(EpsChoice(&[SignConvention::Minus])),
        "both" => Ok(EpsChoice(&SignConvention::BOTH)),
        _ => Err(format!("expected +1, -1 or both, got {s:?}")),
    }
}

fn parse_type(s: &str) -> Result<DiffeoType, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Exit code 1: a computation ran but a check failed.
#[derive(Debug)]
struct VerificationFailure(String);

impl std::fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailure {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<VerificationFailure>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Invariants { descriptor, common } => {
            let f = descriptor.build()?;
            let rows = rows_for(&f, common.eps)?;
            output::invariants(&f, &rows, common.format)?;
        }
        Command::Classify { descriptor, common } => {
            let f = descriptor.build()?;
            let rows = rows_for(&f, common.eps)?;
            output::classification(&rows, common.format)?;
        }
        Command::Enumerate { diffeo_type, count, allow_negative_r, parallel, common } => {
            let range = if allow_negative_r { ParameterRange::Integers } else { ParameterRange::Natural };
            let tables = common
                .eps
                .0
                .iter()
                .map(|&s| table(diffeo_type, s, count as usize, range, parallel))
                .collect::<anyhow::Result<Vec<_>>>()?;
            output::tables(&tables, common.format)?;
            if range == ParameterRange::Natural {
                if let Some(t) = tables.iter().find(|t| !t.all_distinct()) {
                    return Err(VerificationFailure(format!(
                        "{} (ε = {}): only {} distinct |η| among {} rows",
                        t.diffeo_type,
                        t.epsilon,
                        t.distinct_count,
                        t.rows.len()
                    ))
                    .into());
                }
            }
        }
        Command::Ring { builtin: name, presentation, eval } => {
            let pres = load_presentation(name.as_deref(), presentation.as_ref())?;
            match eval {
                Some(text) => {
                    let x = RingElement::parse(&pres, &text)?;
                    output::evaluation(&x);
                }
                None => output::presentation(&pres),
            }
        }
        Command::Verify { mutate } => {
            let kernel = match mutate {
                Some(Mutation::InvCoshSign) => mutants::flipped_inv_cosh(),
                None => SeriesKernel::STANDARD,
            };
            let outcomes = run_all(&kernel);
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            if failed > 0 {
                println!("{failed} of {} suites failed", outcomes.len());
                return Ok(ExitCode::from(1));
            }
            println!("all {} suites passed", outcomes.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}

impl DescriptorArgs {
    fn build(&self) -> anyhow::Result<FamilyDescriptor> {
        let f = match self.family {
            FamilyArg::CaseI | FamilyArg::CaseII => {
                if self.d.is_some() {
                    bail!("-d applies to the brieskorn family only");
                }
                let (Some(k), Some(l)) = (self.k, self.l) else {
                    bail!("circle-bundle families need both -k and -l");
                };
                if matches!(self.family, FamilyArg::CaseI) {
                    FamilyDescriptor::case_one(k, l)
                } else {
                    FamilyDescriptor::case_two(k, l)
                }
            }
            FamilyArg::Brieskorn => {
                if self.k.is_some() || self.l.is_some() {
                    bail!("-k and -l apply to circle-bundle families only");
                }
                let d = self.d.ok_or_else(|| anyhow!("the brieskorn family needs -d"))?;
                FamilyDescriptor::brieskorn(d)
            }
        };
        Ok(f?)
    }
}

/// Classify and tabulate one descriptor under each requested sign.
fn rows_for(f: &FamilyDescriptor, eps: EpsChoice) -> anyhow::Result<Vec<(SignConvention, ModuliRow)>> {
    eps.0
        .iter()
        .map(|&s| {
            let t = classify(f, s).map_err(classify_error)?;
            let row = moduli_row(&SeriesKernel::STANDARD, f, t, s).map_err(moduli_error)?;
            Ok((s, row))
        })
        .collect()
}

fn table(
    t: DiffeoType,
    s: SignConvention,
    count: usize,
    range: ParameterRange,
    parallel: bool,
) -> anyhow::Result<ModuliTable> {
    let descriptors = table_descriptors(t, s, count, range).map_err(moduli_error)?;
    let kernel = SeriesKernel::STANDARD;
    let rows: Result<Vec<_>, _> = if parallel {
        descriptors.par_iter().map(|f| moduli_row(&kernel, f, t, s)).collect()
    } else {
        descriptors.iter().map(|f| moduli_row(&kernel, f, t, s)).collect()
    };
    Ok(ModuliTable::from_rows(t, s, rows.map_err(moduli_error)?))
}

fn classify_error(e: ClassificationError) -> anyhow::Error {
    match e {
        ClassificationError::Descriptor(_) => e.into(),
        other => VerificationFailure(other.to_string()).into(),
    }
}

fn moduli_error(e: ModuliError) -> anyhow::Error {
    match e {
        ModuliError::Classification(c) => classify_error(c),
        ModuliError::Overflow { .. } => e.into(),
        other => VerificationFailure(other.to_string()).into(),
    }
}

fn load_presentation(name: Option<&str>, path: Option<&PathBuf>) -> anyhow::Result<Arc<RingPresentation>> {
    if let Some(name) = name {
        return builtin(name).ok_or_else(|| anyhow!("unknown builtin {name:?}"));
    }
    let path = path.ok_or_else(|| anyhow!("give --builtin or --presentation"))?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pres = parse_presentation(&text).with_context(|| format!("in {}", path.display()))?;
    Ok(Arc::new(pres))
}
