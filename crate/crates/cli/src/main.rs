use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use folbox::frontend::{countermodel_doc, parse_structure_json, structure_doc, to_json};
use folbox::kripke::{build_relative_universal, Seed, WorldId};
use folbox::oracle::{self, Status};
use folbox::proofcheck::{accepted, check_proof, Derivation};
use folbox::{box_status, decide, parse_formula, print_formula, to_conjunctive_form, BoxStatus, DecideError, Formula};
use thiserror::Error;

const EXIT_NO: u8 = 1;
const EXIT_FRAGMENT: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_LIMIT: u8 = 70;

/// First-order logic with a being-a-thesis modality.
///
/// Formulas use `~ & | -> <->`, `forall x.`, `exists x.`, `[]` and `<>`.
#[derive(Parser, Debug)]
#[command(name = "folbox", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it in canonical form.
    Parse {
        #[command(flatten)]
        input: FormulaInput,
        /// Print the primitive form (only ~, ->, forall, [] and atoms).
        #[arg(long)]
        primitive: bool,
    },
    /// Print the conjunctive normal form.
    Nf {
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Decide thesis-hood. Exit 0 for a thesis, 1 for a non-thesis, 2 outside the fragment.
    Decide {
        #[command(flatten)]
        input: FormulaInput,
        /// Print the per-disjunction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Report which of []A and ~[]A is a thesis.
    BoxStatus {
        #[command(flatten)]
        input: FormulaInput,
    },
    /// Evaluate a formula at a world of a structure file.
    CheckModel {
        /// Structure file (JSON); its valuation, if any, is used.
        #[arg(long)]
        structure: PathBuf,
        /// World name; defaults to the file's `world`, then the first world.
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        formula: String,
    },
    /// Check a derivation file and print a verdict per line.
    CheckProof { file: PathBuf },
    /// Write a countermodel for a non-thesis as a structure file.
    Countermodel {
        #[command(flatten)]
        input: FormulaInput,
        /// Output path; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the relative-universal structure falsifying each box-free formula.
    Universalish {
        /// One formula per argument.
        formulas: Vec<String>,
        /// File with one formula per line (blank lines and `#` comments skipped).
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FormulaInput {
    formula: Option<String>,
    /// Read the formula from a file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Fragment(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Data(_) => EXIT_DATA,
            CliError::Fragment(_) => EXIT_FRAGMENT,
            CliError::Limit(_) => EXIT_LIMIT,
        }
    }
}

impl From<DecideError> for CliError {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::Fragment(_) => CliError::Fragment(e.to_string()),
            DecideError::Oracle(oracle::OracleError::Fragment(_)) => CliError::Fragment(e.to_string()),
            DecideError::Oracle(_) => CliError::Limit(e.to_string()),
            DecideError::Undetermined(_) => CliError::Data(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn formula(text: &str) -> Result<Formula, CliError> {
    parse_formula(text.trim()).map_err(|e| CliError::Data(format!("{e}")))
}

impl FormulaInput {
    fn get(&self) -> Result<Formula, CliError> {
        match (&self.formula, &self.file) {
            (Some(s), _) => formula(s),
            (None, Some(p)) => formula(&read(p)?),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Data(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Parse { input, primitive } => {
            let a = input.get()?;
            println!("{}", print_formula(&if primitive { a.lower() } else { a }));
        }
        Command::Nf { input } => println!("{}", to_conjunctive_form(&input.get()?)),
        Command::Decide { input, trace } => {
            let d = decide(&input.get()?)?;
            if trace {
                print!("{}", d.render_trace());
            } else {
                println!("{}", if d.is_thesis() { "thesis" } else { "non-thesis" });
            }
            return Ok(if d.is_thesis() { 0 } else { EXIT_NO });
        }
        Command::BoxStatus { input } => match box_status(&input.get()?)? {
            BoxStatus::BoxThesis => println!("box-thesis"),
            BoxStatus::NegBoxThesis => println!("neg-box-thesis"),
        },
        Command::CheckModel { structure, world, formula: text } => {
            let (s, v, doc_world) =
                parse_structure_json(&read(&structure)?).map_err(|e| CliError::Data(e.to_string()))?;
            let w = match world {
                Some(name) => {
                    s.world_by_name(&name).ok_or_else(|| CliError::Data(format!("unknown world `{name}`")))?
                }
                None => doc_world.unwrap_or(WorldId(0)),
            };
            let truth = s.satisfies(&v, w, &formula(&text)?).map_err(|e| CliError::Data(e.to_string()))?;
            println!("{truth}");
        }
        Command::CheckProof { file } => {
            let d = Derivation::from_json(&read(&file)?).map_err(|e| CliError::Data(e.to_string()))?;
            let verdicts = check_proof(&d);
            for v in &verdicts {
                if v.ok {
                    println!("{}: ok", v.id);
                } else {
                    println!("{}: rejected: {}", v.id, v.reason);
                }
            }
            return Ok(if accepted(&verdicts) { 0 } else { EXIT_NO });
        }
        Command::Countermodel { input, output } => {
            let a = input.get()?;
            let d = decide(&a)?;
            let Some(c) = d.countermodel() else {
                eprintln!("{} is a thesis; it has no countermodel", print_formula(&a));
                return Ok(EXIT_NO);
            };
            emit(output.as_deref(), &to_json(&countermodel_doc(&c)))?;
        }
        Command::Universalish { formulas, file, output } => {
            let mut texts = formulas;
            if let Some(p) = &file {
                let body = read(p)?;
                texts.extend(
                    body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from),
                );
            }
            let mut seeds = Vec::with_capacity(texts.len());
            for text in &texts {
                let a = formula(text)?;
                let verdict = oracle::is_fol_thesis(&a).map_err(|e| match e {
                    oracle::OracleError::Fragment(_) => CliError::Data(format!("{text}: {e}")),
                    _ => CliError::Limit(format!("{text}: {e}")),
                })?;
                match (verdict.status, verdict.certificate) {
                    (Status::NonThesis, Some(certificate)) => seeds.push(Seed { formula: a, certificate }),
                    _ => return Err(CliError::Data(format!("{text} is a first-order thesis; nothing falsifies it"))),
                }
            }
            let s = build_relative_universal(&seeds).map_err(|e| CliError::Data(e.to_string()))?;
            emit(output.as_deref(), &to_json(&structure_doc(&s, None, None)))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("folbox: {e}");
            e.code()
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
