use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fast_core::ast::{Formula, VarName};
use fast_core::axioms::{axiom_formula, main_instance, sep_instance, sub_instance, AxiomName};
use fast_core::expander::{expand_finite_family, ExpandError};
use fast_core::kernel::{check_proof, ProofScript, Verdict};
use fast_core::parser::{parse_fast_file, parse_formula_spanned, ParseError};
use fast_core::semantics::{find_countermodel_with, parse_model_spec, CountermodelError, EvalError, EvalOptions, Evaluator, Model, DEFAULT_BUDGET};

const EXIT_REJECTED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_NO_INPUT: u8 = 66;

#[derive(Parser)]
#[command(name = "fast", version, about = "Parse, check and evaluate formulas of a finitely axiomatized set theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a formula file in canonical form.
    Fmt { file: PathBuf },
    /// Print one of the eleven axioms.
    Axiom {
        name: String,
        #[arg(long)]
        print: bool,
    },
    /// Check a .fastproof script.
    Check { file: PathBuf },
    /// Evaluate a formula (its universal closure) in a finite model.
    Eval {
        /// `vrank:<k>` or a model spec file.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        file: PathBuf,
    },
    /// Eliminate family binders over literal index sets.
    Expand { file: PathBuf },
    /// Search digraphs for a model falsifying the formula.
    Countermodel {
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        file: PathBuf,
    },
    /// Print a scheme instance for a parameter formula.
    Scheme {
        kind: SchemeKind,
        #[arg(long)]
        phi: PathBuf,
        /// Distinguished variables: `z` for sep, `x,y` for sub and main.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeKind {
    Sep,
    Sub,
    Main,
}

/// A failure that maps to an exit code and a diagnostic on stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_NO_INPUT, format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, src: &str, e: &ParseError) -> Failure {
    let (line, col) = e.line_col(src);
    Failure::new(EXIT_PARSE, format!("{}:{line}:{col}: {}", path.display(), e.message))
}

fn formula_file(path: &Path) -> Result<(String, Formula), Failure> {
    let src = read(path)?;
    let phi = parse_fast_file(&src).map_err(|e| parse_failure(path, &src, &e))?;
    Ok((src, phi))
}

fn eval_failure(e: EvalError) -> Failure {
    match e {
        EvalError::BudgetExceeded(_) => Failure::new(EXIT_BUDGET, e.to_string()),
        _ => Failure::new(EXIT_REJECTED, e.to_string()),
    }
}

fn load_model(spec: &str) -> Result<Model, Failure> {
    if spec.starts_with("vrank:") {
        return parse_model_spec(spec).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()));
    }
    let path = Path::new(spec);
    let text = read(path)?;
    parse_model_spec(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Fmt { file } => {
            let (_, phi) = formula_file(&file)?;
            Ok((phi.to_string(), 0))
        }
        Command::Axiom { name, print: _ } => {
            let name: AxiomName = name.parse().map_err(|e: fast_core::axioms::UnknownAxiom| Failure::new(EXIT_USAGE, e.to_string()))?;
            Ok((axiom_formula(name).to_string(), 0))
        }
        Command::Check { file } => {
            let src = read(&file)?;
            let script = ProofScript::parse(&src).map_err(|e| parse_failure(&file, &src, &e))?;
            let verdict = check_proof(&script);
            let code = if verdict == Verdict::Accepted { 0 } else { EXIT_REJECTED };
            Ok((verdict.to_string(), code))
        }
        Command::Eval { model, budget, file } => {
            let (_, phi) = formula_file(&file)?;
            let model = load_model(&model)?;
            let v = Evaluator::with_options(&model, EvalOptions { budget }).holds(&phi).map_err(eval_failure)?;
            Ok((v.to_string(), 0))
        }
        Command::Expand { file } => {
            let src = read(&file)?;
            let (phi, spans) = parse_formula_spanned(&src).map_err(|e| parse_failure(&file, &src, &e))?;
            match expand_finite_family(&phi) {
                Ok(out) => Ok((out.to_string(), 0)),
                Err(ExpandError::NotLiteral(pos)) => {
                    let span = spans.lookup(&pos);
                    let e = ExpandError::NotLiteral(pos);
                    let (line, col) = ParseError { span, message: String::new() }.line_col(&src);
                    Err(Failure::new(EXIT_REJECTED, format!("{}:{line}:{col}: {}: {e}", file.display(), e.code())))
                }
                Err(e) => Err(Failure::new(EXIT_REJECTED, format!("{}: {}: {e}", file.display(), e.code()))),
            }
        }
        Command::Countermodel { max_size, budget, file } => {
            let (_, phi) = formula_file(&file)?;
            match find_countermodel_with(&phi, max_size, EvalOptions { budget }) {
                Ok(Some(m)) => Ok((m.to_spec(), 0)),
                Ok(None) => Ok(("none".into(), 0)),
                Err(e @ CountermodelError::TooManyNodes(_)) => Err(Failure::new(EXIT_USAGE, e.to_string())),
                Err(CountermodelError::Eval(e)) => Err(eval_failure(e)),
            }
        }
        Command::Scheme { kind, phi, vars } => {
            let (_, phi) = formula_file(&phi)?;
            let vars = vars
                .iter()
                .map(|v| VarName::new(v.trim()).map_err(|e| Failure::new(EXIT_USAGE, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let out = match (kind, vars.as_slice()) {
                (SchemeKind::Sep, [z]) => sep_instance(&phi, z),
                (SchemeKind::Sub, [x, y]) => sub_instance(&phi, x, y),
                (SchemeKind::Main, [x, y]) => main_instance(&phi, x, y),
                (SchemeKind::Sep, _) => return Err(Failure::new(EXIT_USAGE, "sep takes one variable")),
                _ => return Err(Failure::new(EXIT_USAGE, "sub and main take two variables `x,y`")),
            };
            out.map(|f| (f.to_string(), 0)).map_err(|e| Failure::new(EXIT_REJECTED, e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            println!("{}", out.trim_end_matches('\n'));
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
