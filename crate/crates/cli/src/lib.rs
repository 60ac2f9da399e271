//! The `scv` command line. Every subcommand parses its inputs, calls one
//! `scv_core` entry point and prints the resulting report, either as text or
//! (with `--json`) as the compact serialization of the core report type.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use scv_core::axioms::{check, VerdictReport};
use scv_core::generate::{generate_instance, Model, PartyList};
use scv_core::greedy::solve_greedy;
use scv_core::io::{parse_instance, parse_set_cover, serialize_instance, ParseError};
use scv_core::pav::{maximize_with_budget, ScoreReport, SolveReport};
use scv_core::search::{encode_set_cover, sw_jr_exists_with_budget, ExistsReport};
use scv_core::{Axiom, BudgetExceeded, Committee, PavVariant, ScvInstance, ValidationReport, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "scv", version, about = "Sub-committee voting: axiom checks, rules and existence search")]
struct Cli {
    /// Print the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on stdout; only the exit code reports the outcome.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance file and report any problems.
    Validate { instance: PathBuf },
    /// Test a committee against one or all axioms.
    Check {
        #[arg(long, value_enum)]
        axiom: AxiomArg,
        #[command(flatten)]
        committee: CommitteeArg,
        instance: PathBuf,
    },
    /// Compute a committee with the greedy rule or an exact PAV variant.
    Solve {
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Write the greedy selection trace here as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        instance: PathBuf,
    },
    /// Exact PAV score of a committee.
    Score {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[command(flatten)]
        committee: CommitteeArg,
        instance: PathBuf,
    },
    /// Decide whether some committee satisfies the axiom.
    Exists {
        #[arg(long, value_enum)]
        axiom: ExistsAxiom,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        instance: PathBuf,
    },
    /// Generate an instance.
    Gen(GenArgs),
    /// Encode a Set Cover instance as an instance file.
    EncodeSetcover {
        setcover: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CommitteeArg {
    /// Comma-separated candidate names.
    #[arg(long = "committee", value_delimiter = ',', required = true)]
    names: Vec<String>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    voters: Option<usize>,
    /// Comma-separated subset sizes (uniform).
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Comma-separated quotas (uniform).
    #[arg(long, value_delimiter = ',')]
    quotas: Vec<usize>,
    /// Approval probability (uniform).
    #[arg(long = "p", alias = "probability")]
    probability: Option<f64>,
    /// Party-list spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxiomArg {
    Jr,
    SwJr,
    IwJr,
    WeakSwJr,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExistsAxiom {
    SwJr,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Greedy,
    SwPav,
    IwPav,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    SwPav,
    IwPav,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Uniform,
    PartyList,
}

impl From<VariantArg> for PavVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::SwPav => PavVariant::SwPav,
            VariantArg::IwPav => PavVariant::IwPav,
        }
    }
}

enum Failure {
    Usage(String),
    Invalid(String),
    Budget(BudgetExceeded),
}

impl From<BudgetExceeded> for Failure {
    fn from(e: BudgetExceeded) -> Self {
        Failure::Budget(e)
    }
}

/// What a subcommand produced: its JSON report, a text rendering, and the
/// exit code implied by the result.
struct Outcome {
    json: String,
    text: String,
    code: i32,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, text: String, code: i32) -> Self {
        Outcome {
            json: serde_json::to_string(report).expect("reports serialize"),
            text,
            code,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            if !cli.quiet {
                let body = if cli.json { outcome.json } else { outcome.text };
                if !body.is_empty() {
                    let _ = writeln!(stdout, "{}", body.trim_end_matches('\n'));
                }
            }
            outcome.code
        }
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Invalid(m) => (EXIT_INVALID, m),
                Failure::Budget(e) => (EXIT_BUDGET, e.to_string()),
            };
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { instance } => {
            let result = parse_instance(&read(&instance)?);
            let report = ValidationReport::from_result(&result);
            let text = match &result {
                Ok(inst) => format!(
                    "valid: {} voters, {} candidates, {} subsets, committee size {}",
                    inst.voters(),
                    inst.num_candidates(),
                    inst.num_subsets(),
                    inst.committee_size()
                ),
                Err(_) => {
                    let mut t = String::from("invalid:");
                    for issue in &report.issues {
                        t.push_str("\n  ");
                        t.push_str(issue);
                    }
                    t
                }
            };
            let code = if report.valid { EXIT_OK } else { EXIT_INVALID };
            Ok(Outcome::new(&report, text, code))
        }
        Command::Check {
            axiom,
            committee,
            instance,
        } => {
            let inst = load_instance(&instance)?;
            let w = committee_of(&inst, &committee.names)?;
            let axioms: Vec<Axiom> = match axiom {
                AxiomArg::Jr => vec![Axiom::Jr],
                AxiomArg::SwJr => vec![Axiom::SwJr],
                AxiomArg::IwJr => vec![Axiom::IwJr],
                AxiomArg::WeakSwJr => vec![Axiom::WeakSwJr],
                AxiomArg::All => Axiom::ALL.to_vec(),
            };
            let reports: Vec<VerdictReport> = axioms.iter().map(|&a| check(&inst, &w, a).report(&inst)).collect();
            let code = if reports.iter().all(|r| r.satisfied) { EXIT_OK } else { EXIT_NEGATIVE };
            let text = reports.iter().map(verdict_line).collect::<Vec<_>>().join("\n");
            Ok(match axiom {
                AxiomArg::All => Outcome::new(&reports, text, code),
                _ => Outcome::new(&reports[0], text, code),
            })
        }
        Command::Solve {
            rule,
            budget,
            trace,
            instance,
        } => {
            let inst = load_instance(&instance)?;
            let report = match rule {
                Rule::Greedy => {
                    let (w, steps) = solve_greedy(&inst);
                    if let Some(path) = &trace {
                        write_file(path, &steps.to_json_lines(&inst))?;
                    }
                    SolveReport::new(&inst, "greedy", &w, None)
                }
                Rule::SwPav | Rule::IwPav => {
                    if trace.is_some() {
                        return Err(Failure::Usage("--trace is only available for --rule greedy".into()));
                    }
                    let variant = match rule {
                        Rule::SwPav => PavVariant::SwPav,
                        _ => PavVariant::IwPav,
                    };
                    maximize_with_budget(&inst, variant, budget)?.report(&inst)
                }
            };
            let mut text = format!("committee: {}", report.committee.join(","));
            if let Some(score) = &report.score {
                text.push_str(&format!("\n{} score: {score}", report.variant));
            }
            for v in report.axioms.values() {
                text.push('\n');
                text.push_str(&verdict_line(v));
            }
            Ok(Outcome::new(&report, text, EXIT_OK))
        }
        Command::Score {
            variant,
            committee,
            instance,
        } => {
            let inst = load_instance(&instance)?;
            let w = committee_of(&inst, &committee.names)?;
            let report = ScoreReport::new(&inst, &w, variant.into());
            let text = format!("{}: {}", report.variant, report.score);
            Ok(Outcome::new(&report, text, EXIT_OK))
        }
        Command::Exists {
            axiom: ExistsAxiom::SwJr,
            budget,
            instance,
        } => {
            let inst = load_instance(&instance)?;
            let found = sw_jr_exists_with_budget(&inst, budget)?;
            let report = ExistsReport::new(&inst, found.as_ref());
            let (text, code) = match &report.committee {
                Some(names) => (names.join(","), EXIT_OK),
                None => ("none".to_string(), EXIT_NEGATIVE),
            };
            Ok(Outcome::new(&report, text, code))
        }
        Command::Gen(args) => {
            let model = gen_model(&args)?;
            let inst = generate_instance(&model, args.seed).map_err(|e| Failure::Invalid(e.to_string()))?;
            emit_instance(&inst, args.output.as_deref())
        }
        Command::EncodeSetcover { setcover, output } => {
            let sc = parse_set_cover(&read(&setcover)?).map_err(|e| invalid(&setcover, e))?;
            let inst = encode_set_cover(&sc).map_err(|e| Failure::Invalid(e.to_string()))?;
            emit_instance(&inst, output.as_deref())
        }
    }
}

fn gen_model(args: &GenArgs) -> Result<Model, Failure> {
    match args.model {
        ModelArg::Uniform => {
            let missing = |flag: &str| Failure::Usage(format!("--model uniform needs {flag}"));
            if args.sizes.is_empty() {
                return Err(missing("--sizes"));
            }
            if args.quotas.is_empty() {
                return Err(missing("--quotas"));
            }
            Ok(Model::Uniform {
                voters: args.voters.ok_or_else(|| missing("--voters"))?,
                sizes: args.sizes.clone(),
                quotas: args.quotas.clone(),
                approval_probability: args.probability.ok_or_else(|| missing("--p"))?,
            })
        }
        ModelArg::PartyList => {
            let path = args
                .spec
                .as_ref()
                .ok_or_else(|| Failure::Usage("--model party-list needs --spec".into()))?;
            let spec: PartyList = serde_json::from_str(&read(path)?)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            Ok(Model::PartyList(spec))
        }
    }
}

/// Writes the instance to `output`, or to stdout when there is none.
fn emit_instance(inst: &ScvInstance, output: Option<&Path>) -> Result<Outcome, Failure> {
    let text = serialize_instance(inst);
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome {
                json: String::new(),
                text: format!("wrote {}", path.display()),
                code: EXIT_OK,
            })
        }
        None => Ok(Outcome {
            json: text.clone(),
            text,
            code: EXIT_OK,
        }),
    }
}

fn verdict_line(v: &VerdictReport) -> String {
    match &v.witness {
        None => format!("{}: pass", v.axiom),
        Some(w) => {
            let mut line = format!(
                "{}: FAIL, voters {:?} unrepresented despite {}",
                v.axiom,
                w.voters,
                w.candidates.join(",")
            );
            if let Some(s) = &w.subset {
                line.push_str(&format!(" in {s}"));
            }
            line
        }
    }
}

fn committee_of(inst: &ScvInstance, names: &[String]) -> Result<Committee, Failure> {
    Committee::from_names(inst, names).map_err(|e| Failure::Invalid(format!("committee: {e}")))
}

fn load_instance(path: &Path) -> Result<ScvInstance, Failure> {
    parse_instance(&read(path)?).map_err(|e| invalid(path, e))
}

fn invalid(path: &Path, e: ParseError) -> Failure {
    Failure::Invalid(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}
