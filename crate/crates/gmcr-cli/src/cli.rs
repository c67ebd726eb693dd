//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation/parse/analysis error, 2 usage
//! error, 3 oracle discrepancy.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use gmcr_core::cases::{load_case, CaseId};
use gmcr_core::model::{ConflictModel, DmId, LogicMode};
use gmcr_core::oracle::oracle_check;
use gmcr_core::reach::{export_graph, reachable};
use gmcr_core::stability::{analyze, compare_reports, AnalyzeError};
use gmcr_core::TruthValue;

use crate::format::{parse_mapping, parse_model_with_policy, serialize_model, PolicyKind};
use crate::render::{render_comparison, render_report, OutputFormat};

impl clap::ValueEnum for PolicyKind {
    fn value_variants<'a>() -> &'a [Self] {
        &[PolicyKind::Fixed, PolicyKind::Drift, PolicyKind::Explicit]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

#[derive(Parser)]
#[command(
    name = "gmcr",
    version,
    about = "Stability analysis for graph-model conflicts over binary or four-valued option frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and report every validation finding.
    Validate { file: PathBuf },
    /// Print the state table of a model.
    States { file: PathBuf },
    /// Print each decision maker's reachable list from every state.
    Reach {
        file: PathBuf,
        /// Restrict the listing to one decision maker.
        #[arg(long)]
        dm: Option<usize>,
        /// Override the file's move policy.
        #[arg(long)]
        policy: Option<PolicyKind>,
    },
    /// Run the full stability analysis and print the equilibrium grid.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
        /// Override the file's move policy.
        #[arg(long)]
        policy: Option<PolicyKind>,
    },
    /// Compare the equilibria of two models under a state mapping.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Mapping file: lines of `s<a> -> s<b>`.
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Export the move graph.
    Export {
        file: PathBuf,
        /// Emit DOT (required; the only supported format).
        #[arg(long)]
        dot: bool,
        /// Restrict the arcs to one decision maker.
        #[arg(long)]
        dm: Option<usize>,
    },
    /// Print a built-in case as a model file.
    Case {
        /// One of: pd-binary, pd-b4-16, pd-b4-9, elmira-binary,
        /// elmira-b4, russia-ukraine-b4.
        id: String,
        /// Write `<id>.gmcr` into the current directory instead.
        #[arg(long)]
        emit_file: bool,
    },
    /// Re-check an analysis against the naive brute-force oracle.
    Oracle { file: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))
}

fn load_model(path: &Path, policy: Option<PolicyKind>) -> Result<ConflictModel, Failure> {
    let text = read_file(path)?;
    parse_model_with_policy(&text, policy)
        .map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn analyzed(model: &ConflictModel) -> Result<gmcr_core::StabilityReport, Failure> {
    analyze(model).map_err(|e| match e {
        AnalyzeError::Invalid(diags) => {
            let mut msg = String::from("model failed validation:");
            for d in diags {
                let _ = write!(msg, "\n  {d}");
            }
            Failure::new(1, msg)
        }
        other => Failure::new(1, other.to_string()),
    })
}

fn state_row(model: &ConflictModel, assignment: &[TruthValue]) -> String {
    assignment
        .iter()
        .map(|v| match model.logic {
            LogicMode::Binary => {
                if *v == TruthValue::True { "Y".to_string() } else { "N".to_string() }
            }
            LogicMode::B4 => v.symbol().to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Validate { file } => {
            let model = load_model(&file, None)?;
            let diagnostics = model.validate();
            if diagnostics.is_empty() {
                println!(
                    "valid: {} decision makers, {} options, {} states, {} policy",
                    model.dms.len(),
                    model.options.len(),
                    model.space.len(),
                    model.policy.kind_name()
                );
                Ok(0)
            } else {
                let mut msg = format!("{}:", file.display());
                for d in diagnostics {
                    let _ = write!(msg, "\n  {d}");
                }
                Err(Failure::new(1, msg))
            }
        }
        Command::States { file } => {
            let model = load_model(&file, None)?;
            for state in model.space.states() {
                println!("{} = {}", state.id, state_row(&model, &state.assignment));
            }
            Ok(0)
        }
        Command::Reach { file, dm, policy } => {
            let model = load_model(&file, policy)?;
            let selected: Vec<_> = model
                .dms
                .iter()
                .filter(|d| dm.is_none_or(|want| d.id.0 == want))
                .cloned()
                .collect();
            if selected.is_empty() {
                return Err(Failure::new(1, format!("unknown decision maker {}", dm.unwrap())));
            }
            for decision_maker in selected {
                println!("dm {} ({})", decision_maker.id, decision_maker.name);
                for s in model.space.ids() {
                    let row = reachable(&model, decision_maker.id, s)
                        .map_err(|e| Failure::new(1, e.to_string()))?;
                    if row.is_empty() {
                        println!("  {s} ->");
                    } else {
                        let list = row.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
                        println!("  {s} -> {list}");
                    }
                }
            }
            Ok(0)
        }
        Command::Analyze { file, format, policy } => {
            let model = load_model(&file, policy)?;
            let report = analyzed(&model)?;
            print!("{}", render_report(&report, format));
            Ok(0)
        }
        Command::Compare { file_a, file_b, map, format } => {
            let model_a = load_model(&file_a, None)?;
            let model_b = load_model(&file_b, None)?;
            let mapping_text = read_file(&map)?;
            let mapping = parse_mapping(&mapping_text)
                .map_err(|e| Failure::new(1, format!("{}: {e}", map.display())))?;
            let report_a = analyzed(&model_a)?;
            let report_b = analyzed(&model_b)?;
            let cmp = compare_reports(&report_a, &report_b, &mapping)
                .map_err(|e| Failure::new(1, e.to_string()))?;
            print!("{}", render_comparison(&cmp, format));
            Ok(0)
        }
        Command::Export { file, dot, dm } => {
            if !dot {
                return Err(Failure::new(2, "export requires --dot"));
            }
            let model = load_model(&file, None)?;
            let graph = export_graph(&model, dm.map(DmId))
                .map_err(|e| Failure::new(1, e.to_string()))?;
            print!("{graph}");
            Ok(0)
        }
        Command::Case { id, emit_file } => {
            let case: CaseId = id.parse().map_err(|_| {
                let names: Vec<_> = CaseId::ALL.iter().map(|c| c.name()).collect();
                Failure::new(2, format!("unknown case `{id}`; expected one of: {}", names.join(", ")))
            })?;
            let text = serialize_model(&load_case(case));
            if emit_file {
                let path = format!("{}.gmcr", case.name());
                std::fs::write(&path, &text)
                    .map_err(|e| Failure::new(1, format!("cannot write {path}: {e}")))?;
                println!("{path}");
            } else {
                print!("{text}");
            }
            Ok(0)
        }
        Command::Oracle { file } => {
            let model = load_model(&file, None)?;
            let discrepancies = oracle_check(&model).map_err(|e| Failure::new(1, e.to_string()))?;
            if discrepancies.is_empty() {
                println!("oracle agrees: no discrepancies");
                Ok(0)
            } else {
                for d in &discrepancies {
                    println!("{d}");
                }
                println!("{} discrepancies", discrepancies.len());
                Ok(3)
            }
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here; real usage errors exit 2.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}
