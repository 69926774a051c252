//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bundled;
use crate::report::{Report, Status};
use crate::run::{run_scenario, Overrides};
use crate::scenario::{Scenario, ScenarioError, ScenarioFile};

#[derive(Debug, Parser)]
#[command(
    name = "sugeno",
    version,
    about = "Generalized Sugeno integrals and Chebyshev type inequalities"
)]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Grid step for sampled checks, in (0, 1].
    #[arg(long, global = true)]
    pub grid: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Point budget for counterexample searches.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Slack allowed before an inequality counts as violated.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Accept dependence levels outside the measure's range.
    #[arg(long, global = true)]
    pub allow_range_escape: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FileArgs {
    /// Scenario file.
    pub file: PathBuf,
    /// Run only the scenario with this name.
    #[arg(long)]
    pub scenario: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the integrals in a scenario file.
    Integrate(FileArgs),
    /// Check dependence of function pairs or measures.
    CheckDependence(FileArgs),
    /// Check scalar conditions on fusion operations.
    CheckCondition(FileArgs),
    /// Check Chebyshev type inequalities.
    CheckInequality(FileArgs),
    /// Search for a counterexample to the scalar condition.
    SearchCounterexample(FileArgs),
    /// Run a bundled scenario.
    Repro {
        /// Scenario name; see `list-scenarios`.
        name: Option<String>,
        /// Run every bundled scenario.
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
    /// List bundled scenarios.
    ListScenarios,
}

impl Command {
    /// Scenario kind accepted by a file subcommand.
    fn kind(&self) -> Option<&'static str> {
        match self {
            Command::Integrate(_) => Some("integrate"),
            Command::CheckDependence(_) => Some("dependence"),
            Command::CheckCondition(_) => Some("condition"),
            Command::CheckInequality(_) => Some("inequality"),
            Command::SearchCounterexample(_) => Some("search"),
            _ => None,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn failure(message: String) -> Output {
        Output {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output::failure(text)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Output::failure(format!("error: {e}\n")),
    }
}

fn overrides(cli: &Cli) -> Result<Overrides, String> {
    if let Some(g) = cli.grid {
        if !(g > 0.0 && g <= 1.0) {
            return Err(format!("--grid must lie in (0, 1], got {g}"));
        }
    }
    if let Some(t) = cli.tolerance {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(format!(
                "--tolerance must be finite and non-negative, got {t}"
            ));
        }
    }
    if cli.budget == Some(0) {
        return Err("--budget must be positive".to_string());
    }
    Ok(Overrides {
        grid: cli.grid,
        seed: cli.seed,
        budget: cli.budget,
        tolerance: cli.tolerance,
        allow_range_escape: cli.allow_range_escape,
    })
}

fn load(args: &FileArgs, kind: &str) -> Result<Vec<Scenario>, ScenarioError> {
    let origin = args.file.display().to_string();
    let text = std::fs::read_to_string(&args.file).map_err(|e| ScenarioError::Io {
        origin: origin.clone(),
        message: e.to_string(),
    })?;
    let file = ScenarioFile::parse(&origin, &text)?;
    let selected: Vec<Scenario> = match &args.scenario {
        Some(name) => {
            let s = file
                .scenarios
                .into_iter()
                .find(|s| &s.name == name)
                .ok_or_else(|| ScenarioError::Unknown(name.clone()))?;
            if s.body.kind() != kind {
                return Err(ScenarioError::Invalid {
                    scenario: s.name.clone(),
                    field: "kind".to_string(),
                    message: format!("is `{}`, this subcommand runs `{kind}`", s.body.kind()),
                });
            }
            vec![s]
        }
        None => file
            .scenarios
            .into_iter()
            .filter(|s| s.body.kind() == kind)
            .collect(),
    };
    if selected.is_empty() {
        return Err(ScenarioError::Io {
            origin,
            message: format!("no scenario of kind `{kind}`"),
        });
    }
    Ok(selected)
}

fn execute(cli: &Cli) -> Result<Output, String> {
    let o = overrides(cli)?;
    let scenarios = match &cli.command {
        Command::ListScenarios => return Ok(list(cli.json)),
        Command::Repro { name, all } => match (name, all) {
            (_, true) => bundled::all(),
            (Some(name), false) => vec![bundled::find(name)
                .ok_or_else(|| ScenarioError::Unknown(name.clone()).to_string())?],
            (None, false) => return Err("give a scenario name or --all".to_string()),
        },
        Command::Integrate(a)
        | Command::CheckDependence(a)
        | Command::CheckCondition(a)
        | Command::CheckInequality(a)
        | Command::SearchCounterexample(a) => {
            let kind = cli.command.kind().expect("file subcommands have a kind");
            load(a, kind).map_err(|e| e.to_string())?
        }
    };
    let reports: Vec<Report> = scenarios.iter().map(|s| run_scenario(s, &o)).collect();
    Ok(render(&reports, cli.json))
}

/// Worst exit code across reports: hypothesis failures and errors outrank
/// violations, which outrank passes.
fn combined_code(reports: &[Report]) -> i32 {
    reports.iter().map(|r| r.exit_code).max().unwrap_or(0)
}

pub fn render(reports: &[Report], json: bool) -> Output {
    let code = combined_code(reports);
    let stdout = if json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(reports)
        };
        text.expect("reports serialize") + "\n"
    } else {
        reports
            .iter()
            .map(Report::text)
            .collect::<Vec<_>>()
            .join("\n")
    };
    let stderr = reports
        .iter()
        .filter(|r| r.status == Status::Error)
        .map(|r| format!("error: {}\n", r.summary))
        .collect();
    Output {
        code,
        stdout,
        stderr,
    }
}

fn list(json: bool) -> Output {
    let scenarios = bundled::all();
    let stdout = if json {
        let items: Vec<_> = scenarios
            .iter()
            .map(|s| {
                serde_json::json!({
                    "name": s.name,
                    "kind": s.body.kind(),
                    "description": s.description,
                })
            })
            .collect();
        serde_json::to_string_pretty(&items).expect("list serializes") + "\n"
    } else {
        let width = scenarios.iter().map(|s| s.name.len()).max().unwrap_or(0);
        scenarios
            .iter()
            .map(|s| {
                format!(
                    "{:width$}  {:12}  {}\n",
                    s.name,
                    s.body.kind(),
                    s.description
                )
            })
            .collect()
    };
    Output {
        code: 0,
        stdout,
        stderr: String::new(),
    }
}
