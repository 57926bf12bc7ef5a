//! Command-line front end: configuration loading, experiment dispatch and
//! artifact persistence.
//!
//! ```text
//! dynmass run <experiment> [--config FILE] [--set k=v]... [--out DIR] [--format csv|json] [--jobs N]
//! dynmass list [--json]
//! dynmass validate --config FILE [--set k=v]...
//! ```
//!
//! Exit status: 0 pass, 2 configuration error, 3 numerical precondition,
//! 4 tolerance failure, 1 I/O failure.

mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

pub use config::{
    parse_config, Format, GridSection, InternalSection, Loaded, PhysicalSection, RunConfig, Sources,
};
pub use output::{meta_json, persist, rows_json, write_csv, ARTIFACT_VERSION};

use crate::experiments::{self, ExperimentName, ExperimentResult};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical precondition failed: {0}")]
    Numerical(crate::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        if e.is_config() {
            CliError::Config(e.to_string())
        } else {
            CliError::Numerical(e)
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dynmass",
    version,
    about = "Quantum particles with dynamical mass-energy: reproducible experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one experiment and persist its rows and metadata.
    Run {
        experiment: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override a config key, e.g. `params.sigma=2`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Worker threads for independent sweep points.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Show the available experiments.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Check a configuration without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

/// Outcome of `run`: where the artifacts went and what was measured.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub directory: PathBuf,
    pub result: ExperimentResult,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.result.passed {
            EXIT_PASS
        } else {
            EXIT_TOLERANCE
        }
    }
}

/// Runs a loaded configuration on `jobs` threads and persists the artifacts.
pub fn run(loaded: &Loaded, jobs: Option<usize>) -> Result<RunOutcome, CliError> {
    let ctx = loaded.config.context()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("--jobs: {e}")))?;
    let result = pool.install(|| experiments::run(&ctx, &loaded.config.params))?;
    let directory = persist(loaded, &result)?;
    Ok(RunOutcome { directory, result })
}

/// One line per experiment: name, description, closed form and keys.
pub fn list_experiments() -> Vec<serde_json::Value> {
    ExperimentName::ALL
        .iter()
        .map(|e| {
            json!({
                "name": e.as_str(),
                "description": e.description(),
                "anchor": e.anchor(),
                "keys": e.keys(),
            })
        })
        .collect()
}

fn print_list(out: &mut impl Write, as_json: bool) -> std::io::Result<()> {
    if as_json {
        return writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&list_experiments()).expect("list serializes")
        );
    }
    let width = ExperimentName::ALL
        .iter()
        .map(|e| e.as_str().len())
        .max()
        .unwrap_or(0);
    for e in ExperimentName::ALL {
        writeln!(out, "{:width$}  {}", e.as_str(), e.description())?;
        writeln!(out, "{:width$}    closed form: {}", "", e.anchor())?;
        writeln!(out, "{:width$}    keys: {}", "", e.keys().join(", "))?;
    }
    Ok(())
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Result<i32, CliError> {
    match cli.command {
        Command::List { json } => {
            print_list(out, json).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(EXIT_PASS)
        }
        Command::Validate { config, set } => {
            let loaded = parse_config(&Sources {
                file: Some(&config),
                sets: &set,
                ..Sources::default()
            })?;
            let report = json!({
                "resolved_config": loaded.config,
                "defaulted_fields": loaded.defaulted,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )
            .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(EXIT_PASS)
        }
        Command::Run {
            experiment,
            config,
            set,
            out: dir,
            format,
            jobs,
        } => {
            let loaded = parse_config(&Sources {
                file: config.as_deref(),
                experiment: Some(&experiment),
                sets: &set,
                output: dir.as_deref(),
                format,
            })?;
            let outcome = run(&loaded, jobs)?;
            let r = &outcome.result;
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{verdict} {} ({} rows, {:.3} s) -> {}",
                r.name,
                r.rows.len(),
                r.runtime,
                outcome.directory.display()
            )
            .map_err(|e| CliError::Io(e.to_string()))?;
            if !r.passed {
                if let Some(i) = r.worst_row() {
                    let row = &r.rows[i];
                    writeln!(
                        out,
                        "worst row {i} {:?}: measured {:e}, predicted {:e}, abs error {:e}, tolerance {}",
                        row.labels, row.measured, row.predicted, row.abs_error, row.tolerance
                    )
                    .map_err(|e| CliError::Io(e.to_string()))?;
                }
            }
            Ok(outcome.exit_code())
        }
    }
}

/// Parses `args` and executes the command; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match dispatch(cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_has_six_rows() {
        let rows = list_experiments();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0]["name"], "exp_bargmann");
        assert!(rows[0]["anchor"].as_str().unwrap().contains("a w"));
        let mut text = Vec::new();
        print_list(&mut text, false).unwrap();
        let text = String::from_utf8(text).unwrap();
        for e in ExperimentName::ALL {
            assert!(text.contains(e.as_str()));
        }
    }

    #[test]
    fn error_categories() {
        assert_eq!(
            CliError::from(crate::Error::InvalidParams("x".into())).exit_code(),
            EXIT_CONFIG
        );
        assert_eq!(
            CliError::from(crate::Error::Aliasing {
                level: 0,
                weight: 1.0
            })
            .exit_code(),
            EXIT_NUMERICAL
        );
    }
}
