//! Command-line front end: acceptance checks, convergence studies and CSV
//! export. Exit status is 0 when every executed check passes, 1 when one
//! fails and 2 on configuration errors.

pub mod checks;
pub mod config;
pub mod export;
pub mod report;
pub mod study;

use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use checks::{run_check, statement, CHECK_IDS};
pub use config::{CheckConfig, Profile, PROFILE_ENV};
pub use export::{export_distribution, sample_distribution, Model, Table};
pub use report::{CheckReport, Item};
pub use study::{convergence_study, study_csv, StudyParam, StudyRow};

use crate::error::{Error, Result};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "perimac",
    version,
    about = "Exact checks for periodic Macdonald-type measures and lattice models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one acceptance check (A1..A14) or `all`, emitting a JSON report.
    Verify {
        check_id: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock runtime in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Tabulate a check's observable against one truncation parameter.
    Study {
        check_id: String,
        /// One of K, L, nodes, order.
        #[arg(long)]
        param: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a joint table (phl, quasi, shifted) or the stationary study as CSV.
    Export {
        table: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw seeded samples (phl or sixvertex) and tally them as CSV.
    Sample {
        model: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the checks with their statements.
    List,
}

fn load(id: &str, path: Option<&Path>) -> Result<CheckConfig> {
    let profile = Profile::from_env()?;
    match path {
        Some(p) => CheckConfig::load(p, Some(id), profile),
        None => Ok(CheckConfig::new(id, profile)),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => report::write_atomic(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn verify(id: &str, config: Option<&Path>, out: Option<&Path>, timing: bool) -> Result<bool> {
    let ids: Vec<&str> = if id.eq_ignore_ascii_case("all") {
        CHECK_IDS.to_vec()
    } else {
        vec![id]
    };
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        let mut r = run_check(&load(id, config)?)?;
        if !timing {
            r.runtime_ms = None;
        }
        eprintln!("{} {}", r.check_id, if r.pass { "PASS" } else { "FAIL" });
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    let json = match reports.as_slice() {
        [one] => one.to_json(),
        many => serde_json::to_string_pretty(many).expect("reports serialise"),
    };
    emit(out, &(json + "\n"))?;
    Ok(pass)
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            check_id,
            config,
            out,
            timing,
        } => verify(&check_id, config.as_deref(), out.as_deref(), timing),
        Command::Study {
            check_id,
            param,
            steps,
            config,
            out,
        } => {
            let param: StudyParam = param.parse()?;
            let rows = convergence_study(&load(&check_id, config.as_deref())?, param, steps)?;
            emit(out.as_deref(), &study_csv(param, &rows)?)?;
            Ok(true)
        }
        Command::Export { table, config, out } => {
            let table: Table = table.parse()?;
            emit(
                out.as_deref(),
                &export_distribution(&load("export", config.as_deref())?, table)?,
            )?;
            Ok(true)
        }
        Command::Sample { model, config, out } => {
            let model: Model = model.parse()?;
            emit(
                out.as_deref(),
                &sample_distribution(&load("sample", config.as_deref())?, model)?,
            )?;
            Ok(true)
        }
        Command::List => {
            let listing: String = CHECK_IDS
                .iter()
                .map(|id| format!("{id:>4}  {}\n", statement(id).unwrap_or_default()))
                .collect();
            emit(None, &listing)?;
            Ok(true)
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config { .. } | Error::Domain(_) => EXIT_CONFIG,
                _ => EXIT_FAIL,
            }
        }
    }
}
