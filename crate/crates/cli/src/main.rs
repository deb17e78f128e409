mod args;
mod run;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use hmf_core::RunConfig;
use serde_json::json;

use args::Cli;

const EXIT_VALIDATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_IO: u8 = 74;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] hmf_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(hmf_core::Error::SupportBudget { .. }) => EXIT_BUDGET,
            CliError::Core(_) => EXIT_VALIDATION,
            CliError::Io { .. } | CliError::Csv { .. } => EXIT_IO,
            CliError::Pool(_) => EXIT_VALIDATION,
        }
    }
}

fn effective_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    run::apply_overrides(&mut cfg, &cli.command.overrides())?;
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    if cli.json.is_some() {
        cfg.json = cli.json.clone();
    }
    if cli.csv.is_some() {
        cfg.csv = cli.csv.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_csv(path: &Path, table: &run::Table) -> Result<(), CliError> {
    let wrap = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(wrap)?;
    w.write_record(&table.header).map_err(wrap)?;
    for row in &table.rows {
        w.write_record(row).map_err(wrap)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn main_inner(cli: Cli) -> Result<(), CliError> {
    let cfg = effective_config(&cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let output = pool.build()?.install(|| run::execute(&cli.command, &cfg))?;
    // the thread count never changes results, so it is left out of the report
    let mut shown = cfg.clone();
    shown.threads = None;
    let report = json!({
        "command": cli.command.name(),
        "config": shown,
        "result": output.result,
    });
    let text = serde_json::to_string_pretty(&report).expect("report serialises");
    println!("{text}");
    if let Some(path) = &cfg.json {
        write_file(path, &text)?;
    }
    match (&cfg.csv, &output.table) {
        (Some(path), Some(table)) => write_csv(path, table)?,
        (Some(_), None) => eprintln!("note: `{}` has no tabular output; --csv ignored", cli.command.name()),
        _ => {}
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_VALIDATION,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
