use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use langkit::cli::{self, Command, Report, RunOptions, Scenario};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "langkit", version, about = "Exact bookkeeping for Galois invariance of central L-values")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Scenario file; relative paths fall back to the scenario library.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// JSON list of extra ledger entries applied after the scenario's own.
    #[arg(long, global = true)]
    ledger_override: Option<PathBuf>,
    /// Reject runs that rely on an interpretation choice.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, env = cli::SCENARIO_DIR_ENV, default_value = "scenarios")]
    library: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pole of the Eisenstein series at s = 1/2.
    Pole { file: Option<PathBuf> },
    /// Cuspidal-support classification of the residual parameter.
    Classify { file: Option<PathBuf> },
    /// Root-number sign or epsilon ratio.
    RootNumber { file: Option<PathBuf> },
    /// Normalization factors of the intertwining operator and holomorphy verdict.
    Normalize { file: Option<PathBuf> },
    /// Kostant weights of nilradical cohomology.
    Kostant { file: Option<PathBuf> },
    /// Aut(C) action on a Satake class.
    SatakeAct { file: Option<PathBuf> },
    /// Full theorem pipeline; `--all` runs every scenario of the library.
    CheckScenario {
        file: Option<PathBuf>,
        #[arg(long)]
        all: bool,
    },
    /// Brute-force oracle suites.
    Selftest,
    /// Print a scenario in canonical form.
    Fmt { file: Option<PathBuf> },
}

fn emit(r: &Report, f: Format) {
    match f {
        Format::Json => print!("{}", r.to_json()),
        Format::Text => print!("{}", r.to_text()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut opts = RunOptions { strict: args.strict, ..Default::default() };
    let (cmd, file) = match &args.command {
        Cmd::Pole { file } => (Some(Command::Pole), file),
        Cmd::Classify { file } => (Some(Command::Classify), file),
        Cmd::RootNumber { file } => (Some(Command::RootNumber), file),
        Cmd::Normalize { file } => (Some(Command::Normalize), file),
        Cmd::Kostant { file } => (Some(Command::Kostant), file),
        Cmd::SatakeAct { file } => (Some(Command::SatakeAct), file),
        Cmd::CheckScenario { file, .. } => (Some(Command::CheckScenario), file),
        Cmd::Selftest => (Some(Command::Selftest), &None),
        Cmd::Fmt { file } => (None, file),
    };
    let cmd_for_errors = cmd.unwrap_or(Command::CheckScenario);
    if let Some(p) = &args.ledger_override {
        match cli::load_overrides(p) {
            Ok(o) => opts.extra_overrides = o,
            Err(e) => {
                emit(&cli::error_report(cmd_for_errors, &e), args.format);
                return ExitCode::FAILURE;
            }
        }
    }

    if let Cmd::CheckScenario { all: true, .. } = args.command {
        let files = match cli::library_files(&args.library) {
            Ok(f) => f,
            Err(e) => {
                emit(&cli::error_report(Command::CheckScenario, &e), args.format);
                return ExitCode::FAILURE;
            }
        };
        let mut ok = true;
        for f in files {
            let r = match Scenario::load(&f) {
                Ok(s) => cli::run(Command::CheckScenario, Some(&s), &opts),
                Err(e) => cli::error_report(Command::CheckScenario, &e),
            };
            ok &= r.ok;
            emit(&r, args.format);
        }
        return if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }

    let path = file.clone().or_else(|| args.scenario.clone());
    let scenario = match &path {
        None => None,
        Some(p) => match Scenario::load(&cli::resolve_scenario_path(p, Some(&args.library))) {
            Ok(s) => Some(s),
            Err(e) => {
                emit(&cli::error_report(cmd_for_errors, &e), args.format);
                return ExitCode::FAILURE;
            }
        },
    };
    let Some(cmd) = cmd else {
        return match scenario {
            Some(s) => {
                print!("{}", s.to_canonical());
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("fmt needs a scenario file");
                ExitCode::FAILURE
            }
        };
    };
    let report = cli::run(cmd, scenario.as_ref(), &opts);
    emit(&report, args.format);
    ExitCode::from(report.exit_code() as u8)
}
