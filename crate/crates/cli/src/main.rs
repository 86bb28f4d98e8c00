mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// An error caused by the invocation rather than the computation; exit 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

const THREADS_VAR: &str = "RACK_COLLAPSE_THREADS";

fn configure_threads() -> Result<(), UsageError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        UsageError(format!(
            "{THREADS_VAR} must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| UsageError(e.to_string()))
}

fn run(cli: &Cli) -> anyhow::Result<commands::Output> {
    configure_threads()?;
    let cfg = cli.global.run_config();
    match &cli.command {
        Command::Group { action } => commands::group(action, &cfg),
        Command::Classes { group } => commands::list_classes(group, &cfg),
        Command::Classify {
            group,
            filter,
            strategy,
        } => commands::run_classify(group, filter, *strategy, &cfg),
        Command::Braiding {
            group,
            h,
            class,
            abelian,
        } => commands::braiding(*group, *h, *class, *abelian, &cfg),
        Command::VerifyPaper { h_max } => commands::verify_paper(*h_max, &cfg),
        Command::Rack { action } => commands::rack(action, &cfg),
    }
}

fn emit(cli: &Cli, out: &commands::Output) -> anyhow::Result<()> {
    let mut text = String::new();
    for doc in &out.documents {
        let s = if cli.global.pretty {
            serde_json::to_string_pretty(doc)?
        } else {
            serde_json::to_string(doc)?
        };
        text.push_str(&s);
        text.push('\n');
    }
    match &cli.global.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = run(&cli).and_then(|out| emit(&cli, &out).map(|()| out.success));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.chain().any(|c| c.is::<UsageError>());
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
