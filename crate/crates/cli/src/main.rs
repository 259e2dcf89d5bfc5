use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cluster_cli::{
    cmd_enumerate, cmd_ideal, cmd_mutate, cmd_present, cmd_presets, cmd_verify, parse_order, parse_walk, server,
    CliError, IdealTask, Output,
};
use cluster_core::seed::DEFAULT_SEED_BUDGET;

/// Exact computations with seeds, seed patterns and exchange ideals.
#[derive(Parser)]
#[command(name = "cluster", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the named seeds and verifiable models.
    Presets,
    /// Mutate a seed along a walk of 1-based vertices and print it as JSON.
    Mutate {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        preset: Option<String>,
        /// Seed or quiver JSON, as printed by `mutate`.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        #[arg(long, default_value = "")]
        walk: String,
    },
    /// Enumerate the seed pattern breadth first.
    Enumerate {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = DEFAULT_SEED_BUDGET)]
        budget: usize,
    },
    /// Run a registered model verification.
    Verify {
        model: String,
        #[arg(long)]
        json: bool,
    },
    /// Gröbner bases, membership and saturation.
    Ideal {
        #[command(subcommand)]
        task: IdealCommand,
    },
    /// Formal variables, exchange ideal and saturation for a walk.
    Present {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        walk: String,
    },
    /// Serve the session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(clap::Args)]
struct IdealArgs {
    /// Comma-separated variable names.
    #[arg(long)]
    vars: String,
    /// Generators separated by `;`.
    #[arg(long)]
    gens: String,
    #[arg(long, default_value = "degrevlex")]
    order: String,
}

#[derive(Subcommand)]
enum IdealCommand {
    Groebner {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    Member {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
    },
    Saturate {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        monomial: String,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Presets => Ok(cmd_presets()),
        Command::Mutate { preset, file, walk } => {
            let walk = parse_walk(&walk)?;
            let text = match &file {
                Some(path) => Some(
                    std::fs::read_to_string(path)
                        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
                ),
                None => None,
            };
            cmd_mutate(preset.as_deref(), text.as_deref(), &walk)
        }
        Command::Enumerate { preset, budget } => cmd_enumerate(&preset, budget),
        Command::Verify { model, json } => cmd_verify(&model, json),
        Command::Ideal { task } => {
            let (args, task) = match task {
                IdealCommand::Groebner { ideal } => (ideal, IdealTask::Groebner),
                IdealCommand::Member { ideal, poly } => (ideal, IdealTask::Member(poly)),
                IdealCommand::Saturate { ideal, monomial } => (ideal, IdealTask::Saturate(monomial)),
            };
            cmd_ideal(&args.vars, &args.gens, parse_order(&args.order)?, &task)
        }
        Command::Present { preset, walk } => cmd_present(&preset, &parse_walk(&walk)?),
        Command::Serve { port, host } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Runtime(e.to_string()))?;
            rt.block_on(server::serve(&host, port))?;
            Ok(Output { text: String::new(), code: 0 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            if !out.text.is_empty() {
                // A closed pipe (e.g. `| head`) is not an error of the command.
                let _ = writeln!(std::io::stdout().lock(), "{}", out.text);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
