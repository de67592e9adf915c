use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use ecii_cli::{
    bench_table, cmd_materialize, cmd_run, cmd_verify, configure_threads, run_bench, CliError, RunOptions,
};
use ecii_core::induce::SearchConfig;

#[derive(Parser)]
#[command(name = "ecii", version, about = "Concept induction over description-logic knowledge bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn class expressions for the examples in a job config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Result file; defaults to `<config stem>.results.tsv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Score every solution with the reference oracle as well.
        #[arg(long)]
        alpha3: bool,
        /// Load a materialization written by `ecii materialize`.
        #[arg(long)]
        mat: Option<PathBuf>,
        #[arg(long)]
        max_solutions: Option<usize>,
        #[arg(long)]
        quiet: bool,
    },
    /// Re-score a result file with the reference oracle.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the pipeline on synthetic family knowledge bases.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enrich a knowledge base and write its materialization.
    Materialize {
        kb: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = SearchConfig::default().n1)]
        n1: usize,
        #[arg(long, default_value_t = SearchConfig::default().n2)]
        n2: usize,
        #[arg(long, default_value_t = SearchConfig::default().max_expressions)]
        max_expressions: usize,
    },
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run {
            config,
            out,
            alpha3,
            mat,
            max_solutions,
            quiet,
        } => cmd_run(&RunOptions {
            config,
            out,
            alpha3,
            mat,
            max_solutions,
            quiet,
        })
        .map(drop),
        Command::Verify { config, results, out } => cmd_verify(&config, &results, out.as_deref()).map(drop),
        Command::Bench { sizes, reps, out } => {
            let table = bench_table(&run_bench(&sizes, reps, &SearchConfig::default())?);
            match out {
                Some(path) => std::fs::write(&path, table)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
                None => {
                    print!("{table}");
                    Ok(())
                }
            }
        }
        Command::Materialize {
            kb,
            out,
            n1,
            n2,
            max_expressions,
        } => cmd_materialize(
            &kb,
            &out,
            &SearchConfig {
                n1,
                n2,
                max_expressions,
                ..SearchConfig::default()
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let quiet = matches!(cli.command, Command::Run { quiet: true, .. });
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if quiet { "error" } else { "warn" }))
        .init();

    let result = std::panic::catch_unwind(|| {
        configure_threads(std::env::var("ECII_THREADS").ok().as_deref())?;
        dispatch(cli.command)
    });
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(3)
        }
    }
}
