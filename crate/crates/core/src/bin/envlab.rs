use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use envlab::workbench::{corpus_entry, corpus_names, emit_report, parse_input, parse_str, run_tasks, Format, RunOptions};
use envlab::Error;

#[derive(Parser)]
#[command(name = "envlab", version, about = "Right abelian envelopes of finite exact categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and resolve an input file.
    Validate { file: PathBuf },
    /// Run the tasks of an input file.
    Run {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "human")]
        format: FormatArg,
    },
    /// Inspect the bundled fixtures.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    List,
    Show { name: String },
}

fn input_error(e: &Error) -> ExitCode {
    eprintln!("{e}");
    ExitCode::from(2)
}

fn load(file: &PathBuf) -> Result<envlab::workbench::WorkbenchInput, Error> {
    // fixture names are accepted in place of paths
    match corpus_entry(&file.to_string_lossy()) {
        Some(text) if !file.exists() => parse_str(text),
        _ => parse_input(file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file } => match load(&file) {
            Ok(input) => {
                println!("ok: {} ({} modules, {} structures, {} tasks)", input.name, input.modules.len(), input.structures.len(), input.tasks.len());
                ExitCode::SUCCESS
            }
            Err(e) => input_error(&e),
        },
        Command::Run { file, out, depth, seed, format } => {
            let input = match load(&file) {
                Ok(i) => i,
                Err(e) => return input_error(&e),
            };
            let report = match run_tasks(&input, RunOptions { depth, seed }) {
                Ok(r) => r,
                Err(e) => return input_error(&e),
            };
            let fmt = match format {
                FormatArg::Human => Format::Human,
                FormatArg::Machine => Format::Machine,
            };
            let text = emit_report(&report, fmt);
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        eprintln!("{}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Corpus { command } => match command {
            CorpusCommand::List => {
                for n in corpus_names() {
                    println!("{n}");
                }
                ExitCode::SUCCESS
            }
            CorpusCommand::Show { name } => match corpus_entry(&name) {
                Some(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("E_BAD_INPUT: unknown fixture {name:?}");
                    ExitCode::from(2)
                }
            },
        },
    }
}
