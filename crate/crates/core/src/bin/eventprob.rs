use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eventprob::cli::{self, AnalyzeTarget, CliError, CommandOutput, Format, Settings};
use eventprob::Rational;

#[derive(Parser)]
#[command(name = "eventprob", version, about = "Exact and Monte Carlo probabilities of events over uniform draws")]
struct Args {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: OutputFormat,
    /// Largest space (in outcomes) that may be enumerated.
    #[arg(long, default_value_t = eventprob::exact::DEFAULT_ENUMERATION_CAP, global = true)]
    max_enumeration: u64,
    #[arg(long, default_value_t = cli::DEFAULT_TRIALS, global = true)]
    trials: u64,
    /// Generator seed, or `random` for a fresh one (recorded in the report).
    #[arg(long, default_value = "0", global = true)]
    seed: String,
    /// z-score threshold for `check`.
    #[arg(long, default_value_t = eventprob::mc::DEFAULT_Z_THRESHOLD, global = true)]
    z: f64,
    /// Worker threads for sampling; 0 means one per core. Results do not depend on it.
    #[arg(long, default_value_t = 0, global = true)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact probability of every event, by enumeration and by composition.
    Eval { file: PathBuf },
    /// Monte Carlo estimate of every event from one shared sample.
    Simulate { file: PathBuf },
    /// Exact values, estimates and a z-test per event.
    Check {
        file: PathBuf,
        /// Test against NAME=FRACTION instead of the computed exact value.
        #[arg(long, value_name = "NAME=FRACTION")]
        assume_exact: Vec<String>,
    },
    /// Ambiguity sites of an event, or both readings of a negated atom list.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        event: Option<String>,
        /// Comma-separated atoms, e.g. "person[0]==may, person[1]==may".
        #[arg(long)]
        atoms: Option<String>,
    },
    /// Print and check the built-in birthday-month problems.
    Corpus,
}

fn run(args: Args) -> Result<CommandOutput, CliError> {
    let seed = match args.seed.as_str() {
        "random" => rand::random::<u64>(),
        s => s.parse().map_err(|_| CliError::Usage(format!("invalid --seed `{s}`")))?,
    };
    let settings = Settings {
        format: match args.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        },
        max_enumeration: args.max_enumeration,
        trials: args.trials,
        seed,
        z: args.z,
        workers: args.workers,
    };
    match args.command {
        Command::Eval { file } => cli::cmd_eval(&cli::load_problem(&file)?, &settings),
        Command::Simulate { file } => cli::cmd_simulate(&cli::load_problem(&file)?, &settings),
        Command::Check { file, assume_exact } => {
            let mut assumed = BTreeMap::new();
            for item in assume_exact {
                let (name, value) = item
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("--assume-exact expects NAME=FRACTION, got `{item}`")))?;
                let value: Rational = value.parse().map_err(|e| CliError::Usage(format!("--assume-exact: {e}")))?;
                assumed.insert(name.to_string(), value);
            }
            cli::cmd_check(&cli::load_problem(&file)?, &settings, &assumed)
        }
        Command::Analyze { file, event, atoms } => {
            cli::cmd_analyze(&cli::load_problem(&file)?, &AnalyzeTarget { event, atoms })
        }
        Command::Corpus => cli::cmd_corpus(&settings),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            // usage errors share the parse/validation exit code
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match run(args) {
        Ok(out) => {
            print!("{}", out.render(format));
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("eventprob: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
