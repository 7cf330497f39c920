use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use slicckit::oracle::RandomSpec;
use slicckit::sio::Mode;
use slicckit::state::{EPS_RANK, EPS_SUPP};
use slicckit::Thresholds;
use slicckit_cli::commands::{self, Suite, TableFormat};
use slicckit_cli::{exit, CliError, Output};

/// Classify pure three-qubit states under local strictly incoherent operations.
#[derive(Parser)]
#[command(name = "slicckit", version)]
struct Cli {
    /// Worker threads for batch and check (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Relative threshold below which an amplitude counts as zero.
    #[arg(long, global = true, default_value_t = EPS_SUPP)]
    eps_supp: f64,
    /// Eigenvalue threshold for ranks and purity.
    #[arg(long, global = true, default_value_t = EPS_RANK)]
    eps_rank: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Slicc,
    Licc,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Orbit,
    Ranks,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one state document (path, inline JSON, or - for stdin).
    Classify { input: String },
    /// Decide whether two states are equivalent and print a witness.
    Equiv {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value = "slicc")]
        mode: ModeArg,
    },
    /// Classify every line of a JSONL file, keeping input order.
    Batch { input: String },
    /// Export the row registry with printed and kernel-derived conditions.
    Table {
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Run a randomized consistency campaign.
    Check {
        #[arg(long, value_enum, default_value = "orbit")]
        suite: SuiteArg,
        #[arg(long, env = "SLICCKIT_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Compare against a deliberately corrupted table (harness self-test).
        #[arg(long)]
        mutate_table: bool,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let thr = Thresholds {
        supp: cli.eps_supp,
        rank: cli.eps_rank,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Input(format!("--jobs: {e}")))?;
    pool.install(|| match cli.command {
        Command::Classify { input } => commands::classify(&input, &thr),
        Command::Equiv { first, second, mode } => {
            let mode = match mode {
                ModeArg::Slicc => Mode::Slicc,
                ModeArg::Licc => Mode::Licc,
            };
            commands::equiv(&first, &second, mode, &thr)
        }
        Command::Batch { input } => commands::batch(&input, &thr),
        Command::Table { format } => Ok(commands::table(match format {
            FormatArg::Json => TableFormat::Json,
            FormatArg::Markdown => TableFormat::Markdown,
        })),
        Command::Check {
            suite,
            seed,
            trials,
            mutate_table,
        } => {
            let spec = RandomSpec {
                mutate_table,
                ..RandomSpec::new(seed, trials)
            };
            let suite = match suite {
                SuiteArg::Orbit => Suite::Orbit,
                SuiteArg::Ranks => Suite::Ranks,
            };
            Ok(commands::check(suite, &spec))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(out) => {
            if let Some(line) = &out.stderr {
                eprintln!("{line}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(exit::INPUT);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
