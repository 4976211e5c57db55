use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ringprob::Execution;
use ringprob_cli::{
    cmd_prob, cmd_spectrum, cmd_structure, cmd_verify, CliError, Format, Method, Options,
    SpectrumFormat, SuiteId,
};

/// Exact multiplication probabilities of finite rings.
#[derive(Parser)]
#[command(name = "ringprob", version)]
struct Cli {
    /// Enumerate rings above 4096 elements.
    #[arg(long, global = true)]
    force: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability that a random product equals x.
    Prob {
        /// Ring spec, e.g. `Z6`, `M2(GF3)` or `Z2 x chain(3,2)`
        #[arg(long)]
        ring: String,
        /// Element literal, e.g. `4`, `[[1,0],[0,0]]`, `(0,1)` or `#7`
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t)]
        method: Method,
        /// Include the formula used and the hypotheses it checked.
        #[arg(long)]
        explain: bool,
    },
    /// Probabilities of every element, grouped into classes.
    Spectrum {
        /// Ring spec
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum, default_value_t)]
        format: SpectrumFormat,
    },
    /// Units, zero-divisors, radical chain and locality.
    Structure {
        /// Ring spec
        #[arg(long)]
        ring: String,
    },
    /// Check closed forms and bounds against enumeration on a corpus.
    Verify {
        /// Suites to run (repeatable or comma-separated); all when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<SuiteId>,
        /// `default` or a JSON array of ring specs.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let opts = Options {
        force: cli.force,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match cli.command {
        Command::Prob {
            ring,
            x,
            method,
            explain,
        } => cmd_prob(&ring, &x, method, explain, opts).map(|s| (s, true)),
        Command::Spectrum { ring, format } => cmd_spectrum(&ring, format, opts).map(|s| (s, true)),
        Command::Structure { ring } => cmd_structure(&ring, opts).map(|s| (s, true)),
        Command::Verify {
            suite,
            corpus,
            format,
        } => cmd_verify(&suite, &corpus, format, opts),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
