//! `sst`: exact and simulated analysis of subspace state transfer in
//! coined quantum walks with reflection coins.

mod commands;
mod setup;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use setup::Source;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(sst_core::Error),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<sst_core::Error> for CliError {
    fn from(e: sst_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                sst_core::Error::Invariant(_) | sst_core::Error::IndeterminateClustering(_),
            ) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Parser, Debug)]
#[command(
    name = "sst",
    version,
    about = "Subspace state transfer in coined quantum walks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Numeric tolerance for eigenvalue clustering and amplitude cleanup.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
}

#[derive(clap::Args, Debug)]
struct ExactOpts {
    #[command(flatten)]
    source: Source,
    /// Clone set for the sender: `auto-a` or clone indices.
    #[arg(long = "S", default_value = "auto-a")]
    s: String,
    /// Clone set for the receiver: `auto-b` or clone indices.
    #[arg(long = "T", default_value = "auto-b")]
    t: String,
    /// Print `H_rat` and `delta_sq`.
    #[arg(long = "dump-H")]
    dump_h: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide pointwise periodicity at the sender.
    Period(ExactOpts),
    /// Decide perfect transfer at an integer step.
    Transfer {
        #[command(flatten)]
        opts: ExactOpts,
        /// Print the exact eigenvalue support split and the numeric support.
        #[arg(long)]
        report_split: bool,
    },
    /// Print per-arc amplitudes of `U^t x_a(w_k)`.
    Simulate {
        #[command(flatten)]
        source: Source,
        /// `w<k>`: the `k`-th orthonormalized spanning vector of `W`.
        #[arg(long, default_value = "w1")]
        state: String,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        times: Vec<usize>,
    },
    /// Print `ψ_{S,T}` and its pole factors.
    Psi(ExactOpts),
    /// Run the family harness.
    Family {
        #[command(flatten)]
        source: Source,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    let format = cli.format;
    fn exact(o: &ExactOpts, format: Format) -> commands::ExactArgs<'_> {
        commands::ExactArgs {
            source: &o.source,
            s: &o.s,
            t: &o.t,
            dump_h: o.dump_h,
            format,
        }
    }
    match &cli.command {
        Command::Period(o) => commands::period(out, exact(o, format)),
        Command::Transfer { opts, report_split } => {
            commands::transfer(out, exact(opts, format), *report_split, cli.tol)
        }
        Command::Simulate {
            source,
            state,
            times,
        } => commands::simulate(out, source, state, times, cli.tol, cli.format),
        Command::Psi(o) => commands::psi_cmd(out, exact(o, format)),
        Command::Family { source } => commands::family(out, source, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(cli, &mut out).and_then(|()| Ok(out.flush()?)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sst: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Core(sst_core::Error::EmptySubspace).exit_code(),
            2
        );
        assert_eq!(
            CliError::Core(sst_core::Error::Invariant("x".into())).exit_code(),
            3
        );
        assert_eq!(
            CliError::Core(sst_core::Error::IndeterminateClustering(0.5)).exit_code(),
            3
        );
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
