use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use delsarte_cli::commands::{self, Format, Output, SolveArgs, EXIT_USAGE};
use delsarte_cli::instance::InstanceFile;

#[derive(Parser)]
#[command(name = "delsarte", version, about = "Delsarte-type extremal problems on finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Membership tolerance (overrides the instance file).
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the extremal value, an extremal function and a dual certificate.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Cross-check against vertex enumeration (small instances only).
        #[arg(long)]
        oracle: bool,
        /// Record solve time in the output.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reduce to the subgroup generated by W.
    Reduce {
        #[arg(long)]
        instance: PathBuf,
        /// Solve both problems and compare their values.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run a seeded property campaign: posdef, extension, net, oracle or reduction.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate the extremal function by an ε-net of characters.
    Net {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// Subset of G as a JSON list of coordinate tuples (default: all of G).
        #[arg(long)]
        k: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve a family of instances, e.g. `cyclic:n=4..8,k=1,r=0..2`.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> anyhow::Result<(Output, Option<PathBuf>)> {
    Ok(match cli.command {
        Command::Solve { instance, format, oracle, timing, common } => {
            let file = InstanceFile::read(&instance)?;
            let args = SolveArgs { tolerance: common.tolerance, oracle, timing, format: format.into() };
            (commands::solve(&file, &args)?, common.out)
        }
        Command::Reduce { instance, verify, seed, common } => {
            let file = InstanceFile::read(&instance)?;
            (commands::reduce(&file, common.tolerance, verify, seed)?, common.out)
        }
        Command::Verify { suite, seed, count, format, out } => {
            (commands::verify(&suite, seed, count, format.map(Into::into))?, out)
        }
        Command::Net { instance, epsilon, k, common } => {
            let file = InstanceFile::read(&instance)?;
            (commands::net(&file, epsilon, k.as_deref(), common.tolerance)?, common.out)
        }
        Command::Sweep { family, format, common } => {
            (commands::sweep(&family, common.tolerance, format.into())?, common.out)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, path)) => {
            match path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, &out.text) {
                        eprintln!("error: writing {}: {e}", p.display());
                        return ExitCode::from(EXIT_USAGE as u8);
                    }
                }
                None => print!("{}", out.text),
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
