//! Argument parsing and exit codes: 0 when every check passes, 1 when a
//! check fails, 2 for invalid configs or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{execute, Command, CommandError};
use crate::config::ScenarioConfig;
use crate::describe;
use crate::runner::with_jobs;

#[derive(Debug, Parser)]
#[command(name = "chowline", version, about = "Verification scenarios for energy functionals, Chow norms and stability of pairs")]
pub struct Cli {
    /// Scenario config (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory for reports.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Toric models.
    Toric {
        #[command(subcommand)]
        cmd: ToricCmd,
    },
    /// Analytic functionals on the projective line.
    P1 {
        #[command(subcommand)]
        cmd: P1Cmd,
    },
    /// Chow forms.
    Chow {
        #[command(subcommand)]
        cmd: ChowCmd,
    },
    /// Stability of pairs.
    Pairs {
        #[command(subcommand)]
        cmd: PairsCmd,
    },
    /// Acceptance suite.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Shows which statement a subcommand exercises.
    Describe {
        /// Subcommand words, e.g. `chow lognorm`; all when empty.
        words: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ToricCmd {
    /// Functionals of the configured model and the criterion scan.
    Na,
}

#[derive(Debug, Subcommand)]
pub enum P1Cmd {
    /// E, J_χ,c and J at the configured group element.
    Functionals,
    /// Slopes of the functionals along the configured arc.
    Slope,
}

#[derive(Debug, Subcommand)]
pub enum ChowCmd {
    /// Quadrature value of J_χ,c against Chow log-norm differences.
    Lognorm,
}

#[derive(Debug, Subcommand)]
pub enum PairsCmd {
    /// Stability margins of the application pair over sampled arcs.
    Scan,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Runs every check.
    All,
}

fn command(group: &Group) -> Option<Command> {
    Some(match group {
        Group::Toric { cmd: ToricCmd::Na } => Command::ToricNa,
        Group::P1 { cmd: P1Cmd::Functionals } => Command::P1Functionals,
        Group::P1 { cmd: P1Cmd::Slope } => Command::P1Slope,
        Group::Chow { cmd: ChowCmd::Lognorm } => Command::ChowLognorm,
        Group::Pairs { cmd: PairsCmd::Scan } => Command::PairsScan,
        Group::Verify { cmd: VerifyCmd::All } => Command::VerifyAll,
        Group::Describe { .. } => return None,
    })
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> ExitCode {
    let Some(cmd) = command(&cli.group) else {
        let Group::Describe { words } = &cli.group else { unreachable!() };
        if words.is_empty() {
            print!("{}", describe::render_all());
            return ExitCode::SUCCESS;
        }
        let key = words.join(" ");
        return match describe::lookup(&key) {
            Some(a) => {
                print!("{}", describe::render(a));
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: unknown subcommand `{key}`");
                ExitCode::from(2)
            }
        };
    };
    let Some(path) = &cli.config else {
        eprintln!("error: `{}` needs --config PATH", cmd.label());
        return ExitCode::from(2);
    };
    let cfg = match ScenarioConfig::load(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match with_jobs(cli.jobs, || execute(cmd, &cfg, cli.seed, &cli.out)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match result {
        Ok(report) => {
            for c in &report.checks {
                let status = if c.status == crate::report::Status::Pass { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", c.name, c.value);
            }
            println!("reports written to {}", cli.out.display());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CommandError::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CommandError::Write(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
