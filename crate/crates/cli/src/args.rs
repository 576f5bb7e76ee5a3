//! Command-line parsing.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

pub const OUT_ENV: &str = "LPVV_OUT";
pub const DEFAULT_OUT: &str = "lpvv-out";

#[derive(Debug, Parser)]
#[command(name = "lpvv", version, about = "Littlewood–Paley audits and vanishing-viscosity sweeps on the periodic torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the dyadic partition of unity and the Bony decomposition.
    PartitionCheck(Common),
    /// Besov norm of the configured initial vorticity, with the shell-ratio audit.
    Besov(Common),
    /// Integrate one trajectory and audit its conserved and bounded quantities.
    Solve(Common),
    /// Run a viscosity sweep and fit its convergence rate.
    VvSweep(Common),
    /// Run a viscosity sweep and audit each inequality of the convergence argument.
    ProofAudit(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Flat key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; defaults to $LPVV_OUT, then ./lpvv-out.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override a configuration key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Worker threads for sweeps; defaults to the available cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for random data; overrides the `seed` key.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcommandKind {
    PartitionCheck,
    Besov,
    Solve,
    VvSweep,
    ProofAudit,
}

impl SubcommandKind {
    pub fn name(self) -> &'static str {
        match self {
            SubcommandKind::PartitionCheck => "partition-check",
            SubcommandKind::Besov => "besov",
            SubcommandKind::Solve => "solve",
            SubcommandKind::VvSweep => "vv-sweep",
            SubcommandKind::ProofAudit => "proof-audit",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub overrides: Vec<String>,
    pub jobs: usize,
    pub seed: Option<u64>,
}

/// What parsing produced: a run, or text clap wants printed (help, version).
#[derive(Debug)]
pub enum Parsed {
    Run(RunConfig),
    Display(String),
}

/// Strict parse of `argv` (including the program name); `out_env` stands in for `$LPVV_OUT`.
pub fn parse_cli<I, T>(argv: I, out_env: Option<&str>) -> Result<Parsed, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => return Err(CliError::Usage(e.render().to_string())),
        Err(e) => return Ok(Parsed::Display(e.render().to_string())),
    };
    let (subcommand, common) = match cli.command {
        Command::PartitionCheck(c) => (SubcommandKind::PartitionCheck, c),
        Command::Besov(c) => (SubcommandKind::Besov, c),
        Command::Solve(c) => (SubcommandKind::Solve, c),
        Command::VvSweep(c) => (SubcommandKind::VvSweep, c),
        Command::ProofAudit(c) => (SubcommandKind::ProofAudit, c),
    };
    let jobs = match common.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let out = common
        .out
        .or_else(|| out_env.filter(|s| !s.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    Ok(Parsed::Run(RunConfig {
        subcommand,
        config: common.config,
        out,
        overrides: common.overrides,
        jobs,
        seed: common.seed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> RunConfig {
        match parse_cli(args, None).unwrap() {
            Parsed::Run(r) => r,
            Parsed::Display(s) => panic!("unexpected display: {s}"),
        }
    }

    #[test]
    fn sweep_invocation() {
        let r = run(&["lpvv", "vv-sweep", "--config", "sweep.cfg", "--out", "results/"]);
        assert_eq!(r.subcommand, SubcommandKind::VvSweep);
        assert_eq!(r.config, Some(PathBuf::from("sweep.cfg")));
        assert_eq!(r.out, PathBuf::from("results/"));
    }

    #[test]
    fn repeated_overrides() {
        let r = run(&["lpvv", "besov", "--set", "s=0", "--set", "p=inf", "--jobs", "2", "--seed", "9"]);
        assert_eq!(r.overrides, vec!["s=0", "p=inf"]);
        assert_eq!((r.jobs, r.seed), (2, Some(9)));
    }

    #[test]
    fn env_supplies_default_out() {
        match parse_cli(["lpvv", "solve"], Some("/tmp/x")).unwrap() {
            Parsed::Run(r) => assert_eq!(r.out, PathBuf::from("/tmp/x")),
            _ => panic!(),
        }
        assert_eq!(run(&["lpvv", "solve"]).out, PathBuf::from(DEFAULT_OUT));
    }

    #[test]
    fn unknown_input_is_usage_error() {
        assert!(matches!(parse_cli(["lpvv", "bogus"], None), Err(CliError::Usage(_))));
        assert!(matches!(parse_cli(["lpvv", "solve", "--frobnicate"], None), Err(CliError::Usage(_))));
        assert!(matches!(parse_cli(["lpvv", "--help"], None), Ok(Parsed::Display(_))));
    }
}
