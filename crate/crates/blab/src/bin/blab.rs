//! Command-line front end over the check runner.
//!
//! One config schema for everything; subcommands are filters over the
//! config's check list. Exit codes: 0 when every executed check passed,
//! 1 when a check ran to completion but its estimate failed (the report
//! is still written), 2 for configuration or usage errors.

use blab::config::{parse_config, run, write_outputs};
use blab::lognum::Precision;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "blab", version, about = "Numerical laboratory for weighted Bergman spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Run configuration, a JSON document
    #[arg(long)]
    config: PathBuf,
    /// Directory for report.json and artifacts; prints the report when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on worker threads for the internal thread pool
    #[arg(long)]
    threads: Option<usize>,
    /// Overrides the seed in the config
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class constants, Laplacian cross-check, bump certificates
    WeightsReport(Common),
    /// Moment sequence against closed forms and an independent rule
    Moments(Common),
    /// Kernel routes against each other, diagonal comparability, decay
    KernelVerify(Common),
    /// Reproducing property and operator norm ratios of the projection
    ProjectionVerify(Common),
    /// Covering conditions and the subordinate partition of unity
    Covering(Common),
    /// Inhomogeneous solver residuals and the kernel integral bound
    Dbar(Common),
    /// Norm duality through the polynomial pairing
    Duality(Common),
    /// Every check named in the config, in order
    Suite(Common),
}

impl Cmd {
    fn common(&self) -> &Common {
        match self {
            Cmd::WeightsReport(c)
            | Cmd::Moments(c)
            | Cmd::KernelVerify(c)
            | Cmd::ProjectionVerify(c)
            | Cmd::Covering(c)
            | Cmd::Dbar(c)
            | Cmd::Duality(c)
            | Cmd::Suite(c) => c,
        }
    }

    fn filter(&self) -> Option<&'static str> {
        match self {
            Cmd::WeightsReport(_) => Some("weights"),
            Cmd::Moments(_) => Some("moments"),
            Cmd::KernelVerify(_) => Some("kernel"),
            Cmd::ProjectionVerify(_) => Some("projection"),
            Cmd::Covering(_) => Some("covering"),
            Cmd::Dbar(_) => Some("dbar"),
            Cmd::Duality(_) => Some("duality"),
            Cmd::Suite(_) => None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("blab: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cmd: &Cmd) -> blab::Result<bool> {
    // refuse a bad BLAB_PRECISION before reading any file
    Precision::from_env()?;
    let common = cmd.common();
    if let Some(n) = common.threads {
        // a pool built earlier in the process wins; the cap is best-effort
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let text = std::fs::read_to_string(&common.config)
        .map_err(|e| blab::Error::Schema(format!("config {}: {e}", common.config.display())))?;
    let mut cfg = parse_config(&text)?;
    if let Some(name) = cmd.filter() {
        cfg.checks = vec![name.to_string()];
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    let out = run(&cfg)?;
    for c in &out.report.body.checks {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    match &common.out {
        Some(dir) => {
            write_outputs(&out, dir)?;
            println!("report written to {}", dir.join("report.json").display());
        }
        None => println!("{}", out.report.to_json()?),
    }
    Ok(out.report.body.all_passed())
}
