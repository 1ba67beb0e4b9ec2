//! `springopt`: evaluate, optimize and verify four-spring series-parallel
//! lattices from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 infeasible,
//! 3 verification violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use config::{Format, Overrides, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "springopt",
    version,
    about = "Optimal four-spring elastoplastic conducting lattices"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long, global = true, env = "SPRINGOPT_CONFIG")]
    config: Option<PathBuf>,
    /// Weight of the response force in F_R.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Weight of the resistance in F_R.
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Lower bound on the response force.
    #[arg(long, global = true)]
    fmin: Option<f64>,
    /// Lower bound on F_R.
    #[arg(long, global = true)]
    frmin: Option<f64>,
    /// Solver tolerance; also the feasibility slack of `eval`.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the ten arrangements with their resistance formulas.
    ListCases {
        /// List the subcase bounds instead.
        #[arg(long)]
        subcases: bool,
    },
    /// Evaluate F, R, F_R and C of one network.
    Eval(commands::Target),
    /// Solve the reduced problems and report the cheapest design.
    Solve(commands::SolveArgs),
    /// Sample the dominance inequalities and certify lower cost bounds.
    Verify(commands::VerifyArgs),
    /// Reduced feasibility regions on a grid, as CSV.
    Regions(commands::RegionsArgs),
    /// Exhaustive grid search over the full four-variable problem.
    Brute(commands::BruteArgs),
    /// Quasi-static loading simulation of one network.
    Simulate(commands::SimulateArgs),
}

fn run(cli: Cli) -> Result<commands::Outcome, String> {
    let c = &cli.common;
    let overrides = Overrides {
        alpha: c.alpha,
        beta: c.beta,
        f_min: c.fmin,
        fr_min: c.frmin,
        tol: c.tol,
        seed: c.seed,
        output: c.out.clone(),
        format: c.format,
        grid_step: match &cli.command {
            Command::Brute(b) => b.grid_step,
            _ => None,
        },
        grid_max: match &cli.command {
            Command::Brute(b) => b.grid_max,
            _ => None,
        },
    };
    let cfg = RunConfig::load(c.config.as_deref())?.apply(&overrides)?;
    match cli.command {
        Command::ListCases { subcases } => commands::list_cases(&cfg, subcases),
        Command::Eval(t) => commands::eval(&cfg, &t),
        Command::Solve(a) => commands::solve(&cfg, &a),
        Command::Verify(a) => commands::verify(&cfg, &a),
        Command::Regions(a) => commands::regions(&cfg, &a),
        Command::Brute(a) => commands::brute(&cfg, &a),
        Command::Simulate(a) => commands::simulate(&cfg, &a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
