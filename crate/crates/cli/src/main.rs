mod commands;
mod config;
mod output;

use clap::Parser;
use config::{Cli, Command, Common};
use output::Report;
use std::process::ExitCode;

fn run(cli: Cli) -> Result<(Report, Common), Box<dyn std::error::Error>> {
    Ok(match cli.command {
        Command::Solve { l, truncation, count, common } => {
            let tol = common.tolerance(commands::SOLVE_TOL);
            (commands::solve(l, truncation.order(), count, tol)?, common)
        }
        Command::Table { truncation, count, common } => {
            let tol = common.tolerance(commands::SOLVE_TOL);
            (commands::table(truncation.order(), count, tol)?, common)
        }
        Command::Detune { l, k, truncation, common } => {
            let tol = common.tolerance(commands::DETUNE_TOL);
            (commands::detune(l, k, truncation.order(), tol)?, common)
        }
        Command::Density { k, l, m, truncation, grid_r, grid_theta, common } => {
            let tol = common.tolerance(commands::DENSITY_TOL);
            let req = commands::DensityRequest {
                k,
                l,
                m,
                n: truncation.order(),
                grid_r,
                grid_theta,
            };
            (commands::density(&req, tol)?, common)
        }
        Command::CompareD1 { truncation, count, common } => {
            let tol = common.tolerance(commands::D1_TOL);
            (commands::compare_d1(truncation.order(), count, tol)?, common)
        }
        Command::OracleCheck { l, jmax, points, common } => {
            let tol = common.tolerance(commands::ORACLE_TOL);
            (commands::oracle_check(l, jmax, &points, tol)?, common)
        }
        Command::DumpMatrix { l, truncation, common } => {
            (commands::dump_matrix(l, truncation.order())?, common)
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (report, common) = match run(cli) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = output::emit(&output::render(&report, common.format), common.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if common.assert {
        if let Some(check) = &report.check {
            let verdict = if check.passed { "PASS" } else { "FAIL" };
            eprintln!("{verdict}: {}", check.detail);
            if !check.passed {
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}
