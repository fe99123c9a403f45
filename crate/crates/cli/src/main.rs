mod commands;
mod config;
mod plot;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::*;

/// Roots of relative Steiner polynomials: validation, cone scans,
/// realizations and plots.
#[derive(Debug, Parser)]
#[command(name = "steiner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a coefficient sequence is a Steiner polynomial.
    Validate(ValidateArgs),
    /// Minimal-angle roots of truncated binomial polynomials, as CSV.
    Table1(Table1Args),
    /// Whether a point is a root of some Steiner polynomial in dimension n.
    Membership(MembershipArgs),
    /// Build a simplex pair with given quermassintegrals and verify it.
    Realize(RealizeArgs),
    /// SVG plot of scanned roots and cone boundaries.
    Plot(PlotArgs),
    /// Search for roots with positive real part.
    Stability(StabilityArgs),
    /// Roots of P(0, n/2) approaching 1.
    Accumulation(AccumulationArgs),
    /// Certify a four-dimensional polynomial with the root -1+i.
    Certify4(Certify4Args),
    /// Look for a smaller root angle than the table scan.
    Optimize(OptimizeArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Table1(a) => table1(a),
        Command::Membership(a) => cmd_membership(a),
        Command::Realize(a) => realize(a),
        Command::Plot(a) => plot(a),
        Command::Stability(a) => stability(a),
        Command::Accumulation(a) => accumulation(a),
        Command::Certify4(a) => certify4(a),
        Command::Optimize(a) => optimize(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
