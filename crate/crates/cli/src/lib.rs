//! Library behind the `srg` binary: problem files, command implementations and SVG plots.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod factor;
pub mod plot;
pub mod problem;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use error::CliError;
pub use problem::ProblemSpecFile;

#[derive(Debug, Parser)]
#[command(name = "srg", version, about = "Contraction factors and symbol searches for Davis-Yin splitting")]
pub struct Cli {
    /// Spaces per indentation level of the JSON output; 0 prints compact JSON.
    #[arg(long, global = true, default_value_t = 2)]
    pub json_indent: usize,

    /// Worker threads for the parallel search (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form contraction (or averagedness) factor.
    Factor {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        theorem: TheoremArg,
    },
    /// Maximum modulus of the symbol over the class regions, with a certificate.
    Maxmod {
        spec: PathBuf,
        /// Boundary sample spacing; accepts fractions such as 1/120.
        #[arg(long, value_parser = parse_real)]
        eps: Option<f64>,
        /// Shift s of |ζ − s| (overrides params.s).
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        shift: Option<f64>,
    },
    /// Check a factor on concrete 2×2 operator realizations.
    Verify {
        spec: PathBuf,
        /// A contraction factor, or `auto` for the best closed-form factor.
        #[arg(long, default_value = "auto", value_parser = parse_rho)]
        rho: RhoArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// New factors against the updated prior factors.
    Compare { spec: PathBuf },
    /// SVG of the symbol image, the class regions and the |z| = ρ circle.
    Plot {
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Boundary sample spacing of the plotted cloud; accepts fractions.
        #[arg(long, value_parser = parse_real, default_value = "1/40")]
        eps: f64,
        /// Circle radius: a value, `auto` (closed-form factor if one applies) or `none`.
        #[arg(long, default_value = "auto", value_parser = parse_rho)]
        rho: RhoArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "31")]
    Thm31,
    #[value(name = "32")]
    Thm32,
    #[value(name = "33")]
    Thm33,
    #[value(name = "41")]
    Thm41,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RhoArg {
    Auto,
    None,
    Value(f64),
}

/// A finite real, written as a decimal or as a fraction `p/q`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            let q: f64 = q.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            p / q
        }
        None => s.trim().parse().map_err(|e| format!("{s}: {e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a finite number"))
    }
}

fn parse_rho(s: &str) -> Result<RhoArg, String> {
    match s {
        "auto" => Ok(RhoArg::Auto),
        "none" => Ok(RhoArg::None),
        _ => parse_real(s).map(RhoArg::Value),
    }
}
