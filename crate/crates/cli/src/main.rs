//! `scroll-lab`: seeded analysis runs for octic scrolls with JSON reports.

mod commands;
mod config;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::{analyze_net, analyze_quadric, QuadricSource};
use crate::config::{CommonArgs, Failure};

#[derive(Parser, Debug)]
#[command(name = "scroll-lab", version, about = "Analyze octic scrolls attached to quadrics through a genus-3 curve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze the scroll of trisecants of a net of quadrics
    AnalyzeNet {
        /// Net file: {"A": 4x4, "B": 4x4, "C": 4x4} with rational strings
        net: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Analyze the scroll of a quadric through the bicanonical curve of a quartic
    AnalyzeQuadric {
        /// Quartic file: {"variables": 3, "terms": {...}}
        quartic: PathBuf,
        /// Quadric file: 6x6 Gram matrix, rational strings or complex pairs
        quadric: Option<PathBuf>,
        #[command(flatten)]
        choice: QuadricChoice,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the exact and numeric cores against oracles and golden reports
    SelfTest {
        /// Directory with golden reports replacing the bundled ones
        #[arg(long, value_name = "DIR")]
        golden_dir: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct QuadricChoice {
    /// Draw a seeded rational quadric from the seven-dimensional space
    #[arg(long)]
    random: bool,
    /// Draw a seeded quadric containing the Veronese surface
    #[arg(long)]
    case_b: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::AnalyzeNet { net, common } => analyze_net(&net, &common),
        Command::AnalyzeQuadric {
            quartic,
            quadric,
            choice,
            common,
        } => {
            let source = match (quadric, choice.random, choice.case_b) {
                (Some(p), false, false) => Ok(QuadricSource::File(p)),
                (None, true, false) => Ok(QuadricSource::Random),
                (None, false, true) => Ok(QuadricSource::CaseB),
                (None, false, false) => Err(Failure::usage("give a quadric file, --random or --case-b")),
                _ => Err(Failure::usage("a quadric file cannot be combined with --random or --case-b")),
            };
            source.and_then(|s| analyze_quadric(&quartic, s, &common))
        }
        Command::SelfTest { golden_dir } => selftest::run(golden_dir.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("scroll-lab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
