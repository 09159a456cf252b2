//! Run configuration, exit codes and error mapping.

use std::path::PathBuf;

use clap::Args;
use scroll_core::scroll::classify::AnalysisConfig;
use scroll_core::Error;

pub const SEED_ENV: &str = "SCROLL_LAB_SEED";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_DEGENERATE: u8 = 2;
pub const EXIT_UNRESOLVED: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_NOT_ON_CURVE: u8 = 65;
pub const EXIT_RANK: u8 = 66;

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Master seed [default: $SCROLL_LAB_SEED, else 1]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative pivot threshold of numerical nullspaces
    #[arg(long, default_value_t = 1e-8)]
    pub tol_nullspace: f64,
    /// Distance below which projective points are identified
    #[arg(long, default_value_t = 1e-6)]
    pub tol_cluster: f64,
    /// Residual accepted for on-curve and containment checks
    #[arg(long, default_value_t = 1e-8)]
    pub tol_residual: f64,
    /// Curve samples
    #[arg(long, default_value_t = 120)]
    pub samples: usize,
    /// Scroll lines used for the octic fit
    #[arg(long, default_value_t = 60)]
    pub lines: usize,
    /// Points sampled on each line for the fit
    #[arg(long, default_value_t = 6)]
    pub pts_per_line: usize,
    /// Inverse of the largest continuation step of the triple-point scan
    #[arg(long, default_value_t = 2000)]
    pub sweep: usize,
    /// Output directory for the report and artifacts
    #[arg(long, value_name = "DIR", default_value = "scroll-lab-out")]
    pub out: PathBuf,
    /// Use the opposite ruling of the quadric
    #[arg(long)]
    pub ruling_swap: bool,
    /// Print only the report JSON on stdout
    #[arg(long)]
    pub json_only: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(EXIT_USAGE, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::Input(_) | Error::Dimension(_) => EXIT_USAGE,
            Error::Membership(_) => EXIT_NOT_ON_CURVE,
            Error::Rank { .. } => EXIT_RANK,
            Error::DegenerateInput(_) | Error::Precondition(_) => EXIT_DEGENERATE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

/// The seed flag wins; the environment only replaces the default.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, Failure> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        (None, None) => Ok(1),
    }
}

impl CommonArgs {
    pub fn analysis_config(&self) -> Result<AnalysisConfig, Failure> {
        let env = std::env::var(SEED_ENV).ok();
        let cfg = AnalysisConfig {
            seed: resolve_seed(self.seed, env.as_deref())?,
            tol_nullspace: self.tol_nullspace,
            tol_cluster: self.tol_cluster,
            tol_residual: self.tol_residual,
            samples: self.samples,
            lines: self.lines,
            pts_per_line: self.pts_per_line,
            sweep: self.sweep,
            ruling_swap: self.ruling_swap,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_beats_environment() {
        assert_eq!(resolve_seed(Some(5), Some("9")).unwrap(), 5);
        assert_eq!(resolve_seed(None, Some("9")).unwrap(), 9);
        assert_eq!(resolve_seed(None, None).unwrap(), 1);
        assert_eq!(resolve_seed(None, Some("x")).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn errors_map_to_fixed_codes() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::Parse("x".into())), EXIT_USAGE);
        assert_eq!(code(Error::Membership("x".into())), EXIT_NOT_ON_CURVE);
        assert_eq!(code(Error::Rank { expected: 6, found: 5 }), EXIT_RANK);
        assert_eq!(code(Error::DegenerateInput("x".into())), EXIT_DEGENERATE);
        assert_eq!(code(Error::Fit("x".into())), EXIT_FAILURE);
    }
}
