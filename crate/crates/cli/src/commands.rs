//! The two analysis commands: input loading, the pipeline, artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use scroll_core::curve::PlaneQuartic;
use scroll_core::net::NetOfQuadrics;
use scroll_core::scroll::classify::{analyze_net as net_pipeline, analyze_quadric as quadric_pipeline};
use scroll_core::scroll::classify::{AnalysisConfig, AnalysisReport, Classification};
use scroll_core::scroll::octic::OcticSurface;
use scroll_core::scroll::quadric::QuadricForm6;
use scroll_core::scroll::special::{construct_case_b, construct_random};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::{CommonArgs, Failure, EXIT_OK, EXIT_UNRESOLVED, EXIT_USAGE};

pub enum QuadricSource {
    File(PathBuf),
    Random,
    CaseB,
}

/// Quadric input once loaded.
pub enum QuadricInput<'a> {
    Bytes(&'a [u8]),
    Random,
    CaseB,
}

/// A finished analysis: the report and the artifacts to write beside it.
pub struct Outcome {
    pub report: AnalysisReport,
    pub artifacts: Vec<(&'static str, Value)>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.report.classification == Classification::Unresolved {
            EXIT_UNRESOLVED
        } else {
            EXIT_OK
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn parse(what: &str, bytes: &[u8]) -> Result<Value, Failure> {
    serde_json::from_slice(bytes).map_err(|e| Failure::new(EXIT_USAGE, format!("malformed JSON in the {what} file: {e}")))
}

/// Pretty JSON with a trailing newline; the byte form of every artifact.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn octic_artifact(octic: &OcticSurface, report: &AnalysisReport) -> Value {
    octic.to_json(json!({
        "inputs": report.inputs,
        "seed": octic.seed,
        "tolerances": report.tolerances,
        "config": report.config,
    }))
}

pub fn run_net(net_bytes: &[u8], cfg: &AnalysisConfig) -> Result<Outcome, Failure> {
    let net = NetOfQuadrics::from_json(&parse("net", net_bytes)?)?;
    let analysis = net_pipeline(&net, cfg)?;
    let mut report = analysis.report;
    report.inputs.insert("net".into(), sha256_hex(net_bytes));
    let mut artifacts = vec![("gamma.json", analysis.gamma.to_json())];
    artifacts.push(("trisecants.json", serde_json::to_value(&analysis.searches).expect("searches serialize")));
    if let Some(o) = &analysis.octic {
        artifacts.push(("octic.json", octic_artifact(o, &report)));
    }
    Ok(Outcome { report, artifacts })
}

pub fn run_quadric(quartic_bytes: &[u8], quadric: QuadricInput, cfg: &AnalysisConfig) -> Result<Outcome, Failure> {
    let f = PlaneQuartic::from_json(&parse("quartic", quartic_bytes)?)?;
    let (q, origin) = match quadric {
        QuadricInput::Bytes(b) => (QuadricForm6::from_json(&parse("quadric", b)?)?, sha256_hex(b)),
        QuadricInput::Random => (construct_random(&f, cfg.seed)?, format!("generated: random, seed {}", cfg.seed)),
        QuadricInput::CaseB => (construct_case_b(&f, cfg.seed)?, format!("generated: case-b, seed {}", cfg.seed)),
    };
    let analysis = quadric_pipeline(&q, &f, cfg)?;
    let mut report = analysis.report;
    report.inputs.insert("quartic".into(), sha256_hex(quartic_bytes));
    report.inputs.insert("quadric".into(), origin);
    let mut artifacts = vec![("quadric.json", q.to_json()), ("lines.json", analysis.map.to_json())];
    artifacts.push(("partners.json", serde_json::to_value(&analysis.partners).expect("partners serialize")));
    if let Some(o) = &analysis.octic {
        artifacts.push(("octic.json", octic_artifact(o, &report)));
    }
    Ok(Outcome { report, artifacts })
}

fn finish(outcome: Outcome, args: &CommonArgs) -> Result<u8, Failure> {
    let report = outcome.report.to_json();
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("report.json"), render(&report))?;
    for (name, v) in &outcome.artifacts {
        fs::write(args.out.join(name), render(v))?;
    }
    if args.json_only {
        print!("{}", render(&report));
    } else {
        print_summary(&report, &args.out);
    }
    Ok(outcome.exit_code())
}

fn print_summary(report: &Value, out: &Path) {
    println!("classification         {}", report["classification"].as_str().unwrap_or("?"));
    println!("  {}", report["classification_reason"].as_str().unwrap_or(""));
    for key in [
        "scroll_degree",
        "double_curve_degree",
        "triple_count",
        "multiplicity_profile",
        "singular_curve_degree",
        "collision_profile",
    ] {
        let m = &report[key];
        let shown = if m["value"].is_null() {
            format!("null ({})", m["reason"].as_str().unwrap_or(""))
        } else {
            format!("{} (tol {}, {} samples)", m["value"], m["tolerance"], m["samples"])
        };
        println!("{key:<24} {shown}");
    }
    for d in report["diagnostics"].as_array().into_iter().flatten() {
        println!("note: {}", d.as_str().unwrap_or(""));
    }
    println!("report                 {}", out.join("report.json").display());
}

pub fn analyze_net(path: &Path, args: &CommonArgs) -> Result<u8, Failure> {
    let cfg = args.analysis_config()?;
    let bytes = read(path)?;
    finish(run_net(&bytes, &cfg)?, args)
}

pub fn analyze_quadric(quartic: &Path, source: QuadricSource, args: &CommonArgs) -> Result<u8, Failure> {
    let cfg = args.analysis_config()?;
    let qbytes = read(quartic)?;
    let outcome = match source {
        QuadricSource::File(p) => run_quadric(&qbytes, QuadricInput::Bytes(&read(&p)?), &cfg)?,
        QuadricSource::Random => run_quadric(&qbytes, QuadricInput::Random, &cfg)?,
        QuadricSource::CaseB => run_quadric(&qbytes, QuadricInput::CaseB, &cfg)?,
    };
    finish(outcome, args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn malformed_json_is_a_usage_error() {
        let err = parse("net", b"{\"A\": [").unwrap_err();
        assert_eq!(err.code, EXIT_USAGE);
        assert!(err.message.contains("malformed JSON"));
    }
}
