use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scroll_lab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scroll-lab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SCROLL_LAB_SEED")
        .output()
        .expect("binary runs")
}

fn report(out: &Path) -> Value {
    serde_json::from_slice(&fs::read(out.join("report.json")).expect("report written")).expect("report is JSON")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn reducible_discriminant_exits_2() {
    let dir = TempDir::new().unwrap();
    let o = scroll_lab(&["analyze-net", fixture("net_diagonal.json").to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("reducible discriminant"), "{}", stderr(&o));
}

#[test]
fn rank_five_quadric_exits_66() {
    let dir = TempDir::new().unwrap();
    let o = scroll_lab(
        &[
            "analyze-quadric",
            fixture("quartic_fermat.json").to_str().unwrap(),
            fixture("quadric_rank5.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(66), "{}", stderr(&o));
}

#[test]
fn quadric_off_the_curve_exits_65() {
    let dir = TempDir::new().unwrap();
    let o = scroll_lab(
        &[
            "analyze-quadric",
            fixture("quartic_fermat.json").to_str().unwrap(),
            fixture("quadric_off_curve.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(65), "{}", stderr(&o));
}

#[test]
fn malformed_json_exits_64() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"A\": [[\"1\", ").unwrap();
    let o = scroll_lab(&["analyze-net", bad.to_str().unwrap()], &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("malformed JSON"));
}

#[test]
fn conflicting_quadric_sources_are_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = scroll_lab(
        &[
            "analyze-quadric",
            fixture("quartic_fermat.json").to_str().unwrap(),
            fixture("quadric_generic.json").to_str().unwrap(),
            "--case-b",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn bundled_net_is_case_a() {
    let dir = TempDir::new().unwrap();
    let o = scroll_lab(&["analyze-net", fixture("net_example.json").to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(dir.path());
    assert_eq!(r["classification"], "case-a");
    assert_eq!(r["scroll_degree"]["value"], 8);
    assert_eq!(r["singular_curve_degree"]["value"], 6);
    assert!(r["double_curve_degree"]["value"].is_null());
    for artifact in ["octic.json", "gamma.json", "trisecants.json"] {
        assert!(dir.path().join(artifact).exists(), "{artifact}");
    }
}

#[test]
fn seed_changes_samples_but_not_counts() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let quartic = fixture("quartic_fermat.json");
    let args = |seed: &'static str| ["analyze-quadric", quartic.to_str().unwrap(), "--case-b", "--seed", seed];
    assert_eq!(scroll_lab(&args("3"), a.path()).status.code(), Some(0));
    assert_eq!(scroll_lab(&args("4"), b.path()).status.code(), Some(0));
    let (ra, rb) = (report(a.path()), report(b.path()));
    for key in ["classification", "scroll_degree", "collision_profile", "multiplicity_profile", "singular_curve_degree"] {
        let (va, vb) = if key == "classification" { (&ra[key], &rb[key]) } else { (&ra[key]["value"], &rb[key]["value"]) };
        assert_eq!(va, vb, "{key}");
    }
    assert_ne!(ra["seeds"], rb["seeds"]);
    assert_ne!(fs::read(a.path().join("lines.json")).unwrap(), fs::read(b.path().join("lines.json")).unwrap());
}

#[test]
fn same_seed_gives_identical_bytes() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let net = fixture("net_example.json");
    let args = ["analyze-net", net.to_str().unwrap(), "--seed", "7"];
    scroll_lab(&args, a.path());
    scroll_lab(&args, b.path());
    for artifact in ["report.json", "octic.json", "gamma.json", "trisecants.json"] {
        assert_eq!(fs::read(a.path().join(artifact)).unwrap(), fs::read(b.path().join(artifact)).unwrap(), "{artifact}");
    }
}

#[test]
fn json_only_prints_the_golden_report() {
    let dir = TempDir::new().unwrap();
    let o = scroll_lab(
        &["analyze-quadric", fixture("quartic_fermat.json").to_str().unwrap(), "--case-b", "--json-only"],
        dir.path(),
    );
    assert_eq!(o.stdout, fs::read(fixture("golden/case_b.json")).unwrap());
    assert_eq!(o.stdout, fs::read(dir.path().join("report.json")).unwrap());
}

#[test]
fn environment_seed_applies_only_without_the_flag() {
    let dir = TempDir::new().unwrap();
    let run = |extra: &[&str], env: Option<&str>| -> Value {
        let mut c = Command::new(env!("CARGO_BIN_EXE_scroll-lab"));
        c.args(["analyze-quadric", fixture("quartic_fermat.json").to_str().unwrap(), "--case-b", "--json-only"])
            .args(extra)
            .arg("--out")
            .arg(dir.path())
            .env_remove("SCROLL_LAB_SEED");
        if let Some(v) = env {
            c.env("SCROLL_LAB_SEED", v);
        }
        let o = c.output().unwrap();
        serde_json::from_slice(&o.stdout).unwrap()
    };
    assert_eq!(run(&[], Some("9"))["config"]["seed"], 9);
    assert_eq!(run(&["--seed", "5"], Some("9"))["config"]["seed"], 5);
    assert_eq!(run(&[], None)["config"]["seed"], 1);
}

#[test]
fn self_test_passes_on_bundled_goldens() {
    let o = Command::new(env!("CARGO_BIN_EXE_scroll-lab")).arg("self-test").output().unwrap();
    let table = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{table}");
    assert_eq!(table.lines().filter(|l| l.contains(" pass ")).count(), 8);
}

#[test]
fn corrupted_golden_names_the_failing_check() {
    let dir = TempDir::new().unwrap();
    fs::copy(fixture("golden/net.json"), dir.path().join("net.json")).unwrap();
    let corrupted = fs::read_to_string(fixture("golden/case_b.json")).unwrap().replace("\"case-b\"", "\"generic\"");
    fs::write(dir.path().join("case_b.json"), corrupted).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_scroll-lab"))
        .args(["self-test", "--golden-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_ne!(o.status.code(), Some(0));
    let table = String::from_utf8_lossy(&o.stdout);
    assert!(table.lines().any(|l| l.starts_with("golden case-b report") && l.contains("FAIL")), "{table}");
    assert!(table.lines().any(|l| l.starts_with("golden net report") && l.contains("pass")), "{table}");
    assert!(stderr(&o).contains("golden case-b report"));
}
