//! `self-test`: the exact and numeric cores against independent oracles, and
//! two seeded reports against golden copies.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scroll_core::curve::{quadrics_through_bicanonical, PlaneQuartic};
use scroll_core::exact::rational::int;
use scroll_core::exact::{exact_nullspace, poly_det, sylvester_resultant, MultiPoly, QPoly, Rational, RationalMatrix};
use scroll_core::numeric::nullspace::relative_residual;
use scroll_core::numeric::roots::reconstruct;
use scroll_core::numeric::{numeric_nullspace, univariate_roots, CMatrix};
use scroll_core::scroll::classify::AnalysisConfig;

use crate::commands::{render, run_net, run_quadric, QuadricInput};
use crate::config::{Failure, EXIT_FAILURE, EXIT_OK};

const SEED: u64 = 20_240_601;
const FERMAT: &[u8] = include_bytes!("../fixtures/quartic_fermat.json");
const NET: &[u8] = include_bytes!("../fixtures/net_example.json");
const GOLDEN_CASE_B: &str = include_str!("../fixtures/golden/case_b.json");
const GOLDEN_NET: &str = include_str!("../fixtures/golden/net.json");

type Check = Result<String, String>;

fn rng(offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED + offset)
}

fn small(r: &mut ChaCha8Rng) -> Rational {
    int(r.gen_range(-9..=9))
}

fn random_linear(r: &mut ChaCha8Rng, nvars: usize) -> MultiPoly {
    let c: Vec<Rational> = (0..nvars).map(|_| small(r)).collect();
    MultiPoly::linear(&c)
}

/// Polynomial determinant against the rational determinant of the evaluated
/// matrix.
fn det_oracle() -> Check {
    let mut r = rng(1);
    let n = 4;
    let m: Vec<Vec<MultiPoly>> = (0..n).map(|_| (0..n).map(|_| random_linear(&mut r, 3)).collect()).collect();
    let d = poly_det(&m).map_err(|e| e.to_string())?;
    for _ in 0..10 {
        let p: Vec<Rational> = (0..3).map(|_| small(&mut r)).collect();
        let rows = m.iter().map(|row| row.iter().map(|e| e.eval(&p)).collect()).collect();
        let want = RationalMatrix::from_rows(rows).and_then(|a| a.det()).map_err(|e| e.to_string())?;
        if d.eval(&p) != want {
            return Err(format!("determinants differ at {p:?}"));
        }
    }
    Ok("4x4 linear entries, 10 points".into())
}

/// Resultant by the Euclidean remainder sequence.
fn euclid_resultant(a: &QPoly, b: &QPoly) -> Result<Rational, String> {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return Ok(int(0));
    };
    if n == 0 {
        return Ok(pow(b.leading().unwrap(), m));
    }
    let (_, rem) = a.div_rem(b).map_err(|e| e.to_string())?;
    let Some(k) = rem.degree() else {
        return Ok(int(0));
    };
    let sign = if m * n % 2 == 1 { int(-1) } else { int(1) };
    Ok(sign * pow(b.leading().unwrap(), m - k) * euclid_resultant(b, &rem)?)
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * x)
}

fn random_poly(r: &mut ChaCha8Rng, degree: u32) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=degree {
        for j in 0..=degree - i {
            terms.push((vec![i, j], small(r)));
        }
    }
    // Keep the leading coefficient in x a nonzero constant most of the time.
    terms.push((vec![degree, 0], int(r.gen_range(1..=5))));
    MultiPoly::from_terms(2, terms).expect("two variables")
}

/// Bareiss-Sylvester resultant in x against the Euclidean resultant after
/// specializing y.
fn resultant_oracle() -> Check {
    let mut r = rng(2);
    let p = random_poly(&mut r, 3);
    let q = random_poly(&mut r, 2);
    let res = sylvester_resultant(&p, &q, 0).map_err(|e| e.to_string())?;
    let mut tested = 0;
    for v in -6..=6 {
        let y = int(v);
        let pa = QPoly::from_multipoly(&p.specialize(1, &y), 0).map_err(|e| e.to_string())?;
        let qa = QPoly::from_multipoly(&q.specialize(1, &y), 0).map_err(|e| e.to_string())?;
        if pa.degree() != p.degree_in(0).map(|d| d as usize) || qa.degree() != q.degree_in(0).map(|d| d as usize) {
            continue;
        }
        let want = euclid_resultant(&pa, &qa)?;
        if res.specialize(1, &y).eval(&[int(0), int(0)]) != want {
            return Err(format!("resultants differ at y = {v}"));
        }
        tested += 1;
    }
    if tested < 5 {
        return Err(format!("only {tested} usable specializations"));
    }
    Ok(format!("degrees 3 and 2, {tested} specializations"))
}

/// A product of integer matrices has a known rank; its exact nullspace must
/// have the complementary dimension and be annihilated exactly.
fn exact_nullspace_check() -> Check {
    let mut r = rng(3);
    let (rows, inner, cols) = (5, 3, 8);
    let mk = |r: &mut ChaCha8Rng, a: usize, b: usize| {
        RationalMatrix::from_rows((0..a).map(|_| (0..b).map(|_| small(r)).collect()).collect()).expect("rectangular")
    };
    let m = mk(&mut r, rows, inner).mul(&mk(&mut r, inner, cols)).map_err(|e| e.to_string())?;
    let rank = m.rank();
    let ns = exact_nullspace(&m);
    if ns.len() != cols - rank {
        return Err(format!("nullity {} for rank {rank}", ns.len()));
    }
    for v in &ns {
        let mv = m.mul_vec(v).map_err(|e| e.to_string())?;
        if mv.iter().any(|x| *x != int(0)) {
            return Err("nullspace vector not annihilated".into());
        }
    }
    Ok(format!("rank {rank}, nullity {}", ns.len()))
}

fn gaussian(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

/// Rank-6 complex 8x10 matrix: the nullspace must be four-dimensional with
/// small residuals.
fn numeric_nullspace_check() -> Check {
    let mut r = rng(4);
    let b = CMatrix::from_fn(8, 6, |_, _| gaussian(&mut r));
    let c = CMatrix::from_fn(6, 10, |_, _| gaussian(&mut r));
    let a = b * c;
    let ns = numeric_nullspace(&a, 1e-8);
    if ns.len() != 4 {
        return Err(format!("nullity {} instead of 4", ns.len()));
    }
    let worst = ns.iter().map(|v| relative_residual(&a, v)).fold(0.0, f64::max);
    if worst > 1e-12 {
        return Err(format!("residual {worst:.1e}"));
    }
    Ok(format!("nullity 4, residual {worst:.1e}"))
}

/// Expanding a product of linear factors and solving it again recovers the
/// roots.
fn root_reconstruction() -> Check {
    let mut r = rng(5);
    let roots: Vec<Complex64> = (0..8).map(|_| gaussian(&mut r) * 2.0).collect();
    let found = univariate_roots(&reconstruct(Complex64::new(1.5, -0.5), &roots)).map_err(|e| e.to_string())?;
    if found.len() != roots.len() {
        return Err(format!("{} roots for degree {}", found.len(), roots.len()));
    }
    let worst = roots
        .iter()
        .map(|z| found.iter().map(|f| (f.value - z).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    if worst > 1e-8 {
        return Err(format!("root error {worst:.1e}"));
    }
    Ok(format!("degree 8, error {worst:.1e}"))
}

fn bicanonical_dimension() -> Check {
    let b = quadrics_through_bicanonical(&PlaneQuartic::fermat()).map_err(|e| e.to_string())?;
    let veronese = b.veronese.iter().filter(|&&v| v).count();
    if b.basis.len() != 7 || veronese != 6 {
        return Err(format!("{} quadrics, {veronese} Veronese", b.basis.len()));
    }
    Ok("7 quadrics, 6 through the Veronese surface".into())
}

fn compare(name: &str, got: &str, golden: &str) -> Check {
    if got == golden {
        return Ok(format!("{} bytes identical", got.len()));
    }
    let line = got.lines().zip(golden.lines()).position(|(a, b)| a != b).map_or_else(
        || got.lines().count().min(golden.lines().count()) + 1,
        |i| i + 1,
    );
    Err(format!("{name} differs from golden at line {line}"))
}

fn golden(dir: Option<&Path>, file: &str, bundled: &str) -> Result<String, String> {
    match dir {
        None => Ok(bundled.to_string()),
        Some(d) => fs::read_to_string(d.join(file)).map_err(|e| format!("cannot read {}: {e}", d.join(file).display())),
    }
}

pub fn case_b_report() -> Result<String, Failure> {
    let out = run_quadric(FERMAT, QuadricInput::CaseB, &AnalysisConfig::default())?;
    Ok(render(&out.report.to_json()))
}

pub fn net_report() -> Result<String, Failure> {
    let out = run_net(NET, &AnalysisConfig::default())?;
    Ok(render(&out.report.to_json()))
}

fn golden_check(dir: Option<&Path>, file: &str, bundled: &str, run: fn() -> Result<String, Failure>) -> Check {
    let want = golden(dir, file, bundled)?;
    let got = run().map_err(|f| f.message)?;
    compare(file, &got, &want)
}

pub fn run(golden_dir: Option<&Path>) -> Result<u8, Failure> {
    let checks: Vec<(&str, Check)> = vec![
        ("det oracle", det_oracle()),
        ("resultant oracle", resultant_oracle()),
        ("exact nullspace", exact_nullspace_check()),
        ("numeric nullspace", numeric_nullspace_check()),
        ("root reconstruction", root_reconstruction()),
        ("bicanonical quadrics", bicanonical_dimension()),
        ("golden case-b report", golden_check(golden_dir, "case_b.json", GOLDEN_CASE_B, case_b_report)),
        ("golden net report", golden_check(golden_dir, "net.json", GOLDEN_NET, net_report)),
    ];
    let mut failed = Vec::new();
    for (name, result) in &checks {
        match result {
            Ok(detail) => println!("{name:<22} pass  {detail}"),
            Err(why) => {
                println!("{name:<22} FAIL  {why}");
                failed.push(*name);
            }
        }
    }
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Failure::new(EXIT_FAILURE, format!("self-test failed: {}", failed.join(", "))))
    }
}
