//! Degree of the double curve, counted as its intersection with a plane.
//!
//! A point of the double curve on the plane `H` is a pair `x ≠ y` of C whose
//! lines meet on `H`, that is, `π(x) ∝ π(y)` for the trace `π(x) = ℓ_x ∩ H`.
//! The pairs are the isolated solutions on `P^2 × P^2` of `f(x) = f(y) = 0`
//! together with two random combinations of the 2x2 minors of
//! `[π(x) π(y)]`; the diagonal is a positive-dimensional component and is
//! discarded along with the spurious zeros of the combinations.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linemap::LineMap;
use super::plucker::PAIRS;
use super::special::detect_veronese_containment;
use crate::curve::PlaneQuartic;
use crate::error::{Error, Result};
use crate::numeric::cluster::cluster_with_tolerance;
use crate::numeric::homotopy::{random_cvec, solve, PathStatus, PolySystem, TrackerOptions};
use crate::numeric::proj::{cross3, norm, normalize, projective_distance, CVec};
use crate::numeric::ComplexPoly;

pub const EXPECTED_DEGREE: usize = 18;
/// Relative size of `π(x) × π(y)` accepted as proportional.
const MINOR_TOL: f64 = 1e-8;
/// Separation of `x` and `y` required for an off-diagonal solution.
const DIAGONAL_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCurveCount {
    /// Distinct points of the double curve on the plane.
    pub count: usize,
    pub plane: CVec,
    pub points: Vec<CVec>,
    /// Ordered pairs over each point; 2 when every point is an honest node.
    pub multiplicities: Vec<usize>,
    pub ordered_solutions: usize,
    pub paths: usize,
    pub regular_paths: usize,
    pub singular_paths: usize,
    pub failed_paths: usize,
    pub max_residual: f64,
    pub cluster_tolerance: f64,
    pub seed: u64,
}

/// `L(p) h`: the point where the line `p` meets the plane `h`.
pub fn plane_trace(p: &[ComplexPoly], h: &[Complex64]) -> Vec<ComplexPoly> {
    let nvars = p[0].nvars();
    let mut out = vec![ComplexPoly::zero(nvars); 4];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        out[i] = out[i].add(&p[k].scale(h[j]));
        out[j] = out[j].sub(&p[k].scale(h[i]));
    }
    out
}

/// Index dropped to get plane coordinates on `h`.
fn chart_index(h: &[Complex64]) -> usize {
    (0..4).max_by(|&a, &b| h[a].norm().total_cmp(&h[b].norm())).expect("four entries")
}

pub fn trace_point(map: &LineMap, x: &[Complex64], h: &[Complex64]) -> CVec {
    let p = map.plucker_raw(x);
    let mut out = vec![Complex64::new(0.0, 0.0); 4];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        out[i] += p[k] * h[j];
        out[j] -= p[k] * h[i];
    }
    out
}

fn minor_residual(u: &[Complex64], v: &[Complex64]) -> f64 {
    let c = cross3(u, v);
    norm(&c) / (norm(u) * norm(v)).max(1e-300)
}

/// Counts the points of the double curve on the plane `h`.
pub fn double_curve_plane_count(
    map: &LineMap,
    f: &PlaneQuartic,
    h: &[Complex64],
    seed: u64,
    cluster_tol: f64,
    opts: &TrackerOptions,
) -> Result<DoubleCurveCount> {
    if h.len() != 4 || norm(h) == 0.0 {
        return Err(Error::Input("a plane of P^3 needs 4 coefficients, not all zero".into()));
    }
    if map.quadric.is_exact() && detect_veronese_containment(&map.quadric)? {
        return Err(Error::Precondition(
            "the double-curve count applies to generic scrolls; this quadric contains the Veronese surface".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keep = |v: Vec<ComplexPoly>, k: usize| -> Vec<ComplexPoly> {
        v.into_iter().enumerate().filter(|&(i, _)| i != k).map(|(_, p)| p).collect()
    };
    let k = chart_index(h);
    let px = keep(plane_trace(&map.plucker_polys(6, 0), h), k);
    let py = keep(plane_trace(&map.plucker_polys(6, 3), h), k);
    let minors: Vec<ComplexPoly> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| px[i].mul(&py[j]).sub(&px[j].mul(&py[i])))
        .collect();
    let mut combo = || {
        let w = random_cvec(&mut rng, 3);
        minors.iter().zip(&w).fold(ComplexPoly::zero(6), |acc, (m, c)| acc.add(&m.scale(*c)))
    };
    let (c1, c2) = (combo(), combo());
    let fx = ComplexPoly::from_terms(6, f.complex().terms().iter().map(|(e, c)| ([e.clone(), vec![0; 3]].concat(), *c)));
    let fy = ComplexPoly::from_terms(6, f.complex().terms().iter().map(|(e, c)| ([vec![0; 3], e.clone()].concat(), *c)));
    let system = PolySystem::new(vec![0..3, 3..6], vec![fx, fy, c1, c2])?;
    let report = solve(&system, opts, &mut rng)?;
    let mut traces = Vec::new();
    let mut max_residual = 0.0f64;
    for path in report.paths.iter().filter(|p| p.status != PathStatus::Failed) {
        let x = normalize(path.group(&system, 0)).expect("nonzero");
        let y = normalize(path.group(&system, 1)).expect("nonzero");
        if projective_distance(&x, &y) < DIAGONAL_TOL || path.residual > 1e-8 {
            continue;
        }
        let tx = trace_point(map, &x, h);
        let ty = trace_point(map, &y, h);
        let drop = |t: &CVec| -> CVec { t.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, z)| *z).collect() };
        if minor_residual(&drop(&tx), &drop(&ty)) > MINOR_TOL {
            continue;
        }
        max_residual = max_residual.max(path.residual);
        traces.push(normalize(&tx).expect("line meets the plane"));
    }
    let clusters = cluster_with_tolerance(&traces, cluster_tol);
    Ok(DoubleCurveCount {
        count: clusters.len(),
        plane: h.to_vec(),
        points: clusters.representatives.clone(),
        multiplicities: clusters.multiplicities.clone(),
        ordered_solutions: traces.len(),
        paths: report.paths.len(),
        regular_paths: report.count(PathStatus::Regular),
        singular_paths: report.count(PathStatus::Singular),
        failed_paths: report.count(PathStatus::Failed),
        max_residual,
        cluster_tolerance: cluster_tol,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::quadrics_through_bicanonical;
    use crate::exact::rational::int;
    use crate::scroll::linemap::build_line_map;

    #[test]
    fn trace_polynomials_match_pointwise() {
        let f = PlaneQuartic::fermat();
        let qs = quadrics_through_bicanonical(&f).unwrap();
        let w: Vec<_> = [1, 2, -1, 3, 1, -2, 3].iter().map(|&k| int(k)).collect();
        let map = build_line_map(&qs.combination(&w).unwrap(), &f, 3, 1, false).unwrap();
        let h = vec![Complex64::new(1.0, 0.2), Complex64::new(-0.5, 0.0), Complex64::new(0.3, 1.0), Complex64::new(2.0, 0.0)];
        let x = map.assignments[0].x.clone();
        let t = trace_point(&map, &x, &h);
        let polys = plane_trace(&map.plucker_polys(3, 0), &h);
        let v: CVec = polys.iter().map(|p| p.eval(&x)).collect();
        assert!(projective_distance(&t, &v) < 1e-12);
        let on_plane: Complex64 = t.iter().zip(&h).map(|(a, b)| a * b).sum();
        assert!(on_plane.norm() < 1e-12 * norm(&t));
        let [a, b] = &map.assignments[0].spanning_points;
        assert!(crate::scroll::plucker::point_line_distance(&t, a, b) < 1e-10);
    }
}
