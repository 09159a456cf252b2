//! Triple points of the scroll: points where three of its lines meet.
//!
//! Triples `(x, y, z)` of C whose lines meet pairwise are the solutions on
//! `(P^2)^3` of `f(x) = f(y) = f(z) = 0` and `b(x,y) = b(x,z) = b(y,z) = 0`
//! with `b(x,y) = v(x)ᵀ G v(y)`. Pairwise meeting lines are either concurrent
//! (a triple point, found six times over) or coplanar; the partial diagonals
//! are positive-dimensional components. Every path of the homotopy is
//! accounted for: counted, discarded as coplanar or diagonal, or reported as
//! unresolved.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linemap::LineMap;
use super::plucker::{line_intersection, point_line_distance};
use super::special::detect_veronese_containment;
use crate::curve::PlaneQuartic;
use crate::error::{Error, Result};
use crate::numeric::cluster::cluster_with_tolerance;
use crate::numeric::homotopy::{solve, PathResult, PathStatus, PolySystem, TrackerOptions};
use crate::numeric::proj::{normalize, projective_distance, CVec};
use crate::numeric::ComplexPoly;

pub const EXPECTED_TRIPLE_POINTS: usize = 8;
/// Ordered triples over an isolated triple point.
pub const ORDERINGS: usize = 6;
/// Separation below which two curve points are treated as equal.
const DIAGONAL_TOL: f64 = 1e-6;
/// Looser separation for judging where an unfinished path was heading.
const DIAGONAL_HINT: f64 = 1e-2;
const ENDPOINT_RESIDUAL: f64 = 1e-8;
/// Residual at which an ill-conditioned endpoint still counts as a solution.
const CLEAN_RESIDUAL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct TriplePoint {
    pub point: CVec,
    /// Ordered solution triples over this point.
    pub multiplicity: usize,
    /// Distinct points of C whose lines pass through the point.
    pub curve_points: Vec<CVec>,
    /// Largest distance from the point to one of those lines.
    pub line_distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnresolvedPath {
    pub path: usize,
    pub t: f64,
    pub status: PathStatus,
    pub residual: f64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleScan {
    pub count: usize,
    pub points: Vec<TriplePoint>,
    pub concurrent_triples: usize,
    pub coplanar_triples: usize,
    pub diagonal_paths: usize,
    pub unresolved: Vec<UnresolvedPath>,
    pub paths: usize,
    pub regular_paths: usize,
    pub singular_paths: usize,
    pub failed_paths: usize,
    pub resolution: usize,
    pub cluster_tolerance: f64,
    pub seed: u64,
}

impl TripleScan {
    /// True when no cluster is near-coincident and nothing is unresolved.
    pub fn is_clean(&self) -> bool {
        self.unresolved.is_empty() && self.points.iter().all(|p| p.multiplicity == ORDERINGS)
    }
}

fn embed(p: &ComplexPoly, nvars: usize, offset: usize) -> ComplexPoly {
    ComplexPoly::from_terms(
        nvars,
        p.terms().iter().map(|(e, c)| {
            let mut full = vec![0u8; nvars];
            full[offset..offset + e.len()].copy_from_slice(e);
            (full, *c)
        }),
    )
}

fn veronese_polys(nvars: usize, offset: usize) -> Vec<ComplexPoly> {
    [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
        .iter()
        .map(|&(i, j)| ComplexPoly::var(nvars, offset + i).mul(&ComplexPoly::var(nvars, offset + j)))
        .collect()
}

/// `v(x)ᵀ G v(y)` with `x`, `y` at the given offsets.
pub fn incidence_poly(map: &LineMap, nvars: usize, ox: usize, oy: usize) -> ComplexPoly {
    let g = map.quadric.gram_c64();
    let (vx, vy) = (veronese_polys(nvars, ox), veronese_polys(nvars, oy));
    let mut out = ComplexPoly::zero(nvars);
    for i in 0..6 {
        let row = (0..6).fold(ComplexPoly::zero(nvars), |acc, j| acc.add(&vy[j].scale(g[(i, j)])));
        out = out.add(&vx[i].mul(&row));
    }
    out
}

fn min_separation(pts: &[CVec]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in 0..i {
            best = best.min(projective_distance(&pts[i], &pts[j]));
        }
    }
    best
}

enum Verdict {
    Concurrent(CVec, [CVec; 3]),
    Coplanar,
    Diagonal,
    Unresolved(String),
}

fn judge(map: &LineMap, system: &PolySystem, path: &PathResult, conc_tol: f64) -> Result<Verdict> {
    let pts: Vec<CVec> = (0..3)
        .map(|g| normalize(path.group(system, g)).ok_or_else(|| Error::DegenerateInput("zero endpoint".into())))
        .collect::<Result<_>>()?;
    let sep = min_separation(&pts);
    if sep < DIAGONAL_TOL {
        return Ok(Verdict::Diagonal);
    }
    if path.status != PathStatus::Regular {
        // paths approaching the diagonal components converge slowly, so only
        // a loose separation is asked of them; an ill-conditioned endpoint
        // far from the diagonal with a clean residual is kept as a solution
        if sep < DIAGONAL_HINT {
            return Ok(Verdict::Diagonal);
        }
        if path.status == PathStatus::Failed || path.residual > CLEAN_RESIDUAL {
            return Ok(Verdict::Unresolved(format!(
                "{:?} endpoint at t = {:.9}, residual {:.1e}, away from the diagonal",
                path.status, path.t, path.residual
            )));
        }
    }
    if path.residual > ENDPOINT_RESIDUAL {
        return Ok(Verdict::Unresolved(format!("endpoint residual {:.1e}", path.residual)));
    }
    let lines: Vec<[CVec; 2]> = pts.iter().map(|x| map.line_of(x).1).collect();
    let meet = |i: usize, j: usize| -> CVec {
        normalize(&line_intersection(&lines[i][0], &lines[i][1], &lines[j][0], &lines[j][1])).expect("nonzero")
    };
    let (oxy, oxz, oyz) = (meet(0, 1), meet(0, 2), meet(1, 2));
    let spread = projective_distance(&oxy, &oxz).max(projective_distance(&oxy, &oyz));
    Ok(if spread < conc_tol {
        Verdict::Concurrent(oxy, [pts[0].clone(), pts[1].clone(), pts[2].clone()])
    } else {
        Verdict::Coplanar
    })
}

/// Solves for the triple points with `resolution` as the inverse of the
/// largest continuation step.
pub fn triple_locus_scan(map: &LineMap, f: &PlaneQuartic, resolution: usize, seed: u64, cluster_tol: f64) -> Result<TripleScan> {
    if resolution == 0 {
        return Err(Error::Input("sweep resolution must be positive".into()));
    }
    if map.quadric.is_exact() && detect_veronese_containment(&map.quadric)? {
        return Err(Error::Precondition(
            "the triple-point scan applies to generic scrolls; this quadric contains the Veronese surface".into(),
        ));
    }
    let n = 9;
    let fc = f.complex();
    let equations = vec![
        embed(fc, n, 0),
        embed(fc, n, 3),
        embed(fc, n, 6),
        incidence_poly(map, n, 0, 3),
        incidence_poly(map, n, 0, 6),
        incidence_poly(map, n, 3, 6),
    ];
    let system = PolySystem::new(vec![0..3, 3..6, 6..9], equations)?;
    let opts = TrackerOptions {
        max_step: 1.0 / resolution as f64,
        ..TrackerOptions::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = solve(&system, &opts, &mut rng)?;
    let mut found: Vec<(CVec, [CVec; 3])> = Vec::new();
    let (mut coplanar, mut diagonal) = (0, 0);
    let mut unresolved = Vec::new();
    for path in &report.paths {
        match judge(map, &system, path, cluster_tol)? {
            Verdict::Concurrent(o, pts) => found.push((o, pts)),
            Verdict::Coplanar => coplanar += 1,
            Verdict::Diagonal => diagonal += 1,
            Verdict::Unresolved(reason) => unresolved.push(UnresolvedPath {
                path: path.index,
                t: path.t,
                status: path.status,
                residual: path.residual,
                reason,
            }),
        }
    }
    let os: Vec<CVec> = found.iter().map(|(o, _)| o.clone()).collect();
    let clusters = cluster_with_tolerance(&os, cluster_tol);
    let points = (0..clusters.len())
        .map(|c| {
            let mut curve_points: Vec<CVec> = Vec::new();
            for (k, (_, pts)) in found.iter().enumerate() {
                if clusters.assignment[k] != c {
                    continue;
                }
                for p in pts {
                    if curve_points.iter().all(|q| projective_distance(p, q) > DIAGONAL_TOL) {
                        curve_points.push(p.clone());
                    }
                }
            }
            let o = &clusters.representatives[c];
            let line_distance = curve_points
                .iter()
                .map(|x| {
                    let [a, b] = map.line_of(x).1;
                    point_line_distance(o, &a, &b)
                })
                .fold(0.0, f64::max);
            TriplePoint {
                point: o.clone(),
                multiplicity: clusters.multiplicities[c],
                curve_points,
                line_distance,
            }
        })
        .collect::<Vec<_>>();
    Ok(TripleScan {
        count: points.len(),
        points,
        concurrent_triples: found.len(),
        coplanar_triples: coplanar,
        diagonal_paths: diagonal,
        unresolved,
        paths: report.paths.len(),
        regular_paths: report.count(PathStatus::Regular),
        singular_paths: report.count(PathStatus::Singular),
        failed_paths: report.count(PathStatus::Failed),
        resolution,
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
    use crate::scroll::partners::double_curve_partners;

    #[test]
    fn incidence_poly_vanishes_on_partners() {
        let f = PlaneQuartic::fermat();
        let qs = quadrics_through_bicanonical(&f).unwrap();
        let w: Vec<_> = [1, 2, -1, 3, 1, -2, 3].iter().map(|&k| int(k)).collect();
        let map = build_line_map(&qs.combination(&w).unwrap(), &f, 3, 1, false).unwrap();
        let b = incidence_poly(&map, 6, 0, 3);
        let x = map.assignments[1].x.clone();
        let ps = double_curve_partners(&map, &f, &x, 3).unwrap();
        for p in &ps.partners {
            let z: CVec = x.iter().chain(&p.y).copied().collect();
            assert!(b.relative_residual(&z) < 1e-10);
        }
        let other: CVec = x.iter().chain(&map.assignments[2].x).copied().collect();
        assert!(b.relative_residual(&other) > 1e-6);
    }
}
