//! The map sending a point of C to its line in P^3.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::frame::{isotropic_frame, IsotropicFrame};
use super::plucker::{hodge_star, plucker_from_points, plucker_residual, spanning_points};
use super::quadric::QuadricForm6;
use super::special::detect_veronese_containment;
use crate::curve::{sample_curve_points, veronese_lift, veronese_raw, PlaneQuartic};
use crate::error::{Error, Result};
use crate::numeric::homotopy::random_cvec;
use crate::numeric::nullspace::CMatrix;
use crate::numeric::proj::{normalize, projective_distance, CVec};
use crate::numeric::ComplexPoly;

/// Largest admissible Plücker-relation residual.
pub const PLUCKER_RESIDUAL: f64 = 1e-10;
/// Largest admissible value of the quadric at a lifted sample.
pub const QUADRIC_RESIDUAL: f64 = 1e-9;
/// Largest admissible mismatch between a Plücker vector and the one rebuilt
/// from its spanning pair.
pub const SPAN_RESIDUAL: f64 = 1e-9;
/// Relative size of the fourth singular value below which the points of
/// three lines span only a plane.
const COPLANAR_TOL: f64 = 1e-8;
const ORIENTATION_SEED: u64 = 0x5eed_c0c1;

#[derive(Clone, Debug, Serialize)]
pub struct LineAssignment {
    pub x: CVec,
    pub plucker: CVec,
    pub spanning_points: [CVec; 2],
    pub plucker_residual: f64,
    pub quadric_residual: f64,
    pub span_residual: f64,
}

#[derive(Clone, Debug)]
pub struct LineMap {
    pub frame: IsotropicFrame,
    pub quadric: QuadricForm6,
    /// Whether the opposite ruling was chosen.
    pub swap: bool,
    /// Set when the quadric contains the Veronese surface and the frame's own
    /// ruling had to be exchanged so that `swap = false` is the stable side.
    pub oriented: bool,
    /// `v ↦ p`: the frame inverse, followed by the Hodge star when swapped.
    pub to_plucker: CMatrix,
    pub assignments: Vec<LineAssignment>,
    pub seed: u64,
}

impl LineMap {
    /// Plücker vector of the line of an arbitrary point of the plane, without
    /// normalization so that it stays polynomial in `x`.
    pub fn plucker_raw(&self, x: &[Complex64]) -> CVec {
        let v = crate::curve::veronese_raw(x);
        (0..6).map(|i| (0..6).map(|j| self.to_plucker[(i, j)] * v[j]).sum()).collect()
    }

    /// The six Plücker coordinates as quadratic forms in the plane variables,
    /// placed at `offset` among `nvars`.
    pub fn plucker_polys(&self, nvars: usize, offset: usize) -> Vec<ComplexPoly> {
        let lift: Vec<ComplexPoly> = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
            .iter()
            .map(|&(i, j)| ComplexPoly::var(nvars, offset + i).mul(&ComplexPoly::var(nvars, offset + j)))
            .collect();
        (0..6)
            .map(|i| {
                (0..6).fold(ComplexPoly::zero(nvars), |acc, j| acc.add(&lift[j].scale(self.to_plucker[(i, j)])))
            })
            .collect()
    }

    /// Plücker vector and spanning pair of the line of `x`, without the
    /// residual checks of [`LineMap::assign`]; for points known to lie on C
    /// only to the accuracy of a solver.
    pub fn line_of(&self, x: &[Complex64]) -> (CVec, [CVec; 2]) {
        let p = normalize(&self.plucker_raw(x)).expect("the line map has no base points");
        let span = spanning_points(&p);
        (p, span)
    }

    pub fn assign(&self, x: &[Complex64]) -> Result<LineAssignment> {
        let x = normalize(x).ok_or_else(|| Error::Input("zero point".into()))?;
        let lift = veronese_lift(&x)?;
        let quadric_residual = self.quadric.relative_value(&lift);
        let p = normalize(&self.plucker_raw(&x)).ok_or_else(|| Error::Frame("line map sends a point to zero".into()))?;
        let pr = plucker_residual(&p);
        if pr > PLUCKER_RESIDUAL {
            return Err(Error::Frame(format!("Plücker residual {pr:.2e} exceeds {PLUCKER_RESIDUAL:.0e}")));
        }
        let span = spanning_points(&p);
        let span_residual = projective_distance(&plucker_from_points(&span[0], &span[1]), &p);
        Ok(LineAssignment {
            x,
            plucker: p,
            spanning_points: span,
            plucker_residual: pr,
            quadric_residual,
            span_residual,
        })
    }

    pub fn lines(&self) -> impl Iterator<Item = &[CVec; 2]> {
        self.assignments.iter().map(|a| &a.spanning_points)
    }

    pub fn max_residuals(&self) -> (f64, f64, f64) {
        self.assignments.iter().fold((0.0, 0.0, 0.0), |acc, a| {
            (acc.0.max(a.plucker_residual), acc.1.max(a.quadric_residual), acc.2.max(a.span_residual))
        })
    }

    pub fn to_json(&self) -> Value {
        let pair = |v: &CVec| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>();
        json!({
            "seed": self.seed,
            "ruling_swap": self.swap,
            "frame_ruling_exchanged": self.oriented,
            "frame": self.frame.summary(),
            "lines": self.assignments.iter().map(|a| json!({
                "x": pair(&a.x),
                "plucker": pair(&a.plucker),
                "spanning_points": [pair(&a.spanning_points[0]), pair(&a.spanning_points[1])],
            })).collect::<Vec<_>>(),
        })
    }
}

/// Builds the frame of `q` and assigns lines to `n` seeded samples of C.
/// Samples must lift onto `q`; a breach means `q` does not contain C.
pub fn build_line_map(q: &QuadricForm6, f: &PlaneQuartic, n: usize, seed: u64, swap: bool) -> Result<LineMap> {
    let frame = isotropic_frame(q)?;
    let star = CMatrix::from_fn(6, 6, |i, j| {
        let e: CVec = (0..6).map(|k| Complex64::new(if k == j { 1.0 } else { 0.0 }, 0.0)).collect();
        hodge_star(&e)[i]
    });
    let oriented = contains_veronese(q)? && conic_lines_coplanar(q, &frame.inverse);
    let to_plucker = if swap != oriented { &star * &frame.inverse } else { frame.inverse.clone() };
    let mut map = LineMap {
        frame,
        quadric: q.clone(),
        swap,
        oriented,
        to_plucker,
        assignments: Vec::new(),
        seed,
    };
    let sample = sample_curve_points(f, n, seed)?;
    let assignments: Vec<LineAssignment> = sample.points.par_iter().map(|x| map.assign(x)).collect::<Result<_>>()?;
    if let Some(a) = assignments.iter().find(|a| a.quadric_residual > QUADRIC_RESIDUAL) {
        return Err(Error::Membership(format!(
            "quadric residual {:.2e} at a curve sample",
            a.quadric_residual
        )));
    }
    map.assignments = assignments;
    Ok(map)
}

fn contains_veronese(q: &QuadricForm6) -> Result<bool> {
    if q.is_exact() {
        return detect_veronese_containment(q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ORIENTATION_SEED);
    for _ in 0..5 {
        if q.relative_value(&veronese_lift(&random_cvec(&mut rng, 3))?) > QUADRIC_RESIDUAL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// When the quadric contains the Veronese surface, some planes spanned by
/// conics of the surface lie on it: for the line through `u` and `w` of the
/// plane, exactly when the polar value of `v(u)` and `v(w)` vanishes. Those
/// planes parametrize the lines through a point of P^3 on the stable side;
/// on the other side they come out as lines in a plane.
fn conic_lines_coplanar(q: &QuadricForm6, to_plucker: &CMatrix) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(ORIENTATION_SEED);
    let u = random_cvec(&mut rng, 3);
    let (w0, w1) = (random_cvec(&mut rng, 3), random_cvec(&mut rng, 3));
    let vu = veronese_raw(&u);
    let (a, c) = (veronese_raw(&w0), veronese_raw(&w1));
    let sum: CVec = w0.iter().zip(&w1).map(|(x, y)| x + y).collect();
    let b: CVec = veronese_raw(&sum).iter().zip(a.iter().zip(&c)).map(|(s, (x, y))| s - x - y).collect();
    // q(v(u), v(w0 + r w1)) = c0 + c1 r + c2 r^2
    let (c0, c1, c2) = (q.polar(&vu, &a), q.polar(&vu, &b), q.polar(&vu, &c));
    let r = (-c1 + (c1 * c1 - 4.0 * c0 * c2).sqrt()) / (2.0 * c2);
    let w: CVec = w0.iter().zip(&w1).map(|(x, y)| x + r * y).collect();
    let mut pts = Vec::new();
    for _ in 0..3 {
        let t = random_cvec(&mut rng, 1)[0];
        let x: CVec = u.iter().zip(&w).map(|(a, b)| a + t * b).collect();
        let v = veronese_raw(&x);
        let p: CVec = (0..6).map(|i| (0..6).map(|j| to_plucker[(i, j)] * v[j]).sum()).collect();
        pts.extend(spanning_points(&normalize(&p).expect("nonzero line")));
    }
    let m = CMatrix::from_fn(4, pts.len(), |i, j| pts[j][i] / crate::numeric::proj::norm(&pts[j]));
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv[3] < COPLANAR_TOL * sv[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::quadrics_through_bicanonical;
    use crate::exact::rational::int;
    use crate::numeric::cluster::cluster_with_tolerance;

    fn generic_map(n: usize, seed: u64, swap: bool) -> LineMap {
        let f = PlaneQuartic::fermat();
        let qs = quadrics_through_bicanonical(&f).unwrap();
        let w: Vec<_> = [3, -1, 2, 5, -4, 1, 7].iter().map(|&k| int(k)).collect();
        let q = qs.combination(&w).unwrap();
        build_line_map(&q, &f, n, seed, swap).unwrap()
    }

    #[test]
    fn sixty_distinct_lines() {
        let map = generic_map(60, 3, false);
        assert_eq!(map.assignments.len(), 60);
        let (pr, qr, sr) = map.max_residuals();
        assert!(pr < PLUCKER_RESIDUAL && qr < QUADRIC_RESIDUAL && sr < SPAN_RESIDUAL);
        let pl: Vec<CVec> = map.assignments.iter().map(|a| a.plucker.clone()).collect();
        assert_eq!(cluster_with_tolerance(&pl, 1e-6).len(), 60);
    }

    #[test]
    fn veronese_quadrics_default_to_the_stable_ruling() {
        let f = PlaneQuartic::fermat();
        for seed in 1..=4 {
            let q = crate::scroll::special::construct_case_b(&f, seed).unwrap();
            let stable = build_line_map(&q, &f, 5, seed, false).unwrap();
            let other = build_line_map(&q, &f, 5, seed, true).unwrap();
            assert!(!conic_lines_coplanar(&q, &stable.to_plucker), "seed {seed}");
            assert!(conic_lines_coplanar(&q, &other.to_plucker), "seed {seed}");
        }
    }

    #[test]
    fn swapped_ruling_also_lands_on_lines() {
        let map = generic_map(20, 5, true);
        assert!(map.max_residuals().0 < PLUCKER_RESIDUAL);
    }

    #[test]
    fn polynomial_form_matches_pointwise() {
        let map = generic_map(4, 9, false);
        let polys = map.plucker_polys(3, 0);
        let x = &map.assignments[2].x;
        let v: CVec = polys.iter().map(|p| p.eval(x)).collect();
        assert!(projective_distance(&v, &map.assignments[2].plucker) < 1e-12);
    }
}
