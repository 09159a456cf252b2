//! Implicit equation of the scroll swept by a family of lines.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::linemap::LineMap;
use crate::error::{Error, Result};
use crate::numeric::fit::{poly_from_coefficients, unweighted, weighted_design_matrix, weighted_monomials};
use crate::numeric::homotopy::{random_c64, random_cvec};
use crate::numeric::nullspace::numeric_nullspace;
use crate::numeric::proj::{normalize, CVec};
use crate::numeric::roots::univariate_roots;
use crate::numeric::ComplexPoly;

pub const SCROLL_DEGREE: u32 = 8;
pub const MIN_LINES: usize = 40;
pub const MIN_POINTS_PER_LINE: usize = 5;
/// Required residual of the fitted surface on construction and fresh samples.
pub const FIT_RESIDUAL: f64 = 1e-8;
pub const VALIDATION_POINTS: usize = 100;

#[derive(Clone, Debug)]
pub struct OcticSurface {
    /// Coefficients over the degree-8 monomials of P^3 in global order,
    /// scaled so that the largest one is exactly 1.
    pub coefficients: CVec,
    pub poly: ComplexPoly,
    pub nullity: usize,
    /// Largest relative residual on the points used in the fit.
    pub fit_residual: f64,
    /// Largest relative residual on fresh points of the same lines.
    pub validation_residual: f64,
    pub validation_points: usize,
    pub lines: usize,
    pub points_per_line: usize,
    pub seed: u64,
    pub tolerance: f64,
}

/// Points `s a + t b` on a line at random complex positions, normalized.
pub fn points_on_line(span: &[CVec; 2], k: usize, rng: &mut ChaCha8Rng) -> Vec<CVec> {
    (0..k)
        .map(|_| {
            let (s, t) = (random_c64(rng), random_c64(rng));
            let p: CVec = span[0].iter().zip(&span[1]).map(|(a, b)| s * a + t * b).collect();
            normalize(&p).expect("independent spanning points")
        })
        .collect()
}

/// Nullity of the weighted design matrix of `pts` at `degree`.
pub fn fit_nullity(pts: &[CVec], degree: u32, tol: f64) -> usize {
    let mons = weighted_monomials(4, degree);
    numeric_nullspace(&weighted_design_matrix(pts, &mons), tol).len()
}

impl OcticSurface {
    /// Fits a degree-8 surface through points of the given lines.
    pub fn fit(lines: &[[CVec; 2]], pts_per_line: usize, seed: u64, tol: f64) -> Result<Self> {
        if lines.len() < MIN_LINES {
            return Err(Error::Precondition(format!("fitting needs at least {MIN_LINES} lines, got {}", lines.len())));
        }
        if pts_per_line < MIN_POINTS_PER_LINE {
            return Err(Error::Precondition(format!("fitting needs at least {MIN_POINTS_PER_LINE} points per line")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<CVec> = lines.iter().flat_map(|l| points_on_line(l, pts_per_line, &mut rng)).collect();
        let mons = weighted_monomials(4, SCROLL_DEGREE);
        let ns = numeric_nullspace(&weighted_design_matrix(&pts, &mons), tol);
        match ns.len() {
            0 => return Err(Error::Fit("nullity 0 at degree 8: insufficient or inconsistent samples".into())),
            1 => {}
            k => {
                return Err(Error::Fit(format!(
                    "nullity {k} at degree 8 (scroll degree below 8); nullity {} at degree 2, {} at degree 4",
                    fit_nullity(&pts, 2, tol),
                    fit_nullity(&pts, 4, tol)
                )))
            }
        }
        let mut coefficients = unweighted(&mons, &ns[0]);
        let lead = *coefficients
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("165 coefficients");
        coefficients.iter_mut().for_each(|c| *c /= lead);
        let poly = poly_from_coefficients(4, &mons, &coefficients);
        let fit_residual = pts.iter().map(|p| poly.relative_residual(p)).fold(0.0, f64::max);
        let fresh: Vec<CVec> = (0..VALIDATION_POINTS)
            .flat_map(|i| points_on_line(&lines[i % lines.len()], 1, &mut rng))
            .collect();
        let validation_residual = fresh.iter().map(|p| poly.relative_residual(p)).fold(0.0, f64::max);
        if validation_residual > FIT_RESIDUAL {
            return Err(Error::Fit(format!(
                "validation residual {validation_residual:.2e} exceeds {FIT_RESIDUAL:.0e}"
            )));
        }
        Ok(OcticSurface {
            coefficients,
            poly,
            nullity: 1,
            fit_residual,
            validation_residual,
            validation_points: fresh.len(),
            lines: lines.len(),
            points_per_line: pts_per_line,
            seed,
            tolerance: tol,
        })
    }

    /// Restriction to the line `a + s b` as 9 ascending coefficients.
    pub fn restrict(&self, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let mut c = self.poly.restrict_to_line(a, b);
        c.resize(SCROLL_DEGREE as usize + 1, Complex64::new(0.0, 0.0));
        c
    }

    /// Largest restricted coefficient relative to the coefficient scale, for
    /// unit `a`, `b`; zero when the line lies on the surface.
    pub fn line_containment_residual(&self, span: &[CVec; 2]) -> f64 {
        let a = normalize(&span[0]).expect("nonzero");
        let b = normalize(&span[1]).expect("nonzero");
        let scale: f64 = self.coefficients.iter().map(|c| c.norm()).sum();
        self.restrict(&a, &b).iter().map(|c| c.norm()).fold(0.0, f64::max) / scale
    }

    /// Number of intersection points with a random line.
    pub fn random_line_degree(&self, rng: &mut ChaCha8Rng) -> Result<usize> {
        let a = random_cvec(rng, 4);
        let b = random_cvec(rng, 4);
        Ok(univariate_roots(&self.restrict(&a, &b))?.len())
    }

    pub fn to_json(&self, provenance: Value) -> Value {
        json!({
            "degree": SCROLL_DEGREE,
            "variables": 4,
            "monomial_order": "graded lexicographic, x0 largest",
            "normalization": "largest coefficient = 1",
            "coefficients": self.coefficients.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "nullity": self.nullity,
            "fit_residual": self.fit_residual,
            "validation_residual": self.validation_residual,
            "validation_points": self.validation_points,
            "lines": self.lines,
            "points_per_line": self.points_per_line,
            "irreducibility": "unchecked",
            "provenance": provenance,
        })
    }
}

/// Fits the octic through the lines of a line map.
pub fn fit_scroll(map: &LineMap, pts_per_line: usize, seed: u64, tol: f64) -> Result<OcticSurface> {
    let lines: Vec<[CVec; 2]> = map.lines().cloned().collect();
    OcticSurface::fit(&lines, pts_per_line, seed, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{quadrics_through_bicanonical, PlaneQuartic};
    use crate::exact::rational::int;
    use crate::scroll::linemap::build_line_map;

    #[test]
    fn generic_scroll_is_an_octic() {
        let f = PlaneQuartic::fermat();
        let qs = quadrics_through_bicanonical(&f).unwrap();
        let w: Vec<_> = [2, 1, -3, 1, 4, -2, 5].iter().map(|&k| int(k)).collect();
        let q = qs.combination(&w).unwrap();
        let map = build_line_map(&q, &f, 60, 1, false).unwrap();
        let oct = fit_scroll(&map, 6, 2, 1e-8).unwrap();
        assert!(oct.validation_residual < FIT_RESIDUAL);
        assert!(oct.coefficients.iter().any(|c| (c - Complex64::new(1.0, 0.0)).norm() == 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(oct.random_line_degree(&mut rng).unwrap(), 8);
        assert!(oct.line_containment_residual(&map.assignments[7].spanning_points) < 1e-8);
    }

    #[test]
    fn too_few_lines_is_a_precondition_error() {
        let lines: Vec<[CVec; 2]> = Vec::new();
        assert!(matches!(OcticSurface::fit(&lines, 6, 0, 1e-8), Err(Error::Precondition(_))));
    }
}
