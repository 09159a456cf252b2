//! Implicit hypersurfaces through sample points by monomial nullspaces.

use num_complex::Complex64;

use super::cpoly::ComplexPoly;
use super::nullspace::{numeric_nullspace, CMatrix};
use super::proj::CVec;
use crate::exact::monomials_of_degree;

/// Monomials of the given degree in global order, each with its Bombieri
/// weight `sqrt(d! / e!)`. Weighted rows of a unit point have unit norm.
pub fn weighted_monomials(nvars: usize, degree: u32) -> Vec<(Vec<u32>, f64)> {
    let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
    monomials_of_degree(nvars, degree)
        .into_iter()
        .map(|e| {
            let w = (fact(degree) / e.iter().map(|&k| fact(k)).product::<f64>()).sqrt();
            (e, w)
        })
        .collect()
}

pub fn monomial_value(e: &[u32], x: &[Complex64]) -> Complex64 {
    e.iter().zip(x).map(|(&k, v)| v.powu(k)).product()
}

pub fn weighted_design_matrix(pts: &[CVec], mons: &[(Vec<u32>, f64)]) -> CMatrix {
    CMatrix::from_fn(pts.len(), mons.len(), |i, j| monomial_value(&mons[j].0, &pts[i]) * mons[j].1)
}

/// Undoes the weighting: the plain monomial coefficients of a null vector.
pub fn unweighted(mons: &[(Vec<u32>, f64)], v: &[Complex64]) -> CVec {
    mons.iter().zip(v).map(|((_, w), c)| c * *w).collect()
}

pub fn poly_from_coefficients(nvars: usize, mons: &[(Vec<u32>, f64)], coeffs: &[Complex64]) -> ComplexPoly {
    ComplexPoly::from_terms(
        nvars,
        mons.iter()
            .zip(coeffs)
            .map(|((e, _), c)| (e.iter().map(|&k| k as u8).collect(), *c)),
    )
}

/// Nullspace of the weighted design matrix and, when it is one-dimensional,
/// the fitted polynomial.
pub fn fit_hypersurface(pts: &[CVec], mons: &[(Vec<u32>, f64)], tol: f64) -> (Option<ComplexPoly>, usize) {
    let nvars = pts.first().map_or(0, |p| p.len());
    let ns = numeric_nullspace(&weighted_design_matrix(pts, mons), tol);
    if ns.len() != 1 {
        return (None, ns.len());
    }
    (Some(poly_from_coefficients(nvars, mons, &unweighted(mons, &ns[0]))), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::proj::c64;

    #[test]
    fn bombieri_rows_have_unit_norm() {
        let mons = weighted_monomials(4, 8);
        assert_eq!(mons.len(), 165);
        let p = [c64(0.5, 0.0), c64(0.5, 0.0), c64(0.0, 0.5), c64(0.5, 0.0)];
        let s: f64 = mons.iter().map(|(e, w)| (monomial_value(e, &p) * *w).norm_sqr()).sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conic_through_five_points() {
        let pts: Vec<CVec> = (0..7)
            .map(|k| {
                let t = k as f64 * 0.7 - 1.3;
                vec![c64(1.0 - t * t, 0.0), c64(2.0 * t, 0.0), c64(1.0 + t * t, 0.0)]
            })
            .collect();
        let (poly, nullity) = fit_hypersurface(&pts, &weighted_monomials(3, 2), 1e-10);
        assert_eq!(nullity, 1);
        let poly = poly.unwrap();
        let q = [c64(0.6, 0.0), c64(0.8, 0.0), c64(1.0, 0.0)];
        assert!(poly.relative_residual(&q) < 1e-12);
    }
}
