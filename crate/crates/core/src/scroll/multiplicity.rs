//! Vanishing order of a surface along sampled points.

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::monomials_of_degree;
use crate::numeric::proj::CVec;
use crate::numeric::ComplexPoly;

/// Default relative threshold for a derivative to count as zero.
pub const DERIVATIVE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityCheck {
    pub order: usize,
    pub tolerance: f64,
    pub passed: bool,
    /// `table[i][j]`: largest relative residual over the partials of order
    /// `j` at sample `i`.
    pub table: Vec<Vec<f64>>,
    /// Largest residual per order over all samples.
    pub worst: Vec<f64>,
}

impl MultiplicityCheck {
    /// Whether the derivatives up to `order` (at most the checked order) vanish.
    pub fn passes_order(&self, order: usize) -> bool {
        order <= self.order && self.worst[..=order].iter().all(|&r| r < self.tolerance)
    }

    /// Largest passing order plus one: the multiplicity of the surface
    /// along the samples, capped at `order + 1`.
    pub fn profile(&self) -> usize {
        (0..=self.order).take_while(|&k| self.passes_order(k)).count()
    }
}

/// All partial derivatives of each order up to `max_order`, grouped by order.
pub fn partials(f: &ComplexPoly, max_order: usize) -> Vec<Vec<ComplexPoly>> {
    let n = f.nvars();
    let mut out = vec![vec![f.clone()]];
    for k in 1..=max_order {
        let level: Vec<ComplexPoly> = monomials_of_degree(n, k as u32)
            .iter()
            .map(|e| {
                let mut d = f.clone();
                for (v, &m) in e.iter().enumerate() {
                    for _ in 0..m {
                        d = d.derivative(v);
                    }
                }
                d
            })
            .collect();
        out.push(level);
    }
    out
}

/// `|D F(p)|` relative to the same derivative with absolute coefficients at
/// the largest coordinate of `p`. A derivative that is identically zero has
/// residual zero.
fn derivative_residual(d: &ComplexPoly, p: &[Complex64]) -> f64 {
    d.relative_residual(p)
}

/// Evaluates every partial of `f` up to total order `order` at each sample.
/// Passes when all relative residuals are below `tol`; passing at an order
/// implies passing at every lower one.
pub fn multiplicity_along_curve(f: &ComplexPoly, samples: &[CVec], order: usize, tol: f64) -> MultiplicityCheck {
    let parts = partials(f, order);
    let table: Vec<Vec<f64>> = samples
        .iter()
        .map(|p| {
            parts
                .iter()
                .map(|level| level.iter().map(|d| derivative_residual(d, p)).fold(0.0, f64::max))
                .collect()
        })
        .collect();
    let worst: Vec<f64> = (0..=order)
        .map(|k| table.iter().map(|row| row[k]).fold(0.0, f64::max))
        .collect();
    let passed = !samples.is_empty() && worst.iter().all(|&r| r < tol);
    MultiplicityCheck {
        order,
        tolerance: tol,
        passed,
        table,
        worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::proj::c64;
    use proptest::prelude::*;

    /// `(x0 x3 - x1 x2)^2 x0`: a quadric cone squared times a plane, so the
    /// quadric has multiplicity 2 and the line `x0 = x1 = 0` multiplicity 3.
    fn surface() -> ComplexPoly {
        let v = |i| ComplexPoly::var(4, i);
        let q = v(0).mul(&v(3)).sub(&v(1).mul(&v(2)));
        q.mul(&q).mul(&v(0))
    }

    #[test]
    fn orders_on_known_strata() {
        let f = surface();
        let on_line = vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(0.7, 0.1), c64(-0.3, 0.5)];
        let on_quadric = vec![c64(1.0, 0.0), c64(2.0, 0.0), c64(0.5, 0.0), c64(1.0, 0.0)];
        let check = multiplicity_along_curve(&f, &[on_line], 3, DERIVATIVE_TOL);
        assert_eq!(check.profile(), 3);
        let check = multiplicity_along_curve(&f, &[on_quadric], 3, DERIVATIVE_TOL);
        assert_eq!(check.profile(), 2);
    }

    proptest! {
        #[test]
        fn passing_is_monotone(re in prop::collection::vec(-1.0..1.0f64, 4), im in prop::collection::vec(-1.0..1.0f64, 4), scale in -12i32..0) {
            let f = surface();
            // a point close to the line x0 = x1 = 0
            let eps = 10f64.powi(scale);
            let p: CVec = (0..4).map(|i| c64(re[i], im[i]) * if i < 2 { eps } else { 1.0 }).collect();
            let check = multiplicity_along_curve(&f, &[p], 3, DERIVATIVE_TOL);
            for k in 1..=3 {
                if check.passes_order(k) {
                    prop_assert!(check.passes_order(k - 1));
                }
            }
            prop_assert_eq!(check.passed, check.profile() == 4);
        }
    }
}
