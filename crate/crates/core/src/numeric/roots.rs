//! All complex roots of a univariate polynomial by Aberth–Ehrlich iteration.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;
const TRIM_RELATIVE: f64 = 1e-14;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Root {
    pub value: Complex64,
    /// `|p(r)| / sum |c_i| |r|^i`.
    pub residual: f64,
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

pub fn backward_residual(c: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(c, z);
    let r = z.norm();
    let scale: f64 = c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// Trims leading coefficients below `1e-14` of the largest magnitude.
pub fn trim(coeffs: &[Complex64]) -> Vec<Complex64> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|v| v.norm() <= TRIM_RELATIVE * max) {
        c.pop();
    }
    c
}

/// Roots of `sum coeffs[i] x^i` (ascending order). Exact zero roots are split
/// off first; the rest start on a perturbed circle whose radius comes from the
/// coefficient magnitudes.
pub fn univariate_roots(coeffs: &[Complex64]) -> Result<Vec<Root>> {
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Input("non-finite coefficient".into()));
    }
    let c = trim(coeffs);
    if c.iter().all(|v| v.norm() == 0.0) {
        return Err(Error::DegenerateInput("zero polynomial".into()));
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Err(Error::DegenerateInput("constant polynomial has no roots".into()));
    }
    let zeros = c.iter().take_while(|v| v.norm() == 0.0).count();
    let reduced = &c[zeros..];
    let n = reduced.len() - 1;
    let mut roots: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); zeros];
    if n > 0 {
        roots.extend(aberth(reduced)?);
    }
    let mut out: Vec<Root> = roots
        .into_iter()
        .map(|z| Root {
            value: z,
            residual: backward_residual(&c, z),
        })
        .collect();
    out.sort_by(|a, b| {
        a.value
            .re
            .partial_cmp(&b.value.re)
            .unwrap()
            .then(a.value.im.partial_cmp(&b.value.im).unwrap())
    });
    Ok(out)
}

fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    if n == 1 {
        return Ok(vec![-c[0] / lead]);
    }
    // radius: max_i |c_i / c_n|^(1/(n-i))
    let radius = (0..n)
        .map(|i| (c[i] / lead).norm().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let r = radius * (1.0 + 0.05 * (k as f64 / n as f64));
            Complex64::from_polar(r, theta)
        })
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(c, z[k]);
            let scale: f64 = c.iter().rev().fold(0.0, |acc, a| acc * z[k].norm() + a.norm());
            if p.norm() <= 4.0 * eps * scale {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                z[k] += Complex64::new(radius * 1e-3, radius * 1e-3);
                all_done = false;
                continue;
            }
            z[k] -= w;
            if w.norm() <= eps * z[k].norm() {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return Ok(z);
        }
    }
    // Accept when every root has a small backward error (multiple roots
    // converge only linearly but their residuals are tiny).
    if z.iter().all(|&r| backward_residual(c, r) < 1e-10) {
        Ok(z)
    } else {
        Err(Error::Convergence {
            iterations: MAX_ITERATIONS,
            best: z,
        })
    }
}

/// Coefficients of `lead * prod (x - r_i)`, ascending.
pub fn reconstruct(lead: Complex64, roots: &[Complex64]) -> Vec<Complex64> {
    let mut p = vec![lead];
    for &r in roots {
        p = super::cpoly::upoly_mul(&p, &[-r, Complex64::new(1.0, 0.0)]);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cube_roots_of_unity() {
        let r = univariate_roots(&[c(-1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        assert_eq!(r.len(), 3);
        for root in &r {
            assert!(root.residual < 1e-12);
            assert!((root.value.powu(3) - c(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn double_root_clusters() {
        let r = univariate_roots(&[c(1.0), c(-2.0), c(1.0)]).unwrap();
        let pts: Vec<Vec<Complex64>> = r.iter().map(|x| vec![x.value, c(1.0)]).collect();
        let cl = super::super::cluster::cluster_with_tolerance(&pts, 1e-6);
        assert_eq!(cl.multiplicities, vec![2]);
        assert!((r[0].value - c(1.0)).norm() < 1e-6);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(univariate_roots(&[c(0.0), c(0.0)]), Err(Error::DegenerateInput(_))));
        assert!(univariate_roots(&[c(2.0)]).is_err());
    }

    #[test]
    fn trims_tiny_leading_coefficient() {
        let r = univariate_roots(&[c(-2.0), c(1.0), c(1e-17)]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].value - c(2.0)).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn reconstruction_matches_input(coeffs in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..13)) {
            let mut p: Vec<Complex64> = coeffs.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
            let last = p.len() - 1;
            if p[last].norm() < 0.5 { p[last] = Complex64::new(1.0, 0.0); }
            let roots = univariate_roots(&p).unwrap();
            let rec = reconstruct(p[last], &roots.iter().map(|r| r.value).collect::<Vec<_>>());
            let scale = p.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for (a, b) in rec.iter().zip(&p) {
                prop_assert!((a - b).norm() <= 1e-8 * scale, "{} vs {}", a, b);
            }
        }
    }
}
