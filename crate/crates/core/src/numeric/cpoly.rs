//! Sparse polynomials with complex double coefficients, evaluated together with
//! their gradients. These feed Newton refinement and path tracking.

use num_complex::Complex64;

use crate::exact::{MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    nvars: usize,
    terms: Vec<(Vec<u8>, Complex64)>,
}

impl ComplexPoly {
    pub fn zero(nvars: usize) -> Self {
        ComplexPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.push(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.push(e, Complex64::new(1.0, 0.0));
        p
    }

    /// `sum coeffs[i] * x_{offset + i}` in a space of `nvars` variables.
    pub fn linear(nvars: usize, offset: usize, coeffs: &[Complex64]) -> Self {
        let mut p = Self::zero(nvars);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[offset + i] = 1;
            p.push(e, c);
        }
        p
    }

    /// Converts an exact polynomial, placing its variables at
    /// `offset..offset + p.nvars()` among `nvars` variables.
    pub fn from_exact(p: &MultiPoly, nvars: usize, offset: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in p.terms() {
            let mut e = vec![0u8; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[offset + i] = k as u8;
            }
            out.push(e, Complex64::new(crate::exact::rational::to_f64(c), 0.0));
        }
        out
    }

    pub fn from_exact_scaled(p: &MultiPoly, scale: &Rational) -> Self {
        Self::from_exact(&p.scale(scale), p.nvars(), 0)
    }

    /// Sums the given terms; exponent vectors must have length `nvars`.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u8>, Complex64)>) -> Self {
        let mut p = ComplexPoly::zero(nvars);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            p.push(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u8>, Complex64)] {
        &self.terms
    }

    fn push(&mut self, e: Vec<u8>, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|t| t.0 == e) {
            t.1 += c;
        } else {
            self.terms.push((e, c));
        }
    }

    pub fn add(&self, other: &ComplexPoly) -> ComplexPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.push(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &ComplexPoly) -> ComplexPoly {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> ComplexPoly {
        ComplexPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = ComplexPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.push(e, ca * cb);
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> ComplexPoly {
        let mut out = ComplexPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.push(d, c * e[var] as f64);
        }
        out
    }

    /// Total degree of the variables in `range`, assuming homogeneity there.
    pub fn degree_in_group(&self, range: std::ops::Range<usize>) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e[range.clone()].iter().map(|&k| k as u32).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous_in_group(&self, range: std::ops::Range<usize>) -> bool {
        let mut degs = self
            .terms
            .iter()
            .map(|(e, _)| e[range.clone()].iter().map(|&k| k as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|k| k == d),
        }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = *c;
                for (xi, &k) in x.iter().zip(e) {
                    if k > 0 {
                        t *= xi.powu(k as u32);
                    }
                }
                t
            })
            .sum()
    }

    /// Sum of `|c| * prod |x_i|^e_i`; the natural scale for relative residuals.
    pub fn eval_abs(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.norm();
                for (xi, &k) in x.iter().zip(e) {
                    if k > 0 {
                        t *= xi.norm().powi(k as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Relative residual `|p(x)| / (sum |c| * m^deg)` with `m` the largest
    /// coordinate magnitude; unlike `eval_abs` this stays meaningful when
    /// every monomial nearly vanishes.
    pub fn relative_residual(&self, x: &[Complex64]) -> f64 {
        let m = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let s: f64 = self
            .terms
            .iter()
            .map(|(e, c)| c.norm() * m.powi(e.iter().map(|&k| k as i32).sum()))
            .sum();
        if s == 0.0 {
            return 0.0;
        }
        self.eval(x).norm() / s
    }

    /// Value and gradient, accumulated into `grad`.
    pub fn eval_grad(&self, x: &[Complex64], grad: &mut [Complex64]) -> Complex64 {
        debug_assert_eq!(grad.len(), self.nvars);
        grad.iter_mut().for_each(|g| *g = Complex64::new(0.0, 0.0));
        let mut value = Complex64::new(0.0, 0.0);
        let mut pw = [Complex64::new(0.0, 0.0); 16];
        for (e, c) in &self.terms {
            let n = e.len();
            let mut full = *c;
            for i in 0..n {
                pw[i] = if e[i] == 0 { Complex64::new(1.0, 0.0) } else { x[i].powu(e[i] as u32) };
                full *= pw[i];
            }
            value += full;
            for i in 0..n {
                if e[i] == 0 {
                    continue;
                }
                let mut t = *c * e[i] as f64;
                for (j, p) in pw.iter().enumerate().take(n) {
                    if j == i {
                        if e[i] > 1 {
                            t *= x[i].powu(e[i] as u32 - 1);
                        }
                    } else {
                        t *= p;
                    }
                }
                grad[i] += t;
            }
        }
        value
    }

    /// Restriction to the affine line `a + s b`, as ascending coefficients in `s`.
    pub fn restrict_to_line(&self, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let lin: Vec<Vec<Complex64>> = a.iter().zip(b).map(|(&ai, &bi)| vec![ai, bi]).collect();
        let deg = self.terms.iter().map(|(e, _)| e.iter().map(|&k| k as usize).sum::<usize>()).max().unwrap_or(0);
        let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (e, c) in &self.terms {
            let mut poly = vec![*c];
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    poly = upoly_mul(&poly, &lin[i]);
                }
            }
            for (k, v) in poly.into_iter().enumerate() {
                out[k] += v;
            }
        }
        out
    }

    /// Composition with polynomial vectors: variable `i` becomes `subs[i]`, each
    /// given as ascending coefficients of a univariate polynomial.
    pub fn compose_univariate(&self, subs: &[Vec<Complex64>]) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for (e, c) in &self.terms {
            let mut poly = vec![*c];
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    poly = upoly_mul(&poly, &subs[i]);
                }
            }
            if poly.len() > out.len() {
                out.resize(poly.len(), Complex64::new(0.0, 0.0));
            }
            for (k, v) in poly.into_iter().enumerate() {
                out[k] += v;
            }
        }
        out
    }
}

pub fn upoly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Synthetic division by `(s - root)`; returns quotient and remainder.
pub fn deflate(coeffs: &[Complex64], root: Complex64) -> (Vec<Complex64>, Complex64) {
    let n = coeffs.len();
    if n == 0 {
        return (Vec::new(), Complex64::new(0.0, 0.0));
    }
    let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        acc = acc * root + coeffs[k];
        if k > 0 {
            q[k - 1] = acc;
        }
    }
    (q, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let x = ComplexPoly::var(3, 0);
        let y = ComplexPoly::var(3, 1);
        let z = ComplexPoly::var(3, 2);
        let p = x.mul(&x).mul(&y).add(&z.mul(&z).mul(&z).scale(c(0.0, 2.0))).add(&x.mul(&z));
        let pt = [c(0.3, 0.1), c(-0.7, 0.2), c(1.1, -0.4)];
        let mut g = vec![c(0.0, 0.0); 3];
        let v = p.eval_grad(&pt, &mut g);
        assert!((v - p.eval(&pt)).norm() < 1e-14);
        for i in 0..3 {
            let h = 1e-6;
            let mut q = pt;
            q[i] += h;
            let fd = (p.eval(&q) - p.eval(&pt)) / h;
            assert!((fd - g[i]).norm() < 1e-5, "{i}: {fd} vs {}", g[i]);
        }
    }

    #[test]
    fn line_restriction_and_deflation() {
        let x = ComplexPoly::var(2, 0);
        let y = ComplexPoly::var(2, 1);
        let p = x.mul(&x).sub(&y.mul(&y)); // x^2 - y^2
        let r = p.restrict_to_line(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(r, vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let (q, rem) = deflate(&r, c(1.0, 0.0));
        assert!(rem.norm() < 1e-15);
        assert_eq!(q, vec![c(-1.0, 0.0), c(-1.0, 0.0)]);
    }
}
