//! Sylvester resultants and univariate polynomial arithmetic over the rationals.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};

/// Sylvester matrix of `p` and `q` with respect to `var`. Entries are
/// polynomials in the same variable set with `var` absent.
pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<Vec<Vec<MultiPoly>>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::DegenerateInput("resultant of the zero polynomial".into()));
    }
    if p.nvars() != q.nvars() {
        return Err(Error::Dimension("operands disagree on variable count".into()));
    }
    let m = p.degree_in(var).unwrap_or(0) as usize;
    let n = q.degree_in(var).unwrap_or(0) as usize;
    if m == 0 || n == 0 {
        return Err(Error::DegenerateInput(format!(
            "operand has degree zero in variable {var}"
        )));
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let size = m + n;
    let zero = MultiPoly::zero(p.nvars());
    let mut s = vec![vec![zero; size]; size];
    // Rows hold coefficients from the leading one down.
    for i in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    Ok(s)
}

/// Resultant of `p` and `q` with respect to `var`, computed as the Sylvester
/// determinant by fraction-free (Bareiss) elimination.
pub fn sylvester_resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    let s = sylvester_matrix(p, q, var)?;
    bareiss_det(s)
}

/// Determinant of a polynomial matrix by Bareiss elimination; every division
/// is exact.
pub fn bareiss_det(mut a: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("bareiss_det needs a non-empty square matrix".into()));
    }
    let nvars = a[0][0].nvars();
    let mut prev = MultiPoly::constant(nvars, Rational::one());
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Pick the sparsest nonzero pivot below.
            let swap = (k + 1..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].num_terms());
            match swap {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Dense univariate polynomial over the rationals, coefficients from the
/// constant term upward; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(Vec<Rational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    /// Interprets a polynomial in which only variable `var` occurs.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Result<Self> {
        let deg = p.degree_in(var).unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (m, v) in p.terms() {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e != 0) {
                return Err(Error::Input("polynomial involves more than one variable".into()));
            }
            c[m.0[var] as usize] = v.clone();
        }
        Ok(QPoly::new(c))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.0.is_empty()).then(|| self.0.len() - 1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                QPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::DegenerateInput("division by zero polynomial".into()))?;
        let lc_inv = d.leading().unwrap().recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((QPoly(vec![]), self.clone()));
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (i, dc) in d.0.iter().enumerate() {
                    let v = &c * dc;
                    rem[k + i] -= v;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(rem)))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> QPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0.iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::RationalMatrix;
    use crate::exact::rational::{int, ratio};
    use rand::{Rng, SeedableRng};

    #[test]
    fn resultant_of_linear_and_quadratic() {
        // x^2 - 1 and x - 2 in one variable.
        let x = MultiPoly::var(1, 0);
        let one = MultiPoly::constant(1, int(1));
        let p = &x.pow(2) - &one;
        let q = &x - &one.scale(&int(2));
        let r = sylvester_resultant(&p, &q, 0).unwrap();
        assert_eq!(r, MultiPoly::constant(1, int(3)));
    }

    #[test]
    fn common_factor_gives_zero() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = &x - &y;
        assert!(sylvester_resultant(&p, &p, 0).unwrap().is_zero());
    }

    #[test]
    fn zero_input_rejected() {
        let x = MultiPoly::var(2, 0);
        assert!(matches!(
            sylvester_resultant(&MultiPoly::zero(2), &x, 0),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let m: Vec<Vec<MultiPoly>> = (0..5)
            .map(|_| {
                (0..5)
                    .map(|_| MultiPoly::linear(&[int(rng.gen_range(-3..4)), int(rng.gen_range(-3..4))]))
                    .collect()
            })
            .collect();
        let a = bareiss_det(m.clone()).unwrap();
        let b = crate::exact::det::poly_det(&m).unwrap();
        assert_eq!(a, b);
        for _ in 0..5 {
            let pt = [int(rng.gen_range(-5..6)), int(rng.gen_range(-5..6))];
            let rows = m.iter().map(|r| r.iter().map(|p| p.eval(&pt)).collect()).collect();
            assert_eq!(a.eval(&pt), RationalMatrix::from_rows(rows).unwrap().det().unwrap());
        }
    }

    #[test]
    fn univariate_gcd_and_squarefree() {
        // (x-1)^2 (x+2) and (x-1)(x-3)
        let a = QPoly::new(vec![int(2), int(-3), int(0), int(1)]);
        let b = QPoly::new(vec![int(3), int(-4), int(1)]);
        assert_eq!(a.gcd(&b), QPoly::new(vec![int(-1), int(1)]));
        assert_eq!(a.squarefree(), QPoly::new(vec![int(-2), int(1), int(1)]));
        assert_eq!(a.eval(&ratio(1, 1)), int(0));
    }
}
