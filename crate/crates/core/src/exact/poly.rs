//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order (total degree first, then lexicographic with variable 0
//! largest). Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use super::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `degree` in `nvars` variables, in
/// descending graded-lex order (x0^d first). This is the global monomial order
/// used for every coefficient vector in the crate.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", format_rational(c))?;
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), c);
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} in a polynomial of {nvars} variables",
                    e.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has total degree `d`; the zero polynomial is
    /// not considered homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a polynomial in the same variable set not involving `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            out[k].add_term(Monomial(exps), c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: Complex64 = point
                    .iter()
                    .zip(&m.0)
                    .map(|(x, &e)| x.powu(e))
                    .product();
                mono * to_f64(c)
            })
            .sum()
    }

    /// Substitutes `subs[i]` for variable `i`. All substitutes must share a
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, subs: &[MultiPoly]) -> Result<MultiPoly> {
        if subs.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} substitutes for {} variables",
                subs.len(),
                self.nvars
            )));
        }
        let n = subs.first().map(|s| s.nvars).unwrap_or(0);
        if subs.iter().any(|s| s.nvars != n) {
            return Err(Error::Dimension("substitutes disagree on variable count".into()));
        }
        // Cache powers per variable.
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| vec![MultiPoly::constant(n, Rational::one()), s.clone()])
            .collect();
        let mut out = MultiPoly::zero(n);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact quotient `self / d`. Fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let (lm, lc) = d
            .leading_term()
            .ok_or_else(|| Error::DegenerateInput("division by the zero polynomial".into()))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return Err(Error::Elimination("inexact polynomial division".into()));
            }
            let tm = rm.div(&lm);
            let tc = rc / &lc;
            let mut t = MultiPoly::zero(self.nvars);
            t.add_term(tm, tc);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    /// Drops variable `var` (which must not occur), reducing the variable count.
    pub fn drop_var(&self, var: usize) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            if m.0[var] != 0 {
                return Err(Error::Input(format!("variable {var} still occurs")));
            }
            let mut e = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets variable `var` to the value `v`, keeping the variable count.
    pub fn specialize(&self, var: usize, v: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut t = c.clone();
            for _ in 0..e {
                t *= v;
            }
            let mut exps = m.0.clone();
            exps[var] = 0;
            out.add_term(Monomial(exps), t);
        }
        out
    }

    /// Coefficient vector over a fixed monomial list (e.g. from
    /// [`monomials_of_degree`]). Terms outside the list are an error.
    pub fn coefficient_vector(&self, monomials: &[Vec<u32>]) -> Result<Vec<Rational>> {
        let mut used = 0usize;
        let v: Vec<Rational> = monomials
            .iter()
            .map(|e| {
                let c = self.coeff(e);
                if !c.is_zero() {
                    used += 1;
                }
                c
            })
            .collect();
        if used != self.terms.len() {
            return Err(Error::Dimension("polynomial has terms outside the monomial list".into()));
        }
        Ok(v)
    }

    pub fn from_coefficient_vector(monomials: &[Vec<u32>], coeffs: &[Rational]) -> MultiPoly {
        let nvars = monomials.first().map(Vec::len).unwrap_or(0);
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in monomials.iter().zip(coeffs) {
            p.add_term(Monomial(e.clone()), c.clone());
        }
        p
    }

    /// JSON object mapping `"e1,...,en"` to rational strings.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (m, c) in self.terms.iter().rev() {
            map.insert(m.key(), Value::String(format_rational(c)));
        }
        Value::Object(map)
    }

    pub fn from_json(nvars: usize, v: &Value) -> Result<MultiPoly> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial terms must be a JSON object".into()))?;
        let mut p = MultiPoly::zero(nvars);
        for (k, c) in obj {
            let exps = k
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad exponent key {k:?}")))?;
            if exps.len() != nvars {
                return Err(Error::Parse(format!(
                    "exponent key {k:?} does not have {nvars} entries"
                )));
            }
            let c = match c {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) if n.is_i64() => super::rational::int(n.as_i64().unwrap()),
                _ => return Err(Error::Parse(format!("coefficient for {k:?} must be a rational string"))),
            };
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use proptest::prelude::*;

    fn xyz() -> (MultiPoly, MultiPoly, MultiPoly) {
        (MultiPoly::var(3, 0), MultiPoly::var(3, 1), MultiPoly::var(3, 2))
    }

    #[test]
    fn grlex_order_and_monomial_lists() {
        let m = monomials_of_degree(3, 2);
        let keys: Vec<_> = m.iter().map(|e| Monomial(e.clone()).key()).collect();
        assert_eq!(keys, ["2,0,0", "1,1,0", "1,0,1", "0,2,0", "0,1,1", "0,0,2"]);
        assert_eq!(monomials_of_degree(4, 8).len(), 165);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(6, 2).len(), 21);
        // descending list is strictly decreasing in the term order
        for w in m.windows(2) {
            assert!(Monomial(w[0].clone()) > Monomial(w[1].clone()));
        }
        assert!(Monomial(vec![0, 0, 3]) > Monomial(vec![2, 0, 0]));
    }

    #[test]
    fn arithmetic_and_homogeneity() {
        let (x, y, z) = xyz();
        let f = &(&x.pow(4) + &y.pow(4)) + &z.pow(4);
        assert_eq!(f.homogeneous_degree(), Some(4));
        let g = &f + &x;
        assert!(!g.is_homogeneous());
        let d = f.derivative(0);
        assert_eq!(d, x.pow(3).scale(&int(4)));
        assert!((&f - &f).is_zero());
        assert_eq!(f.coeffs_in(0).len(), 5);
    }

    #[test]
    fn exact_division_recovers_factor() {
        let (x, y, z) = xyz();
        let a = &(&x + &y.scale(&int(2))) - &z;
        let b = &(&x * &y) + &z.pow(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&(&x + &z)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let (x, y, _) = xyz();
        let p = &x.pow(2).scale(&super::super::rational::ratio(1, 3)) - &y;
        let v = p.to_json();
        assert_eq!(MultiPoly::from_json(3, &v).unwrap(), p);
        assert_eq!(v["2,0,0"], "1/3");
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(3, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], int(k)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_distributivity(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn evaluation_is_a_ring_map(p in small_poly(), q in small_poly(), a in -4i64..5, b in -4i64..5, c in 1i64..5) {
            let pt = [int(a), int(b), super::super::rational::ratio(1, c)];
            prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
        }
    }
}
