//! Quadratic forms on the bicanonical P^5.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::exact::rational::{format_rational, ratio, to_f64};
use crate::exact::{monomials_of_degree, MultiPoly, Rational, RationalMatrix};
use crate::numeric::nullspace::{pivoted_qr, CMatrix};
use crate::error::{Error, Result};

/// Relative pivot tolerance used to rank complex Gram matrices.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub enum Gram {
    Exact(RationalMatrix),
    Complex(CMatrix),
}

/// A quadric `q(v) = v^T G v` on P^5 with symmetric Gram matrix `G`.
#[derive(Clone, Debug)]
pub struct QuadricForm6 {
    gram: Gram,
    rank: usize,
}

/// The 21 quadratic monomials of P^5 in the global order.
pub fn quadric_monomials() -> Vec<Vec<u32>> {
    monomials_of_degree(6, 2)
}

fn monomial_pair(e: &[u32]) -> (usize, usize) {
    let mut idx = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize));
    let i = idx.next().expect("degree 2");
    let j = idx.next().expect("degree 2");
    (i, j)
}

impl QuadricForm6 {
    pub fn from_exact(gram: RationalMatrix) -> Result<Self> {
        if gram.rows() != 6 || gram.cols() != 6 {
            return Err(Error::Dimension("a quadric on P^5 needs a 6x6 Gram matrix".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::Input("Gram matrix is not symmetric".into()));
        }
        let rank = gram.rank();
        Ok(QuadricForm6 {
            gram: Gram::Exact(gram),
            rank,
        })
    }

    pub fn from_complex(gram: CMatrix) -> Result<Self> {
        if gram.nrows() != 6 || gram.ncols() != 6 {
            return Err(Error::Dimension("a quadric on P^5 needs a 6x6 Gram matrix".into()));
        }
        let scale = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let asym = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .map(|(i, j)| (gram[(i, j)] - gram[(j, i)]).norm())
            .fold(0.0, f64::max);
        if asym > 1e-12 * scale.max(1e-300) {
            return Err(Error::Input("Gram matrix is not symmetric".into()));
        }
        let rank = if scale == 0.0 { 0 } else { pivoted_qr(&gram, RANK_TOL).rank };
        Ok(QuadricForm6 {
            gram: Gram::Complex(gram),
            rank,
        })
    }

    /// Builds the form `sum c_k m_k` over [`quadric_monomials`].
    pub fn from_coefficients(c: &[Rational]) -> Result<Self> {
        let mons = quadric_monomials();
        if c.len() != mons.len() {
            return Err(Error::Dimension(format!("expected {} quadric coefficients", mons.len())));
        }
        let mut g = RationalMatrix::zeros(6, 6);
        let half = ratio(1, 2);
        for (e, v) in mons.iter().zip(c) {
            let (i, j) = monomial_pair(e);
            if i == j {
                g[(i, i)] = v.clone();
            } else {
                g[(i, j)] = v * &half;
                g[(j, i)] = v * &half;
            }
        }
        Self::from_exact(g)
    }

    /// Coefficients over [`quadric_monomials`] (exact forms only).
    pub fn coefficients(&self) -> Option<Vec<Rational>> {
        let g = self.exact()?;
        Some(
            quadric_monomials()
                .iter()
                .map(|e| {
                    let (i, j) = monomial_pair(e);
                    if i == j {
                        g[(i, i)].clone()
                    } else {
                        &g[(i, j)] + &g[(j, i)]
                    }
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exact(&self) -> Option<&RationalMatrix> {
        match &self.gram {
            Gram::Exact(m) => Some(m),
            Gram::Complex(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact().is_some()
    }

    pub fn gram_c64(&self) -> CMatrix {
        match &self.gram {
            Gram::Exact(m) => DMatrix::from_fn(6, 6, |i, j| Complex64::new(to_f64(&m[(i, j)]), 0.0)),
            Gram::Complex(m) => m.clone(),
        }
    }

    /// `u^T G v`; half the polarized form, so orthogonality is unaffected.
    pub fn polar(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let g = self.gram_c64();
        let mut acc = Complex64::zero();
        for i in 0..6 {
            for j in 0..6 {
                acc += u[i] * g[(i, j)] * v[j];
            }
        }
        acc
    }

    pub fn eval(&self, v: &[Complex64]) -> Complex64 {
        self.polar(v, v)
    }

    /// `|q(v)| / (|G|_F |v|^2)`. Normwise rather than termwise, so points
    /// where every monomial is tiny do not read as failures.
    pub fn relative_value(&self, v: &[Complex64]) -> f64 {
        let g = self.gram_c64();
        let s = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() * v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if s == 0.0 {
            0.0
        } else {
            self.eval(v).norm() / s
        }
    }

    /// The plane quartic `q(v(x))` obtained by composing with the Veronese map.
    pub fn pullback(&self) -> Option<MultiPoly> {
        let g = self.exact()?;
        let lift: Vec<MultiPoly> = monomials_of_degree(3, 2)
            .into_iter()
            .map(|e| MultiPoly::monomial(e, Rational::from_integer(1.into())))
            .collect();
        let mut out = MultiPoly::zero(3);
        for i in 0..6 {
            for j in 0..6 {
                if !g[(i, j)].is_zero() {
                    out = &out + &(&lift[i] * &lift[j]).scale(&g[(i, j)]);
                }
            }
        }
        Some(out)
    }

    pub fn to_json(&self) -> Value {
        match &self.gram {
            Gram::Exact(m) => json!({ "gram": m.to_json() }),
            Gram::Complex(m) => json!({
                "gram": (0..6).map(|i| (0..6).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect::<Vec<_>>()).collect::<Vec<_>>()
            }),
        }
    }

    /// Accepts `{"gram": rows}` or a bare array of rows. Entries are rational
    /// strings (exact form) or `[re, im]` pairs / plain numbers (complex form).
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v.get("gram").unwrap_or(v);
        let arr = rows
            .as_array()
            .ok_or_else(|| Error::Parse("quadric must be a 6x6 array of rows".into()))?;
        let all_strings = arr
            .iter()
            .all(|r| r.as_array().is_some_and(|r| r.iter().all(|e| e.is_string() || e.is_i64())));
        if all_strings {
            return Self::from_exact(RationalMatrix::from_json(rows)?);
        }
        if arr.len() != 6 {
            return Err(Error::Dimension("a quadric on P^5 needs a 6x6 Gram matrix".into()));
        }
        let mut m = CMatrix::zeros(6, 6);
        for (i, r) in arr.iter().enumerate() {
            let r = r
                .as_array()
                .filter(|r| r.len() == 6)
                .ok_or_else(|| Error::Dimension("a quadric on P^5 needs a 6x6 Gram matrix".into()))?;
            for (j, e) in r.iter().enumerate() {
                m[(i, j)] = parse_complex(e)?;
            }
        }
        Self::from_complex(m)
    }

    /// Human-readable coefficient listing for exact forms.
    pub fn describe(&self) -> String {
        match self.coefficients() {
            Some(c) => c.iter().map(format_rational).collect::<Vec<_>>().join(" "),
            None => "complex form".into(),
        }
    }
}

pub fn parse_complex(e: &Value) -> Result<Complex64> {
    match e {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::String(s) => Ok(Complex64::new(to_f64(&crate::exact::rational::parse_rational(s)?), 0.0)),
        Value::Array(p) if p.len() == 2 => {
            let re = p[0].as_f64().ok_or_else(|| Error::Parse("complex entry must be [re, im]".into()))?;
            let im = p[1].as_f64().ok_or_else(|| Error::Parse("complex entry must be [re, im]".into()))?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(Error::Parse("complex entry must be [re, im]".into())),
    }
    .and_then(|z| {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            Err(Error::Input("non-finite entry".into()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn coefficients_round_trip() {
        let c: Vec<Rational> = (0..21).map(|k| int(k as i64 - 7)).collect();
        let q = QuadricForm6::from_coefficients(&c).unwrap();
        assert_eq!(q.coefficients().unwrap(), c);
        let back = QuadricForm6::from_json(&q.to_json()).unwrap();
        assert_eq!(back.coefficients().unwrap(), c);
    }

    #[test]
    fn eval_matches_coefficients() {
        let c: Vec<Rational> = (0..21).map(|k| int((k * 3 % 5) as i64 - 2)).collect();
        let q = QuadricForm6::from_coefficients(&c).unwrap();
        let v: Vec<Complex64> = (0..6).map(|i| Complex64::new(0.3 * i as f64 - 0.5, 0.1 * i as f64)).collect();
        let direct: Complex64 = quadric_monomials()
            .iter()
            .zip(&c)
            .map(|(e, ck)| {
                let m: Complex64 = v.iter().zip(e).map(|(x, &k)| x.powu(k)).product();
                m * to_f64(ck)
            })
            .sum();
        assert!((direct - q.eval(&v)).norm() < 1e-12);
    }

    #[test]
    fn complex_json_and_rank() {
        let mut m = CMatrix::identity(6, 6);
        m[(5, 5)] = Complex64::new(0.0, 0.0);
        let q = QuadricForm6::from_complex(m).unwrap();
        assert_eq!(q.rank(), 5);
        let back = QuadricForm6::from_json(&q.to_json()).unwrap();
        assert_eq!(back.rank(), 5);
        assert!(!back.is_exact());
    }
}
