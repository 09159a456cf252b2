//! Normal form of a smooth quadric of P^5 as the Plücker quadric.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::plucker::plucker_gram;
use super::quadric::QuadricForm6;
use crate::error::{Error, Result};
use crate::numeric::homotopy::random_c64;
use crate::numeric::nullspace::{frobenius, orthonormalize, CMatrix};
use crate::numeric::proj::CVec;

/// Required agreement of `Tᵀ G T` with the Plücker Gram matrix.
pub const FRAME_RESIDUAL: f64 = 1e-9;
const FRAME_SEED: u64 = 0xf4a3e;

/// An invertible `T` with `Tᵀ G T = P`, where `P` is the Gram matrix of
/// `p01 p23 - p02 p13 + p03 p12`.
#[derive(Clone, Debug)]
pub struct IsotropicFrame {
    pub transform: CMatrix,
    pub inverse: CMatrix,
    /// `|Tᵀ G T - P| / |P|` (Frobenius).
    pub residual: f64,
}

#[derive(Serialize)]
struct FrameSummary {
    residual: f64,
    condition: f64,
}

impl IsotropicFrame {
    /// Plücker coordinates of a point of P^5 in this frame.
    pub fn to_plucker(&self, z: &[Complex64]) -> CVec {
        (0..6).map(|i| (0..6).map(|j| self.inverse[(i, j)] * z[j]).sum()).collect()
    }

    /// `|T|_F |T^{-1}|_F`, a cheap condition estimate.
    pub fn condition(&self) -> f64 {
        frobenius(&self.transform) * frobenius(&self.inverse)
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::to_value(FrameSummary {
            residual: self.residual,
            condition: self.condition(),
        })
        .expect("plain struct")
    }
}

fn bil(g: &CMatrix, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..6 {
        if u[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..6 {
            acc += u[i] * g[(i, j)] * v[j];
        }
    }
    acc
}

fn combine(basis: &[CVec], w: &[Complex64]) -> CVec {
    (0..6).map(|k| basis.iter().zip(w).map(|(b, c)| b[k] * c).sum()).collect()
}

/// Splits off one hyperbolic pair `(e, f)` with `B(e,e) = B(f,f) = 0`,
/// `B(e,f) = 1` from the subspace spanned by `basis`, returning the pair and
/// a basis of its orthogonal complement in that subspace.
fn peel(g: &CMatrix, basis: &[CVec], rng: &mut ChaCha8Rng) -> Result<(CVec, CVec, Vec<CVec>)> {
    let n = basis.len();
    let u1 = combine(basis, &(0..n).map(|_| random_c64(rng)).collect::<Vec<_>>());
    let u2 = combine(basis, &(0..n).map(|_| random_c64(rng)).collect::<Vec<_>>());
    let (a, b, c) = (bil(g, &u1, &u1), bil(g, &u1, &u2), bil(g, &u2, &u2));
    // a + 2 b s + c s^2 = 0
    let e: CVec = if c.norm() < 1e-14 * (a.norm() + b.norm()) {
        if b.norm() == 0.0 {
            return Err(Error::Rank { expected: 6, found: 6 - n });
        }
        let s = -a / (b * 2.0);
        u1.iter().zip(&u2).map(|(x, y)| x + s * y).collect()
    } else {
        let disc = (b * b - a * c).sqrt();
        let (s1, s2) = ((-b + disc) / c, (-b - disc) / c);
        let s = if s1.norm() <= s2.norm() { s1 } else { s2 };
        u1.iter().zip(&u2).map(|(x, y)| x + s * y).collect()
    };
    let en = crate::numeric::proj::norm(&e);
    let e: CVec = e.iter().map(|z| z / en).collect();
    let partner = basis
        .iter()
        .max_by(|x, y| bil(g, &e, x).norm().total_cmp(&bil(g, &e, y).norm()))
        .expect("nonempty basis");
    let bef = bil(g, &e, partner);
    if bef.norm() < 1e-12 {
        return Err(Error::Rank { expected: 6, found: 6 - n });
    }
    let shift = bil(g, partner, partner) / (bef * 2.0);
    let f: CVec = partner.iter().zip(&e).map(|(p, x)| (p - shift * x) / bef).collect();
    let rest: Vec<CVec> = basis
        .iter()
        .map(|w| {
            let (wf, we) = (bil(g, w, &f), bil(g, w, &e));
            (0..6).map(|k| w[k] - wf * e[k] - we * f[k]).collect()
        })
        .collect();
    let mut rest = orthonormalize(rest);
    rest.truncate(n - 2);
    Ok((e, f, rest))
}

/// Hyperbolic-pair peeling: three pairs `(e_k, f_k)` placed as
/// `t01 = e1, t23 = f1/2, t02 = e2, t13 = -f2/2, t03 = e3, t12 = f3/2`.
/// The two rulings are told apart by the sign of `det T`, which is fixed to
/// the principal square root of `det P / det G` by swapping `t03` and `t12`
/// when needed.
pub fn isotropic_frame(q: &QuadricForm6) -> Result<IsotropicFrame> {
    if q.rank() < 6 {
        return Err(Error::Rank { expected: 6, found: q.rank() });
    }
    let g = q.gram_c64();
    let mut rng = ChaCha8Rng::seed_from_u64(FRAME_SEED);
    let mut basis: Vec<CVec> = (0..6)
        .map(|i| (0..6).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    let mut pairs = Vec::new();
    for _ in 0..3 {
        let (e, f, rest) = peel(&g, &basis, &mut rng)?;
        pairs.push((e, f));
        basis = rest;
    }
    let half = |v: &CVec, s: f64| -> CVec { v.iter().map(|z| z * s).collect() };
    let mut cols: Vec<CVec> = vec![
        pairs[0].0.clone(),
        pairs[1].0.clone(),
        pairs[2].0.clone(),
        half(&pairs[2].1, 0.5),
        half(&pairs[1].1, -0.5),
        half(&pairs[0].1, 0.5),
    ];
    let build = |cols: &[CVec]| CMatrix::from_fn(6, 6, |i, j| cols[j][i]);
    let mut t = build(&cols);
    let p = plucker_gram();
    let target = (p.clone().determinant() / g.clone().determinant()).sqrt();
    let det_t = t.clone().determinant();
    if (det_t - target).norm() > (det_t + target).norm() {
        cols.swap(2, 3);
        t = build(&cols);
    }
    let inverse = t
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Frame("isotropic frame is singular".into()))?;
    let residual = frobenius(&(t.transpose() * &g * &t - &p)) / frobenius(&p);
    if residual > FRAME_RESIDUAL {
        return Err(Error::Frame(format!("frame residual {residual:.2e} exceeds {FRAME_RESIDUAL:.0e}")));
    }
    Ok(IsotropicFrame {
        transform: t,
        inverse,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::exact::RationalMatrix;

    #[test]
    fn plucker_form_itself() {
        let q = QuadricForm6::from_complex(plucker_gram()).unwrap();
        let fr = isotropic_frame(&q).unwrap();
        assert!(fr.residual < 1e-12);
    }

    #[test]
    fn identity_form_needs_complex_frame() {
        let q = QuadricForm6::from_exact(RationalMatrix::identity(6)).unwrap();
        let fr = isotropic_frame(&q).unwrap();
        assert!(fr.residual < 1e-12);
        assert!(fr.transform.iter().any(|z| z.im.abs() > 1e-3));
    }

    #[test]
    fn rank_five_is_rejected() {
        let mut m = RationalMatrix::identity(6);
        m[(5, 5)] = int(0);
        let q = QuadricForm6::from_exact(m).unwrap();
        assert!(matches!(isotropic_frame(&q), Err(Error::Rank { found: 5, .. })));
    }

    #[test]
    fn ruling_convention_fixes_determinant() {
        let mut m = RationalMatrix::identity(6);
        m[(0, 1)] = int(2);
        m[(1, 0)] = int(2);
        m[(2, 2)] = int(-3);
        let q = QuadricForm6::from_exact(m).unwrap();
        let fr = isotropic_frame(&q).unwrap();
        let target = (plucker_gram().determinant() / q.gram_c64().determinant()).sqrt();
        assert!((fr.transform.clone().determinant() - target).norm() < 1e-9 * target.norm());
    }
}
