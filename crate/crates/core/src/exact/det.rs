//! Determinants of small matrices with polynomial entries.

use std::collections::HashMap;

use num_traits::One;

use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest matrix size accepted by [`poly_det`].
pub const MAX_DET_SIZE: usize = 6;

/// Determinant of a square matrix of polynomials, by cofactor expansion along
/// rows with minors memoized on their column set.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("matrix with {n} rows is not square")));
    }
    if n > MAX_DET_SIZE {
        return Err(Error::Dimension(format!("size {n} exceeds {MAX_DET_SIZE}")));
    }
    let nvars = m[0][0].nvars();
    if m.iter().flatten().any(|p| p.nvars() != nvars) {
        return Err(Error::Dimension("entries disagree on variable count".into()));
    }
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    Ok(minor(m, 0, (1u32 << n) - 1, nvars, &mut memo))
}

fn minor(m: &[Vec<MultiPoly>], row: usize, cols: u32, nvars: usize, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
    if cols == 0 {
        return MultiPoly::constant(nvars, Rational::one());
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let mut sign_positive = true;
    for j in 0..m.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &m[row][j];
        if !entry.is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << j), nvars, memo);
            let term = entry * &sub;
            acc = if sign_positive { &acc + &term } else { &acc - &term };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::RationalMatrix;
    use crate::exact::rational::int;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_cases() {
        let x = MultiPoly::var(3, 0);
        assert_eq!(poly_det(&[vec![x.clone()]]).unwrap(), x);
        let z = MultiPoly::zero(3);
        let diag: Vec<Vec<MultiPoly>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { x.clone() } else { z.clone() }).collect())
            .collect();
        assert_eq!(poly_det(&diag).unwrap(), x.pow(4));
    }

    #[test]
    fn rejects_non_square() {
        let x = MultiPoly::var(1, 0);
        assert!(poly_det(&[vec![x.clone(), x.clone()]]).is_err());
    }

    #[test]
    fn matches_scalar_determinant_at_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let m: Vec<Vec<MultiPoly>> = (0..3)
            .map(|_| {
                (0..3)
                    .map(|_| MultiPoly::linear(&[int(rng.gen_range(-3..4)), int(rng.gen_range(-3..4))]))
                    .collect()
            })
            .collect();
        let d = poly_det(&m).unwrap();
        for _ in 0..10 {
            let pt = [int(rng.gen_range(-9..10)), int(rng.gen_range(-9..10))];
            let rows = m.iter().map(|r| r.iter().map(|p| p.eval(&pt)).collect()).collect();
            assert_eq!(d.eval(&pt), RationalMatrix::from_rows(rows).unwrap().det().unwrap());
        }
    }
}
