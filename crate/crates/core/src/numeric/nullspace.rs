//! Rank-revealing QR with column pivoting and the numerical nullspace it
//! exposes.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::proj::{hdot, norm, CVec};

pub type CMatrix = DMatrix<Complex64>;

/// Householder QR with column pivoting, `A P = Q R`. Only `R` and the
/// permutation are kept.
#[derive(Clone, Debug)]
pub struct PivotedQr {
    pub r: CMatrix,
    pub perm: Vec<usize>,
    /// Numerical rank at the tolerance used for the factorization.
    pub rank: usize,
}

/// Factorizes `a`, stopping once the largest remaining column norm falls to
/// `tol` times the first pivot magnitude.
pub fn pivoted_qr(a: &CMatrix, tol: f64) -> PivotedQr {
    let (m, n) = a.shape();
    let mut r = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let steps = m.min(n);
    let mut first_pivot = 0.0f64;
    let mut rank = 0;
    for k in 0..steps {
        // pivot: column with largest trailing norm
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..n {
            let s: f64 = (k..m).map(|i| r[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            if s > best_norm {
                best_norm = s;
                best = j;
            }
        }
        if k == 0 {
            first_pivot = best_norm;
        }
        if best_norm <= tol * first_pivot || best_norm == 0.0 {
            break;
        }
        if best != k {
            r.swap_columns(k, best);
            perm.swap(k, best);
        }
        // Householder vector for column k, rows k..m
        let x0 = r[(k, k)];
        let alpha = if x0.norm() == 0.0 {
            Complex64::new(-best_norm, 0.0)
        } else {
            -x0 / x0.norm() * best_norm
        };
        let mut v: CVec = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vn = norm(&v);
        if vn > 0.0 {
            for z in v.iter_mut() {
                *z /= vn;
            }
            for j in k..n {
                let col: CVec = (k..m).map(|i| r[(i, j)]).collect();
                let s = hdot(&v, &col) * 2.0;
                for (t, i) in (k..m).enumerate() {
                    r[(i, j)] -= v[t] * s;
                }
            }
        }
        r[(k, k)] = alpha;
        for i in k + 1..m {
            r[(i, k)] = Complex64::new(0.0, 0.0);
        }
        rank = k + 1;
    }
    PivotedQr { r, perm, rank }
}

/// Orthonormal basis of the numerical right nullspace of `a`: pivots below
/// `tol` relative to the largest are treated as zero.
pub fn numeric_nullspace(a: &CMatrix, tol: f64) -> Vec<CVec> {
    let n = a.ncols();
    let qr = pivoted_qr(a, tol);
    let k = qr.rank;
    let mut basis: Vec<CVec> = Vec::new();
    for f in k..n {
        // Solve R11 y = -R12[:, f] by back substitution.
        let mut y = vec![Complex64::new(0.0, 0.0); k];
        for i in (0..k).rev() {
            let mut s = -qr.r[(i, f)];
            for j in i + 1..k {
                s -= qr.r[(i, j)] * y[j];
            }
            y[i] = s / qr.r[(i, i)];
        }
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..k {
            v[qr.perm[i]] = y[i];
        }
        v[qr.perm[f]] = Complex64::new(1.0, 0.0);
        basis.push(v);
    }
    orthonormalize(basis)
}

/// Modified Gram–Schmidt under the Hermitian inner product, twice for
/// stability; dependent vectors are dropped.
pub fn orthonormalize(vs: Vec<CVec>) -> Vec<CVec> {
    let mut out: Vec<CVec> = Vec::new();
    for mut v in vs {
        for _ in 0..2 {
            for u in &out {
                let c = hdot(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= c * ui;
                }
            }
        }
        let nv = norm(&v);
        if nv > 1e-14 {
            out.push(v.into_iter().map(|z| z / nv).collect());
        }
    }
    out
}

/// Unit null vector of `a` treating it as having rank exactly `rank`: the
/// direction of the first discarded pivot column. Useful when the nullity is
/// known and only its numerical position is wanted.
pub fn forced_null_vector(a: &CMatrix, rank: usize) -> CVec {
    let n = a.ncols();
    let qr = pivoted_qr(a, 0.0);
    let k = rank.min(qr.rank).min(n - 1);
    let mut y = vec![Complex64::new(0.0, 0.0); k];
    for i in (0..k).rev() {
        let mut s = -qr.r[(i, k)];
        for j in i + 1..k {
            s -= qr.r[(i, j)] * y[j];
        }
        y[i] = s / qr.r[(i, i)];
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..k {
        v[qr.perm[i]] = y[i];
    }
    v[qr.perm[k]] = Complex64::new(1.0, 0.0);
    let nv = norm(&v);
    v.into_iter().map(|z| z / nv).collect()
}

/// Frobenius norm.
pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `||a v|| / ||a||` for a unit vector `v`.
pub fn relative_residual(a: &CMatrix, v: &[Complex64]) -> f64 {
    let fa = frobenius(a);
    if fa == 0.0 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..a.nrows() {
        let row: Complex64 = (0..a.ncols()).map(|j| a[(i, j)] * v[j]).sum();
        s += row.norm_sqr();
    }
    s.sqrt() / (fa * norm(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::proj::c64;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_has_no_nullspace() {
        let a = CMatrix::identity(4, 4);
        assert!(numeric_nullspace(&a, 1e-8).is_empty());
    }

    #[test]
    fn rank_one_outer_product() {
        let u = [c64(1.0, 0.0), c64(2.0, -1.0), c64(0.5, 0.5)];
        let v = [c64(0.3, 0.0), c64(-1.0, 2.0), c64(1.0, 1.0)];
        let a = CMatrix::from_fn(3, 3, |i, j| u[i] * v[j]);
        let ns = numeric_nullspace(&a, 1e-8);
        assert_eq!(ns.len(), 2);
        for w in &ns {
            assert!(relative_residual(&a, w) < 1e-12);
            // w is orthogonal (bilinearly) to the row vector v
            let d: Complex64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
            assert!(d.norm() < 1e-12);
        }
    }

    #[test]
    fn forced_null_vector_of_rank_deficient() {
        let u = [c64(1.0, 0.0), c64(2.0, -1.0), c64(0.5, 0.5)];
        let v = [c64(0.3, 0.0), c64(-1.0, 2.0), c64(1.0, 1.0)];
        let w = [c64(0.0, 1.0), c64(1.0, 0.0), c64(-2.0, 0.0)];
        let a = CMatrix::from_fn(3, 3, |i, j| u[i] * v[j] + w[i] * u[j]);
        let n = forced_null_vector(&a, 2);
        assert!(relative_residual(&a, &n) < 1e-13);
    }

    #[test]
    fn dimensions_add_up() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for rank in 1..6 {
            let b = CMatrix::from_fn(8, rank, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let c = CMatrix::from_fn(rank, 7, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let a = &b * &c;
            let ns = numeric_nullspace(&a, 1e-8);
            let qr = pivoted_qr(&a, 1e-8);
            assert_eq!(qr.rank, rank);
            assert_eq!(ns.len() + qr.rank, 7);
            for w in &ns {
                assert!(relative_residual(&a, w) < 1e-7);
            }
        }
    }
}
