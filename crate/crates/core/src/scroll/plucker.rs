//! Lines of P^3 in Plücker coordinates `(p01, p02, p03, p12, p13, p23)`.

use num_complex::Complex64;

use crate::numeric::nullspace::{forced_null_vector, CMatrix};
use crate::numeric::proj::{distance_to_span, norm, CVec};

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `p_ij = a_i b_j - a_j b_i`.
pub fn plucker_from_points(a: &[Complex64], b: &[Complex64]) -> CVec {
    PAIRS.iter().map(|&(i, j)| a[i] * b[j] - a[j] * b[i]).collect()
}

/// `p01 p23 - p02 p13 + p03 p12`.
pub fn plucker_relation(p: &[Complex64]) -> Complex64 {
    p[0] * p[5] - p[1] * p[4] + p[2] * p[3]
}

/// The Plücker relation scaled by `|p|^2`.
pub fn plucker_residual(p: &[Complex64]) -> f64 {
    let n = norm(p);
    if n == 0.0 {
        0.0
    } else {
        plucker_relation(p).norm() / (n * n)
    }
}

/// Gram matrix of the Plücker relation, `v^T P v = p01 p23 - p02 p13 + p03 p12`.
pub fn plucker_gram() -> CMatrix {
    let mut g = CMatrix::zeros(6, 6);
    for (i, j, v) in [(0, 5, 0.5), (1, 4, -0.5), (2, 3, 0.5)] {
        g[(i, j)] = Complex64::new(v, 0.0);
        g[(j, i)] = Complex64::new(v, 0.0);
    }
    g
}

/// Symmetric pairing whose vanishing means the two lines meet.
pub fn incidence(p: &[Complex64], q: &[Complex64]) -> Complex64 {
    p[0] * q[5] + p[5] * q[0] - p[1] * q[4] - p[4] * q[1] + p[2] * q[3] + p[3] * q[2]
}

/// Incidence scaled by `|p| |q|`.
pub fn incidence_residual(p: &[Complex64], q: &[Complex64]) -> f64 {
    let s = norm(p) * norm(q);
    if s == 0.0 {
        0.0
    } else {
        incidence(p, q).norm() / s
    }
}

/// The line with the same points under the opposite ruling: the Hodge star,
/// which exchanges the two families of planes in the Plücker quadric.
pub fn hodge_star(p: &[Complex64]) -> CVec {
    vec![p[5], -p[4], p[3], p[2], -p[1], p[0]]
}

/// Two points spanning the line: columns `L e_i`, `L e_j` of the antisymmetric
/// matrix `L_ij = p_ij` at the entry of largest modulus, where they are
/// guaranteed independent.
pub fn spanning_points(p: &[Complex64]) -> [CVec; 2] {
    let mut l = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        l[i][j] = p[k];
        l[j][i] = -p[k];
    }
    let k = (0..6).max_by(|&a, &b| p[a].norm().total_cmp(&p[b].norm())).expect("six entries");
    let (i, j) = PAIRS[k];
    let col = |c: usize| -> CVec { (0..4).map(|r| l[r][c]).collect() };
    [col(i), col(j)]
}

/// Sine of the angle between `x` and the line spanned by `a`, `b`.
pub fn point_line_distance(x: &[Complex64], a: &[Complex64], b: &[Complex64]) -> f64 {
    distance_to_span(x, &[a, b])
}

/// Meeting point of the lines `span(a1, b1)` and `span(a2, b2)`, assumed to
/// meet: the null direction of `[a1 b1 -a2 -b2]`.
pub fn line_intersection(a1: &[Complex64], b1: &[Complex64], a2: &[Complex64], b2: &[Complex64]) -> CVec {
    let m = CMatrix::from_fn(4, 4, |i, j| match j {
        0 => a1[i],
        1 => b1[i],
        2 => -a2[i],
        _ => -b2[i],
    });
    let v = forced_null_vector(&m, 3);
    (0..4).map(|i| v[0] * a1[i] + v[1] * b1[i]).collect()
}
