//! Projective vectors over the complex numbers.

use num_complex::Complex64;

pub type CVec = Vec<Complex64>;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Bilinear (unconjugated) dot product.
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Hermitian inner product `<a, b> = sum conj(a_i) b_i`.
pub fn hdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Unit Euclidean norm, with the first entry of significant size made real
/// positive. Returns `None` for the zero vector.
pub fn normalize(v: &[Complex64]) -> Option<CVec> {
    let n = norm(v);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    let lead = v.iter().find(|z| z.norm() > 1e-8 * n).copied()?;
    let phase = lead.conj() / lead.norm();
    Some(v.iter().map(|z| z * phase / n).collect())
}

/// Sine of the angle between the lines spanned by `a` and `b`, computed from
/// the orthogonal component so that nearby points keep full precision.
pub fn projective_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let na = norm(a);
    let nb = norm(b);
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let coef = hdot(b, a) / (nb * nb);
    let orth: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - coef * y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (orth / na).min(1.0)
}

/// Distance from the point `p` to the projective line spanned by `a` and `b`:
/// sine of the angle between `p` and the plane `span(a, b)`.
pub fn distance_to_span(p: &[Complex64], basis: &[&[Complex64]]) -> f64 {
    // Hermitian Gram-Schmidt on the basis, then the orthogonal remainder of p.
    let mut q: Vec<CVec> = Vec::new();
    for b in basis {
        let mut v: CVec = b.to_vec();
        for u in &q {
            let c = hdot(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= c * ui;
            }
        }
        let n = norm(&v);
        if n > 1e-300 {
            q.push(v.iter().map(|z| z / n).collect());
        }
    }
    let np = norm(p);
    if np == 0.0 {
        return 0.0;
    }
    let mut r: CVec = p.to_vec();
    for u in &q {
        let c = hdot(u, &r);
        for (ri, ui) in r.iter_mut().zip(u) {
            *ri -= c * ui;
        }
    }
    norm(&r) / np
}

pub fn cross3(a: &[Complex64], b: &[Complex64]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Determinant of a 4x4 matrix given by columns.
pub fn det4(cols: [&[Complex64]; 4]) -> Complex64 {
    let m = |i: usize, j: usize| cols[j][i];
    let mut total = Complex64::new(0.0, 0.0);
    for perm in PERMS4.iter() {
        let (p, sign) = (perm.0, perm.1);
        let mut t = Complex64::new(sign, 0.0);
        for (i, &pi) in p.iter().enumerate() {
            t *= m(i, pi);
        }
        total += t;
    }
    total
}

const PERMS4: [([usize; 4], f64); 24] = [
    ([0, 1, 2, 3], 1.0),
    ([0, 1, 3, 2], -1.0),
    ([0, 2, 1, 3], -1.0),
    ([0, 2, 3, 1], 1.0),
    ([0, 3, 1, 2], 1.0),
    ([0, 3, 2, 1], -1.0),
    ([1, 0, 2, 3], -1.0),
    ([1, 0, 3, 2], 1.0),
    ([1, 2, 0, 3], 1.0),
    ([1, 2, 3, 0], -1.0),
    ([1, 3, 0, 2], -1.0),
    ([1, 3, 2, 0], 1.0),
    ([2, 0, 1, 3], 1.0),
    ([2, 0, 3, 1], -1.0),
    ([2, 1, 0, 3], -1.0),
    ([2, 1, 3, 0], 1.0),
    ([2, 3, 0, 1], 1.0),
    ([2, 3, 1, 0], -1.0),
    ([3, 0, 1, 2], -1.0),
    ([3, 0, 2, 1], 1.0),
    ([3, 1, 0, 2], 1.0),
    ([3, 1, 2, 0], -1.0),
    ([3, 2, 0, 1], -1.0),
    ([3, 2, 1, 0], 1.0),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_is_scale_free() {
        let a = vec![c64(1.0, 0.0), c64(2.0, 1.0)];
        let b: Vec<_> = a.iter().map(|z| z * c64(0.0, 3.0)).collect();
        assert!(projective_distance(&a, &b) < 1e-15);
        let e = vec![c64(1.0, 0.0), c64(1e-9, 0.0)];
        let f = vec![c64(1.0, 0.0), c64(0.0, 0.0)];
        assert!((projective_distance(&e, &f) - 1e-9).abs() < 1e-15);
    }

    #[test]
    fn normalize_fixes_phase() {
        let v = normalize(&[c64(0.0, 2.0), c64(1.0, 0.0)]).unwrap();
        assert!((norm(&v) - 1.0).abs() < 1e-15);
        assert!(v[0].im.abs() < 1e-15 && v[0].re > 0.0);
        assert!(normalize(&[c64(0.0, 0.0)]).is_none());
    }

    #[test]
    fn det4_of_identity() {
        let e: Vec<Vec<Complex64>> = (0..4)
            .map(|i| (0..4).map(|j| c64(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        assert_eq!(det4([&e[0], &e[1], &e[2], &e[3]]), c64(1.0, 0.0));
        assert_eq!(det4([&e[1], &e[0], &e[2], &e[3]]), c64(-1.0, 0.0));
    }
}
