//! The plane quartic, its smoothness certificate, point samples, and the
//! bicanonical geometry of its Veronese lift to P^5.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::rational::{approximate, int};
use crate::exact::{monomials_of_degree, sylvester_resultant, MultiPoly, QPoly, Rational, RationalMatrix};
use crate::numeric::cluster::cluster_with_tolerance;
use crate::numeric::proj::{normalize, projective_distance};
use crate::numeric::{univariate_roots, CVec, ComplexPoly};
use crate::scroll::quadric::{quadric_monomials, QuadricForm6};

/// Coordinate changes tried before smoothness is reported as unknown.
pub const SMOOTHNESS_ATTEMPTS: usize = 5;
/// Samples must satisfy the quartic to this relative residual.
pub const SAMPLE_RESIDUAL: f64 = 1e-10;
/// Samples closer than this projective distance count as repeats.
pub const SAMPLE_SEPARATION: f64 = 1e-8;

const WITNESS_TOL: f64 = 1e-8;
const SMOOTHNESS_SEED: u64 = 0x5eed_c0de;

/// A point where all partials of the quartic vanish.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub point: CVec,
    /// Present when the numeric point snapped to an exact rational zero.
    pub exact: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Smoothness {
    CertifiedSmooth,
    Singular {
        witnesses: Vec<Witness>,
        /// The singular locus contains a curve (a repeated component).
        nonisolated: bool,
    },
    Unknown,
}

impl Smoothness {
    pub fn label(&self) -> &'static str {
        match self {
            Smoothness::CertifiedSmooth => "certified-smooth",
            Smoothness::Singular { .. } => "singular",
            Smoothness::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlaneQuartic {
    form: MultiPoly,
    cform: ComplexPoly,
    smoothness: Smoothness,
}

fn validate_quartic(form: &MultiPoly) -> Result<()> {
    if form.nvars() != 3 {
        return Err(Error::Input("a plane quartic has 3 variables".into()));
    }
    match form.homogeneous_degree() {
        Some(4) => Ok(()),
        Some(d) => Err(Error::Input(format!("expected a quartic form, found degree {d}"))),
        None if form.is_zero() => Err(Error::Input("zero polynomial".into())),
        None => Err(Error::Input("quartic form is not homogeneous".into())),
    }
}

impl PlaneQuartic {
    /// Validates the form and decides smoothness exactly.
    pub fn new(form: MultiPoly) -> Result<Self> {
        validate_quartic(&form)?;
        let smoothness = check_smooth_quartic(&form)?;
        let cform = ComplexPoly::from_exact(&form, 3, 0);
        Ok(PlaneQuartic { form, cform, smoothness })
    }

    pub fn fermat() -> Self {
        let p = (0..3).map(|i| MultiPoly::var(3, i).pow(4)).fold(MultiPoly::zero(3), |a, b| &a + &b);
        Self::new(p).expect("Fermat quartic is valid")
    }

    pub fn klein() -> Self {
        let v = |i| MultiPoly::var(3, i);
        let p = &(&(&v(0).pow(3) * &v(1)) + &(&v(1).pow(3) * &v(2))) + &(&v(2).pow(3) * &v(0));
        Self::new(p).expect("Klein quartic is valid")
    }

    /// A smooth quartic with integer coefficients in `-bound..=bound`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Result<Self> {
        let mons = monomials_of_degree(3, 4);
        for _ in 0..50 {
            let coeffs: Vec<Rational> = mons.iter().map(|_| int(rng.gen_range(-bound..=bound))).collect();
            let p = MultiPoly::from_coefficient_vector(&mons, &coeffs);
            if p.homogeneous_degree() != Some(4) {
                continue;
            }
            let q = Self::new(p)?;
            if q.is_smooth() {
                return Ok(q);
            }
        }
        Err(Error::Seed("no smooth quartic in 50 draws".into()))
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn complex(&self) -> &ComplexPoly {
        &self.cform
    }

    pub fn smoothness(&self) -> &Smoothness {
        &self.smoothness
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self.smoothness, Smoothness::CertifiedSmooth)
    }

    pub fn relative_residual(&self, p: &[Complex64]) -> f64 {
        self.cform.relative_residual(p)
    }

    pub fn to_json(&self) -> Value {
        json!({ "variables": 3, "terms": self.form.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let nvars = v
            .get("variables")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("quartic file needs \"variables\": 3".into()))?;
        if nvars != 3 {
            return Err(Error::Input(format!("a plane quartic has 3 variables, got {nvars}")));
        }
        let terms = v.get("terms").ok_or_else(|| Error::Parse("quartic file needs \"terms\"".into()))?;
        Self::new(MultiPoly::from_json(3, terms)?)
    }
}

fn random_transform<R: Rng + ?Sized>(rng: &mut R) -> RationalMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..3).map(|_| (0..3).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        let m = RationalMatrix::from_rows(rows).expect("3x3");
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// `f(S x)`.
fn transform(f: &MultiPoly, s: &RationalMatrix) -> MultiPoly {
    let subs: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::linear(s.row(i))).collect();
    f.substitute(&subs).expect("three substitutions")
}

fn apply(s: &RationalMatrix, p: &[Complex64]) -> CVec {
    (0..3)
        .map(|i| (0..3).map(|j| p[j] * crate::exact::rational::to_f64(&s[(i, j)])).sum())
        .collect()
}

/// Binary form in `(x1, x2)` eliminating `x0`; the plain form when `x0` is absent.
fn eliminate_x0(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    if q.degree_in(0).unwrap_or(0) == 0 {
        return Ok(q.clone());
    }
    sylvester_resultant(p, q, 0)
}

fn dehomogenize(r: &MultiPoly) -> Result<QPoly> {
    let r = r.specialize(2, &Rational::one());
    QPoly::from_multipoly(&r, 1)
}

/// Decides whether the partials of `f` have a common projective zero.
///
/// After a random integer change of coordinates with `f(1,0,0) != 0`, the
/// resultants of `f_0` with `f_1` and with `f_2` in `x0` are binary forms whose
/// common zeros contain the projections of all singular points. A constant gcd
/// with no shared zero at infinity certifies smoothness.
pub fn check_smooth_quartic(f: &MultiPoly) -> Result<Smoothness> {
    validate_quartic(f)?;
    let partials: Vec<MultiPoly> = (0..3).map(|i| f.derivative(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SMOOTHNESS_SEED);
    if partials.iter().any(MultiPoly::is_zero) {
        // f is a cone over points of P^1, or a power of a linear form; either way
        // the singular locus is found by the random-line search.
        let s = RationalMatrix::identity(3);
        let witnesses = witness_search(f, &s, None, &mut rng);
        return Ok(Smoothness::Singular {
            nonisolated: nonisolated(f, &mut rng),
            witnesses,
        });
    }
    for _ in 0..SMOOTHNESS_ATTEMPTS {
        let s = random_transform(&mut rng);
        let g = transform(f, &s);
        if g.coeff(&[4, 0, 0]).is_zero() {
            continue;
        }
        let gp: Vec<MultiPoly> = (0..3).map(|i| g.derivative(i)).collect();
        let r1 = eliminate_x0(&gp[0], &gp[1])?;
        let r2 = eliminate_x0(&gp[0], &gp[2])?;
        if r1.is_zero() || r2.is_zero() {
            // The partials share a factor: a curve of singular points.
            return Ok(Smoothness::Singular {
                witnesses: witness_search(f, &RationalMatrix::identity(3), None, &mut rng),
                nonisolated: true,
            });
        }
        let h = dehomogenize(&r1)?.gcd(&dehomogenize(&r2)?);
        let at_infinity = r1.eval(&[int(0), int(1), int(0)]).is_zero() && r2.eval(&[int(0), int(1), int(0)]).is_zero();
        if h.degree().unwrap_or(0) == 0 && !at_infinity {
            return Ok(Smoothness::CertifiedSmooth);
        }
        let witnesses = witness_search(f, &s, Some((&h, at_infinity)), &mut rng);
        if !witnesses.is_empty() {
            return Ok(Smoothness::Singular { witnesses, nonisolated: false });
        }
        // The shared projection was spurious: two different points over one
        // (x1 : x2). Another coordinate change separates them.
    }
    Ok(Smoothness::Unknown)
}

/// A quartic with a repeated component: the gradient vanishes along a curve.
fn nonisolated<R: Rng + ?Sized>(f: &MultiPoly, rng: &mut R) -> bool {
    let s = RationalMatrix::identity(3);
    let g = ComplexPoly::from_exact(f, 3, 0);
    let grads: Vec<ComplexPoly> = (0..3).map(|i| g.derivative(i)).collect();
    line_candidates(&g, &s, rng, 2)
        .iter()
        .filter(|p| grads.iter().all(|d| d.relative_residual(p) < WITNESS_TOL))
        .count()
        >= 2
}

fn line_candidates<R: Rng + ?Sized>(g: &ComplexPoly, s: &RationalMatrix, rng: &mut R, lines: usize) -> Vec<CVec> {
    let mut out = Vec::new();
    for _ in 0..lines {
        let a: CVec = (0..3).map(|_| Complex64::new(rng.gen_range(-5..=5) as f64, 0.0)).collect();
        let b: CVec = (0..3).map(|_| Complex64::new(rng.gen_range(-5..=5) as f64, 0.0)).collect();
        let c = g.restrict_to_line(&a, &b);
        if let Ok(roots) = univariate_roots(&c) {
            for r in roots {
                let p: CVec = a.iter().zip(&b).map(|(x, y)| x + r.value * y).collect();
                out.push(apply(s, &p));
            }
        }
    }
    out
}

/// Numeric singular points of `f`, located through the roots of the gcd `h`
/// (in the coordinates `S^{-1} x`) or, without a gcd, along random lines.
fn witness_search<R: Rng + ?Sized>(
    f: &MultiPoly,
    s: &RationalMatrix,
    gcd: Option<(&QPoly, bool)>,
    rng: &mut R,
) -> Vec<Witness> {
    let fc = ComplexPoly::from_exact(f, 3, 0);
    let grads: Vec<ComplexPoly> = (0..3).map(|i| fc.derivative(i)).collect();
    let mut candidates: Vec<CVec> = Vec::new();
    match gcd {
        Some((h, at_infinity)) => {
            let g = ComplexPoly::from_exact(&transform(f, s), 3, 0);
            let g0 = g.derivative(0);
            let mut fibers: Vec<(Complex64, Complex64)> = Vec::new();
            if h.degree().unwrap_or(0) > 0 {
                if let Ok(roots) = univariate_roots(&h.to_complex()) {
                    fibers.extend(roots.into_iter().map(|r| (r.value, Complex64::one())));
                }
            }
            if at_infinity {
                fibers.push((Complex64::one(), Complex64::zero()));
            }
            for (y, z) in fibers {
                let a = [Complex64::zero(), y, z];
                let b = [Complex64::one(), Complex64::zero(), Complex64::zero()];
                if let Ok(roots) = univariate_roots(&g0.restrict_to_line(&a, &b)) {
                    candidates.extend(roots.into_iter().map(|r| apply(s, &[r.value, y, z])));
                }
            }
        }
        None => {
            // Any partial that is not identically zero restricted to random lines.
            for d in grads.iter().filter(|d| !d.terms().is_empty()) {
                let id = RationalMatrix::identity(3);
                let mut pts = line_candidates(d, &id, rng, 3);
                candidates.append(&mut pts);
            }
            if grads.iter().all(|d| d.terms().is_empty()) {
                return Vec::new();
            }
            // The cone vertex of a binary form is a coordinate point.
            for k in 0..3 {
                let mut e = vec![Complex64::zero(); 3];
                e[k] = Complex64::one();
                candidates.push(e);
            }
            let _ = s;
        }
    }
    let good: Vec<CVec> = candidates
        .into_iter()
        .filter_map(|p| normalize(&p))
        .filter(|p| grads.iter().all(|d| d.relative_residual(p) < WITNESS_TOL))
        .collect();
    let clusters = cluster_with_tolerance(&good, 1e-6);
    clusters
        .representatives
        .into_iter()
        .map(|p| Witness {
            exact: snap(f, &p),
            point: p,
        })
        .collect()
}

/// Rounds a numeric singular point to a rational one and keeps it if all
/// partials vanish there exactly.
fn snap(f: &MultiPoly, p: &[Complex64]) -> Option<Vec<String>> {
    let k = (0..3).max_by(|&i, &j| p[i].norm().total_cmp(&p[j].norm()))?;
    let scaled: Vec<Complex64> = p.iter().map(|z| z / p[k]).collect();
    if scaled.iter().any(|z| z.im.abs() > 1e-9) {
        return None;
    }
    let q: Vec<Rational> = scaled.iter().map(|z| approximate(z.re, 1000)).collect::<Option<_>>()?;
    (0..3)
        .all(|i| f.derivative(i).eval(&q).is_zero())
        .then(|| q.iter().map(crate::exact::rational::format_rational).collect())
}

/// Points of C with their quartic residuals.
#[derive(Clone, Debug, Serialize)]
pub struct CurveSample {
    pub points: Vec<CVec>,
    pub seed: u64,
    pub residuals: Vec<f64>,
}

impl CurveSample {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "points": self.points.iter().map(|p| p.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "residuals": self.residuals,
        })
    }
}

/// The four intersection points of C with the line `a + t b`, each with its
/// residual. Fails when `b` lies on C (the restriction drops degree).
pub fn line_section(f: &PlaneQuartic, a: &[Complex64], b: &[Complex64]) -> Result<Vec<(CVec, f64)>> {
    let c = f.complex().restrict_to_line(a, b);
    let roots = univariate_roots(&c)?;
    if roots.len() != 4 {
        return Err(Error::DegenerateInput("line direction lies on the curve".into()));
    }
    Ok(roots
        .into_iter()
        .filter_map(|r| {
            let p: CVec = a.iter().zip(b).map(|(x, y)| x + r.value * y).collect();
            let p = normalize(&p)?;
            let res = f.relative_residual(&p);
            Some((p, res))
        })
        .collect())
}

/// `n` points of C cut out by random rational lines, taking roots round-robin
/// by index so that no sheet is favoured.
pub fn sample_curve_points(f: &PlaneQuartic, n: usize, seed: u64) -> Result<CurveSample> {
    if n == 0 {
        return Err(Error::Input("sample count must be positive".into()));
    }
    if !f.is_smooth() {
        return Err(Error::Precondition("sampling needs a certified-smooth quartic".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<CVec> = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for i in 0..n {
        let mut found = false;
        for _ in 0..100 {
            let a: CVec = (0..3).map(|_| Complex64::new(rng.gen_range(-9..=9) as f64, 0.0)).collect();
            let b: CVec = (0..3).map(|_| Complex64::new(rng.gen_range(-9..=9) as f64, 0.0)).collect();
            let Ok(section) = line_section(f, &a, &b) else { continue };
            if section.len() != 4 {
                continue;
            }
            let (p, res) = &section[i % section.len()];
            if *res >= SAMPLE_RESIDUAL || points.iter().any(|q| projective_distance(p, q) < SAMPLE_SEPARATION) {
                continue;
            }
            points.push(p.clone());
            residuals.push(*res);
            found = true;
            break;
        }
        if !found {
            return Err(Error::Sampling(format!("no acceptable point for sample {i} after 100 lines")));
        }
    }
    Ok(CurveSample { points, seed, residuals })
}

/// Monomial order and relations of the quadratic Veronese map `P^2 -> P^5`.
#[derive(Clone, Debug)]
pub struct BicanonicalFrame {
    pub monomials: Vec<Vec<u32>>,
}

impl Default for BicanonicalFrame {
    fn default() -> Self {
        BicanonicalFrame {
            monomials: monomials_of_degree(3, 2),
        }
    }
}

impl BicanonicalFrame {
    pub fn lift(&self, p: &[Complex64]) -> Result<CVec> {
        veronese_lift(p)
    }

    pub fn relations(&self) -> Vec<QuadricForm6> {
        veronese_relations()
    }
}

/// `(x^2, xy, xz, y^2, yz, z^2)` without normalization.
pub fn veronese_raw(p: &[Complex64]) -> CVec {
    vec![p[0] * p[0], p[0] * p[1], p[0] * p[2], p[1] * p[1], p[1] * p[2], p[2] * p[2]]
}

pub fn veronese_lift(p: &[Complex64]) -> Result<CVec> {
    if p.len() != 3 {
        return Err(Error::Dimension("plane points have 3 coordinates".into()));
    }
    normalize(&veronese_raw(p)).ok_or_else(|| Error::Input("zero vector has no lift".into()))
}

/// The 2x2 minors of the symmetric matrix `[[z0,z1,z2],[z1,z3,z4],[z2,z4,z5]]`,
/// which cut out the Veronese surface.
pub fn veronese_relations() -> Vec<QuadricForm6> {
    let pairs: [(&[(usize, usize)], &[(usize, usize)]); 6] = [
        (&[(0, 3)], &[(1, 1)]),
        (&[(0, 4)], &[(1, 2)]),
        (&[(0, 5)], &[(2, 2)]),
        (&[(3, 5)], &[(4, 4)]),
        (&[(1, 5)], &[(2, 4)]),
        (&[(1, 4)], &[(2, 3)]),
    ];
    let half = Rational::new(1.into(), 2.into());
    pairs
        .iter()
        .map(|(plus, minus)| {
            let mut g = RationalMatrix::zeros(6, 6);
            for (sign, list) in [(Rational::one(), plus), (-Rational::one(), minus)] {
                for &(i, j) in list.iter() {
                    if i == j {
                        g[(i, i)] += sign.clone();
                    } else {
                        g[(i, j)] += &sign * &half;
                        g[(j, i)] += &sign * &half;
                    }
                }
            }
            QuadricForm6::from_exact(g).expect("symmetric 6x6")
        })
        .collect()
}

/// The 15x21 matrix sending quadric coefficients on P^5 to the coefficients of
/// their Veronese pullback over the quartic monomials of P^2.
pub fn pullback_matrix() -> RationalMatrix {
    let lift = monomials_of_degree(3, 2);
    let quartics = monomials_of_degree(3, 4);
    let quads = quadric_monomials();
    let mut m = RationalMatrix::zeros(quartics.len(), quads.len());
    for (k, e) in quads.iter().enumerate() {
        let mut exps = vec![0u32; 3];
        for (i, &ei) in e.iter().enumerate() {
            for (t, x) in exps.iter_mut().enumerate() {
                *x += ei * lift[i][t];
            }
        }
        let row = quartics.iter().position(|q| *q == exps).expect("quartic monomial");
        m[(row, k)] += Rational::one();
    }
    m
}

/// The seven-dimensional space of quadrics containing the bicanonical curve.
#[derive(Clone, Debug)]
pub struct BicanonicalQuadrics {
    pub basis: Vec<QuadricForm6>,
    /// `true` for members of the Veronese ideal.
    pub veronese: Vec<bool>,
    /// Exact rank of the pullback map (15 for every quartic).
    pub pullback_rank: usize,
}

impl BicanonicalQuadrics {
    /// The member `sum c_i basis_i` as an exact form.
    pub fn combination(&self, c: &[Rational]) -> Result<QuadricForm6> {
        if c.len() != self.basis.len() {
            return Err(Error::Dimension(format!("expected {} weights", self.basis.len())));
        }
        let mut acc = vec![Rational::zero(); 21];
        for (w, q) in c.iter().zip(&self.basis) {
            for (a, b) in acc.iter_mut().zip(q.coefficients().expect("exact basis")) {
                *a += w * b;
            }
        }
        QuadricForm6::from_coefficients(&acc)
    }
}

/// A quadric vanishes on the bicanonical curve iff its pullback is a multiple
/// of `f`: the Veronese ideal (nullspace of the pullback map) plus one
/// particular preimage of `f`.
pub fn quadrics_through_bicanonical(f: &PlaneQuartic) -> Result<BicanonicalQuadrics> {
    if !f.is_smooth() {
        return Err(Error::Precondition("quadrics through C need a certified-smooth quartic".into()));
    }
    let l = pullback_matrix();
    let pullback_rank = l.rank();
    let target = f.form().coefficient_vector(&monomials_of_degree(3, 4))?;
    let particular = l
        .solve_particular(&target)?
        .ok_or_else(|| Error::Rank { expected: 15, found: pullback_rank })?;
    let mut basis: Vec<QuadricForm6> = l
        .nullspace()
        .iter()
        .map(|v| QuadricForm6::from_coefficients(v))
        .collect::<Result<_>>()?;
    let mut veronese = vec![true; basis.len()];
    basis.push(QuadricForm6::from_coefficients(&particular)?);
    veronese.push(false);
    Ok(BicanonicalQuadrics {
        basis,
        veronese,
        pullback_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::to_f64;

    fn quartic(terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(3, terms.iter().map(|(e, c)| (e.to_vec(), int(*c)))).unwrap()
    }

    #[test]
    fn fermat_and_klein_are_smooth() {
        assert!(PlaneQuartic::fermat().is_smooth());
        assert!(PlaneQuartic::klein().is_smooth());
    }

    #[test]
    fn fourth_power_is_singular_along_a_line() {
        let q = PlaneQuartic::new(quartic(&[(&[4, 0, 0], 1)])).unwrap();
        match q.smoothness() {
            Smoothness::Singular { witnesses, nonisolated } => {
                assert!(*nonisolated);
                assert!(!witnesses.is_empty());
                for w in witnesses {
                    // a triple root of the gradient is only located to about eps^(1/3)
                    assert!(w.point[0].norm() < 1e-4);
                }
            }
            s => panic!("expected singular, got {s:?}"),
        }
    }

    #[test]
    fn nodal_quartic_has_rational_witness() {
        // y^2 z^2 - x^2 z^2 + x^4 + y^4 has a node at (0:0:1).
        let f = quartic(&[(&[0, 2, 2], 1), (&[2, 0, 2], -1), (&[4, 0, 0], 1), (&[0, 4, 0], 1)]);
        let q = PlaneQuartic::new(f).unwrap();
        match q.smoothness() {
            Smoothness::Singular { witnesses, nonisolated } => {
                assert!(!nonisolated);
                assert!(witnesses.iter().any(|w| w.exact.as_deref() == Some(&["0".to_string(), "0".into(), "1".into()][..])));
            }
            s => panic!("expected singular, got {s:?}"),
        }
    }

    #[test]
    fn rejects_wrong_degree() {
        assert!(PlaneQuartic::new(quartic(&[(&[3, 0, 0], 1)])).is_err());
        assert!(PlaneQuartic::new(quartic(&[(&[4, 0, 0], 1), (&[1, 0, 0], 1)])).is_err());
    }

    #[test]
    fn fermat_line_section() {
        let f = PlaneQuartic::fermat();
        let a = [Complex64::new(1.0, 0.0), Complex64::zero(), Complex64::zero()];
        let b = [Complex64::zero(), Complex64::new(1.0, 0.0), Complex64::zero()];
        let sec = line_section(&f, &a, &b).unwrap();
        assert_eq!(sec.len(), 4);
        for (p, res) in sec {
            assert!(res < 1e-12);
            assert!((p[0].powu(4) + p[1].powu(4)).norm() < 1e-12);
        }
    }

    #[test]
    fn samples_are_on_curve_and_distinct() {
        let f = PlaneQuartic::fermat();
        let s = sample_curve_points(&f, 50, 7).unwrap();
        assert_eq!(s.points.len(), 50);
        assert!(s.residuals.iter().all(|&r| r < SAMPLE_RESIDUAL));
        assert!(sample_curve_points(&f, 0, 7).is_err());
        let again = sample_curve_points(&f, 50, 7).unwrap();
        assert_eq!(s.points, again.points);
    }

    #[test]
    fn lift_examples() {
        let e0 = veronese_lift(&[Complex64::new(1.0, 0.0), Complex64::zero(), Complex64::zero()]).unwrap();
        assert!((e0[0] - 1.0).norm() < 1e-15 && e0[1..].iter().all(|z| z.norm() == 0.0));
        let ones = veronese_lift(&[Complex64::new(1.0, 0.0); 3]).unwrap();
        assert!(ones.iter().all(|z| (z - 1.0 / 6f64.sqrt()).norm() < 1e-15));
        assert!(veronese_lift(&[Complex64::zero(); 3]).is_err());
        let f = PlaneQuartic::fermat();
        let s = sample_curve_points(&f, 20, 3).unwrap();
        for p in &s.points {
            let v = veronese_lift(p).unwrap();
            for q in veronese_relations() {
                assert!(q.eval(&v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn veronese_relations_pull_back_to_zero() {
        for q in veronese_relations() {
            assert!(q.pullback().unwrap().is_zero());
            assert!(q.rank() == 3 || q.rank() == 4);
        }
    }

    #[test]
    fn seven_quadrics_through_klein() {
        let f = PlaneQuartic::klein();
        let b = quadrics_through_bicanonical(&f).unwrap();
        assert_eq!(b.basis.len(), 7);
        assert_eq!(b.pullback_rank, 15);
        assert_eq!(b.veronese.iter().filter(|&&v| v).count(), 6);
        for (q, &v) in b.basis.iter().zip(&b.veronese) {
            let pb = q.pullback().unwrap();
            if v {
                assert!(pb.is_zero());
            } else {
                assert_eq!(pb, *f.form());
            }
        }
        let s = sample_curve_points(&f, 30, 11).unwrap();
        for p in &s.points {
            let v = veronese_lift(p).unwrap();
            for q in &b.basis {
                assert!(q.relative_value(&v) < 1e-10, "{}", q.relative_value(&v));
            }
        }
    }

    #[test]
    fn pullback_matrix_matches_direct_pullback() {
        let l = pullback_matrix();
        let c: Vec<Rational> = (0..21).map(|k| int((k * 7 % 11) as i64 - 5)).collect();
        let q = QuadricForm6::from_coefficients(&c).unwrap();
        let direct = q.pullback().unwrap().coefficient_vector(&monomials_of_degree(3, 4)).unwrap();
        assert_eq!(l.mul_vec(&c).unwrap(), direct);
        assert!(to_f64(&direct[0]).is_finite());
    }
}
