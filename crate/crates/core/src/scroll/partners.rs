//! Lines of the scroll meeting a given line.
//!
//! `ℓ_x` and `ℓ_y` meet exactly when `v(x)ᵀ G v(y) = 0`. For fixed `x` this is
//! a conic through `x`; its other four-fold intersection with C, after
//! removing `x` twice, gives the six partners.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linemap::LineMap;
use super::plucker::{incidence_residual, line_intersection};
use crate::curve::PlaneQuartic;
use crate::error::{Error, Result};
use crate::numeric::cluster::cluster_with_tolerance;
use crate::numeric::cpoly::deflate;
use crate::numeric::homotopy::{newton_refine, random_cvec, PolySystem};
use crate::numeric::nullspace::CMatrix;
use crate::numeric::proj::{normalize, projective_distance, CVec};
use crate::numeric::roots::{backward_residual, univariate_roots};
use crate::numeric::ComplexPoly;

pub const PARTNER_COUNT: usize = 6;
/// Relative size of `S x` below which the conic is singular at `x`.
const SINGULAR_CONIC: f64 = 1e-8;
/// Relative residual a deflated root of `x` must meet.
const DOUBLE_ROOT_TOL: f64 = 1e-6;
/// Partners closer than this to `x` or to each other mark a tangency.
const SEPARATION: f64 = 1e-5;
const PARAMETRIZATION_RETRIES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicKind {
    Smooth,
    /// The conic is singular at `x` and splits into two lines through it.
    LinePair,
}

#[derive(Clone, Debug, Serialize)]
pub struct Partner {
    pub y: CVec,
    /// The meeting point `ℓ_x ∩ ℓ_y`.
    pub o: CVec,
    pub curve_residual: f64,
    pub incidence_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartnerSet {
    pub x: CVec,
    pub conic: ConicKind,
    pub partners: Vec<Partner>,
    /// Set when `x` is not general: a root at `x` of the wrong multiplicity or
    /// coinciding partners. Partners are then not to be trusted.
    pub tangency: Option<String>,
}

impl PartnerSet {
    pub fn is_general(&self) -> bool {
        self.tangency.is_none() && self.partners.len() == PARTNER_COUNT
    }

    /// Sizes of the groups of partners whose meeting points coincide, largest
    /// first: six ones for a generic scroll.
    pub fn collision_profile(&self, tol: f64) -> Vec<usize> {
        let os: Vec<CVec> = self.partners.iter().map(|p| p.o.clone()).collect();
        let mut m = cluster_with_tolerance(&os, tol).multiplicities;
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }
}

/// The symmetric 3x3 matrix of the conic `y ↦ v(x)ᵀ G v(y)`.
fn conic_matrix(g: &CMatrix, x: &[Complex64]) -> [[Complex64; 3]; 3] {
    let v = crate::curve::veronese_raw(x);
    let u: CVec = (0..6).map(|i| (0..6).map(|j| g[(i, j)] * v[j]).sum()).collect();
    let h = |z: Complex64| z * 0.5;
    [[u[0], h(u[1]), h(u[2])], [h(u[1]), u[3], h(u[4])], [h(u[2]), h(u[4]), u[5]]]
}

fn form(s: &[[Complex64; 3]; 3], a: &[Complex64], b: &[Complex64]) -> Complex64 {
    (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| a[i] * s[i][j] * b[j]).sum()
}

fn conic_poly(s: &[[Complex64; 3]; 3]) -> ComplexPoly {
    let mut p = ComplexPoly::zero(3);
    for i in 0..3 {
        for j in 0..3 {
            p = p.add(&ComplexPoly::var(3, i).mul(&ComplexPoly::var(3, j)).scale(s[i][j]));
        }
    }
    p
}

fn upoly_add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default())
        .collect()
}

fn scaled(a: &[Complex64], c: Complex64) -> Vec<Complex64> {
    a.iter().map(|z| z * c).collect()
}

/// Candidate partners on a smooth conic through `x`, parametrized by the
/// pencil of lines through `x` with direction `a + s b`.
fn smooth_conic_roots(
    f: &PlaneQuartic,
    s: &[[Complex64; 3]; 3],
    x: &[Complex64],
    a: &[Complex64],
    b: &[Complex64],
) -> Result<std::result::Result<Vec<CVec>, String>> {
    // y(s) = -K(c,c) x + 2 K(x,c) c with c = a + s b
    let kcc = [form(s, a, a), form(s, a, b) * 2.0, form(s, b, b)];
    let kxc = [form(s, x, a), form(s, x, b)];
    let y: Vec<Vec<Complex64>> = (0..3)
        .map(|i| {
            let c = [a[i], b[i]];
            upoly_add(&scaled(&kcc, -x[i]), &scaled(&crate::numeric::cpoly::upoly_mul(&kxc, &c), Complex64::new(2.0, 0.0)))
        })
        .collect();
    let g = f.complex().compose_univariate(&y);
    let st = -kxc[0] / kxc[1];
    if !st.re.is_finite() || !st.im.is_finite() {
        return Err(Error::DegenerateInput("tangent direction at x is not in the chart".into()));
    }
    let (q1, _) = deflate(&g, st);
    let r1 = backward_residual(&g, st);
    let (q2, _) = deflate(&q1, st);
    let r2 = backward_residual(&q1, st);
    if r1 > DOUBLE_ROOT_TOL || r2 > DOUBLE_ROOT_TOL {
        return Ok(Err(format!("x is not a double root (residuals {r1:.1e}, {r2:.1e})")));
    }
    if backward_residual(&q2, st) < DOUBLE_ROOT_TOL {
        return Ok(Err("x is a root of multiplicity above 2".into()));
    }
    let roots = univariate_roots(&q2)?;
    if roots.len() != PARTNER_COUNT {
        return Err(Error::DegenerateInput("partner polynomial dropped degree".into()));
    }
    Ok(Ok(roots
        .iter()
        .map(|r| {
            let p: CVec = y.iter().map(|c| c.iter().rev().fold(Complex64::default(), |acc, k| acc * r.value + k)).collect();
            p
        })
        .collect()))
}

/// Candidate partners when the conic is a pair of lines through `x`: three
/// further points of C on each line.
fn line_pair_roots(
    f: &PlaneQuartic,
    s: &[[Complex64; 3]; 3],
    x: &[Complex64],
    a: &[Complex64],
    b: &[Complex64],
) -> Result<std::result::Result<Vec<CVec>, String>> {
    let quad = [form(s, a, a), form(s, a, b) * 2.0, form(s, b, b)];
    let rs = univariate_roots(&quad)?;
    if rs.len() != 2 {
        return Err(Error::DegenerateInput("line pair direction at infinity".into()));
    }
    if (rs[0].value - rs[1].value).norm() < 1e-6 * (1.0 + rs[0].value.norm()) {
        return Ok(Err("the conic is a double line".into()));
    }
    let mut out = Vec::new();
    for r in rs {
        let d: CVec = (0..3).map(|i| a[i] + r.value * b[i]).collect();
        // f(d + μ x): the top coefficient is f(x) = 0
        let mut c = f.complex().restrict_to_line(&d, x);
        let top = c.pop().unwrap_or_default();
        let scale: f64 = c.iter().map(|z| z.norm()).sum();
        if top.norm() > 1e-8 * scale {
            return Ok(Err("x is not on the curve to working precision".into()));
        }
        let mu = univariate_roots(&c)?;
        if mu.len() != 3 {
            return Ok(Err("a line of the pair is tangent to C at x".into()));
        }
        out.extend(mu.iter().map(|m| (0..3).map(|i| d[i] + m.value * x[i]).collect::<CVec>()));
    }
    Ok(Ok(out))
}

/// The six partners `y` of a point `x` of C with the meeting points of their
/// lines. Random parametrization choices come from `seed`.
pub fn double_curve_partners(map: &LineMap, f: &PlaneQuartic, x: &[Complex64], seed: u64) -> Result<PartnerSet> {
    let x = normalize(x).ok_or_else(|| Error::Input("zero point".into()))?;
    let g = map.quadric.gram_c64();
    let s = conic_matrix(&g, &x);
    let sx: Vec<Complex64> = (0..3).map(|i| (0..3).map(|j| s[i][j] * x[j]).sum()).collect();
    let snorm = s.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let conic = if crate::numeric::proj::norm(&sx) < SINGULAR_CONIC * snorm {
        ConicKind::LinePair
    } else {
        ConicKind::Smooth
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = None;
    let mut candidates = None;
    for _ in 0..PARAMETRIZATION_RETRIES {
        let (a, b) = (random_cvec(&mut rng, 3), random_cvec(&mut rng, 3));
        let attempt = match conic {
            ConicKind::Smooth => smooth_conic_roots(f, &s, &x, &a, &b),
            ConicKind::LinePair => line_pair_roots(f, &s, &x, &a, &b),
        };
        match attempt {
            Ok(c) => {
                candidates = Some(c);
                break;
            }
            Err(e) => last_err = Some(e),
        }
    }
    let candidates = match candidates {
        Some(c) => c,
        None => return Err(last_err.expect("at least one attempt")),
    };
    let ys = match candidates {
        Ok(ys) => ys,
        Err(reason) => {
            return Ok(PartnerSet {
                x,
                conic,
                partners: Vec::new(),
                tangency: Some(reason),
            })
        }
    };
    let system = PolySystem::new(vec![0..3], vec![f.complex().clone(), conic_poly(&s)])?;
    let self_line = map.line_of(&x);
    let mut partners = Vec::with_capacity(ys.len());
    let mut tangency = None;
    for y0 in ys {
        let y0 = normalize(&y0).ok_or_else(|| Error::DegenerateInput("partner at zero".into()))?;
        let y = newton_refine(&system, &y0, 4).map(|(y, _)| y).unwrap_or(y0);
        let y = normalize(&y).expect("refined point is nonzero");
        if projective_distance(&y, &x) < SEPARATION {
            tangency = Some("a partner coincides with x".to_string());
        }
        if partners.iter().any(|p: &Partner| projective_distance(&p.y, &y) < SEPARATION) {
            tangency = Some("two partners coincide".to_string());
        }
        let other = map.line_of(&y);
        let [a1, b1] = &self_line.1;
        let [a2, b2] = &other.1;
        let o = normalize(&line_intersection(a1, b1, a2, b2)).expect("meeting point is nonzero");
        partners.push(Partner {
            curve_residual: f.relative_residual(&y),
            incidence_residual: incidence_residual(&self_line.0, &other.0),
            y,
            o,
        });
    }
    Ok(PartnerSet {
        x,
        conic,
        partners,
        tangency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::quadrics_through_bicanonical;
    use crate::exact::rational::int;
    use crate::scroll::linemap::build_line_map;

    fn generic() -> (LineMap, PlaneQuartic) {
        let f = PlaneQuartic::klein();
        let qs = quadrics_through_bicanonical(&f).unwrap();
        let w: Vec<_> = [1, -2, 3, 1, 1, -1, 4].iter().map(|&k| int(k)).collect();
        let q = qs.combination(&w).unwrap();
        (build_line_map(&q, &f, 12, 7, false).unwrap(), f)
    }

    #[test]
    fn six_partners_and_symmetry() {
        let (map, f) = generic();
        let x = map.assignments[0].x.clone();
        let ps = double_curve_partners(&map, &f, &x, 1).unwrap();
        assert!(ps.is_general(), "{:?}", ps.tangency);
        assert_eq!(ps.collision_profile(1e-6), vec![1; 6]);
        for p in &ps.partners {
            assert!(p.curve_residual < 1e-10);
            assert!(p.incidence_residual < 1e-9);
            let back = double_curve_partners(&map, &f, &p.y, 2).unwrap();
            assert!(back.partners.iter().any(|q| projective_distance(&q.y, &x) < 1e-6));
        }
    }

    #[test]
    fn veronese_quadric_gives_line_pairs() {
        let f = PlaneQuartic::klein();
        let qs = quadrics_through_bicanonical(&f).unwrap();
        let w: Vec<_> = [2, -1, 3, 1, 5, -2, 0].iter().map(|&k| int(k)).collect();
        let q = qs.combination(&w).unwrap();
        assert_eq!(q.rank(), 6);
        let map = build_line_map(&q, &f, 4, 3, false).unwrap();
        let ps = double_curve_partners(&map, &f, &map.assignments[1].x, 5).unwrap();
        assert_eq!(ps.conic, ConicKind::LinePair);
        assert!(ps.is_general(), "{:?}", ps.tangency);
        assert_eq!(ps.collision_profile(1e-6), vec![3, 3]);
    }
}
