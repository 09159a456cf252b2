//! Trisecant lines of Γ through a point of Γ, found as the nodes of the plane
//! quintic obtained by projecting Γ from that point.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{gamma_plane_section_numeric, GammaCurve, GammaSample, NetOfQuadrics};
use crate::error::{Error, Result};
use crate::numeric::cluster::cluster_with_tolerance;
use crate::numeric::fit::{fit_hypersurface, weighted_monomials};
use crate::numeric::homotopy::{newton_refine, random_c64, solve, PolySystem, TrackerOptions};
use crate::numeric::nullspace::{numeric_nullspace, CMatrix};
use crate::numeric::proj::{dot, normalize, projective_distance, CVec};
use crate::numeric::ComplexPoly;
use crate::scroll::plucker::{plucker_from_points, plucker_residual, point_line_distance, spanning_points};

/// Projected samples required for the quintic fit.
pub const MIN_FIT_SAMPLES: usize = 40;
/// Pivot tolerance of the quintic fit.
pub const FIT_TOL: f64 = 1e-8;
const NODE_RESIDUAL: f64 = 1e-7;
/// Critical points of the projected quintic closer than this are one node.
const NODE_MERGE: f64 = 1e-3;
/// Plücker distance below which two resolved trisecants are one line.
const SAME_LINE: f64 = 1e-6;
/// Largest distance of a contact from a resolved trisecant.
const CONTACT_RESIDUAL: f64 = 1e-9;
/// Section points within this distance of an approximate line are contact
/// candidates, provided the remaining points are far away.
const LIFT_WINDOW: f64 = 1e-2;
/// Required ratio between the third and second nearest section points.
const LIFT_GAP: f64 = 100.0;

#[derive(Clone, Debug, Serialize)]
pub struct TrisecantLine {
    pub spanning_points: [CVec; 2],
    /// The three points of Γ on the line; the first is the base point.
    pub contacts: Vec<CVec>,
    /// Points of C over each contact.
    pub parameters: Vec<CVec>,
    pub plucker: CVec,
    /// Largest distance of a contact from the line.
    pub contact_residual: f64,
    pub plucker_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrisecantSearch {
    pub base: GammaSample,
    pub lines: Vec<TrisecantLine>,
    pub node_count: usize,
    pub quintic_nullity: usize,
    /// Largest relative residual of the fitted quintic on the projected samples.
    pub fit_residual: f64,
    /// Set when the node count is not 3.
    pub degeneration: Option<String>,
}

/// Cubic polynomial `κ_k(x) = adj(M(x)) e_k` placed at `offset` among `nvars`.
fn kappa_column(net: &NetOfQuadrics, k: usize, nvars: usize, offset: usize) -> Vec<ComplexPoly> {
    (0..4).map(|i| ComplexPoly::from_exact(&net.adjugate()[i][k], nvars, offset)).collect()
}

fn best_column(net: &NetOfQuadrics, x: &[Complex64]) -> usize {
    let adj = super::adjugate4(&net.matrix_at(x));
    (0..4)
        .max_by(|&a, &b| super::col_norm(&adj, a).total_cmp(&super::col_norm(&adj, b)))
        .expect("four columns")
}

fn det3_poly(cols: [&[ComplexPoly]; 3], rows: [usize; 3]) -> ComplexPoly {
    let m = |r: usize, c: usize| &cols[c][rows[r]];
    let t = |a: (usize, usize), b: (usize, usize), c: (usize, usize)| m(a.0, a.1).mul(m(b.0, b.1)).mul(m(c.0, c.1));
    t((0, 0), (1, 1), (2, 2))
        .add(&t((0, 1), (1, 2), (2, 0)))
        .add(&t((0, 2), (1, 0), (2, 1)))
        .sub(&t((0, 2), (1, 1), (2, 0)))
        .sub(&t((0, 0), (1, 2), (2, 1)))
        .sub(&t((0, 1), (1, 0), (2, 2)))
}

/// Newton refinement of two points `x1, x2` of C whose singular points are
/// collinear with the fixed point `p`.
fn refine_contacts(net: &NetOfQuadrics, p: &[Complex64], x1: &[Complex64], x2: &[Complex64]) -> Option<(CVec, CVec)> {
    let f = net.quartic()?.complex();
    let lift = |q: &ComplexPoly, off: usize| {
        let mut out = ComplexPoly::zero(6);
        for (e, c) in q.terms() {
            let mut t = ComplexPoly::constant(6, *c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&ComplexPoly::var(6, off + i));
                }
            }
            out = out.add(&t);
        }
        out
    };
    let k1 = kappa_column(net, best_column(net, x1), 6, 0);
    let k2 = kappa_column(net, best_column(net, x2), 6, 3);
    let pc: Vec<ComplexPoly> = p.iter().map(|&v| ComplexPoly::constant(6, v)).collect();
    // rows (a, b) where [p κ1] has its largest 2x2 minor
    let kv: Vec<Complex64> = super::adjugate4(&net.matrix_at(x1)).iter().map(|r| r[best_column(net, x1)]).collect();
    let mut best = (0, 1);
    let mut big = 0.0;
    for a in 0..4 {
        for b in a + 1..4 {
            let d = (p[a] * kv[b] - p[b] * kv[a]).norm();
            if d > big {
                big = d;
                best = (a, b);
            }
        }
    }
    let others: Vec<usize> = (0..4).filter(|&r| r != best.0 && r != best.1).collect();
    let minors: Vec<ComplexPoly> = others
        .iter()
        .map(|&c| det3_poly([&pc, &k1, &k2], [best.0, best.1, c]))
        .collect();
    let system = PolySystem::new(
        vec![0..3, 3..6],
        vec![lift(f, 0), lift(f, 3), minors[0].clone(), minors[1].clone()],
    )
    .ok()?;
    let z0: CVec = x1.iter().chain(x2).copied().collect();
    let (z, _) = newton_refine(&system, &z0, 8)?;
    (system.relative_residual(&z) < 1e-12).then(|| (z[0..3].to_vec(), z[3..6].to_vec()))
}

/// The three trisecants of Γ through the Γ-point `base`.
pub fn trisecants_through_point(gamma: &GammaCurve, base: &GammaSample, seed: u64) -> Result<TrisecantSearch> {
    let net = &gamma.net;
    let p = &base.kappa;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // rows of the projection from p span the annihilator of p
    let proj = numeric_nullspace(&CMatrix::from_fn(1, 4, |_, j| p[j]), 1e-12);
    let project = |v: &[Complex64]| -> CVec { proj.iter().map(|r| dot(r, v)).collect() };
    let pts: Vec<CVec> = gamma
        .samples
        .iter()
        .filter(|s| projective_distance(&s.kappa, p) > 1e-3)
        .filter_map(|s| normalize(&project(&s.kappa)))
        .collect();
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::Precondition(format!(
            "quintic fit needs {MIN_FIT_SAMPLES} Γ samples away from the base point, have {}",
            pts.len()
        )));
    }
    let mons = weighted_monomials(3, 5);
    let (phi, nullity) = fit_hypersurface(&pts, &mons, FIT_TOL);
    let phi = phi.ok_or_else(|| Error::Fit(format!("projected quintic has nullity {nullity}, expected 1")))?;
    let fit_residual = pts.iter().map(|u| phi.relative_residual(u)).fold(0.0, f64::max);

    let grads: Vec<ComplexPoly> = (0..3).map(|i| phi.derivative(i)).collect();
    let combo = |rng: &mut ChaCha8Rng| {
        let w: Vec<Complex64> = (0..3).map(|_| random_c64(rng)).collect();
        grads[0].scale(w[0]).add(&grads[1].scale(w[1])).add(&grads[2].scale(w[2]))
    };
    let (e1, e2) = (combo(&mut rng), combo(&mut rng));
    let system = PolySystem::new(vec![0..3], vec![e1, e2])?;
    let report = solve(&system, &TrackerOptions::default(), &mut rng)?;
    let found: Vec<(CVec, f64)> = report
        .regular()
        .filter_map(|r| {
            let res = grads.iter().map(|g| g.relative_residual(&r.point)).fold(0.0, f64::max);
            (res < NODE_RESIDUAL).then(|| normalize(&r.point).map(|p| (p, res)))?
        })
        .collect();
    // an ill-conditioned node can split into two nearby critical points of
    // the fitted quintic; keep the sharper one
    let pts: Vec<CVec> = found.iter().map(|(p, _)| p.clone()).collect();
    let clusters = cluster_with_tolerance(&pts, NODE_MERGE);
    let nodes: Vec<CVec> = (0..clusters.len())
        .map(|c| {
            let best = (0..found.len())
                .filter(|&i| clusters.assignment[i] == c)
                .min_by(|&a, &b| found[a].1.total_cmp(&found[b].1))
                .expect("nonempty cluster");
            found[best].0.clone()
        })
        .collect();
    let node_count = nodes.len();

    let mut lines = Vec::new();
    for n in &nodes {
        // q = Πᴴ n projects to n since the rows of Π are orthonormal
        let q: CVec = (0..4).map(|j| proj.iter().zip(n).map(|(r, nk)| r[j].conj() * nk).sum()).collect();
        // a spurious node does not refine onto three points of Γ
        if let Some(line) = lift_node(net, base, &q, &mut rng)?.filter(|l| l.contact_residual < CONTACT_RESIDUAL) {
            // split nodes refine to the same line
            match lines.iter_mut().find(|l: &&mut TrisecantLine| projective_distance(&l.plucker, &line.plucker) < SAME_LINE) {
                Some(l) if l.contact_residual > line.contact_residual => *l = line,
                Some(_) => {}
                None => lines.push(line),
            }
        }
    }
    let degeneration = (lines.len() != 3).then(|| {
        format!("found {node_count} nodes and {} resolved trisecants, expected 3", lines.len())
    });
    Ok(TrisecantSearch {
        base: base.clone(),
        lines,
        node_count,
        quintic_nullity: nullity,
        fit_residual,
        degeneration,
    })
}

/// Resolves the trisecant through `p` and `q`: intersects Γ with a plane
/// containing the line and keeps the two section points nearest to it.
fn lift_node(net: &NetOfQuadrics, base: &GammaSample, q: &[Complex64], rng: &mut ChaCha8Rng) -> Result<Option<TrisecantLine>> {
    let p = &base.kappa;
    let planes = numeric_nullspace(&CMatrix::from_fn(2, 4, |i, j| if i == 0 { p[j] } else { q[j] }), 1e-10);
    if planes.len() != 2 {
        return Ok(None);
    }
    let c = random_c64(rng);
    let h: CVec = (0..4).map(|j| planes[0][j] + c * planes[1][j]).collect();
    let section = gamma_plane_section_numeric(net, &h, 1e-6, rng)?;
    let mut rest: Vec<(f64, GammaSample)> = section
        .into_iter()
        .filter(|s| projective_distance(&s.x, &base.x) > 1e-6)
        .map(|s| (point_line_distance(&s.kappa, p, q), s))
        .collect();
    rest.sort_by(|a, b| a.0.total_cmp(&b.0));
    // the node of the fitted quintic is only approximate; Newton refinement
    // below makes the contacts collinear, and the contact residual decides
    let separated = rest.get(2).is_none_or(|r| r.0 > LIFT_GAP * rest[1].0);
    if rest.len() < 2 || rest[1].0 > LIFT_WINDOW || !separated {
        return Ok(None);
    }
    let (mut x1, mut x2) = (rest[0].1.x.clone(), rest[1].1.x.clone());
    if let Some((r1, r2)) = refine_contacts(net, p, &x1, &x2) {
        x1 = r1;
        x2 = r2;
    }
    let s1 = net.gamma_sample(&x1)?;
    let s2 = net.gamma_sample(&x2)?;
    let (k1, k2) = (s1.kappa, s2.kappa);
    let far = if projective_distance(&k1, p) >= projective_distance(&k2, p) { &k1 } else { &k2 };
    let plucker = normalize(&plucker_from_points(p, far)).expect("distinct points");
    let [a, b] = spanning_points(&plucker);
    let contacts = vec![p.clone(), k1, k2];
    let contact_residual = contacts.iter().map(|k| point_line_distance(k, &a, &b)).fold(0.0, f64::max);
    Ok(Some(TrisecantLine {
        spanning_points: [a, b],
        plucker_residual: plucker_residual(&plucker),
        plucker,
        parameters: vec![base.x.clone(), s1.x, s2.x],
        contacts,
        contact_residual,
    }))
}

/// A residual contact of the trisecants through κ(x).
#[derive(Clone, Debug, Serialize)]
pub struct ScorzaIncidence {
    pub base: GammaSample,
    /// Contacts other than the base point, two per trisecant.
    pub residuals: Vec<GammaSample>,
    pub search: TrisecantSearch,
}

/// The six points of Γ, other than κ(x), on the trisecants through κ(x).
pub fn scorza_incidence(gamma: &GammaCurve, x: &[Complex64], seed: u64) -> Result<ScorzaIncidence> {
    let base = gamma.net.gamma_sample(x)?;
    let search = trisecants_through_point(gamma, &base, seed)?;
    let residuals = search
        .lines
        .iter()
        .flat_map(|l| {
            l.parameters[1..]
                .iter()
                .zip(&l.contacts[1..])
                .map(|(x, k)| GammaSample {
                    x: x.clone(),
                    kappa: k.clone(),
                    residual: gamma.net.kernel_residual(x, k),
                    exact: false,
                })
        })
        .collect();
    Ok(ScorzaIncidence { base, residuals, search })
}

/// For each residual contact `y` of `x`, the distance from κ(x) to the nearest
/// residual contact of `y`.
pub fn scorza_symmetry(gamma: &GammaCurve, x: &[Complex64], seed: u64) -> Result<Vec<f64>> {
    let inc = scorza_incidence(gamma, x, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    inc.residuals
        .iter()
        .map(|y| {
            let back = scorza_incidence(gamma, &y.x, rng.gen())?;
            Ok(back
                .residuals
                .iter()
                .map(|r| projective_distance(&r.kappa, &inc.base.kappa))
                .fold(f64::INFINITY, f64::min))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_trisecants_through_a_point() {
        let net = NetOfQuadrics::seeded(11).unwrap();
        let gamma = GammaCurve::sample(&net, 60, 5).unwrap();
        let base = gamma.samples[0].clone();
        let s = trisecants_through_point(&gamma, &base, 1).unwrap();
        assert_eq!(s.quintic_nullity, 1);
        assert_eq!(s.node_count, 3, "{:?}", s.degeneration);
        assert_eq!(s.lines.len(), 3);
        for l in &s.lines {
            assert!(l.contact_residual < 1e-8, "{}", l.contact_residual);
            assert!(l.plucker_residual < 1e-10);
            let c = cluster_with_tolerance(&l.contacts, 1e-6);
            assert_eq!(c.len(), 3);
        }
        let lines: Vec<CVec> = s.lines.iter().map(|l| l.plucker.clone()).collect();
        assert_eq!(cluster_with_tolerance(&lines, 1e-6).len(), 3);
    }

    #[test]
    fn scorza_residuals_are_symmetric() {
        let net = NetOfQuadrics::seeded(11).unwrap();
        let gamma = GammaCurve::sample(&net, 60, 5).unwrap();
        let x = gamma.samples[3].x.clone();
        let inc = scorza_incidence(&gamma, &x, 2).unwrap();
        assert_eq!(inc.residuals.len(), 6);
        assert!(inc.residuals.iter().all(|r| projective_distance(&r.kappa, &inc.base.kappa) > 1e-6));
        let d = scorza_symmetry(&gamma, &x, 2).unwrap();
        assert!(d.iter().all(|&v| v < 1e-6), "{d:?}");
    }
}
