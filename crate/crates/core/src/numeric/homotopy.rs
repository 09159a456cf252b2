//! Probability-one homotopy continuation for square systems on products of
//! projective spaces.
//!
//! Each projective factor is a block of homogeneous variables with a random
//! affine patch. The start system replaces every equation by a product of
//! random linear forms matching its multidegree, so the number of paths is the
//! multihomogeneous Bézout number rather than the total degree.

use std::ops::Range;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cpoly::ComplexPoly;
use super::proj::{norm, CVec};
use crate::error::{Error, Result};

/// Square polynomial system: `equations.len() + groups.len() == nvars`.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub nvars: usize,
    pub groups: Vec<Range<usize>>,
    pub equations: Vec<ComplexPoly>,
}

impl PolySystem {
    pub fn new(groups: Vec<Range<usize>>, equations: Vec<ComplexPoly>) -> Result<Self> {
        let nvars = groups.iter().map(|g| g.end).max().unwrap_or(0);
        let covered: usize = groups.iter().map(|g| g.len()).sum();
        if covered != nvars {
            return Err(Error::Dimension("variable groups must partition the variables".into()));
        }
        if equations.len() + groups.len() != nvars {
            return Err(Error::Dimension(format!(
                "{} equations in {} projective groups over {} variables is not square",
                equations.len(),
                groups.len(),
                nvars
            )));
        }
        for (k, e) in equations.iter().enumerate() {
            if e.nvars() != nvars {
                return Err(Error::Dimension(format!("equation {k} has the wrong variable count")));
            }
            for g in &groups {
                if !e.is_homogeneous_in_group(g.clone()) {
                    return Err(Error::Input(format!("equation {k} is not homogeneous in group {g:?}")));
                }
            }
        }
        Ok(PolySystem { nvars, groups, equations })
    }

    /// Degree of each equation in each group.
    pub fn multidegrees(&self) -> Vec<Vec<u32>> {
        self.equations
            .iter()
            .map(|e| self.groups.iter().map(|g| e.degree_in_group(g.clone())).collect())
            .collect()
    }

    fn eval_jac(&self, z: &[Complex64], values: &mut [Complex64], jac: &mut DMatrix<Complex64>) {
        let mut grad = vec![Complex64::new(0.0, 0.0); self.nvars];
        for (k, e) in self.equations.iter().enumerate() {
            values[k] = e.eval_grad(z, &mut grad);
            for (j, g) in grad.iter().enumerate() {
                jac[(k, j)] = *g;
            }
        }
    }

    /// Largest relative residual of the equations at `z`.
    pub fn relative_residual(&self, z: &[Complex64]) -> f64 {
        self.equations
            .iter()
            .map(|e| e.relative_residual(z))
            .fold(0.0, f64::max)
    }
}

/// Condition number up to which a stalled final Newton step is accepted.
const STALLED_COND: f64 = 1e6;

#[derive(Clone, Debug, Serialize)]
pub struct TrackerOptions {
    pub max_step: f64,
    pub min_step: f64,
    pub corrector_tol: f64,
    /// Endpoints whose Jacobian condition number exceeds this are singular.
    pub singular_cond: f64,
}

impl Default for TrackerOptions {
    fn default() -> Self {
        TrackerOptions {
            max_step: 0.05,
            min_step: 1e-13,
            corrector_tol: 1e-10,
            singular_cond: 1e9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathStatus {
    /// Reached `t = 1` at a nonsingular solution.
    Regular,
    /// Reached (or nearly reached) `t = 1` at a singular point.
    Singular,
    /// Step size underflowed or the path diverged before `t = 1`.
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathResult {
    pub index: usize,
    pub point: CVec,
    pub status: PathStatus,
    pub t: f64,
    pub cond: f64,
    pub residual: f64,
    pub steps: usize,
}

impl PathResult {
    pub fn group<'a>(&'a self, system: &PolySystem, g: usize) -> &'a [Complex64] {
        &self.point[system.groups[g].clone()]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub paths: Vec<PathResult>,
    pub bezout: usize,
}

impl SolveReport {
    pub fn count(&self, status: PathStatus) -> usize {
        self.paths.iter().filter(|p| p.status == status).count()
    }

    pub fn regular(&self) -> impl Iterator<Item = &PathResult> {
        self.paths.iter().filter(|p| p.status == PathStatus::Regular)
    }
}

pub fn random_c64<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_cvec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    (0..n).map(|_| random_c64(rng)).collect()
}

struct Homotopy<'a> {
    target: &'a PolySystem,
    /// `start_forms[k][g]` lists the linear factors of equation `k` in group `g`.
    start_forms: Vec<Vec<Vec<CVec>>>,
    patches: Vec<CVec>,
    gamma: Complex64,
}

impl Homotopy<'_> {
    fn n(&self) -> usize {
        self.target.nvars
    }

    fn start_eval(&self, k: usize, z: &[Complex64], grad: &mut [Complex64]) -> Complex64 {
        grad.iter_mut().for_each(|g| *g = Complex64::new(0.0, 0.0));
        // flatten factors: (group, coefficients)
        let mut vals = Vec::new();
        let mut facs = Vec::new();
        for (g, forms) in self.start_forms[k].iter().enumerate() {
            let r = self.target.groups[g].clone();
            for l in forms {
                let v: Complex64 = l.iter().zip(&z[r.clone()]).map(|(a, b)| a * b).sum();
                vals.push(v);
                facs.push((r.clone(), l));
            }
        }
        let m = vals.len();
        let mut prefix = vec![Complex64::new(1.0, 0.0); m + 1];
        for i in 0..m {
            prefix[i + 1] = prefix[i] * vals[i];
        }
        let mut suffix = Complex64::new(1.0, 0.0);
        for i in (0..m).rev() {
            let others = prefix[i] * suffix;
            let (r, l) = &facs[i];
            for (j, c) in r.clone().zip(l.iter()) {
                grad[j] += others * c;
            }
            suffix *= vals[i];
        }
        prefix[m]
    }

    /// Returns H(z,t), dH/dz and dH/dt.
    fn eval(&self, z: &[Complex64], t: f64) -> (DVector<Complex64>, DMatrix<Complex64>, DVector<Complex64>) {
        let n = self.n();
        let neq = self.target.equations.len();
        let mut fval = vec![Complex64::new(0.0, 0.0); neq];
        let mut fjac = DMatrix::zeros(n, n);
        self.target.eval_jac(z, &mut fval, &mut fjac);
        let mut h = DVector::zeros(n);
        let mut ht = DVector::zeros(n);
        let mut jac = DMatrix::zeros(n, n);
        let mut sgrad = vec![Complex64::new(0.0, 0.0); n];
        let s = Complex64::new(1.0 - t, 0.0) * self.gamma;
        for k in 0..neq {
            let sv = self.start_eval(k, z, &mut sgrad);
            h[k] = s * sv + fval[k] * t;
            ht[k] = fval[k] - self.gamma * sv;
            for j in 0..n {
                jac[(k, j)] = s * sgrad[j] + fjac[(k, j)] * t;
            }
        }
        for (g, r) in self.target.groups.iter().enumerate() {
            let row = neq + g;
            let a = &self.patches[g];
            let v: Complex64 = a.iter().zip(&z[r.clone()]).map(|(x, y)| x * y).sum();
            h[row] = v - Complex64::new(1.0, 0.0);
            for (j, c) in r.clone().zip(a.iter()) {
                jac[(row, j)] = *c;
            }
        }
        (h, jac, ht)
    }

    fn velocity(&self, z: &[Complex64], t: f64) -> Option<DVector<Complex64>> {
        let (_, j, ht) = self.eval(z, t);
        j.lu().solve(&(-ht))
    }

    /// Newton at fixed `t`; returns the corrected point, the last step norm
    /// and whether the tolerance was met with contracting steps.
    fn newton(&self, z: &[Complex64], t: f64, iters: usize, tol: f64) -> (CVec, f64, bool) {
        let mut z: CVec = z.to_vec();
        let mut last = f64::INFINITY;
        for it in 0..iters {
            let (h, j, _) = self.eval(&z, t);
            let Some(dz) = j.lu().solve(&(-h)) else {
                return (z, last, false);
            };
            let step = dz.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if !step.is_finite() {
                return (z, last, false);
            }
            for (zi, d) in z.iter_mut().zip(dz.iter()) {
                *zi += d;
            }
            let scale = 1.0 + norm(&z);
            // insist on contraction to avoid path jumping
            if it > 0 && step > 0.5 * last && step > tol * scale {
                return (z, step, false);
            }
            last = step;
            if step <= tol * scale {
                return (z, step, true);
            }
        }
        (z, last, false)
    }

    fn correct(&self, z: &[Complex64], t: f64, iters: usize, tol: f64) -> Option<CVec> {
        let (z, _, ok) = self.newton(z, t, iters, tol);
        ok.then_some(z)
    }

    fn track(&self, index: usize, z0: CVec, opts: &TrackerOptions) -> PathResult {
        let mut z = z0;
        let mut t = 0.0f64;
        let mut h = opts.max_step.min(0.01);
        let mut successes = 0;
        let mut steps = 0;
        let mut failed = false;
        while t < 1.0 {
            steps += 1;
            if steps > 200_000 {
                failed = true;
                break;
            }
            let step = h.min(1.0 - t);
            let predicted = self.rk4(&z, t, step);
            let corrected = predicted.and_then(|p| self.correct(&p, t + step, 3, opts.corrector_tol));
            match corrected {
                Some(zn) if zn.iter().all(|c| c.re.is_finite() && c.im.is_finite()) => {
                    if norm(&zn) > 1e10 {
                        failed = true;
                        break;
                    }
                    z = zn;
                    t += step;
                    successes += 1;
                    if successes >= 3 {
                        h = (h * 2.0).min(opts.max_step);
                        successes = 0;
                    }
                }
                _ => {
                    h *= 0.5;
                    successes = 0;
                    if h < opts.min_step {
                        failed = true;
                        break;
                    }
                }
            }
        }
        self.finish(index, z, t, steps, failed, opts)
    }

    fn rk4(&self, z: &[Complex64], t: f64, h: f64) -> Option<CVec> {
        let hc = Complex64::new(h, 0.0);
        let add = |a: &[Complex64], k: &DVector<Complex64>, s: f64| -> CVec {
            a.iter().zip(k.iter()).map(|(x, y)| x + y * hc * s).collect()
        };
        let k1 = self.velocity(z, t)?;
        let k2 = self.velocity(&add(z, &k1, 0.5), t + 0.5 * h)?;
        let k3 = self.velocity(&add(z, &k2, 0.5), t + 0.5 * h)?;
        let k4 = self.velocity(&add(z, &k3, 1.0), t + h)?;
        Some(
            (0..z.len())
                .map(|i| z[i] + hc * (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) / 6.0)
                .collect(),
        )
    }

    fn finish(&self, index: usize, z: CVec, t: f64, steps: usize, failed: bool, opts: &TrackerOptions) -> PathResult {
        // Close to the end a failed path usually means a singular endpoint.
        let near_end = t > 1.0 - 1e-6;
        if failed && !near_end {
            let residual = self.target.relative_residual(&z);
            return PathResult {
                index,
                point: z,
                status: PathStatus::Failed,
                t,
                cond: f64::INFINITY,
                residual,
                steps,
            };
        }
        // Newton converges quadratically only at nonsingular endpoints.
        let before = self.target.relative_residual(&z);
        let (refined, _, converged) = self.newton(&z, 1.0, 8, 1e-13);
        // near a singular endpoint Newton may wander off; keep the better point
        let z = if converged || self.target.relative_residual(&refined) <= before { refined } else { z };
        let (_, j, _) = self.eval(&z, 1.0);
        let cond = condition_number(&j);
        let residual = self.target.relative_residual(&z);
        // rounding can stall the contraction test at a moderately conditioned
        // endpoint; a tiny residual there still marks a regular solution
        let stalled = cond < STALLED_COND && residual < 1e-13;
        let status = if (converged || stalled) && cond < opts.singular_cond && residual < 1e-10 {
            PathStatus::Regular
        } else {
            PathStatus::Singular
        };
        PathResult {
            index,
            point: z,
            status,
            t,
            cond,
            residual,
            steps,
        }
    }
}

/// Frobenius-norm condition number; infinite for singular matrices.
pub fn condition_number(j: &DMatrix<Complex64>) -> f64 {
    match j.clone().try_inverse() {
        Some(inv) => j.norm() * inv.norm(),
        None => f64::INFINITY,
    }
}

fn solve_linear(rows: &[&[Complex64]], rhs: &[Complex64]) -> Option<CVec> {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(rhs);
    let lu = m.lu();
    let x = lu.solve(&b)?;
    let v: CVec = x.iter().copied().collect();
    if v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) && condition_number(&DMatrix::from_fn(n, n, |i, j| rows[i][j])) < 1e12 {
        Some(v)
    } else {
        None
    }
}

/// Enumerates the start solutions of the linear-product start system.
fn start_solutions(system: &PolySystem, forms: &[Vec<Vec<CVec>>], patches: &[CVec]) -> Vec<CVec> {
    let neq = system.equations.len();
    let ng = system.groups.len();
    let need: Vec<usize> = system.groups.iter().map(|g| g.len() - 1).collect();
    let mut out = Vec::new();
    let mut choice: Vec<(usize, usize)> = Vec::with_capacity(neq);
    let mut counts = vec![0usize; ng];

    fn rec(
        k: usize,
        system: &PolySystem,
        forms: &[Vec<Vec<CVec>>],
        patches: &[CVec],
        need: &[usize],
        counts: &mut Vec<usize>,
        choice: &mut Vec<(usize, usize)>,
        out: &mut Vec<CVec>,
    ) {
        if k == forms.len() {
            let mut z = vec![Complex64::new(0.0, 0.0); system.nvars];
            for (g, r) in system.groups.iter().enumerate() {
                let mut rows: Vec<&[Complex64]> = Vec::new();
                let mut rhs = Vec::new();
                for (e, &(cg, m)) in choice.iter().enumerate() {
                    if cg == g {
                        rows.push(&forms[e][g][m]);
                        rhs.push(Complex64::new(0.0, 0.0));
                    }
                }
                rows.push(&patches[g]);
                rhs.push(Complex64::new(1.0, 0.0));
                match solve_linear(&rows, &rhs) {
                    Some(v) => z[r.clone()].copy_from_slice(&v),
                    None => return,
                }
            }
            out.push(z);
            return;
        }
        for g in 0..forms[k].len() {
            if counts[g] >= need[g] {
                continue;
            }
            for m in 0..forms[k][g].len() {
                counts[g] += 1;
                choice.push((g, m));
                rec(k + 1, system, forms, patches, need, counts, choice, out);
                choice.pop();
                counts[g] -= 1;
            }
        }
    }
    rec(0, system, forms, patches, &need, &mut counts, &mut choice, &mut out);
    out
}

/// Tracks every path of the multihomogeneous linear-product homotopy. Paths run
/// in parallel; results are ordered by start index so output is deterministic.
pub fn solve<R: Rng + ?Sized>(system: &PolySystem, opts: &TrackerOptions, rng: &mut R) -> Result<SolveReport> {
    let degs = system.multidegrees();
    let start_forms: Vec<Vec<Vec<CVec>>> = degs
        .iter()
        .map(|d| {
            system
                .groups
                .iter()
                .zip(d)
                .map(|(g, &dg)| (0..dg).map(|_| random_cvec(rng, g.len())).collect())
                .collect()
        })
        .collect();
    let patches: Vec<CVec> = system.groups.iter().map(|g| random_cvec(rng, g.len())).collect();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let gamma = Complex64::from_polar(1.0, theta);
    let hom = Homotopy {
        target: system,
        start_forms,
        patches,
        gamma,
    };
    let starts = start_solutions(system, &hom.start_forms, &hom.patches);
    let bezout = starts.len();
    let paths: Vec<PathResult> = starts
        .into_par_iter()
        .enumerate()
        .map(|(i, z0)| hom.track(i, z0, opts))
        .collect();
    Ok(SolveReport { paths, bezout })
}

/// Newton's method for a square system at a given point, using the local
/// patches `conj(z_g) . w_g = |z_g|^2`. Returns the refined point and the
/// condition number of the final Jacobian, or `None` on divergence.
pub fn newton_refine(system: &PolySystem, z0: &[Complex64], iters: usize) -> Option<(CVec, f64)> {
    let n = system.nvars;
    let neq = system.equations.len();
    let patches: Vec<(CVec, Complex64)> = system
        .groups
        .iter()
        .map(|g| {
            let zg = &z0[g.clone()];
            let a: CVec = zg.iter().map(|c| c.conj()).collect();
            let rhs = zg.iter().map(|c| c.norm_sqr()).sum::<f64>();
            (a, Complex64::new(rhs, 0.0))
        })
        .collect();
    let mut z = z0.to_vec();
    let mut vals = vec![Complex64::new(0.0, 0.0); neq];
    let mut jac = DMatrix::zeros(n, n);
    let build = |z: &[Complex64], vals: &mut [Complex64], jac: &mut DMatrix<Complex64>| -> DVector<Complex64> {
        system.eval_jac(z, vals, jac);
        let mut h = DVector::zeros(n);
        for k in 0..neq {
            h[k] = vals[k];
        }
        for (g, r) in system.groups.iter().enumerate() {
            let (a, rhs) = &patches[g];
            let v: Complex64 = a.iter().zip(&z[r.clone()]).map(|(x, y)| x * y).sum();
            h[neq + g] = v - rhs;
            for j in 0..n {
                jac[(neq + g, j)] = Complex64::new(0.0, 0.0);
            }
            for (j, c) in r.clone().zip(a.iter()) {
                jac[(neq + g, j)] = *c;
            }
        }
        h
    };
    for _ in 0..iters {
        let h = build(&z, &mut vals, &mut jac);
        let dz = jac.clone().lu().solve(&(-h))?;
        let step = dz.norm();
        for (zi, d) in z.iter_mut().zip(dz.iter()) {
            *zi += d;
        }
        if !z.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return None;
        }
        if step <= 1e-15 * (1.0 + norm(&z)) {
            break;
        }
    }
    build(&z, &mut vals, &mut jac);
    let cond = condition_number(&jac);
    Some((z, cond))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::cluster::cluster_with_tolerance;
    use crate::numeric::proj::c64;
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(5)
    }

    #[test]
    fn conic_meets_cubic_in_six_points() {
        // x^2 + y^2 - z^2 and x^3 - y z^2 + 2 x y z in one P^2 group
        let v = |i| ComplexPoly::var(3, i);
        let (x, y, z) = (v(0), v(1), v(2));
        let conic = x.mul(&x).add(&y.mul(&y)).sub(&z.mul(&z));
        let cubic = x.mul(&x).mul(&x).sub(&y.mul(&z).mul(&z)).add(&x.mul(&y).mul(&z).scale(c64(2.0, 0.0)));
        let sys = PolySystem::new(vec![0..3], vec![conic.clone(), cubic.clone()]).unwrap();
        let rep = solve(&sys, &TrackerOptions::default(), &mut rng()).unwrap();
        assert_eq!(rep.bezout, 6);
        assert_eq!(rep.count(PathStatus::Regular), 6);
        for p in rep.regular() {
            assert!(conic.relative_residual(&p.point) < 1e-12);
            assert!(cubic.relative_residual(&p.point) < 1e-12);
        }
        let pts: Vec<CVec> = rep.regular().map(|p| p.point.clone()).collect();
        assert_eq!(cluster_with_tolerance(&pts, 1e-6).len(), 6);
    }

    #[test]
    fn two_groups_bilinear_count() {
        // On P^1 x P^1: a bidegree-(2,1) and a bidegree-(1,2) form meet in
        // 2*2 + 1*1 = 5 points.
        let v = |i| ComplexPoly::var(4, i);
        let (a0, a1, b0, b1) = (v(0), v(1), v(2), v(3));
        let e1 = a0.mul(&a0).mul(&b0).add(&a1.mul(&a1).mul(&b1).scale(c64(-3.0, 1.0))).add(&a0.mul(&a1).mul(&b1));
        let e2 = a0.mul(&b0).mul(&b0).sub(&a1.mul(&b1).mul(&b1)).add(&a1.mul(&b0).mul(&b1).scale(c64(0.5, 0.0)));
        let sys = PolySystem::new(vec![0..2, 2..4], vec![e1, e2]).unwrap();
        let rep = solve(&sys, &TrackerOptions::default(), &mut rng()).unwrap();
        assert_eq!(rep.bezout, 5);
        assert_eq!(rep.count(PathStatus::Regular), 5);
    }

    #[test]
    fn double_root_is_singular() {
        // x^2 - 2xz + z^2 = (x - z)^2 together with y - 2 z
        let v = |i| ComplexPoly::var(3, i);
        let (x, y, z) = (v(0), v(1), v(2));
        let sq = x.sub(&z).mul(&x.sub(&z));
        let lin = y.sub(&z.scale(c64(2.0, 0.0)));
        let sys = PolySystem::new(vec![0..3], vec![sq, lin]).unwrap();
        let rep = solve(&sys, &TrackerOptions::default(), &mut rng()).unwrap();
        assert_eq!(rep.bezout, 2);
        assert_eq!(rep.count(PathStatus::Regular), 0);
        for p in &rep.paths {
            let r = p.point[0] / p.point[2];
            assert!((r - c64(1.0, 0.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn refine_recovers_precision() {
        let v = |i| ComplexPoly::var(3, i);
        let (x, y, z) = (v(0), v(1), v(2));
        let e1 = x.mul(&x).sub(&z.mul(&z).scale(c64(2.0, 0.0)));
        let e2 = y.sub(&x);
        let sys = PolySystem::new(vec![0..3], vec![e1, e2]).unwrap();
        let guess = vec![c64(1.4, 0.0), c64(1.41, 0.0), c64(1.0, 0.0)];
        let (z, cond) = newton_refine(&sys, &guess, 20).unwrap();
        assert!(cond < 1e6);
        assert!(((z[0] / z[2]) - c64(2f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_square() {
        let x = ComplexPoly::var(3, 0);
        assert!(PolySystem::new(vec![0..3], vec![x]).is_err());
    }
}
