//! Measured invariants of a scroll and its place in the classification.
//!
//! Two routes feed the same report. From a quadric `G` through C the scroll is
//! built from the line map; from a net of quadrics it is the scroll of the
//! trisecant lines of Γ. Every count carries its tolerance and sample size,
//! and a classification is only given when its defining tests pass.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::double_curve::{double_curve_plane_count, DoubleCurveCount, EXPECTED_DEGREE};
use super::linemap::{build_line_map, LineMap};
use super::multiplicity::{multiplicity_along_curve, MultiplicityCheck, DERIVATIVE_TOL};
use super::octic::{fit_nullity, fit_scroll, OcticSurface, MIN_LINES, MIN_POINTS_PER_LINE, SCROLL_DEGREE};
use super::partners::{double_curve_partners, PartnerSet, PARTNER_COUNT};
use super::quadric::QuadricForm6;
use super::special::{contains_curve, detect_veronese_containment};
use super::triple::{triple_locus_scan, TripleScan, EXPECTED_TRIPLE_POINTS};
use crate::curve::{sample_curve_points, veronese_lift, PlaneQuartic};
use crate::error::{Error, Result};
use crate::net::trisecant::{trisecants_through_point, TrisecantSearch};
use crate::net::{gamma_plane_section_numeric, GammaCurve, NetOfQuadrics, NetStatus};
use crate::numeric::cluster::cluster_with_tolerance;
use crate::numeric::homotopy::{random_cvec, TrackerOptions};
use crate::numeric::proj::{projective_distance, CVec};

/// Points of C whose partners are computed.
pub const PARTNER_POINTS: usize = 20;
/// Largest admissible share of tangency-flagged partner computations.
pub const MAX_TANGENCY_RATE: f64 = 0.1;
/// Random lines intersected with the fitted surface.
pub const DEGREE_LINES: usize = 10;
/// Random planes for the double-curve count.
pub const PLANES: usize = 3;
/// Highest derivative order checked along the singular curve.
pub const MULTIPLICITY_ORDER: usize = 4;
/// Relative residual for the second derivatives at a triple point.
pub const TRIPLE_DERIVATIVE_TOL: f64 = 1e-5;
/// Lines checked to meet the singular curve the expected number of times.
pub const CONTACT_LINES: usize = 10;
/// Γ points used as bases of trisecant searches.
pub const TRISECANT_BASES: usize = 20;
/// Γ points on which the multiplicity is checked.
pub const GAMMA_SAMPLES: usize = 25;
/// Trisecants whose contacts are followed to get their collision profile.
pub const COLLISION_LINES: usize = 3;
/// Plücker distance below which a recomputed trisecant is the same line.
const SAME_LINE: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisConfig {
    pub seed: u64,
    pub tol_nullspace: f64,
    pub tol_cluster: f64,
    pub tol_residual: f64,
    /// Curve samples: candidate points for partners, or Γ samples.
    pub samples: usize,
    pub lines: usize,
    pub pts_per_line: usize,
    pub sweep: usize,
    pub ruling_swap: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            seed: 1,
            tol_nullspace: 1e-8,
            tol_cluster: 1e-6,
            tol_residual: 1e-8,
            samples: 120,
            lines: 60,
            pts_per_line: 6,
            sweep: 2000,
            ruling_swap: false,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, t) in [
            ("nullspace", self.tol_nullspace),
            ("cluster", self.tol_cluster),
            ("residual", self.tol_residual),
        ] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Input(format!("{name} tolerance must be positive, got {t}")));
            }
        }
        if self.lines < MIN_LINES {
            return Err(Error::Input(format!("at least {MIN_LINES} lines are needed, got {}", self.lines)));
        }
        if self.pts_per_line < MIN_POINTS_PER_LINE {
            return Err(Error::Input(format!(
                "at least {MIN_POINTS_PER_LINE} points per line are needed, got {}",
                self.pts_per_line
            )));
        }
        if self.samples < TRISECANT_BASES + GAMMA_SAMPLES {
            return Err(Error::Input(format!(
                "at least {} curve samples are needed, got {}",
                TRISECANT_BASES + GAMMA_SAMPLES,
                self.samples
            )));
        }
        if self.sweep == 0 {
            return Err(Error::Input("sweep resolution must be positive".into()));
        }
        Ok(())
    }
}

/// A measured quantity, or an explicit null with the reason it is missing.
#[derive(Clone, Debug, Serialize)]
pub struct Measured<T> {
    pub value: Option<T>,
    pub reason: Option<String>,
    pub method: String,
    pub tolerance: f64,
    pub samples: usize,
}

impl<T> Measured<T> {
    fn found(value: T, method: &str, tolerance: f64, samples: usize) -> Self {
        Measured {
            value: Some(value),
            reason: None,
            method: method.into(),
            tolerance,
            samples,
        }
    }

    fn missing(reason: impl Into<String>, method: &str, tolerance: f64, samples: usize) -> Self {
        Measured {
            value: None,
            reason: Some(reason.into()),
            method: method.into(),
            tolerance,
            samples,
        }
    }
}

impl<T: PartialEq> Measured<T> {
    /// Whether a value was measured and equals `v`.
    pub fn is(&self, v: &T) -> bool {
        self.value.as_ref() == Some(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Generic,
    CaseA,
    CaseB,
    Unresolved,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Generic => "generic",
            Classification::CaseA => "case-a",
            Classification::CaseB => "case-b",
            Classification::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Quadric,
    Net,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub nullspace: f64,
    pub cluster: f64,
    pub residual: f64,
    pub derivative: f64,
    pub triple_derivative: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub route: Route,
    pub classification: Classification,
    pub classification_reason: String,
    pub scroll_degree: Measured<u32>,
    pub double_curve_degree: Measured<usize>,
    pub triple_count: Measured<usize>,
    pub multiplicity_profile: Measured<usize>,
    pub singular_curve_degree: Measured<usize>,
    /// Sizes of the groups of lines meeting a given line in one point.
    pub collision_profile: Measured<Vec<usize>>,
    pub veronese_containment: Measured<bool>,
    /// Named pass/fail tests behind the classification.
    pub checks: BTreeMap<String, bool>,
    pub tolerances: Tolerances,
    pub seeds: BTreeMap<String, u64>,
    pub residual_summary: BTreeMap<String, f64>,
    pub diagnostics: Vec<String>,
    /// How meeting points of lines were computed.
    pub meeting_points: String,
    pub config: AnalysisConfig,
    /// SHA-256 of each input, filled in by the caller.
    pub inputs: BTreeMap<String, String>,
    pub version: String,
}

impl AnalysisReport {
    fn new(route: Route, cfg: &AnalysisConfig, seeds: BTreeMap<String, u64>) -> Self {
        AnalysisReport {
            route,
            classification: Classification::Unresolved,
            classification_reason: String::new(),
            scroll_degree: Measured::missing("not measured", "random line sections of the fitted octic", 0.0, 0),
            double_curve_degree: Measured::missing("not measured", "plane sections of the double curve", 0.0, 0),
            triple_count: Measured::missing("not measured", "triple-point homotopy", 0.0, 0),
            multiplicity_profile: Measured::missing("not measured", "derivative vanishing along the singular curve", 0.0, 0),
            singular_curve_degree: Measured::missing("not measured", "singular curve", 0.0, 0),
            collision_profile: Measured::missing("not measured", "meeting points of lines with a fixed line", 0.0, 0),
            veronese_containment: Measured::missing("not measured", "Veronese pullback", 0.0, 0),
            checks: BTreeMap::new(),
            tolerances: Tolerances {
                nullspace: cfg.tol_nullspace,
                cluster: cfg.tol_cluster,
                residual: cfg.tol_residual,
                derivative: DERIVATIVE_TOL,
                triple_derivative: TRIPLE_DERIVATIVE_TOL,
            },
            seeds,
            residual_summary: BTreeMap::new(),
            diagnostics: Vec::new(),
            meeting_points: "numeric".into(),
            config: cfg.clone(),
            inputs: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    fn residual(&mut self, name: &str, v: f64) {
        self.residual_summary.insert(name.into(), v);
    }

    fn check(&mut self, name: &str, passed: bool) -> bool {
        self.checks.insert(name.into(), passed);
        passed
    }

    fn settle(&mut self, class: Classification, required: &[&str]) {
        let failed: Vec<&str> = required.iter().copied().filter(|k| !self.checks.get(*k).copied().unwrap_or(false)).collect();
        if failed.is_empty() {
            self.classification = class;
            self.classification_reason = format!("all {} tests passed", class.as_str());
        } else {
            self.classification = Classification::Unresolved;
            self.classification_reason = format!("{} tests failed: {}", class.as_str(), failed.join(", "));
        }
    }
}

/// Independent seeds for each randomized stage, drawn from one generator.
fn derive_seeds(master: u64, names: &[&str]) -> BTreeMap<String, u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    let mut out: BTreeMap<String, u64> = names.iter().map(|n| (n.to_string(), rng.next_u64())).collect();
    out.insert("master".into(), master);
    out
}

/// The common value of a list, if there is one.
fn agreed<T: PartialEq + Clone>(items: &[T]) -> Option<T> {
    let first = items.first()?;
    items.iter().all(|x| x == first).then(|| first.clone())
}

fn measure_degree(report: &mut AnalysisReport, octic: &OcticSurface, seed: u64, tol: f64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts: Vec<usize> = (0..DEGREE_LINES).map(|_| octic.random_line_degree(&mut rng)).collect::<Result<_>>()?;
    report.scroll_degree = match agreed(&counts) {
        Some(d) => Measured::found(d as u32, "roots of the fitted octic on random lines", tol, DEGREE_LINES),
        None => Measured::missing(
            format!("random lines meet the surface in {counts:?} points"),
            "roots of the fitted octic on random lines",
            tol,
            DEGREE_LINES,
        ),
    };
    report.residual("octic_fit", octic.fit_residual);
    report.residual("octic_validation", octic.validation_residual);
    Ok(())
}

fn record_multiplicity(report: &mut AnalysisReport, check: &MultiplicityCheck, samples: usize, what: &str) {
    let method = format!("partials up to order {} on {what}", check.order);
    report.multiplicity_profile = if samples == 0 {
        Measured::missing(format!("no samples of {what}"), &method, check.tolerance, 0)
    } else {
        Measured::found(check.profile(), &method, check.tolerance, samples)
    };
    for (k, w) in check.worst.iter().enumerate() {
        report.residual(&format!("derivative_order_{k}"), *w);
    }
}

/// Veronese containment: exact for rational quadrics, otherwise the value of
/// the quadric on lifts of random points of the plane.
fn veronese_containment(q: &QuadricForm6, seed: u64, tol: f64) -> Result<Measured<bool>> {
    if q.is_exact() {
        return Ok(Measured::found(detect_veronese_containment(q)?, "exact Veronese pullback", 0.0, 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        worst = worst.max(q.relative_value(&veronese_lift(&random_cvec(&mut rng, 3))?));
    }
    Ok(Measured::found(worst < tol, "quadric at lifts of random points", tol, 5))
}

/// Everything computed along the quadric route.
#[derive(Clone, Debug)]
pub struct QuadricAnalysis {
    pub report: AnalysisReport,
    pub map: LineMap,
    pub octic: Option<OcticSurface>,
    pub partners: Vec<PartnerSet>,
    pub singular_samples: Vec<CVec>,
    pub double_curve: Vec<DoubleCurveCount>,
    pub triple: Option<TripleScan>,
}

/// Builds and classifies the scroll of the quadric `q` through C.
///
/// Errors: a rank error when `q` is singular and a membership error when `q`
/// does not contain C.
pub fn analyze_quadric(q: &QuadricForm6, f: &PlaneQuartic, cfg: &AnalysisConfig) -> Result<QuadricAnalysis> {
    cfg.validate()?;
    if q.rank() < 6 {
        return Err(Error::Rank {
            expected: 6,
            found: q.rank(),
        });
    }
    let seeds = derive_seeds(cfg.seed, &["membership", "line_map", "fit", "degree", "veronese", "partners", "planes", "triple"]);
    if !contains_curve(q, f, seeds["membership"])? {
        return Err(Error::Membership("the quadric does not contain the bicanonical curve".into()));
    }
    let mut report = AnalysisReport::new(Route::Quadric, cfg, seeds.clone());
    let map = build_line_map(q, f, cfg.lines, seeds["line_map"], cfg.ruling_swap)?;
    let (pr, qr, sr) = map.max_residuals();
    report.residual("frame", map.frame.residual);
    report.residual("plucker_relation", pr);
    report.residual("quadric_on_curve", qr);
    report.residual("spanning_pair", sr);

    let octic = match fit_scroll(&map, cfg.pts_per_line, seeds["fit"], cfg.tol_nullspace) {
        Ok(o) => Some(o),
        Err(Error::Fit(m)) => {
            report.scroll_degree.reason = Some(m.clone());
            report.diagnostics.push(format!("octic fit: {m}"));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(o) = &octic {
        measure_degree(&mut report, o, seeds["degree"], cfg.tol_nullspace)?;
        let containment = map.lines().map(|l| o.line_containment_residual(l)).fold(0.0, f64::max);
        report.residual("line_containment", containment);
    }
    let degree_ok = report.scroll_degree.is(&SCROLL_DEGREE);
    report.check("scroll_degree_8", degree_ok);

    report.veronese_containment = veronese_containment(q, seeds["veronese"], cfg.tol_residual)?;
    let veronese = report.veronese_containment.is(&true);

    // partners of general points; tangency-flagged points are resampled
    let pool = sample_curve_points(f, cfg.samples, seeds["partners"])?.points;
    let mut partners = Vec::new();
    let mut flagged = 0usize;
    for (i, x) in pool.iter().enumerate() {
        if partners.len() == PARTNER_POINTS {
            break;
        }
        let set = double_curve_partners(&map, f, x, seeds["partners"].wrapping_add(i as u64))?;
        if set.is_general() {
            partners.push(set);
        } else {
            flagged += 1;
            if let Some(t) = &set.tangency {
                report.diagnostics.push(format!("partner sample {i}: {t}"));
            }
        }
    }
    let tried = partners.len() + flagged;
    let rate = flagged as f64 / tried.max(1) as f64;
    report.residual("tangency_rate", rate);
    report.check("partner_count_6", partners.len() == PARTNER_POINTS && rate <= MAX_TANGENCY_RATE);
    let profiles: Vec<Vec<usize>> = partners.iter().map(|p| p.collision_profile(cfg.tol_cluster)).collect();
    let method = "clusters of the meeting points of a line with its partners";
    report.collision_profile = match agreed(&profiles) {
        Some(p) => Measured::found(p, method, cfg.tol_cluster, partners.len()),
        None if profiles.is_empty() => Measured::missing("no general curve point found", method, cfg.tol_cluster, 0),
        None => Measured::missing(format!("profiles differ between points: {profiles:?}"), method, cfg.tol_cluster, partners.len()),
    };
    let worst = |g: fn(&super::partners::Partner) -> f64| {
        partners.iter().flat_map(|s| s.partners.iter().map(g)).fold(0.0, f64::max)
    };
    report.residual("partner_curve", worst(|p| p.curve_residual));
    report.residual("partner_incidence", worst(|p| p.incidence_residual));
    let singular_samples: Vec<CVec> = partners.iter().flat_map(|s| s.partners.iter().map(|p| p.o.clone())).collect();

    let check = octic
        .as_ref()
        .map(|o| multiplicity_along_curve(&o.poly, &singular_samples, MULTIPLICITY_ORDER, DERIVATIVE_TOL));
    match &check {
        Some(c) => record_multiplicity(&mut report, c, singular_samples.len(), "meeting points of partner lines"),
        None => {
            report.multiplicity_profile.reason = Some("no fitted surface".into());
        }
    }

    let mut double_curve = Vec::new();
    let mut triple = None;
    let generic_profile = vec![1; PARTNER_COUNT];
    if veronese {
        let reason = "the quadric contains the Veronese surface: the singular curve is not a double curve";
        report.double_curve_degree.reason = Some(reason.into());
        report.triple_count.reason = Some(reason.into());
        if cfg.ruling_swap {
            report.diagnostics.push(
                "the swapped ruling of a quadric containing the Veronese surface belongs to the semistable bundle ω_C ⊕ ω_C; the case-b scroll lies on the other ruling".into(),
            );
        }
        twisted_cubic(&mut report, &partners, &singular_samples, cfg);
        report.check("collision_profile_3_3", report.collision_profile.is(&vec![3, 3]));
        report.check("multiplicity_4", report.multiplicity_profile.is(&4));
        report.settle(
            Classification::CaseB,
            &["scroll_degree_8", "collision_profile_3_3", "multiplicity_4", "quadric_nullity_3", "bisecant_lines"],
        );
    } else if report.collision_profile.is(&generic_profile) {
        double_curve = count_double_curve(&mut report, &map, f, seeds["planes"], cfg)?;
        let scan = triple_locus_scan(&map, f, cfg.sweep, seeds["triple"], cfg.tol_cluster)?;
        record_triples(&mut report, &scan, octic.as_ref(), cfg);
        triple = Some(scan);
        report.check("multiplicity_2", report.multiplicity_profile.is(&2));
        report.settle(
            Classification::Generic,
            &[
                "scroll_degree_8",
                "partner_count_6",
                "multiplicity_2",
                "double_curve_degree_18",
                "triple_count_8",
                "triple_points_clean",
                "triple_points_second_order",
            ],
        );
    } else {
        let reason = "meeting points of partner lines collide: the concurrency locus is a curve";
        report.double_curve_degree.reason = Some(reason.into());
        report.triple_count.reason = Some(reason.into());
        report.singular_curve_degree.reason = Some("no Γ samples on the quadric route".into());
        report.check("collision_profile_2_2_2", report.collision_profile.is(&vec![2, 2, 2]));
        report.check("multiplicity_3", report.multiplicity_profile.is(&3));
        report.settle(Classification::CaseA, &["scroll_degree_8", "collision_profile_2_2_2", "multiplicity_3"]);
    }
    Ok(QuadricAnalysis {
        report,
        map,
        octic,
        partners,
        singular_samples,
        double_curve,
        triple,
    })
}

/// The singular curve of a Veronese-containing scroll: the quadrics through
/// its samples, and the number of its points on each line.
fn twisted_cubic(report: &mut AnalysisReport, partners: &[PartnerSet], samples: &[CVec], cfg: &AnalysisConfig) {
    let method = "quadric nullity of the singular samples";
    let nullity = fit_nullity(samples, 2, cfg.tol_nullspace);
    report.residual("singular_quadric_nullity", nullity as f64);
    let passed = report.check("quadric_nullity_3", nullity == 3);
    report.singular_curve_degree = if passed && samples.len() >= 10 {
        Measured::found(3, "twisted cubic: three independent quadrics through the singular samples", cfg.tol_nullspace, samples.len())
    } else {
        Measured::missing(format!("{nullity} quadrics through the singular samples"), method, cfg.tol_nullspace, samples.len())
    };
    let meets: Vec<usize> = partners
        .iter()
        .take(CONTACT_LINES)
        .map(|s| {
            let os: Vec<CVec> = s.partners.iter().map(|p| p.o.clone()).collect();
            cluster_with_tolerance(&os, cfg.tol_cluster).len()
        })
        .collect();
    report.check("bisecant_lines", meets.len() == CONTACT_LINES && meets.iter().all(|&m| m == 2));
    if meets.iter().any(|&m| m != 2) {
        report.diagnostics.push(format!("points of the singular curve on sampled lines: {meets:?}"));
    }
}

fn count_double_curve(
    report: &mut AnalysisReport,
    map: &LineMap,
    f: &PlaneQuartic,
    seed: u64,
    cfg: &AnalysisConfig,
) -> Result<Vec<DoubleCurveCount>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..PLANES {
        let h = random_cvec(&mut rng, 4);
        out.push(double_curve_plane_count(map, f, &h, seed.wrapping_add(k as u64), cfg.tol_cluster, &TrackerOptions::default())?);
    }
    let counts: Vec<usize> = out.iter().map(|d| d.count).collect();
    let method = "distinct meeting points of line pairs on random planes";
    report.double_curve_degree = match agreed(&counts) {
        Some(c) => Measured::found(c, method, cfg.tol_cluster, PLANES),
        None => Measured::missing(format!("plane counts disagree: {counts:?}"), method, cfg.tol_cluster, PLANES),
    };
    report.singular_curve_degree = Measured {
        method: "the double curve".into(),
        ..report.double_curve_degree.clone()
    };
    report.residual("double_curve_endpoints", out.iter().map(|d| d.max_residual).fold(0.0, f64::max));
    report.check("double_curve_degree_18", report.double_curve_degree.is(&EXPECTED_DEGREE));
    let nodes = out.iter().all(|d| d.multiplicities.iter().all(|&m| m == 2));
    if !nodes {
        report.diagnostics.push("a double-curve point on a plane is not met by exactly two ordered pairs".into());
    }
    report.check("double_curve_nodes", nodes);
    Ok(out)
}

fn record_triples(report: &mut AnalysisReport, scan: &TripleScan, octic: Option<&OcticSurface>, cfg: &AnalysisConfig) {
    // raw cluster count; anomalies are flagged rather than corrected
    let method = format!("concurrent line triples, step 1/{}", scan.resolution);
    report.triple_count = Measured::found(scan.count, &method, cfg.tol_cluster, scan.paths);
    for u in &scan.unresolved {
        report.diagnostics.push(format!("triple scan path {}: {}", u.path, u.reason));
    }
    for p in scan.points.iter().filter(|p| p.multiplicity != super::triple::ORDERINGS) {
        report.diagnostics.push(format!("triple point met by {} ordered triples", p.multiplicity));
    }
    report.residual("triple_unresolved_paths", scan.unresolved.len() as f64);
    report.residual("triple_line_distance", scan.points.iter().map(|p| p.line_distance).fold(0.0, f64::max));
    report.check("triple_count_8", scan.count == EXPECTED_TRIPLE_POINTS);
    report.check("triple_points_clean", scan.is_clean());
    let second = octic.map(|o| {
        let pts: Vec<CVec> = scan.points.iter().map(|p| p.point.clone()).collect();
        multiplicity_along_curve(&o.poly, &pts, 2, TRIPLE_DERIVATIVE_TOL)
    });
    if let Some(c) = &second {
        report.residual("triple_point_second_order", c.worst[2]);
    }
    report.check("triple_points_second_order", second.is_some_and(|c| c.passed && !scan.points.is_empty()));
}

/// Everything computed along the net route.
#[derive(Clone, Debug)]
pub struct NetAnalysis {
    pub report: AnalysisReport,
    pub gamma: GammaCurve,
    pub searches: Vec<TrisecantSearch>,
    pub octic: Option<OcticSurface>,
}

/// Builds the scroll of trisecants of Γ for a net of quadrics and classifies it.
///
/// Errors: a degenerate-input error for a degenerate net.
pub fn analyze_net(net: &NetOfQuadrics, cfg: &AnalysisConfig) -> Result<NetAnalysis> {
    cfg.validate()?;
    if let NetStatus::Degenerate(r) = net.status() {
        return Err(Error::DegenerateInput(r.clone()));
    }
    let seeds = derive_seeds(cfg.seed, &["gamma", "trisecants", "fit", "degree", "contacts", "section"]);
    let mut report = AnalysisReport::new(Route::Net, cfg, seeds.clone());
    let gamma = GammaCurve::sample(net, cfg.samples, seeds["gamma"])?;
    report.residual("gamma_kernel", gamma.samples.iter().map(|s| s.residual).fold(0.0, f64::max));
    let bases = cfg.lines.div_ceil(3).max(TRISECANT_BASES).min(cfg.samples - GAMMA_SAMPLES);
    let searches: Vec<TrisecantSearch> = gamma.samples[..bases]
        .par_iter()
        .enumerate()
        .map(|(i, b)| trisecants_through_point(&gamma, b, seeds["trisecants"].wrapping_add(i as u64)))
        .collect::<Result<_>>()?;
    for (i, s) in searches.iter().enumerate() {
        if let Some(d) = &s.degeneration {
            report.diagnostics.push(format!("trisecant search {i}: {d}"));
        }
    }
    report.check("three_trisecants", searches.iter().all(|s| s.lines.len() == 3));
    let lines: Vec<&crate::net::trisecant::TrisecantLine> = searches.iter().flat_map(|s| &s.lines).collect();
    report.residual("trisecant_contact", lines.iter().map(|l| l.contact_residual).fold(0.0, f64::max));
    report.residual("trisecant_plucker", lines.iter().map(|l| l.plucker_residual).fold(0.0, f64::max));
    report.residual("quintic_fit", searches.iter().map(|s| s.fit_residual).fold(0.0, f64::max));

    let spans: Vec<[CVec; 2]> = lines.iter().map(|l| l.spanning_points.clone()).collect();
    let octic = match OcticSurface::fit(&spans, cfg.pts_per_line, seeds["fit"], cfg.tol_nullspace) {
        Ok(o) => Some(o),
        Err(Error::Fit(m)) | Err(Error::Precondition(m)) => {
            report.scroll_degree.reason = Some(m.clone());
            report.diagnostics.push(format!("octic fit: {m}"));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(o) = &octic {
        measure_degree(&mut report, o, seeds["degree"], cfg.tol_nullspace)?;
    }
    let degree_ok = report.scroll_degree.is(&SCROLL_DEGREE);
    report.check("scroll_degree_8", degree_ok);

    let kappas: Vec<CVec> = gamma.samples[bases..bases + GAMMA_SAMPLES].iter().map(|s| s.kappa.clone()).collect();
    match &octic {
        Some(o) => {
            let check = multiplicity_along_curve(&o.poly, &kappas, MULTIPLICITY_ORDER, DERIVATIVE_TOL);
            record_multiplicity(&mut report, &check, kappas.len(), "Γ");
        }
        None => report.multiplicity_profile.reason = Some("no fitted surface".into()),
    }
    report.check("multiplicity_3", report.multiplicity_profile.is(&3));

    // each sampled line meets Γ in three distinct points and lies on the surface
    let contact_ok = lines.iter().take(CONTACT_LINES).all(|l| {
        cluster_with_tolerance(&l.contacts, cfg.tol_cluster).len() == 3 && l.contact_residual < cfg.tol_residual
    });
    let containment = octic
        .as_ref()
        .map(|o| lines.iter().take(CONTACT_LINES).map(|l| o.line_containment_residual(&l.spanning_points)).fold(0.0, f64::max));
    if let Some(c) = containment {
        report.residual("line_containment", c);
    }
    report.check("trisecant_lines", lines.len() >= CONTACT_LINES && contact_ok);

    collision_from_contacts(&mut report, &gamma, &searches, seeds["contacts"], cfg)?;
    report.check("collision_profile_2_2_2", report.collision_profile.is(&vec![2, 2, 2]));

    let mut rng = ChaCha8Rng::seed_from_u64(seeds["section"]);
    let h = random_cvec(&mut rng, 4);
    let section = gamma_plane_section_numeric(net, &h, cfg.tol_cluster, &mut rng)?;
    report.singular_curve_degree = Measured::found(section.len(), "points of Γ on a random plane", cfg.tol_cluster, 1);
    let reason = "the singular curve Γ is a triple curve: every point of Γ lies on three lines";
    report.double_curve_degree.reason = Some(reason.into());
    report.triple_count.reason = Some(reason.into());
    report.veronese_containment.reason = Some("no quadric on the net route".into());
    report.settle(
        Classification::CaseA,
        &["scroll_degree_8", "three_trisecants", "multiplicity_3", "trisecant_lines", "collision_profile_2_2_2"],
    );
    Ok(NetAnalysis {
        report,
        gamma,
        searches,
        octic,
    })
}

/// For a trisecant `ℓ`, the other trisecants through each of its three
/// contacts meet `ℓ` there; their numbers per contact form the profile.
fn collision_from_contacts(
    report: &mut AnalysisReport,
    gamma: &GammaCurve,
    searches: &[TrisecantSearch],
    seed: u64,
    cfg: &AnalysisConfig,
) -> Result<()> {
    let method = "trisecants through the contacts of a trisecant";
    let mut profiles = Vec::new();
    let mut worst = 0.0f64;
    for (i, search) in searches.iter().filter(|s| s.lines.len() == 3).take(COLLISION_LINES).enumerate() {
        let line = &search.lines[0];
        let mut profile = Vec::new();
        for j in 0..3 {
            let others = if j == 0 {
                search.lines.len() - 1
            } else {
                let base = gamma.net.gamma_sample(&line.parameters[j])?;
                let s = trisecants_through_point(gamma, &base, seed.wrapping_add((3 * i + j) as u64))?;
                if let Some(d) = &s.degeneration {
                    report.diagnostics.push(format!("trisecants through contact {j} of line {i}: {d}"));
                }
                // the nearest line through the contact is ℓ itself, recomputed
                let nearest = s
                    .lines
                    .iter()
                    .map(|m| projective_distance(&m.plucker, &line.plucker))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(nearest);
                s.lines.len() - usize::from(nearest < SAME_LINE)
            };
            profile.push(others);
        }
        profile.sort_unstable_by(|a, b| b.cmp(a));
        profiles.push(profile);
    }
    report.residual("recomputed_trisecant", worst);
    report.collision_profile = match agreed(&profiles) {
        Some(p) => Measured::found(p, method, cfg.tol_cluster, profiles.len()),
        None if profiles.is_empty() => Measured::missing("no base point with three trisecants", method, cfg.tol_cluster, 0),
        None => Measured::missing(format!("profiles differ between lines: {profiles:?}"), method, cfg.tol_cluster, profiles.len()),
    };
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible_and_distinct() {
        let a = derive_seeds(7, &["x", "y"]);
        assert_eq!(a, derive_seeds(7, &["x", "y"]));
        assert_ne!(a["x"], a["y"]);
        assert_ne!(a["x"], derive_seeds(8, &["x", "y"])["x"]);
        assert_eq!(a["master"], 7);
    }

    #[test]
    fn settle_requires_every_named_check() {
        let cfg = AnalysisConfig::default();
        let mut r = AnalysisReport::new(Route::Quadric, &cfg, BTreeMap::new());
        r.check("a", true);
        r.settle(Classification::Generic, &["a", "b"]);
        assert_eq!(r.classification, Classification::Unresolved);
        assert!(r.classification_reason.contains('b'));
        r.check("b", true);
        r.settle(Classification::Generic, &["a", "b"]);
        assert_eq!(r.classification, Classification::Generic);
    }

    #[test]
    fn config_rejects_bad_values() {
        let ok = AnalysisConfig::default();
        assert!(ok.validate().is_ok());
        assert!(AnalysisConfig { tol_cluster: 0.0, ..ok.clone() }.validate().is_err());
        assert!(AnalysisConfig { lines: 10, ..ok.clone() }.validate().is_err());
        assert!(AnalysisConfig { sweep: 0, ..ok }.validate().is_err());
    }

    #[test]
    fn missing_values_serialize_as_null_with_reason() {
        let cfg = AnalysisConfig::default();
        let r = AnalysisReport::new(Route::Net, &cfg, BTreeMap::new());
        let v = r.to_json();
        assert!(v["triple_count"]["value"].is_null());
        assert!(v["triple_count"]["reason"].is_string());
        assert_eq!(v["classification"], "unresolved");
    }
}
