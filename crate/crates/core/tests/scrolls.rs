use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scroll_core::curve::{sample_curve_points, PlaneQuartic};
use scroll_core::net::NetOfQuadrics;
use scroll_core::numeric::homotopy::{random_cvec, TrackerOptions};
use scroll_core::numeric::CMatrix;
use scroll_core::scroll::classify::{analyze_net, analyze_quadric, AnalysisConfig, Classification};
use scroll_core::scroll::double_curve::double_curve_plane_count;
use scroll_core::scroll::linemap::build_line_map;
use scroll_core::scroll::partners::double_curve_partners;
use scroll_core::scroll::plucker::{incidence, plucker_from_points};
use scroll_core::scroll::special::{construct_case_b, construct_random};

fn bracket(a: &[Complex64], b: &[Complex64], c: &[Complex64], d: &[Complex64]) -> Complex64 {
    CMatrix::from_fn(4, 4, |i, j| [a, b, c, d][j][i]).determinant()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

prop_compose! {
    fn point()(v in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 4)) -> Vec<Complex64> {
        v.into_iter().map(|(re, im)| c(re, im)).collect()
    }
}

proptest! {
    #[test]
    fn incidence_is_the_bracket_of_spanning_points(a in point(), b in point(), p in point(), q in point()) {
        let lhs = incidence(&plucker_from_points(&a, &b), &plucker_from_points(&p, &q));
        let rhs = bracket(&a, &b, &p, &q);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn lines_through_a_common_point_are_incident(a in point(), b in point(), d in point(), s in (-1.0f64..1.0, -1.0f64..1.0)) {
        let through = a.iter().zip(&d).map(|(x, y)| *x * c(s.0, s.1) + *y).collect::<Vec<_>>();
        let l1 = plucker_from_points(&a, &b);
        let l2 = plucker_from_points(&through, &d);
        prop_assert!(incidence(&l1, &l2).norm() < 1e-10);
    }
}

#[test]
fn scroll_lines_meet_exactly_when_the_bracket_vanishes() {
    let f = PlaneQuartic::fermat();
    let q = construct_random(&f, 2).unwrap();
    let map = build_line_map(&q, &f, 50, 2, false).unwrap();
    let lines: Vec<_> = map.lines().cloned().collect();
    for k in 0..50 {
        let (l1, l2) = (&lines[k], &lines[(k + 1) % lines.len()]);
        let b = bracket(&l1[0], &l1[1], &l2[0], &l2[1]);
        let g = incidence(&plucker_from_points(&l1[0], &l1[1]), &plucker_from_points(&l2[0], &l2[1]));
        assert!((b - g).norm() <= 1e-9 * (1.0 + b.norm()), "pair {k}");
        // with a point of l1 inserted into l2 the pair meets and both vanish
        let met = [l1[0].clone(), l2[1].clone()];
        let b0 = bracket(&l1[0], &l1[1], &met[0], &met[1]);
        let g0 = incidence(&plucker_from_points(&l1[0], &l1[1]), &plucker_from_points(&met[0], &met[1]));
        assert!(b0.norm() < 1e-12 && g0.norm() < 1e-12, "pair {k}");
    }
}

#[test]
fn partners_exist_at_nine_in_ten_curve_points() {
    let f = PlaneQuartic::fermat();
    let q = construct_random(&f, 3).unwrap();
    let map = build_line_map(&q, &f, 60, 3, false).unwrap();
    let pts = sample_curve_points(&f, 30, 3).unwrap().points;
    let general = pts
        .iter()
        .enumerate()
        .filter(|(i, x)| double_curve_partners(&map, &f, x, *i as u64).is_ok_and(|s| s.is_general() && s.partners.len() == 6))
        .count();
    assert!(general * 10 >= pts.len() * 9, "{general} of {}", pts.len());
}

#[test]
fn both_rulings_see_the_same_double_curve() {
    let f = PlaneQuartic::fermat();
    let q = construct_random(&f, 1).unwrap();
    let h = random_cvec(&mut ChaCha8Rng::seed_from_u64(4), 4);
    let count = |swap: bool| {
        let map = build_line_map(&q, &f, 60, 1, swap).unwrap();
        double_curve_plane_count(&map, &f, &h, 9, 1e-6, &TrackerOptions::default()).unwrap().count
    };
    let (a, b) = (count(false), count(true));
    assert_eq!(a, b);
    assert_eq!(a, 18);
}

#[test]
fn veronese_member_is_case_b() {
    let f = PlaneQuartic::fermat();
    let a = analyze_quadric(&construct_case_b(&f, 2).unwrap(), &f, &AnalysisConfig::default()).unwrap();
    assert_eq!(a.report.classification, Classification::CaseB, "{}", a.report.classification_reason);
    assert!(a.report.collision_profile.is(&vec![3, 3]));
    assert!(a.report.singular_curve_degree.is(&3));
}

#[test]
fn trisecant_scroll_of_a_net_is_case_a() {
    let a = analyze_net(&NetOfQuadrics::seeded(11).unwrap(), &AnalysisConfig::default()).unwrap();
    assert_eq!(a.report.classification, Classification::CaseA, "{}", a.report.classification_reason);
    assert!(a.report.multiplicity_profile.is(&3));
    assert!(a.report.double_curve_degree.value.is_none());
    assert!(a.report.double_curve_degree.reason.is_some());
}

#[test]
fn random_member_is_generic() {
    let f = PlaneQuartic::fermat();
    let cfg = AnalysisConfig {
        sweep: 200,
        ..AnalysisConfig::default()
    };
    let a = analyze_quadric(&construct_random(&f, 1).unwrap(), &f, &cfg).unwrap();
    assert_eq!(a.report.classification, Classification::Generic, "{}", a.report.classification_reason);
    assert!(a.report.double_curve_degree.is(&18));
    assert!(a.report.triple_count.is(&8));
}
