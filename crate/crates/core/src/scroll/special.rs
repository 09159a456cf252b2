//! The two special positions of the quadric: containing the Veronese
//! surface, and its construction.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::quadric::QuadricForm6;
use super::linemap::QUADRIC_RESIDUAL;
use crate::curve::{quadrics_through_bicanonical, sample_curve_points, veronese_lift, PlaneQuartic};
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::Rational;

pub const CASE_B_ATTEMPTS: usize = 50;
const CASE_B_BOUND: i64 = 5;

/// Exact test: the Veronese pullback of `q` vanishes identically.
pub fn detect_veronese_containment(q: &QuadricForm6) -> Result<bool> {
    q.pullback()
        .map(|p| p.is_zero())
        .ok_or_else(|| Error::Precondition("Veronese containment is decided exactly; the quadric must be rational".into()))
}

/// Whether the quadric contains the bicanonical image of `f`: exactly, the
/// pullback is a multiple of `f`; for a complex Gram matrix, the lifted
/// samples lie on it to within `QUADRIC_RESIDUAL`.
pub fn contains_curve(q: &QuadricForm6, f: &PlaneQuartic, seed: u64) -> Result<bool> {
    if let Some(p) = q.pullback() {
        let (m, c) = f.form().leading_term().ok_or_else(|| Error::Input("zero quartic".into()))?;
        let lambda = p.coeff(&m.0) / c;
        return Ok((&p - &f.form().scale(&lambda)).is_zero());
    }
    let sample = sample_curve_points(f, 20, seed)?;
    for x in &sample.points {
        if q.relative_value(&veronese_lift(x)?) > QUADRIC_RESIDUAL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random rational combination of the Veronese-ideal quadrics of exact
/// rank 6.
pub fn construct_case_b(f: &PlaneQuartic, seed: u64) -> Result<QuadricForm6> {
    let qs = quadrics_through_bicanonical(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CASE_B_ATTEMPTS {
        let w: Vec<Rational> = qs
            .veronese
            .iter()
            .map(|&v| if v { int(rng.gen_range(-CASE_B_BOUND..=CASE_B_BOUND)) } else { Rational::zero() })
            .collect();
        let q = qs.combination(&w)?;
        if q.rank() == 6 {
            return Ok(q);
        }
    }
    Err(Error::Seed(format!("no rank-6 Veronese-ideal quadric in {CASE_B_ATTEMPTS} draws")))
}

/// A random rational rank-6 member of `|I_C(2)|` outside the Veronese ideal.
pub fn construct_random(f: &PlaneQuartic, seed: u64) -> Result<QuadricForm6> {
    let qs = quadrics_through_bicanonical(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CASE_B_ATTEMPTS {
        let w: Vec<Rational> = qs
            .veronese
            .iter()
            .map(|&v| {
                let k = rng.gen_range(-CASE_B_BOUND..=CASE_B_BOUND);
                int(if !v && k == 0 { 1 } else { k })
            })
            .collect();
        let q = qs.combination(&w)?;
        if q.rank() == 6 {
            return Ok(q);
        }
    }
    Err(Error::Seed(format!("no rank-6 quadric in {CASE_B_ATTEMPTS} draws")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::veronese_relations;

    #[test]
    fn veronese_relations_are_detected() {
        assert!(veronese_relations().iter().all(|q| detect_veronese_containment(q).unwrap()));
    }

    #[test]
    fn seventh_quadric_is_not_veronese() {
        let qs = quadrics_through_bicanonical(&PlaneQuartic::klein()).unwrap();
        assert!(!detect_veronese_containment(qs.basis.last().unwrap()).unwrap());
    }

    #[test]
    fn membership_is_exact() {
        let f = PlaneQuartic::klein();
        let qs = quadrics_through_bicanonical(&f).unwrap();
        let w: Vec<Rational> = [1, 0, 2, -1, 0, 3, 4].iter().map(|&k| int(k)).collect();
        assert!(contains_curve(&qs.combination(&w).unwrap(), &f, 1).unwrap());
        let off = QuadricForm6::from_coefficients(&(0..21).map(|k| int(k % 5 - 2)).collect::<Vec<_>>()).unwrap();
        assert!(!contains_curve(&off, &f, 1).unwrap());
    }

    #[test]
    fn random_member_is_generic() {
        let f = PlaneQuartic::fermat();
        let q = construct_random(&f, 4).unwrap();
        assert_eq!(q.rank(), 6);
        assert!(contains_curve(&q, &f, 1).unwrap());
        assert!(!detect_veronese_containment(&q).unwrap());
    }

    #[test]
    fn case_b_has_rank_six() {
        let q = construct_case_b(&PlaneQuartic::fermat(), 4).unwrap();
        assert_eq!(q.rank(), 6);
        assert!(detect_veronese_containment(&q).unwrap());
    }
}
