//! Exact arithmetic: rationals, sparse multivariate polynomials, rational
//! linear algebra, polynomial determinants and resultants.

pub mod det;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod resultant;

pub use det::poly_det;
pub use matrix::{exact_nullspace, RationalMatrix};
pub use poly::{monomials_of_degree, Monomial, MultiPoly};
pub use rational::Rational;
pub use resultant::{sylvester_resultant, QPoly};
