//! Double-precision complex numerics: root finding, rank-revealing nullspaces,
//! clustering, and path tracking.

pub mod cluster;
pub mod cpoly;
pub mod fit;
pub mod homotopy;
pub mod nullspace;
pub mod proj;
pub mod roots;

pub use cluster::{cluster_with_tolerance, ClusterSet};
pub use cpoly::ComplexPoly;
pub use nullspace::{numeric_nullspace, CMatrix};
pub use proj::{projective_distance, CVec};
pub use roots::{univariate_roots, Root};
