//! The scroll of lines attached to a quadric through the bicanonical curve.

pub mod classify;
pub mod double_curve;
pub mod frame;
pub mod linemap;
pub mod multiplicity;
pub mod octic;
pub mod partners;
pub mod plucker;
pub mod quadric;
pub mod special;
pub mod triple;
