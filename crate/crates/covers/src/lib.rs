//! Combinatorial models of entire maps of finite type.
//!
//! An entire map is modelled by a marked set `A`, a rose `R` whose petals
//! surround the points of `A`, and the preimage graph `Γ` of the rose with
//! its labeling. This crate validates such data, reads off dynamics,
//! builds finite (polynomial) approximations, compares them through lifts
//! of words, and cross-checks everything numerically.

pub mod error;
pub mod geom;
pub mod planar;
pub mod quad;
pub mod lift;
pub mod approx;
pub mod numlift;
pub mod word;
pub mod fixtures;
pub mod format;
pub mod render;
