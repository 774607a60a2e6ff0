//! Minimal geodesics, cut loci and a five-cell geodesic motion planner on
//! the surface of the regular tetrahedron with edge length 2.

pub mod cut_locus;
pub mod error;
pub mod json;
pub mod oracle;
pub mod planar;
pub mod planner;
pub mod render;
pub mod sampling;
pub mod surface;
pub mod trace;

pub use error::{Error, Result};
