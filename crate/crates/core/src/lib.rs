//! Algebraic loci and envelopes of dynamic-geometry constructions.
//!
//! A construction is compiled into a parametric polynomial system whose
//! parameters are the tracer coordinates. A comprehensive Gröbner system
//! splits the parameter plane into locally closed segments; the locus is
//! assembled from the solvable segments after discarding components that
//! come from a single degenerate position of the moving point.

pub mod budget;
pub mod cgs;
pub mod construction;
pub mod error;
pub mod exactpoly;
pub mod fixtures;
pub mod ideals;
pub mod locus;
pub mod par;
pub mod render;

pub use budget::Budget;
pub use error::{Error, Result};
