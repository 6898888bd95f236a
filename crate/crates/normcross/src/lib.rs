//! Slope norms, knot genus and crosscap numbers of knot exteriors from
//! triangulations, via fundamental normal surfaces and Farey distances.

pub mod cli;
pub mod curves;
pub mod farey;
pub mod homology;
pub mod invariants;
pub mod normal;
pub mod triangulation;
mod util;
