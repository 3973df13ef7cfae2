//! Extremal-length estimates on concrete Riemann surfaces and the
//! renormalized-volume bounds for Schottky manifolds built from them.

pub mod bounds;
pub mod cli;
pub mod extremal;
pub mod hyp3;
pub mod lemmas;
pub mod linalg;
pub mod report;
pub mod surface;
pub mod systems;
