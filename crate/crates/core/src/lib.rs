//! Exact computations for triple covers of the projective line.
//!
//! The crate is organised bottom-up: [`exact_core`] provides rationals,
//! polynomials and truncated power series; [`triple_cover`] and [`splitting`]
//! handle global covers and their Tschirnhausen bundles; [`crimps`] classifies
//! triple-point singularities; [`families`] runs the semistable-reduction
//! rewrite on extension classes; [`picard`] and [`models`] hold the divisor
//! class arithmetic and the final-model normal forms.

pub mod cli;
pub mod crimps;
pub mod exact_core;
pub mod families;
pub mod io;
pub mod models;
pub mod picard;
pub mod splitting;
pub mod triple_cover;

pub use exact_core::{Jet, JetMatrix, Rational, UniPoly};
pub use triple_cover::{FiberType, MirandaCover, Point};
