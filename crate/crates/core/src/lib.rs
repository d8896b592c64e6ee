//! Random polynomials over `F_q[t]`: discriminants, the derivative-slice
//! decomposition of the model, place sieves on the curve `f0' = 0`, and
//! Frobenius cycle-type evidence for Galois groups.
//!
//! Modules build on each other in order: [`fields`] and [`unipoly`] are the
//! base arithmetic, [`bipoly`] handles `F_q[t][x]`, [`model`] samples the
//! random family, [`places`] and [`galois`] run the number-theoretic
//! experiments, and [`harness`] wires everything into reproducible runs.

pub mod bipoly;
pub mod error;
pub mod fields;
pub mod galois;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod par;
pub mod places;
pub mod rng;
pub mod unipoly;

pub use error::{Error, Result};
