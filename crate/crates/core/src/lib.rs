//! Exact integer group determinants for small finite groups.
//!
//! The crate evaluates group determinants by fraction-free elimination for
//! any built-in group, and treats the symmetric group S4 in full: the
//! factored form `ℓ₁ℓ₂q₁²d₁³d₂³`, symbolic verification of the congruences
//! between the factors, a membership decider for the set of attainable
//! values, and explicit witness construction for every attainable value.
//!
//! Module map:
//! - [`group`]: Cayley tables, S4 element ordering, generator words.
//! - [`ring`], [`expr`]: group-ring elements, convolution, expression parser.
//! - [`det`]: elimination determinant, S4 factors, representation tables.
//! - [`sympoly`]: sparse polynomials and the factor congruences.
//! - [`classify`]: closed-form membership deciders and `λ(G)`.
//! - [`witness`]: witness families and target synthesis for S4.
//! - [`harness`]: exhaustive and random falsification scans.

pub mod arith;
pub mod classify;
pub mod det;
pub mod error;
pub mod expr;
pub mod group;
pub mod harness;
pub mod json;
pub mod ring;
pub mod sympoly;
pub mod witness;

pub use error::{Error, Result};
