//! Quadratic character sums over fundamental discriminants.
//!
//! The crate computes the objects behind lower bounds for
//! `max_{X<d<=2X, d∈F} Σ_{n<=x} χ_d(n)`: exact character sums and their
//! maxima, mean values of `χ_d(n)` over discriminants, the three resonator
//! constructions with their moment ratios, GCD sums, and smooth-number
//! counts. All logarithms are natural; `log_j` is the `j`-fold iterate.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod charsums;
pub mod error;
pub mod gcdsum;
pub mod meanvalues;
pub mod numeric;
pub mod resonance;
pub mod theorems;
pub mod verify;
pub mod workers;

pub use arith::Discriminant;
pub use error::{Error, Result};
pub use workers::Workers;
