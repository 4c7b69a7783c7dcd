//! Exact integer arithmetic: the Kronecker symbol, fundamental
//! discriminants, factorization-based functions and smooth numbers.
//!
//! `Ψ(x, y)` is the standard smooth-number count; the theorems it appears in
//! use it without restating the definition.

mod discriminant;
mod factor;
mod kronecker;
pub mod sieve;
mod smooth;

pub use discriminant::{enumerate_fundamental, is_fundamental, Discriminant};
pub use factor::{
    divisor_count, error_factors, factorize, is_square, is_squarefree, largest_prime_factor, mertens_factor,
    squarefree_decompose, SquarefreeDecomposition, DEFAULT_EPS,
};
pub use kronecker::kronecker;
pub use smooth::{enumerate_smooth, psi_count, SmoothnessParams};
