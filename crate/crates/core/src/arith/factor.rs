//! Trial-division factorization over the shared prime table, and the
//! arithmetic functions built on it.

use serde::Serialize;

use super::sieve::primes;
use crate::error::{Error, Result};

/// Prime factorization as ascending `(prime, exponent)` pairs; empty for 1.
///
/// Trial division runs over the prime table and continues with odd
/// candidates past it, so the result is exact for every `n >= 1`.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut rest = n;
    let table = primes();
    let mut exhausted = true;
    for &p in table {
        if p.saturating_mul(p) > rest {
            exhausted = false;
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if exhausted {
        // beyond the table
        let mut c = table[table.len() - 1] + 2;
        while c.saturating_mul(c) <= rest {
            if rest.is_multiple_of(c) {
                let mut e = 0;
                while rest.is_multiple_of(c) {
                    rest /= c;
                    e += 1;
                }
                out.push((c, e));
            }
            c += 2;
        }
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    out
}

/// `n = n0 · n1²` with `n0` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquarefreeDecomposition {
    pub n0: u64,
    pub n1: u64,
}

impl SquarefreeDecomposition {
    pub fn is_square(&self) -> bool {
        self.n0 == 1
    }
}

pub fn squarefree_decompose(n: u64) -> Result<SquarefreeDecomposition> {
    if n == 0 {
        return Err(Error::invalid("squarefree decomposition needs n >= 1"));
    }
    let mut n0 = 1;
    let mut n1 = 1;
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            n0 *= p;
        }
        n1 *= p.pow(e / 2);
    }
    Ok(SquarefreeDecomposition { n0, n1 })
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

/// Largest prime factor `P₊(n)`, with `P₊(1) = 1`.
pub fn largest_prime_factor(n: u64) -> u64 {
    factorize(n).last().map_or(1, |&(p, _)| p)
}

pub fn divisor_count(m: u64) -> u64 {
    factorize(m).iter().map(|&(_, e)| u64::from(e) + 1).product()
}

/// `∏_{p | n} p/(p+1)`.
pub fn mertens_factor(n: u64) -> f64 {
    factorize(n).iter().map(|&(p, _)| p as f64 / (p as f64 + 1.0)).product()
}

/// Error-term factors for the mean value of `χ_d(n)` under GRH:
/// `f(n0) = exp((log n0)^{1-ε})` and `g(n1) = Σ_{e | n1} μ(e)² e^{-(1/2+ε)}`.
pub fn error_factors(n: u64, eps: f64) -> Result<(f64, f64)> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::invalid(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    let dec = squarefree_decompose(n)?;
    let f = (dec.n0 as f64).ln().powf(1.0 - eps).exp();
    // squarefree divisors of n1 contribute ∏_{p | n1} (1 + p^{-(1/2+ε)})
    let g = factorize(dec.n1).iter().map(|&(p, _)| 1.0 + (p as f64).powf(-(0.5 + eps))).product();
    Ok((f, g))
}

/// Default `ε` for [`error_factors`].
pub const DEFAULT_EPS: f64 = 0.05;
