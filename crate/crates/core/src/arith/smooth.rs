//! `y`-smooth integers and the counting function `Ψ(x, y)`, the number of
//! `n <= x` whose prime factors are all at most `y`.

use serde::Serialize;

use super::sieve::primes_up_to;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothnessParams {
    pub x: f64,
    pub y: f64,
}

impl SmoothnessParams {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x >= 1.0) || !(y >= 1.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::invalid(format!("smoothness needs x >= 1 and y >= 1, got x={x}, y={y}")));
        }
        Ok(SmoothnessParams { x, y })
    }

    pub fn limit(&self) -> u64 {
        self.x.floor() as u64
    }

    /// Primes `p <= y`.
    pub fn primes(&self) -> &'static [u64] {
        primes_up_to(self.y.floor() as u64)
    }
}

/// Calls `visit(k)` for every `k <= limit` composed of `primes`, including 1.
/// Order is depth-first, not ascending.
fn for_each_smooth(limit: u64, primes: &[u64], visit: &mut impl FnMut(u64)) {
    if limit == 0 {
        return;
    }
    fn walk(k: u64, limit: u64, primes: &[u64], visit: &mut impl FnMut(u64)) {
        visit(k);
        for (i, &p) in primes.iter().enumerate() {
            match k.checked_mul(p) {
                Some(next) if next <= limit => walk(next, limit, &primes[i..], visit),
                _ => break,
            }
        }
    }
    walk(1, limit, primes, visit);
}

/// All `y`-smooth `n <= x`, ascending.
pub fn enumerate_smooth(x: f64, y: f64) -> Result<Vec<u64>> {
    let params = SmoothnessParams::new(x, y)?;
    let mut out = Vec::new();
    for_each_smooth(params.limit(), params.primes(), &mut |k| out.push(k));
    out.sort_unstable();
    Ok(out)
}

/// `Ψ(x, y)`.
pub fn psi_count(x: f64, y: f64) -> Result<u64> {
    let params = SmoothnessParams::new(x, y)?;
    let limit = params.limit();
    let primes = params.primes();
    if primes.last().is_some_and(|&p| p >= limit) {
        return Ok(limit);
    }
    let mut count = 0u64;
    for_each_smooth(limit, primes, &mut |_| count += 1);
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::largest_prime_factor;

    #[test]
    fn smooth_examples() {
        assert_eq!(enumerate_smooth(20.0, 3.0).unwrap(), [1, 2, 3, 4, 6, 8, 9, 12, 16, 18]);
        assert_eq!(enumerate_smooth(10.0, 1.0).unwrap(), [1]);
        assert_eq!(enumerate_smooth(5.0, 7.0).unwrap(), [1, 2, 3, 4, 5]);
        assert_eq!(enumerate_smooth(1.0, 100.0).unwrap(), [1]);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_count(100.0, 5.0).unwrap(), 34);
        assert_eq!(psi_count(10.0, 1.0).unwrap(), 1);
        assert_eq!(psi_count(57.9, 60.0).unwrap(), 57);
        assert_eq!(psi_count(57.9, 57.0).unwrap(), 57);
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(psi_count(0.5, 2.0).is_err());
        assert!(psi_count(10.0, 0.0).is_err());
        assert!(enumerate_smooth(f64::NAN, 2.0).is_err());
    }

    #[test]
    fn matches_largest_prime_factor_filter() {
        for y in [1.0, 2.0, 3.0, 5.0, 7.5, 30.0] {
            let listed = enumerate_smooth(3000.0, y).unwrap();
            let brute: Vec<u64> = (1..=3000u64).filter(|&n| largest_prime_factor(n) as f64 <= y).collect();
            assert_eq!(listed, brute, "y={y}");
        }
    }
}
