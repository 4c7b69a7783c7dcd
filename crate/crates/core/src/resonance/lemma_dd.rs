//! The diagonal-dominance ratio
//! `Σ_{a,b<=Y} Σ_{m,n<=N, an=bm} r(a) r(b) / Σ_{n<=Y} r(n)²`
//! for `r` multiplicative on squarefree integers with
//! `r(p) = λ/(√p log p)` on a prime window and `λ = √(log Y log₂Y)`.

use serde::Serialize;

use super::spec::{lambda_of, PrimeWindow};
use super::support::Support;
use crate::arith::sieve::primes_between;
use crate::error::{Error, Result};
use crate::gcdsum::gcd;
use crate::numeric::CompensatedSum;

/// The weight function `r` restricted to `n <= Y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DdWeights {
    pub lambda: Option<f64>,
    pub window: Option<(f64, f64)>,
    /// `(n, r(n))` for every supported `n <= Y`, ascending.
    pub terms: Vec<(u64, f64)>,
}

/// Builds `r` on `n <= Y`; the default window starts at `λ`.
pub fn dd_weights(big_y: f64, window: PrimeWindow) -> Result<DdWeights> {
    if !(big_y >= 1.0) || !big_y.is_finite() {
        return Err(Error::invalid(format!("Y must be a finite real >= 1, got {big_y}")));
    }
    let lambda = lambda_of(big_y);
    let bounds = lambda.map(|l| window.bounds(l));
    let support = match (lambda, bounds) {
        (Some(l), Some((lo, hi))) => {
            Support::multiplicative(primes_between(lo, hi), |p| l / ((p as f64).sqrt() * (p as f64).ln()), big_y)
        }
        _ => Support::multiplicative(&[], |_| 0.0, big_y),
    };
    Ok(DdWeights { lambda, window: bounds, terms: support.terms.iter().map(|t| (t.n, t.weight)).collect() })
}

/// Number of `(m, n)` with `m, n <= limit` and `a n = b m`: writing
/// `g = (a, b)`, the solutions are `n = (b/g) L`, `m = (a/g) L`.
pub fn solution_count(a: u64, b: u64, limit: u64) -> u64 {
    let g = gcd(a, b);
    limit / (a / g).max(b / g)
}

pub fn lemma_dd_ratio(big_y: f64, big_n: f64) -> Result<f64> {
    lemma_dd_ratio_with(big_y, big_n, PrimeWindow::Lambda)
}

pub fn lemma_dd_ratio_with(big_y: f64, big_n: f64, window: PrimeWindow) -> Result<f64> {
    if !(big_n >= 1.0) || !big_n.is_finite() {
        return Err(Error::invalid(format!("N must be a finite real >= 1, got {big_n}")));
    }
    let weights = dd_weights(big_y, window)?;
    let limit = big_n.floor() as u64;
    let mut num = CompensatedSum::new();
    let mut den = CompensatedSum::new();
    for &(a, ra) in &weights.terms {
        den.add(ra * ra);
        for &(b, rb) in &weights.terms {
            num.add(ra * rb * solution_count(a, b, limit) as f64);
        }
    }
    Ok(num.value() / den.value())
}

/// `N exp(2 √(log Y / log₂Y))`, the growth the ratio is compared with.
pub fn lemma_dd_reference(big_y: f64, big_n: f64) -> f64 {
    let l1 = big_y.ln();
    big_n * (2.0 * (l1 / l1.ln()).sqrt()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(big_y: f64, big_n: u64) -> f64 {
        let w = dd_weights(big_y, PrimeWindow::Lambda).unwrap();
        let mut num = 0.0;
        for &(a, ra) in &w.terms {
            for &(b, rb) in &w.terms {
                let mut count = 0u64;
                for m in 1..=big_n {
                    for n in 1..=big_n {
                        if a * n == b * m {
                            count += 1;
                        }
                    }
                }
                num += ra * rb * count as f64;
            }
        }
        num / w.terms.iter().map(|t| t.1 * t.1).sum::<f64>()
    }

    #[test]
    fn window_at_ten_thousand() {
        let w = dd_weights(1e4, PrimeWindow::Lambda).unwrap();
        let ns: Vec<u64> = w.terms.iter().map(|t| t.0).collect();
        assert_eq!(ns, [1, 5, 7, 35]);
        assert!(dd_weights(100.0, PrimeWindow::Lambda).unwrap().terms.len() == 1);
    }

    #[test]
    fn empty_window_gives_n() {
        assert_eq!(lemma_dd_ratio(100.0, 100.0).unwrap(), 100.0);
        assert_eq!(lemma_dd_ratio(2.0, 37.6).unwrap(), 37.0);
    }

    #[test]
    fn at_least_floor_n() {
        for (y, n) in [(1e2, 1e2), (1e3, 1e2), (1e4, 1e3), (1e5, 123.4), (1e6, 1e3)] {
            assert!(lemma_dd_ratio(y, n).unwrap() >= n.floor(), "Y={y} N={n}");
        }
    }

    #[test]
    fn counting_matches_quadruple_loop() {
        for (y, n) in [(1e2, 50), (1e3, 40), (1e4, 60)] {
            let fast = lemma_dd_ratio(y, n as f64).unwrap();
            let slow = brute(y, n);
            assert!((fast - slow).abs() <= 1e-12 * slow, "Y={y}: {fast} vs {slow}");
        }
    }

    #[test]
    fn solution_counts() {
        assert_eq!(solution_count(1, 1, 10), 10);
        assert_eq!(solution_count(5, 7, 100), 14);
        assert_eq!(solution_count(35, 5, 100), 14);
        assert_eq!(solution_count(6, 10, 9), 1);
    }
}
