//! Shared prime table and squarefree sieving.

use std::sync::OnceLock;

/// Upper limit of the shared prime table.
pub const SIEVE_LIMIT: u64 = 10_000_000;

static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();

/// All primes up to [`SIEVE_LIMIT`], built on first use.
pub fn primes() -> &'static [u64] {
    PRIMES.get_or_init(|| eratosthenes(SIEVE_LIMIT))
}

/// Primes `p <= limit` (capped at [`SIEVE_LIMIT`]).
pub fn primes_up_to(limit: u64) -> &'static [u64] {
    let all = primes();
    let end = all.partition_point(|&p| p <= limit);
    &all[..end]
}

/// Primes in the closed real interval `[lo, hi]`.
pub fn primes_between(lo: f64, hi: f64) -> &'static [u64] {
    let all = primes();
    if !(hi >= lo) || hi < 2.0 {
        return &[];
    }
    let start = all.partition_point(|&p| (p as f64) < lo);
    let end = all.partition_point(|&p| (p as f64) <= hi);
    &all[start..end.max(start)]
}

fn eratosthenes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::with_capacity(n / 10);
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Smallest-prime-factor table for `0..=limit` (entries 0 and 1 are 0).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= limit {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

/// Squarefree flags for the closed range `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct SquarefreeRange {
    lo: u64,
    flags: Vec<bool>,
}

impl SquarefreeRange {
    pub fn new(lo: u64, hi: u64) -> Self {
        if hi < lo {
            return SquarefreeRange { lo, flags: Vec::new() };
        }
        let len = (hi - lo + 1) as usize;
        let mut flags = vec![true; len];
        if lo == 0 {
            flags[0] = false;
        }
        for &p in primes() {
            let sq = p * p;
            if sq > hi {
                break;
            }
            let mut m = lo.div_ceil(sq) * sq;
            while m <= hi {
                flags[(m - lo) as usize] = false;
                m += sq;
            }
        }
        SquarefreeRange { lo, flags }
    }

    /// Panics if `n` lies outside the sieved range.
    pub fn contains(&self, n: u64) -> bool {
        self.flags[(n - self.lo) as usize]
    }
}
