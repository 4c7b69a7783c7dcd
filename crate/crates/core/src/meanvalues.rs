//! Exact sums `Σ_{|d|<=X, d∈F} χ_d(n)` compared with their main term
//! `X/ζ(2) · ∏_{p|n} p/(p+1)` (present only for square `n`) and with the
//! unconditional and GRH error envelopes, both taken with implied constant 1.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::{divisor_count, enumerate_fundamental, error_factors, is_square, mertens_factor, Discriminant};
use crate::error::{Error, Result};
use crate::workers::Workers;

/// `1/ζ(2)`.
pub const INV_ZETA2: f64 = 6.0 / (PI * PI);

fn check_args(n: u64, x: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be >= 1"));
    }
    if !(x >= 1.0) || !x.is_finite() || x >= i64::MAX as f64 / 2.0 {
        return Err(Error::invalid(format!("X must be a finite real >= 1, got {x}")));
    }
    Ok(())
}

fn sum_over(n: u64, discs: &[Discriminant], workers: &Workers) -> i64 {
    workers.map_chunks(discs, |chunk| chunk.iter().map(|d| i64::from(d.chi(n))).sum::<i64>()).into_iter().sum()
}

/// `Σ χ_d(n)` over fundamental `d` with `lo < d <= hi` (unit included).
pub fn window_sum(n: u64, lo: i64, hi: i64, workers: &Workers) -> Result<i64> {
    if n == 0 {
        return Err(Error::invalid("n must be >= 1"));
    }
    let discs = enumerate_fundamental(lo, hi, true)?;
    Ok(sum_over(n, &discs, workers))
}

/// `Σ_{|d|<=X, d∈F} χ_d(n)`, both signs of `d`, unit included.
pub fn mean_value_sum(n: u64, x: f64, workers: &Workers) -> Result<i64> {
    check_args(n, x)?;
    let top = x.floor() as i64;
    window_sum(n, -top - 1, top, workers)
}

/// `X/ζ(2) · ∏_{p|n} p/(p+1)` for square `n`, otherwise 0.
pub fn mean_value_main_term(n: u64, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be >= 1"));
    }
    if !is_square(n) {
        return Ok(0.0);
    }
    Ok(x * INV_ZETA2 * mertens_factor(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanValueReport {
    pub n: u64,
    #[serde(rename = "X")]
    pub x: f64,
    pub exact_sum: i64,
    pub main_term: f64,
    pub residual: f64,
    #[serde(rename = "uncond_envelope")]
    pub unconditional_envelope: f64,
    pub grh_envelope: f64,
}

/// `X^{1/2} τ(√n)` for square `n`, `X^{1/2} n^{1/4} log n` otherwise.
pub fn unconditional_envelope(n: u64, x: f64) -> f64 {
    if is_square(n) {
        x.sqrt() * divisor_count(n.isqrt()) as f64
    } else {
        let nf = n as f64;
        x.sqrt() * nf.powf(0.25) * nf.ln()
    }
}

/// `X^{1/2+ε} f(n0) g(n1)`.
pub fn grh_envelope(n: u64, x: f64, eps: f64) -> Result<f64> {
    let (f, g) = error_factors(n, eps)?;
    Ok(x.powf(0.5 + eps) * f * g)
}

pub fn mean_value_report(n: u64, x: f64, eps: f64, workers: &Workers) -> Result<MeanValueReport> {
    check_args(n, x)?;
    let grh = grh_envelope(n, x, eps)?;
    let exact_sum = mean_value_sum(n, x, workers)?;
    let main_term = mean_value_main_term(n, x)?;
    Ok(MeanValueReport {
        n,
        x,
        exact_sum,
        main_term,
        residual: exact_sum as f64 - main_term,
        unconditional_envelope: unconditional_envelope(n, x),
        grh_envelope: grh,
    })
}
