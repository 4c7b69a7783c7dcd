use serde::Serialize;

use super::spec::ResonatorSpec;
use crate::arith::psi_count;
use crate::charsums::Window;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::workers::Workers;

/// Sums over `k <= x` in `S(y)` from the final step of the short-range
/// argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainBound {
    /// `Σ a_k ∏_{p|k} p/(p+1)`, the lower bound for `I2/I1`.
    pub weighted: f64,
    /// `Σ a_k`.
    pub plain: f64,
    /// `Ψ(x, y)`.
    pub psi: u64,
    /// Number of `k` summed.
    pub terms: u64,
}

/// Evaluates the chain sums for a short resonator, with `a_k` the completely
/// multiplicative extension of the resonator coefficients.
pub fn short_chain_bound(spec: &ResonatorSpec, x: f64) -> Result<ChainBound> {
    let short = spec.as_short()?;
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::invalid(format!("x must be a finite real >= 1, got {x}")));
    }
    let limit = x.floor() as u64;

    struct Walk<'a> {
        primes: &'a [u64],
        coeffs: &'a [f64],
        limit: u64,
        weighted: CompensatedSum,
        plain: CompensatedSum,
        terms: u64,
    }
    impl Walk<'_> {
        fn visit(&mut self, k: u64, a_k: f64, mertens: f64, start: usize, repeat_of: Option<usize>) {
            self.weighted.add(a_k * mertens);
            self.plain.add(a_k);
            self.terms += 1;
            for i in start..self.primes.len() {
                let p = self.primes[i];
                let Some(next) = k.checked_mul(p).filter(|&n| n <= self.limit) else { break };
                let m = if repeat_of == Some(i) { mertens } else { mertens * p as f64 / (p as f64 + 1.0) };
                self.visit(next, a_k * self.coeffs[i], m, i, Some(i));
            }
        }
    }

    let mut walk = Walk {
        primes: &short.primes,
        coeffs: &short.coefficients,
        limit,
        weighted: CompensatedSum::new(),
        plain: CompensatedSum::new(),
        terms: 0,
    };
    walk.visit(1, 1.0, 1.0, 0, None);
    Ok(ChainBound {
        weighted: walk.weighted.value(),
        plain: walk.plain.value(),
        psi: psi_count(x, short.y.max(1.0))?,
        terms: walk.terms,
    })
}

/// Size check on a short resonator: `R(d) <= ∏_{p<=y} (1 - a_p)^{-1}` for
/// every `d`, and the comparison of the squared product with `X^{1/2-α}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShortLogBound {
    /// `∏ (1 - a_p)^{-1}`.
    pub product_bound: f64,
    /// `max R(d)` over the fundamental discriminants of `(X, 2X]`.
    pub max_value: f64,
    /// `X^{1/2-α}`, when the resonator carries an `α`.
    pub envelope: Option<f64>,
    /// `log X <= x <= exp(√log X)`.
    pub in_regime: bool,
    pub envelope_holds: Option<bool>,
}

impl ShortLogBound {
    pub fn value_bound_holds(&self) -> bool {
        self.max_value <= self.product_bound
    }
}

pub fn short_log_bound(spec: &ResonatorSpec, workers: &Workers) -> Result<ShortLogBound> {
    let short = spec.as_short()?;
    spec.validate()?;
    let product_bound: f64 = short.coefficients.iter().map(|&a| 1.0 / (1.0 - a)).product();
    let discs = Window::Doubling(spec.window_start).discriminants(false)?;
    let max_value = workers
        .map_chunks(&discs, |chunk| {
            let mut scratch = Vec::new();
            chunk.iter().map(|&d| spec.value_unchecked(d, &mut scratch)).fold(f64::NEG_INFINITY, f64::max)
        })
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    let log_x = spec.window_start.ln();
    let in_regime = log_x <= spec.cutoff && spec.cutoff <= log_x.sqrt().exp();
    let envelope = short.alpha.map(|a| spec.window_start.powf(0.5 - a));
    Ok(ShortLogBound {
        product_bound,
        max_value,
        envelope,
        in_regime,
        envelope_holds: envelope.map(|e| product_bound * product_bound <= e),
    })
}
