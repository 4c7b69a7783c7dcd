//! Reference curves for the three lower bounds, evaluated with every
//! `o(1)` set to 0. They are reported next to the observed maxima and are
//! never asserted.

use serde::Serialize;

use crate::arith::psi_count;
use crate::numeric::ln_iter;
use crate::resonance::{RatioReport, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    #[serde(rename = "1.1")]
    Short,
    #[serde(rename = "1.2")]
    Medium,
    #[serde(rename = "1.3")]
    Long,
}

impl From<Variant> for Theorem {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Short => Theorem::Short,
            Variant::Medium => Theorem::Medium,
            Variant::Long => Theorem::Long,
        }
    }
}

/// `Ψ(x, ¼ log X log₂X / max{log₂x − log₃X, log₃X})`.
pub fn short_shape(big_x: f64, x: f64) -> Option<f64> {
    let l3 = ln_iter(big_x, 3);
    let y = 0.25 * big_x.ln() * ln_iter(big_x, 2) / (ln_iter(x, 2) - l3).max(l3);
    if !y.is_finite() || !(x >= 1.0) {
        return None;
    }
    psi_count(x, y.max(1.0)).ok().map(|v| v as f64)
}

/// `√x exp(√(log X / log₂X))`.
pub fn medium_shape(big_x: f64, x: f64) -> Option<f64> {
    let v = x.sqrt() * (big_x.ln() / ln_iter(big_x, 2)).sqrt().exp();
    v.is_finite().then_some(v)
}

/// `√x exp(√(log z log₃z / log₂z))` with `z = √X/x`; needs `log₃z > 0`.
pub fn long_shape(big_x: f64, x: f64) -> Option<f64> {
    let z = big_x.sqrt() / x;
    let l3 = ln_iter(z, 3);
    if !(l3 > 0.0) {
        return None;
    }
    Some(x.sqrt() * (z.ln() * l3 / ln_iter(z, 2)).sqrt().exp())
}

/// Square root of the diagonal-dominance bound at `N = x`, `Y = y`:
/// `√(x exp(2√(log y / log₂y)))`.
pub fn medium_lemma_shape(y: f64, x: f64) -> Option<f64> {
    let l2 = ln_iter(y, 2);
    if !(l2 > 0.0) {
        return None;
    }
    Some((x * (2.0 * (y.ln() / l2).sqrt()).exp()).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    #[serde(skip)]
    pub ratio_report: RatioReport,
    pub predicted_shape: Option<f64>,
    /// Alternative curve for the medium range built from the
    /// diagonal-dominance bound; `None` for the other ranges.
    pub lemma_shape: Option<f64>,
    /// `max S_d(x)` for unsquared reports, `max |S_d(x)|` for squared ones,
    /// so it is on the same scale as `predicted_shape`.
    pub observed_max: f64,
}

impl TheoremReport {
    pub fn new(ratio_report: RatioReport) -> Self {
        let spec = &ratio_report.spec;
        let (big_x, x) = (spec.window_start, spec.cutoff);
        let theorem = Theorem::from(spec.variant());
        let predicted_shape = match theorem {
            Theorem::Short => short_shape(big_x, x),
            Theorem::Medium => medium_shape(big_x, x),
            Theorem::Long => long_shape(big_x, x),
        };
        let lemma_shape = match &spec.resonator {
            crate::resonance::Resonator::Medium(m) => medium_lemma_shape(m.y, x),
            _ => None,
        };
        let observed_max =
            if ratio_report.squared { ratio_report.observed_max.sqrt() } else { ratio_report.observed_max };
        TheoremReport { theorem, ratio_report, predicted_shape, lemma_shape, observed_max }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_by_plug_in() {
        // X = 1e8, x = 50: y = ¼·log X·log₂X/log₃X ≈ 12.55, Ψ(50, 12.55) = Ψ(50, 11)
        let y = 0.25 * 1e8f64.ln() * ln_iter(1e8, 2) / ln_iter(1e8, 3);
        assert!((y - 12.55).abs() < 0.01, "{y}");
        assert_eq!(short_shape(1e8, 50.0), Some(psi_count(50.0, 11.0).unwrap() as f64));

        let m = medium_shape(1e6, 100.0).unwrap();
        let expected = 10.0 * (1e6f64.ln() / 1e6f64.ln().ln()).sqrt().exp();
        assert!((m - expected).abs() < 1e-9);

        assert!(long_shape(1e4, 10.0).is_none());
        let l = long_shape(1e12, 100.0).unwrap();
        let z: f64 = 1e4;
        let expected = 10.0 * (z.ln() * ln_iter(z, 3) / ln_iter(z, 2)).sqrt().exp();
        assert!((l - expected).abs() < 1e-9);

        assert!(medium_lemma_shape(2.0, 10.0).is_none());
    }
}
