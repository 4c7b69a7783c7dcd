use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::support::Support;
use crate::arith::sieve::{primes_between, primes_up_to};
use crate::arith::Discriminant;
use crate::error::{Error, Result};
use crate::gcdsum::{construct_extremal_set, GcdSet};
use crate::numeric::ln_iter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Short,
    Medium,
    Long,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Short => "short",
            Variant::Medium => "medium",
            Variant::Long => "long",
        }
    }

    /// Whether the construction is paired with `S_d(x)²` in its moment.
    pub fn default_squared(self) -> bool {
        !matches!(self, Variant::Short)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "short" => Ok(Variant::Short),
            "medium" => Ok(Variant::Medium),
            "long" => Ok(Variant::Long),
            other => Err(Error::invalid(format!("unknown resonator variant {other:?}"))),
        }
    }
}

/// Prime window `[lo, e^{(log λ)²}]` of the medium resonator.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PrimeWindow {
    /// `lo = λ²`.
    #[default]
    LambdaSquared,
    /// `lo = λ`.
    Lambda,
    /// Fixed `[lo, hi]`, for experiments outside the formula's range.
    Explicit { lo: f64, hi: f64 },
}

impl PrimeWindow {
    pub(crate) fn bounds(self, lambda: f64) -> (f64, f64) {
        let hi = lambda.ln().powi(2).exp();
        match self {
            PrimeWindow::LambdaSquared => (lambda * lambda, hi),
            PrimeWindow::Lambda => (lambda, hi),
            PrimeWindow::Explicit { lo, hi } => (lo, hi),
        }
    }
}

/// `λ = √(log y · log₂ y)`, defined for `y > e`.
pub(crate) fn lambda_of(y: f64) -> Option<f64> {
    let l2 = ln_iter(y, 2);
    (l2 > 0.0).then(|| (y.ln() * l2).sqrt())
}

/// Inputs to [`build_resonator`]. `alpha` only affects the short variant,
/// `medium_window` only the medium one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonatorParams {
    /// `X`: discriminants range over `(X, 2X]`.
    pub window_start: f64,
    /// `x`: the character sum length.
    pub cutoff: f64,
    pub alpha: f64,
    pub delta: f64,
    pub medium_window: PrimeWindow,
}

pub const DEFAULT_ALPHA: f64 = 0.01;
pub const DEFAULT_DELTA: f64 = 0.01;

impl ResonatorParams {
    pub fn new(window_start: f64, cutoff: f64) -> Self {
        ResonatorParams {
            window_start,
            cutoff,
            alpha: DEFAULT_ALPHA,
            delta: DEFAULT_DELTA,
            medium_window: PrimeWindow::default(),
        }
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn medium_window(mut self, window: PrimeWindow) -> Self {
        self.medium_window = window;
        self
    }
}

/// `R(d) = ∏_{p<=y} (1 - a_p χ_d(p))^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortResonator {
    pub alpha: Option<f64>,
    pub delta: Option<f64>,
    pub y: f64,
    pub primes: Vec<u64>,
    pub coefficients: Vec<f64>,
}

/// `R(d) = Σ_{n<=y} r(n) χ_d(n)` with `r` multiplicative on squarefree
/// integers and `r(p) = λ/(√p log p)` on the window primes.
#[derive(Debug, Clone, PartialEq)]
pub struct MediumResonator {
    pub delta: f64,
    pub y: f64,
    /// `None` when `y <= e`; the resonator is then identically 1.
    pub lambda: Option<f64>,
    pub window: Option<(f64, f64)>,
    pub(crate) support: Support,
}

impl MediumResonator {
    pub fn primes(&self) -> &[u64] {
        &self.support.primes
    }

    /// `(n, r(n))` for every `n <= y` in the support, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.support.terms.iter().map(|t| (t.n, t.weight))
    }

    pub fn is_degenerate(&self) -> bool {
        self.support.primes.is_empty()
    }
}

/// `R(d) = Σ_{m∈M} χ_d(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LongResonator {
    pub delta: Option<f64>,
    pub set: GcdSet,
    pub(crate) support: Support,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Resonator {
    Short(ShortResonator),
    Medium(MediumResonator),
    Long(LongResonator),
}

/// A fully derived resonator together with the window `(X, 2X]` and the
/// cutoff `x` it was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonatorSpec {
    pub window_start: f64,
    pub cutoff: f64,
    pub resonator: Resonator,
}

fn check_common(p: &ResonatorParams) -> Result<()> {
    if !(p.window_start >= 16.0) || !p.window_start.is_finite() {
        return Err(Error::invalid(format!("X must be finite and >= 16, got {}", p.window_start)));
    }
    if !(p.cutoff >= 2.0) || !p.cutoff.is_finite() {
        return Err(Error::invalid(format!("x must be finite and >= 2, got {}", p.cutoff)));
    }
    if !(p.delta > 0.0 && p.delta < 0.25) {
        return Err(Error::invalid(format!("delta must lie in (0, 1/4), got {}", p.delta)));
    }
    Ok(())
}

pub fn build_resonator(variant: Variant, params: &ResonatorParams) -> Result<ResonatorSpec> {
    check_common(params)?;
    let resonator = match variant {
        Variant::Short => Resonator::Short(build_short(params)?),
        Variant::Medium => Resonator::Medium(build_medium(params)),
        Variant::Long => {
            let n = long_set_size(params.window_start, params.cutoff, params.delta);
            if n < 1.0 {
                return Err(Error::invalid(format!("X^(1/2-delta)/x = {n} leaves the long resonator without members")));
            }
            let set = construct_extremal_set(n as u64)?;
            Resonator::Long(LongResonator {
                delta: Some(params.delta),
                support: Support::from_members(set.members()),
                set,
            })
        }
    };
    Ok(ResonatorSpec { window_start: params.window_start, cutoff: params.cutoff, resonator })
}

/// `y = (1/4 - α) log X log₂X / max{log₂x - log₃X, log₃X}`.
pub fn short_length(window_start: f64, cutoff: f64, alpha: f64) -> f64 {
    let l1 = window_start.ln();
    let l2 = ln_iter(window_start, 2);
    let l3 = ln_iter(window_start, 3);
    let denom = (ln_iter(cutoff, 2) - l3).max(l3);
    (0.25 - alpha) * l1 * l2 / denom
}

/// `a_p = 1 - log y / (log x (log₂X)^{1+δ})`.
pub fn short_coefficient(window_start: f64, cutoff: f64, delta: f64, y: f64) -> f64 {
    1.0 - y.ln() / (cutoff.ln() * ln_iter(window_start, 2).powf(1.0 + delta))
}

fn build_short(p: &ResonatorParams) -> Result<ShortResonator> {
    if !(p.alpha > 0.0 && p.alpha < 0.25) {
        return Err(Error::invalid(format!("alpha must lie in (0, 1/4), got {}", p.alpha)));
    }
    if p.delta > p.alpha {
        return Err(Error::invalid(format!(
            "delta ({}) must not exceed alpha ({}) for the short resonator",
            p.delta, p.alpha
        )));
    }
    let y = short_length(p.window_start, p.cutoff, p.alpha);
    if !y.is_finite() {
        return Err(Error::invalid("short resonator length y is not finite"));
    }
    let primes = if y >= 2.0 { primes_up_to(y.floor() as u64).to_vec() } else { Vec::new() };
    let a = short_coefficient(p.window_start, p.cutoff, p.delta, y);
    if !primes.is_empty() && !(a > 0.0 && a < 1.0) {
        return Err(Error::invalid(format!("short coefficient a_p = {a} falls outside (0, 1)")));
    }
    Ok(ShortResonator { alpha: Some(p.alpha), delta: Some(p.delta), y, coefficients: vec![a; primes.len()], primes })
}

/// `y = X^{1/2-δ}/x²`.
pub fn medium_length(window_start: f64, cutoff: f64, delta: f64) -> f64 {
    window_start.powf(0.5 - delta) / (cutoff * cutoff)
}

fn build_medium(p: &ResonatorParams) -> MediumResonator {
    let y = medium_length(p.window_start, p.cutoff, p.delta);
    let lambda = lambda_of(y);
    let window = lambda.map(|l| p.medium_window.bounds(l));
    // the n = 1 term stays even when y < 1, so a degenerate resonator is R ≡ 1
    let limit = y.max(1.0);
    let support = match (lambda, window) {
        (Some(l), Some((lo, hi))) => {
            Support::multiplicative(primes_between(lo, hi), |q| l / ((q as f64).sqrt() * (q as f64).ln()), limit)
        }
        _ => Support::multiplicative(&[], |_| 0.0, limit),
    };
    MediumResonator { delta: p.delta, y, lambda, window, support }
}

/// `X^{1/2-δ}/x`, whose floor is the long resonator's `|M|`.
pub fn long_set_size(window_start: f64, cutoff: f64, delta: f64) -> f64 {
    (window_start.powf(0.5 - delta) / cutoff).floor()
}

impl ResonatorSpec {
    /// Short resonator with arbitrary `(p, a_p)` pairs; `S(y)` is generated
    /// by exactly these primes.
    pub fn short_with_coefficients(window_start: f64, cutoff: f64, coefficients: &[(u64, f64)]) -> Result<Self> {
        let mut pairs = coefficients.to_vec();
        pairs.sort_by_key(|&(p, _)| p);
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::invalid(format!("prime {} listed twice", w[0].0)));
            }
        }
        for &(p, a) in &pairs {
            if crate::arith::factorize(p) != [(p, 1)] {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
            if !a.is_finite() {
                return Err(Error::invalid(format!("coefficient for {p} is not finite")));
            }
        }
        let y = pairs.last().map_or(1.0, |&(p, _)| p as f64);
        Ok(ResonatorSpec {
            window_start,
            cutoff,
            resonator: Resonator::Short(ShortResonator {
                alpha: None,
                delta: None,
                y,
                primes: pairs.iter().map(|&(p, _)| p).collect(),
                coefficients: pairs.iter().map(|&(_, a)| a).collect(),
            }),
        })
    }

    /// Short resonator with the same coefficient on every prime `p <= y`.
    pub fn short_uniform(window_start: f64, cutoff: f64, y: f64, a: f64) -> Result<Self> {
        let primes = if y >= 2.0 { primes_up_to(y.floor() as u64) } else { &[] };
        let pairs: Vec<(u64, f64)> = primes.iter().map(|&p| (p, a)).collect();
        let mut spec = Self::short_with_coefficients(window_start, cutoff, &pairs)?;
        if let Resonator::Short(s) = &mut spec.resonator {
            s.y = y;
        }
        Ok(spec)
    }

    /// Long resonator over a caller-supplied set.
    pub fn long_with_set(window_start: f64, cutoff: f64, set: GcdSet) -> Self {
        ResonatorSpec {
            window_start,
            cutoff,
            resonator: Resonator::Long(LongResonator {
                delta: None,
                support: Support::from_members(set.members()),
                set,
            }),
        }
    }

    /// `R ≡ 1`: a short resonator with no primes.
    pub fn trivial(window_start: f64, cutoff: f64) -> Self {
        Self::short_with_coefficients(window_start, cutoff, &[]).expect("empty coefficient list is valid")
    }

    pub fn variant(&self) -> Variant {
        match self.resonator {
            Resonator::Short(_) => Variant::Short,
            Resonator::Medium(_) => Variant::Medium,
            Resonator::Long(_) => Variant::Long,
        }
    }

    pub fn as_short(&self) -> Result<&ShortResonator> {
        match &self.resonator {
            Resonator::Short(s) => Ok(s),
            _ => Err(Error::WrongVariant { expected: "short" }),
        }
    }

    /// Checks the conditions [`ResonatorSpec::value`] relies on.
    pub fn validate(&self) -> Result<()> {
        if let Resonator::Short(s) = &self.resonator {
            for (&p, &a) in s.primes.iter().zip(&s.coefficients) {
                if !(a.abs() < 1.0) {
                    return Err(Error::CoefficientOutOfRange { prime: p, value: a });
                }
            }
        }
        Ok(())
    }

    /// `R(d)`.
    pub fn value(&self, d: Discriminant) -> Result<f64> {
        self.validate()?;
        Ok(self.value_unchecked(d, &mut Vec::new()))
    }

    pub(crate) fn value_unchecked(&self, d: Discriminant, scratch: &mut Vec<i8>) -> f64 {
        match &self.resonator {
            Resonator::Short(s) => {
                s.primes.iter().zip(&s.coefficients).map(|(&p, &a)| 1.0 / (1.0 - a * f64::from(d.chi(p)))).product()
            }
            Resonator::Medium(m) => m.support.eval(d, scratch),
            Resonator::Long(l) => l.support.eval(d, scratch),
        }
    }
}

/// `R(d)` for the given spec.
pub fn resonator_value(spec: &ResonatorSpec, d: Discriminant) -> Result<f64> {
    spec.value(d)
}
