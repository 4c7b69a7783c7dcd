//! Fundamental discriminants: membership, the validated newtype, and
//! sieved enumeration over a window.

use std::fmt;

use serde::Serialize;

use super::factor::is_squarefree;
use super::kronecker::kronecker_wide;
use super::sieve::SquarefreeRange;
use crate::error::{Error, Result};

/// A fundamental discriminant: 1, a squarefree `d ≡ 1 (mod 4)`, or `4m` with
/// `m ≡ 2, 3 (mod 4)` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d != 0 && is_fundamental(d)? {
            Ok(Discriminant(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn modulus(self) -> u64 {
        self.0.unsigned_abs()
    }

    pub fn is_unit(self) -> bool {
        self.0 == 1
    }

    /// `χ_d(n)` for `n >= 1`.
    pub fn chi(self, n: u64) -> i8 {
        kronecker_wide(self.0 as i128, n as i128)
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = Error;

    fn try_from(d: i64) -> Result<Self> {
        Discriminant::new(d)
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_fundamental(d: i64) -> Result<bool> {
    if d == 0 {
        return Err(Error::invalid("0 is not a discriminant"));
    }
    Ok(classify(d, is_squarefree))
}

fn classify(d: i64, squarefree: impl Fn(u64) -> bool) -> bool {
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Fundamental discriminants `d` with `lo < d <= hi`, ascending. The unit
/// discriminant is dropped unless `include_unit` is set.
pub fn enumerate_fundamental(lo: i64, hi: i64, include_unit: bool) -> Result<Vec<Discriminant>> {
    if lo >= hi {
        return Err(Error::invalid(format!("empty range ({lo}, {hi}]")));
    }
    let first = lo + 1;
    let mut out = Vec::new();
    // negative part [first, -1], then positive part [1, hi]
    if first <= -1 {
        let top = hi.min(-1);
        collect_sign(first, top, &mut out);
    }
    if hi >= 1 {
        let bottom = first.max(1);
        collect_sign(bottom, hi, &mut out);
    }
    if !include_unit {
        out.retain(|d| !d.is_unit());
    }
    Ok(out)
}

/// Appends the fundamental discriminants of `[a, b]`, an interval of one sign.
fn collect_sign(a: i64, b: i64, out: &mut Vec<Discriminant>) {
    let (abs_lo, abs_hi) = {
        let (x, y) = (a.unsigned_abs(), b.unsigned_abs());
        (x.min(y), x.max(y))
    };
    let full = SquarefreeRange::new(abs_lo, abs_hi);
    let quarter = SquarefreeRange::new(abs_lo / 4, abs_hi / 4);
    for d in a..=b {
        let is_fund = classify(d, |m| if m >= abs_lo { full.contains(m) } else { quarter.contains(m) });
        if is_fund {
            out.push(Discriminant(d));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(ds: &[Discriminant]) -> Vec<i64> {
        ds.iter().map(|d| d.get()).collect()
    }

    #[test]
    fn membership() {
        assert!(is_fundamental(5).unwrap());
        assert!(!is_fundamental(9).unwrap());
        assert!(is_fundamental(12).unwrap());
        assert!(is_fundamental(-3).unwrap());
        assert!(is_fundamental(-4).unwrap());
        assert!(is_fundamental(1).unwrap());
        assert!(!is_fundamental(-1).unwrap());
        assert!(!is_fundamental(4).unwrap());
        assert!(!is_fundamental(20).unwrap());
        assert!(is_fundamental(-8).unwrap());
        assert!(is_fundamental(0).is_err());
    }

    #[test]
    fn construction_rejects_non_fundamental() {
        assert!(Discriminant::new(9).is_err());
        assert!(Discriminant::new(0).is_err());
        assert_eq!(Discriminant::try_from(-7).unwrap().get(), -7);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(values(&enumerate_fundamental(0, 20, true).unwrap()), [1, 5, 8, 12, 13, 17]);
        assert_eq!(values(&enumerate_fundamental(0, 20, false).unwrap()), [5, 8, 12, 13, 17]);
        assert!(enumerate_fundamental(2, 4, false).unwrap().is_empty());
        assert!(enumerate_fundamental(4, 4, false).is_err());
        assert_eq!(values(&enumerate_fundamental(-21, 0, true).unwrap()), [-20, -19, -15, -11, -8, -7, -4, -3]);
    }

    #[test]
    fn enumeration_agrees_with_membership_test() {
        let windows = [(-3000, 3000), (-1, 1), (-5, 2), (999_000, 1_001_000), (-1_002_000, -999_000)];
        for (lo, hi) in windows {
            let listed = values(&enumerate_fundamental(lo, hi, true).unwrap());
            let brute: Vec<i64> = (lo + 1..=hi).filter(|&d| d != 0 && is_fundamental(d).unwrap()).collect();
            assert_eq!(listed, brute, "window ({lo}, {hi}]");
        }
    }

    #[test]
    fn density_approaches_six_over_pi_squared() {
        let x = 1_000_000i64;
        let count = enumerate_fundamental(-x - 1, x, true).unwrap().len() as f64;
        let density = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        let ratio = count / x as f64;
        assert!((ratio - density).abs() / density < 0.01, "ratio {ratio}");
    }
}
