//! Exact quadratic character sums `S_d(x) = Σ_{n<=x} χ_d(n)` and exhaustive
//! maxima over windows of fundamental discriminants.

use serde::Serialize;

use crate::arith::sieve::smallest_prime_factors;
use crate::arith::{enumerate_fundamental, Discriminant};
use crate::error::{Error, Result};
use crate::workers::Workers;

/// Floors a real cutoff; anything below 1 gives the empty sum.
pub(crate) fn floor_cutoff(x: f64) -> Result<u64> {
    if x.is_nan() {
        return Err(Error::invalid("cutoff x is NaN"));
    }
    if x < 1.0 {
        return Ok(0);
    }
    if x >= u64::MAX as f64 {
        return Err(Error::invalid(format!("cutoff {x} is too large")));
    }
    Ok(x.floor() as u64)
}

/// `S_d(x)`, using the full-period cancellation of a nonprincipal character
/// to reduce `x` modulo `|d|` before summing.
pub fn char_sum(d: Discriminant, x: f64) -> Result<i64> {
    let n = floor_cutoff(x)?;
    if d.is_unit() {
        return Ok(n as i64);
    }
    let rem = n % d.modulus();
    Ok((1..=rem).map(|k| i64::from(d.chi(k))).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharSumProfile {
    pub d: Discriminant,
    pub cutoffs: Vec<u64>,
    pub values: Vec<i64>,
}

impl CharSumProfile {
    pub fn last(&self) -> i64 {
        self.values.last().copied().unwrap_or(0)
    }
}

/// Running sums `S_d(1), …, S_d(x_max)` by direct summation.
pub fn char_sum_prefix(d: Discriminant, x_max: u64) -> Result<CharSumProfile> {
    if x_max == 0 {
        return Err(Error::invalid("prefix profile needs x_max >= 1"));
    }
    let cutoffs: Vec<u64> = (1..=x_max).collect();
    let values = cutoffs
        .iter()
        .scan(0i64, |acc, &n| {
            *acc += i64::from(d.chi(n));
            Some(*acc)
        })
        .collect();
    Ok(CharSumProfile { d, cutoffs, values })
}

/// Evaluates `χ_d(1..=limit)` through complete multiplicativity: one
/// Kronecker symbol per prime, a table lookup for everything else.
#[derive(Debug, Clone)]
pub(crate) struct CharacterTable {
    spf: Vec<u32>,
}

impl CharacterTable {
    pub fn new(limit: u64) -> Self {
        CharacterTable { spf: smallest_prime_factors(limit as usize) }
    }

    /// Fills `buf[n] = χ_d(n)` for `0 <= n <= limit` (`buf[0]` is unused).
    pub fn fill(&self, d: Discriminant, buf: &mut Vec<i8>) {
        let len = self.spf.len();
        buf.clear();
        buf.resize(len, 0);
        if len > 1 {
            buf[1] = 1;
        }
        for n in 2..len {
            let p = self.spf[n] as usize;
            buf[n] = if p == n { d.chi(n as u64) } else { buf[p] * buf[n / p] };
        }
    }

    /// `S_d(limit)`; `buf` is scratch space.
    pub fn sum(&self, d: Discriminant, buf: &mut Vec<i8>) -> i64 {
        self.fill(d, buf);
        buf.iter().skip(1).map(|&v| i64::from(v)).sum()
    }
}

/// Discriminant window `(lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    /// `(X, 2X]`.
    Doubling(f64),
    Explicit {
        lo: i64,
        hi: i64,
    },
}

impl Window {
    pub fn bounds(&self) -> Result<(i64, i64)> {
        match *self {
            Window::Doubling(x) => {
                if !(x >= 1.0) || !x.is_finite() || 2.0 * x >= i64::MAX as f64 {
                    return Err(Error::invalid(format!("window start X must be a finite real >= 1, got {x}")));
                }
                Ok((x.floor() as i64, (2.0 * x).floor() as i64))
            }
            Window::Explicit { lo, hi } => {
                if lo >= hi {
                    return Err(Error::invalid(format!("window ({lo}, {hi}] is empty")));
                }
                Ok((lo, hi))
            }
        }
    }

    pub fn discriminants(&self, include_unit: bool) -> Result<Vec<Discriminant>> {
        let (lo, hi) = self.bounds()?;
        let ds = enumerate_fundamental(lo, hi, include_unit)?;
        if ds.is_empty() {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(ds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxSearchResult {
    pub window_lo: i64,
    pub window_hi: i64,
    pub x: u64,
    pub argmax_d: Discriminant,
    pub max_value: i64,
    /// Smallest maximizer of `|S_d(x)|`.
    pub argmax_abs_d: Discriminant,
    pub max_abs_value: i64,
    pub count_scanned: u64,
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    best: (i64, Discriminant),
    best_abs: (i64, Discriminant),
    scanned: u64,
}

fn better(candidate: (i64, Discriminant), current: (i64, Discriminant)) -> bool {
    candidate.0 > current.0 || (candidate.0 == current.0 && candidate.1 < current.1)
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        Partial {
            best: if better(other.best, self.best) { other.best } else { self.best },
            best_abs: if better(other.best_abs, self.best_abs) { other.best_abs } else { self.best_abs },
            scanned: self.scanned + other.scanned,
        }
    }
}

/// Exhaustive maximum of `S_d(x)` over the fundamental discriminants of
/// `window`, ties going to the smallest `d`.
pub fn delta_max(window: Window, x: f64, include_unit: bool, workers: &Workers) -> Result<MaxSearchResult> {
    let (lo, hi) = window.bounds()?;
    if !(x >= 1.0) {
        return Err(Error::invalid(format!("cutoff x must be >= 1, got {x}")));
    }
    let cutoff = floor_cutoff(x)?;
    let discs = window.discriminants(include_unit)?;
    let table = CharacterTable::new(cutoff);

    let partial = workers
        .map_chunks(&discs, |chunk| {
            let mut buf = Vec::new();
            chunk.iter().fold(None, |acc: Option<Partial>, &d| {
                let s = table.sum(d, &mut buf);
                let here = Partial { best: (s, d), best_abs: (s.abs(), d), scanned: 1 };
                Some(match acc {
                    None => here,
                    Some(p) => p.merge(here),
                })
            })
        })
        .into_iter()
        .flatten()
        .reduce(Partial::merge)
        .ok_or(Error::EmptyWindow { lo, hi })?;

    Ok(MaxSearchResult {
        window_lo: lo,
        window_hi: hi,
        x: cutoff,
        argmax_d: partial.best.1,
        max_value: partial.best.0,
        argmax_abs_d: partial.best_abs.1,
        max_abs_value: partial.best_abs.0,
        count_scanned: partial.scanned,
    })
}

/// `{X_lo, X_hi, x, d_star, S_star, scanned}` output row.
#[derive(Debug, Clone, Serialize)]
pub struct MaxSearchRecord {
    #[serde(rename = "X_lo")]
    pub x_lo: i64,
    #[serde(rename = "X_hi")]
    pub x_hi: i64,
    pub x: u64,
    pub d_star: i64,
    #[serde(rename = "S_star")]
    pub s_star: i64,
    pub scanned: u64,
}

/// [`MaxSearchRecord`] extended with the maximum of `|S_d(x)|`.
#[derive(Debug, Clone, Serialize)]
pub struct MaxSearchAbsRecord {
    #[serde(rename = "X_lo")]
    pub x_lo: i64,
    #[serde(rename = "X_hi")]
    pub x_hi: i64,
    pub x: u64,
    pub d_star: i64,
    #[serde(rename = "S_star")]
    pub s_star: i64,
    pub d_star_abs: i64,
    #[serde(rename = "S_star_abs")]
    pub s_star_abs: i64,
    pub scanned: u64,
}

impl MaxSearchResult {
    pub fn record(&self) -> MaxSearchRecord {
        MaxSearchRecord {
            x_lo: self.window_lo,
            x_hi: self.window_hi,
            x: self.x,
            d_star: self.argmax_d.get(),
            s_star: self.max_value,
            scanned: self.count_scanned,
        }
    }

    pub fn abs_record(&self) -> MaxSearchAbsRecord {
        MaxSearchAbsRecord {
            x_lo: self.window_lo,
            x_hi: self.window_hi,
            x: self.x,
            d_star: self.argmax_d.get(),
            s_star: self.max_value,
            d_star_abs: self.argmax_abs_d.get(),
            s_star_abs: self.max_abs_value,
            scanned: self.count_scanned,
        }
    }
}

/// `√|d| · log|d|`, the Pólya–Vinogradov scale.
pub fn pv_baseline(d: Discriminant) -> Result<f64> {
    pv_scale(d.modulus())
}

/// `√q · log q` for a modulus `q >= 2`.
pub fn pv_scale(q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::invalid("Pólya–Vinogradov baseline needs |d| >= 2"));
    }
    let q = q as f64;
    Ok(q.sqrt() * q.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn char_sum_examples() {
        assert_eq!(char_sum(disc(5), 3.0).unwrap(), -1);
        assert_eq!(char_sum(disc(8), 5.0).unwrap(), -1);
        assert_eq!(char_sum(disc(1), 17.9).unwrap(), 17);
        assert_eq!(char_sum(disc(13), 0.5).unwrap(), 0);
        assert!(char_sum(disc(13), f64::NAN).is_err());
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(char_sum_prefix(disc(5), 5).unwrap().values, [1, 0, -1, 0, 0]);
        assert_eq!(char_sum_prefix(disc(1), 4).unwrap().values, [1, 2, 3, 4]);
        for d in [-4, -3, 8, 12, 13, -163] {
            let dd = disc(d);
            assert_eq!(char_sum_prefix(dd, dd.modulus()).unwrap().last(), 0, "d={d}");
        }
        assert!(char_sum_prefix(disc(5), 0).is_err());
    }

    #[test]
    fn periodic_and_direct_paths_agree() {
        for d in enumerate_fundamental(-400, 400, true).unwrap() {
            let profile = char_sum_prefix(d, 900).unwrap();
            for (&c, &v) in profile.cutoffs.iter().zip(&profile.values) {
                assert_eq!(char_sum(d, c as f64 + 0.25).unwrap(), v, "d={d} x={c}");
                let cap = if d.is_unit() { c } else { c.min(d.modulus()) };
                assert!(v.unsigned_abs() <= cap);
            }
        }
    }

    #[test]
    fn table_matches_kronecker() {
        let table = CharacterTable::new(500);
        let mut buf = Vec::new();
        for d in enumerate_fundamental(-300, 300, true).unwrap() {
            table.fill(d, &mut buf);
            for n in 1..=500u64 {
                assert_eq!(buf[n as usize], d.chi(n));
            }
            assert_eq!(table.sum(d, &mut buf), char_sum(d, 500.0).unwrap());
        }
        assert_eq!(CharacterTable::new(0).sum(disc(5), &mut buf), 0);
    }

    #[test]
    fn delta_max_worked_example() {
        let r = delta_max(Window::Doubling(10.0), 5.0, false, &Workers::sequential()).unwrap();
        assert_eq!((r.window_lo, r.window_hi), (10, 20));
        assert_eq!(r.argmax_d.get(), 13);
        assert_eq!(r.max_value, 1);
        assert_eq!(r.count_scanned, 3);
    }

    #[test]
    fn delta_max_empty_window() {
        let err = delta_max(Window::Explicit { lo: 2, hi: 4 }, 3.0, false, &Workers::sequential()).unwrap_err();
        assert!(matches!(err, Error::EmptyWindow { lo: 2, hi: 4 }));
    }

    #[test]
    fn delta_max_dominates_every_member() {
        let w = Window::Doubling(500.0);
        let r = delta_max(w, 37.0, false, &Workers::sequential()).unwrap();
        for d in w.discriminants(false).unwrap() {
            let s = char_sum(d, 37.0).unwrap();
            assert!(s <= r.max_value);
            assert!(s.abs() <= r.max_abs_value);
            if s == r.max_value {
                assert!(d >= r.argmax_d);
            }
        }
    }

    #[test]
    fn delta_max_thread_independent() {
        let w = Window::Explicit { lo: -5000, hi: 5000 };
        let reference = delta_max(w, 61.0, true, &Workers::sequential()).unwrap();
        for t in [2, 3, 8] {
            assert_eq!(delta_max(w, 61.0, true, &Workers::new(t).unwrap()).unwrap(), reference);
        }
    }

    #[test]
    fn pv_baseline_values() {
        assert!((pv_baseline(disc(-4)).unwrap() - 2.0 * 4f64.ln()).abs() < 1e-12);
        assert!((pv_scale(2).unwrap() - 0.980).abs() < 1e-3);
        assert!((pv_scale(100).unwrap() - 46.05).abs() < 1e-2);
        let mut prev = 0.0;
        for q in 2..2000 {
            let v = pv_scale(q).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(pv_baseline(disc(1)).is_err());
        assert!(pv_baseline(disc(8)).unwrap() < pv_baseline(disc(12)).unwrap());
    }

    #[test]
    fn record_fields() {
        let r = delta_max(Window::Doubling(10.0), 5.0, false, &Workers::sequential()).unwrap();
        let json = serde_json::to_value(r.record()).unwrap();
        assert_eq!(json["d_star"], 13);
        assert_eq!(json["S_star"], 1);
        assert_eq!(json["X_lo"], 10);
        assert_eq!(json["X_hi"], 20);
        assert_eq!(json["scanned"], 3);
    }
}
