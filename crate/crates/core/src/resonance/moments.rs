use serde::Serialize;

use super::spec::{Resonator, ResonatorSpec, Variant};
use crate::arith::Discriminant;
use crate::charsums::{floor_cutoff, CharacterTable, Window};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::workers::Workers;

/// Relative slack allowed in `observed_max >= M2/M1`.
pub const RATIO_TOL_REL: f64 = 1e-9;

/// Weighted moments over a list of discriminants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSums {
    /// `Σ R(d)²`.
    pub m1: f64,
    /// `Σ S_d(x) R(d)²`, or `Σ S_d(x)² R(d)²` when squared.
    pub m2: f64,
    /// `max S_d(x)`, or `max S_d(x)²` when squared.
    pub observed_max: i64,
    pub scanned: u64,
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    m1: CompensatedSum,
    m2: CompensatedSum,
    max: Option<i64>,
    scanned: u64,
}

impl Partial {
    fn empty() -> Self {
        Partial { m1: CompensatedSum::new(), m2: CompensatedSum::new(), max: None, scanned: 0 }
    }

    fn merge(mut self, other: &Partial) -> Self {
        self.m1.merge(&other.m1);
        self.m2.merge(&other.m2);
        self.max = match (self.max, other.max) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.scanned += other.scanned;
        self
    }
}

/// Accumulates `M1`, `M2` and the observed maximum over `discs` in one scan.
/// The reduction runs in the order given, one contiguous chunk per worker.
pub fn moment_sums_over(
    spec: &ResonatorSpec,
    discs: &[Discriminant],
    squared: bool,
    workers: &Workers,
) -> Result<MomentSums> {
    spec.validate()?;
    let table = CharacterTable::new(floor_cutoff(spec.cutoff)?);
    let partials = workers.map_chunks(discs, |chunk| {
        let mut buf = Vec::new();
        let mut scratch = Vec::new();
        let mut acc = Partial::empty();
        for &d in chunk {
            let s = table.sum(d, &mut buf);
            let r = spec.value_unchecked(d, &mut scratch);
            let w = r * r;
            let v = if squared { s * s } else { s };
            acc.m1.add(w);
            acc.m2.add(v as f64 * w);
            acc.max = Some(acc.max.map_or(v, |m| m.max(v)));
            acc.scanned += 1;
        }
        acc
    });
    let total = partials.iter().fold(Partial::empty(), |a, p| a.merge(p));
    let observed_max = total.max.ok_or(Error::invalid("no discriminants to scan"))?;
    Ok(MomentSums { m1: total.m1.value(), m2: total.m2.value(), observed_max, scanned: total.scanned })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub spec: ResonatorSpec,
    pub window_lo: i64,
    pub window_hi: i64,
    pub x: u64,
    pub m1: f64,
    pub m2: f64,
    pub ratio: f64,
    pub observed_max: f64,
    pub squared: bool,
    pub inequality_holds: bool,
    pub discriminants_scanned: u64,
}

/// `M2/M1` over the fundamental discriminants of `(X, 2X]`, with the observed
/// maximum it bounds from below.
pub fn moment_ratio(spec: &ResonatorSpec, squared: bool, workers: &Workers) -> Result<RatioReport> {
    let window = Window::Doubling(spec.window_start);
    let (lo, hi) = window.bounds()?;
    let discs = window.discriminants(false)?;
    let sums = moment_sums_over(spec, &discs, squared, workers)?;
    if !(sums.m1 > 0.0) {
        return Err(Error::DegenerateWeights);
    }
    let ratio = sums.m2 / sums.m1;
    let observed_max = sums.observed_max as f64;
    Ok(RatioReport {
        spec: spec.clone(),
        window_lo: lo,
        window_hi: hi,
        x: floor_cutoff(spec.cutoff)?,
        m1: sums.m1,
        m2: sums.m2,
        ratio,
        observed_max,
        squared,
        inequality_holds: observed_max >= ratio - RATIO_TOL_REL * ratio.abs(),
        discriminants_scanned: sums.scanned,
    })
}

/// Variant-specific parameters as they appear in emitted reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamsRecord {
    Short {
        alpha: Option<f64>,
        delta: Option<f64>,
        y: f64,
        primes: Vec<u64>,
        a_p: Vec<f64>,
    },
    Medium {
        delta: f64,
        y: f64,
        lambda: Option<f64>,
        window_lo: Option<f64>,
        window_hi: Option<f64>,
        primes: Vec<u64>,
        support_size: usize,
    },
    Long {
        delta: Option<f64>,
        #[serde(rename = "N")]
        n: usize,
        #[serde(rename = "y_M")]
        y_m: u64,
    },
}

impl ResonatorSpec {
    pub fn params_record(&self) -> ParamsRecord {
        match &self.resonator {
            Resonator::Short(s) => ParamsRecord::Short {
                alpha: s.alpha,
                delta: s.delta,
                y: s.y,
                primes: s.primes.clone(),
                a_p: s.coefficients.clone(),
            },
            Resonator::Medium(m) => ParamsRecord::Medium {
                delta: m.delta,
                y: m.y,
                lambda: m.lambda,
                window_lo: m.window.map(|w| w.0),
                window_hi: m.window.map(|w| w.1),
                primes: m.primes().to_vec(),
                support_size: m.support.terms.len(),
            },
            Resonator::Long(l) => ParamsRecord::Long { delta: l.delta, n: l.set.len(), y_m: l.set.y_m() },
        }
    }
}

/// JSON shape of a [`RatioReport`].
#[derive(Debug, Clone, Serialize)]
pub struct RatioJson {
    pub variant: Variant,
    #[serde(rename = "X")]
    pub window_start: f64,
    pub x: f64,
    pub params: ParamsRecord,
    #[serde(rename = "M1")]
    pub m1: f64,
    #[serde(rename = "M2")]
    pub m2: f64,
    pub ratio: f64,
    pub observed_max: f64,
    pub squared: bool,
    pub holds: bool,
    pub scanned: u64,
}

/// CSV row of a [`RatioReport`]: `variant,X,x,M1,M2,ratio,observed_max,holds`.
#[derive(Debug, Clone, Serialize)]
pub struct RatioCsvRow {
    pub variant: Variant,
    #[serde(rename = "X")]
    pub window_start: f64,
    pub x: f64,
    #[serde(rename = "M1")]
    pub m1: f64,
    #[serde(rename = "M2")]
    pub m2: f64,
    pub ratio: f64,
    pub observed_max: f64,
    pub holds: bool,
}

impl RatioReport {
    pub fn json_record(&self) -> RatioJson {
        RatioJson {
            variant: self.spec.variant(),
            window_start: self.spec.window_start,
            x: self.spec.cutoff,
            params: self.spec.params_record(),
            m1: self.m1,
            m2: self.m2,
            ratio: self.ratio,
            observed_max: self.observed_max,
            squared: self.squared,
            holds: self.inequality_holds,
            scanned: self.discriminants_scanned,
        }
    }

    pub fn csv_row(&self) -> RatioCsvRow {
        RatioCsvRow {
            variant: self.spec.variant(),
            window_start: self.spec.window_start,
            x: self.spec.cutoff,
            m1: self.m1,
            m2: self.m2,
            ratio: self.ratio,
            observed_max: self.observed_max,
            holds: self.inequality_holds,
        }
    }
}
