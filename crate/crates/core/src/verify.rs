//! Self-checks run by the `verify` command: each suite re-derives its
//! module's invariants at fixed desk-scale parameters, mostly against
//! brute-force oracles written independently of the main code paths.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::sieve::primes_up_to;
use crate::arith::{
    enumerate_fundamental, enumerate_smooth, is_square, is_squarefree, kronecker, largest_prime_factor, psi_count,
    squarefree_decompose, Discriminant,
};
use crate::charsums::{char_sum, char_sum_prefix, delta_max, Window};
use crate::error::{Error, Result};
use crate::gcdsum::{construct_extremal_set, gcd_sum, GcdSet};
use crate::meanvalues::{mean_value_main_term, mean_value_sum, window_sum, INV_ZETA2};
use crate::numeric::rel_close;
use crate::resonance::{
    build_resonator, dd_weights, lemma_dd_ratio, moment_ratio, moment_sums_over, short_log_bound, PrimeWindow,
    Resonator, ResonatorParams, ResonatorSpec, Variant, RATIO_TOL_REL,
};
use crate::workers::Workers;

const SEED: u64 = 0x5eed_c4a2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Arith,
    Charsum,
    Meanvalue,
    Resonance,
    Gcd,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Arith, Suite::Charsum, Suite::Meanvalue, Suite::Resonance, Suite::Gcd];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Arith => "arith",
            Suite::Charsum => "charsum",
            Suite::Meanvalue => "meanvalue",
            Suite::Resonance => "resonance",
            Suite::Gcd => "gcd",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}/{}: {}", self.suite, self.name, self.detail)
    }
}

struct Checks {
    suite: Suite,
    out: Vec<CheckOutcome>,
}

impl Checks {
    fn record(&mut self, name: &'static str, check: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.out.push(CheckOutcome { suite: self.suite, name, passed, detail });
    }
}

pub fn run_suite(suite: Suite, workers: &Workers) -> Vec<CheckOutcome> {
    let mut c = Checks { suite, out: Vec::new() };
    match suite {
        Suite::Arith => arith_checks(&mut c),
        Suite::Charsum => charsum_checks(&mut c, workers),
        Suite::Meanvalue => meanvalue_checks(&mut c, workers),
        Suite::Resonance => resonance_checks(&mut c, workers),
        Suite::Gcd => gcd_checks(&mut c, workers),
    }
    c.out
}

fn fundamental_up_to(bound: i64) -> Vec<Discriminant> {
    enumerate_fundamental(-bound - 1, bound, true).expect("nonempty range")
}

/// `a^((p-1)/2) mod p`, mapped to {-1, 0, 1}.
fn euler_symbol(a: i64, p: u64) -> i8 {
    let m = u128::from(p);
    let mut base = a.rem_euclid(p as i64) as u128;
    let mut e = (p - 1) / 2;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    match acc {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn naive_gcd(a: u64, b: u64) -> u64 {
    (1..=a.min(b)).rev().find(|g| a.is_multiple_of(*g) && b.is_multiple_of(*g)).unwrap_or(1)
}

fn arith_checks(c: &mut Checks) {
    c.record("euler-criterion", || {
        let odd: Vec<u64> = primes_up_to(499).iter().copied().filter(|&p| p > 2).collect();
        let mut mismatches = 0;
        let mut checked = 0;
        for d in fundamental_up_to(500) {
            for &p in &odd {
                if d.get() % p as i64 == 0 {
                    continue;
                }
                checked += 1;
                if kronecker(d.get(), p as i64) != euler_symbol(d.get(), p) {
                    mismatches += 1;
                }
            }
        }
        Ok((mismatches == 0, format!("{checked} pairs, {mismatches} mismatches")))
    });

    c.record("multiplicativity", || {
        let mut bad = 0;
        for d in fundamental_up_to(200) {
            let row: Vec<i8> = (0..=40_000u64).map(|n| if n == 0 { 0 } else { d.chi(n) }).collect();
            for m in 1..=200usize {
                for n in 1..=200usize {
                    if row[m * n] != row[m] * row[n] {
                        bad += 1;
                    }
                }
            }
        }
        Ok((bad == 0, format!("|d|, m, n <= 200: {bad} failures")))
    });

    c.record("zero-iff-common-factor", || {
        let mut bad = 0;
        for d in fundamental_up_to(200) {
            for n in 1..=400u64 {
                if (d.chi(n) == 0) != (naive_gcd(d.modulus(), n) > 1) {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("{bad} failures")))
    });

    c.record("periodicity", || {
        let mut bad = 0;
        for d in fundamental_up_to(200) {
            for n in 1..=400u64 {
                if d.chi(n) != d.chi(n + d.modulus()) {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("{bad} failures")))
    });

    c.record("squarefree-roundtrip", || {
        let mut bad = 0;
        for n in 1..=1_000_000u64 {
            let dec = squarefree_decompose(n)?;
            if dec.n0 * dec.n1 * dec.n1 != n || !is_squarefree(dec.n0) || dec.is_square() != is_square(n) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("n <= 10^6: {bad} failures")))
    });

    c.record("psi-vs-enumeration", || {
        let mut bad = 0;
        for y in [2.0, 3.0, 5.0, 10.0, 100.0] {
            let mut running = 0u64;
            let mut prev_psi = 0;
            for x in 1..=10_000u64 {
                if largest_prime_factor(x) as f64 <= y {
                    running += 1;
                }
                let psi = psi_count(x as f64, y)?;
                if psi != running || psi < prev_psi {
                    bad += 1;
                }
                prev_psi = psi;
            }
            if enumerate_smooth(10_000.0, y)?.len() as u64 != running {
                bad += 1;
            }
        }
        let monotone_y =
            (1..=120).all(|y| psi_count(5000.0, y as f64).unwrap() <= psi_count(5000.0, y as f64 + 1.0).unwrap());
        if !monotone_y {
            bad += 1;
        }
        Ok((bad == 0 && psi_count(100.0, 5.0)? == 34, format!("{bad} failures; Ψ(100,5) = {}", psi_count(100.0, 5.0)?)))
    });

    c.record("discriminant-density", || {
        let count = fundamental_up_to(1_000_000).len() as f64;
        let ratio = count / 1e6;
        let err = (ratio - INV_ZETA2).abs() / INV_ZETA2;
        Ok((err < 0.01, format!("density {ratio:.6} vs 6/π² (rel err {err:.2e})")))
    });
}

fn charsum_checks(c: &mut Checks, workers: &Workers) {
    c.record("full-period-cancellation", || {
        let mut bad = Vec::new();
        for d in fundamental_up_to(2000) {
            if d.is_unit() {
                continue;
            }
            if char_sum_prefix(d, d.modulus())?.last() != 0 {
                bad.push(d.get());
            }
        }
        Ok((bad.is_empty(), format!("1 < |d| <= 2000, failing: {bad:?}")))
    });

    c.record("magnitude-cap", || {
        let mut bad = 0;
        for d in fundamental_up_to(300) {
            let p = char_sum_prefix(d, 1000)?;
            for (&x, &v) in p.cutoffs.iter().zip(&p.values) {
                let cap = if d.is_unit() { x } else { x.min(d.modulus()) };
                if v.unsigned_abs() > cap {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("{bad} violations")))
    });

    c.record("periodic-vs-prefix", || {
        let mut bad = 0;
        for d in fundamental_up_to(400) {
            let p = char_sum_prefix(d, 1500)?;
            for (&x, &v) in p.cutoffs.iter().zip(&p.values) {
                if char_sum(d, x as f64)? != v {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("{bad} disagreements")))
    });

    c.record("delta-max-vs-rescan", || {
        let mut bad = 0;
        for big_x in [10.0, 100.0, 500.0, 1000.0] {
            for x in [5.0, 30.0, 100.0] {
                let r = delta_max(Window::Doubling(big_x), x, false, workers)?;
                let mut best: Option<(i64, i64)> = None;
                for d in (big_x as i64 + 1)..=(2.0 * big_x) as i64 {
                    if d == 1 || !crate::arith::is_fundamental(d)? {
                        continue;
                    }
                    let s: i64 = (1..=x as i64).map(|n| i64::from(kronecker(d, n))).sum();
                    if best.is_none_or(|(bs, _)| s > bs) {
                        best = Some((s, d));
                    }
                }
                if best != Some((r.max_value, r.argmax_d.get())) {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("12 windows, {bad} disagreements")))
    });
}

fn meanvalue_checks(c: &mut Checks, workers: &Workers) {
    c.record("main-term-unit", || {
        let s = mean_value_sum(1, 1e6, workers)? as f64;
        let main = mean_value_main_term(1, 1e6)?;
        let err = (s - main).abs() / main;
        Ok((err < 0.01, format!("sum {s} vs {main:.1} (rel err {err:.2e})")))
    });

    c.record("main-term-four", || {
        let s = mean_value_sum(4, 1e6, workers)? as f64;
        let main = mean_value_main_term(4, 1e6)?;
        let err = (s - main).abs() / main;
        Ok((err < 0.02, format!("sum {s} vs {main:.1} (rel err {err:.2e})")))
    });

    c.record("nonsquare-cancellation", || {
        let bound = 1e6f64.powf(0.6);
        let mut worst = 0i64;
        for n in [2, 3, 5, 6] {
            worst = worst.max(mean_value_sum(n, 1e6, workers)?.abs());
        }
        Ok((worst as f64 <= bound, format!("max |sum| = {worst} vs X^0.6 = {bound:.0}")))
    });

    c.record("unit-counts-discriminants", || {
        let s = mean_value_sum(1, 1e5, workers)?;
        let count = fundamental_up_to(100_000).len() as i64;
        Ok((s == count, format!("{s} vs {count}")))
    });

    c.record("window-additivity", || {
        let mut bad = 0;
        for n in [1u64, 2, 3, 4, 9, 10] {
            let whole = mean_value_sum(n, 20_000.0, workers)?;
            let inner = mean_value_sum(n, 7_777.0, workers)?;
            let outer = window_sum(n, 7_777, 20_000, workers)? + window_sum(n, -20_001, -7_778, workers)?;
            if whole != inner + outer {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} failures")))
    });

    c.record("main-term-radical", || {
        let a = mean_value_main_term(4, 1e6)?;
        let b = mean_value_main_term(16, 1e6)?;
        Ok((a == b, format!("{a} vs {b}")))
    });
}

/// The twenty resonator configurations used by the inequality sweep.
pub fn pinned_ratio_configs() -> Result<Vec<(ResonatorSpec, bool)>> {
    let p = ResonatorParams::new;
    let explicit = |lo, hi| PrimeWindow::Explicit { lo, hi };
    let mut out = vec![
        (build_resonator(Variant::Short, &p(1e3, 20.0))?, false),
        (build_resonator(Variant::Short, &p(1e3, 20.0))?, true),
        (build_resonator(Variant::Short, &p(1e4, 50.0).delta(0.005))?, false),
        (build_resonator(Variant::Short, &p(1e4, 50.0).delta(0.005))?, true),
        (build_resonator(Variant::Short, &p(5e3, 100.0))?, false),
        (build_resonator(Variant::Short, &p(2e3, 10.0).alpha(0.05).delta(0.02))?, true),
        (ResonatorSpec::short_with_coefficients(1e3, 6.0, &[(2, 0.5), (3, 0.5)])?, false),
        (build_resonator(Variant::Medium, &p(1e4, 10.0))?, true),
        (build_resonator(Variant::Medium, &p(1e4, 2.0))?, false),
        (build_resonator(Variant::Medium, &p(1e4, 2.0).medium_window(explicit(2.0, 7.0)))?, true),
        (build_resonator(Variant::Medium, &p(1e4, 3.0).medium_window(explicit(2.0, 13.0)))?, false),
        (build_resonator(Variant::Medium, &p(5e3, 2.0).medium_window(explicit(3.0, 11.0)))?, true),
        (build_resonator(Variant::Medium, &p(1e4, 2.0).medium_window(PrimeWindow::Lambda))?, true),
        (build_resonator(Variant::Long, &p(1e4, 10.0))?, true),
        (build_resonator(Variant::Long, &p(1e4, 5.0))?, false),
        (build_resonator(Variant::Long, &p(1e4, 20.0))?, true),
        (build_resonator(Variant::Long, &p(5e3, 4.0))?, true),
        (build_resonator(Variant::Long, &p(2e3, 3.0))?, false),
        (ResonatorSpec::long_with_set(1e4, 50.0, GcdSet::new(vec![1, 2, 3, 5, 6, 10, 15, 30])?), true),
        (ResonatorSpec::trivial(1e4, 100.0), false),
    ];
    out.shrink_to_fit();
    Ok(out)
}

fn resonance_checks(c: &mut Checks, workers: &Workers) {
    c.record("fundamental-inequality", || {
        let configs = pinned_ratio_configs()?;
        {
            let mut failing = Vec::new();
            for (i, (spec, squared)) in configs.iter().enumerate() {
                let r = moment_ratio(spec, *squared, workers)?;
                if !r.inequality_holds {
                    failing.push(i);
                }
            }
            Ok((failing.is_empty(), format!("{} configurations, failing: {failing:?}", configs.len())))
        }
    });

    c.record("diagonal-bound", || {
        let mut bad = Vec::new();
        for (y, n) in [(1e2, 1e2), (1e3, 1e2), (1e4, 1e3)] {
            let v = lemma_dd_ratio(y, n)?;
            if v < n.floor() {
                bad.push((y, n, v));
            }
        }
        // quadruple-loop oracle
        let w = dd_weights(1e4, PrimeWindow::Lambda)?;
        let (mut num, mut den) = (0.0, 0.0);
        for &(a, ra) in &w.terms {
            den += ra * ra;
            for &(b, rb) in &w.terms {
                let count =
                    (1..=50u64).flat_map(|m| (1..=50u64).map(move |n| (m, n))).filter(|&(m, n)| a * n == b * m).count();
                num += ra * rb * count as f64;
            }
        }
        let fast = lemma_dd_ratio(1e4, 50.0)?;
        let agree = rel_close(fast, num / den, 1e-8);
        Ok((bad.is_empty() && agree, format!("below floor(N): {bad:?}; oracle {} vs {fast}", num / den)))
    });

    c.record("short-product-bound", || {
        let mut bad = 0;
        let mut report = Vec::new();
        for (big_x, x) in [(1e3, 20.0), (1e4, 50.0), (1e4, 12.0)] {
            let spec = build_resonator(Variant::Short, &ResonatorParams::new(big_x, x))?;
            let b = short_log_bound(&spec, workers)?;
            if !b.value_bound_holds() {
                bad += 1;
            }
            report.push(format!(
                "X={big_x:e} x={x}: ∏(1-a_p)^-2 = {:.3e} vs X^(1/2-α) = {:.3e} (in regime: {})",
                b.product_bound * b.product_bound,
                b.envelope.unwrap_or(f64::NAN),
                b.in_regime
            ));
        }
        Ok((bad == 0, report.join("; ")))
    });

    c.record("medium-expansion", || {
        let spec = build_resonator(
            Variant::Medium,
            &ResonatorParams::new(1e4, 2.0).medium_window(PrimeWindow::Explicit { lo: 2.0, hi: 5.0 }),
        )?;
        let Resonator::Medium(m) = &spec.resonator else { unreachable!() };
        let lambda = m.lambda.unwrap_or(f64::NAN);
        let primes = m.primes().to_vec();
        let mut expected = Vec::new();
        for mask in 0u32..(1 << primes.len()) {
            let chosen: Vec<u64> = (0..primes.len()).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
            let n: u64 = chosen.iter().product();
            if n as f64 <= m.y {
                let r: f64 = chosen.iter().map(|&p| lambda / ((p as f64).sqrt() * (p as f64).ln())).product();
                expected.push((n, r));
            }
        }
        expected.sort_by_key(|t| t.0);
        let terms: Vec<(u64, f64)> = m.terms().collect();
        let mut ok = terms.len() == expected.len()
            && terms.iter().zip(&expected).all(|(a, b)| a.0 == b.0 && rel_close(a.1, b.1, 1e-14));
        for d in enumerate_fundamental(10_000, 10_400, false)? {
            let direct: f64 = expected.iter().map(|&(n, r)| r * f64::from(kronecker(d.get(), n as i64))).sum();
            ok &= rel_close(spec.value(d)?, direct, 1e-12) || (spec.value(d)? - direct).abs() < 1e-12;
        }
        Ok((ok, format!("{} primes, {} terms", primes.len(), terms.len())))
    });

    c.record("trivial-resonator-mean", || {
        let spec = ResonatorSpec::trivial(3000.0, 70.0);
        let r = moment_ratio(&spec, false, workers)?;
        let discs = Window::Doubling(3000.0).discriminants(false)?;
        let mut total = 0i64;
        for &d in &discs {
            total += char_sum(d, 70.0)?;
        }
        let mean = total as f64 / discs.len() as f64;
        Ok((rel_close(r.ratio, mean, 1e-12), format!("ratio {} vs mean {mean}", r.ratio)))
    });

    c.record("scan-order-invariance", || {
        let spec = build_resonator(Variant::Long, &ResonatorParams::new(1e4, 5.0))?;
        let mut discs = Window::Doubling(1e4).discriminants(false)?;
        let base = moment_sums_over(&spec, &discs, true, workers)?;
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut ok = true;
        for _ in 0..5 {
            discs.shuffle(&mut rng);
            let s = moment_sums_over(&spec, &discs, true, workers)?;
            ok &= rel_close(s.m1, base.m1, RATIO_TOL_REL)
                && rel_close(s.m2, base.m2, RATIO_TOL_REL)
                && s.observed_max == base.observed_max;
        }
        Ok((ok, "5 shuffles".to_string()))
    });
}

fn random_squarefree_set(rng: &mut StdRng, size: usize, max: u64) -> GcdSet {
    let mut members = std::collections::BTreeSet::new();
    while members.len() < size {
        let m = rng.gen_range(1..=max);
        if is_squarefree(m) {
            members.insert(m);
        }
    }
    GcdSet::new(members.into_iter().collect()).expect("sampled squarefree distinct members")
}

fn brute_gcd_sum(set: &GcdSet) -> f64 {
    let mut total = 0.0;
    for &m in set.members() {
        for &n in set.members() {
            let g = naive_gcd(m, n);
            let l = m / g * n;
            total += (g as f64 / l as f64).sqrt();
        }
    }
    total
}

fn gcd_checks(c: &mut Checks, workers: &Workers) {
    let mut rng = StdRng::seed_from_u64(SEED);

    c.record("pair-formula-vs-double-loop", || {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let set = random_squarefree_set(&mut rng, 20, 2000);
            let a = gcd_sum(&set, workers);
            let b = brute_gcd_sum(&set);
            worst = worst.max((a - b).abs() / b);
        }
        Ok((worst <= 1e-10, format!("100 sets, worst rel diff {worst:.2e}")))
    });

    c.record("at-least-cardinality", || {
        let mut ok = true;
        for size in [1, 5, 40] {
            let set = random_squarefree_set(&mut rng, size, 500);
            ok &= gcd_sum(&set, workers) >= size as f64;
        }
        Ok((ok, "random sets".to_string()))
    });

    c.record("extremal-beats-random", || {
        let extremal = construct_extremal_set(1000)?;
        let target = gcd_sum(&extremal, workers);
        let mut best_random = 0.0f64;
        for _ in 0..20 {
            let set = random_squarefree_set(&mut rng, 1000, 1_000_000);
            best_random = best_random.max(gcd_sum(&set, workers));
        }
        Ok((target > best_random, format!("extremal {target:.1} vs best random {best_random:.1}")))
    });

    c.record("coprime-dilation-invariance", || {
        let set = construct_extremal_set(200)?;
        let c_prime = primes_up_to(10_000).iter().copied().find(|&p| p > set.y_m()).expect("prime above y_M");
        let scaled = GcdSet::new(set.members().iter().map(|&m| m * c_prime).collect())?;
        let (a, b) = (gcd_sum(&set, workers), gcd_sum(&scaled, workers));
        Ok((rel_close(a, b, 1e-12), format!("c = {c_prime}: {a} vs {b}")))
    });
}
