use proptest::prelude::*;

use quadchar::arith::{factorize, is_fundamental, kronecker, psi_count, squarefree_decompose, Discriminant};
use quadchar::charsums::{char_sum, delta_max, Window};
use quadchar::gcdsum::{gcd_sum, GcdSet};
use quadchar::meanvalues::{mean_value_sum, window_sum};
use quadchar::resonance::{lemma_dd_ratio, moment_ratio, ResonatorSpec};
use quadchar::Workers;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn discriminant() -> impl Strategy<Value = Discriminant> {
    (-5000i64..5000).prop_filter_map("not fundamental", |d| {
        if d != 0 && is_fundamental(d).unwrap() {
            Discriminant::new(d).ok()
        } else {
            None
        }
    })
}

fn squarefree_set(max_len: usize) -> impl Strategy<Value = GcdSet> {
    proptest::collection::btree_set(1u64..3000, 1..max_len).prop_filter_map("needs squarefree members", |s| {
        let members: Vec<u64> = s.into_iter().filter(|&m| factorize(m).iter().all(|&(_, e)| e == 1)).collect();
        GcdSet::new(members).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chi_completely_multiplicative(d in discriminant(), m in 1u64..20_000, n in 1u64..20_000) {
        prop_assert_eq!(d.chi(m * n), d.chi(m) * d.chi(n));
    }

    #[test]
    fn chi_periodic_and_vanishes_on_common_factors(d in discriminant(), n in 1u64..100_000) {
        prop_assert_eq!(d.chi(n), d.chi(n + d.modulus()));
        prop_assert_eq!(d.chi(n) == 0, gcd(d.modulus(), n) > 1);
    }

    #[test]
    fn kronecker_matches_chi(d in discriminant(), n in 1i64..100_000) {
        prop_assert_eq!(kronecker(d.get(), n), d.chi(n as u64));
    }

    #[test]
    fn char_sum_matches_direct_sum(d in discriminant(), x in 1.0f64..30_000.0) {
        let direct: i64 = (1..=x.floor() as u64).map(|n| i64::from(d.chi(n))).sum();
        prop_assert_eq!(char_sum(d, x).unwrap(), direct);
    }

    #[test]
    fn squarefree_decomposition_roundtrip(n in 1u64..1_000_000_000_000) {
        let dec = squarefree_decompose(n).unwrap();
        prop_assert_eq!(dec.n0 * dec.n1 * dec.n1, n);
        prop_assert!(factorize(dec.n0).iter().all(|&(_, e)| e == 1));
    }

    #[test]
    fn psi_monotone(x in 1.0f64..50_000.0, dx in 0.0f64..1000.0, y in 1.0f64..200.0, dy in 0.0f64..50.0) {
        let base = psi_count(x, y).unwrap();
        prop_assert!(base <= psi_count(x + dx, y).unwrap());
        prop_assert!(base <= psi_count(x, y + dy).unwrap());
        prop_assert!(base <= x.floor() as u64);
    }

    #[test]
    fn gcd_sum_at_least_cardinality_and_dilation_invariant(set in squarefree_set(40), c in prop::sample::select(vec![3001u64, 3011, 3019, 3023])) {
        let w = Workers::sequential();
        let s = gcd_sum(&set, &w);
        prop_assert!(s >= set.len() as f64 * (1.0 - 1e-12));
        let scaled = GcdSet::new(set.members().iter().map(|&m| m * c).collect()).unwrap();
        let t = gcd_sum(&scaled, &w);
        prop_assert!((s - t).abs() <= 1e-12 * s);
    }

    #[test]
    fn uniform_short_resonator_ratio_bounded_by_max(
        big_x in 16.0f64..3000.0,
        x in 2.0f64..60.0,
        y in 2.0f64..25.0,
        a in 0.05f64..0.95,
        squared in any::<bool>(),
    ) {
        let spec = ResonatorSpec::short_uniform(big_x, x, y, a).unwrap();
        let r = moment_ratio(&spec, squared, &Workers::sequential()).unwrap();
        prop_assert!(r.inequality_holds);
        prop_assert!(r.observed_max >= r.ratio - 1e-9 * r.ratio.abs());
    }

    #[test]
    fn diagonal_ratio_at_least_floor(y in 16.0f64..1e5, n in 1.0f64..2000.0) {
        prop_assert!(lemma_dd_ratio(y, n).unwrap() >= n.floor() - 1e-9 * n);
    }

    #[test]
    fn window_sums_are_additive(n in 1u64..50, lo in -4000i64..0, mid in 0i64..2000, hi in 2000i64..4000) {
        let w = Workers::new(3).unwrap();
        let whole = window_sum(n, lo, hi, &w).unwrap();
        prop_assert_eq!(whole, window_sum(n, lo, mid, &w).unwrap() + window_sum(n, mid, hi, &w).unwrap());
    }

    #[test]
    fn results_independent_of_worker_count(big_x in 20.0f64..5000.0, x in 1.0f64..120.0, threads in 2usize..9) {
        let one = Workers::sequential();
        let many = Workers::new(threads).unwrap();
        prop_assert_eq!(
            delta_max(Window::Doubling(big_x), x, false, &one).unwrap(),
            delta_max(Window::Doubling(big_x), x, false, &many).unwrap()
        );
        prop_assert_eq!(
            mean_value_sum(4, big_x, &one).unwrap(),
            mean_value_sum(4, big_x, &many).unwrap()
        );
    }
}
