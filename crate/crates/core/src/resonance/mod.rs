//! Resonator constructions and the moment ratios `M2/M1` that bound
//! `max_{X<d<=2X} S_d(x)` from below.
//!
//! * short: `R(d) = ∏_{p<=y} (1 - a_p χ_d(p))^{-1}` with a uniform `a_p`;
//! * medium: `R(d) = Σ_{n<=y} r(n) χ_d(n)`, `r(p) = λ/(√p log p)` on a
//!   prime window, `r` multiplicative with squarefree support;
//! * long: `R(d) = Σ_{m∈M} χ_d(m)` over a GCD-extremal set `M`.
//!
//! Because `R(d)² >= 0`, `max S_d(x) >= M2/M1` (and `max S_d(x)² >= M2/M1`
//! in the squared form) holds exactly for every construction; the reports
//! check it with a relative slack of [`RATIO_TOL_REL`].

mod chain;
mod lemma_dd;
mod moments;
mod spec;
mod support;

pub use chain::{short_chain_bound, short_log_bound, ChainBound, ShortLogBound};
pub use lemma_dd::{dd_weights, lemma_dd_ratio, lemma_dd_ratio_with, lemma_dd_reference, solution_count, DdWeights};
pub use moments::{
    moment_ratio, moment_sums_over, MomentSums, ParamsRecord, RatioCsvRow, RatioJson, RatioReport, RATIO_TOL_REL,
};
pub use spec::{
    build_resonator, long_set_size, medium_length, resonator_value, short_coefficient, short_length, LongResonator,
    MediumResonator, PrimeWindow, Resonator, ResonatorParams, ResonatorSpec, ShortResonator, Variant, DEFAULT_ALPHA,
    DEFAULT_DELTA,
};
