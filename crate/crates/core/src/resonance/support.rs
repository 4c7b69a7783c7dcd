use crate::arith::{factorize, Discriminant};
use crate::numeric::CompensatedSum;

/// A weighted sum `Σ w(n) χ_d(n)` over squarefree `n` built from a fixed
/// prime list, with each term's prime factors stored as indices so that
/// `χ_d(n)` comes from the per-prime values.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Support {
    pub primes: Vec<u64>,
    pub terms: Vec<SupportTerm>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SupportTerm {
    pub n: u64,
    pub weight: f64,
    pub factors: Vec<usize>,
}

impl Support {
    /// All squarefree `n <= limit` composed of `primes`, weighted by the
    /// multiplicative extension of `prime_weight`. Ascending in `n`.
    pub fn multiplicative(primes: &[u64], prime_weight: impl Fn(u64) -> f64, limit: f64) -> Support {
        let weights: Vec<f64> = primes.iter().map(|&p| prime_weight(p)).collect();
        let mut terms = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn walk(
            start: usize,
            n: u64,
            w: f64,
            factors: &mut Vec<usize>,
            primes: &[u64],
            weights: &[f64],
            limit: f64,
            out: &mut Vec<SupportTerm>,
        ) {
            out.push(SupportTerm { n, weight: w, factors: factors.clone() });
            for i in start..primes.len() {
                let Some(next) = n.checked_mul(primes[i]) else { break };
                if next as f64 > limit {
                    break;
                }
                factors.push(i);
                walk(i + 1, next, w * weights[i], factors, primes, weights, limit, out);
                factors.pop();
            }
        }
        if limit >= 1.0 {
            walk(0, 1, 1.0, &mut Vec::new(), primes, &weights, limit, &mut terms);
        }
        terms.sort_by_key(|t| t.n);
        Support { primes: primes.to_vec(), terms }
    }

    /// Unit weights on the given squarefree members.
    pub fn from_members(members: &[u64]) -> Support {
        let mut primes: Vec<u64> = members.iter().flat_map(|&m| factorize(m).into_iter().map(|(p, _)| p)).collect();
        primes.sort_unstable();
        primes.dedup();
        let terms = members
            .iter()
            .map(|&m| SupportTerm {
                n: m,
                weight: 1.0,
                factors: factorize(m)
                    .iter()
                    .map(|(p, _)| primes.binary_search(p).expect("factor collected above"))
                    .collect(),
            })
            .collect();
        Support { primes, terms }
    }

    pub fn eval(&self, d: Discriminant, chi: &mut Vec<i8>) -> f64 {
        chi.clear();
        chi.extend(self.primes.iter().map(|&p| d.chi(p)));
        let mut acc = CompensatedSum::new();
        for t in &self.terms {
            let sign: i8 = t.factors.iter().map(|&i| chi[i]).product();
            if sign != 0 {
                acc.add(f64::from(sign) * t.weight);
            }
        }
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicative_support_lists_squarefree_products() {
        let s = Support::multiplicative(&[2, 3, 5], |p| p as f64, 16.0);
        let ns: Vec<u64> = s.terms.iter().map(|t| t.n).collect();
        assert_eq!(ns, [1, 2, 3, 5, 6, 10, 15]);
        for t in &s.terms {
            assert_eq!(t.weight, t.n as f64);
        }
        assert!(Support::multiplicative(&[2], |_| 1.0, 0.5).terms.is_empty());
    }

    #[test]
    fn eval_matches_direct_kronecker() {
        let members = [1u64, 6, 10, 15, 30, 7, 77];
        let s = Support::from_members(&members);
        let mut chi = Vec::new();
        for d in crate::arith::enumerate_fundamental(-200, 200, true).unwrap() {
            let direct: i64 = members.iter().map(|&m| i64::from(d.chi(m))).sum();
            assert_eq!(s.eval(d, &mut chi), direct as f64);
        }
    }
}
