//! The transversal failure bound for random lists.
//!
//! Sets `S_1..S_k` are built from `r` uniform samples (with replacement) of
//! `0..k+r`; each loses a fixed pair `F_i`. For large `k` and
//! `7 ln k ≤ r ≤ k` the family fails to have a transversal with
//! probability at most `k^{1 - r/5}`, via the union bound
//! `Σ_j P_j` with `P_j ≤ C(k,j) C(k+r,j) ((j+2)/(k+r))^{rj}`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_binomial;

use crate::transversal::{find_transversal, SetFamily};

/// `ln( C(k,j) · C(k+r,j) · ((j+2)/(k+r))^{rj} )`.
pub fn pj_bound(k: usize, r: usize, j: usize) -> f64 {
    assert!(1 <= j && j <= k, "need 1 <= j <= k");
    let (k64, r64, j64) = (k as u64, r as u64, j as u64);
    let ratio = (j as f64 + 2.0) / (k + r) as f64;
    ln_binomial(k64, j64) + ln_binomial(k64 + r64, j64) + (r * j) as f64 * ratio.ln()
}

/// `ln k^{1 - r/5}`.
pub fn failure_bound_ln(k: usize, r: usize) -> f64 {
    (1.0 - r as f64 / 5.0) * (k as f64).ln()
}

/// `ln Σ exp(x_i)`, stable for very negative inputs.
pub fn ln_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Wilson score interval for `failures / trials` at `z` standard deviations.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// How the excluded pairs `F_i` are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionStyle {
    /// `F_i = {0, 1}` for every set.
    FixedPair,
    /// An independent uniformly random pair per set.
    RandomPerSet,
    /// One pair for all sets: the two elements occurring in the most sets,
    /// chosen after sampling. Stronger than the fixed pairs the bound assumes.
    AdversarialShared,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub k: usize,
    pub r: usize,
    pub style: ExclusionStyle,
    pub seed: u64,
    pub trials: u64,
    pub failures: u64,
    /// `k^{1 - r/5}`.
    pub bound: f64,
    pub ln_bound: f64,
    /// Wilson interval (z = 3) of the failure frequency.
    pub wilson_low: f64,
    pub wilson_high: f64,
}

impl TrialStats {
    pub fn frequency(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.failures as f64 / self.trials as f64
        }
    }

    /// The observed frequency is at most the bound plus its 3σ Wilson slack.
    pub fn consistent_with_bound(&self) -> bool {
        self.wilson_low <= self.bound
    }
}

fn trial_family(k: usize, r: usize, style: ExclusionStyle, rng: &mut ChaCha8Rng) -> SetFamily {
    let universe = k + r;
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut pairs: Vec<[usize; 2]> = Vec::with_capacity(k);
    for _ in 0..k {
        sets.push((0..r).map(|_| rng.gen_range(0..universe)).collect());
        if style == ExclusionStyle::RandomPerSet {
            let p = sample(rng, universe, 2);
            pairs.push([p.index(0), p.index(1)]);
        }
    }
    let shared = match style {
        ExclusionStyle::FixedPair => [0, 1],
        ExclusionStyle::RandomPerSet => [usize::MAX; 2],
        ExclusionStyle::AdversarialShared => {
            let mut hits = vec![0usize; universe];
            for s in &sets {
                let mut s = s.clone();
                s.sort_unstable();
                s.dedup();
                for x in s {
                    hits[x] += 1;
                }
            }
            let mut order: Vec<usize> = (0..universe).collect();
            order.sort_by_key(|&x| (std::cmp::Reverse(hits[x]), x));
            [order[0], order[1]]
        }
    };
    for (i, s) in sets.iter_mut().enumerate() {
        let f = if style == ExclusionStyle::RandomPerSet {
            pairs[i]
        } else {
            shared
        };
        s.retain(|x| !f.contains(x));
    }
    SetFamily::new(sets, universe).expect("samples lie in the universe")
}

/// Monte-Carlo failure frequency of the transversal existence, using
/// `has_transversal` as the decision procedure. Trial `i` draws from the
/// ChaCha stream `i` of `seed`, so results do not depend on scheduling.
pub fn mc_list_transversal_with<F>(
    k: usize,
    r: usize,
    style: ExclusionStyle,
    trials: u64,
    seed: u64,
    has_transversal: F,
) -> TrialStats
where
    F: Fn(&SetFamily) -> bool + Sync,
{
    assert!(k >= 1 && r >= 1, "need k, r >= 1");
    assert!(k + r >= 2, "exclusion pairs need two elements");
    let failures = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            !has_transversal(&trial_family(k, r, style, &mut rng))
        })
        .count() as u64;
    let ln_bound = failure_bound_ln(k, r);
    let (wilson_low, wilson_high) = wilson_interval(failures, trials, 3.0);
    TrialStats {
        k,
        r,
        style,
        seed,
        trials,
        failures,
        bound: ln_bound.exp(),
        ln_bound,
        wilson_low,
        wilson_high,
    }
}

/// [`mc_list_transversal_with`] using the matching-based transversal search.
pub fn mc_list_transversal(k: usize, r: usize, style: ExclusionStyle, trials: u64, seed: u64) -> TrialStats {
    mc_list_transversal_with(k, r, style, trials, seed, |f| find_transversal(f).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pj_small_case() {
        // C(1,1) C(2,1) (3/2)^1 = 3
        assert!((pj_bound(1, 1, 1).exp() - 3.0).abs() < 1e-12);
        // C(3,2) C(5,2) (4/5)^{2·2} = 3 · 10 · 0.4096
        assert!((pj_bound(3, 2, 2).exp() - 12.288).abs() < 1e-9);
    }

    #[test]
    fn pj_nonincreasing_in_r() {
        let vals: Vec<f64> = (1..=50).map(|r| pj_bound(100, r, 1)).collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]), "{vals:?}");
    }

    #[test]
    fn summed_bound_below_failure_bound() {
        let (k, r) = (100, 33);
        let total = ln_sum_exp((1..=k).map(|j| pj_bound(k, r, j)));
        assert!(total <= failure_bound_ln(k, r) * (1.0 - 1e-9), "{total}");
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 10_000, 3.0);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 1e-3);
        let (lo, hi) = wilson_interval(50, 100, 3.0);
        assert!(lo < 0.5 && hi > 0.5);
    }

    #[test]
    fn trials_deterministic_and_reported() {
        let a = mc_list_transversal(5, 5, ExclusionStyle::RandomPerSet, 500, 9);
        let b = mc_list_transversal(5, 5, ExclusionStyle::RandomPerSet, 500, 9);
        assert_eq!(a, b);
        assert!(a.failures <= a.trials);
        let low_r = mc_list_transversal(20, 2, ExclusionStyle::FixedPair, 200, 1);
        assert!(low_r.failures > 0);
    }

    #[test]
    fn adversarial_is_at_least_as_hard_in_aggregate() {
        let fixed = mc_list_transversal(10, 4, ExclusionStyle::FixedPair, 2000, 3);
        let adv = mc_list_transversal(10, 4, ExclusionStyle::AdversarialShared, 2000, 3);
        assert!(adv.failures >= fixed.failures, "{} {}", adv.failures, fixed.failures);
    }
}
