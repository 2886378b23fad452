//! The outer search loop: iterate n over a range, reuse σ(n) across the k
//! loop, apply filters, and merge results deterministically. The range is
//! split into disjoint blocks; each worker sieves its own segment and emits
//! results to a collector, which sorts before reporting.
//!
//! The per-n inner loop is inverted algebraically instead of looping over k.
//! Writing σ(n) = g₀·σ' and n = g₀·n₀ with gcd(σ', n₀) = 1, the reduction of
//! σ(n)/(k·n) is (σ'/g) / ((k/g)·n₀) with g = gcd(σ', k). A hit therefore
//! needs a divisor g of σ' with num = σ'/g > 1 and S_α(num) = (k/g)·n₀, i.e.
//! n₀ | S_α(num) and k = g·S_α(num)/n₀ ≤ k_max. Enumerating the divisors
//! g ≤ k_max of σ' visits every hit exactly once (g must equal gcd(σ', k),
//! which is confirmed before accepting); each surviving (n, k) pair is then
//! re-checked through `check_candidate`, so the fast path only ever proposes
//! candidates. Equivalence with the plain (n, k) double loop is enforced by
//! tests.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arithmetic::{gcd, sieve_sigma, SIEVE_GUARD};
use crate::spoof::{check_candidate, verify_spoof, SpoofNumber};
use crate::Error;

/// Bounds and filters for one search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n_min: u64,
    pub n_max: u64,
    pub k_max: u64,
    pub alpha_max: u32,
    pub odd_only: bool,
    pub require_x_prime: bool,
    pub require_x_coprime: bool,
    pub block_size: u64,
}

impl Default for SearchConfig {
    /// The canonical run: the full claimed search envelope with all filters on.
    fn default() -> Self {
        SearchConfig {
            n_min: 2,
            n_max: 16_000_000,
            k_max: 512,
            alpha_max: 10,
            odd_only: true,
            require_x_prime: true,
            require_x_coprime: true,
            block_size: 1 << 16,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= n_min <= n_max, got n_min={} n_max={}",
                self.n_min, self.n_max
            )));
        }
        if self.n_max > SIEVE_GUARD {
            return Err(Error::RangeTooLarge {
                hi: self.n_max,
                guard: SIEVE_GUARD,
            });
        }
        if self.k_max < 2 {
            return Err(Error::InvalidConfig(format!("need k_max >= 2, got {}", self.k_max)));
        }
        if self.alpha_max < 1 {
            return Err(Error::InvalidConfig("need alpha_max >= 1".into()));
        }
        if self.block_size == 0 {
            return Err(Error::InvalidConfig("need block_size >= 1".into()));
        }
        match self.k_max.checked_mul(self.n_max) {
            Some(kn) if kn < (1 << 63) => Ok(()),
            _ => Err(Error::InvalidConfig(format!(
                "k_max * n_max = {} * {} must fit in 63 bits",
                self.k_max, self.n_max
            ))),
        }
    }
}

/// Outcome of a search run. `results` is sorted by (s, k, alpha) and free of
/// duplicates regardless of worker count or block size.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub results: Vec<SpoofNumber>,
    pub n_scanned: u64,
    pub elapsed: Duration,
    pub config: SearchConfig,
}

/// Progress notification emitted when a worker finishes a block.
#[derive(Debug, Clone)]
pub struct BlockProgress {
    pub block: (u64, u64),
    pub blocks_done: usize,
    pub blocks_total: usize,
    pub block_hits: Vec<SpoofNumber>,
    pub hits_so_far: usize,
}

/// Split `[n_min, n_max]` into disjoint covering blocks of at most
/// `block_size` integers each.
pub fn partition_range(n_min: u64, n_max: u64, block_size: u64) -> Vec<(u64, u64)> {
    assert!(n_min >= 1 && n_min <= n_max && block_size >= 1);
    let mut blocks = Vec::new();
    let mut lo = n_min;
    while lo <= n_max {
        let hi = n_max.min(lo + block_size - 1);
        blocks.push((lo, hi));
        lo = hi + 1;
    }
    blocks
}

// Divisibility test by a fixed small g via the odd-inverse trick:
// g = 2^shift * odd, and odd | v iff v * odd^-1 (mod 2^64) <= u64::MAX / odd.
// Replaces the hardware division in the hot loop with a multiply and compare.
#[derive(Clone, Copy)]
struct DivisibilityCheck {
    shift: u32,
    odd_inverse: u64,
    limit: u64,
}

impl DivisibilityCheck {
    fn new(g: u64) -> Self {
        let shift = g.trailing_zeros();
        let odd = g >> shift;
        // Newton iteration doubles the number of correct low bits
        let mut inv: u64 = odd;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(odd.wrapping_mul(inv)));
        }
        DivisibilityCheck {
            shift,
            odd_inverse: inv,
            limit: u64::MAX / odd,
        }
    }

    #[inline(always)]
    fn divides(&self, v: u64) -> bool {
        v & ((1u64 << self.shift) - 1) == 0
            && (v >> self.shift).wrapping_mul(self.odd_inverse) <= self.limit
    }
}

struct Scanner {
    checks: Vec<DivisibilityCheck>, // index g, for g in 0..=k_max
    k_max: u64,
    alpha_max: u32,
}

impl Scanner {
    fn new(k_max: u64, alpha_max: u32) -> Self {
        let checks = (0..=k_max).map(|g| DivisibilityCheck::new(g.max(1))).collect();
        Scanner {
            checks,
            k_max,
            alpha_max,
        }
    }

    /// All spoof hits for one n, every k in [2, k_max], every α ≤ alpha_max.
    fn scan_n(&self, n: u64, sigma_n: u64, out: &mut Vec<SpoofNumber>) {
        let g0 = gcd(sigma_n, n);
        let sigma_red = sigma_n / g0; // σ', coprime to n₀
        let n0 = n / g0;

        let g_hi = self.k_max.min(sigma_red);
        for g in 1..=g_hi {
            if g > 1 && !self.checks[g as usize].divides(sigma_red) {
                continue;
            }
            let num = sigma_red / g;
            if num <= 1 {
                continue;
            }
            // den = S_alpha(num) must be m * n0 with k = g * m <= k_max
            let den_cap = (self.k_max / g) as u128 * n0 as u128;
            let mut sum: u128 = 1 + num as u128;
            let mut power: u128 = num as u128;
            for _alpha in 1..=self.alpha_max {
                if sum > den_cap {
                    break;
                }
                let sum64 = sum as u64;
                if sum64 % n0 == 0 {
                    let k = g * (sum64 / n0);
                    if k >= 2 && gcd(sigma_red, k) == g {
                        // confirmed through the reference criterion
                        out.extend(
                            check_candidate(n, sigma_n, k, self.alpha_max)
                                .expect("scan preconditions hold"),
                        );
                    }
                }
                power *= num as u128;
                sum += power;
            }
        }
    }
}

/// Run the search described by `config`. Internally concurrent over disjoint
/// n-blocks; externally synchronous and deterministic for a fixed config.
pub fn search(config: &SearchConfig) -> Result<SearchReport, Error> {
    search_with_progress(config, |_| {})
}

/// Like [`search`], emitting a [`BlockProgress`] per completed block on a
/// side channel. Progress order may interleave across workers; the final
/// report is sorted and independent of it.
pub fn search_with_progress<F>(config: &SearchConfig, on_progress: F) -> Result<SearchReport, Error>
where
    F: Fn(&BlockProgress) + Sync,
{
    config.validate()?;
    let start = Instant::now();

    let scanner = Scanner::new(config.k_max, config.alpha_max);
    let blocks = partition_range(config.n_min, config.n_max, config.block_size);
    let blocks_total = blocks.len();
    let progress_state = Mutex::new((0usize, 0usize)); // (blocks done, hits so far)

    let per_block: Vec<Vec<SpoofNumber>> = blocks
        .par_iter()
        .map(|&(lo, hi)| -> Result<Vec<SpoofNumber>, Error> {
            let table = sieve_sigma(lo, hi)?;
            let mut hits = Vec::new();
            for n in lo.max(2)..=hi {
                scanner.scan_n(n, table.sigma(n), &mut hits);
            }
            hits.retain(|h| {
                (!config.odd_only || h.s_odd)
                    && (!config.require_x_prime || h.x_is_prime)
                    && (!config.require_x_coprime || h.x_coprime_n)
            });
            for h in &hits {
                // every emitted result re-verifies on the independent path
                if !matches!(verify_spoof(h), Ok(true)) {
                    return Err(Error::InvalidArgument(
                        "internal: search hit failed independent verification",
                    ));
                }
            }
            {
                let mut state = progress_state.lock().unwrap();
                state.0 += 1;
                state.1 += hits.len();
                on_progress(&BlockProgress {
                    block: (lo, hi),
                    blocks_done: state.0,
                    blocks_total,
                    block_hits: hits.clone(),
                    hits_so_far: state.1,
                });
            }
            Ok(hits)
        })
        .collect::<Result<_, _>>()?;

    let mut results: Vec<SpoofNumber> = per_block.into_iter().flatten().collect();
    results.sort_by_key(|h| (h.s, h.k, h.alpha));
    results.dedup();

    Ok(SearchReport {
        results,
        n_scanned: config.n_max - config.n_min + 1,
        elapsed: start.elapsed(),
        config: config.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::sigma_from_factorization;

    fn fast_config(n_max: u64) -> SearchConfig {
        SearchConfig {
            n_max,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_range(2, 10, 4), vec![(2, 5), (6, 9), (10, 10)]);
        assert_eq!(partition_range(2, 2, 100), vec![(2, 2)]);
        let blocks = partition_range(1, 1_000_000, 1 << 16);
        assert_eq!(blocks.len(), 16);
        assert_eq!(blocks.first().unwrap().0, 1);
        assert_eq!(blocks.last().unwrap().1, 1_000_000);
        for w in blocks.windows(2) {
            assert_eq!(w[0].1 + 1, w[1].0);
        }
    }

    #[test]
    fn rejects_invalid_configs() {
        let mut c = fast_config(0);
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        c = fast_config(100);
        c.k_max = 1;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        c = fast_config(SIEVE_GUARD + 1);
        assert!(matches!(c.validate(), Err(Error::RangeTooLarge { .. })));
    }

    #[test]
    fn empty_below_five() {
        assert!(search(&fast_config(4)).unwrap().results.is_empty());
    }

    #[test]
    fn matches_plain_double_loop() {
        // reference: check_candidate on every (n, k) with sigma from direct
        // factorization, no sieve, no divisor inversion
        let cfg = SearchConfig {
            n_max: 10_000,
            k_max: 300,
            alpha_max: 8,
            odd_only: false,
            require_x_prime: false,
            require_x_coprime: false,
            block_size: 1 << 12,
            ..SearchConfig::default()
        };
        let mut expected = Vec::new();
        for n in 2..=cfg.n_max {
            let sigma_n = sigma_from_factorization(n).unwrap();
            for k in 2..=cfg.k_max {
                expected.extend(check_candidate(n, sigma_n, k, cfg.alpha_max).unwrap());
            }
        }
        expected.sort_by_key(|h| (h.s, h.k, h.alpha));
        assert!(!expected.is_empty());
        assert_eq!(search(&cfg).unwrap().results, expected);
    }

    #[test]
    fn deterministic_across_block_sizes_and_threads() {
        let base = search(&fast_config(20_000)).unwrap();
        for block_size in [7u64, 1 << 10, 1 << 20] {
            let cfg = SearchConfig {
                block_size,
                ..fast_config(20_000)
            };
            assert_eq!(search(&cfg).unwrap().results, base.results);
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(7).build().unwrap();
        let threaded = pool.install(|| search(&fast_config(20_000)).unwrap());
        assert_eq!(threaded.results, base.results);
    }

    #[test]
    fn filters_only_remove_results() {
        let all = search(&SearchConfig {
            odd_only: false,
            require_x_prime: false,
            require_x_coprime: false,
            ..fast_config(5_000)
        })
        .unwrap();
        let filtered = search(&fast_config(5_000)).unwrap();
        assert!(filtered.results.len() < all.results.len());
        for h in &filtered.results {
            assert!(all.results.contains(h));
            assert!(h.s_odd && h.x_is_prime && h.x_coprime_n);
        }
    }

    #[test]
    fn progress_covers_every_block() {
        let cfg = SearchConfig {
            block_size: 1000,
            ..fast_config(10_000)
        };
        let seen = Mutex::new(Vec::new());
        search_with_progress(&cfg, |p| seen.lock().unwrap().push(p.block)).unwrap();
        let mut seen = seen.into_inner().unwrap();
        seen.sort_unstable();
        assert_eq!(seen, partition_range(2, 10_000, 1000));
    }
}
