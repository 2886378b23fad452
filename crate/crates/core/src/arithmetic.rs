//! Exact integer primitives: divisor-sum sieve, gcd and fraction reduction,
//! overflow-guarded geometric sums, deterministic primality, factorization.
//!
//! Everything here is exact integer arithmetic. Products and partial sums go
//! through u128 intermediates and are compared against explicit caps; a
//! would-be wraparound is a defect, never a saturation.

use crate::Error;

/// Hard cap on sieve ranges. σ(n) < 6n for n in range, so values fit u64.
pub const SIEVE_GUARD: u64 = 1 << 40;

/// Read-only table of σ(n) values for a contiguous range `[lo, hi]`.
///
/// Built by a segmented divisor-pair sieve; immutable after construction and
/// safe to share across workers.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    lo: u64,
    values: Vec<u64>,
}

impl SigmaTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64 - 1
    }

    /// σ(n) for n within the covered range.
    ///
    /// Panics if `n` is outside `[lo, hi]`.
    pub fn sigma(&self, n: u64) -> u64 {
        assert!(
            n >= self.lo && n <= self.hi(),
            "n={} outside sieved range [{}, {}]",
            n,
            self.lo,
            self.hi()
        );
        self.values[(n - self.lo) as usize]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Sieve σ(n) for every n in `[lo, hi]`.
///
/// For each d ≤ √hi, visits the multiples m = d·q of d in the segment with
/// q ≥ d and credits both divisors of the pair (d, q). Cost is
/// O(len · log hi + √hi), so small segments stay cheap even for large hi.
pub fn sieve_sigma(lo: u64, hi: u64) -> Result<SigmaTable, Error> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    if hi > SIEVE_GUARD {
        return Err(Error::RangeTooLarge {
            hi,
            guard: SIEVE_GUARD,
        });
    }

    let len = (hi - lo + 1) as usize;
    let mut values = vec![0u64; len];

    let root = hi.isqrt();
    for d in 1..=root {
        // first multiple d·q in the segment with q >= d
        let mut m = lo.div_ceil(d) * d;
        if m < d * d {
            m = d * d;
        }
        while m <= hi {
            let q = m / d;
            let i = (m - lo) as usize;
            values[i] += d;
            if q != d {
                values[i] += q;
            }
            m += d;
        }
    }

    Ok(SigmaTable { lo, values })
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A positive fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedRatio {
    pub num: u64,
    pub den: u64,
}

/// Reduce `numerator / denominator` to lowest terms.
pub fn reduce_ratio(numerator: u64, denominator: u64) -> Result<ReducedRatio, Error> {
    if numerator == 0 || denominator == 0 {
        return Err(Error::InvalidArgument("reduce_ratio requires nonzero arguments"));
    }
    let g = gcd(numerator, denominator);
    Ok(ReducedRatio {
        num: numerator / g,
        den: denominator / g,
    })
}

/// S_α(x) = 1 + x + x² + … + x^α by iterated addition in u128 intermediates.
///
/// Returns `None` as soon as a partial sum exceeds `cap`; callers only ever
/// compare the sum against a bounded denominator, so larger values are never
/// needed and arbitrary precision is avoided entirely.
pub fn geometric_sum(x: u64, alpha: u32, cap: u64) -> Option<u64> {
    assert!(x >= 2, "geometric_sum requires x >= 2");
    assert!(alpha >= 1, "geometric_sum requires alpha >= 1");
    let mut sum: u128 = 1;
    let mut power: u128 = 1;
    for _ in 0..alpha {
        power *= x as u128;
        sum += power;
        if sum > cap as u128 {
            return None;
        }
    }
    Some(sum as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Sinclair's 7-witness set: deterministic for all n < 2^64.
const MILLER_RABIN_WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Deterministic primality test for the full 64-bit range.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if m == p {
            return true;
        }
        if m % p == 0 {
            return false;
        }
    }
    let d = m - 1;
    let r = d.trailing_zeros();
    let d = d >> r;
    'witness: for a in MILLER_RABIN_WITNESSES {
        let a = a % m;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_DIVISION_BOUND: u64 = 1 << 20;

// Brent's cycle-finding variant of Pollard rho. Only ever called on odd
// composites with no factor below TRIAL_DIVISION_BOUND.
fn pollard_rho(n: u64) -> u64 {
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

/// Prime factorization, primes strictly increasing.
///
/// Trial division up to 2^20, Pollard rho for any remaining cofactor.
/// Display-only path; exactness matters, speed does not.
pub fn factorize(m: u64) -> Vec<(u64, u32)> {
    assert!(m >= 1, "factorize requires m >= 1");
    let mut m = m;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, factors: &mut Vec<(u64, u32)>| match factors.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => factors.push((p, 1)),
    };

    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && d * d <= m {
        while m % d == 0 {
            push(d, &mut factors);
            m /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        if m <= TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND {
            // no factor below the trial bound, so the cofactor is prime
            push(m, &mut factors);
        } else {
            let mut large = Vec::new();
            factor_large(m, &mut large);
            large.sort_unstable();
            for p in large {
                push(p, &mut factors);
            }
        }
    }
    factors
}

/// σ(m) from the prime factorization, independent of the sieve.
pub fn sigma_from_factorization(m: u64) -> Result<u64, Error> {
    if m == 1 {
        return Ok(1);
    }
    let mut sigma: u128 = 1;
    for (p, e) in factorize(m) {
        let mut term: u128 = 1;
        let mut power: u128 = 1;
        for _ in 0..e {
            power = power
                .checked_mul(p as u128)
                .ok_or(Error::Overflow("sigma_from_factorization"))?;
            term += power;
        }
        sigma = sigma
            .checked_mul(term)
            .ok_or(Error::Overflow("sigma_from_factorization"))?;
    }
    u64::try_from(sigma).map_err(|_| Error::Overflow("sigma_from_factorization"))
}
