//! The core criterion: given n, σ(n) and k, decide whether s = n·x is a
//! spoof k-perfect number of some order α, and verify claimed tuples through
//! an independent code path.
//!
//! The test reduces q = σ(n)/(k·n) to lowest terms (num, den). Because
//! S_α(x) ≡ 1 (mod x), a hit forces the reduced numerator to equal the spoof
//! factor x, so it suffices to check den = S_α(num) for each α.

use crate::arithmetic::{self, gcd, is_prime, reduce_ratio};
use crate::Error;

/// One discovered (or claimed) spoof tuple: s = n·x with
/// σ(n)·S_α(x) = k·n·x, plus classification flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpoofNumber {
    pub s: u64,
    pub n: u64,
    pub x: u64,
    pub k: u64,
    pub alpha: u32,
    pub x_is_prime: bool,
    pub x_coprime_n: bool,
    pub s_odd: bool,
}

/// Classification flags for a spoof factor: (x prime, x coprime to n, s odd).
pub fn classify(n: u64, x: u64) -> (bool, bool, bool) {
    assert!(n >= 2 && x >= 2);
    (is_prime(x), gcd(n, x) == 1, n % 2 == 1 && x % 2 == 1)
}

/// Test whether (n, k) yields a spoof k-perfect number of some order
/// α ≤ `alpha_max`.
///
/// `sigma_n` must be σ(n) exactly. Reduces q = σ(n)/(k·n) to (num, den) and
/// accepts α iff den = S_α(num) with num > 1; the spoof factor is x = num.
/// S_α is strictly increasing in α, so at most one α can match and the
/// returned list has length 0 or 1.
pub fn check_candidate(
    n: u64,
    sigma_n: u64,
    k: u64,
    alpha_max: u32,
) -> Result<Vec<SpoofNumber>, Error> {
    if sigma_n == 0 {
        return Err(Error::InvalidArgument("check_candidate requires sigma_n > 0"));
    }
    if k < 2 {
        return Err(Error::InvalidArgument("check_candidate requires k >= 2"));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("check_candidate requires n >= 2"));
    }
    let kn = k
        .checked_mul(n)
        .ok_or(Error::Overflow("check_candidate k*n"))?;

    let q = reduce_ratio(sigma_n, kn)?;
    let (num, den) = (q.num, q.den);
    if num <= 1 || den <= num {
        return Ok(Vec::new());
    }

    let mut hits = Vec::new();
    let mut sum: u64 = 1 + num;
    let mut power: u64 = num;
    for alpha in 1..=alpha_max {
        if sum == den {
            let (x_is_prime, x_coprime_n, s_odd) = classify(n, num);
            hits.push(SpoofNumber {
                s: n * num,
                n,
                x: num,
                k,
                alpha,
                x_is_prime,
                x_coprime_n,
                s_odd,
            });
            break;
        }
        if sum > den {
            break;
        }
        // next partial sum; den <= k*n fits u64 and we stop once sum > den,
        // so grow in u128 and clamp the comparison
        let next = power as u128 * num as u128 + sum as u128;
        if next > den as u128 {
            break;
        }
        power *= num;
        sum = next as u64;
    }
    Ok(hits)
}

/// Verify the defining identity σ(n)·S_α(x) = k·n·x on an independent path:
/// σ(n) via direct factorization of n, S_α(x) via direct powering in u128.
///
/// Never calls [`check_candidate`] or the sieve, so it serves as their oracle.
pub fn verify_spoof(candidate: &SpoofNumber) -> Result<bool, Error> {
    if candidate.n < 2 || candidate.x < 2 || candidate.k < 1 || candidate.alpha < 1 {
        return Err(Error::InvalidArgument("verify_spoof requires n, x >= 2, k, alpha >= 1"));
    }
    let sigma_n = arithmetic::sigma_from_factorization(candidate.n)? as u128;

    let mut s_alpha: u128 = 1;
    let mut power: u128 = 1;
    for _ in 0..candidate.alpha {
        power = power
            .checked_mul(candidate.x as u128)
            .ok_or(Error::Overflow("verify_spoof S_alpha"))?;
        s_alpha = s_alpha
            .checked_add(power)
            .ok_or(Error::Overflow("verify_spoof S_alpha"))?;
    }

    let lhs = sigma_n
        .checked_mul(s_alpha)
        .ok_or(Error::Overflow("verify_spoof sigma*S_alpha"))?;
    let rhs = (candidate.k as u128)
        .checked_mul(candidate.n as u128)
        .and_then(|v| v.checked_mul(candidate.x as u128))
        .ok_or(Error::Overflow("verify_spoof k*n*x"))?;
    Ok(lhs == rhs)
}
