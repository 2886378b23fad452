//! Robin-inequality bounds for spoof tuples.
//!
//! For a spoof k-perfect number s = n·x of order α with n > 5040, Robin's
//! inequality σ(n) < e^γ·n·ln ln n (equivalent to the Riemann Hypothesis)
//! combined with the defining identity gives k·x/S_α(x) < e^γ·ln ln n.
//!
//! The Descartes specialization (k = 2, α = 1) reads 2x/(x+1) < e^γ·ln ln n
//! and holds without the n > 5040 restriction. These are conditional bounds;
//! the reports here evaluate them numerically, nothing is proved.

use crate::arithmetic::SIEVE_GUARD;
use crate::spoof::SpoofNumber;

/// Euler–Mascheroni constant, fixed to 16 digits for reproducible reports.
pub const EULER_GAMMA: f64 = 0.5772156649015329;

/// Relative tolerance for the lhs-vs-rhs comparison. Differences below this
/// band are reported as borderline rather than silently classified.
pub const REL_TOLERANCE: f64 = 1e-9;

/// Applicability cutoff of Robin's inequality.
pub const ROBIN_CUTOFF: u64 = 5040;

/// Both sides of the spoof Robin bound for one tuple.
///
/// `lhs_num / lhs_den` is the exact reduced rational k·x / S_α(x); `lhs` is
/// its double rounding. `satisfied` is meaningful only when `applicable`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobinReport {
    pub lhs_num: u128,
    pub lhs_den: u128,
    pub lhs: f64,
    pub rhs: f64,
    pub applicable: bool,
    pub satisfied: bool,
    pub borderline: bool,
    pub gamma_used: f64,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn build_report(k: u64, x: u64, alpha: u32, n: u64, applicable: bool) -> RobinReport {
    // S_alpha(x); bounded by k*n*x for any verified spoof, so u128 suffices
    let mut s_alpha: u128 = 1;
    let mut power: u128 = 1;
    for _ in 0..alpha {
        power = power.saturating_mul(x as u128);
        s_alpha = s_alpha.saturating_add(power);
    }
    let num = k as u128 * x as u128;
    let g = gcd_u128(num, s_alpha);
    let (lhs_num, lhs_den) = (num / g, s_alpha / g);
    let lhs = lhs_num as f64 / lhs_den as f64;

    let rhs = EULER_GAMMA.exp() * (n as f64).ln().ln();
    let scale = lhs.abs().max(rhs.abs());
    let borderline = (lhs - rhs).abs() <= REL_TOLERANCE * scale;
    RobinReport {
        lhs_num,
        lhs_den,
        lhs,
        rhs,
        applicable,
        satisfied: lhs < rhs,
        borderline,
        gamma_used: EULER_GAMMA,
    }
}

/// Evaluate the spoof Robin bound k·x/S_α(x) < e^γ·ln ln n for a verified
/// spoof tuple. Applicable only for n > 5040.
pub fn robin_check(spoof: &SpoofNumber) -> RobinReport {
    build_report(
        spoof.k,
        spoof.x,
        spoof.alpha,
        spoof.n,
        spoof.n > ROBIN_CUTOFF,
    )
}

/// The Descartes specialization 2x/(x+1) < e^γ·ln ln n. Applicable for every
/// n: no Descartes number exists with n below 5040, so the cutoff is dropped.
pub fn descartes_check(n: u64, x: u64) -> RobinReport {
    assert!(n >= 2 && x >= 2);
    build_report(2, x, 1, n, true)
}

/// Double-log scale of the heuristic appearance threshold for k-perfect
/// numbers: a k-perfect n is expected only once ln ln n > k·e^{−γ}. Returned
/// on that scale because the raw threshold e^{e^{k·e^{−γ}}} overflows doubles
/// already for modest k.
pub fn expected_threshold(k: u64) -> f64 {
    assert!(k >= 2);
    k as f64 * (-EULER_GAMMA).exp()
}

/// Whether e^{e^{value}} is still representable and below the sieve guard,
/// i.e. whether the threshold is worth displaying as a plain integer.
pub fn threshold_displayable(log_log_threshold: f64) -> Option<f64> {
    let t = log_log_threshold.exp().exp();
    (t.is_finite() && t < SIEVE_GUARD as f64).then_some(t)
}
