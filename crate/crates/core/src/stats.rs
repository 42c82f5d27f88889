//! Exact binomial confidence bounds for Monte Carlo outage counts.

use statrs::function::beta::beta_reg;

/// Two-sided confidence level of every interval reported by the crate.
pub const CONFIDENCE: f64 = 0.95;

/// Clopper–Pearson interval `[lower, upper]` for `k` events in `n` trials at
/// the two-sided level [`CONFIDENCE`].
pub fn clopper_pearson(k: u64, n: u64) -> (f64, f64) {
    assert!(n > 0 && k <= n, "invalid binomial count {k}/{n}");
    let tail = (1.0 - CONFIDENCE) / 2.0;
    let nf = n as f64;
    let kf = k as f64;
    let lower = if k == 0 {
        0.0
    } else if k == n {
        tail.powf(1.0 / nf)
    } else {
        // I_x(k, n-k+1) = tail
        invert(|x| beta_reg(kf, nf - kf + 1.0, x), tail)
    };
    let upper = if k == n {
        1.0
    } else if k == 0 {
        1.0 - tail.powf(1.0 / nf)
    } else {
        // I_x(k+1, n-k) = 1 - tail
        invert(|x| beta_reg(kf + 1.0, nf - kf, x), 1.0 - tail)
    };
    (lower, upper)
}

/// Upper Clopper–Pearson bound.
pub fn cp_upper(k: u64, n: u64) -> f64 {
    clopper_pearson(k, n).1
}

/// Solves `cdf(x) = target` for an increasing cdf on (0, 1).
fn invert(cdf: impl Fn(f64) -> f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cdf(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Standard deviation of a binomial proportion.
pub fn binomial_sd(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Where a confidence interval sits relative to a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    Straddles,
    Above,
}

pub fn side_of(k: u64, n: u64, threshold: f64) -> Side {
    let (lo, hi) = clopper_pearson(k, n);
    if hi <= threshold {
        Side::Below
    } else if lo > threshold {
        Side::Above
    } else {
        Side::Straddles
    }
}
