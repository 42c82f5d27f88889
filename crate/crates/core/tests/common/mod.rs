//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! the solver or estimator it is used to check.
#![allow(dead_code)]

use std::path::PathBuf;

use noma_slicing::outage::{build_table, GridSpec, OutageTable, TableMeta};

/// Minimum total power by exhaustive search over active sets. With a fixed
/// active set S the rate constraint pins a common level
/// `mu = (2^(K r) / prod g)^(1/|S|)`; every S whose level keeps all its powers
/// nonnegative is a feasible allocation, and the optimum is one of them.
pub fn brute_force_min_power(gains: &[f64], r_bar: f64) -> f64 {
    let k = gains.len();
    assert!(k <= 16, "brute force only for small K");
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << k) {
        let set: Vec<f64> = (0..k).filter(|j| mask >> j & 1 == 1).map(|j| gains[j]).collect();
        let n = set.len() as f64;
        let log_mu = (k as f64 * r_bar * std::f64::consts::LN_2 - set.iter().map(|g| g.ln()).sum::<f64>()) / n;
        let mu = log_mu.exp();
        if set.iter().all(|g| mu * g >= 1.0) {
            best = best.min(set.iter().map(|g| mu - 1.0 / g).sum());
        }
    }
    best
}

/// Single-resource outage `P(s X / (1 + i X) <= c)`, `X ~ Exp(1)`.
fn single_cdf(s: f64, i: f64, c: f64) -> f64 {
    if c <= 0.0 {
        0.0
    } else if s <= c * i {
        1.0
    } else {
        1.0 - (-c / (s - c * i)).exp()
    }
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Two-resource outage by conditioning on the first fade and integrating
/// over `u = 1 - exp(-x)` so the range is finite.
pub fn outage_two_fr(s: f64, i: f64, r_bar: f64) -> f64 {
    let t = (2.0 * r_bar).exp2();
    let g = |u: f64| {
        if u >= 1.0 {
            return if s <= (t - 1.0) * i { 1.0 } else { 0.0 };
        }
        let x = -(-u).ln_1p();
        let a1 = s * x / (1.0 + i * x);
        single_cdf(s, i, t / (1.0 + a1) - 1.0)
    };
    // split at the point where the first resource alone decodes
    let split = if s > (t - 1.0) * i {
        let x = (t - 1.0) / (s - (t - 1.0) * i);
        -(-x).exp_m1()
    } else {
        1.0
    };
    integrate(&g, 0.0, split, 1e-10) + if split < 1.0 { integrate(&g, split, 1.0, 1e-10) } else { 0.0 }
}

pub fn coarse_grid() -> GridSpec {
    GridSpec {
        s_min_db: -10.0,
        s_max_db: 60.0,
        s_step_db: 1.0,
        i_min_db: -10.0,
        i_max_db: 50.0,
        i_step_db: 2.0,
        zero_row: true,
    }
}

pub fn coarse_table(f_u: usize, r_bar: f64, eps: f64, seed: u64) -> OutageTable {
    let mut m = TableMeta::new(f_u, r_bar, eps, coarse_grid(), seed);
    m.stages = vec![5_000, 50_000];
    m.chunk = 8192;
    build_table(m).unwrap().0
}

/// Cache directory for full-size tables shared across test targets.
pub fn cache_dir(name: &str) -> PathBuf {
    if let Some(d) = std::env::var_os("NOMA_SLICING_TABLE_DIR") {
        return PathBuf::from(d).join(name);
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../target").join(name)
}
