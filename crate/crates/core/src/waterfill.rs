//! Minimum-power water-filling under an average-rate constraint.
//!
//! Solves `min Σ p_k` subject to `(1/K) Σ log2(1 + g_k p_k) >= r_bar`,
//! `p >= 0`. The optimum is `p_k = max(0, mu - 1/g_k)`; the water level `mu`
//! is bracketed by bisection (the achieved rate is continuous and strictly
//! increasing in `mu` once any channel is active) and then snapped to the
//! closed form for the identified active set.

use crate::capacity::RateTargets;
use crate::domain::{AccessMode, ChannelState, ResourceGrid};
use crate::error::{Error, Result};

/// Default relative tolerance of the solver.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct WaterfillProblem {
    pub gains: Vec<f64>,
    /// Target average rate per resource [bit/s/Hz].
    pub r_bar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaterfillSolution {
    pub powers: Vec<f64>,
    pub water_level: f64,
    pub active_set: Vec<usize>,
}

impl WaterfillSolution {
    pub fn total_power(&self) -> f64 {
        self.powers.iter().sum()
    }
}

/// Average rate `(1/K) Σ log2(1 + g_k p_k)` achieved by a power vector.
pub fn average_rate(gains: &[f64], powers: &[f64]) -> f64 {
    let k = gains.len() as f64;
    gains
        .iter()
        .zip(powers)
        .map(|(g, p)| (g * p).ln_1p())
        .sum::<f64>()
        / std::f64::consts::LN_2
        / k
}

/// Total bits `Σ log2(mu g_k)` over channels active at water level `mu`.
fn bits_at(inv: &[(usize, f64)], mu: f64) -> f64 {
    inv.iter()
        .filter(|(_, iv)| mu > *iv)
        .map(|(_, iv)| (mu / iv).log2())
        .sum()
}

/// Bits actually delivered by `p_k = mu - 1/g_k`, evaluated as rates are.
fn achieved_bits(inv: &[(usize, f64)], cut: f64, mu: f64) -> f64 {
    inv.iter()
        .filter(|(_, iv)| cut > *iv)
        .map(|(_, iv)| ((mu - iv) / iv).ln_1p())
        .sum::<f64>()
        / std::f64::consts::LN_2
}

pub fn solve_waterfill(p: &WaterfillProblem, tol: f64) -> Result<WaterfillSolution> {
    if p.gains.is_empty() {
        return Err(Error::Domain("water-filling needs at least one resource".into()));
    }
    if !(p.r_bar > 0.0) || !p.r_bar.is_finite() {
        return Err(Error::Domain(format!("rate target {} must be finite and > 0", p.r_bar)));
    }
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::Domain(format!("tolerance {tol} not in (0, 1e-6]")));
    }
    if let Some(g) = p.gains.iter().find(|g| !(**g >= 0.0) || !g.is_finite()) {
        return Err(Error::Domain(format!("gain {g} must be finite and >= 0")));
    }
    // zero-gain channels can never carry rate
    let inv: Vec<(usize, f64)> = p
        .gains
        .iter()
        .enumerate()
        .filter(|(_, g)| **g > 0.0)
        .map(|(k, g)| (k, 1.0 / g))
        .collect();
    if inv.is_empty() {
        return Err(Error::Infeasible("all channel gains are zero".into()));
    }

    let k = p.gains.len();
    let target_bits = k as f64 * p.r_bar;
    let min_inv = inv.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let max_inv = inv.iter().map(|x| x.1).fold(0.0, f64::max);
    // at this level every usable channel carries at least target_bits / n bits
    let mut lo = min_inv;
    let mut hi = max_inv * (target_bits / inv.len() as f64).exp2();
    if !hi.is_finite() {
        return Err(Error::Infeasible(format!(
            "rate target {} is out of numeric range",
            p.r_bar
        )));
    }

    let mut iterations = 0;
    while hi - lo > tol * hi && iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if bits_at(&inv, mid) < target_bits {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    if hi - lo > tol * hi {
        return Err(Error::NoConvergence { iterations, lo, hi });
    }

    // Snap to the closed form: with channels sorted by 1/g, the active set is
    // the longest prefix whose closed-form level exceeds its last member.
    let mut sorted: Vec<f64> = inv.iter().map(|x| x.1).collect();
    sorted.sort_by(f64::total_cmp);
    let mut log_sum = 0.0;
    let mut closed = hi;
    for (n, iv) in sorted.iter().enumerate() {
        log_sum += iv.log2();
        let level = ((target_bits + log_sum) / (n + 1) as f64).exp2();
        if level > *iv && sorted.get(n + 1).is_none_or(|next| level <= *next) {
            closed = level;
            break;
        }
    }
    let mut mu = if (closed - hi).abs() <= 4.0 * tol * hi { closed } else { hi };
    // the active set is fixed here; the nudge below only moves the level
    let cut = mu;
    // the rate constraint must hold as evaluated downstream, never fall
    // short by rounding; aim a hair above the target
    let want = target_bits * (1.0 + 8.0 * f64::EPSILON);
    let mut nudges = 0;
    while achieved_bits(&inv, cut, mu) < want && nudges < 256 {
        mu = f64::from_bits(mu.to_bits() + 1 + nudges / 16);
        nudges += 1;
    }

    let mut powers = vec![0.0; k];
    let mut active_set = Vec::new();
    for &(idx, iv) in &inv {
        if cut > iv {
            powers[idx] = mu - iv;
            active_set.push(idx);
        }
    }
    Ok(WaterfillSolution {
        powers,
        water_level: mu,
        active_set,
    })
}

/// Per-resource gains that turn the SIC problem into plain water-filling:
/// `g(f) = gamma_e(f) / (1 + gamma_e(f) P_e(f))`.
pub fn effective_sic_gains(gamma_e: &[f64], p_e: &[f64]) -> Result<Vec<f64>> {
    if gamma_e.len() != p_e.len() {
        return Err(Error::LengthMismatch {
            what: "P_e",
            expected: gamma_e.len(),
            got: p_e.len(),
        });
    }
    gamma_e
        .iter()
        .zip(p_e)
        .map(|(&g, &pe)| {
            if !(g >= 0.0) || !(pe >= 0.0) {
                Err(Error::Domain(format!("gain {g} and power {pe} must be >= 0")))
            } else {
                Ok(g / (1.0 + g * pe))
            }
        })
        .collect()
}

/// Water-filling result scattered back onto the full grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPowers {
    /// One entry per frequency resource, zero outside the service's set.
    pub powers: Vec<f64>,
    /// `None` when the subproblem was skipped (SIC under OMA).
    pub water_level: Option<f64>,
}

fn solve_on_set(grid: &ResourceGrid, set: &[usize], gains: Vec<f64>, r_bar: f64) -> Result<GridPowers> {
    let sol = solve_waterfill(&WaterfillProblem { gains, r_bar }, DEFAULT_TOL)?;
    let mut powers = vec![0.0; grid.frs];
    for (&f, &p) in set.iter().zip(&sol.powers) {
        powers[f] = p;
    }
    Ok(GridPowers {
        powers,
        water_level: Some(sol.water_level),
    })
}

/// Minimum eMBB power meeting its rate with certainty.
pub fn solve_embb(channel: &ChannelState, grid: &ResourceGrid, targets: &RateTargets) -> Result<GridPowers> {
    let gamma = channel.gamma_e();
    if gamma.len() != grid.frs {
        return Err(Error::LengthMismatch {
            what: "gamma_e",
            expected: grid.frs,
            got: gamma.len(),
        });
    }
    if grid.embb_frs.is_empty() {
        return Err(Error::Domain("eMBB has no frequency resources".into()));
    }
    let gains = grid.embb_frs.iter().map(|&f| gamma[f]).collect();
    solve_on_set(grid, &grid.embb_frs, gains, targets.r_bar_e)
        .map_err(|e| match e {
            Error::Infeasible(_) => Error::Infeasible("eMBB gains are zero on every eMBB resource".into()),
            other => other,
        })
}

/// Minimum URLLC power that lets the eMBB receiver decode and cancel the
/// URLLC stream, given the eMBB powers. Identically zero under OMA.
pub fn solve_sic(
    channel: &ChannelState,
    grid: &ResourceGrid,
    targets: &RateTargets,
    p_e: &[f64],
) -> Result<GridPowers> {
    if grid.mode == AccessMode::Oma {
        return Ok(GridPowers {
            powers: vec![0.0; grid.frs],
            water_level: None,
        });
    }
    let all = effective_sic_gains(channel.gamma_e(), p_e)?;
    if all.len() != grid.frs {
        return Err(Error::LengthMismatch {
            what: "gamma_e",
            expected: grid.frs,
            got: all.len(),
        });
    }
    let gains = grid.urllc_frs.iter().map(|&f| all[f]).collect();
    solve_on_set(grid, &grid.urllc_frs, gains, targets.r_bar_u)
}
