//! Mutual information of the three data streams and the outage predicates
//! built on them.
//!
//! Power is constant across the mini-slots a service occupies, so every
//! per-resource sum is multiplied by the service's mini-slot count.

use crate::domain::{PowerAllocation, ResourceGrid, ServiceRequirements};
use crate::error::{Error, Result};

/// Rate targets once the payload is spread over a service's resources.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTargets {
    /// r_e / (M_e F_e)
    pub r_bar_e: f64,
    /// r_u / (M_u F_u)
    pub r_bar_u: f64,
    pub r_e: f64,
    pub r_u: f64,
}

impl RateTargets {
    pub fn new(grid: &ResourceGrid, req: &ServiceRequirements) -> Self {
        let e_res = (grid.embb_minislots * grid.f_e()) as f64;
        let u_res = (grid.urllc_minislots * grid.f_u()) as f64;
        RateTargets {
            r_bar_e: req.r_e / e_res,
            r_bar_u: req.r_u / u_res,
            r_e: req.r_e,
            r_u: req.r_u,
        }
    }
}

fn check_len(what: &'static str, v: &[f64], frs: usize) -> Result<()> {
    if v.len() != frs {
        return Err(Error::LengthMismatch {
            what,
            expected: frs,
            got: v.len(),
        });
    }
    Ok(())
}

fn check_alloc(alloc: &PowerAllocation, grid: &ResourceGrid) -> Result<()> {
    check_len("P_e", &alloc.p_e, grid.frs)?;
    check_len("P_u", &alloc.p_u, grid.frs)
}

#[inline]
fn sinr_bits(gain: f64, signal: f64, interference: f64) -> f64 {
    (gain * signal / (1.0 + gain * interference)).ln_1p() / std::f64::consts::LN_2
}

/// Mutual information of the URLLC stream at the URLLC receiver for one
/// realization of its per-resource gains.
pub fn info_urllc(gamma_u: &[f64], alloc: &PowerAllocation, grid: &ResourceGrid) -> Result<f64> {
    check_len("gamma_u", gamma_u, grid.frs)?;
    check_alloc(alloc, grid)?;
    let per_slot: f64 = grid
        .urllc_frs
        .iter()
        .map(|&f| sinr_bits(gamma_u[f], alloc.p_u[f], alloc.p_e[f]))
        .sum();
    Ok(grid.urllc_minislots as f64 * per_slot)
}

/// Mutual information of the URLLC stream at the eMBB receiver (the SIC stage).
pub fn info_sic(gamma_e: &[f64], alloc: &PowerAllocation, grid: &ResourceGrid) -> Result<f64> {
    check_len("gamma_e", gamma_e, grid.frs)?;
    check_alloc(alloc, grid)?;
    let per_slot: f64 = grid
        .urllc_frs
        .iter()
        .map(|&f| sinr_bits(gamma_e[f], alloc.p_u[f], alloc.p_e[f]))
        .sum();
    Ok(grid.urllc_minislots as f64 * per_slot)
}

/// Mutual information of the eMBB stream after the URLLC stream is cancelled.
pub fn info_embb(gamma_e: &[f64], alloc: &PowerAllocation, grid: &ResourceGrid) -> Result<f64> {
    check_len("gamma_e", gamma_e, grid.frs)?;
    check_alloc(alloc, grid)?;
    let per_slot: f64 = grid
        .embb_frs
        .iter()
        .map(|&f| sinr_bits(gamma_e[f], alloc.p_e[f], 0.0))
        .sum();
    Ok(grid.embb_minislots as f64 * per_slot)
}

/// 1 if the eMBB stream fails (I_e < r_e), else 0. Ties are successes.
pub fn embb_outage(
    gamma_e: &[f64],
    alloc: &PowerAllocation,
    grid: &ResourceGrid,
    targets: &RateTargets,
) -> Result<u8> {
    Ok(u8::from(info_embb(gamma_e, alloc, grid)? < targets.r_e))
}

/// 1 if the eMBB receiver cannot decode (and cancel) the URLLC stream.
pub fn sic_outage(
    gamma_e: &[f64],
    alloc: &PowerAllocation,
    grid: &ResourceGrid,
    targets: &RateTargets,
) -> Result<u8> {
    Ok(u8::from(info_sic(gamma_e, alloc, grid)? < targets.r_u))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyBound {
    /// Union bound on the latency-violation probability.
    pub bound: f64,
    pub feasible: bool,
}

/// Union bound on the latency outage: eps_u when the URLLC transmission fits
/// in the budget, otherwise flagged infeasible with a bound of 1.
pub fn latency_outage_bound(grid: &ResourceGrid, req: &ServiceRequirements) -> LatencyBound {
    let feasible = grid.urllc_minislots as u64 + req.delta_u as u64 <= req.l_max as u64;
    LatencyBound {
        bound: if feasible { req.eps_u } else { 1.0 },
        feasible,
    }
}
