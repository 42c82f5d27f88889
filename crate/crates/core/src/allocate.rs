//! End-to-end power allocation.
//!
//! All schemes first give the eMBB user its minimum water-filling power and
//! compute the SIC floor `P_u^SIC`. The URLLC power then comes from the
//! outage table:
//!
//! * **N-fea** looks up one power at the strongest eMBB interference and uses
//!   it on every resource. Since the real interference is never stronger,
//!   the tabulated outage bounds the real one.
//! * **N-heu** looks up each resource at its own interference. Cheaper, with
//!   no guarantee.
//! * **OMA** reserves part of the band for URLLC, which then sees no
//!   interference and needs no SIC floor.
//!
//! In NOMA the final power is `max(lookup, P_u^SIC)` per resource.

use std::fmt;

use rand::seq::SliceRandom;

use crate::capacity::RateTargets;
use crate::domain::{validate, AccessMode, ChannelState, PowerAllocation, ResourceGrid, ServiceRequirements};
use crate::error::{Error, Result};
use crate::outage::{self, min_power_lookup, Lookup, McEstimate, OutageTable};
use crate::rng;
use crate::waterfill::{solve_embb, solve_sic};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    NomaFeasible,
    NomaHeuristic,
    /// OMA with the given fraction of resources reserved for URLLC.
    Oma { urllc_share: f64 },
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::NomaFeasible => f.write_str("N-fea"),
            Scheme::NomaHeuristic => f.write_str("N-heu"),
            Scheme::Oma { urllc_share } => write!(f, "OMA-{}", (urllc_share * 100.0).round()),
        }
    }
}

/// How OMA picks the URLLC resources.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmaPartition {
    /// URLLC takes the resources with the weakest eMBB gains.
    WorstForEmbb,
    /// URLLC takes a uniformly random subset drawn from the given seed.
    Random(u64),
    /// URLLC takes the lowest-indexed resources.
    FirstK,
}

impl OmaPartition {
    pub fn parse(name: &str, seed: u64) -> Result<Self> {
        match name {
            "worst-for-embb" => Ok(OmaPartition::WorstForEmbb),
            "random" => Ok(OmaPartition::Random(seed)),
            "first-k" => Ok(OmaPartition::FirstK),
            other => Err(Error::Config(format!(
                "unknown OMA partition {other:?} (expected worst-for-embb, random or first-k)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OmaPartition::WorstForEmbb => "worst-for-embb",
            OmaPartition::Random(_) => "random",
            OmaPartition::FirstK => "first-k",
        }
    }
}

/// Intermediate quantities kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub embb_water_level: f64,
    pub sic_water_level: Option<f64>,
    /// Resource with the strongest eMBB interference (N-fea only).
    pub worst_fr: Option<usize>,
    /// Table cells consulted, with the resource they were consulted for.
    pub lookups: Vec<(Option<usize>, Lookup)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AllocationResult {
    pub scheme: Scheme,
    /// The grid actually used (for OMA, the chosen partition).
    pub grid: ResourceGrid,
    pub alloc: PowerAllocation,
    pub p_tot: f64,
    pub p_e_tot: f64,
    pub p_u_tot: f64,
    pub p_u_sic: Vec<f64>,
    /// Table power per resource before the SIC floor is applied.
    pub p_u_table: Vec<f64>,
    pub diagnostics: Diagnostics,
}

impl AllocationResult {
    /// Sum of the SIC floor over the grid.
    pub fn p_u_sic_tot(&self) -> f64 {
        self.grid.urllc_minislots as f64 * self.p_u_sic.iter().sum::<f64>()
    }

    pub fn p_u_table_tot(&self) -> f64 {
        self.grid.urllc_minislots as f64 * self.p_u_table.iter().sum::<f64>()
    }
}

fn check_grid(grid: &ResourceGrid, req: &ServiceRequirements, mode: AccessMode) -> Result<()> {
    if grid.mode != mode {
        return Err(Error::Config(format!("scheme needs a {mode} grid, got {}", grid.mode)));
    }
    let v = validate(grid, req);
    if !v.is_empty() {
        let msg = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ");
        return Err(Error::Config(msg));
    }
    Ok(())
}

struct EmbbSide {
    targets: RateTargets,
    p_e: Vec<f64>,
    p_sic: Vec<f64>,
    embb_level: f64,
    sic_level: Option<f64>,
}

fn embb_side(channel: &ChannelState, grid: &ResourceGrid, req: &ServiceRequirements, table: &OutageTable) -> Result<EmbbSide> {
    let targets = RateTargets::new(grid, req);
    table.check_matches(grid.f_u(), targets.r_bar_u)?;
    let pe = solve_embb(channel, grid, &targets)?;
    let sic = solve_sic(channel, grid, &targets, &pe.powers)?;
    Ok(EmbbSide {
        targets,
        p_e: pe.powers,
        p_sic: sic.powers,
        embb_level: pe.water_level.unwrap_or(0.0),
        sic_level: sic.water_level,
    })
}

fn lookup_at(table: &OutageTable, p_e: f64, rho_u: f64, eps_u: f64, fr: usize) -> Result<Lookup> {
    min_power_lookup(table, p_e, rho_u, eps_u).map_err(|e| match e {
        Error::InfeasibleRow { eps, row_db, .. } => Error::InfeasibleRow {
            eps,
            row_db,
            fr: Some(fr),
        },
        other => other,
    })
}

fn finish(
    scheme: Scheme,
    grid: ResourceGrid,
    side: EmbbSide,
    table_powers: Vec<f64>,
    worst_fr: Option<usize>,
    lookups: Vec<(Option<usize>, Lookup)>,
) -> AllocationResult {
    let mut p_u = vec![0.0; grid.frs];
    for &f in &grid.urllc_frs {
        p_u[f] = table_powers[f].max(side.p_sic[f]);
    }
    let p_e_tot = grid.embb_minislots as f64 * side.p_e.iter().sum::<f64>();
    let p_u_tot = grid.urllc_minislots as f64 * p_u.iter().sum::<f64>();
    let _ = side.targets;
    AllocationResult {
        scheme,
        grid,
        alloc: PowerAllocation { p_e: side.p_e, p_u },
        p_tot: p_e_tot + p_u_tot,
        p_e_tot,
        p_u_tot,
        p_u_sic: side.p_sic,
        p_u_table: table_powers,
        diagnostics: Diagnostics {
            embb_water_level: side.embb_level,
            sic_water_level: side.sic_level,
            worst_fr,
            lookups,
        },
    }
}

/// Feasible NOMA allocation: one table power sized for the worst interference.
pub fn allocate_nfea(
    channel: &ChannelState,
    grid: &ResourceGrid,
    req: &ServiceRequirements,
    table: &OutageTable,
) -> Result<AllocationResult> {
    check_grid(grid, req, AccessMode::Noma)?;
    let side = embb_side(channel, grid, req, table)?;
    // lowest index wins ties
    let mut worst = grid.urllc_frs[0];
    for &f in &grid.urllc_frs {
        if side.p_e[f] > side.p_e[worst] || (side.p_e[f] == side.p_e[worst] && f < worst) {
            worst = f;
        }
    }
    let l = lookup_at(table, side.p_e[worst], channel.rho_u(), req.eps_u, worst)?;
    let mut table_powers = vec![0.0; grid.frs];
    for &f in &grid.urllc_frs {
        table_powers[f] = l.p_u;
    }
    Ok(finish(
        Scheme::NomaFeasible,
        grid.clone(),
        side,
        table_powers,
        Some(worst),
        vec![(Some(worst), l)],
    ))
}

/// Heuristic NOMA allocation: each resource sized for its own interference.
pub fn allocate_nheu(
    channel: &ChannelState,
    grid: &ResourceGrid,
    req: &ServiceRequirements,
    table: &OutageTable,
) -> Result<AllocationResult> {
    check_grid(grid, req, AccessMode::Noma)?;
    let side = embb_side(channel, grid, req, table)?;
    let mut table_powers = vec![0.0; grid.frs];
    let mut lookups = Vec::with_capacity(grid.f_u());
    for &f in &grid.urllc_frs {
        let l = lookup_at(table, side.p_e[f], channel.rho_u(), req.eps_u, f)?;
        table_powers[f] = l.p_u;
        lookups.push((Some(f), l));
    }
    Ok(finish(Scheme::NomaHeuristic, grid.clone(), side, table_powers, None, lookups))
}

/// Splits `frs` resources into an OMA grid with `share` of them for URLLC.
pub fn oma_partition(
    channel: &ChannelState,
    frs: usize,
    minislots: usize,
    share: f64,
    policy: OmaPartition,
) -> Result<ResourceGrid> {
    let k = share * frs as f64;
    if !(share > 0.0 && share < 1.0) || (k - k.round()).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "URLLC share {share} of {frs} resources must give a whole number strictly between 0 and {frs}"
        )));
    }
    let f_u = k.round() as usize;
    if f_u == 0 || f_u >= frs {
        return Err(Error::Config(format!("URLLC share {share} leaves a service without resources")));
    }
    let mut order: Vec<usize> = (0..frs).collect();
    match policy {
        OmaPartition::FirstK => {}
        OmaPartition::WorstForEmbb => {
            let g = channel.gamma_e();
            order.sort_by(|&a, &b| g[a].total_cmp(&g[b]).then(a.cmp(&b)));
        }
        OmaPartition::Random(seed) => {
            let mut r = rng::substream(rng::derive(seed, &[rng::label("oma-partition")]), 0);
            order.shuffle(&mut r);
        }
    }
    let mut urllc: Vec<usize> = order[..f_u].to_vec();
    let mut embb: Vec<usize> = order[f_u..].to_vec();
    urllc.sort_unstable();
    embb.sort_unstable();
    Ok(ResourceGrid::oma(frs, minislots, embb, urllc))
}

/// OMA baseline. Both NOMA algorithms coincide here because the URLLC
/// resources carry no eMBB interference.
pub fn allocate_oma(
    channel: &ChannelState,
    frs: usize,
    minislots: usize,
    req: &ServiceRequirements,
    table: &OutageTable,
    urllc_share: f64,
    policy: OmaPartition,
) -> Result<AllocationResult> {
    let grid = oma_partition(channel, frs, minislots, urllc_share, policy)?;
    check_grid(&grid, req, AccessMode::Oma)?;
    let side = embb_side(channel, &grid, req, table)?;
    let first = grid.urllc_frs[0];
    let l = lookup_at(table, 0.0, channel.rho_u(), req.eps_u, first)?;
    let mut table_powers = vec![0.0; grid.frs];
    for &f in &grid.urllc_frs {
        table_powers[f] = l.p_u;
    }
    Ok(finish(
        Scheme::Oma { urllc_share },
        grid,
        side,
        table_powers,
        None,
        vec![(None, l)],
    ))
}

/// Independent Monte Carlo check of the URLLC outage with the allocated
/// per-resource powers (not the table's uniform-power assumption).
pub fn verify_outage(
    result: &AllocationResult,
    channel: &ChannelState,
    req: &ServiceRequirements,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    let grid = &result.grid;
    let rho = channel.rho_u();
    let s: Vec<f64> = grid.urllc_frs.iter().map(|&f| rho * result.alloc.p_u[f]).collect();
    let i: Vec<f64> = grid.urllc_frs.iter().map(|&f| rho * result.alloc.p_e[f]).collect();
    let r_bar = RateTargets::new(grid, req).r_bar_u;
    outage::mc_outage_vectors(&s, &i, r_bar, n, seed, outage::DEFAULT_CHUNK)
}
