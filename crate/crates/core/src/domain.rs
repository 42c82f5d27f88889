//! Core value types shared by every stage of the allocator.
//!
//! Powers are linear milliwatts everywhere inside the crate; dBm only shows
//! up at I/O boundaries through [`dbm_to_mw`] and [`mw_to_dbm`]. Power vectors
//! always span the full grid of `F` frequency resources, with exact zeros on
//! resources a service does not use.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Converts a power in dBm to milliwatts.
pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

/// Converts a power in milliwatts to dBm. Nonpositive input is a domain error.
pub fn mw_to_dbm(mw: f64) -> Result<f64> {
    if !(mw > 0.0) || !mw.is_finite() {
        return Err(Error::Domain(format!("cannot express {mw} mW in dBm")));
    }
    Ok(10.0 * mw.log10())
}

/// Same as [`mw_to_dbm`] but maps zero power to `-inf` for reporting.
pub fn mw_to_dbm_lossy(mw: f64) -> f64 {
    if mw > 0.0 {
        10.0 * mw.log10()
    } else {
        f64::NEG_INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AccessMode {
    /// Both services superposed on the same resources.
    Noma,
    /// Disjoint frequency resources per service.
    Oma,
}

impl fmt::Display for AccessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AccessMode::Noma => f.write_str("NOMA"),
            AccessMode::Oma => f.write_str("OMA"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Service {
    Embb,
    Urllc,
}

impl fmt::Display for Service {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Service::Embb => f.write_str("eMBB"),
            Service::Urllc => f.write_str("URLLC"),
        }
    }
}

/// Time-frequency grid and the share of it assigned to each service.
///
/// Frequency resources are stored as index sets so OMA partitions keep track
/// of *which* resources each service owns. Mini-slots only enter as counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceGrid {
    pub frs: usize,
    pub minislots: usize,
    pub embb_frs: Vec<usize>,
    pub urllc_frs: Vec<usize>,
    pub embb_minislots: usize,
    pub urllc_minislots: usize,
    pub mode: AccessMode,
}

impl ResourceGrid {
    /// Fully shared NOMA grid: both services use every resource.
    pub fn noma(frs: usize, minislots: usize) -> Self {
        ResourceGrid {
            frs,
            minislots,
            embb_frs: (0..frs).collect(),
            urllc_frs: (0..frs).collect(),
            embb_minislots: minislots,
            urllc_minislots: minislots,
            mode: AccessMode::Noma,
        }
    }

    /// OMA grid with explicit frequency partitions; both services span all mini-slots.
    pub fn oma(frs: usize, minislots: usize, embb_frs: Vec<usize>, urllc_frs: Vec<usize>) -> Self {
        ResourceGrid {
            frs,
            minislots,
            embb_frs,
            urllc_frs,
            embb_minislots: minislots,
            urllc_minislots: minislots,
            mode: AccessMode::Oma,
        }
    }

    pub fn f_e(&self) -> usize {
        self.embb_frs.len()
    }

    pub fn f_u(&self) -> usize {
        self.urllc_frs.len()
    }

    /// Per-resource rate targets for this grid.
    pub fn rate_targets(&self, req: &ServiceRequirements) -> crate::capacity::RateTargets {
        crate::capacity::RateTargets::new(self, req)
    }
}

/// Channel knowledge at the base station.
///
/// The eMBB gains are instantaneous and known; for URLLC only the mean
/// normalized gain is available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelState {
    gamma_e: Vec<f64>,
    rho_u: f64,
}

impl ChannelState {
    pub fn new(gamma_e: Vec<f64>, rho_u: f64) -> Result<Self> {
        if let Some((f, g)) = gamma_e
            .iter()
            .enumerate()
            .find(|(_, g)| !(**g >= 0.0) || !g.is_finite())
        {
            return Err(Error::Domain(format!("gamma_e[{f}] = {g} must be finite and >= 0")));
        }
        if !(rho_u > 0.0) || !rho_u.is_finite() {
            return Err(Error::Domain(format!("rho_u = {rho_u} must be finite and > 0")));
        }
        Ok(ChannelState { gamma_e, rho_u })
    }

    pub fn gamma_e(&self) -> &[f64] {
        &self.gamma_e
    }

    pub fn rho_u(&self) -> f64 {
        self.rho_u
    }

    /// Same eMBB channel seen by a URLLC user with a different mean gain.
    pub fn with_rho_u(&self, rho_u: f64) -> Result<Self> {
        ChannelState::new(self.gamma_e.clone(), rho_u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ServiceRequirements {
    /// eMBB spectral efficiency target [bit/s/Hz].
    pub r_e: f64,
    /// URLLC packet spectral efficiency [bit/s/Hz].
    pub r_u: f64,
    /// URLLC outage tolerance.
    pub eps_u: f64,
    /// Latency budget in mini-slots.
    pub l_max: u32,
    /// Mini-slots between packet arrival and first transmission.
    pub delta_u: u32,
}

impl Default for ServiceRequirements {
    fn default() -> Self {
        ServiceRequirements {
            r_e: 6.0,
            r_u: 1.0,
            eps_u: 1e-5,
            l_max: 1,
            delta_u: 0,
        }
    }
}

/// Per-resource power coefficients in mW, one entry per frequency resource.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerAllocation {
    pub p_e: Vec<f64>,
    pub p_u: Vec<f64>,
}

impl PowerAllocation {
    pub fn zeros(frs: usize) -> Self {
        PowerAllocation {
            p_e: vec![0.0; frs],
            p_u: vec![0.0; frs],
        }
    }

    pub fn len(&self) -> usize {
        self.p_e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p_e.is_empty()
    }

    /// Checks nonnegativity, lengths and (for OMA) orthogonality.
    pub fn check(&self, grid: &ResourceGrid) -> Result<()> {
        if self.p_e.len() != grid.frs {
            return Err(Error::LengthMismatch {
                what: "P_e",
                expected: grid.frs,
                got: self.p_e.len(),
            });
        }
        if self.p_u.len() != grid.frs {
            return Err(Error::LengthMismatch {
                what: "P_u",
                expected: grid.frs,
                got: self.p_u.len(),
            });
        }
        for (f, (&pe, &pu)) in self.p_e.iter().zip(&self.p_u).enumerate() {
            if !(pe >= 0.0) || !(pu >= 0.0) {
                return Err(Error::Domain(format!("negative power on FR {f}: P_e={pe}, P_u={pu}")));
            }
            if grid.mode == AccessMode::Oma && pe * pu != 0.0 {
                return Err(Error::Domain(format!("OMA allocation uses FR {f} for both services")));
            }
        }
        Ok(())
    }
}

/// One violated grid or requirement invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoFrequencyResources,
    NoMiniSlots,
    EmptyResourceSet(Service),
    TooManyResources { service: Service, count: usize, frs: usize },
    FrOutOfRange { service: Service, index: usize },
    DuplicateFr { service: Service, index: usize },
    MiniSlotsOutOfRange { service: Service, value: usize, minislots: usize },
    NomaSharingMismatch,
    OmaOverlap { index: usize },
    OmaOverCapacity { f_e: usize, f_u: usize, frs: usize },
    Latency { m_u: usize, l_max: u32, delta_u: u32 },
    NonPositiveRate { service: Service, value: f64 },
    OutageToleranceOutOfRange(f64),
    ZeroLatencyBudget,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoFrequencyResources => write!(f, "grid has no frequency resources"),
            Violation::NoMiniSlots => write!(f, "grid has no mini-slots"),
            Violation::EmptyResourceSet(s) => write!(f, "{s} has no frequency resources"),
            Violation::TooManyResources { service, count, frs } => {
                write!(f, "{service} uses {count} FRs but the grid has {frs}")
            }
            Violation::FrOutOfRange { service, index } => {
                write!(f, "{service} FR index {index} is outside the grid")
            }
            Violation::DuplicateFr { service, index } => {
                write!(f, "{service} lists FR {index} more than once")
            }
            Violation::MiniSlotsOutOfRange { service, value, minislots } => {
                write!(f, "{service} mini-slot count {value} not in 1..={minislots}")
            }
            Violation::NomaSharingMismatch => {
                write!(f, "NOMA requires identical eMBB and URLLC resource sets")
            }
            Violation::OmaOverlap { index } => write!(f, "OMA partitions overlap on FR {index}"),
            Violation::OmaOverCapacity { f_e, f_u, frs } => {
                write!(f, "OMA partitions need {f_e} + {f_u} FRs but the grid has {frs}")
            }
            Violation::Latency { m_u, l_max, delta_u } => write!(
                f,
                "latency: M_u = {m_u} exceeds l_max - delta_u = {l_max} - {delta_u}"
            ),
            Violation::NonPositiveRate { service, value } => {
                write!(f, "{service} rate target {value} must be > 0")
            }
            Violation::OutageToleranceOutOfRange(e) => write!(f, "eps_u = {e} not in (0, 1)"),
            Violation::ZeroLatencyBudget => write!(f, "l_max must be at least one mini-slot"),
        }
    }
}

/// Reports every violated invariant of a grid and its service requirements.
pub fn validate(grid: &ResourceGrid, req: &ServiceRequirements) -> Vec<Violation> {
    let mut out = Vec::new();
    if grid.frs == 0 {
        out.push(Violation::NoFrequencyResources);
    }
    if grid.minislots == 0 {
        out.push(Violation::NoMiniSlots);
    }
    for (service, set, m) in [
        (Service::Embb, &grid.embb_frs, grid.embb_minislots),
        (Service::Urllc, &grid.urllc_frs, grid.urllc_minislots),
    ] {
        if set.is_empty() {
            out.push(Violation::EmptyResourceSet(service));
        }
        if set.len() > grid.frs {
            out.push(Violation::TooManyResources {
                service,
                count: set.len(),
                frs: grid.frs,
            });
        }
        let mut seen = vec![false; grid.frs];
        for &index in set {
            if index >= grid.frs {
                out.push(Violation::FrOutOfRange { service, index });
            } else if std::mem::replace(&mut seen[index], true) {
                out.push(Violation::DuplicateFr { service, index });
            }
        }
        if m == 0 || m > grid.minislots {
            out.push(Violation::MiniSlotsOutOfRange {
                service,
                value: m,
                minislots: grid.minislots,
            });
        }
    }
    match grid.mode {
        AccessMode::Noma => {
            let mut e = grid.embb_frs.clone();
            let mut u = grid.urllc_frs.clone();
            e.sort_unstable();
            u.sort_unstable();
            if e != u || grid.embb_minislots != grid.urllc_minislots {
                out.push(Violation::NomaSharingMismatch);
            }
        }
        AccessMode::Oma => {
            if grid.f_e() + grid.f_u() > grid.frs {
                out.push(Violation::OmaOverCapacity {
                    f_e: grid.f_e(),
                    f_u: grid.f_u(),
                    frs: grid.frs,
                });
            }
            for &index in &grid.urllc_frs {
                if grid.embb_frs.contains(&index) {
                    out.push(Violation::OmaOverlap { index });
                }
            }
        }
    }
    if grid.urllc_minislots as u64 + req.delta_u as u64 > req.l_max as u64 {
        out.push(Violation::Latency {
            m_u: grid.urllc_minislots,
            l_max: req.l_max,
            delta_u: req.delta_u,
        });
    }
    if !(req.r_e > 0.0) {
        out.push(Violation::NonPositiveRate {
            service: Service::Embb,
            value: req.r_e,
        });
    }
    if !(req.r_u > 0.0) {
        out.push(Violation::NonPositiveRate {
            service: Service::Urllc,
            value: req.r_u,
        });
    }
    if !(req.eps_u > 0.0 && req.eps_u < 1.0) {
        out.push(Violation::OutageToleranceOutOfRange(req.eps_u));
    }
    if req.l_max == 0 {
        out.push(Violation::ZeroLatencyBudget);
    }
    out
}
