//! Downlink power allocation for one eMBB and one URLLC user sharing a
//! time-frequency grid, with non-orthogonal (NOMA) or orthogonal (OMA)
//! slicing.
//!
//! The eMBB user has full CSI and is served by water-filling; the URLLC user
//! only has statistical CSI, so its power comes from a Monte Carlo table of
//! outage probabilities. See the `examples/` directory for one runnable
//! program per capability.

pub mod allocate;
pub mod capacity;
pub mod cli;
pub mod config;
pub mod domain;
pub mod error;
pub mod outage;
pub mod rng;
pub mod scenario;
pub mod stats;
pub mod waterfill;

pub use error::{Error, Result};
