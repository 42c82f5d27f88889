//! URLLC outage probability under Rayleigh fading with statistical CSI.
//!
//! With `gamma_u(f) = rho_u X(f)`, `X ~ Exp(1)` i.i.d., the outage event
//! `(1/F_u) Σ log2(1 + gamma_u P_u / (1 + gamma_u P_e)) <= r_bar_u` depends on
//! the powers only through the normalized pair `s = rho_u P_u`,
//! `i = rho_u P_e`. Everything here works on that pair.

mod io;
mod mc;
mod table;

pub use io::{read_table, read_table_bytes, table_to_bytes, write_csv, write_table, TABLE_MAGIC};
pub use mc::{count_events, mc_outage, mc_outage_vectors, McEstimate, DEFAULT_CHUNK};
pub use table::{
    build_table, min_power_lookup, verify_table, BuildStats, Cell, GridSpec, Lookup, OutageTable,
    RowIssue, TableCheck, TableMeta, TableReport, TABLE_VERSION,
};

use crate::error::{Error, Result};

/// Normalized operating point of the outage function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutagePoint {
    /// rho_u P_u
    pub s: f64,
    /// rho_u P_e
    pub i: f64,
    pub f_u: usize,
    pub r_bar_u: f64,
}

impl OutagePoint {
    pub fn new(s: f64, i: f64, f_u: usize, r_bar_u: f64) -> Result<Self> {
        if !(s >= 0.0) || !(i >= 0.0) || !s.is_finite() || !i.is_finite() {
            return Err(Error::Domain(format!("normalized powers s={s}, i={i} must be finite and >= 0")));
        }
        if f_u == 0 {
            return Err(Error::Domain("F_u must be at least 1".into()));
        }
        if !(r_bar_u > 0.0) {
            return Err(Error::Domain(format!("r_bar_u = {r_bar_u} must be > 0")));
        }
        Ok(OutagePoint { s, i, f_u, r_bar_u })
    }

    /// Maps the un-normalized signature `(P_u, P_e, rho_u, F_u, r_bar_u)`.
    pub fn from_powers(p_u: f64, p_e: f64, rho_u: f64, f_u: usize, r_bar_u: f64) -> Result<Self> {
        if !(rho_u > 0.0) {
            return Err(Error::Domain(format!("rho_u = {rho_u} must be > 0")));
        }
        OutagePoint::new(rho_u * p_u, rho_u * p_e, f_u, r_bar_u)
    }
}

/// Exact outage for a single frequency resource.
///
/// With `c = 2^r_bar - 1` the event is `s X / (1 + i X) <= c`, i.e. certain
/// when `s <= c i`, and otherwise `X <= c / (s - c i)`.
pub fn outage_closed_form_1fr(s: f64, i: f64, r_bar_u: f64) -> f64 {
    let c = r_bar_u.exp2() - 1.0;
    if s <= c * i {
        1.0
    } else {
        -(-c / (s - c * i)).exp_m1()
    }
}

/// Smallest normalized signal meeting `eps` on one resource without interference.
pub fn min_signal_1fr(eps: f64, r_bar_u: f64) -> f64 {
    let c = r_bar_u.exp2() - 1.0;
    c / -(-eps).ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert!((outage_closed_form_1fr(10.0, 0.0, 1.0) - 0.095_162_581_964_040_4).abs() < 1e-12);
        assert_eq!(outage_closed_form_1fr(1.0, 1.0, 1.0), 1.0);
        assert!((outage_closed_form_1fr(100.0, 1.0, 1.0) - 0.010_050_166_233_954_761).abs() < 1e-12);
        assert_eq!(outage_closed_form_1fr(0.0, 0.0, 0.5), 1.0);
    }

    #[test]
    fn closed_form_monotone() {
        let mut prev = 1.0;
        for k in 0..60 {
            let s = 10f64.powf(k as f64 / 10.0);
            let p = outage_closed_form_1fr(s, 0.3, 1.0);
            assert!(p <= prev);
            prev = p;
        }
        let mut prev = 0.0;
        for k in 0..40 {
            let i = 10f64.powf(k as f64 / 10.0 - 2.0);
            let p = outage_closed_form_1fr(50.0, i, 1.0);
            assert!(p >= prev);
            prev = p;
        }
    }

    #[test]
    fn min_signal_inverts_closed_form() {
        let s = min_signal_1fr(1e-5, 1.0);
        assert!((s - 99_999.5).abs() < 1e-3, "{s}");
        assert!((outage_closed_form_1fr(s, 0.0, 1.0) - 1e-5).abs() < 1e-15);
    }

    #[test]
    fn point_validation() {
        assert!(OutagePoint::new(-1.0, 0.0, 1, 1.0).is_err());
        assert!(OutagePoint::new(1.0, 0.0, 0, 1.0).is_err());
        let p = OutagePoint::from_powers(2.0, 0.5, 4.0, 3, 1.0 / 3.0).unwrap();
        assert_eq!((p.s, p.i), (8.0, 2.0));
    }
}
