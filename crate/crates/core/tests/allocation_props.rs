mod common;

use std::sync::OnceLock;

use noma_slicing::allocate::{allocate_nfea, allocate_nheu, allocate_oma, verify_outage, OmaPartition};
use noma_slicing::capacity::{embb_outage, sic_outage, RateTargets};
use noma_slicing::domain::{ChannelState, ResourceGrid, ServiceRequirements};
use noma_slicing::outage::{min_signal_1fr, outage_closed_form_1fr, OutageTable};
use noma_slicing::stats::binomial_sd;
use proptest::prelude::*;

fn table4() -> &'static OutageTable {
    static T: OnceLock<OutageTable> = OnceLock::new();
    T.get_or_init(|| common::coarse_table(4, 0.25, 1e-2, 8))
}

fn table1() -> &'static OutageTable {
    static T: OnceLock<OutageTable> = OnceLock::new();
    T.get_or_init(|| common::coarse_table(1, 1.0, 1e-2, 8))
}

fn req() -> ServiceRequirements {
    ServiceRequirements {
        r_e: 2.0,
        r_u: 1.0,
        eps_u: 1e-2,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn noma_invariants(gains in prop::collection::vec(0.05f64..50.0, 4), rho_db in 10.0f64..30.0) {
        let ch = ChannelState::new(gains.clone(), 10f64.powf(rho_db / 10.0)).unwrap();
        let grid = ResourceGrid::noma(4, 1);
        let r = req();
        let a = allocate_nfea(&ch, &grid, &r, table4()).unwrap();
        let b = allocate_nheu(&ch, &grid, &r, table4()).unwrap();
        let t = RateTargets::new(&grid, &r);
        for res in [&a, &b] {
            prop_assert_eq!(embb_outage(&gains, &res.alloc, &grid, &t).unwrap(), 0);
            prop_assert_eq!(sic_outage(&gains, &res.alloc, &grid, &t).unwrap(), 0);
            prop_assert!(res.alloc.p_u.iter().zip(&res.p_u_sic).all(|(u, s)| u >= s));
            prop_assert!((res.p_tot - res.p_e_tot - res.p_u_tot).abs() <= 1e-12 * res.p_tot);
        }
        prop_assert!(b.p_u_tot <= a.p_u_tot);
        prop_assert!(b.p_tot <= a.p_tot);
        // deterministic
        prop_assert_eq!(allocate_nfea(&ch, &grid, &r, table4()).unwrap(), a);
    }
}

#[test]
fn single_fr_oma_matches_analytic_inversion() {
    // one URLLC resource without interference: the table answer is the exact
    // minimum signal rounded up to the grid (1 dB steps here), plus at most
    // one more step of Monte Carlo margin
    let ch = ChannelState::new(vec![4.0, 2.0], 50.0).unwrap();
    let r = req();
    let res = allocate_oma(&ch, 2, 1, &r, table1(), 0.5, OmaPartition::FirstK).unwrap();
    let exact_db = 10.0 * min_signal_1fr(r.eps_u, 1.0).log10();
    let got_db = 10.0 * (res.alloc.p_u[0] * ch.rho_u()).log10();
    assert!(got_db >= exact_db && got_db <= exact_db + 2.0, "{got_db} vs {exact_db}");
    // the chosen power meets the target exactly; the sampled rate agrees
    let s = res.alloc.p_u[0] * ch.rho_u();
    assert!(outage_closed_form_1fr(s, 0.0, 1.0) <= r.eps_u);
    let n = 200_000;
    let v = verify_outage(&res, &ch, &r, n, 4).unwrap();
    assert!(v.estimate <= r.eps_u + 4.0 * binomial_sd(r.eps_u, n), "{}", v.estimate);
}

#[test]
fn nfea_verifies_on_random_channels() {
    let r = req();
    let grid = ResourceGrid::noma(4, 1);
    let mut ok = 0;
    for k in 0..20u64 {
        let gains: Vec<f64> = (0..4).map(|f| 0.1 + ((k * 7 + f * 13) % 17) as f64).collect();
        let ch = ChannelState::new(gains, 200.0).unwrap();
        let a = allocate_nfea(&ch, &grid, &r, table4()).unwrap();
        let v = verify_outage(&a, &ch, &r, 50_000, k).unwrap();
        ok += usize::from(v.upper95 <= r.eps_u);
    }
    assert_eq!(ok, 20);
}
