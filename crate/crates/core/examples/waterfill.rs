//! Minimum-power water-filling for the eMBB user, and the SIC floor it
//! implies for URLLC on a shared (NOMA) grid.
//!
//!     cargo run --example waterfill

use noma_slicing::capacity::{embb_outage, sic_outage, RateTargets};
use noma_slicing::domain::{mw_to_dbm_lossy, ChannelState, PowerAllocation, ResourceGrid, ServiceRequirements};
use noma_slicing::waterfill::{solve_embb, solve_sic, solve_waterfill, WaterfillProblem, DEFAULT_TOL};

fn main() -> noma_slicing::Result<()> {
    // textbook case: one strong and one weak channel, 1 bit/s/Hz on average
    let sol = solve_waterfill(
        &WaterfillProblem {
            gains: vec![1.0, 0.25],
            r_bar: 1.0,
        },
        DEFAULT_TOL,
    )?;
    println!("powers {:?}, water level {}, active {:?}", sol.powers, sol.water_level, sol.active_set);

    let gamma_e = vec![3.2, 0.4, 11.0, 1.7, 0.05, 6.3, 2.2, 0.9, 4.8, 0.3, 8.1, 1.1];
    let ch = ChannelState::new(gamma_e.clone(), 50.0)?;
    let grid = ResourceGrid::noma(12, 1);
    let req = ServiceRequirements::default();
    let t = RateTargets::new(&grid, &req);
    let pe = solve_embb(&ch, &grid, &t)?;
    let sic = solve_sic(&ch, &grid, &t, &pe.powers)?;

    println!("\n fr   gamma_e    P_e[mW]   P_sic[mW]");
    for f in 0..12 {
        println!("{f:>3} {:>9.3} {:>10.4} {:>11.4}", gamma_e[f], pe.powers[f], sic.powers[f]);
    }
    let p_e: f64 = pe.powers.iter().sum();
    let p_s: f64 = sic.powers.iter().sum();
    println!("eMBB total {:.2} dBm, SIC floor total {:.2} dBm", mw_to_dbm_lossy(p_e), mw_to_dbm_lossy(p_s));

    let alloc = PowerAllocation {
        p_e: pe.powers,
        p_u: sic.powers,
    };
    println!(
        "eMBB outage {}, SIC outage {}",
        embb_outage(&gamma_e, &alloc, &grid, &t)?,
        sic_outage(&gamma_e, &alloc, &grid, &t)?
    );
    Ok(())
}
