//! Orthogonal baselines: reserve 25 % or 50 % of the band for URLLC under
//! each partition policy and compare the eMBB cost.
//!
//!     cargo run --release --example oma_baselines

use noma_slicing::allocate::{allocate_oma, OmaPartition};
use noma_slicing::domain::{mw_to_dbm_lossy, ChannelState, ServiceRequirements};
use noma_slicing::outage::{build_table, GridSpec, TableMeta};

fn main() -> noma_slicing::Result<()> {
    let req = ServiceRequirements {
        eps_u: 1e-2,
        ..Default::default()
    };
    let grid = GridSpec {
        s_min_db: -10.0,
        s_max_db: 50.0,
        s_step_db: 0.5,
        i_min_db: 0.0,
        i_max_db: 0.0,
        i_step_db: 1.0,
        zero_row: true,
    };
    let table = |f_u: usize| {
        let mut m = TableMeta::new(f_u, 1.0 / f_u as f64, req.eps_u, grid, 5);
        m.stages = vec![10_000, 100_000];
        build_table(m).map(|(t, _)| t)
    };
    let tables = [(0.25, table(3)?), (0.5, table(6)?)];

    let ch = ChannelState::new(vec![3.2, 0.4, 11.0, 1.7, 0.05, 6.3, 2.2, 0.9, 4.8, 0.3, 8.1, 1.1], 100.0)?;
    for policy in [OmaPartition::WorstForEmbb, OmaPartition::FirstK, OmaPartition::Random(9)] {
        for (share, t) in &tables {
            let r = allocate_oma(&ch, 12, 1, &req, t, *share, policy)?;
            println!(
                "{:<15} {:<7} URLLC on {:?}: eMBB {:>6.2} dBm, URLLC {:>6.2} dBm",
                policy.name(),
                r.scheme.to_string(),
                r.grid.urllc_frs,
                mw_to_dbm_lossy(r.p_e_tot),
                mw_to_dbm_lossy(r.p_u_tot)
            );
        }
    }
    Ok(())
}
