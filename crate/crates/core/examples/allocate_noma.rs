//! The two NOMA allocators on one channel draw: the feasible one sizes URLLC
//! for the worst eMBB interference, the heuristic one per resource. Both are
//! then checked by an independent Monte Carlo run on the actual powers.
//!
//!     cargo run --release --example allocate_noma

use noma_slicing::allocate::{allocate_nfea, allocate_nheu, verify_outage};
use noma_slicing::domain::{mw_to_dbm_lossy, ChannelState, ResourceGrid, ServiceRequirements};
use noma_slicing::outage::{build_table, GridSpec, TableMeta};

fn main() -> noma_slicing::Result<()> {
    let f = 4;
    let req = ServiceRequirements {
        r_e: 4.0,
        r_u: 1.0,
        eps_u: 1e-2,
        ..Default::default()
    };
    let mut meta = TableMeta::new(f, 1.0 / f as f64, req.eps_u, GridSpec {
        s_min_db: -10.0,
        s_max_db: 50.0,
        s_step_db: 0.5,
        i_min_db: -10.0,
        i_max_db: 40.0,
        i_step_db: 1.0,
        zero_row: true,
    }, 3);
    meta.stages = vec![10_000, 100_000];
    let (table, _) = build_table(meta)?;

    let ch = ChannelState::new(vec![0.7, 12.0, 3.5, 40.0], 30.0)?;
    let grid = ResourceGrid::noma(f, 1);
    for r in [allocate_nfea(&ch, &grid, &req, &table)?, allocate_nheu(&ch, &grid, &req, &table)?] {
        let v = verify_outage(&r, &ch, &req, 200_000, 11)?;
        println!("{}:", r.scheme);
        for k in 0..f {
            println!(
                "  fr {k}: P_e {:>7.3} dBm  P_sic {:>7.3} dBm  P_u {:>7.3} dBm",
                mw_to_dbm_lossy(r.alloc.p_e[k]),
                mw_to_dbm_lossy(r.p_u_sic[k]),
                mw_to_dbm_lossy(r.alloc.p_u[k])
            );
        }
        println!(
            "  total {:.2} dBm (eMBB {:.2}, URLLC {:.2}); outage {:.2e}, upper {:.2e}",
            mw_to_dbm_lossy(r.p_tot),
            mw_to_dbm_lossy(r.p_e_tot),
            mw_to_dbm_lossy(r.p_u_tot),
            v.estimate,
            v.upper95
        );
    }
    Ok(())
}
