//! A miniature distance sweep: every scheme on the same eMBB drops, written
//! as the campaign CSV. Coarse tables keep it to a few seconds.
//!
//!     cargo run --release --example sweep

use noma_slicing::outage::{build_table, GridSpec};
use noma_slicing::scenario::{run_sweep, sweep_csv, ScenarioConfig, TableSet};

fn main() -> noma_slicing::Result<()> {
    let cfg = ScenarioConfig {
        eps_u: 1e-2,
        placements: 40,
        d_u: vec![20.0, 35.0, 60.0],
        verify_samples: 2000,
        ..ScenarioConfig::paper()
    };
    let grid = GridSpec {
        s_min_db: -10.0,
        s_max_db: 60.0,
        s_step_db: 1.0,
        i_min_db: -10.0,
        i_max_db: 50.0,
        i_step_db: 2.0,
        zero_row: true,
    };
    let mut tables = Vec::new();
    for (f_u, r_bar) in cfg.required_tables()? {
        let mut meta = cfg.table_meta(f_u, r_bar);
        meta.grid = grid;
        meta.stages = vec![5_000, 50_000];
        tables.push(build_table(meta)?.0);
    }
    let sweep = run_sweep(&cfg, &TableSet::new(tables))?;
    print!("{}", sweep_csv(&sweep));
    for (name, p) in sweep.embb_summary() {
        println!("# mean eMBB power {name}: {p:.2} dBm");
    }
    Ok(())
}
