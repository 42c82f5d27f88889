//! Build a small outage table, save it, reload it, check it and look up the
//! URLLC power needed against a given eMBB interference.
//!
//!     cargo run --release --example outage_table

use noma_slicing::outage::{build_table, min_power_lookup, read_table, verify_table, write_table, GridSpec, TableMeta};

fn main() -> noma_slicing::Result<()> {
    let mut meta = TableMeta::new(
        3,
        1.0 / 3.0,
        1e-2,
        GridSpec {
            s_min_db: -10.0,
            s_max_db: 40.0,
            s_step_db: 0.5,
            i_min_db: -10.0,
            i_max_db: 30.0,
            i_step_db: 2.0,
            zero_row: true,
        },
        42,
    );
    meta.stages = vec![10_000, 100_000];
    let (table, stats) = build_table(meta)?;
    println!(
        "{} cells, stopped per stage {:?}, {} samples",
        stats.cells, stats.stopped_at_stage, stats.total_samples
    );

    let dir = std::env::temp_dir().join("noma-slicing-example");
    std::fs::create_dir_all(&dir).map_err(|e| noma_slicing::Error::Config(e.to_string()))?;
    let path = dir.join("fu3.tbl");
    write_table(&table, &path)?;
    let back = read_table(&path)?;
    assert_eq!(back, table);
    for c in verify_table(&back).checks {
        println!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }

    let rho_u = 100.0; // 20 dB mean gain
    for p_e in [0.0, 0.01, 0.1, 1.0] {
        let l = min_power_lookup(&back, p_e, rho_u, 1e-2)?;
        println!("P_e = {p_e:>5} mW -> P_u = {:.4} mW (cell s={} dB, i={} dB)", l.p_u, l.s_db, l.i_db);
    }
    Ok(())
}
