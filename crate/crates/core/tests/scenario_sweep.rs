mod common;

use noma_slicing::scenario::{placement_draw, run_sweep, sweep_csv, ScenarioConfig, TableSet, N_SIC};

fn small() -> (ScenarioConfig, TableSet) {
    let cfg = ScenarioConfig {
        eps_u: 1e-2,
        placements: 12,
        d_u: vec![20.0, 45.0, 70.0],
        verify_samples: 500,
        ..ScenarioConfig::paper()
    };
    let tables = cfg
        .required_tables()
        .unwrap()
        .into_iter()
        .map(|(f_u, r)| common::coarse_table(f_u, r, 1e-2, cfg.seed))
        .collect();
    (cfg, TableSet::new(tables))
}

#[test]
fn sweep_invariants() {
    let (cfg, tables) = small();
    let sweep = run_sweep(&cfg, &tables).unwrap();
    assert_eq!(sweep.records.len(), 3 * 5);
    // eMBB side does not depend on the URLLC distance, bit for bit
    for scheme in ["N-fea", "N-heu", "OMA-25", "OMA-50", N_SIC] {
        let pe: Vec<u64> = sweep.scheme(scheme).map(|r| r.p_e_dbm.to_bits()).collect();
        assert!(pe.windows(2).all(|w| w[0] == w[1]), "{scheme}");
    }
    let sic: Vec<u64> = sweep.scheme(N_SIC).map(|r| r.p_u_dbm.to_bits()).collect();
    assert!(sic.windows(2).all(|w| w[0] == w[1]));
    for &d in &cfg.d_u {
        let fea = sweep.record(d, "N-fea").unwrap();
        let heu = sweep.record(d, "N-heu").unwrap();
        assert!(heu.p_tot_dbm <= fea.p_tot_dbm);
        assert!(fea.outage_est.is_some() && sweep.record(d, N_SIC).unwrap().outage_est.is_none());
    }
    // further away URLLC needs more power
    let fea: Vec<f64> = sweep.scheme("N-fea").map(|r| r.p_u_dbm).collect();
    assert!(fea.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn reruns_and_thread_counts_reproduce() {
    let (cfg, tables) = small();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sweep_csv(&run_sweep(&cfg, &tables).unwrap()))
    };
    let a = run(1);
    assert_eq!(a, run(3));
    assert!(a.starts_with("# cell_radius=100\n"));
    assert!(a.contains("\nd_u_m,scheme,p_tot_dbm,p_e_dbm,p_u_dbm,outage_est,outage_upper95,n_placements,seed\n"));
}

#[test]
fn placements_follow_the_seed() {
    let cfg = ScenarioConfig::desk();
    assert_eq!(placement_draw(&cfg, 3).unwrap(), placement_draw(&cfg, 3).unwrap());
    assert_ne!(placement_draw(&cfg, 3).unwrap(), placement_draw(&cfg, 4).unwrap());
    let other = ScenarioConfig { seed: 2, ..cfg.clone() };
    assert_ne!(placement_draw(&cfg, 3).unwrap(), placement_draw(&other, 3).unwrap());
}
