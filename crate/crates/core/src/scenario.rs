//! Single-cell geometry and the distance-sweep campaign.
//!
//! The URLLC user sits at a fixed distance `d_u`; the eMBB user is dropped
//! uniformly in the disk. Every scheme sees the same eMBB drops and the same
//! verification streams (common random numbers), so scheme differences are
//! not sampling noise.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::allocate::{allocate_nfea, allocate_nheu, allocate_oma, verify_outage, OmaPartition, Scheme};
use crate::config::{parse_list, parse_value, KvConfig};
use crate::domain::{mw_to_dbm_lossy, ChannelState, ResourceGrid, ServiceRequirements};
use crate::error::{Error, Result};
use crate::outage::{build_table, read_table, write_table, BuildStats, GridSpec, OutageTable, TableMeta};
use crate::rng;

/// Label of the SIC-floor diagnostic row.
pub const N_SIC: &str = "N-SIC";

/// URLLC shares of the two OMA baselines.
pub const OMA_SHARES: [f64; 2] = [0.25, 0.5];

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// [m]
    pub cell_radius: f64,
    pub pl_exponent: f64,
    /// Sum of transmit and receive antenna gains [dB].
    pub antenna_gain_sum: f64,
    /// Noise power per user [dBm].
    pub noise_dbm: f64,
    pub frs: usize,
    pub minislots: usize,
    pub r_e: f64,
    pub r_u: f64,
    pub eps_u: f64,
    /// URLLC distances to sweep [m].
    pub d_u: Vec<f64>,
    pub placements: usize,
    pub seed: u64,
    pub oma_partition: String,
    /// Monte Carlo samples per allocation when verifying the outage.
    pub verify_samples: u64,
    /// eMBB drops closer than this are pushed out to it [m].
    pub min_distance: f64,
}

/// The 25 URLLC distances of the reference campaign: 1 dB path-loss steps
/// from 18.494 m, i.e. `18.494 * 10^(k/40)`.
pub fn reference_distances() -> Vec<f64> {
    (0..25).map(|k| 18.494 * 10f64.powf(k as f64 / 40.0)).collect()
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            cell_radius: 100.0,
            pl_exponent: 4.0,
            antenna_gain_sum: 17.15,
            noise_dbm: -92.0,
            frs: 12,
            minislots: 1,
            r_e: 6.0,
            r_u: 1.0,
            eps_u: 1e-5,
            d_u: reference_distances(),
            placements: 1000,
            seed: 1,
            oma_partition: "worst-for-embb".into(),
            verify_samples: 1000,
            min_distance: 1.0,
        }
    }
}

impl ScenarioConfig {
    /// Small, quick campaign: relaxed reliability, 200 drops, 10 distances.
    pub fn desk() -> Self {
        let d0: f64 = 18.494;
        ScenarioConfig {
            eps_u: 1e-3,
            placements: 200,
            d_u: (0..10).map(|k| d0 * 10f64.powf(0.6 * k as f64 / 9.0)).collect(),
            verify_samples: 2000,
            ..Default::default()
        }
    }

    /// The reference campaign. The 17.15 dB enters as a loss and the OMA
    /// partition does not favour eMBB; see the README for why.
    pub fn paper() -> Self {
        ScenarioConfig {
            antenna_gain_sum: -17.15,
            oma_partition: "first-k".into(),
            ..Default::default()
        }
    }

    pub fn profile(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(Self::default()),
            "desk" => Ok(Self::desk()),
            "paper" => Ok(Self::paper()),
            other => Err(Error::Config(format!("unknown profile {other:?} (expected default, desk or paper)"))),
        }
    }

    pub fn requirements(&self) -> ServiceRequirements {
        ServiceRequirements {
            r_e: self.r_e,
            r_u: self.r_u,
            eps_u: self.eps_u,
            ..Default::default()
        }
    }

    /// Applies the known keys of `kv`; unknown keys are an error.
    pub fn apply(&mut self, kv: &KvConfig) -> Result<()> {
        for (k, v) in kv.iter() {
            match k {
                "cell_radius" => self.cell_radius = parse_value(k, v)?,
                "pl_exponent" => self.pl_exponent = parse_value(k, v)?,
                "antenna_gain_sum" => self.antenna_gain_sum = parse_value(k, v)?,
                "noise_dbm" => self.noise_dbm = parse_value(k, v)?,
                "F" | "frs" => self.frs = parse_value(k, v)?,
                "M" | "minislots" => self.minislots = parse_value(k, v)?,
                "r_e" => self.r_e = parse_value(k, v)?,
                "r_u" => self.r_u = parse_value(k, v)?,
                "eps_u" => self.eps_u = parse_value(k, v)?,
                "d_u" => self.d_u = parse_list(k, v)?,
                "placements" => self.placements = parse_value(k, v)?,
                "seed" => self.seed = parse_value(k, v)?,
                "oma_partition" => self.oma_partition = v.to_string(),
                "verify_samples" => self.verify_samples = parse_value(k, v)?,
                "min_distance" => self.min_distance = parse_value(k, v)?,
                "profile" => {}
                other => return Err(Error::Config(format!("unknown scenario key {other:?}"))),
            }
        }
        self.check()
    }

    /// Resolved configuration as `key=value` lines, in a fixed order.
    pub fn to_kv(&self) -> Vec<(&'static str, String)> {
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        vec![
            ("cell_radius", self.cell_radius.to_string()),
            ("pl_exponent", self.pl_exponent.to_string()),
            ("antenna_gain_sum", self.antenna_gain_sum.to_string()),
            ("noise_dbm", self.noise_dbm.to_string()),
            ("F", self.frs.to_string()),
            ("M", self.minislots.to_string()),
            ("r_e", self.r_e.to_string()),
            ("r_u", self.r_u.to_string()),
            ("eps_u", self.eps_u.to_string()),
            ("d_u", list(&self.d_u)),
            ("placements", self.placements.to_string()),
            ("seed", self.seed.to_string()),
            ("oma_partition", self.oma_partition.clone()),
            ("verify_samples", self.verify_samples.to_string()),
            ("min_distance", self.min_distance.to_string()),
        ]
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.cell_radius > 0.0) {
            return bad(format!("cell_radius = {} must be > 0", self.cell_radius));
        }
        if !(self.pl_exponent > 0.0) {
            return bad(format!("pl_exponent = {} must be > 0", self.pl_exponent));
        }
        if self.d_u.is_empty() {
            return bad("d_u needs at least one distance".into());
        }
        if let Some(d) = self.d_u.iter().find(|d| !(**d > 0.0 && **d <= self.cell_radius)) {
            return bad(format!("d_u = {d} outside (0, {}]", self.cell_radius));
        }
        if self.placements == 0 {
            return bad("placements must be >= 1".into());
        }
        if self.frs == 0 || self.minislots == 0 {
            return bad("F and M must be >= 1".into());
        }
        if !(self.eps_u > 0.0 && self.eps_u < 1.0) {
            return bad(format!("eps_u = {} not in (0, 1)", self.eps_u));
        }
        if !(self.r_e > 0.0 && self.r_u > 0.0) {
            return bad("rates must be > 0".into());
        }
        if self.verify_samples == 0 {
            return bad("verify_samples must be >= 1".into());
        }
        if !(self.min_distance > 0.0 && self.min_distance < self.cell_radius) {
            return bad(format!("min_distance = {} not in (0, cell_radius)", self.min_distance));
        }
        OmaPartition::parse(&self.oma_partition, 0)?;
        Ok(())
    }

    fn partition_for(&self, placement: usize) -> OmaPartition {
        let seed = rng::derive(self.seed, &[rng::label("oma-partition"), placement as u64]);
        OmaPartition::parse(&self.oma_partition, seed).expect("checked")
    }

    /// `(F_u, r_bar_u)` of every table the sweep needs: NOMA, OMA-25, OMA-50.
    pub fn required_tables(&self) -> Result<Vec<(usize, f64)>> {
        let mut out = vec![(self.frs, self.r_u / (self.minislots * self.frs) as f64)];
        for share in OMA_SHARES {
            let k = share * self.frs as f64;
            if (k - k.round()).abs() > 1e-9 || k < 1.0 {
                return Err(Error::Config(format!("F = {} cannot be split {share} to URLLC", self.frs)));
            }
            let f_u = k.round() as usize;
            out.push((f_u, self.r_u / (self.minislots * f_u) as f64));
        }
        Ok(out)
    }
}

/// Mean normalized gain at distance `d`: path loss over noise, in linear scale.
pub fn path_gain(d: f64, cfg: &ScenarioConfig) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain(format!("distance {d} must be finite and > 0")));
    }
    let gain_db = cfg.antenna_gain_sum - 10.0 * cfg.pl_exponent * d.log10();
    Ok(10f64.powf((gain_db - cfg.noise_dbm) / 10.0))
}

/// One eMBB drop: its distance and Rayleigh-faded gains on every resource.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbbDraw {
    pub distance: f64,
    pub rho_e: f64,
    pub gamma_e: Vec<f64>,
}

impl EmbbDraw {
    pub fn channel(&self, rho_u: f64) -> Result<ChannelState> {
        ChannelState::new(self.gamma_e.clone(), rho_u)
    }
}

/// Drops the eMBB user uniformly over the cell and fades every resource.
pub fn sample_embb_channel<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Result<EmbbDraw> {
    let u: f64 = rng.random();
    // the angle does not affect the gain but is drawn to keep the stream layout fixed
    let _angle: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    let distance = (cfg.cell_radius * u.sqrt()).max(cfg.min_distance);
    let rho_e = path_gain(distance, cfg)?;
    let gamma_e = (0..cfg.frs)
        .map(|_| {
            let x: f64 = Exp1.sample(rng);
            rho_e * x
        })
        .collect();
    Ok(EmbbDraw {
        distance,
        rho_e,
        gamma_e,
    })
}

/// eMBB drop number `placement` of the campaign keyed by `seed`.
pub fn placement_draw(cfg: &ScenarioConfig, placement: usize) -> Result<EmbbDraw> {
    let mut r = rng::substream(rng::derive(cfg.seed, &[rng::label("embb-placement")]), placement as u64);
    sample_embb_channel(cfg, &mut r)
}

/// The outage tables a campaign draws on.
#[derive(Debug, Clone, Default)]
pub struct TableSet {
    tables: Vec<OutageTable>,
}

impl TableSet {
    pub fn new(tables: Vec<OutageTable>) -> Self {
        TableSet { tables }
    }

    pub fn get(&self, f_u: usize, r_bar_u: f64) -> Result<&OutageTable> {
        self.tables
            .iter()
            .find(|t| t.check_matches(f_u, r_bar_u).is_ok())
            .ok_or_else(|| Error::TableMismatch(format!("no table for F_u={f_u}, r_bar_u={r_bar_u}")))
    }

    pub fn tables(&self) -> &[OutageTable] {
        &self.tables
    }
}

impl ScenarioConfig {
    /// Table description used for `(f_u, r_bar_u)` in this campaign.
    pub fn table_meta(&self, f_u: usize, r_bar_u: f64) -> TableMeta {
        TableMeta::new(f_u, r_bar_u, self.eps_u, GridSpec::default(), self.seed)
    }
}

/// Canonical file name of a table inside a table directory.
pub fn table_file_name(meta: &TableMeta) -> String {
    format!("outage-fu{}-eps{:e}-seed{}.tbl", meta.f_u, meta.eps_target, meta.base_seed)
}

/// Where a table came from.
#[derive(Debug, Clone)]
pub struct TableSource {
    pub path: PathBuf,
    pub built: Option<BuildStats>,
}

/// Loads the campaign's tables from `dir`, building and saving missing ones
/// when `build_missing` is set. A file whose header disagrees with the
/// campaign is an error, never silently replaced.
pub fn load_tables(cfg: &ScenarioConfig, dir: &Path, build_missing: bool) -> Result<(TableSet, Vec<TableSource>)> {
    let mut tables = Vec::new();
    let mut sources = Vec::new();
    for (f_u, r) in cfg.required_tables()? {
        let meta = cfg.table_meta(f_u, r);
        let path = dir.join(table_file_name(&meta));
        if path.exists() {
            let t = read_table(&path)?;
            if t.meta != meta {
                return Err(Error::TableMismatch(format!(
                    "{} was built with different settings than this campaign needs",
                    path.display()
                )));
            }
            tables.push(t);
            sources.push(TableSource { path, built: None });
        } else if build_missing {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            let (t, stats) = build_table(meta)?;
            write_table(&t, &path)?;
            tables.push(t);
            sources.push(TableSource {
                path,
                built: Some(stats),
            });
        } else {
            return Err(Error::TableMismatch(format!(
                "missing table {} (pass --build-missing to build it)",
                path.display()
            )));
        }
    }
    Ok((TableSet::new(tables), sources))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub d_u: f64,
    pub scheme: String,
    pub p_tot_dbm: f64,
    pub p_e_dbm: f64,
    pub p_u_dbm: f64,
    /// Pooled outage over every drop; `None` for the diagnostic row.
    pub outage_est: Option<f64>,
    pub outage_upper95: Option<f64>,
    pub n_placements: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub config: ScenarioConfig,
    pub records: Vec<SweepRecord>,
}

impl Sweep {
    pub fn record(&self, d_u: f64, scheme: &str) -> Option<&SweepRecord> {
        self.records.iter().find(|r| r.d_u == d_u && r.scheme == scheme)
    }

    pub fn scheme(&self, scheme: &str) -> impl Iterator<Item = &SweepRecord> {
        let name = scheme.to_string();
        self.records.iter().filter(move |r| r.scheme == name)
    }

    /// Mean eMBB power per access scheme [dBm]: NOMA, OMA-25, OMA-50.
    /// The eMBB side never depends on `d_u`, so the first distance is used.
    pub fn embb_summary(&self) -> Vec<(String, f64)> {
        let d = self.config.d_u[0];
        let mut out = Vec::new();
        if let Some(r) = self.record(d, &Scheme::NomaFeasible.to_string()) {
            out.push(("NOMA".to_string(), r.p_e_dbm));
        }
        for share in OMA_SHARES {
            let name = Scheme::Oma { urllc_share: share }.to_string();
            if let Some(r) = self.record(d, &name) {
                out.push((name, r.p_e_dbm));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    p_tot: f64,
    p_e: f64,
    p_u: f64,
    events: u64,
    samples: u64,
}

impl Acc {
    fn add(&mut self, o: &Acc) {
        self.p_tot += o.p_tot;
        self.p_e += o.p_e;
        self.p_u += o.p_u;
        self.events += o.events;
        self.samples += o.samples;
    }
}

/// Schemes in reporting order, then the SIC diagnostic.
fn scheme_names() -> Vec<String> {
    let mut v = vec![Scheme::NomaFeasible.to_string(), Scheme::NomaHeuristic.to_string()];
    v.extend(OMA_SHARES.iter().map(|&s| Scheme::Oma { urllc_share: s }.to_string()));
    v.push(N_SIC.to_string());
    v
}

fn run_placement(
    cfg: &ScenarioConfig,
    tables: &TableSet,
    draw: &EmbbDraw,
    placement: usize,
    d_index: usize,
    rho_u: f64,
) -> Result<Vec<Acc>> {
    let req = cfg.requirements();
    let ch = draw.channel(rho_u)?;
    let grid = ResourceGrid::noma(cfg.frs, cfg.minislots);
    let noma_r = cfg.r_u / (cfg.minislots * cfg.frs) as f64;
    let noma_table = tables.get(cfg.frs, noma_r)?;
    let vseed = rng::derive(cfg.seed, &[rng::label("verify"), placement as u64, d_index as u64]);

    let mut results = vec![
        allocate_nfea(&ch, &grid, &req, noma_table)?,
        allocate_nheu(&ch, &grid, &req, noma_table)?,
    ];
    for share in OMA_SHARES {
        let f_u = (share * cfg.frs as f64).round() as usize;
        let t = tables.get(f_u, cfg.r_u / (cfg.minislots * f_u) as f64)?;
        results.push(allocate_oma(
            &ch,
            cfg.frs,
            cfg.minislots,
            &req,
            t,
            share,
            cfg.partition_for(placement),
        )?);
    }
    let mut out = Vec::with_capacity(results.len() + 1);
    for r in &results {
        let v = verify_outage(r, &ch, &req, cfg.verify_samples, vseed)?;
        out.push(Acc {
            p_tot: r.p_tot,
            p_e: r.p_e_tot,
            p_u: r.p_u_tot,
            events: v.events,
            samples: v.samples,
        });
    }
    let sic = results[0].p_u_sic_tot();
    out.push(Acc {
        p_tot: results[0].p_e_tot + sic,
        p_e: results[0].p_e_tot,
        p_u: sic,
        events: 0,
        samples: 0,
    });
    Ok(out)
}

/// Runs every scheme on every drop at every distance.
///
/// Powers are averaged in mW and reported in dBm; the outage is pooled over
/// all verification samples of a (distance, scheme) pair.
pub fn run_sweep(cfg: &ScenarioConfig, tables: &TableSet) -> Result<Sweep> {
    cfg.check()?;
    for (f_u, r) in cfg.required_tables()? {
        tables.get(f_u, r)?;
    }
    let draws: Vec<EmbbDraw> = (0..cfg.placements)
        .map(|p| placement_draw(cfg, p))
        .collect::<Result<_>>()?;
    let names = scheme_names();
    let mut records = Vec::with_capacity(cfg.d_u.len() * names.len());
    for (j, &d) in cfg.d_u.iter().enumerate() {
        let rho_u = path_gain(d, cfg)?;
        let per: Vec<Vec<Acc>> = draws
            .par_iter()
            .enumerate()
            .map(|(p, draw)| run_placement(cfg, tables, draw, p, j, rho_u))
            .collect::<Result<_>>()?;
        // fixed summation order keeps results independent of scheduling
        let mut total = vec![Acc::default(); names.len()];
        for row in &per {
            for (t, a) in total.iter_mut().zip(row) {
                t.add(a);
            }
        }
        let n = cfg.placements as f64;
        for (name, acc) in names.iter().zip(&total) {
            let verified = acc.samples > 0;
            let est = crate::outage::McEstimate::from_counts(acc.events, acc.samples.max(1));
            records.push(SweepRecord {
                d_u: d,
                scheme: name.clone(),
                p_tot_dbm: mw_to_dbm_lossy(acc.p_tot / n),
                p_e_dbm: mw_to_dbm_lossy(acc.p_e / n),
                p_u_dbm: mw_to_dbm_lossy(acc.p_u / n),
                outage_est: verified.then_some(est.estimate),
                outage_upper95: verified.then_some(est.upper95),
                n_placements: cfg.placements,
                seed: cfg.seed,
            });
        }
    }
    Ok(Sweep {
        config: cfg.clone(),
        records,
    })
}

/// CSV with `#` metadata lines carrying the resolved configuration.
pub fn sweep_csv(sweep: &Sweep) -> String {
    let mut s = String::new();
    for (k, v) in sweep.config.to_kv() {
        let _ = writeln!(s, "# {k}={v}");
    }
    let _ = writeln!(s, "# averaging=linear-mW");
    let _ = writeln!(s, "# embb_fading=rayleigh-iid-per-fr");
    let _ = writeln!(s, "d_u_m,scheme,p_tot_dbm,p_e_dbm,p_u_dbm,outage_est,outage_upper95,n_placements,seed");
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in &sweep.records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.d_u,
            r.scheme,
            r.p_tot_dbm,
            r.p_e_dbm,
            r.p_u_dbm,
            opt(r.outage_est),
            opt(r.outage_upper95),
            r.n_placements,
            r.seed
        );
    }
    s
}

/// Mean eMBB power per access scheme, as a two-column CSV.
pub fn embb_summary_csv(sweep: &Sweep) -> String {
    let mut s = String::from("scheme,p_e_dbm\n");
    for (name, p) in sweep.embb_summary() {
        let _ = writeln!(s, "{name},{p}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_gain_arithmetic() {
        let cfg = ScenarioConfig::default();
        let db = |x: f64| 10.0 * x.log10();
        assert!((db(path_gain(100.0, &cfg).unwrap()) - 29.15).abs() < 1e-9);
        assert!((db(path_gain(10.0, &cfg).unwrap()) - 69.15).abs() < 1e-9);
        let drop = db(path_gain(10.0, &cfg).unwrap()) - db(path_gain(20.0, &cfg).unwrap());
        assert!((drop - 40.0 * 2f64.log10()).abs() < 1e-9);
        assert!(path_gain(0.0, &cfg).is_err());
        assert!(path_gain(-3.0, &cfg).is_err());
    }

    #[test]
    fn reference_distances_step_one_db() {
        let d = reference_distances();
        assert_eq!(d.len(), 25);
        assert!((d[0] - 18.494).abs() < 1e-12);
        let cfg = ScenarioConfig::default();
        for w in d.windows(2) {
            let step = 10.0 * (path_gain(w[0], &cfg).unwrap() / path_gain(w[1], &cfg).unwrap()).log10();
            assert!((step - 1.0).abs() < 1e-9);
        }
        assert!(d.iter().any(|x| (x - 46.45).abs() < 0.1));
    }

    #[test]
    fn radius_is_uniform_over_area() {
        let cfg = ScenarioConfig {
            min_distance: 1e-9,
            ..Default::default()
        };
        let mut r = rng::substream(7, 0);
        let n = 100_000;
        let mut radii: Vec<f64> = (0..n).map(|_| sample_embb_channel(&cfg, &mut r).unwrap().distance).collect();
        radii.sort_by(f64::total_cmp);
        // Kolmogorov-Smirnov distance against r^2 / R^2
        let ks = radii
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let f = (x / cfg.cell_radius).powi(2);
                (f - k as f64 / n as f64).abs().max((f - (k + 1) as f64 / n as f64).abs())
            })
            .fold(0.0, f64::max);
        // p = 0.01 critical value
        assert!(ks < 1.63 / (n as f64).sqrt(), "KS {ks}");
    }

    #[test]
    fn fading_has_unit_mean() {
        let cfg = ScenarioConfig::default();
        let mut r = rng::substream(11, 0);
        let mut sum = 0.0;
        let mut count = 0;
        while count < 100_000 {
            let d = sample_embb_channel(&cfg, &mut r).unwrap();
            for g in &d.gamma_e {
                assert!(*g > 0.0);
                sum += g / d.rho_e;
                count += 1;
            }
        }
        let mean = sum / count as f64;
        assert!((mean - 1.0).abs() < 3.0 / (count as f64).sqrt(), "{mean}");
    }

    #[test]
    fn config_layering_and_checks() {
        let mut cfg = ScenarioConfig::desk();
        let kv = KvConfig::parse("placements=5\nd_u=20,40\noma_partition=random").unwrap();
        cfg.apply(&kv).unwrap();
        assert_eq!(cfg.placements, 5);
        assert_eq!(cfg.d_u, vec![20.0, 40.0]);
        assert_eq!(cfg.eps_u, 1e-3);
        assert!(cfg.apply(&KvConfig::parse("d_u=150").unwrap()).is_err());
        let mut cfg = ScenarioConfig::default();
        assert!(cfg.apply(&KvConfig::parse("bogus=1").unwrap()).is_err());
        let mut cfg = ScenarioConfig::default();
        assert!(cfg.apply(&KvConfig::parse("oma_partition=best").unwrap()).is_err());
    }

    #[test]
    fn required_tables_for_defaults() {
        let t = ScenarioConfig::default().required_tables().unwrap();
        assert_eq!(t.iter().map(|x| x.0).collect::<Vec<_>>(), vec![12, 3, 6]);
        assert!((t[0].1 - 1.0 / 12.0).abs() < 1e-15);
        assert!((t[1].1 - 1.0 / 3.0).abs() < 1e-15);
        let odd = ScenarioConfig {
            frs: 6,
            ..Default::default()
        };
        assert!(odd.required_tables().is_err());
    }

    #[test]
    fn missing_tables_are_reported() {
        let cfg = ScenarioConfig {
            placements: 1,
            ..ScenarioConfig::desk()
        };
        assert!(matches!(run_sweep(&cfg, &TableSet::default()), Err(Error::TableMismatch(_))));
    }
}
