//! Command-line front end: `table-build`, `allocate`, `simulate`, `verify`
//! and `export-csv`.
//!
//! Every command that writes files also writes `<output>.manifest.json`
//! recording the resolved configuration, seed and SHA-256 digests of the
//! tables read and files written.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::allocate::{allocate_nfea, allocate_nheu, allocate_oma, verify_outage, AllocationResult, OmaPartition};
use crate::config::{parse_list, parse_value, KvConfig};
use crate::domain::{mw_to_dbm_lossy, ChannelState, ResourceGrid, ServiceRequirements};
use crate::error::{Error, Result};
use crate::outage::{build_table, read_table, verify_table, write_csv, GridSpec, TableMeta};
use crate::rng;
use crate::scenario::{embb_summary_csv, load_tables, run_sweep, sweep_csv, ScenarioConfig};

/// Environment variable naming the default table directory.
pub const TABLE_DIR_ENV: &str = "NOMA_SLICING_TABLE_DIR";

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED_CHECK: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
    pub const IO: i32 = 4;
    pub const FORMAT: i32 = 5;
}

/// Exit code class of an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::LengthMismatch { .. } | Error::Config(_) | Error::TableMismatch(_) => exit::CONFIG,
        Error::Infeasible(_)
        | Error::NoConvergence { .. }
        | Error::InterferenceBeyondGrid { .. }
        | Error::InfeasibleRow { .. } => exit::INFEASIBLE,
        Error::Io { .. } => exit::IO,
        Error::Format(_) => exit::FORMAT,
    }
}

#[derive(Debug, Parser)]
#[command(name = "noma-slicing", version, about = "eMBB/URLLC power allocation with NOMA and OMA slicing")]
pub struct Cli {
    /// Worker threads (output does not depend on it).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an outage table and write it to disk.
    TableBuild(TableBuildArgs),
    /// Allocate power for one channel realization.
    Allocate(AllocateArgs),
    /// Run the URLLC distance sweep.
    Simulate(SimulateArgs),
    /// Check a table file.
    Verify(VerifyArgs),
    /// Export a table as CSV.
    ExportCsv(ExportArgs),
}

#[derive(Debug, Args)]
pub struct TableBuildArgs {
    /// Flat key=value file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub f_u: Option<usize>,
    /// Per-resource URLLC rate; defaults to r_u / F_u.
    #[arg(long)]
    pub r_bar_u: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s_max: Option<f64>,
    #[arg(long)]
    pub s_step: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub i_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub i_max: Option<f64>,
    #[arg(long)]
    pub i_step: Option<f64>,
    /// Omit the zero-interference row.
    #[arg(long)]
    pub no_zero_row: bool,
    /// Comma-separated sample counts of the escalation ladder.
    #[arg(long)]
    pub stages: Option<String>,
    #[arg(long)]
    pub chunk: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write a CSV export.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AllocateArgs {
    /// Channel file: `gamma_e` (or `gamma_e_db`) list and `rho_u` (or `rho_u_db`).
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long)]
    pub table: PathBuf,
    /// n-fea, n-heu or oma.
    #[arg(long, default_value = "n-fea")]
    pub scheme: String,
    #[arg(long)]
    pub urllc_share: Option<f64>,
    #[arg(long, default_value = "worst-for-embb")]
    pub oma_partition: String,
    #[arg(long, default_value_t = 6.0)]
    pub r_e: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r_u: f64,
    #[arg(long)]
    pub eps_u: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub minislots: usize,
    /// Monte Carlo samples for the outage check (0 skips it).
    #[arg(long, default_value_t = 100_000)]
    pub verify_samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// default, desk or paper.
    #[arg(long, default_value = "desk")]
    pub profile: String,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Extra `key=value` overrides.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Table directory (default: $NOMA_SLICING_TABLE_DIR or ./tables).
    #[arg(long)]
    pub tables: Option<PathBuf>,
    #[arg(long)]
    pub build_missing: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub table: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub table: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub tables: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub seed: u64,
    pub tool_version: String,
    pub duration_s: f64,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn digest(path: &Path) -> Result<FileDigest> {
    Ok(FileDigest {
        path: path.display().to_string(),
        sha256: sha256_file(path)?,
    })
}

impl RunManifest {
    fn new(command: &str, config: Vec<(String, String)>, seed: u64) -> Self {
        RunManifest {
            command: command.into(),
            config,
            tables: Vec::new(),
            outputs: Vec::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            duration_s: 0.0,
        }
    }

    /// Path of the manifest that accompanies `output`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut s = output.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    }

    fn write(&mut self, output: &Path, started: Instant) -> Result<()> {
        self.duration_s = started.elapsed().as_secs_f64();
        let path = Self::path_for(output);
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))?;
        std::fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn flag_err(flag: &str, e: Error) -> Error {
    match e {
        Error::Config(m) => Error::Config(format!("{flag}: {m}")),
        other => other,
    }
}

/// Resolves table-build settings: defaults, then the file, then flags.
pub fn table_meta_from(args: &TableBuildArgs) -> Result<TableMeta> {
    let mut kv = KvConfig::default();
    if let Some(p) = &args.config {
        kv.merge(&KvConfig::load(p)?);
    }
    let mut set = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            kv.set(k, v);
        }
    };
    set("f_u", args.f_u.map(|x| x.to_string()));
    set("r_bar_u", args.r_bar_u.map(|x| x.to_string()));
    set("eps_target", args.eps.map(|x| x.to_string()));
    set("s_min_db", args.s_min.map(|x| x.to_string()));
    set("s_max_db", args.s_max.map(|x| x.to_string()));
    set("s_step_db", args.s_step.map(|x| x.to_string()));
    set("i_min_db", args.i_min.map(|x| x.to_string()));
    set("i_max_db", args.i_max.map(|x| x.to_string()));
    set("i_step_db", args.i_step.map(|x| x.to_string()));
    set("stages", args.stages.clone());
    set("chunk", args.chunk.map(|x| x.to_string()));
    set("seed", args.seed.map(|x| x.to_string()));
    if args.no_zero_row {
        kv.set("zero_row", "false");
    }

    let mut grid = GridSpec::default();
    let mut f_u = 1usize;
    let mut r_bar = None;
    let mut r_u = 1.0;
    let mut eps = 1e-5;
    let mut stages = None;
    let mut chunk = None;
    let mut seed = 1u64;
    for (k, v) in kv.iter() {
        match k {
            "f_u" => f_u = parse_value(k, v)?,
            "r_bar_u" => r_bar = Some(parse_value(k, v)?),
            "r_u" => r_u = parse_value(k, v)?,
            "eps_target" | "eps" => eps = parse_value(k, v)?,
            "s_min_db" => grid.s_min_db = parse_value(k, v)?,
            "s_max_db" => grid.s_max_db = parse_value(k, v)?,
            "s_step_db" => grid.s_step_db = parse_value(k, v)?,
            "i_min_db" => grid.i_min_db = parse_value(k, v)?,
            "i_max_db" => grid.i_max_db = parse_value(k, v)?,
            "i_step_db" => grid.i_step_db = parse_value(k, v)?,
            "zero_row" => grid.zero_row = parse_value(k, v)?,
            "stages" => {
                let raw: Vec<f64> = parse_list(k, v)?;
                stages = Some(raw.iter().map(|x| *x as u64).collect::<Vec<_>>());
            }
            "chunk" => chunk = Some(parse_value(k, v)?),
            "seed" | "base_seed" => seed = parse_value(k, v)?,
            other => return Err(Error::Config(format!("unknown table key {other:?}"))),
        }
    }
    if f_u == 0 {
        return Err(Error::Config("--f-u: must be at least 1".into()));
    }
    grid.s_grid_db().map_err(|e| flag_err("--s-min/--s-max/--s-step", e))?;
    grid.i_grid_db().map_err(|e| flag_err("--i-min/--i-max/--i-step", e))?;
    let mut meta = TableMeta::new(f_u, r_bar.unwrap_or(r_u / f_u as f64), eps, grid, seed);
    if let Some(s) = stages {
        meta.stages = s;
    }
    if let Some(c) = chunk {
        meta.chunk = c;
    }
    meta.check().map_err(|e| flag_err("table settings", e))?;
    Ok(meta)
}

pub fn cmd_table_build(args: &TableBuildArgs) -> Result<String> {
    let started = Instant::now();
    let meta = table_meta_from(args)?;
    let seed = meta.base_seed;
    let (table, stats) = build_table(meta)?;
    write_file(&args.out, &crate::outage::table_to_bytes(&table))?;
    let mut manifest = RunManifest::new("table-build", table_config(&table.meta), seed);
    manifest.outputs.push(digest(&args.out)?);
    if let Some(csv) = &args.csv {
        let mut buf = Vec::new();
        write_csv(&table, &mut buf).map_err(|e| Error::io(csv, e))?;
        write_file(csv, &buf)?;
        manifest.outputs.push(digest(csv)?);
    }
    manifest.write(&args.out, started)?;

    let mut out = String::new();
    let _ = writeln!(out, "wrote {}", args.out.display());
    let _ = writeln!(out, "cells: {} ({} x {})", stats.cells, table.s_db.len(), table.i_db.len());
    for (stage, count) in table.meta.stages.iter().zip(&stats.stopped_at_stage) {
        let _ = writeln!(out, "  stopped at n={stage}: {count}");
    }
    let _ = writeln!(out, "total samples: {}", stats.total_samples);
    for issue in &stats.row_issues {
        let _ = writeln!(out, "  note: {issue:?}");
    }
    let _ = writeln!(out, "duration: {:.1} s", started.elapsed().as_secs_f64());
    Ok(out)
}

fn table_config(m: &TableMeta) -> Vec<(String, String)> {
    let g = &m.grid;
    [
        ("f_u", m.f_u.to_string()),
        ("r_bar_u", m.r_bar_u.to_string()),
        ("eps_target", m.eps_target.to_string()),
        ("stages", format!("{:?}", m.stages)),
        ("chunk", m.chunk.to_string()),
        ("s_grid", format!("{}..{} step {}", g.s_min_db, g.s_max_db, g.s_step_db)),
        ("i_grid", format!("{}..{} step {} zero_row={}", g.i_min_db, g.i_max_db, g.i_step_db, g.zero_row)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// Reads a channel file: `gamma_e` / `gamma_e_db` and `rho_u` / `rho_u_db`.
pub fn read_channel(path: &Path) -> Result<ChannelState> {
    let kv = KvConfig::load(path)?;
    let from_db = |x: f64| 10f64.powf(x / 10.0);
    let gamma: Vec<f64> = match (kv.get("gamma_e"), kv.get("gamma_e_db")) {
        (Some(v), None) => parse_list("gamma_e", v)?,
        (None, Some(v)) => parse_list::<f64>("gamma_e_db", v)?.into_iter().map(from_db).collect(),
        _ => return Err(Error::Config(format!("{}: give exactly one of gamma_e, gamma_e_db", path.display()))),
    };
    let rho = match (kv.get("rho_u"), kv.get("rho_u_db")) {
        (Some(v), None) => parse_value("rho_u", v)?,
        (None, Some(v)) => from_db(parse_value("rho_u_db", v)?),
        _ => return Err(Error::Config(format!("{}: give exactly one of rho_u, rho_u_db", path.display()))),
    };
    ChannelState::new(gamma, rho)
}

fn dbm(x: f64) -> String {
    if x > 0.0 {
        format!("{:.3}", mw_to_dbm_lossy(x))
    } else {
        "-inf".into()
    }
}

fn allocation_report(r: &AllocationResult, check: Option<(f64, f64)>, eps: f64) -> String {
    let mut s = String::new();
    let g = &r.grid;
    let _ = writeln!(s, "scheme: {} ({} grid, F_e={}, F_u={})", r.scheme, g.mode, g.f_e(), g.f_u());
    if let Some(f) = r.diagnostics.worst_fr {
        let _ = writeln!(s, "worst-interference resource f*: {f}");
    }
    let _ = writeln!(s, "{:>3} {:>10} {:>10} {:>10}", "fr", "P_e dBm", "P_sic dBm", "P_u dBm");
    for f in 0..g.frs {
        let _ = writeln!(
            s,
            "{:>3} {:>10} {:>10} {:>10}",
            f,
            dbm(r.alloc.p_e[f]),
            dbm(r.p_u_sic[f]),
            dbm(r.alloc.p_u[f])
        );
    }
    let _ = writeln!(s, "P_e total: {} dBm", dbm(r.p_e_tot));
    let _ = writeln!(s, "P_u total: {} dBm", dbm(r.p_u_tot));
    let _ = writeln!(s, "P total:   {} dBm", dbm(r.p_tot));
    if let Some((est, up)) = check {
        let verdict = if up <= eps { "meets" } else { "does not certify" };
        let _ = writeln!(s, "verified outage: {est:e} (95% upper {up:e}) {verdict} eps_u={eps:e}");
    }
    s
}

fn allocation_csv(r: &AllocationResult) -> String {
    let mut s = String::from("fr,p_e_mw,p_u_sic_mw,p_u_mw\n");
    for f in 0..r.grid.frs {
        let _ = writeln!(s, "{f},{},{},{}", r.alloc.p_e[f], r.p_u_sic[f], r.alloc.p_u[f]);
    }
    s
}

pub fn cmd_allocate(args: &AllocateArgs) -> Result<String> {
    let started = Instant::now();
    let channel = read_channel(&args.channel)?;
    let table = read_table(&args.table)?;
    let req = ServiceRequirements {
        r_e: args.r_e,
        r_u: args.r_u,
        eps_u: args.eps_u.unwrap_or(table.meta.eps_target),
        ..Default::default()
    };
    let frs = channel.gamma_e().len();
    let result = match args.scheme.as_str() {
        "n-fea" => allocate_nfea(&channel, &ResourceGrid::noma(frs, args.minislots), &req, &table)?,
        "n-heu" => allocate_nheu(&channel, &ResourceGrid::noma(frs, args.minislots), &req, &table)?,
        "oma" => {
            let share = args
                .urllc_share
                .ok_or_else(|| Error::Config("--urllc-share is required with --scheme oma".into()))?;
            let seed = rng::derive(args.seed, &[rng::label("oma-partition")]);
            let policy = OmaPartition::parse(&args.oma_partition, seed)?;
            allocate_oma(&channel, frs, args.minislots, &req, &table, share, policy)?
        }
        other => return Err(Error::Config(format!("--scheme: unknown scheme {other:?} (n-fea, n-heu, oma)"))),
    };
    let check = if args.verify_samples > 0 {
        let v = verify_outage(&result, &channel, &req, args.verify_samples, rng::derive(args.seed, &[rng::label("verify")]))?;
        Some((v.estimate, v.upper95))
    } else {
        None
    };
    let report = allocation_report(&result, check, req.eps_u);
    if let Some(csv) = &args.csv {
        write_file(csv, allocation_csv(&result).as_bytes())?;
        let config = vec![
            ("channel".to_string(), args.channel.display().to_string()),
            ("scheme".to_string(), args.scheme.clone()),
            ("urllc_share".to_string(), format!("{:?}", args.urllc_share)),
            ("oma_partition".to_string(), args.oma_partition.clone()),
            ("r_e".to_string(), args.r_e.to_string()),
            ("r_u".to_string(), args.r_u.to_string()),
            ("eps_u".to_string(), req.eps_u.to_string()),
            ("minislots".to_string(), args.minislots.to_string()),
            ("verify_samples".to_string(), args.verify_samples.to_string()),
        ];
        let mut m = RunManifest::new("allocate", config, args.seed);
        m.tables.push(digest(&args.table)?);
        m.outputs.push(digest(csv)?);
        m.write(csv, started)?;
    }
    Ok(report)
}

/// Resolves a scenario: profile, then config file, then `--set`, then `--seed`.
pub fn scenario_from(args: &SimulateArgs) -> Result<ScenarioConfig> {
    let mut kv = KvConfig::default();
    if let Some(p) = &args.config {
        kv.merge(&KvConfig::load(p)?);
    }
    let profile = kv.get("profile").unwrap_or(&args.profile).to_string();
    let mut cfg = ScenarioConfig::profile(&profile)?;
    for o in &args.overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set: expected KEY=VALUE, got {o:?}")))?;
        kv.set(k.trim(), v.trim());
    }
    if let Some(s) = args.seed {
        kv.set("seed", s.to_string());
    }
    cfg.apply(&kv)?;
    Ok(cfg)
}

pub fn default_table_dir() -> PathBuf {
    std::env::var_os(TABLE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("tables"))
}

/// Companion file with the per-scheme eMBB means.
pub fn embb_summary_path(out: &Path) -> PathBuf {
    out.with_extension("embb.csv")
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<String> {
    let started = Instant::now();
    let cfg = scenario_from(args)?;
    let dir = args.tables.clone().unwrap_or_else(default_table_dir);
    let (tables, sources) = load_tables(&cfg, &dir, args.build_missing)?;
    let sweep = run_sweep(&cfg, &tables)?;
    write_file(&args.out, sweep_csv(&sweep).as_bytes())?;
    let summary = embb_summary_path(&args.out);
    write_file(&summary, embb_summary_csv(&sweep).as_bytes())?;

    let config = cfg.to_kv().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let mut m = RunManifest::new("simulate", config, cfg.seed);
    for s in &sources {
        m.tables.push(digest(&s.path)?);
    }
    m.outputs.push(digest(&args.out)?);
    m.outputs.push(digest(&summary)?);
    m.write(&args.out, started)?;

    let mut out = String::new();
    for s in &sources {
        let how = if s.built.is_some() { "built" } else { "loaded" };
        let _ = writeln!(out, "{how} {}", s.path.display());
    }
    let _ = writeln!(out, "wrote {} ({} records)", args.out.display(), sweep.records.len());
    for (name, p) in sweep.embb_summary() {
        let _ = writeln!(out, "  mean eMBB power {name}: {p:.2} dBm");
    }
    let _ = writeln!(out, "duration: {:.1} s", started.elapsed().as_secs_f64());
    Ok(out)
}

/// Returns the report text and whether every check passed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let table = read_table(&args.table)?;
    let report = verify_table(&table);
    let mut out = String::new();
    for c in &report.checks {
        let _ = writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok((out, report.passed()))
}

pub fn cmd_export_csv(args: &ExportArgs) -> Result<String> {
    let table = read_table(&args.table)?;
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).map_err(|e| Error::io(&args.out, e))?;
    write_file(&args.out, &buf)?;
    Ok(format!("wrote {}\n", args.out.display()))
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be at least 1");
            return exit::CONFIG;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} workers: {e}");
            return exit::CONFIG;
        }
    }
    let result = match &cli.command {
        Command::TableBuild(a) => cmd_table_build(a).map(|s| (s, true)),
        Command::Allocate(a) => cmd_allocate(a).map(|s| (s, true)),
        Command::Simulate(a) => cmd_simulate(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::ExportCsv(a) => cmd_export_csv(a).map(|s| (s, true)),
    };
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                exit::OK
            } else {
                exit::FAILED_CHECK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    run(Cli::parse())
}
