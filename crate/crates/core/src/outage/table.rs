//! Tabulated outage over the normalized `(s, i)` plane.
//!
//! Cells are estimated row by row (fixed interference) with escalating sample
//! counts. A cell keeps escalating only while its confidence interval
//! straddles the target outage, and a cell whose row already has a smaller
//! signal resolved below the target is left at the base count: the outage
//! is nonincreasing in `s`, so that earlier bound already covers it.

use rayon::prelude::*;

use super::mc::{count_events, McEstimate};
use super::outage_closed_form_1fr;
use crate::error::{Error, Result};
use crate::rng;
use crate::stats::{self, Side};

pub const TABLE_VERSION: u32 = 1;

/// dB-spaced grid axes. The interference axis may start with an exact-zero row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub s_min_db: f64,
    pub s_max_db: f64,
    pub s_step_db: f64,
    pub i_min_db: f64,
    pub i_max_db: f64,
    pub i_step_db: f64,
    pub zero_row: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            s_min_db: -20.0,
            s_max_db: 70.0,
            s_step_db: 0.25,
            i_min_db: -20.0,
            i_max_db: 60.0,
            i_step_db: 1.0,
            zero_row: true,
        }
    }
}

fn axis(name: &str, min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && step.is_finite()) || step <= 0.0 || max < min {
        return Err(Error::Config(format!(
            "{name} axis needs finite min <= max and step > 0 (got {min}..{max} step {step})"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| min + k as f64 * step).collect())
}

impl GridSpec {
    pub fn s_grid_db(&self) -> Result<Vec<f64>> {
        axis("s", self.s_min_db, self.s_max_db, self.s_step_db)
    }

    pub fn i_grid_db(&self) -> Result<Vec<f64>> {
        let mut v = if self.zero_row { vec![f64::NEG_INFINITY] } else { Vec::new() };
        v.extend(axis("i", self.i_min_db, self.i_max_db, self.i_step_db)?);
        Ok(v)
    }
}

/// Everything needed to rebuild a table bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct TableMeta {
    pub version: u32,
    pub f_u: usize,
    pub r_bar_u: f64,
    pub eps_target: f64,
    /// Escalation ladder of cumulative sample counts.
    pub stages: Vec<u64>,
    pub base_seed: u64,
    pub chunk: u64,
    pub grid: GridSpec,
}

impl TableMeta {
    pub fn new(f_u: usize, r_bar_u: f64, eps_target: f64, grid: GridSpec, base_seed: u64) -> Self {
        TableMeta {
            version: TABLE_VERSION,
            f_u,
            r_bar_u,
            eps_target,
            stages: vec![100_000, 1_000_000, 10_000_000],
            base_seed,
            chunk: super::DEFAULT_CHUNK,
            grid,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.f_u == 0 {
            return Err(Error::Config("f_u must be at least 1".into()));
        }
        if !(self.r_bar_u > 0.0) {
            return Err(Error::Config(format!("r_bar_u = {} must be > 0", self.r_bar_u)));
        }
        if !(self.eps_target > 0.0 && self.eps_target < 1.0) {
            return Err(Error::Config(format!("eps_target = {} not in (0, 1)", self.eps_target)));
        }
        if self.stages.is_empty() || self.stages[0] == 0 || self.stages.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(format!(
                "stages must be positive and strictly increasing (got {:?})",
                self.stages
            )));
        }
        if self.chunk == 0 {
            return Err(Error::Config("chunk must be positive".into()));
        }
        Ok(())
    }
}

/// One table cell. `events`/`samples` are the raw Monte Carlo counts;
/// `estimate`/`upper95` are the clamped values used for lookups.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub estimate: f64,
    pub upper95: f64,
    pub events: u64,
    pub samples: u64,
}

impl Cell {
    pub fn raw_estimate(&self) -> f64 {
        self.events as f64 / self.samples as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutageTable {
    pub meta: TableMeta,
    pub s_db: Vec<f64>,
    pub i_db: Vec<f64>,
    /// s-major: `cells[si * i_db.len() + ii]`.
    pub cells: Vec<Cell>,
}

/// A row whose grid does not bracket the target outage.
#[derive(Debug, Clone, PartialEq)]
pub enum RowIssue {
    /// Even the largest tabulated signal is not certified below the target.
    NeverBelow { i_db: f64 },
    /// The smallest tabulated signal is already below the target.
    AlwaysBelow { i_db: f64 },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BuildStats {
    pub cells: usize,
    /// Cells that stopped at each stage of the ladder.
    pub stopped_at_stage: Vec<usize>,
    pub total_samples: u64,
    pub row_issues: Vec<RowIssue>,
}

fn cell_seed(meta: &TableMeta, s_db: f64, i_db: f64) -> u64 {
    rng::derive(
        meta.base_seed,
        &[
            rng::label("outage-table"),
            meta.f_u as u64,
            meta.r_bar_u.to_bits(),
            s_db.to_bits(),
            i_db.to_bits(),
        ],
    )
}

fn db_to_lin(db: f64) -> f64 {
    if db == f64::NEG_INFINITY {
        0.0
    } else {
        10f64.powf(db / 10.0)
    }
}

/// Estimates one interference row; returns raw counts and the stage index each cell stopped at.
fn build_row(meta: &TableMeta, s_db: &[f64], i_db: f64) -> Vec<(u64, u64, usize)> {
    let i_lin = db_to_lin(i_db);
    let i = vec![i_lin; meta.f_u];
    let mut dominated = false;
    let mut out = Vec::with_capacity(s_db.len());
    for &sdb in s_db {
        let s = vec![db_to_lin(sdb); meta.f_u];
        let seed = cell_seed(meta, sdb, i_db);
        let mut n = meta.stages[0];
        let mut k = count_events(&s, &i, meta.r_bar_u, seed, meta.chunk, 0..n);
        let mut stage = 0;
        if !dominated {
            while stats::side_of(k, n, meta.eps_target) == Side::Straddles && stage + 1 < meta.stages.len() {
                let next = meta.stages[stage + 1];
                k += count_events(&s, &i, meta.r_bar_u, seed, meta.chunk, n..next);
                n = next;
                stage += 1;
            }
            if stats::side_of(k, n, meta.eps_target) == Side::Below {
                dominated = true;
            }
        }
        out.push((k, n, stage));
    }
    out
}

/// Builds the outage table described by `meta`.
pub fn build_table(meta: TableMeta) -> Result<(OutageTable, BuildStats)> {
    meta.check()?;
    let s_db = meta.grid.s_grid_db()?;
    let i_db = meta.grid.i_grid_db()?;
    let rows: Vec<Vec<(u64, u64, usize)>> = i_db.par_iter().map(|&idb| build_row(&meta, &s_db, idb)).collect();

    let (ns, ni) = (s_db.len(), i_db.len());
    let mut stats = BuildStats {
        cells: ns * ni,
        stopped_at_stage: vec![0; meta.stages.len()],
        ..Default::default()
    };
    let mut cells = vec![
        Cell {
            estimate: 0.0,
            upper95: 0.0,
            events: 0,
            samples: 0
        };
        ns * ni
    ];
    for (ii, row) in rows.iter().enumerate() {
        for (si, &(k, n, stage)) in row.iter().enumerate() {
            let est = McEstimate::from_counts(k, n);
            cells[si * ni + ii] = Cell {
                estimate: est.estimate,
                upper95: est.upper95,
                events: k,
                samples: n,
            };
            stats.stopped_at_stage[stage] += 1;
            stats.total_samples += n;
        }
    }
    let mut table = OutageTable { meta, s_db, i_db, cells };
    table.clamp_monotone();
    for ii in 0..ni {
        let eps = table.meta.eps_target;
        let row_db = table.i_db[ii];
        if table.cell(0, ii).upper95 <= eps {
            stats.row_issues.push(RowIssue::AlwaysBelow { i_db: row_db });
        } else if table.cell(ns - 1, ii).upper95 > eps {
            stats.row_issues.push(RowIssue::NeverBelow { i_db: row_db });
        }
    }
    Ok((table, stats))
}

/// Pool-adjacent-violators fit of a nonincreasing sequence.
fn pava_nonincreasing(values: &[f64], weights: &[f64]) -> Vec<f64> {
    // blocks of (mean, weight, len)
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(values.len());
    for (&v, &w) in values.iter().zip(weights) {
        blocks.push((v, w, 1));
        while blocks.len() >= 2 {
            let b = blocks[blocks.len() - 1];
            let a = blocks[blocks.len() - 2];
            if a.0 >= b.0 {
                break;
            }
            let w = a.1 + b.1;
            let merged = ((a.0 * a.1 + b.0 * b.1) / w, w, a.2 + b.2);
            blocks.pop();
            *blocks.last_mut().unwrap() = merged;
        }
    }
    blocks.iter().flat_map(|&(m, _, len)| std::iter::repeat_n(m, len)).collect()
}

impl OutageTable {
    pub fn cell(&self, si: usize, ii: usize) -> &Cell {
        &self.cells[si * self.i_db.len() + ii]
    }

    fn cell_mut(&mut self, si: usize, ii: usize) -> &mut Cell {
        let ni = self.i_db.len();
        &mut self.cells[si * ni + ii]
    }

    /// Makes estimates and bounds nonincreasing in `s` and nondecreasing in `i`.
    ///
    /// Upper bounds take the running minimum over cells with smaller `s` and
    /// larger `i` (each of those bounds the outage of this cell from above).
    /// Estimates get a weighted isotonic fit per row, then a running maximum
    /// over rows, and never exceed the clamped bound.
    pub fn clamp_monotone(&mut self) {
        let (ns, ni) = (self.s_db.len(), self.i_db.len());
        for ii in 0..ni {
            for si in 1..ns {
                let prev = self.cell(si - 1, ii).upper95;
                let c = self.cell_mut(si, ii);
                c.upper95 = c.upper95.min(prev);
            }
        }
        for ii in (0..ni.saturating_sub(1)).rev() {
            for si in 0..ns {
                let above = self.cell(si, ii + 1).upper95;
                let c = self.cell_mut(si, ii);
                c.upper95 = c.upper95.min(above);
            }
        }
        for ii in 0..ni {
            let raw: Vec<f64> = (0..ns).map(|si| self.cell(si, ii).raw_estimate()).collect();
            let w: Vec<f64> = (0..ns).map(|si| self.cell(si, ii).samples as f64).collect();
            for (si, v) in pava_nonincreasing(&raw, &w).into_iter().enumerate() {
                self.cell_mut(si, ii).estimate = v;
            }
        }
        for ii in 1..ni {
            for si in 0..ns {
                let below = self.cell(si, ii - 1).estimate;
                let c = self.cell_mut(si, ii);
                c.estimate = c.estimate.max(below);
            }
        }
        for c in &mut self.cells {
            c.estimate = c.estimate.min(c.upper95);
        }
    }

    /// Interference row at or above `i` (normalized, linear).
    pub fn row_for(&self, i: f64) -> Result<usize> {
        if !(i >= 0.0) {
            return Err(Error::Domain(format!("normalized interference {i} must be >= 0")));
        }
        if i == 0.0 && self.i_db[0] == f64::NEG_INFINITY {
            return Ok(0);
        }
        let i_db = 10.0 * i.log10();
        let max_db = *self.i_db.last().unwrap();
        // grid lines reproduced through dB -> linear -> dB stay on their line
        self.i_db
            .iter()
            .position(|&g| g >= i_db - 1e-9)
            .ok_or(Error::InterferenceBeyondGrid {
                interference_db: i_db,
                max_db,
            })
    }

    /// Conservative table value of the un-normalized outage function:
    /// signal rounded down, interference rounded up, upper confidence bound.
    pub fn o_hat(&self, p_u: f64, p_e: f64, rho_u: f64, f_u: usize, r_bar_u: f64) -> Result<f64> {
        self.check_matches(f_u, r_bar_u)?;
        let ii = self.row_for(rho_u * p_e)?;
        let s_db = 10.0 * (rho_u * p_u).log10();
        match self.s_db.iter().rposition(|&g| g <= s_db + 1e-9) {
            Some(si) => Ok(self.cell(si, ii).upper95),
            None => Ok(1.0),
        }
    }

    pub fn check_matches(&self, f_u: usize, r_bar_u: f64) -> Result<()> {
        if self.meta.f_u != f_u || (self.meta.r_bar_u - r_bar_u).abs() > 1e-12 * r_bar_u {
            return Err(Error::TableMismatch(format!(
                "table is for F_u={}, r_bar_u={} but F_u={f_u}, r_bar_u={r_bar_u} was requested",
                self.meta.f_u, self.meta.r_bar_u
            )));
        }
        Ok(())
    }
}

/// Result of a minimum-power lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lookup {
    /// URLLC power [mW].
    pub p_u: f64,
    pub s_db: f64,
    pub i_db: f64,
    pub si: usize,
    pub ii: usize,
}

/// Smallest tabulated URLLC power whose certified outage is within `eps_u`
/// at the given eMBB interference power.
pub fn min_power_lookup(table: &OutageTable, p_e_interference: f64, rho_u: f64, eps_u: f64) -> Result<Lookup> {
    if !(rho_u > 0.0) {
        return Err(Error::Domain(format!("rho_u = {rho_u} must be > 0")));
    }
    if eps_u < table.meta.eps_target {
        return Err(Error::TableMismatch(format!(
            "requested outage {eps_u:e} is below the table target {:e}",
            table.meta.eps_target
        )));
    }
    let ii = table.row_for(rho_u * p_e_interference)?;
    let si = (0..table.s_db.len())
        .find(|&si| table.cell(si, ii).upper95 <= eps_u)
        .ok_or(Error::InfeasibleRow {
            eps: eps_u,
            row_db: table.i_db[ii],
            fr: None,
        })?;
    let s_db = table.s_db[si];
    Ok(Lookup {
        p_u: db_to_lin(s_db) / rho_u,
        s_db,
        i_db: table.i_db[ii],
        si,
        ii,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub checks: Vec<TableCheck>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Consistency checks on a loaded table.
///
/// The single-resource comparison uses a Bonferroni-corrected z over all
/// cells, so a correct table of any size passes with probability ~0.999.
pub fn verify_table(table: &OutageTable) -> TableReport {
    let mut checks = Vec::new();
    let (ns, ni) = (table.s_db.len(), table.i_db.len());

    let header = super::io::header_text(table);
    let round_trip = super::io::parse_header(&header)
        .map(|(meta, s, i)| meta == table.meta && bits_eq(&s, &table.s_db) && bits_eq(&i, &table.i_db))
        .unwrap_or(false);
    checks.push(TableCheck {
        name: "header round-trip",
        passed: round_trip,
        detail: if round_trip { "ok".into() } else { "header does not reproduce itself".into() },
    });

    let mut bad_range = None;
    for si in 0..ns {
        for ii in 0..ni {
            let c = table.cell(si, ii);
            let ok = (0.0..=1.0).contains(&c.estimate)
                && (0.0..=1.0).contains(&c.upper95)
                && c.samples > 0
                && c.events <= c.samples;
            if !ok && bad_range.is_none() {
                bad_range = Some((si, ii));
            }
        }
    }
    checks.push(TableCheck {
        name: "value range",
        passed: bad_range.is_none(),
        detail: match bad_range {
            None => "ok".into(),
            Some((si, ii)) => format!("cell (s={} dB, i={} dB) is out of range", table.s_db[si], table.i_db[ii]),
        },
    });

    let mut bad_mono = None;
    'outer: for si in 0..ns {
        for ii in 0..ni {
            let c = table.cell(si, ii);
            let next_s = (si + 1 < ns).then(|| table.cell(si + 1, ii));
            let next_i = (ii + 1 < ni).then(|| table.cell(si, ii + 1));
            let s_bad = next_s.is_some_and(|n| n.estimate > c.estimate || n.upper95 > c.upper95);
            let i_bad = next_i.is_some_and(|n| n.estimate < c.estimate || n.upper95 < c.upper95);
            if s_bad || i_bad {
                bad_mono = Some((si, ii, s_bad));
                break 'outer;
            }
        }
    }
    checks.push(TableCheck {
        name: "monotonicity",
        passed: bad_mono.is_none(),
        detail: match bad_mono {
            None => "ok".into(),
            Some((si, ii, along_s)) => format!(
                "cell (s={} dB, i={} dB) breaks monotonicity along {}",
                table.s_db[si],
                table.i_db[ii],
                if along_s { "s" } else { "i" }
            ),
        },
    });

    if table.meta.f_u == 1 {
        let z = bonferroni_z(ns * ni);
        let mut worst: Option<(f64, usize, usize)> = None;
        let mut failures = 0;
        for si in 0..ns {
            for ii in 0..ni {
                let c = table.cell(si, ii);
                let exact = outage_closed_form_1fr(db_to_lin(table.s_db[si]), db_to_lin(table.i_db[ii]), table.meta.r_bar_u);
                let sd = stats::binomial_sd(exact, c.samples);
                let dev = (c.raw_estimate() - exact).abs();
                let score = if sd > 0.0 { dev / sd } else if dev > 0.0 { f64::INFINITY } else { 0.0 };
                if score > z {
                    failures += 1;
                }
                if worst.is_none_or(|w| score > w.0) {
                    worst = Some((score, si, ii));
                }
            }
        }
        let (score, si, ii) = worst.unwrap();
        checks.push(TableCheck {
            name: "closed-form agreement",
            passed: failures == 0,
            detail: format!(
                "{failures} cells beyond {z:.2} sd; worst {score:.2} sd at (s={} dB, i={} dB)",
                table.s_db[si], table.i_db[ii]
            ),
        });
    }
    TableReport { checks }
}

fn bits_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Two-sided normal quantile giving family-wise error 1e-3 over `cells` tests.
fn bonferroni_z(cells: usize) -> f64 {
    use statrs::distribution::{ContinuousCDF, Normal};
    let alpha = 1e-3 / cells.max(1) as f64;
    Normal::standard().inverse_cdf(1.0 - alpha / 2.0).max(3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_meta(f_u: usize, r_bar: f64, eps: f64) -> TableMeta {
        let mut m = TableMeta::new(
            f_u,
            r_bar,
            eps,
            GridSpec {
                s_min_db: -5.0,
                s_max_db: 40.0,
                s_step_db: 1.0,
                i_min_db: -10.0,
                i_max_db: 10.0,
                i_step_db: 5.0,
                zero_row: true,
            },
            11,
        );
        m.stages = vec![2_000, 20_000, 200_000];
        m.chunk = 4096;
        m
    }

    #[test]
    fn grid_axes() {
        let g = GridSpec::default();
        let s = g.s_grid_db().unwrap();
        assert_eq!(s.len(), 361);
        assert_eq!(s[0], -20.0);
        assert_eq!(*s.last().unwrap(), 70.0);
        let i = g.i_grid_db().unwrap();
        assert_eq!(i.len(), 82);
        assert_eq!(i[0], f64::NEG_INFINITY);
        assert_eq!(i[1], -20.0);
        let bad = GridSpec {
            s_max_db: -30.0,
            ..g
        };
        assert!(bad.s_grid_db().is_err());
    }

    #[test]
    fn pava_fits_nonincreasing() {
        let fit = pava_nonincreasing(&[1.0, 0.5, 0.7, 0.2, 0.3, 0.1], &[1.0; 6]);
        assert_eq!(fit, vec![1.0, 0.6, 0.6, 0.25, 0.25, 0.1]);
        for w in fit.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn built_table_is_monotone_and_vanishes() {
        let (t, stats) = build_table(small_meta(2, 0.5, 1e-2)).unwrap();
        assert!(verify_table(&t).passed(), "{:?}", verify_table(&t));
        let ni = t.i_db.len();
        for ii in 0..ni {
            assert!(t.cell(t.s_db.len() - 1, ii).estimate < 1e-3);
        }
        assert_eq!(stats.cells, t.cells.len());
        assert_eq!(stats.stopped_at_stage.iter().sum::<usize>(), t.cells.len());
    }

    #[test]
    fn single_fr_table_agrees_with_closed_form() {
        let (t, _) = build_table(small_meta(1, 1.0, 1e-2)).unwrap();
        for si in 0..t.s_db.len() {
            for ii in 0..t.i_db.len() {
                let c = t.cell(si, ii);
                let exact = outage_closed_form_1fr(db_to_lin(t.s_db[si]), db_to_lin(t.i_db[ii]), 1.0);
                let sd = stats::binomial_sd(exact, c.samples);
                // 138 cells: allow a Bonferroni-sized band
                assert!((c.raw_estimate() - exact).abs() <= 4.0 * sd.max(1e-12), "cell ({si},{ii})");
            }
        }
        let report = verify_table(&t);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn lookup_rounds_conservatively() {
        let (t, _) = build_table(small_meta(1, 1.0, 1e-2)).unwrap();
        let rho = 1e3;
        // zero interference uses the exact-zero row
        let l = min_power_lookup(&t, 0.0, rho, 1e-2).unwrap();
        assert_eq!(l.ii, 0);
        let s_star = super::super::min_signal_1fr(1e-2, 1.0);
        assert!(db_to_lin(l.s_db) >= s_star);
        assert!(t.cell(l.si, 0).upper95 <= 1e-2);
        assert!(l.si == 0 || t.cell(l.si - 1, 0).upper95 > 1e-2);
        // interference between rows rounds up
        let l2 = min_power_lookup(&t, db_to_lin(-7.0) / rho, rho, 1e-2).unwrap();
        assert_eq!(l2.i_db, -5.0);
        // eps = 1 accepts the smallest signal
        let l3 = min_power_lookup(&t, 0.0, rho, 1.0).unwrap();
        assert_eq!(l3.si, 0);
        // beyond the grid
        assert!(matches!(
            min_power_lookup(&t, db_to_lin(11.0) / rho, rho, 1e-2),
            Err(Error::InterferenceBeyondGrid { .. })
        ));
        // below the table target
        assert!(min_power_lookup(&t, 0.0, rho, 1e-3).is_err());
    }

    #[test]
    fn lookup_scales_with_rho() {
        let (t, _) = build_table(small_meta(1, 1.0, 1e-2)).unwrap();
        let a = min_power_lookup(&t, 0.0, 100.0, 1e-2).unwrap();
        let b = min_power_lookup(&t, 0.0, 200.0, 1e-2).unwrap();
        assert_eq!(a.si, b.si);
        assert!((b.p_u * 2.0 - a.p_u).abs() < 1e-12 * a.p_u);
    }

    #[test]
    fn infeasible_row_is_reported() {
        let mut m = small_meta(1, 1.0, 1e-2);
        m.grid.s_max_db = 5.0;
        let (t, stats) = build_table(m).unwrap();
        assert!(stats.row_issues.iter().all(|r| matches!(r, RowIssue::NeverBelow { .. })));
        assert_eq!(stats.row_issues.len(), t.i_db.len());
        assert!(matches!(min_power_lookup(&t, 0.0, 1.0, 1e-2), Err(Error::InfeasibleRow { .. })));
    }

    #[test]
    fn rebuild_is_identical() {
        let (a, _) = build_table(small_meta(3, 1.0 / 3.0, 1e-2)).unwrap();
        let (b, _) = build_table(small_meta(3, 1.0 / 3.0, 1e-2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn o_hat_is_conservative() {
        let (t, _) = build_table(small_meta(1, 1.0, 1e-2)).unwrap();
        let exact = outage_closed_form_1fr(db_to_lin(20.5), db_to_lin(2.0), 1.0);
        let v = t.o_hat(db_to_lin(20.5), db_to_lin(2.0), 1.0, 1, 1.0).unwrap();
        assert!(v >= exact);
        assert!(t.o_hat(1.0, 0.0, 1.0, 2, 1.0).is_err());
    }
}
