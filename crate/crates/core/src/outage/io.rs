//! Table container: a text header of `key=value` lines terminated by
//! `end_header`, followed by the cells as little-endian f64 quadruples
//! `(estimate, upper95, events, samples)` in s-major order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::table::{Cell, GridSpec, OutageTable, TableMeta};
use crate::error::{Error, Result};

pub const TABLE_MAGIC: &str = "noma-slicing outage table";
const END: &str = "end_header\n";
const FIELDS: usize = 4;

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn header_text(t: &OutageTable) -> String {
    let m = &t.meta;
    let g = &m.grid;
    let mut h = String::new();
    let _ = writeln!(h, "{TABLE_MAGIC}");
    let _ = writeln!(h, "version={}", m.version);
    let _ = writeln!(h, "f_u={}", m.f_u);
    let _ = writeln!(h, "r_bar_u={}", m.r_bar_u);
    let _ = writeln!(h, "eps_target={}", m.eps_target);
    let _ = writeln!(
        h,
        "stages={}",
        m.stages.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    );
    let _ = writeln!(h, "base_seed={}", m.base_seed);
    let _ = writeln!(h, "chunk={}", m.chunk);
    let _ = writeln!(h, "s_min_db={}", g.s_min_db);
    let _ = writeln!(h, "s_max_db={}", g.s_max_db);
    let _ = writeln!(h, "s_step_db={}", g.s_step_db);
    let _ = writeln!(h, "i_min_db={}", g.i_min_db);
    let _ = writeln!(h, "i_max_db={}", g.i_max_db);
    let _ = writeln!(h, "i_step_db={}", g.i_step_db);
    let _ = writeln!(h, "zero_row={}", g.zero_row);
    let _ = writeln!(h, "s_grid_db={}", join(&t.s_db));
    let _ = writeln!(h, "i_grid_db={}", join(&t.i_db));
    let _ = writeln!(h, "layout=s-major;fields=estimate,upper95,events,samples;f64-le");
    h.push_str(END);
    h
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| Error::Format(format!("bad value {x:?} in {key}")))
        })
        .collect()
}

pub(crate) fn parse_header(text: &str) -> Result<(TableMeta, Vec<f64>, Vec<f64>)> {
    let mut lines = text.lines();
    if lines.next() != Some(TABLE_MAGIC) {
        return Err(Error::Format("missing table magic line".into()));
    }
    let mut kv = std::collections::BTreeMap::new();
    for line in lines {
        if line == END.trim_end() {
            break;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("malformed header line {line:?}")))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let get = |k: &str| kv.get(k).ok_or_else(|| Error::Format(format!("header is missing {k}")));
    fn num<T: std::str::FromStr>(k: &str, v: &str) -> Result<T> {
        v.parse().map_err(|_| Error::Format(format!("bad value {v:?} for {k}")))
    }
    let version: u32 = num("version", get("version")?)?;
    if version != super::TABLE_VERSION {
        return Err(Error::Format(format!("unsupported table version {version}")));
    }
    let grid = GridSpec {
        s_min_db: num("s_min_db", get("s_min_db")?)?,
        s_max_db: num("s_max_db", get("s_max_db")?)?,
        s_step_db: num("s_step_db", get("s_step_db")?)?,
        i_min_db: num("i_min_db", get("i_min_db")?)?,
        i_max_db: num("i_max_db", get("i_max_db")?)?,
        i_step_db: num("i_step_db", get("i_step_db")?)?,
        zero_row: num("zero_row", get("zero_row")?)?,
    };
    let meta = TableMeta {
        version,
        f_u: num("f_u", get("f_u")?)?,
        r_bar_u: num("r_bar_u", get("r_bar_u")?)?,
        eps_target: num("eps_target", get("eps_target")?)?,
        stages: parse_list("stages", get("stages")?)?,
        base_seed: num("base_seed", get("base_seed")?)?,
        chunk: num("chunk", get("chunk")?)?,
        grid,
    };
    let s = parse_list("s_grid_db", get("s_grid_db")?)?;
    let i = parse_list("i_grid_db", get("i_grid_db")?)?;
    if s.is_empty() || i.is_empty() {
        return Err(Error::Format("empty grid axis".into()));
    }
    Ok((meta, s, i))
}

pub fn table_to_bytes(t: &OutageTable) -> Vec<u8> {
    let mut out = header_text(t).into_bytes();
    out.reserve(t.cells.len() * FIELDS * 8);
    for c in &t.cells {
        for v in [c.estimate, c.upper95, c.events as f64, c.samples as f64] {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

pub fn read_table_bytes(bytes: &[u8]) -> Result<OutageTable> {
    let end = bytes
        .windows(END.len())
        .position(|w| w == END.as_bytes())
        .ok_or_else(|| Error::Format("header terminator not found".into()))?
        + END.len();
    let text = std::str::from_utf8(&bytes[..end]).map_err(|_| Error::Format("header is not UTF-8".into()))?;
    let (meta, s_db, i_db) = parse_header(text)?;
    let body = &bytes[end..];
    let expected = s_db.len() * i_db.len() * FIELDS * 8;
    if body.len() != expected {
        return Err(Error::Format(format!(
            "body has {} bytes, expected {expected} for a {}x{} grid",
            body.len(),
            s_db.len(),
            i_db.len()
        )));
    }
    let cells = body
        .chunks_exact(FIELDS * 8)
        .map(|c| {
            let f = |k: usize| f64::from_le_bytes(c[k * 8..k * 8 + 8].try_into().unwrap());
            Cell {
                estimate: f(0),
                upper95: f(1),
                events: f(2) as u64,
                samples: f(3) as u64,
            }
        })
        .collect();
    Ok(OutageTable {
        meta,
        s_db,
        i_db,
        cells,
    })
}

pub fn write_table(t: &OutageTable, path: &Path) -> Result<()> {
    fs::write(path, table_to_bytes(t)).map_err(|e| Error::io(path, e))
}

pub fn read_table(path: &Path) -> Result<OutageTable> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    read_table_bytes(&bytes)
}

/// Human-readable export with the header as `#` comment lines.
pub fn write_csv(t: &OutageTable, mut w: impl std::io::Write) -> std::io::Result<()> {
    for line in header_text(t).lines() {
        writeln!(w, "# {line}")?;
    }
    writeln!(w, "s_db,i_db,estimate,upper95,raw_estimate,samples")?;
    for (si, s) in t.s_db.iter().enumerate() {
        for (ii, i) in t.i_db.iter().enumerate() {
            let c = t.cell(si, ii);
            writeln!(
                w,
                "{s},{i},{},{},{},{}",
                c.estimate,
                c.upper95,
                c.raw_estimate(),
                c.samples
            )?;
        }
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::outage::build_table;

    fn tiny() -> OutageTable {
        let mut m = TableMeta::new(
            2,
            0.5,
            1e-2,
            GridSpec {
                s_min_db: 0.0,
                s_max_db: 30.0,
                s_step_db: 2.5,
                i_min_db: -3.0,
                i_max_db: 3.0,
                i_step_db: 3.0,
                zero_row: true,
            },
            5,
        );
        m.stages = vec![500, 5_000];
        m.chunk = 256;
        build_table(m).unwrap().0
    }

    #[test]
    fn bytes_round_trip() {
        let t = tiny();
        let bytes = table_to_bytes(&t);
        let back = read_table_bytes(&bytes).unwrap();
        assert_eq!(back, t);
        assert_eq!(table_to_bytes(&back), bytes);
    }

    #[test]
    fn header_round_trips_exactly() {
        let t = tiny();
        let h = header_text(&t);
        let (meta, s, i) = parse_header(&h).unwrap();
        assert_eq!(meta, t.meta);
        assert_eq!(s, t.s_db);
        assert_eq!(i[0], f64::NEG_INFINITY);
        assert!(h.contains("eps_target=0.01\n"));
    }

    #[test]
    fn truncated_and_corrupt_files() {
        let bytes = table_to_bytes(&tiny());
        let cut = &bytes[..bytes.len() - 3];
        assert!(matches!(read_table_bytes(cut), Err(Error::Format(_))));
        assert!(matches!(read_table_bytes(&bytes[..40]), Err(Error::Format(_))));
        let mut junk = bytes.clone();
        junk[0] = b'X';
        assert!(read_table_bytes(&junk).is_err());
    }

    #[test]
    fn csv_export_has_comment_header() {
        let t = tiny();
        let mut out = Vec::new();
        write_csv(&t, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("# noma-slicing outage table\n"));
        let rows = text.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(rows, 1 + t.cells.len());
    }
}
