//! The per-run CSV record and the nodes-versus-size profile.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use untangle::pipeline::Verdict;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub name: String,
    /// Size of the input triangulation.
    pub n: usize,
    pub nodes: u64,
    pub feas_tests: u64,
    pub pivots: u64,
    pub promotions: u64,
    pub time_ms: f64,
    /// `Trivial`, `NonTrivial`, or `Error` for a failed run.
    pub verdict: String,
    pub iterations: usize,
}

impl StatsRecord {
    pub fn from_verdict(name: &str, n: usize, v: &Verdict) -> Self {
        let s = v.total_stats();
        StatsRecord {
            name: name.to_string(),
            n,
            nodes: s.nodes,
            feas_tests: s.feas_tests,
            pivots: s.pivots,
            promotions: s.promotions,
            time_ms: v.time.as_micros() as f64 / 1e3,
            verdict: v.answer.to_string(),
            iterations: v.trace.len(),
        }
    }

    pub fn failed(name: &str, n: usize) -> Self {
        StatsRecord {
            name: name.to_string(),
            n,
            nodes: 0,
            feas_tests: 0,
            pivots: 0,
            promotions: 0,
            time_ms: 0.0,
            verdict: "Error".into(),
            iterations: 0,
        }
    }
}

/// One `(n, nodes)` point per search: `n` is the size of the one-vertex
/// triangulation actually searched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub name: String,
    pub n: usize,
    pub nodes: u64,
}

pub fn profile_points(name: &str, v: &Verdict) -> Vec<ProfilePoint> {
    v.trace.iter().map(|it| ProfilePoint { name: name.to_string(), n: it.n, nodes: it.stats.nodes }).collect()
}

/// Writes records with a header row.
pub fn write_csv<T: Serialize>(out: impl Write, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Appends one record, writing the header first if the file is new or empty.
pub fn append_record(path: &Path, record: &StatsRecord) -> Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let empty = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(empty).from_writer(file);
    w.serialize(record)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "name,n,nodes,feas_tests,pivots,promotions,time_ms,verdict,iterations";

    #[test]
    fn header_is_exact() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[StatsRecord::failed("x", 1)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some(HEADER));
    }

    #[test]
    fn append_writes_header_once() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        append_record(&path, &StatsRecord::failed("a", 1)).unwrap();
        append_record(&path, &StatsRecord::failed("b", 2)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().filter(|l| *l == HEADER).count(), 1);
        assert_eq!(text.lines().count(), 3);
        let back: Vec<StatsRecord> =
            csv::Reader::from_reader(text.as_bytes()).deserialize().collect::<Result<_, _>>().unwrap();
        assert_eq!(back[1], StatsRecord::failed("b", 2));
    }
}
