//! The bundled corpus of knot-complement triangulations.
//!
//! Files are compiled in; setting `UNTANGLE_CORPUS_DIR` reads a directory
//! with the same layout (`manifest.csv` plus gluing tables) instead.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::pipeline::Answer;
use crate::tri::Triangulation;

pub const CORPUS_DIR_VAR: &str = "UNTANGLE_CORPUS_DIR";

macro_rules! bundled {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../data/corpus/", $file)))),*]
    };
}

static MANIFEST: &str = include_str!("../data/corpus/manifest.csv");
static FILES: &[(&str, &str)] = bundled!(
    "trefoil.tri",
    "figure-eight.tri",
    "knot-5-1.tri",
    "knot-5-2.tri",
    "knot-6-1.tri",
    "trefoil-raw.tri",
    "solid-torus.tri",
    "lst-2-3.tri",
    "lst-3-5.tri",
    "solid-torus-1-4.tri",
    "trefoil-1-4.tri",
    "solid-torus-cone.tri",
    "trefoil-cone.tri",
    "lst-2-3-expanded.tri",
    "unknot-monster-raw.tri",
);

#[derive(Debug, Deserialize)]
struct Row {
    name: String,
    file: String,
    expected: String,
    n: usize,
    vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub expected: Answer,
    pub n: usize,
    pub vertices: usize,
    pub triangulation: Triangulation,
}

fn parse(manifest: &str, read: impl Fn(&str) -> Result<String>) -> Result<Vec<CorpusEntry>> {
    let mut reader = csv::Reader::from_reader(manifest.as_bytes());
    let mut out = Vec::new();
    for row in reader.deserialize::<Row>() {
        let row = row.map_err(|e| Error::Corpus(format!("manifest: {e}")))?;
        let text = read(&row.file)?;
        let triangulation =
            Triangulation::parse(&text).map_err(|e| Error::Corpus(format!("{}: {e}", row.file)))?;
        let vertices = triangulation.count_vertices().map_err(|e| Error::Corpus(format!("{}: {e}", row.file)))?;
        if triangulation.size() != row.n || vertices != row.vertices {
            return Err(Error::Corpus(format!(
                "{}: manifest says {} tetrahedra and {} vertices, file has {} and {}",
                row.file,
                row.n,
                row.vertices,
                triangulation.size(),
                vertices
            )));
        }
        out.push(CorpusEntry { name: row.name, expected: row.expected.parse()?, n: row.n, vertices, triangulation });
    }
    Ok(out)
}

/// The compiled-in corpus, ignoring the environment.
pub fn builtin() -> Result<Vec<CorpusEntry>> {
    parse(MANIFEST, |file| {
        FILES
            .iter()
            .find(|(f, _)| *f == file)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| Error::Corpus(format!("{file} is not bundled")))
    })
}

/// A corpus directory with a `manifest.csv`.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let io = |p: &Path, e: std::io::Error| Error::Corpus(format!("{}: {e}", p.display()));
    let mpath = dir.join("manifest.csv");
    let manifest = std::fs::read_to_string(&mpath).map_err(|e| io(&mpath, e))?;
    parse(&manifest, |file| {
        let p = dir.join(file);
        std::fs::read_to_string(&p).map_err(|e| io(&p, e))
    })
}

/// The corpus, from `UNTANGLE_CORPUS_DIR` if set, else the bundled one.
pub fn load() -> Result<Vec<CorpusEntry>> {
    match std::env::var_os(CORPUS_DIR_VAR) {
        Some(dir) => load_dir(Path::new(&dir)),
        None => builtin(),
    }
}

/// A single named entry.
pub fn entry(name: &str) -> Result<CorpusEntry> {
    load()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Corpus(format!("no corpus entry named {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_loads_and_matches_manifest() {
        let c = builtin().unwrap();
        assert_eq!(c.len(), FILES.len());
        assert!(c.iter().any(|e| e.name == "solid-torus" && e.expected == Answer::Trivial && e.n == 1));
    }

    #[test]
    fn size_mismatch_is_reported() {
        let manifest = "name,file,expected,n,vertices\nx,x.tri,Trivial,2,1\n";
        let r = parse(manifest, |_| Ok(Triangulation::solid_torus().to_text()));
        assert!(matches!(r, Err(Error::Corpus(_))));
    }
}
