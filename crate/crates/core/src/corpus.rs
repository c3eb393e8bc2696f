//! Labelled corpora: seeded generation of perturbed specimens, and their
//! on-disk form as TG1 files plus a `path,label` manifest.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::generators::{generate, perturb, Family, Mirror, PatternSpec, PerturbationPlan, Rotation};
use crate::graph::{parse, serialize, TextileGraph};

pub const MANIFEST: &str = "manifest.csv";

/// What to generate: every family gets `samples` specimens whose grid
/// dimensions are drawn from `rows` and `cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusConfig {
    pub families: Vec<Family>,
    pub samples: usize,
    pub rows: RangeInclusive<usize>,
    pub cols: RangeInclusive<usize>,
    pub flip_rate: f64,
    /// Probability that a specimen is rotated (by 90, 180 or 270 degrees,
    /// equally likely).
    pub rotate_rate: f64,
    /// Probability that a specimen is mirrored (horizontally or vertically,
    /// equally likely).
    pub mirror_rate: f64,
    pub seed: u64,
}

impl CorpusConfig {
    /// Sixteen categories of 25 specimens from 16 x 16 to 32 x 32.
    pub fn desk() -> Self {
        CorpusConfig {
            families: Family::categories().to_vec(),
            samples: 25,
            rows: 16..=32,
            cols: 16..=32,
            flip_rate: 0.01,
            rotate_rate: 0.85,
            mirror_rate: 0.35,
            seed: 1,
        }
    }

    /// Sixteen categories of 100 specimens from 48 x 48 to 96 x 96.
    pub fn full() -> Self {
        CorpusConfig {
            samples: 100,
            rows: 48..=96,
            cols: 48..=96,
            ..Self::desk()
        }
    }

    fn check(&self) -> Result<()> {
        for (name, rate) in [
            ("flip rate", self.flip_rate),
            ("rotate rate", self.rotate_rate),
            ("mirror rate", self.mirror_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::Config(format!("{name} {rate} is outside [0, 1]")));
            }
        }
        for r in [&self.rows, &self.cols] {
            if r.is_empty() || *r.start() == 0 {
                return Err(Error::Config(format!("bad size range {r:?}")));
            }
        }
        Ok(())
    }
}

/// One generated specimen with its recipe.
#[derive(Clone, Debug, PartialEq)]
pub struct Specimen {
    pub name: String,
    pub label: String,
    pub spec: PatternSpec,
    pub plan: PerturbationPlan,
    pub graph: TextileGraph,
}

/// Recipe of sample `index` of `family`, drawn from its own random stream so
/// that samples are independent of generation order.
pub fn recipe(config: &CorpusConfig, family_index: usize, index: usize) -> (PatternSpec, PerturbationPlan) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream((family_index * config.samples + index) as u64);
    let rows = rng.gen_range(config.rows.clone());
    let cols = rng.gen_range(config.cols.clone());
    let spec = PatternSpec::new(config.families[family_index], rows, cols, rng.gen());
    let rotate = rng.gen_bool(config.rotate_rate).then(|| match rng.gen_range(0..3) {
        0 => Rotation::R90,
        1 => Rotation::R180,
        _ => Rotation::R270,
    });
    let mirror = rng.gen_bool(config.mirror_rate).then(|| {
        if rng.gen_bool(0.5) {
            Mirror::Horizontal
        } else {
            Mirror::Vertical
        }
    });
    let plan = PerturbationPlan {
        flip_fraction: config.flip_rate,
        rotate,
        mirror,
        seed: rng.gen(),
    };
    (spec, plan)
}

/// Generates the corpus in memory, ordered by family then sample index.
pub fn make_corpus(config: &CorpusConfig) -> Result<Vec<Specimen>> {
    config.check()?;
    let jobs: Vec<(usize, usize)> = (0..config.families.len())
        .flat_map(|f| (0..config.samples).map(move |i| (f, i)))
        .collect();
    jobs.into_par_iter()
        .map(|(f, i)| {
            let (spec, plan) = recipe(config, f, i);
            let label = spec.family.label();
            let graph = perturb(&generate(&spec)?, &plan).with_label(label.clone());
            Ok(Specimen {
                name: format!("{label}_{i:03}"),
                label,
                spec,
                plan,
                graph,
            })
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestRow {
    path: String,
    label: String,
}

/// Writes `<name>.tg1` per specimen and the manifest into `dir`.
pub fn write_corpus(dir: &Path, specimens: &[Specimen]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let manifest = dir.join(MANIFEST);
    let mut out = csv::Writer::from_path(&manifest)?;
    for s in specimens {
        let file = format!("{}.tg1", s.name);
        let path = dir.join(&file);
        fs::write(&path, serialize(&s.graph)).map_err(|e| Error::io(&path, e))?;
        out.serialize(ManifestRow {
            path: file,
            label: s.label.clone(),
        })?;
    }
    out.flush().map_err(|e| Error::io(&manifest, e))?;
    Ok(())
}

/// A corpus read back from disk.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub names: Vec<String>,
    pub labels: Vec<String>,
    pub graphs: Vec<TextileGraph>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// SHA-256 over the serialized graphs and labels, in order.
    pub fn hash(&self) -> String {
        corpus_hash(self.graphs.iter().zip(&self.labels).map(|(g, l)| (g, l.as_str())))
    }
}

impl From<Vec<Specimen>> for Corpus {
    fn from(specimens: Vec<Specimen>) -> Self {
        let mut c = Corpus::default();
        for s in specimens {
            c.names.push(s.name);
            c.labels.push(s.label);
            c.graphs.push(s.graph);
        }
        c
    }
}

pub fn read_graph(path: &Path) -> Result<TextileGraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text).map_err(|e| e.in_file(path))
}

/// Loads a corpus directory. With a manifest, its rows give order and
/// labels; otherwise every `*.tg1` file is read in name order and labelled
/// by its `LABEL` line (or left unlabelled as an empty string).
pub fn load_corpus(dir: &Path) -> Result<Corpus> {
    let manifest = dir.join(MANIFEST);
    let entries: Vec<(PathBuf, Option<String>)> = if manifest.is_file() {
        let mut rdr = csv::Reader::from_path(&manifest)?;
        rdr.deserialize::<ManifestRow>()
            .map(|row| row.map(|r| (dir.join(r.path), Some(r.label))))
            .collect::<std::result::Result<_, _>>()?
    } else {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .map(|e| e.map(|e| e.path()).map_err(|e| Error::io(dir, e)))
            .collect::<Result<_>>()?;
        files.retain(|p| p.extension().is_some_and(|x| x == "tg1"));
        files.sort();
        files.into_iter().map(|p| (p, None)).collect()
    };
    let graphs: Vec<TextileGraph> = entries
        .par_iter()
        .map(|(p, _)| read_graph(p))
        .collect::<Result<_>>()?;
    let mut corpus = Corpus::default();
    for ((path, label), g) in entries.into_iter().zip(graphs) {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let label = label.or_else(|| g.label().map(str::to_owned)).unwrap_or_default();
        corpus.names.push(name);
        corpus.labels.push(label);
        corpus.graphs.push(g);
    }
    Ok(corpus)
}

/// Reads the `path,label` manifest alone.
pub fn read_manifest(path: &Path) -> Result<Vec<(String, String)>> {
    let mut rdr = csv::Reader::from_path(path)?;
    rdr.deserialize::<ManifestRow>()
        .map(|r| r.map(|r| (r.path, r.label)).map_err(Error::from))
        .collect()
}

/// Hex SHA-256 of a sequence of labelled graphs.
pub fn corpus_hash<'a>(items: impl IntoIterator<Item = (&'a TextileGraph, &'a str)>) -> String {
    let mut h = Sha256::new();
    for (g, label) in items {
        h.update(label.as_bytes());
        h.update([0]);
        h.update(serialize(g).as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(families: Vec<Family>, samples: usize) -> CorpusConfig {
        CorpusConfig {
            families,
            samples,
            rows: 6..=8,
            cols: 6..=8,
            ..CorpusConfig::desk()
        }
    }

    #[test]
    fn one_sample_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let specimens = make_corpus(&tiny(vec![Family::PlainWeave], 1)).unwrap();
        write_corpus(dir.path(), &specimens).unwrap();
        let rows = read_manifest(&dir.path().join(MANIFEST)).unwrap();
        assert_eq!(rows, vec![("plain_000.tg1".to_string(), "plain".to_string())]);
        let back = load_corpus(dir.path()).unwrap();
        assert_eq!(back.graphs[0].label(), Some("plain"));
        assert_eq!(back.hash(), Corpus::from(specimens).hash());
    }

    #[test]
    fn deterministic_and_distinct() {
        let cfg = tiny(vec![Family::Twill { over: 2, under: 1 }, Family::Braid { strands: 4 }], 4);
        let a = make_corpus(&cfg).unwrap();
        let b = make_corpus(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        let texts: std::collections::HashSet<String> = a.iter().map(|s| serialize(&s.graph)).collect();
        assert!(texts.len() > 4);
    }

    #[test]
    fn rates_are_checked() {
        let mut cfg = tiny(vec![Family::PlainWeave], 1);
        cfg.flip_rate = 1.5;
        assert!(make_corpus(&cfg).is_err());
    }

    #[test]
    fn directory_without_manifest() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("b.tg1"), "TG1 1\nLABEL x\n-1 -1 -1 -1\n").unwrap();
        fs::write(dir.path().join("a.tg1"), "TG1 0\n").unwrap();
        let c = load_corpus(dir.path()).unwrap();
        assert_eq!(c.names, vec!["a", "b"]);
        assert_eq!(c.labels, vec!["", "x"]);
    }
}
