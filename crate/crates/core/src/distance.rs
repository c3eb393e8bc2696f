//! Distance measures between fingerprints, corpus statistics for TF-IDF
//! weighting, and pairwise distance matrices.
//!
//! Fingerprints are compared as sparse count vectors over interned
//! neighbourhood keys. Every measure only looks at the union of keys present
//! in its two operands; keys absent from both contribute nothing.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fingerprint::{Fingerprint, Vocabulary};

/// Sparse vector sorted by key, without explicit zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    /// Builds a vector from `(key, value)` pairs in any order. Duplicate keys
    /// are summed and zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, f64)>) -> Self {
        let mut entries: Vec<(u32, f64)> = pairs.into_iter().collect();
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (k, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += v,
                _ => merged.push((k, v)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        SparseVector { entries: merged }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: u32) -> f64 {
        self.entries
            .binary_search_by_key(&key, |e| e.0)
            .map_or(0.0, |i| self.entries[i].1)
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt()
    }

    pub fn keys(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    /// Componentwise mean of a set of vectors.
    pub fn mean<'a>(vectors: impl IntoIterator<Item = &'a SparseVector>) -> SparseVector {
        let mut acc: HashMap<u32, f64> = HashMap::new();
        let mut n = 0usize;
        for v in vectors {
            n += 1;
            for &(k, x) in &v.entries {
                *acc.entry(k).or_insert(0.0) += x;
            }
        }
        if n == 0 {
            return SparseVector::default();
        }
        let n = n as f64;
        SparseVector::from_pairs(acc.into_iter().map(|(k, x)| (k, x / n)))
    }

    fn map_values(&self, mut f: impl FnMut(u32, f64) -> Result<f64>) -> Result<SparseVector> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &(k, x) in &self.entries {
            let y = f(k, x)?;
            if y != 0.0 {
                entries.push((k, y));
            }
        }
        Ok(SparseVector { entries })
    }
}

/// Visits every key in the union of `a` and `b` in key order.
#[inline]
fn merge(a: &SparseVector, b: &SparseVector, mut f: impl FnMut(f64, f64)) {
    let (a, b) = (&a.entries, &b.entries);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ka, va) = a[i];
        let (kb, vb) = b[j];
        if ka == kb {
            f(va, vb);
            i += 1;
            j += 1;
        } else if ka < kb {
            f(va, 0.0);
            i += 1;
        } else {
            f(0.0, vb);
            j += 1;
        }
    }
    for &(_, va) in &a[i..] {
        f(va, 0.0);
    }
    for &(_, vb) in &b[j..] {
        f(0.0, vb);
    }
}

pub fn euclidean(a: &SparseVector, b: &SparseVector) -> f64 {
    let mut sum = 0.0;
    merge(a, b, |x, y| sum += (x - y) * (x - y));
    sum.sqrt()
}

/// Cosine distance. Two zero vectors are at distance 0, a zero vector and a
/// non-zero one at distance 1.
pub fn cosine(a: &SparseVector, b: &SparseVector) -> f64 {
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    merge(a, b, |x, y| {
        dot += x * y;
        na += x * x;
        nb += y * y;
    });
    match (na == 0.0, nb == 0.0) {
        (true, true) => 0.0,
        (true, false) | (false, true) => 1.0,
        _ => (1.0 - dot / (na.sqrt() * nb.sqrt())).clamp(0.0, 1.0),
    }
}

/// Number of components whose values differ.
pub fn hamming_bool(a: &SparseVector, b: &SparseVector) -> f64 {
    let mut n = 0u32;
    merge(a, b, |x, y| n += u32::from(x != y));
    f64::from(n)
}

/// Sum of absolute componentwise differences.
pub fn hamming_freq(a: &SparseVector, b: &SparseVector) -> f64 {
    let mut sum = 0.0;
    merge(a, b, |x, y| sum += (x - y).abs());
    sum
}

/// Multiset Jaccard distance `1 - Σmin / Σmax`.
pub fn jaccard(a: &SparseVector, b: &SparseVector) -> Result<f64> {
    if a.is_empty() && b.is_empty() {
        return Err(Error::EmptyOperand { measure: "jaccard" });
    }
    let (mut lo, mut hi) = (0.0, 0.0);
    merge(a, b, |x, y| {
        lo += x.min(y);
        hi += x.max(y);
    });
    Ok((1.0 - lo / hi).clamp(0.0, 1.0))
}

/// Overlap coefficient distance `1 - Σmin / min(Σa, Σb)`.
pub fn overlap(a: &SparseVector, b: &SparseVector) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand { measure: "overlap" });
    }
    let (mut lo, mut sa, mut sb) = (0.0, 0.0, 0.0);
    merge(a, b, |x, y| {
        lo += x.min(y);
        sa += x;
        sb += y;
    });
    Ok((1.0 - lo / sa.min(sb)).clamp(0.0, 1.0))
}

/// Logarithmic term frequency: `1 + ln f` for `f >= 1`, a linear ramp `f` on
/// `(0, 1)` (reached only by fractional centroid values) and 0 for absent
/// terms.
pub fn term_frequency(f: f64) -> f64 {
    if f >= 1.0 {
        1.0 + f.ln()
    } else if f > 0.0 {
        f
    } else {
        0.0
    }
}

/// Corpus size and per-key document frequencies.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusStats {
    docs: usize,
    doc_freq: HashMap<u32, u32>,
}

impl CorpusStats {
    pub fn new<'a>(vectors: impl IntoIterator<Item = &'a SparseVector>) -> Result<Self> {
        let mut docs = 0;
        let mut doc_freq: HashMap<u32, u32> = HashMap::new();
        for v in vectors {
            docs += 1;
            for k in v.keys() {
                *doc_freq.entry(k).or_insert(0) += 1;
            }
        }
        if docs == 0 {
            return Err(Error::EmptyCorpus);
        }
        Ok(CorpusStats { docs, doc_freq })
    }

    pub fn docs(&self) -> usize {
        self.docs
    }

    pub fn doc_freq(&self, key: u32) -> Option<u32> {
        self.doc_freq.get(&key).copied()
    }

    /// `ln(N / f_p)`.
    pub fn idf(&self, key: u32) -> Result<f64> {
        let f = self.doc_freq(key).ok_or(Error::KeyNotInStats(key))?;
        Ok((self.docs as f64 / f64::from(f)).ln())
    }

    /// TF-IDF weighted copy of a count vector.
    pub fn weigh(&self, v: &SparseVector) -> Result<SparseVector> {
        v.map_values(|k, x| Ok(term_frequency(x) * self.idf(k)?))
    }
}

/// Cosine distance of TF-IDF weighted vectors.
pub fn cosine_tfidf(a: &SparseVector, b: &SparseVector, stats: &CorpusStats) -> Result<f64> {
    Ok(cosine(&stats.weigh(a)?, &stats.weigh(b)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Euclidean,
    CosineFreq,
    CosineTfIdf,
    HammingBool,
    HammingFreq,
    Jaccard,
    Overlap,
}

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::Euclidean,
        Measure::CosineFreq,
        Measure::CosineTfIdf,
        Measure::HammingBool,
        Measure::HammingFreq,
        Measure::Jaccard,
        Measure::Overlap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Euclidean => "euclid",
            Measure::CosineFreq => "cos-freq",
            Measure::CosineTfIdf => "cos-tfidf",
            Measure::HammingBool => "ham-bool",
            Measure::HammingFreq => "ham-freq",
            Measure::Jaccard => "jaccard",
            Measure::Overlap => "overlap",
        }
    }

    pub fn needs_stats(self) -> bool {
        self == Measure::CosineTfIdf
    }

    /// Distance between two count vectors.
    pub fn distance(
        self,
        a: &SparseVector,
        b: &SparseVector,
        stats: Option<&CorpusStats>,
    ) -> Result<f64> {
        match self {
            Measure::Euclidean => Ok(euclidean(a, b)),
            Measure::CosineFreq => Ok(cosine(a, b)),
            Measure::CosineTfIdf => cosine_tfidf(a, b, stats.ok_or(Error::MissingStats)?),
            Measure::HammingBool => Ok(hamming_bool(a, b)),
            Measure::HammingFreq => Ok(hamming_freq(a, b)),
            Measure::Jaccard => jaccard(a, b),
            Measure::Overlap => overlap(a, b),
        }
    }

    /// Distance between vectors that are already in the measure's working
    /// space (see [`Measure::prepare`]).
    pub(crate) fn prepared_distance(self, a: &SparseVector, b: &SparseVector) -> Result<f64> {
        match self {
            Measure::CosineTfIdf => Ok(cosine(a, b)),
            m => m.distance(a, b, None),
        }
    }

    /// Maps count vectors into the space the measure compares in: TF-IDF
    /// weights for `cos-tfidf`, unchanged counts otherwise.
    pub(crate) fn prepare(
        self,
        vectors: &[SparseVector],
        stats: Option<&CorpusStats>,
    ) -> Result<Vec<SparseVector>> {
        match self {
            Measure::CosineTfIdf => {
                let stats = stats.ok_or(Error::MissingStats)?;
                vectors.iter().map(|v| stats.weigh(v)).collect()
            }
            _ => Ok(vectors.to_vec()),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

/// Distance between two fingerprints of equal `k`, for measures that need no
/// corpus statistics.
pub fn between(measure: Measure, a: &Fingerprint, b: &Fingerprint) -> Result<f64> {
    if a.k() != b.k() {
        return Err(Error::KMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    let vocab = Vocabulary::build([a, b]);
    measure.distance(&vocab.vectorize(a), &vocab.vectorize(b), None)
}

/// Condensed symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    measure: Measure,
    k: Option<usize>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps precomputed condensed upper-triangular values.
    pub fn from_condensed(n: usize, measure: Measure, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), n * n.saturating_sub(1) / 2);
        DistanceMatrix {
            n,
            measure,
            k: None,
            values,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn condensed(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Less => self.values[self.index(i, j)],
            std::cmp::Ordering::Greater => self.values[self.index(j, i)],
        }
    }

    /// Writes `i,j,distance` rows after a comment line recording the measure,
    /// `k` and the corpus hash.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W, corpus_hash: &str) -> std::io::Result<()> {
        let k = self.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        writeln!(out, "# measure={} k={} corpus={}", self.measure, k, corpus_hash)?;
        writeln!(out, "i,j,distance")?;
        for i in 0..self.n {
            for j in i + 1..self.n {
                writeln!(out, "{},{},{}", i, j, self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// All pairwise distances. Rows are evaluated in parallel; every entry is an
/// independent computation, so the result does not depend on scheduling.
pub fn distance_matrix(
    vectors: &[SparseVector],
    measure: Measure,
    stats: Option<&CorpusStats>,
) -> Result<DistanceMatrix> {
    let prepared = measure.prepare(vectors, stats)?;
    let n = prepared.len();
    let rows: Vec<Result<Vec<f64>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| {
                    measure
                        .prepared_distance(&prepared[i], &prepared[j])
                        .map_err(|e| Error::Pair {
                            i,
                            j,
                            source: Box::new(e),
                        })
                })
                .collect()
        })
        .collect();
    let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for row in rows {
        values.extend(row?);
    }
    Ok(DistanceMatrix {
        n,
        measure,
        k: None,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(u32, f64)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn from_pairs_merges_and_drops_zeros() {
        let x = v(&[(3, 1.0), (1, 2.0), (3, 1.0), (2, 0.0)]);
        assert_eq!(x.entries(), &[(1, 2.0), (3, 2.0)]);
    }

    #[test]
    fn derived_values() {
        // {x:3} vs {y:4}
        assert!((euclidean(&v(&[(0, 3.0)]), &v(&[(1, 4.0)])) - 5.0).abs() < 1e-12);
        // {x:1,y:5} vs {x:1,y:7,z:2}
        assert_eq!(
            hamming_bool(&v(&[(0, 1.0), (1, 5.0)]), &v(&[(0, 1.0), (1, 7.0), (2, 2.0)])),
            2.0
        );
        // {x:1} vs {x:4,y:2}
        assert_eq!(hamming_freq(&v(&[(0, 1.0)]), &v(&[(0, 4.0), (1, 2.0)])), 5.0);
        // {x:2,y:2} vs {y:1,z:9}
        let d = overlap(&v(&[(0, 2.0), (1, 2.0)]), &v(&[(1, 1.0), (2, 9.0)])).unwrap();
        assert!((d - 0.75).abs() < 1e-12);
    }

    #[test]
    fn trivial_extremes() {
        let f = v(&[(0, 2.0), (5, 1.0)]);
        let g = v(&[(1, 4.0)]);
        assert_eq!(cosine(&f, &g), 1.0);
        assert_eq!(jaccard(&f, &g).unwrap(), 1.0);
        let scaled = v(&[(0, 6.0), (5, 3.0)]);
        assert!(cosine(&f, &scaled).abs() < 1e-12);
        let sub = v(&[(0, 1.0)]);
        assert_eq!(overlap(&sub, &f).unwrap(), 0.0);
    }

    #[test]
    fn empty_operands() {
        let e = SparseVector::default();
        let f = v(&[(0, 1.0)]);
        assert!(matches!(jaccard(&e, &e), Err(Error::EmptyOperand { .. })));
        assert!(jaccard(&e, &f).is_ok());
        assert!(matches!(overlap(&e, &f), Err(Error::EmptyOperand { .. })));
        assert_eq!(cosine(&e, &e), 0.0);
        assert_eq!(cosine(&e, &f), 1.0);
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("cosine".parse::<Measure>().is_err());
    }

    #[test]
    fn tfidf_requires_stats() {
        let f = v(&[(0, 1.0)]);
        assert!(matches!(
            Measure::CosineTfIdf.distance(&f, &f, None),
            Err(Error::MissingStats)
        ));
        let stats = CorpusStats::new([&f]).unwrap();
        assert!(matches!(
            cosine_tfidf(&f, &v(&[(9, 1.0)]), &stats),
            Err(Error::KeyNotInStats(9))
        ));
    }

    #[test]
    fn term_frequency_is_continuous() {
        assert_eq!(term_frequency(0.0), 0.0);
        assert_eq!(term_frequency(0.5), 0.5);
        assert_eq!(term_frequency(1.0), 1.0);
        assert!((term_frequency(std::f64::consts::E) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn corpus_stats_counts_presence() {
        let docs = [v(&[(0, 1.0)]), v(&[(0, 1.0), (1, 1.0)]), v(&[(1, 2.0)])];
        let stats = CorpusStats::new(&docs).unwrap();
        assert_eq!(stats.docs(), 3);
        assert_eq!(stats.doc_freq(0), Some(2));
        assert_eq!(stats.doc_freq(1), Some(2));
        let single = CorpusStats::new([&docs[1]]).unwrap();
        assert_eq!(single.doc_freq(0), Some(1));
        let with_empty = CorpusStats::new([&docs[0], &SparseVector::default()]).unwrap();
        assert_eq!(with_empty.doc_freq(0), Some(1));
        assert_eq!(with_empty.docs(), 2);
        assert!(matches!(
            CorpusStats::new(std::iter::empty()),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn matrix_pair_error_names_pair() {
        let docs = [v(&[(0, 1.0)]), SparseVector::default()];
        match distance_matrix(&docs, Measure::Overlap, None) {
            Err(Error::Pair { i: 0, j: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn condensed_indexing() {
        let m = DistanceMatrix::from_condensed(4, Measure::Euclidean, (0..6).map(f64::from).collect());
        assert_eq!(m.get(0, 1), 0.0);
        assert_eq!(m.get(0, 3), 2.0);
        assert_eq!(m.get(1, 2), 3.0);
        assert_eq!(m.get(3, 2), 5.0);
        assert_eq!(m.get(2, 2), 0.0);
    }
}
