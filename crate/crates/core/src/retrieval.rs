//! Ranked retrieval and retrieval-quality metrics.
//!
//! A query ranks every other corpus item by ascending distance (most similar
//! first); ties go to the lower item id. Items sharing the query's category
//! are relevant.

use rayon::prelude::*;

use crate::distance::{CorpusStats, DistanceMatrix, Measure, SparseVector};
use crate::error::{Error, Result};

/// Recall levels 0.0, 0.1, ..., 1.0 of the 11-point tables.
pub fn recall_levels() -> [f64; 11] {
    std::array::from_fn(|l| l as f64 / 10.0)
}

/// Result of one query: `(item id, distance)` in ranked order.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedList {
    pub query: Option<usize>,
    pub items: Vec<(usize, f64)>,
}

impl RankedList {
    /// Sorts `(item, distance)` pairs by distance, then item id.
    pub fn from_unsorted(query: Option<usize>, mut items: Vec<(usize, f64)>) -> Self {
        items.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        RankedList { query, items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().map(|e| e.0)
    }
}

/// Ranks `corpus` against `query`. When `query_id` names a corpus item it is
/// left out of the list.
pub fn rank(
    corpus: &[SparseVector],
    query: &SparseVector,
    query_id: Option<usize>,
    measure: Measure,
    stats: Option<&CorpusStats>,
) -> Result<RankedList> {
    let items = corpus
        .iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != query_id)
        .map(|(i, v)| {
            measure
                .distance(query, v, stats)
                .map(|d| (i, d))
                .map_err(|e| Error::Pair {
                    i: query_id.unwrap_or(usize::MAX),
                    j: i,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankedList::from_unsorted(query_id, items))
}

/// Ranks every other item against corpus item `query` using precomputed
/// distances.
pub fn rank_in_matrix(matrix: &DistanceMatrix, query: usize) -> RankedList {
    let items = (0..matrix.len())
        .filter(|&i| i != query)
        .map(|i| (i, matrix.get(query, i)))
        .collect();
    RankedList::from_unsorted(Some(query), items)
}

/// Category label of every corpus item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qrels {
    labels: Vec<String>,
    class: Vec<usize>,
    sizes: Vec<usize>,
}

impl Qrels {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut names: Vec<&str> = labels.iter().map(String::as_str).collect();
        names.sort_unstable();
        names.dedup();
        let class: Vec<usize> = labels
            .iter()
            .map(|l| names.binary_search(&l.as_str()).unwrap_or(0))
            .collect();
        let mut sizes = vec![0; names.len()];
        for &c in &class {
            sizes[c] += 1;
        }
        Qrels {
            labels,
            class,
            sizes,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, item: usize) -> &str {
        &self.labels[item]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Dense class index of each item, classes numbered in label order.
    pub fn classes(&self) -> &[usize] {
        &self.class
    }

    pub fn category_count(&self) -> usize {
        self.sizes.len()
    }

    /// Number of items sharing `item`'s category, `item` included.
    pub fn category_size(&self, item: usize) -> usize {
        self.sizes[self.class[item]]
    }

    pub fn relevant(&self, query: usize, item: usize) -> bool {
        self.class[query] == self.class[item]
    }

    /// Number of items relevant to `query` in a list that excludes it.
    pub fn relevant_count(&self, query: usize) -> usize {
        self.category_size(query) - 1
    }
}

/// Relevance flags of a list for a query category.
fn hits(list: &RankedList, relevant: impl Fn(usize) -> bool) -> Vec<bool> {
    list.ids().map(relevant).collect()
}

fn average_precision_flags(flags: &[bool]) -> Result<f64> {
    let mut found = 0usize;
    let mut sum = 0.0;
    for (i, &rel) in flags.iter().enumerate() {
        if rel {
            found += 1;
            sum += found as f64 / (i + 1) as f64;
        }
    }
    if found == 0 {
        return Err(Error::NoRelevant);
    }
    Ok(sum / found as f64)
}

/// Mean of the precisions at the rank of each relevant item.
pub fn average_precision(list: &RankedList, relevant: impl Fn(usize) -> bool) -> Result<f64> {
    average_precision_flags(&hits(list, relevant))
}

/// Fraction of the first `cutoff` items that are relevant.
pub fn precision_at(
    list: &RankedList,
    relevant: impl Fn(usize) -> bool,
    cutoff: usize,
) -> Result<f64> {
    if cutoff == 0 || cutoff > list.len() {
        return Err(Error::InvalidCutoff {
            cutoff,
            len: list.len(),
        });
    }
    let n = list.items[..cutoff]
        .iter()
        .filter(|e| relevant(e.0))
        .count();
    Ok(n as f64 / cutoff as f64)
}

pub fn mean_ap(aps: &[f64]) -> Result<f64> {
    if aps.is_empty() {
        return Err(Error::NoQueries);
    }
    Ok(aps.iter().sum::<f64>() / aps.len() as f64)
}

/// Interpolated precision of one query at the 11 recall levels: the highest
/// precision reached at any recall at or above the level.
pub fn interpolated_precision(
    list: &RankedList,
    relevant: impl Fn(usize) -> bool,
) -> Result<[f64; 11]> {
    interpolated_precision_flags(&hits(list, relevant))
}

fn interpolated_precision_flags(flags: &[bool]) -> Result<[f64; 11]> {
    let total = flags.iter().filter(|&&r| r).count();
    if total == 0 {
        return Err(Error::NoRelevant);
    }
    let levels = recall_levels();
    let mut best = [0.0f64; 11];
    let mut found = 0usize;
    for (i, &rel) in flags.iter().enumerate() {
        found += usize::from(rel);
        let p = found as f64 / (i + 1) as f64;
        let r = found as f64 / total as f64;
        for (b, &level) in best.iter_mut().zip(&levels) {
            if r >= level && p > *b {
                *b = p;
            }
        }
    }
    Ok(best)
}

/// F-measure at a recall level from the interpolated precision there; 0 at
/// recall 0.
pub fn f_at(precision: f64, recall: f64) -> f64 {
    if recall == 0.0 || precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// Interpolated F-measure of one query at the 11 recall levels.
pub fn interpolated_f(precision: &[f64; 11]) -> [f64; 11] {
    let levels = recall_levels();
    std::array::from_fn(|l| f_at(precision[l], levels[l]))
}

/// Mean of per-query 11-point curves.
pub fn mean_curve(curves: &[[f64; 11]]) -> Result<[f64; 11]> {
    if curves.is_empty() {
        return Err(Error::NoQueries);
    }
    let n = curves.len() as f64;
    Ok(std::array::from_fn(|l| {
        curves.iter().map(|c| c[l]).sum::<f64>() / n
    }))
}

/// Per-query metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryMetrics {
    pub query: usize,
    pub average_precision: f64,
    /// Precision at a cutoff equal to the query's category size.
    pub precision_at_category: f64,
    pub precision: [f64; 11],
    pub f_measure: [f64; 11],
}

/// Corpus-level retrieval quality.
#[derive(Clone, Debug, PartialEq)]
pub struct RetrievalReport {
    pub map: f64,
    pub mean_p: f64,
    pub precision: [f64; 11],
    pub f_measure: [f64; 11],
    pub queries: Vec<QueryMetrics>,
}

fn query_metrics(list: &RankedList, qrels: &Qrels, query: usize) -> Result<QueryMetrics> {
    let flags = hits(list, |i| qrels.relevant(query, i));
    let precision = interpolated_precision_flags(&flags)?;
    let cutoff = qrels.category_size(query).min(list.len());
    Ok(QueryMetrics {
        query,
        average_precision: average_precision_flags(&flags)?,
        precision_at_category: precision_at(list, |i| qrels.relevant(query, i), cutoff)?,
        precision,
        f_measure: interpolated_f(&precision),
    })
}

/// Uses every corpus item as a query once.
pub fn evaluate(matrix: &DistanceMatrix, qrels: &Qrels) -> Result<RetrievalReport> {
    if matrix.len() != qrels.len() {
        return Err(Error::PartitionMismatch {
            left: matrix.len(),
            right: qrels.len(),
        });
    }
    let queries: Vec<QueryMetrics> = (0..matrix.len())
        .into_par_iter()
        .map(|q| query_metrics(&rank_in_matrix(matrix, q), qrels, q))
        .collect::<Result<_>>()?;
    let aps: Vec<f64> = queries.iter().map(|q| q.average_precision).collect();
    let ps: Vec<f64> = queries.iter().map(|q| q.precision_at_category).collect();
    let pr: Vec<[f64; 11]> = queries.iter().map(|q| q.precision).collect();
    let fr: Vec<[f64; 11]> = queries.iter().map(|q| q.f_measure).collect();
    Ok(RetrievalReport {
        map: mean_ap(&aps)?,
        mean_p: mean_ap(&ps)?,
        precision: mean_curve(&pr)?,
        f_measure: mean_curve(&fr)?,
        queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(ids: &[usize]) -> RankedList {
        RankedList {
            query: None,
            items: ids.iter().enumerate().map(|(r, &i)| (i, r as f64)).collect(),
        }
    }

    #[test]
    fn ties_break_by_id() {
        let l = RankedList::from_unsorted(None, vec![(3, 0.5), (1, 0.5), (2, 0.1)]);
        assert_eq!(l.ids().collect::<Vec<_>>(), vec![2, 1, 3]);
    }

    #[test]
    fn average_precision_cases() {
        let l = list(&[0, 1, 2, 3]);
        assert_eq!(average_precision(&l, |i| i < 2).unwrap(), 1.0);
        assert_eq!(average_precision(&l, |i| i == 1).unwrap(), 0.5);
        let ap = average_precision(&l, |i| i == 0 || i == 2).unwrap();
        assert!((ap - 5.0 / 6.0).abs() < 1e-12);
        assert!(matches!(average_precision(&l, |_| false), Err(Error::NoRelevant)));
    }

    #[test]
    fn precision_cutoffs() {
        let l = list(&[0, 1, 2, 3]);
        assert_eq!(precision_at(&l, |i| i == 0, 1).unwrap(), 1.0);
        let p = precision_at(&l, |i| i == 0 || i == 2, 3).unwrap();
        assert!((p - 2.0 / 3.0).abs() < 1e-12);
        assert!(precision_at(&l, |_| true, 5).is_err());
    }

    #[test]
    fn interpolation_two_relevant() {
        let l = list(&[0, 1, 2, 3]);
        let p = interpolated_precision(&l, |i| i == 0 || i == 3).unwrap();
        for (level, &v) in recall_levels().iter().zip(&p) {
            let expect = if *level <= 0.5 { 1.0 } else { 0.5 };
            assert_eq!(v, expect, "level {level}");
        }
        let f = interpolated_f(&p);
        assert_eq!(f[0], 0.0);
        assert!((f[5] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn mean_ap_of_two() {
        assert!((mean_ap(&[0.4, 0.6]).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(mean_ap(&[]), Err(Error::NoQueries)));
    }

    #[test]
    fn qrels_classes() {
        let q = Qrels::new(["b", "a", "b"]);
        assert_eq!(q.classes(), &[1, 0, 1]);
        assert_eq!(q.category_size(0), 2);
        assert_eq!(q.relevant_count(1), 0);
        assert!(q.relevant(0, 2));
    }
}
