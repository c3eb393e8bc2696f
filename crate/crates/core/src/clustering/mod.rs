//! Hierarchical agglomerative clustering, K-means and external clustering
//! quality metrics.

mod hac;
mod kmeans;
mod quality;

pub use hac::{cluster_distance, hac, hac_with_matrix, Hac, Merge};
pub use kmeans::{kmeans, KMeans};
pub use quality::{nmi, pair_counts, pair_prf, purity, rand_index, PairCounts, Quality};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Inter-cluster distance criterion of agglomerative clustering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// Size-weighted squared Euclidean distance of the centroids.
    Ward,
    /// Smallest member distance.
    Single,
    /// Largest member distance.
    Complete,
    /// Mean member distance.
    Average,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Ward,
        Criterion::Single,
        Criterion::Complete,
        Criterion::Average,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Ward => "ward",
            Criterion::Single => "single",
            Criterion::Complete => "complete",
            Criterion::Average => "average",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCriterion(s.to_string()))
    }
}

/// A partition of items `0..n` into clusters `0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    assignments: Vec<usize>,
    clusters: usize,
}

impl Clustering {
    /// Wraps per-item cluster ids, renumbering them densely in order of first
    /// appearance.
    pub fn from_assignments(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let assignments = raw
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        Clustering {
            assignments,
            clusters: map.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    pub fn cluster_of(&self, item: usize) -> usize {
        self.assignments[item]
    }

    /// Members of each cluster in ascending item order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.clusters];
        for (i, &c) in self.assignments.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

pub(crate) fn check_cluster_count(m: usize, n: usize) -> Result<()> {
    if m == 0 || m > n {
        Err(Error::InvalidClusterCount { m, n })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_renumbering() {
        let c = Clustering::from_assignments(&[7, 3, 7, 9]);
        assert_eq!(c.assignments(), &[0, 1, 0, 2]);
        assert_eq!(c.cluster_count(), 3);
        assert_eq!(c.clusters(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn criterion_names() {
        for c in Criterion::ALL {
            assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
        }
        assert!("median".parse::<Criterion>().is_err());
    }
}
