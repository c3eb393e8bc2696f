use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check_cluster_count, Clustering};
use crate::distance::{CorpusStats, Measure, SparseVector};
use crate::error::{Error, Result};

/// Centroids closer than this in every component count as unchanged.
const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct KMeans {
    pub clustering: Clustering,
    /// Mean count vector of each cluster.
    pub centroids: Vec<SparseVector>,
    /// Assignment cost after each iteration: the sum of member-to-centroid
    /// distances, squared for the Euclidean measure (the quantity the mean
    /// update minimizes).
    pub objective: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Whether every component of `a` and `b` differs by at most the tolerance.
fn unchanged(a: &SparseVector, b: &SparseVector) -> bool {
    let (x, y) = (a.entries(), b.entries());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let d = if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            x[i - 1].1
        } else if i == x.len() || y[j].0 < x[i].0 {
            j += 1;
            y[j - 1].1
        } else {
            i += 1;
            j += 1;
            x[i - 1].1 - y[j - 1].1
        };
        if d.abs() > TOLERANCE {
            return false;
        }
    }
    true
}

/// K-means with `m` initial centroids drawn from the items by a seeded RNG.
///
/// Each iteration assigns every item to its closest centroid (lowest index
/// on ties) and moves each centroid to its members' mean. A cluster left
/// empty takes over the item farthest from its centroid among clusters with
/// more than one member. Stops when no centroid moves or after `max_iter`
/// iterations.
pub fn kmeans(
    vectors: &[SparseVector],
    m: usize,
    max_iter: usize,
    measure: Measure,
    stats: Option<&CorpusStats>,
    seed: u64,
) -> Result<KMeans> {
    let n = vectors.len();
    check_cluster_count(m, n)?;
    if max_iter == 0 {
        return Err(Error::InvalidMaxIter);
    }
    if measure.needs_stats() && stats.is_none() {
        return Err(Error::MissingStats);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut init = rand::seq::index::sample(&mut rng, n, m).into_vec();
    init.sort_unstable();
    let mut centroids: Vec<SparseVector> = init.iter().map(|&i| vectors[i].clone()).collect();

    let cost = |d: f64| if measure == Measure::Euclidean { d * d } else { d };
    let mut assignment = vec![0usize; n];
    let mut objective = Vec::new();
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        iterations += 1;
        let nearest: Vec<(usize, f64)> = vectors
            .par_iter()
            .map(|v| {
                let mut best = (0, f64::INFINITY);
                for (c, centroid) in centroids.iter().enumerate() {
                    let d = measure.distance(v, centroid, stats)?;
                    if d < best.1 {
                        best = (c, d);
                    }
                }
                Ok(best)
            })
            .collect::<Result<_>>()?;
        let mut dist: Vec<f64> = nearest.iter().map(|e| e.1).collect();
        for (a, e) in assignment.iter_mut().zip(&nearest) {
            *a = e.0;
        }

        let mut sizes = vec![0usize; m];
        for &a in &assignment {
            sizes[a] += 1;
        }
        for empty in 0..m {
            if sizes[empty] > 0 {
                continue;
            }
            let donor = (0..n)
                .filter(|&i| sizes[assignment[i]] > 1)
                .max_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(b.cmp(&a)))
                .expect("a cluster with two members exists while another is empty");
            sizes[assignment[donor]] -= 1;
            assignment[donor] = empty;
            sizes[empty] = 1;
            dist[donor] = 0.0;
        }
        objective.push(dist.iter().map(|&d| cost(d)).sum());

        let mut members: Vec<Vec<&SparseVector>> = vec![Vec::new(); m];
        for (i, &a) in assignment.iter().enumerate() {
            members[a].push(&vectors[i]);
        }
        let updated: Vec<SparseVector> = members
            .into_iter()
            .map(SparseVector::mean)
            .collect();
        let stable = updated
            .iter()
            .zip(&centroids)
            .all(|(a, b)| unchanged(a, b));
        centroids = updated;
        if stable {
            converged = true;
            break;
        }
    }

    Ok(KMeans {
        clustering: Clustering::from_assignments(&assignment),
        centroids,
        objective,
        iterations,
        converged,
    })
}
