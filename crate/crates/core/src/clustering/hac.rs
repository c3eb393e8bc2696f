use super::{check_cluster_count, Clustering, Criterion};
use crate::distance::{distance_matrix, euclidean, CorpusStats, DistanceMatrix, Measure, SparseVector};
use crate::error::{Error, Result};

/// One agglomeration step. Clusters are named by their smallest member.
#[derive(Clone, Debug, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
    /// Size of the merged cluster.
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hac {
    pub clustering: Clustering,
    pub merges: Vec<Merge>,
}

/// Agglomerates singletons until `m` clusters remain.
///
/// Ward linkage works on Euclidean centroids and accepts only
/// [`Measure::Euclidean`]; the other criteria read the pairwise distance
/// matrix of `measure`.
pub fn hac(
    vectors: &[SparseVector],
    m: usize,
    measure: Measure,
    criterion: Criterion,
    stats: Option<&CorpusStats>,
) -> Result<Hac> {
    check_cluster_count(m, vectors.len())?;
    if criterion == Criterion::Ward {
        if measure != Measure::Euclidean {
            return Err(Error::WardMeasure(measure.name()));
        }
        return ward(vectors, m);
    }
    let matrix = distance_matrix(vectors, measure, stats)?;
    hac_with_matrix(&matrix, m, criterion)
}

/// Single, complete or average linkage over a precomputed matrix.
pub fn hac_with_matrix(matrix: &DistanceMatrix, m: usize, criterion: Criterion) -> Result<Hac> {
    let n = matrix.len();
    check_cluster_count(m, n)?;
    if criterion == Criterion::Ward {
        return Err(Error::Unsupported(
            "ward linkage needs the fingerprint vectors, not a distance matrix".into(),
        ));
    }
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let x = matrix.get(i, j);
            d[i * n + j] = x;
            d[j * n + i] = x;
        }
    }
    // Member-pair distance sums for average linkage.
    let mut sums = if criterion == Criterion::Average {
        d.clone()
    } else {
        Vec::new()
    };
    agglomerate(n, m, d, |state, keep, gone, c| {
        let (a, b) = (state.at(keep, c), state.at(gone, c));
        match criterion {
            Criterion::Single => a.min(b),
            Criterion::Complete => a.max(b),
            _ => {
                let s = sums[keep * n + c] + sums[gone * n + c];
                sums[keep * n + c] = s;
                sums[c * n + keep] = s;
                let pairs = state.members[keep].len() * state.members[c].len();
                s / pairs as f64
            }
        }
    })
}

fn ward(vectors: &[SparseVector], m: usize) -> Result<Hac> {
    let n = vectors.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let e = euclidean(&vectors[i], &vectors[j]);
            let x = 0.5 * e * e;
            d[i * n + j] = x;
            d[j * n + i] = x;
        }
    }
    let mut centroids: Vec<SparseVector> = vectors.to_vec();
    let mut done = usize::MAX;
    agglomerate(n, m, d, |state, keep, _gone, c| {
        if done != state.step {
            centroids[keep] = SparseVector::mean(state.members[keep].iter().map(|&i| &vectors[i]));
            done = state.step;
        }
        let (su, sv) = (state.members[keep].len() as f64, state.members[c].len() as f64);
        let e = euclidean(&centroids[keep], &centroids[c]);
        su * sv / (su + sv) * e * e
    })
}

struct State {
    n: usize,
    d: Vec<f64>,
    members: Vec<Vec<usize>>,
    /// Number of merges performed so far.
    step: usize,
}

impl State {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

/// Generic merge loop. `update(state, keep, gone, c)` returns the distance
/// between the merged cluster `keep` and active cluster `c`; it runs after
/// `keep` has absorbed the members of `gone`.
fn agglomerate(
    n: usize,
    m: usize,
    d: Vec<f64>,
    mut update: impl FnMut(&State, usize, usize, usize) -> f64,
) -> Result<Hac> {
    let mut state = State {
        n,
        d,
        members: (0..n).map(|i| vec![i]).collect(),
        step: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    let mut alive = vec![true; n];
    // Per active row r: smallest distance to an active cluster with a larger
    // index, and that index (first on ties).
    let mut row_min: Vec<(f64, usize)> = vec![(f64::INFINITY, usize::MAX); n];
    let scan = |state: &State, alive: &[bool], r: usize| -> (f64, usize) {
        let mut best = (f64::INFINITY, usize::MAX);
        for j in r + 1..n {
            if alive[j] && (best.1 == usize::MAX || state.at(r, j) < best.0) {
                best = (state.at(r, j), j);
            }
        }
        best
    };
    for r in 0..n {
        row_min[r] = scan(&state, &alive, r);
    }

    let mut merges = Vec::with_capacity(n.saturating_sub(m));
    while active.len() > m {
        let mut best = (f64::INFINITY, usize::MAX, usize::MAX);
        for &r in &active {
            let (v, j) = row_min[r];
            if j != usize::MAX && (best.1 == usize::MAX || v < best.0) {
                best = (v, r, j);
            }
        }
        let (distance, keep, gone) = best;

        let moved = std::mem::take(&mut state.members[gone]);
        let mut merged = Vec::with_capacity(state.members[keep].len() + moved.len());
        let (x, y) = (&state.members[keep], &moved);
        let (mut p, mut q) = (0, 0);
        while p < x.len() || q < y.len() {
            if q == y.len() || (p < x.len() && x[p] < y[q]) {
                merged.push(x[p]);
                p += 1;
            } else {
                merged.push(y[q]);
                q += 1;
            }
        }
        state.members[keep] = merged;
        alive[gone] = false;
        active.retain(|&c| c != gone);
        state.step += 1;

        // The update closure may read the gone row; overwrite keep afterwards.
        let mut new_row = Vec::with_capacity(active.len());
        for &c in &active {
            if c != keep {
                new_row.push((c, update(&state, keep, gone, c)));
            }
        }
        for (c, v) in new_row {
            state.d[keep * n + c] = v;
            state.d[c * n + keep] = v;
        }

        merges.push(Merge {
            left: keep,
            right: gone,
            distance,
            size: state.members[keep].len(),
        });

        for &r in &active {
            if r < keep {
                let (v, j) = row_min[r];
                if j == keep || j == gone {
                    row_min[r] = scan(&state, &alive, r);
                } else {
                    let x = state.at(r, keep);
                    if x < v || (x == v && keep < j) {
                        row_min[r] = (x, keep);
                    }
                }
            } else if r == keep || (r < gone && row_min[r].1 == gone) {
                row_min[r] = scan(&state, &alive, r);
            }
        }
    }

    let mut labels = vec![0; n];
    for (id, &rep) in active.iter().enumerate() {
        for &i in &state.members[rep] {
            labels[i] = id;
        }
    }
    Ok(Hac {
        clustering: Clustering::from_assignments(&labels),
        merges,
    })
}

/// Distance between two disjoint clusters under `criterion`, read from the
/// pairwise matrix (single, complete, average) or from member centroids
/// (ward).
pub fn cluster_distance(
    u1: &[usize],
    u2: &[usize],
    criterion: Criterion,
    chi: &DistanceMatrix,
    vectors: &[SparseVector],
) -> f64 {
    let pairs = || u1.iter().flat_map(|&a| u2.iter().map(move |&b| chi.get(a, b)));
    match criterion {
        Criterion::Single => pairs().fold(f64::INFINITY, f64::min),
        Criterion::Complete => pairs().fold(f64::NEG_INFINITY, f64::max),
        Criterion::Average => pairs().sum::<f64>() / (u1.len() * u2.len()) as f64,
        Criterion::Ward => {
            let c1 = SparseVector::mean(u1.iter().map(|&i| &vectors[i]));
            let c2 = SparseVector::mean(u2.iter().map(|&i| &vectors[i]));
            let (a, b) = (u1.len() as f64, u2.len() as f64);
            let e = euclidean(&c1, &c2);
            a * b / (a + b) * e * e
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64]) -> Vec<SparseVector> {
        points
            .iter()
            .map(|&x| SparseVector::from_pairs([(0, x)]))
            .collect()
    }

    #[test]
    fn singletons_when_m_equals_n() {
        let v = line(&[0.0, 1.0, 2.0]);
        let h = hac(&v, 3, Measure::HammingFreq, Criterion::Single, None).unwrap();
        assert!(h.merges.is_empty());
        assert_eq!(h.clustering.cluster_count(), 3);
    }

    #[test]
    fn two_groups_on_a_line() {
        let v = line(&[0.0, 1.0, 10.0, 11.0]);
        for c in [Criterion::Single, Criterion::Complete, Criterion::Average] {
            let h = hac(&v, 2, Measure::HammingFreq, c, None).unwrap();
            assert_eq!(h.clustering.assignments(), &[0, 0, 1, 1], "{c}");
        }
        let h = hac(&v, 2, Measure::Euclidean, Criterion::Ward, None).unwrap();
        assert_eq!(h.clustering.assignments(), &[0, 0, 1, 1]);
    }

    #[test]
    fn ward_rejects_other_measures() {
        let v = line(&[0.0, 1.0]);
        assert!(matches!(
            hac(&v, 1, Measure::Jaccard, Criterion::Ward, None),
            Err(Error::WardMeasure("jaccard"))
        ));
    }

    #[test]
    fn invalid_cluster_count() {
        let v = line(&[0.0, 1.0]);
        assert!(hac(&v, 0, Measure::Euclidean, Criterion::Single, None).is_err());
        assert!(hac(&v, 3, Measure::Euclidean, Criterion::Single, None).is_err());
    }

    #[test]
    fn criterion_values() {
        // chi(a,c) = 1, chi(b,c) = 3
        let chi = DistanceMatrix::from_condensed(3, Measure::HammingFreq, vec![2.0, 1.0, 3.0]);
        let v = line(&[0.0, 2.0, 1.0]);
        assert_eq!(cluster_distance(&[0, 1], &[2], Criterion::Single, &chi, &v), 1.0);
        assert_eq!(cluster_distance(&[0, 1], &[2], Criterion::Complete, &chi, &v), 3.0);
        assert_eq!(cluster_distance(&[0, 1], &[2], Criterion::Average, &chi, &v), 2.0);
        // identical centroids
        assert_eq!(cluster_distance(&[0, 1], &[2], Criterion::Ward, &chi, &v), 0.0);
        // singletons: half the squared distance
        assert_eq!(cluster_distance(&[0], &[1], Criterion::Ward, &chi, &v), 2.0);
    }

    #[test]
    fn ties_merge_lowest_pair() {
        let v = line(&[0.0, 1.0, 2.0, 3.0]);
        let h = hac(&v, 3, Measure::HammingFreq, Criterion::Single, None).unwrap();
        assert_eq!((h.merges[0].left, h.merges[0].right), (0, 1));
    }
}
