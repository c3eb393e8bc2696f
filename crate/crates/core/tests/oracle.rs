mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{as_counts, naive_distance, naive_fingerprint, random_peers, to_text, Counts};
use textile_core::experiment::features;
use textile_core::generators::{generate, Family, PatternSpec};
use textile_core::{parse, validate, Measure};

#[test]
fn traversal_matches_naive_walk_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..200 {
        let n = rng.gen_range(0..=10);
        let peers = random_peers(&mut rng, n);
        let g = parse(&to_text(&peers)).unwrap();
        assert!(validate(&g).is_empty());
        for k in 1..=4 {
            assert_eq!(
                common::library_fingerprint(&g, k),
                naive_fingerprint(&peers, k),
                "case {case}, k = {k}\n{}",
                to_text(&peers)
            );
        }
    }
}

#[test]
fn traversal_matches_naive_walk_on_generated_graphs() {
    for family in Family::categories() {
        let g = generate(&PatternSpec::new(family, 8, 8, 3)).unwrap();
        let peers = common::peers_of(&textile_core::serialize(&g));
        for k in [1, 3, 5] {
            assert_eq!(
                common::library_fingerprint(&g, k),
                naive_fingerprint(&peers, k),
                "{family} k = {k}"
            );
        }
    }
}

#[test]
fn matrix_matches_naive_double_loop() {
    let graphs: Vec<_> = Family::categories()
        .iter()
        .enumerate()
        .map(|(i, &f)| generate(&PatternSpec::new(f, 6 + i % 3, 7, i as u64)).unwrap())
        .collect();
    for k in [1, 2] {
        let f = features(&graphs, k).unwrap();
        let docs: Vec<Counts> = graphs
            .iter()
            .map(|g| as_counts(&common::library_fingerprint(g, k)))
            .collect();
        for m in Measure::ALL {
            let matrix = f.matrix(m).unwrap();
            assert_eq!(matrix.len(), graphs.len());
            for i in 0..graphs.len() {
                assert_eq!(matrix.get(i, i), 0.0);
                for j in 0..graphs.len() {
                    let want = if i == j {
                        0.0
                    } else {
                        naive_distance(m.name(), &docs[i], &docs[j], &docs)
                    };
                    let got = matrix.get(i, j);
                    assert!(
                        (got - want).abs() < 1e-9,
                        "{m} k={k} ({i},{j}): {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn toy_tfidf_by_hand() {
    // Three documents {a:1}, {a:1, b:1}, {b:2}: N = 3, f_a = f_b = 2, so
    // both idf are ln 1.5. {a:1} weighs (ln 1.5, 0); {a:1, b:1} weighs
    // (ln 1.5, ln 1.5); the cosine is 1/sqrt 2.
    let docs: Vec<Counts> = [vec![("a", 1.0)], vec![("a", 1.0), ("b", 1.0)], vec![("b", 2.0)]]
        .into_iter()
        .map(|d| d.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
        .collect();
    let d = naive_distance("cos-tfidf", &docs[0], &docs[1], &docs);
    assert!((d - (1.0 - 1.0 / 2f64.sqrt())).abs() < 1e-12);
    assert_eq!(naive_distance("cos-tfidf", &docs[0], &docs[2], &docs), 1.0);

    use textile_core::{CorpusStats, SparseVector};
    let v = [
        SparseVector::from_pairs([(0, 1.0)]),
        SparseVector::from_pairs([(0, 1.0), (1, 1.0)]),
        SparseVector::from_pairs([(1, 2.0)]),
    ];
    let stats = CorpusStats::new(&v).unwrap();
    assert_eq!(stats.docs(), 3);
    assert_eq!((stats.doc_freq(0), stats.doc_freq(1)), (Some(2), Some(2)));
    let lib = textile_core::distance::cosine_tfidf(&v[0], &v[1], &stats).unwrap();
    assert!((lib - d).abs() < 1e-12);
    assert_eq!(textile_core::distance::cosine_tfidf(&v[0], &v[2], &stats).unwrap(), 1.0);
}
