mod common;

use proptest::collection::{btree_map, vec};
use proptest::prelude::*;

use textile_core::clustering::{cluster_distance, nmi, Criterion, Quality};
use textile_core::distance::distance_matrix;
use textile_core::generators::{generate, transform, Family, PatternSpec, Transform};
use textile_core::retrieval::{
    average_precision, evaluate, interpolated_precision, rank, Qrels, RankedList,
};
use textile_core::{fingerprint, parse, serialize, CorpusStats, DistanceMatrix, Measure, SparseVector};

fn counts() -> impl Strategy<Value = SparseVector> {
    btree_map(0u32..12, 1u32..6, 1..8)
        .prop_map(|m| SparseVector::from_pairs(m.into_iter().map(|(k, v)| (k, f64::from(v)))))
}

fn measures() -> impl Strategy<Value = Measure> {
    proptest::sample::select(Measure::ALL.to_vec())
}

fn d(m: Measure, a: &SparseVector, b: &SparseVector, stats: &CorpusStats) -> f64 {
    m.distance(a, b, Some(stats)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn identity_symmetry_nonnegativity(m in measures(), a in counts(), b in counts(), extra in counts()) {
        // A corpus where every key is missing from at least one document
        // keeps some idf non-zero.
        let stats = CorpusStats::new([&a, &b, &extra, &SparseVector::from_pairs([(99, 1.0)])]).unwrap();
        let ab = d(m, &a, &b, &stats);
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - d(m, &b, &a, &stats)).abs() < 1e-12);
        prop_assert!(d(m, &a, &a, &stats).abs() < 1e-12);
        if matches!(m, Measure::CosineFreq | Measure::CosineTfIdf | Measure::Jaccard | Measure::Overlap) {
            prop_assert!(ab <= 1.0);
        }
        if m == Measure::HammingBool {
            let union: std::collections::BTreeSet<u32> = a.keys().chain(b.keys()).collect();
            prop_assert!(ab <= union.len() as f64);
        }
    }

    #[test]
    fn triangle_inequality(
        m in proptest::sample::select(vec![Measure::Euclidean, Measure::HammingFreq, Measure::HammingBool, Measure::Jaccard]),
        a in counts(), b in counts(), c in counts(),
    ) {
        let stats = CorpusStats::new([&a, &b, &c]).unwrap();
        prop_assert!(d(m, &a, &c, &stats) <= d(m, &a, &b, &stats) + d(m, &b, &c, &stats) + 1e-9);
    }

    #[test]
    fn zero_entries_change_nothing(m in measures(), a in counts(), b in counts(), key in 20u32..30) {
        let stats = CorpusStats::new([&a, &b]).unwrap();
        let padded = SparseVector::from_pairs(a.entries().iter().copied().chain([(key, 0.0)]));
        prop_assert_eq!(d(m, &padded, &b, &stats), d(m, &a, &b, &stats));
    }

    #[test]
    fn matches_naive_measures(m in measures(), a in counts(), b in counts(), c in counts()) {
        let stats = CorpusStats::new([&a, &b, &c]).unwrap();
        let as_map = |v: &SparseVector| -> common::Counts {
            v.entries().iter().map(|&(k, x)| (k.to_string(), x)).collect()
        };
        let docs = [as_map(&a), as_map(&b), as_map(&c)];
        let want = common::naive_distance(m.name(), &docs[0], &docs[1], &docs);
        prop_assert!((d(m, &a, &b, &stats) - want).abs() < 1e-9);
    }

    #[test]
    fn matrix_permutes_with_input(m in measures(), items in vec(counts(), 2..7), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut order: Vec<usize> = (0..items.len()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled: Vec<SparseVector> = order.iter().map(|&i| items[i].clone()).collect();
        let s1 = CorpusStats::new(&items).unwrap();
        let s2 = CorpusStats::new(&shuffled).unwrap();
        let x = distance_matrix(&items, m, Some(&s1)).unwrap();
        let y = distance_matrix(&shuffled, m, Some(&s2)).unwrap();
        for i in 0..items.len() {
            for j in 0..items.len() {
                prop_assert_eq!(y.get(i, j), x.get(order[i], order[j]));
            }
        }
    }

    #[test]
    fn ranking_ignores_corpus_order(items in vec(counts(), 3..9), q in counts(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut order: Vec<usize> = (0..items.len()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled: Vec<SparseVector> = order.iter().map(|&i| items[i].clone()).collect();
        let a = rank(&items, &q, None, Measure::Jaccard, None).unwrap();
        let b = rank(&shuffled, &q, None, Measure::Jaccard, None).unwrap();
        let da: Vec<f64> = a.items.iter().map(|e| e.1).collect();
        let db: Vec<f64> = b.items.iter().map(|e| e.1).collect();
        prop_assert_eq!(da, db);
        // Items at equal distance may swap; the multiset of originals may not.
        let mut ia: Vec<usize> = a.items.iter().map(|e| e.0).collect();
        let mut ib: Vec<usize> = b.items.iter().map(|e| order[e.0]).collect();
        ia.sort();
        ib.sort();
        prop_assert_eq!(ia, ib);
    }

    #[test]
    fn retrieval_metrics_bounded_and_monotone(dist in vec(0u8..5, 4..20), rel in vec(any::<bool>(), 4..20)) {
        let n = dist.len().min(rel.len());
        prop_assume!(rel[..n].iter().any(|&r| r));
        let list = RankedList::from_unsorted(None, (0..n).map(|i| (i, f64::from(dist[i]))).collect());
        let ap = average_precision(&list, |i| rel[i]).unwrap();
        prop_assert!((0.0..=1.0).contains(&ap));
        let first_irrelevant = list.items.iter().position(|e| !rel[e.0]).unwrap_or(n);
        let last_relevant = list.items.iter().rposition(|e| rel[e.0]).unwrap();
        prop_assert_eq!(ap == 1.0, last_relevant < first_irrelevant);
        let p = interpolated_precision(&list, |i| rel[i]).unwrap();
        prop_assert!(p.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn metrics_depend_only_on_order(values in vec(0u8..6, 15), labels in vec(0u8..3, 6)) {
        prop_assume!((0..3).all(|c| labels.iter().filter(|&&l| l == c).count() != 1));
        let qrels = Qrels::new(labels.iter().map(|l| l.to_string()));
        let raw: Vec<f64> = values.iter().map(|&v| f64::from(v)).collect();
        let squeezed: Vec<f64> = raw.iter().map(|x| (x / 3.0).exp() + 7.0).collect();
        let a = evaluate(&DistanceMatrix::from_condensed(6, Measure::Euclidean, raw), &qrels);
        let b = evaluate(&DistanceMatrix::from_condensed(6, Measure::Euclidean, squeezed), &qrels);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.map, b.map);
                prop_assert_eq!(a.mean_p, b.mean_p);
                prop_assert_eq!(a.precision, b.precision);
            }
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn linkage_ordering(items in vec(counts(), 4..9), split in 1usize..3) {
        let chi = distance_matrix(&items, Measure::HammingFreq, None).unwrap();
        let (u1, u2): (Vec<usize>, Vec<usize>) = (0..items.len()).partition(|&i| i % (split + 1) == 0);
        let s = cluster_distance(&u1, &u2, Criterion::Single, &chi, &items);
        let a = cluster_distance(&u1, &u2, Criterion::Average, &chi, &items);
        let c = cluster_distance(&u1, &u2, Criterion::Complete, &chi, &items);
        prop_assert!(s <= a + 1e-12 && a <= c + 1e-12);
    }

    #[test]
    fn quality_ignores_cluster_names(found in vec(0usize..4, 2..30), perm in Just([3usize, 0, 2, 1])) {
        let truth: Vec<usize> = (0..found.len()).map(|i| i % 3).collect();
        let renamed: Vec<usize> = found.iter().map(|&c| perm[c] + 10).collect();
        let a = Quality::compute(&found, &truth).unwrap();
        let b = Quality::compute(&renamed, &truth).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() < 1e-12);
            prop_assert!((0.0..=1.0 + 1e-12).contains(x));
        }
        prop_assert!((nmi(&found, &truth).unwrap() - nmi(&truth, &found).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn serialize_parse_round_trip(seed in any::<u64>(), n in 0usize..12) {
        use rand::SeedableRng;
        let peers = common::random_peers(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n);
        let text = common::to_text(&peers);
        let g = parse(&text).unwrap();
        prop_assert_eq!(serialize(&g), text.clone());
        prop_assert_eq!(parse(&serialize(&g)).unwrap(), g.clone());
        // Whitespace and comments do not matter.
        let loose = text.replace(' ', "   ").replacen('\n', "\n# comment\n", 1);
        prop_assert_eq!(parse(&loose).unwrap(), g);
    }

    #[test]
    fn labels_agree_from_both_ends_and_pad_after_end(seed in any::<u64>(), n in 1usize..10, k in 1usize..6) {
        use rand::SeedableRng;
        use textile_core::fingerprint::{edge_label, k_neighbourhood};
        use textile_core::EdgeLabel;
        let peers = common::random_peers(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n);
        let g = parse(&common::to_text(&peers)).unwrap();
        for v in 0..4 * n {
            if let Some(p) = g.slot(v).unwrap().peer {
                prop_assert_eq!(edge_label(&g, v).unwrap(), edge_label(&g, p).unwrap());
            }
        }
        for c in 0..n {
            let nb = k_neighbourhood(&g, c, k).unwrap();
            for i in 0..4 {
                let s = nb.sequence(i);
                if let Some(t) = s.iter().position(|&l| l == EdgeLabel::Terminated) {
                    prop_assert!(s[t + 1..].iter().all(|&l| l == EdgeLabel::Pad));
                } else {
                    prop_assert!(!s.contains(&EdgeLabel::Pad));
                }
            }
        }
        let fp = fingerprint(&g, k).unwrap();
        prop_assert_eq!(fp.total(), n as u64);
    }

    #[test]
    fn crossing_order_does_not_matter(seed in any::<u64>(), n in 1usize..10, shift in 1usize..9) {
        use rand::SeedableRng;
        let peers = common::random_peers(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n);
        // Rotate crossing indices by `shift`, renumbering every peer.
        let shift = shift % n;
        let map = |c: usize| (c + shift) % n;
        let mut moved = vec![[-1i64; 4]; n];
        for (c, p) in peers.iter().enumerate() {
            moved[map(c)] = p.map(|v| if v < 0 { v } else { (4 * map(v as usize / 4) + v as usize % 4) as i64 });
        }
        let a = parse(&common::to_text(&peers)).unwrap();
        let b = parse(&common::to_text(&moved)).unwrap();
        for k in 1..4 {
            prop_assert_eq!(common::library_fingerprint(&a, k), common::library_fingerprint(&b, k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transforms_keep_fingerprints(
        family in proptest::sample::select(Family::categories().to_vec()),
        rows in 6usize..14, cols in 6usize..14, seed in any::<u64>(),
        op in proptest::sample::select(Transform::ALL.to_vec()),
    ) {
        let g = generate(&PatternSpec::new(family, rows, cols, seed)).unwrap();
        let t = transform(&g, op);
        prop_assert!(textile_core::validate(&t).is_empty());
        for k in [1, 2, 4] {
            prop_assert_eq!(common::library_fingerprint(&t, k), common::library_fingerprint(&g, k));
        }
    }
}
