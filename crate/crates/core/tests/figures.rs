mod common;

use std::collections::BTreeMap;

use common::{H1, H2};
use textile_core::fingerprint::{edge_label, k_neighbourhood};
use textile_core::{fingerprint, parse, serialize, validate, EdgeLabel};

fn counts(pairs: &[(&str, u32)]) -> BTreeMap<String, u32> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

#[test]
fn h1_is_valid_and_round_trips() {
    let g = parse(H1).unwrap();
    assert!(validate(&g).is_empty());
    assert_eq!(g.crossing_count(), 4);
    assert_eq!(g.terminal_count(), 8);
    assert_eq!(serialize(&g), H1);
}

#[test]
fn h1_fingerprint() {
    let g = parse(H1).unwrap();
    assert_eq!(common::library_fingerprint(&g, 1), counts(&[("[a|t][a|t]", 4)]));
}

#[test]
fn h1_alternating_edge() {
    // Top-right end of the first crossing leads under the second crossing.
    let g = parse(H1).unwrap();
    assert_eq!(edge_label(&g, 1).unwrap(), EdgeLabel::Alternating);
    assert_eq!(edge_label(&g, 6).unwrap(), EdgeLabel::Alternating);
    assert_eq!(edge_label(&g, 0).unwrap(), EdgeLabel::Terminated);
}

#[test]
fn h2_fingerprint() {
    let g = parse(H2).unwrap();
    assert!(validate(&g).is_empty());
    assert_eq!(
        common::library_fingerprint(&g, 1),
        counts(&[("[a|n][a|n]", 2), ("[a|t][a|t]", 2)])
    );
}

#[test]
fn h2_every_link_listed_twice() {
    let g = parse(H2).unwrap();
    let text = serialize(&g);
    assert_eq!(text, H2);
    let mut seen = BTreeMap::new();
    for tok in text.lines().skip(1).flat_map(|l| l.split_whitespace()) {
        let v: i64 = tok.parse().unwrap();
        if v >= 0 {
            *seen.entry(v).or_insert(0) += 1;
        }
    }
    // Each linked node appears once as a peer; links are symmetric, so every
    // link shows up twice across its two endpoints.
    assert_eq!(seen.len(), 12);
    assert!(seen.values().all(|&c| c == 1));
}

#[test]
fn h2_two_neighbourhood_of_x1() {
    let g = parse(H2).unwrap();
    let nb = k_neighbourhood(&g, 0, 2).unwrap();
    assert_eq!(nb.to_string(), "[at|na][at|na]");
    use EdgeLabel::*;
    assert_eq!(nb.top_pair(), [&[Alternating, Terminated][..], &[NonAlternating, Alternating][..]]);
    assert_eq!(nb.bottom_pair(), [&[Alternating, Terminated][..], &[NonAlternating, Alternating][..]]);
}

#[test]
fn h2_labels() {
    let g = parse(H2).unwrap();
    // x3 slot 0 is B's loose end.
    assert_eq!(edge_label(&g, 8).unwrap(), EdgeLabel::Terminated);
    // A leaves x1 on top and arrives at x2 on top.
    assert_eq!(edge_label(&g, 1).unwrap(), EdgeLabel::NonAlternating);
    assert_eq!(edge_label(&g, 4).unwrap(), EdgeLabel::NonAlternating);
}

#[test]
fn worked_vectors_from_figures() {
    // H1 and H2 as count vectors over (neighbourhood [a|n][a|n], [a|t][a|t]).
    let h1 = fingerprint(&parse(H1).unwrap(), 1).unwrap();
    let h2 = fingerprint(&parse(H2).unwrap(), 1).unwrap();
    let an = "[a|n][a|n]".parse().unwrap();
    let at = "[a|t][a|t]".parse().unwrap();
    assert_eq!((h1.count(&an), h1.count(&at)), (0, 4));
    assert_eq!((h2.count(&an), h2.count(&at)), (2, 2));
}

#[test]
fn asymmetric_link_names_both_nodes() {
    let err = parse("TG1 2\n4 -1 -1 -1\n1 -1 -1 -1\n").unwrap_err().to_string();
    assert!(err.contains('0') && err.contains('4'), "{err}");
}

#[test]
fn three_top_slots_reported() {
    use textile_core::graph::NodeSlot;
    let mut slots: Vec<NodeSlot> = (0..4).map(|s| NodeSlot::conventional(0, s, None)).collect();
    slots[2].on_top = true;
    let report = validate(&textile_core::TextileGraph::from_slots(slots));
    assert!(report.to_string().contains("Π-pair"), "{report}");
}
