//! Fixtures and independent oracles shared by the integration tests.
//!
//! The oracles work on raw peer tables and label strings only; they do not
//! call into the library's traversal or distance code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

/// Four crossings of a 2 x 2 plain weave, every thread end loose.
pub const H1: &str = "TG1 4
-1 6 -1 8
-1 14 1 -1
3 -1 -1 12
11 -1 5 -1
";

/// Two threads crossing four times: A runs t, x3, x1, x2, x4, t and B runs
/// t, x3, x2, x1, x4, t. A is on top at x1 and x2, B at x3 and x4. Crossings
/// are stored in the order x1, x2, x3, x4.
pub const H2: &str = "TG1 4
11 4 7 12
1 14 9 2
-1 6 -1 0
3 -1 5 -1
";

/// Peer table: `peers[c][s]` is the global node linked to slot `s` of
/// crossing `c`, or -1.
pub type Peers = Vec<[i64; 4]>;

pub fn peers_of(text: &str) -> Peers {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#') && !l.starts_with("LABEL") && !l.trim().is_empty())
        .map(|l| {
            let v: Vec<i64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

pub fn to_text(peers: &Peers) -> String {
    let mut s = format!("TG1 {}\n", peers.len());
    for p in peers {
        s.push_str(&format!("{} {} {} {}\n", p[0], p[1], p[2], p[3]));
    }
    s
}

/// A random valid graph with `n` crossings: a random matching of node
/// slots, never pairing two slots of one crossing; the rest are loose.
pub fn random_peers(rng: &mut impl Rng, n: usize) -> Peers {
    let mut peers = vec![[-1i64; 4]; n];
    let mut free: Vec<usize> = (0..4 * n).collect();
    free.shuffle(rng);
    let links = rng.gen_range(0..=2 * n);
    let mut made = 0;
    while made < links && free.len() >= 2 {
        let a = free.pop().unwrap();
        let Some(pos) = free.iter().position(|&b| b / 4 != a / 4) else {
            break;
        };
        let b = free.swap_remove(pos);
        peers[a / 4][a % 4] = b as i64;
        peers[b / 4][b % 4] = a as i64;
        made += 1;
    }
    peers
}

fn on_top(node: usize) -> bool {
    node % 4 < 2
}

fn opposite(node: usize) -> usize {
    node ^ 1
}

/// Label of the link leaving `node`, straight from its definition.
pub fn naive_label(peers: &Peers, node: usize) -> char {
    let p = peers[node / 4][node % 4];
    if p < 0 {
        't'
    } else if on_top(node) != on_top(p as usize) {
        'a'
    } else {
        'n'
    }
}

/// Walks one branch: label the link, cross to the peer's opposite slot and
/// repeat, padding with '-' after a loose end.
pub fn naive_branch(peers: &Peers, start: usize, k: usize) -> String {
    let mut out = String::new();
    let mut node = start;
    let mut ended = false;
    for _ in 0..k {
        if ended {
            out.push('-');
            continue;
        }
        let c = naive_label(peers, node);
        out.push(c);
        if c == 't' {
            ended = true;
        } else {
            node = opposite(peers[node / 4][node % 4] as usize);
        }
    }
    out
}

fn rank(c: char) -> u8 {
    match c {
        'a' => 0,
        'n' => 1,
        't' => 2,
        _ => 3,
    }
}

fn sorted_pair(x: String, y: String) -> (String, String) {
    let key = |s: &str| s.chars().map(rank).collect::<Vec<_>>();
    if key(&y) < key(&x) {
        (y, x)
    } else {
        (x, y)
    }
}

/// Code of the k-neighbourhood of crossing `c`, built by hand.
pub fn naive_code(peers: &Peers, c: usize, k: usize) -> String {
    let b = |s: usize| naive_branch(peers, 4 * c + s, k);
    let (t0, t1) = sorted_pair(b(0), b(1));
    let (b0, b1) = sorted_pair(b(2), b(3));
    format!("[{t0}|{t1}][{b0}|{b1}]")
}

pub fn naive_fingerprint(peers: &Peers, k: usize) -> BTreeMap<String, u32> {
    let mut m = BTreeMap::new();
    for c in 0..peers.len() {
        *m.entry(naive_code(peers, c, k)).or_insert(0) += 1;
    }
    m
}

pub fn library_fingerprint(g: &textile_core::TextileGraph, k: usize) -> BTreeMap<String, u32> {
    textile_core::fingerprint(g, k)
        .unwrap()
        .iter()
        .map(|(nb, c)| (nb.to_string(), c))
        .collect()
}

/// Sparse count vector keyed by neighbourhood code.
pub type Counts = BTreeMap<String, f64>;

pub fn as_counts(m: &BTreeMap<String, u32>) -> Counts {
    m.iter().map(|(k, &v)| (k.clone(), f64::from(v))).collect()
}

fn union<'a>(a: &'a Counts, b: &'a Counts) -> BTreeSet<&'a String> {
    a.keys().chain(b.keys()).collect()
}

fn at(v: &Counts, k: &str) -> f64 {
    v.get(k).copied().unwrap_or(0.0)
}

fn naive_cosine(a: &Counts, b: &Counts) -> f64 {
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for k in union(a, b) {
        let (x, y) = (at(a, k), at(b, k));
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 && nb == 0.0 {
        0.0
    } else if na == 0.0 || nb == 0.0 {
        1.0
    } else {
        1.0 - dot / (na.sqrt() * nb.sqrt())
    }
}

/// All seven measures by direct evaluation over the key union. `docs` is
/// the corpus used for document frequencies.
pub fn naive_distance(measure: &str, a: &Counts, b: &Counts, docs: &[Counts]) -> f64 {
    let keys = union(a, b);
    match measure {
        "euclid" => keys
            .iter()
            .map(|k| (at(a, k) - at(b, k)).powi(2))
            .sum::<f64>()
            .sqrt(),
        "cos-freq" => naive_cosine(a, b),
        "cos-tfidf" => {
            let n = docs.len() as f64;
            let weigh = |v: &Counts| -> Counts {
                v.iter()
                    .map(|(k, &f)| {
                        let df = docs.iter().filter(|d| d.contains_key(k)).count() as f64;
                        (k.clone(), (1.0 + f.ln()) * (n / df).ln())
                    })
                    .collect()
            };
            naive_cosine(&weigh(a), &weigh(b))
        }
        "ham-bool" => keys.iter().filter(|k| at(a, k) != at(b, k)).count() as f64,
        "ham-freq" => keys.iter().map(|k| (at(a, k) - at(b, k)).abs()).sum(),
        "jaccard" => {
            let lo: f64 = keys.iter().map(|k| at(a, k).min(at(b, k))).sum();
            let hi: f64 = keys.iter().map(|k| at(a, k).max(at(b, k))).sum();
            1.0 - lo / hi
        }
        "overlap" => {
            let lo: f64 = keys.iter().map(|k| at(a, k).min(at(b, k))).sum();
            let sa: f64 = a.values().sum();
            let sb: f64 = b.values().sum();
            1.0 - lo / sa.min(sb)
        }
        other => panic!("no oracle for {other}"),
    }
}
