//! Edge labels, k-neighbourhoods and fingerprints.
//!
//! Starting from each of a crossing's four nodes, the thread is followed for
//! `k` links. Each link is labelled alternating (the thread changes layer),
//! non-alternating (it stays on its layer) or terminated; once a thread ends
//! the remaining positions are padded. The four label sequences, grouped as
//! the unordered top pair followed by the unordered bottom pair, form the
//! crossing's k-neighbourhood. A graph's fingerprint is the multiset of its
//! crossings' neighbourhoods.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::TextileGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum EdgeLabel {
    Alternating,
    NonAlternating,
    Terminated,
    Pad,
}

impl EdgeLabel {
    pub fn code(self) -> char {
        match self {
            EdgeLabel::Alternating => 'a',
            EdgeLabel::NonAlternating => 'n',
            EdgeLabel::Terminated => 't',
            EdgeLabel::Pad => '-',
        }
    }

    pub fn from_code(c: char) -> Option<Self> {
        Some(match c {
            'a' => EdgeLabel::Alternating,
            'n' => EdgeLabel::NonAlternating,
            't' => EdgeLabel::Terminated,
            '-' => EdgeLabel::Pad,
            _ => return None,
        })
    }
}

/// Label of the link leaving `node`.
pub fn edge_label(g: &TextileGraph, node: usize) -> Result<EdgeLabel> {
    let slot = g.slot(node)?;
    Ok(label_between(g, slot.on_top, slot.peer))
}

#[inline]
fn label_between(g: &TextileGraph, on_top: bool, peer: Option<usize>) -> EdgeLabel {
    match peer {
        None => EdgeLabel::Terminated,
        Some(p) if g.slots()[p].on_top != on_top => EdgeLabel::Alternating,
        Some(_) => EdgeLabel::NonAlternating,
    }
}

/// Canonical k-neighbourhood of a crossing.
///
/// Stored as `4k` labels: the lexicographically smaller top sequence, the
/// larger top sequence, then the same for the bottom pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Neighbourhood {
    labels: Box<[EdgeLabel]>,
}

impl std::borrow::Borrow<[EdgeLabel]> for Neighbourhood {
    fn borrow(&self) -> &[EdgeLabel] {
        &self.labels
    }
}

impl Neighbourhood {
    /// Canonicalizes four label sequences of equal length `k >= 1`: top pair
    /// (`seqs[0]`, `seqs[1]`) and bottom pair (`seqs[2]`, `seqs[3]`).
    pub fn new(seqs: [&[EdgeLabel]; 4]) -> Result<Self> {
        let k = seqs[0].len();
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if let Some(other) = seqs.iter().map(|s| s.len()).find(|&l| l != k) {
            return Err(Error::KMismatch { left: k, right: other });
        }
        let mut labels = Vec::with_capacity(4 * k);
        for s in seqs {
            labels.extend_from_slice(s);
        }
        canonicalize(&mut labels, k);
        Ok(Neighbourhood {
            labels: labels.into_boxed_slice(),
        })
    }

    pub fn k(&self) -> usize {
        self.labels.len() / 4
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    /// Label sequence `i` (0, 1 top; 2, 3 bottom) in canonical order.
    pub fn sequence(&self, i: usize) -> &[EdgeLabel] {
        let k = self.k();
        &self.labels[i * k..(i + 1) * k]
    }

    pub fn top_pair(&self) -> [&[EdgeLabel]; 2] {
        [self.sequence(0), self.sequence(1)]
    }

    pub fn bottom_pair(&self) -> [&[EdgeLabel]; 2] {
        [self.sequence(2), self.sequence(3)]
    }
}

/// Sorts each pair of sequences in place.
fn canonicalize(labels: &mut [EdgeLabel], k: usize) {
    for pair in labels.chunks_exact_mut(2 * k) {
        let (a, b) = pair.split_at_mut(k);
        if b < a {
            a.swap_with_slice(b);
        }
    }
}

impl fmt::Display for Neighbourhood {
    /// `[a|t][a|t]` style code: one bracket per pair, `|` between the two
    /// sequences of a pair, padding written as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pair in 0..2 {
            f.write_str("[")?;
            for s in 0..2 {
                if s == 1 {
                    f.write_str("|")?;
                }
                for l in self.sequence(2 * pair + s) {
                    write!(f, "{}", l.code())?;
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl FromStr for Neighbourhood {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Syntax {
            line: 1,
            column: 1,
            message: format!("invalid neighbourhood code {s:?}"),
        };
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (top, bottom) = inner.split_once("][").ok_or_else(bad)?;
        let mut seqs: Vec<Vec<EdgeLabel>> = Vec::with_capacity(4);
        for pair in [top, bottom] {
            let (x, y) = pair.split_once('|').ok_or_else(bad)?;
            for part in [x, y] {
                let seq: Option<Vec<_>> = part.chars().map(EdgeLabel::from_code).collect();
                seqs.push(seq.ok_or_else(bad)?);
            }
        }
        Neighbourhood::new([&seqs[0], &seqs[1], &seqs[2], &seqs[3]])
    }
}

/// Follows the thread leaving `node` for up to `k` links, writing labels into
/// `out` (length `k`) and padding after a terminal.
#[inline]
fn walk(g: &TextileGraph, node: usize, out: &mut [EdgeLabel]) {
    let slots = g.slots();
    let mut current = node;
    let mut i = 0;
    while i < out.len() {
        let slot = &slots[current];
        let label = label_between(g, slot.on_top, slot.peer);
        out[i] = label;
        i += 1;
        match slot.peer {
            Some(p) => current = slots[p].opposite,
            None => break,
        }
    }
    for l in &mut out[i..] {
        *l = EdgeLabel::Pad;
    }
}

/// Fills `buf` (length `4k`) with the canonical labels of `crossing`.
fn neighbourhood_into(g: &TextileGraph, crossing: usize, k: usize, buf: &mut [EdgeLabel]) {
    let slots = g.slots();
    let base = 4 * crossing;
    // Top pair first, wherever the flags put it.
    let top = (base..base + 4).find(|&i| slots[i].on_top).unwrap_or(base);
    let top_op = slots[top].opposite;
    let bottom = (base..base + 4)
        .find(|&i| i != top && i != top_op)
        .unwrap_or(base);
    let order = [top, top_op, bottom, slots[bottom].opposite];
    for (i, &node) in order.iter().enumerate() {
        walk(g, node, &mut buf[i * k..(i + 1) * k]);
    }
    canonicalize(buf, k);
}

pub fn k_neighbourhood(g: &TextileGraph, crossing: usize, k: usize) -> Result<Neighbourhood> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if crossing >= g.crossing_count() {
        return Err(Error::NodeOutOfRange {
            node: 4 * crossing,
            nodes: g.node_count(),
        });
    }
    let mut buf = vec![EdgeLabel::Pad; 4 * k];
    neighbourhood_into(g, crossing, k, &mut buf);
    Ok(Neighbourhood {
        labels: buf.into_boxed_slice(),
    })
}

/// Multiset of k-neighbourhoods; only non-zero counts are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    k: usize,
    counts: HashMap<Neighbourhood, u32>,
    total: u64,
}

impl Fingerprint {
    pub fn empty(k: usize) -> Self {
        Fingerprint {
            k,
            counts: HashMap::new(),
            total: 0,
        }
    }

    /// Builds a fingerprint from explicit counts; zero counts are dropped.
    pub fn from_counts(
        k: usize,
        counts: impl IntoIterator<Item = (Neighbourhood, u32)>,
    ) -> Result<Self> {
        let mut fp = Fingerprint::empty(k);
        for (nb, c) in counts {
            if nb.k() != k {
                return Err(Error::KMismatch {
                    left: k,
                    right: nb.k(),
                });
            }
            if c > 0 {
                *fp.counts.entry(nb).or_insert(0) += c;
                fp.total += u64::from(c);
            }
        }
        Ok(fp)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sum of counts, i.e. the crossing count of the source graph.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct neighbourhoods.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, nb: &Neighbourhood) -> u32 {
        self.counts.get(nb).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Neighbourhood, u32)> {
        self.counts.iter().map(|(n, &c)| (n, c))
    }

    /// Entries in canonical neighbourhood order.
    pub fn sorted(&self) -> BTreeMap<&Neighbourhood, u32> {
        self.iter().collect()
    }
}

/// Fingerprint of a whole graph in `O(n k)`.
pub fn fingerprint(g: &TextileGraph, k: usize) -> Result<Fingerprint> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let mut counts: HashMap<Neighbourhood, u32> = HashMap::new();
    let mut buf = vec![EdgeLabel::Pad; 4 * k];
    for c in 0..g.crossing_count() {
        neighbourhood_into(g, c, k, &mut buf);
        match counts.get_mut(&buf[..]) {
            Some(n) => *n += 1,
            None => {
                counts.insert(
                    Neighbourhood {
                        labels: buf.clone().into_boxed_slice(),
                    },
                    1,
                );
            }
        }
    }
    Ok(Fingerprint {
        k,
        counts,
        total: g.crossing_count() as u64,
    })
}

/// Interns neighbourhoods of a corpus to dense integer keys.
///
/// Keys are assigned in canonical neighbourhood order so that the mapping
/// depends only on the set of neighbourhoods seen.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary {
    ids: HashMap<Neighbourhood, u32>,
    entries: Vec<Neighbourhood>,
}

impl Vocabulary {
    pub fn build<'a>(fingerprints: impl IntoIterator<Item = &'a Fingerprint>) -> Self {
        let mut all: Vec<&Neighbourhood> = fingerprints
            .into_iter()
            .flat_map(|f| f.counts.keys())
            .collect();
        all.sort_unstable();
        all.dedup();
        let entries: Vec<Neighbourhood> = all.into_iter().cloned().collect();
        let ids = entries
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        Vocabulary { ids, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn id(&self, nb: &Neighbourhood) -> Option<u32> {
        self.ids.get(nb).copied()
    }

    pub fn get(&self, id: u32) -> Option<&Neighbourhood> {
        self.entries.get(id as usize)
    }

    /// Sparse count vector of a fingerprint; neighbourhoods unknown to the
    /// vocabulary are dropped.
    pub fn vectorize(&self, fp: &Fingerprint) -> crate::distance::SparseVector {
        crate::distance::SparseVector::from_pairs(
            fp.iter()
                .filter_map(|(n, c)| self.id(n).map(|id| (id, f64::from(c)))),
        )
    }
}
