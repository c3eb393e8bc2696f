//! External quality of a clustering against ground-truth classes.
//!
//! Both partitions are given as one label per item; label values are
//! arbitrary ids and only equality matters.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

fn check(l: &[usize], a: &[usize]) -> Result<()> {
    if l.len() != a.len() || l.is_empty() {
        return Err(Error::PartitionMismatch {
            left: l.len(),
            right: a.len(),
        });
    }
    Ok(())
}

struct Table {
    n: usize,
    cells: BTreeMap<(usize, usize), usize>,
    rows: BTreeMap<usize, usize>,
    cols: BTreeMap<usize, usize>,
}

fn table(l: &[usize], a: &[usize]) -> Table {
    let mut cells = BTreeMap::new();
    let mut rows = BTreeMap::new();
    let mut cols = BTreeMap::new();
    for (&x, &y) in l.iter().zip(a) {
        *cells.entry((x, y)).or_insert(0) += 1;
        *rows.entry(x).or_insert(0) += 1;
        *cols.entry(y).or_insert(0) += 1;
    }
    Table {
        n: l.len(),
        cells,
        rows,
        cols,
    }
}

/// Fraction of items belonging to the majority class of their cluster.
pub fn purity(l: &[usize], a: &[usize]) -> Result<f64> {
    check(l, a)?;
    let t = table(l, a);
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for (&(x, _), &c) in &t.cells {
        let b = best.entry(x).or_insert(0);
        *b = (*b).max(c);
    }
    Ok(best.values().sum::<usize>() as f64 / t.n as f64)
}

fn entropy(counts: &BTreeMap<usize, usize>, n: f64) -> f64 {
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Mutual information normalized by the mean of both entropies, in bits.
/// Two single-block partitions are identical and score 1.
pub fn nmi(l: &[usize], a: &[usize]) -> Result<f64> {
    check(l, a)?;
    let t = table(l, a);
    let n = t.n as f64;
    let mut info = 0.0;
    for (&(x, y), &c) in &t.cells {
        let c = c as f64;
        info += c / n * (n * c / (t.rows[&x] as f64 * t.cols[&y] as f64)).log2();
    }
    let h = entropy(&t.rows, n) + entropy(&t.cols, n);
    if h == 0.0 {
        return Ok(1.0);
    }
    Ok((info / (h / 2.0)).clamp(0.0, 1.0))
}

/// Pair confusion counts over all unordered item pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

fn pairs(c: usize) -> u64 {
    let c = c as u64;
    c * c.saturating_sub(1) / 2
}

pub fn pair_counts(l: &[usize], a: &[usize]) -> Result<PairCounts> {
    check(l, a)?;
    let t = table(l, a);
    let tp: u64 = t.cells.values().map(|&c| pairs(c)).sum();
    let same_cluster: u64 = t.rows.values().map(|&c| pairs(c)).sum();
    let same_class: u64 = t.cols.values().map(|&c| pairs(c)).sum();
    let fp = same_cluster - tp;
    let fn_ = same_class - tp;
    let tn = pairs(t.n) - tp - fp - fn_;
    Ok(PairCounts { tp, fp, fn_, tn })
}

/// Fraction of pairs on which clustering and classes agree.
pub fn rand_index(l: &[usize], a: &[usize]) -> Result<f64> {
    let p = pair_counts(l, a)?;
    let total = p.tp + p.fp + p.fn_ + p.tn;
    if total == 0 {
        return Ok(1.0);
    }
    Ok((p.tp + p.tn) as f64 / total as f64)
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Pairwise precision, recall and F-measure; undefined ratios are 0.
pub fn pair_prf(l: &[usize], a: &[usize]) -> Result<(f64, f64, f64)> {
    let c = pair_counts(l, a)?;
    let p = ratio(c.tp, c.tp + c.fp);
    let r = ratio(c.tp, c.tp + c.fn_);
    let f = if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    };
    Ok((p, r, f))
}

/// All six quality metrics of a clustering.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quality {
    pub purity: f64,
    pub nmi: f64,
    pub rand: f64,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

impl Quality {
    pub fn compute(clustering: &[usize], truth: &[usize]) -> Result<Self> {
        let (precision, recall, f) = pair_prf(clustering, truth)?;
        Ok(Quality {
            purity: purity(clustering, truth)?,
            nmi: nmi(clustering, truth)?,
            rand: rand_index(clustering, truth)?,
            precision,
            recall,
            f,
        })
    }

    pub const NAMES: [&'static str; 6] = ["purity", "nmi", "rand", "precision", "recall", "f"];

    pub fn values(&self) -> [f64; 6] {
        [
            self.purity,
            self.nmi,
            self.rand,
            self.precision,
            self.recall,
            self.f,
        ]
    }
}
