//! Flat braids: strands exchange neighbouring places in alternating odd and
//! even pairs, and several braids lie side by side.

use super::builder::Builder;
use crate::error::{Error, Result};

pub(super) fn braids(rows: usize, cols: usize, strands: usize) -> Result<Builder> {
    if strands < 3 {
        return Err(Error::Unsupported(format!("a braid needs three strands, got {strands}")));
    }
    if cols < strands {
        return Err(Error::Unsupported(format!(
            "{cols} columns cannot hold a braid of {strands} strands"
        )));
    }
    let count = cols / strands;
    let steps = (2 * rows * cols).div_ceil(count * (strands - 1)).max(1);
    let mut out = Builder::new();
    for k in 0..count {
        let mut part = braid(strands, steps);
        part.translate((k * (2 * strands + 4)) as i64, 0);
        out.absorb(part);
    }
    Ok(out)
}

/// One braid of `strands` strands over `steps` exchange steps. At step `t`
/// the places `(i, i + 1)` with `i % 2 == t % 2` swap; the strand moving
/// right is on top on even steps and the one moving left on odd steps.
fn braid(strands: usize, steps: usize) -> Builder {
    let mut b = Builder::new();
    // Strand occupying each place, and the visits of each strand.
    let mut at: Vec<usize> = (0..strands).collect();
    let mut visits: Vec<Vec<(usize, bool)>> = vec![Vec::new(); strands];
    for t in 0..steps {
        let mut i = t % 2;
        while i + 1 < strands {
            let id = b.crossing(2 * i as i64 + 1, 2 * t as i64);
            let (right, left) = (at[i], at[i + 1]);
            let right_on_top = t % 2 == 0;
            visits[right].push((id, right_on_top));
            visits[left].push((id, !right_on_top));
            at.swap(i, i + 1);
            i += 2;
        }
    }
    for v in visits.into_iter().filter(|v| !v.is_empty()) {
        b.thread_along(v, [0, 1]);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;

    #[test]
    fn four_strands() {
        let g = braid(4, 4).build().unwrap();
        assert!(validate(&g).is_empty());
        assert_eq!(g.crossing_count(), 2 + 1 + 2 + 1);
        assert_eq!(g.terminal_count(), 8);
    }

    #[test]
    fn side_by_side() {
        let b = braids(3, 8, 4).unwrap();
        assert_eq!(b.crossing_count() % 2, 0);
        assert!(validate(&b.build().unwrap()).is_empty());
        assert!(braids(3, 2, 3).is_err());
        assert!(braids(3, 4, 2).is_err());
    }
}
