//! Knitted structures built from interlocking loops.

use super::builder::Builder;

/// Weft knit (jersey): each course runs along +x and forms one loop per
/// stitch; the loop crosses itself at its neck and is pulled through the
/// loop of the course below it, which passes over both legs.
pub(super) fn weft_knit(rows: usize, cols: usize) -> Builder {
    let courses = ((rows + 1) / 2).max(2);
    let stitches = ((2 * cols + 2) / 3).max(1);
    let mut b = Builder::new();
    let at = |c: usize, r: usize| (8 * c as i64, 8 * r as i64);
    // Neck of stitch (r, c), and the two legs of stitch (r, c) where the
    // loop of course r - 1 passes under course r.
    let mut neck = vec![vec![0; stitches]; courses];
    let mut legs = vec![vec![(0, 0); stitches]; courses];
    for r in 0..courses {
        for c in 0..stitches {
            let (x, y) = at(c, r);
            if r >= 1 {
                legs[r][c] = (b.crossing(x - 2, y - 4), b.crossing(x + 2, y - 4));
            }
            if r + 1 < courses {
                neck[r][c] = b.crossing(x, y);
            }
        }
    }
    for r in 0..courses {
        let mut visits = Vec::new();
        for c in 0..stitches {
            if r >= 1 {
                visits.push((legs[r][c].0, true));
            }
            if r + 1 < courses {
                let (l, rr) = legs[r + 1][c];
                visits.extend([(neck[r][c], true), (l, false), (rr, false), (neck[r][c], false)]);
            }
            if r >= 1 {
                visits.push((legs[r][c].1, true));
            }
        }
        b.thread_along(visits, [1, 0]);
    }
    b
}

/// Warp knit (pillar stitch with laid-in weft): each wale runs along +y as a
/// chain of loops, and an inlay course per loop row passes beneath the
/// loops.
pub(super) fn warp_knit(rows: usize, cols: usize) -> Builder {
    let loops = ((rows + 1) / 2).max(2);
    let wales = (cols / 2).max(1);
    let mut b = Builder::new();
    // Loop r of wale c is caught by loop r - 1 at `heads` and bound by the
    // inlay at `sides`.
    let mut heads = vec![vec![(0, 0); wales]; loops];
    let mut sides = vec![vec![(0, 0); wales]; loops];
    for r in 0..loops {
        let y = 8 * r as i64;
        for c in 0..wales {
            let x = 8 * c as i64;
            if r >= 1 {
                heads[r][c] = (b.crossing(x - 2, y), b.crossing(x + 2, y));
            }
            sides[r][c] = (b.crossing(x - 3, y + 4), b.crossing(x + 3, y + 4));
        }
    }
    for c in 0..wales {
        let mut visits = Vec::new();
        for r in 0..loops {
            if r >= 1 {
                visits.push((heads[r][c].0, true));
            }
            visits.push((sides[r][c].0, true));
            if r + 1 < loops {
                visits.extend([(heads[r + 1][c].0, false), (heads[r + 1][c].1, false)]);
            }
            visits.push((sides[r][c].1, true));
            if r >= 1 {
                visits.push((heads[r][c].1, true));
            }
        }
        b.thread_along(visits, [0, 1]);
    }
    for row in &sides {
        let visits = row.iter().flat_map(|&(i, j)| [(i, false), (j, false)]).collect();
        b.thread_along(visits, [1, 0]);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;

    #[test]
    fn weft_knit_counts() {
        // Three courses of two stitches: necks on two courses, legs on two.
        let g = weft_knit(5, 2).build().unwrap();
        assert!(validate(&g).is_empty());
        assert_eq!(g.crossing_count(), 3 * 2 * 2);
        assert_eq!(g.terminal_count(), 2 * 3);
    }

    #[test]
    fn warp_knit_counts() {
        let g = warp_knit(4, 4).build().unwrap();
        assert!(validate(&g).is_empty());
        // Two loops per wale, two wales: 4 side crossings per loop row, 2
        // head crossings per wale above the first row.
        assert_eq!(g.crossing_count(), 2 * 2 * 2 + 2 * 2);
        assert_eq!(g.terminal_count(), 2 * (2 + 2));
    }
}
