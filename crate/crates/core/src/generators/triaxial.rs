//! Triaxial weave: three thread sets at 60 degrees on a kagome arrangement,
//! so every contact is a crossing of exactly two threads.
//!
//! In lattice coordinates `(a, b)` (basis at 0 and 60 degrees) the
//! horizontal threads lie on even `b`, the rising diagonals on even `a` and
//! the falling diagonals on odd `a + b`; each lattice point where two of
//! them meet is a crossing. Rising diagonals pass over everything, falling
//! diagonals under everything, and the horizontals alternate between them.

use std::collections::BTreeMap;

use super::builder::Builder;

/// Plane position of lattice point `(a, b)`.
fn place(a: i64, b: i64) -> (i64, i64) {
    (2 * a + b, 2 * b)
}

pub(super) fn triaxial(rows: usize, cols: usize) -> Builder {
    // Three of four lattice points are crossings.
    let height = ((4 * rows) as f64 / 3.0).round().max(2.0) as i64;
    let width = cols.max(2) as i64;
    let mut b = Builder::new();
    let mut ids: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for bb in 0..height {
        // Keep the patch rectangular in the plane: 0 <= 2a + b < 2 width.
        let a_min = (-bb).div_euclid(2) + i64::from((-bb).rem_euclid(2) != 0);
        for a in a_min.. {
            let (x, y) = place(a, bb);
            if x >= 2 * width {
                break;
            }
            if a.rem_euclid(2) == 1 && bb.rem_euclid(2) == 1 {
                continue;
            }
            ids.insert((a, bb), b.crossing(x, y));
        }
    }

    let mut horizontal: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut rising: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut falling: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    for (&(a, bb), &id) in &ids {
        if bb.rem_euclid(2) == 0 {
            horizontal.entry(bb).or_default().push((a, id));
        }
        if a.rem_euclid(2) == 0 {
            rising.entry(a).or_default().push((bb, id));
        }
        if (a + bb).rem_euclid(2) == 1 {
            falling.entry(a + bb).or_default().push((bb, id));
        }
    }
    let is_rising = |a: i64| a.rem_euclid(2) == 0;
    for (_, mut pts) in horizontal {
        pts.sort_unstable();
        // Under a rising diagonal, over a falling one.
        let visits = pts.iter().map(|&(a, id)| (id, !is_rising(a))).collect();
        b.thread_along(visits, [2, 0]);
    }
    for (_, mut pts) in rising {
        pts.sort_unstable();
        b.thread_along(pts.iter().map(|&(_, id)| (id, true)).collect(), [1, 2]);
    }
    for (_, mut pts) in falling {
        pts.sort_unstable();
        b.thread_along(pts.iter().map(|&(_, id)| (id, false)).collect(), [-1, 2]);
    }
    b
}
