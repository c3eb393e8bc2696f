//! European 4-in-1 chain mail: staggered rows of rings, each linked through
//! two rings of the row below.

use std::collections::BTreeMap;

use super::builder::{angle_cmp_from, Builder};

pub(super) fn chain_mail(rows: usize, cols: usize) -> Builder {
    let ring_rows = (rows / 2).max(2);
    let ring_cols = (cols / 2).max(1);
    let centre = |r: usize, c: usize| [16 * c as i64 + 8 * (r % 2) as i64, 16 * r as i64];
    let mut b = Builder::new();
    // Crossings on each ring: (position, crossing, ring is on top).
    let mut on_ring: BTreeMap<(usize, usize), Vec<([i64; 2], usize, bool)>> = BTreeMap::new();
    for r in 0..ring_rows - 1 {
        for c in 0..ring_cols {
            let below: [Option<usize>; 2] = if r % 2 == 0 {
                [Some(c), c.checked_sub(1)]
            } else {
                [Some(c + 1), Some(c)]
            };
            for c2 in below.into_iter().flatten().filter(|&c2| c2 < ring_cols) {
                let p = centre(r, c);
                let q = centre(r + 1, c2);
                let d = [q[0] - p[0], q[1] - p[1]];
                let m = [p[0] + d[0] / 2, p[1] + d[1] / 2];
                let perp = [-d[1] / 8, d[0] / 8];
                let ends = [[m[0] + perp[0], m[1] + perp[1]], [m[0] - perp[0], m[1] - perp[1]]];
                // The upper ring lies on top where the link is further down.
                let low = usize::from(ends[1][1] > ends[0][1]);
                for (k, pos) in ends.into_iter().enumerate() {
                    let id = b.crossing(pos[0], pos[1]);
                    let p_top = k == low;
                    on_ring.entry((r, c)).or_default().push((pos, id, p_top));
                    on_ring.entry((r + 1, c2)).or_default().push((pos, id, !p_top));
                }
            }
        }
    }
    for ((r, c), mut pts) in on_ring {
        let o = centre(r, c);
        let rel = |p: [i64; 2]| [p[0] - o[0], p[1] - o[1]];
        // Each ring is cut open at its top.
        pts.sort_by(|a, b| angle_cmp_from([0, -1], rel(a.0), rel(b.0)));
        b.thread(pts.into_iter().map(|(_, id, top)| (id, top)).collect());
    }
    b
}
