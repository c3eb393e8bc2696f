//! Two-directional weaves: one weft per row, one warp per column, and a
//! motif deciding which of the two is on top at each crossing.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::builder::Builder;
use crate::error::{Error, Result};

/// Crossing `(r, c)` sits at `(2c, 2r)`; wefts run along +x, warps along +y.
/// `weft_on_top(r, c)` is the motif.
pub(super) fn grid(rows: usize, cols: usize, weft_on_top: impl Fn(usize, usize) -> bool) -> Builder {
    let mut b = Builder::new();
    let mut ids = vec![0; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            ids[r * cols + c] = b.crossing(2 * c as i64, 2 * r as i64);
        }
    }
    for r in 0..rows {
        let visits = (0..cols).map(|c| (ids[r * cols + c], weft_on_top(r, c))).collect();
        b.thread_along(visits, [1, 0]);
    }
    for c in 0..cols {
        let visits = (0..rows).map(|r| (ids[r * cols + c], !weft_on_top(r, c))).collect();
        b.thread_along(visits, [0, 1]);
    }
    b
}

pub(super) fn plain(r: usize, c: usize) -> bool {
    (r + c) % 2 == 0
}

pub(super) fn twill(over: u32, under: u32) -> impl Fn(usize, usize) -> bool {
    let period = (over + under) as usize;
    move |r, c| (r + c) % period < over as usize
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Weft-faced satin: the weft floats over `float` warps, binding points
/// advance by the smallest valid counter.
pub(super) fn satin(float: u32) -> Result<impl Fn(usize, usize) -> bool> {
    let n = float as usize + 1;
    let step = (2..n.saturating_sub(1))
        .find(|&s| gcd(s, n) == 1)
        .ok_or_else(|| Error::Unsupported(format!("no regular satin with float {float}")))?;
    Ok(move |r: usize, c: usize| (c + step * r) % n != 0)
}

/// Warp-faced binding with 2/1 floats.
fn warp_faced_twill(r: usize, c: usize) -> bool {
    (r + c) % 3 == 0
}

/// Complementary-warp float weave: warps float over three wefts and
/// neighbouring warps bind two rows apart.
fn complementary_warp(r: usize, c: usize) -> bool {
    (r + 2 * (c % 2)) % 4 == 0
}

#[derive(Clone, Copy)]
enum Band {
    Plain,
    WarpTwill,
    Complementary,
}

/// Warp-patterned band weave: vertical stripes 3 to 8 warps wide, each drawn
/// from a palette of plain, warp-faced twill and complementary-warp
/// structures.
pub(super) fn andean(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Builder {
    let mut bands = Vec::with_capacity(cols);
    while bands.len() < cols {
        let width = rng.gen_range(3..=8);
        let band = match rng.gen_range(0..10) {
            0..=2 => Band::Plain,
            3..=6 => Band::WarpTwill,
            _ => Band::Complementary,
        };
        bands.extend(std::iter::repeat(band).take(width));
    }
    bands.truncate(cols);
    grid(rows, cols, move |r, c| match bands[c] {
        Band::Plain => plain(r, c),
        Band::WarpTwill => warp_faced_twill(r, c),
        Band::Complementary => complementary_warp(r, c),
    })
}

/// Horizontal ground bands 4 to 10 rows high, alternating between satin and
/// 2/2 twill, overlaid with rectangular plain and diamond motifs.
pub(super) fn viet_weave(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Builder {
    let ground_satin = satin(super::DEFAULT_SATIN_FLOAT).expect("default satin exists");
    let ground_twill = twill(2, 2);
    let mut satin_rows = Vec::with_capacity(rows);
    let mut satin_band = rng.gen_bool(0.5);
    while satin_rows.len() < rows {
        let height = rng.gen_range(4..=10);
        satin_rows.extend(std::iter::repeat(satin_band).take(height));
        satin_band = !satin_band;
    }
    // (top, left, height, width, diamond?)
    let count = (rows * cols / 120).max(1);
    let motifs: Vec<(usize, usize, usize, usize, bool)> = (0..count)
        .map(|_| {
            let h = rng.gen_range(4..=10).min(rows);
            let w = rng.gen_range(4..=10).min(cols);
            let top = rng.gen_range(0..=rows - h);
            let left = rng.gen_range(0..=cols - w);
            (top, left, h, w, rng.gen_bool(0.5))
        })
        .collect();
    grid(rows, cols, move |r, c| {
        for &(t, l, h, w, diamond) in motifs.iter().rev() {
            if (t..t + h).contains(&r) && (l..l + w).contains(&c) {
                if diamond {
                    let (cr, cc) = (t + h / 2, l + w / 2);
                    return (r.abs_diff(cr) + c.abs_diff(cc)) % 4 < 2;
                }
                return plain(r, c);
            }
        }
        if satin_rows[r] {
            ground_satin(r, c)
        } else {
            ground_twill(r, c)
        }
    })
}
