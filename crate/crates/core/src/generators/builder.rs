//! Assembles graphs from placed crossings and thread paths, and brings them
//! into a canonical numbering derived from the placement.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Layout, NodeSlot, TextileGraph};

type Vec2 = [i64; 2];

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn neg(a: Vec2) -> Vec2 {
    [-a[0], -a[1]]
}

fn cross(a: Vec2, b: Vec2) -> i128 {
    i128::from(a[0]) * i128::from(b[1]) - i128::from(a[1]) * i128::from(b[0])
}

fn dot(a: Vec2, b: Vec2) -> i128 {
    i128::from(a[0]) * i128::from(b[0]) + i128::from(a[1]) * i128::from(b[1])
}

/// Compares the counter-clockwise angles of `a` and `b` measured from
/// `origin`, exactly.
pub(crate) fn angle_cmp_from(origin: Vec2, a: Vec2, b: Vec2) -> Ordering {
    let half = |v: Vec2| {
        let c = cross(origin, v);
        if c > 0 || (c == 0 && dot(origin, v) > 0) {
            0
        } else {
            1
        }
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&cross(a, b)))
}

fn angle_cmp(a: Vec2, b: Vec2) -> Ordering {
    angle_cmp_from([1, 0], a, b)
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}

struct ThreadPath {
    visits: Vec<(usize, bool)>,
    start: Option<Vec2>,
    end: Option<Vec2>,
}

/// Collects crossings with planar positions and threads as sequences of
/// `(crossing, on_top)` visits.
#[derive(Default)]
pub(crate) struct Builder {
    positions: Vec<Vec2>,
    threads: Vec<ThreadPath>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing(&mut self, x: i64, y: i64) -> usize {
        self.positions.push([x, y]);
        self.positions.len() - 1
    }

    #[cfg(test)]
    pub fn crossing_count(&self) -> usize {
        self.positions.len()
    }

    /// A thread whose loose ends point away from their neighbours.
    pub fn thread(&mut self, visits: Vec<(usize, bool)>) {
        self.threads.push(ThreadPath {
            visits,
            start: None,
            end: None,
        });
    }

    /// A thread running along `axis`: it enters against the axis and leaves
    /// along it.
    pub fn thread_along(&mut self, visits: Vec<(usize, bool)>, axis: Vec2) {
        self.threads.push(ThreadPath {
            visits,
            start: Some(neg(axis)),
            end: Some(axis),
        });
    }

    /// Moves every crossing added so far.
    pub fn translate(&mut self, dx: i64, dy: i64) {
        for p in &mut self.positions {
            p[0] += dx;
            p[1] += dy;
        }
    }

    /// Bounding box `[min_x, min_y, max_x, max_y]` of the crossings.
    pub fn bounds(&self) -> Option<[i64; 4]> {
        let first = self.positions.first()?;
        Some(self.positions.iter().fold(
            [first[0], first[1], first[0], first[1]],
            |b, p| [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])],
        ))
    }

    /// Appends the crossings and threads of another builder.
    pub fn absorb(&mut self, other: Builder) {
        let offset = self.positions.len();
        self.positions.extend(other.positions);
        for mut t in other.threads {
            for v in &mut t.visits {
                v.0 += offset;
            }
            self.threads.push(t);
        }
    }

    pub fn build(self) -> Result<TextileGraph> {
        let n = self.positions.len();
        // Visit of each crossing on top and on the bottom: (thread, index).
        let mut seen: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; n];
        for (t, thread) in self.threads.iter().enumerate() {
            if thread.visits.is_empty() {
                return Err(internal(format!("thread {t} visits no crossing")));
            }
            for (i, &(c, top)) in thread.visits.iter().enumerate() {
                if c >= n {
                    return Err(internal(format!("thread {t} visits unknown crossing {c}")));
                }
                let layer = usize::from(!top);
                if seen[c][layer].is_some() {
                    return Err(internal(format!("crossing {c} is visited twice on one layer")));
                }
                seen[c][layer] = Some((t, i));
                if i > 0 && thread.visits[i - 1].0 == c {
                    return Err(internal(format!("thread {t} revisits crossing {c} immediately")));
                }
            }
        }
        if let Some(c) = seen.iter().position(|s| s[0].is_none() || s[1].is_none()) {
            return Err(internal(format!("crossing {c} lacks a top or bottom thread")));
        }

        // Back slot of a visit is 4c (top) or 4c+2 (bottom); forward slot is
        // one more.
        let back = |c: usize, top: bool| 4 * c + if top { 0 } else { 2 };
        let mut slots: Vec<NodeSlot> = (0..4 * n)
            .map(|i| NodeSlot::conventional(i / 4, i % 4, None))
            .collect();
        let mut directions = vec![[0i64, 0i64]; 4 * n];
        for (t, thread) in self.threads.iter().enumerate() {
            let v = &thread.visits;
            for i in 0..v.len() {
                let (c, top) = v[i];
                let here = self.positions[c];
                let b = back(c, top);
                let prev = (i > 0).then(|| sub(self.positions[v[i - 1].0], here));
                let next = (i + 1 < v.len()).then(|| sub(self.positions[v[i + 1].0], here));
                let back_dir = prev
                    .or(thread.start)
                    .or(next.map(neg))
                    .ok_or_else(|| internal(format!("thread {t} has no direction")))?;
                let fwd_dir = next.or(thread.end).unwrap_or(neg(back_dir));
                if back_dir == [0, 0] || fwd_dir == [0, 0] {
                    return Err(internal(format!("crossings of thread {t} coincide")));
                }
                if angle_cmp(back_dir, fwd_dir) == Ordering::Equal {
                    return Err(internal(format!(
                        "thread {t} leaves crossing {c} twice in the same direction"
                    )));
                }
                directions[b] = back_dir;
                directions[b + 1] = fwd_dir;
                if i + 1 < v.len() {
                    let (d, dtop) = v[i + 1];
                    let nb = back(d, dtop);
                    slots[b + 1].peer = Some(nb);
                    slots[nb].peer = Some(b + 1);
                }
            }
        }
        let g = TextileGraph::from_slots(slots).with_layout(Layout {
            positions: self.positions,
            directions,
        });
        canonicalize(&g)
    }
}

/// Renumbers a graph from its placement: crossings by position (row-major,
/// `y` then `x`), and within a crossing each pair by direction angle, top
/// pair first.
pub(crate) fn canonicalize(g: &TextileGraph) -> Result<TextileGraph> {
    let fallback;
    let layout = match g.layout() {
        Some(l) => l,
        None => {
            fallback = Layout::fallback(g.crossing_count());
            &fallback
        }
    };
    let n = g.crossing_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| (layout.positions[c][1], layout.positions[c][0]));
    if let Some(w) = order
        .windows(2)
        .find(|w| layout.positions[w[0]] == layout.positions[w[1]])
    {
        return Err(internal(format!(
            "crossings {} and {} share a position",
            w[0], w[1]
        )));
    }
    let slots = g.slots();
    let slot_order: Vec<[usize; 4]> = order
        .iter()
        .map(|&c| {
            let base = 4 * c;
            let top = (0..4).find(|&s| slots[base + s].on_top).unwrap_or(0);
            let top_op = slots[base + top].opposite - base;
            let bottom = (0..4).find(|&s| s != top && s != top_op).unwrap_or(0);
            let bottom_op = slots[base + bottom].opposite - base;
            let sort = |a: usize, b: usize| {
                let (da, db) = (layout.directions[base + a], layout.directions[base + b]);
                if angle_cmp(db, da) == Ordering::Less {
                    [b, a]
                } else {
                    [a, b]
                }
            };
            let [t0, t1] = sort(top, top_op);
            let [b0, b1] = sort(bottom, bottom_op);
            [t0, t1, b0, b1]
        })
        .collect();
    let mut out = g.relabel(&order, &slot_order);
    if out.layout().is_none() {
        out = out.with_layout(relabel_layout(layout, &order, &slot_order));
    }
    Ok(out)
}

fn relabel_layout(layout: &Layout, order: &[usize], slot_order: &[[usize; 4]]) -> Layout {
    let mut directions = Vec::with_capacity(layout.directions.len());
    for (&c, perm) in order.iter().zip(slot_order) {
        for &s in perm {
            directions.push(layout.directions[4 * c + s]);
        }
    }
    Layout {
        positions: order.iter().map(|&c| layout.positions[c]).collect(),
        directions,
    }
}
