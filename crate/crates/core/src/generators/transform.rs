//! Planar rotations and mirror images, crossing flips, and the perturbation
//! protocol applied to corpus specimens.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::builder::canonicalize;
use crate::error::{Error, Result};
use crate::graph::{Layout, TextileGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    Rotate90,
    Rotate180,
    Rotate270,
    /// Reflection across the vertical axis (left and right swap).
    MirrorH,
    /// Reflection across the horizontal axis (top and bottom edges swap).
    MirrorV,
}

impl Transform {
    pub const ALL: [Transform; 5] = [
        Transform::Rotate90,
        Transform::Rotate180,
        Transform::Rotate270,
        Transform::MirrorH,
        Transform::MirrorV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Transform::Rotate90 => "rotate90",
            Transform::Rotate180 => "rotate180",
            Transform::Rotate270 => "rotate270",
            Transform::MirrorH => "mirrorH",
            Transform::MirrorV => "mirrorV",
        }
    }

    fn apply(self, [x, y]: [i64; 2]) -> [i64; 2] {
        match self {
            Transform::Rotate90 => [-y, x],
            Transform::Rotate180 => [-x, -y],
            Transform::Rotate270 => [y, -x],
            Transform::MirrorH => [-x, y],
            Transform::MirrorV => [x, -y],
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Transform::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown transform {s:?}")))
    }
}

/// Rotates or mirrors a graph in the plane and renumbers it canonically.
///
/// Which thread lies on top at every crossing is unchanged. Graphs without a
/// placement use [`Layout::fallback`].
pub fn transform(g: &TextileGraph, op: Transform) -> TextileGraph {
    let layout = g
        .layout()
        .cloned()
        .unwrap_or_else(|| Layout::fallback(g.crossing_count()));
    let moved = Layout {
        positions: layout.positions.iter().map(|&p| op.apply(p)).collect(),
        directions: layout.directions.iter().map(|&d| op.apply(d)).collect(),
    };
    let placed = g.clone().with_layout(moved);
    canonicalize(&placed).expect("a rigid motion keeps positions distinct")
}

/// Swaps the top and bottom thread of the given crossings.
pub fn flip_crossings(g: &TextileGraph, crossings: &[usize]) -> TextileGraph {
    let n = g.crossing_count();
    let order: Vec<usize> = (0..n).collect();
    let mut slot_order = vec![[0, 1, 2, 3]; n];
    for &c in crossings {
        slot_order[c] = [2, 3, 0, 1];
    }
    let mut out = g.relabel(&order, &slot_order);
    out.reset_on_top();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rotation {
    R90,
    R180,
    R270,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mirror {
    Horizontal,
    Vertical,
}

/// Random local modification followed by an optional rotation and mirror.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbationPlan {
    /// Fraction of crossings to flip; the count is rounded to nearest.
    pub flip_fraction: f64,
    pub rotate: Option<Rotation>,
    pub mirror: Option<Mirror>,
    pub seed: u64,
}

impl PerturbationPlan {
    pub fn identity() -> Self {
        PerturbationPlan {
            flip_fraction: 0.0,
            rotate: None,
            mirror: None,
            seed: 0,
        }
    }
}

/// Applies a perturbation plan; deterministic in the plan's seed.
pub fn perturb(g: &TextileGraph, plan: &PerturbationPlan) -> TextileGraph {
    let n = g.crossing_count();
    let flips = ((plan.flip_fraction.clamp(0.0, 1.0) * n as f64).round() as usize).min(n);
    let mut out = if flips > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        let chosen = rand::seq::index::sample(&mut rng, n, flips).into_vec();
        flip_crossings(g, &chosen)
    } else {
        g.clone()
    };
    if let Some(r) = plan.rotate {
        let op = match r {
            Rotation::R90 => Transform::Rotate90,
            Rotation::R180 => Transform::Rotate180,
            Rotation::R270 => Transform::Rotate270,
        };
        out = transform(&out, op);
    }
    if let Some(m) = plan.mirror {
        let op = match m {
            Mirror::Horizontal => Transform::MirrorH,
            Mirror::Vertical => Transform::MirrorV,
        };
        out = transform(&out, op);
    }
    out
}
