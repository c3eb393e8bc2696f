//! Textile hypergraph data model.
//!
//! A textile is decomposed into crossings of two threads. Every crossing owns
//! four node slots stored contiguously: slots `4i..4i+3` belong to crossing
//! `i`. Slots 0 and 1 are the endpoints of the thread lying on top (they form
//! the crossing's top edge), slots 2 and 3 the endpoints of the bottom thread.
//! Each slot is linked to a slot of another crossing or to an implicit
//! terminal that ends the thread.

mod tg1;
mod validate;

pub use tg1::{parse, serialize};
pub use validate::{validate, ValidationReport, Violation};

use crate::error::{Error, Result};

/// One endpoint of a crossing, mirroring the `nextNode` / `onTop` /
/// `oppositeNode` record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeSlot {
    /// Global index of the linked node, `None` for a terminal.
    pub peer: Option<usize>,
    pub on_top: bool,
    /// Node on the other side of the crossing along the same thread.
    pub opposite: usize,
}

impl NodeSlot {
    /// The slot at local position `slot` (0..4) of `crossing`, following the
    /// fixed 0,1 top / 2,3 bottom convention.
    pub fn conventional(crossing: usize, slot: usize, peer: Option<usize>) -> Self {
        NodeSlot {
            peer,
            on_top: slot < 2,
            opposite: 4 * crossing + (slot ^ 1),
        }
    }
}

/// Planar placement carried by generated graphs.
///
/// Positions and slot directions are integer vectors; they are only used to
/// realize rotations and mirror images and are not part of the file format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    /// One position per crossing.
    pub positions: Vec<[i64; 2]>,
    /// One outgoing direction per node slot.
    pub directions: Vec<[i64; 2]>,
}

impl Layout {
    /// Placement used for graphs that come without one: crossings on a single
    /// row, top thread running east/west and bottom thread north/south. Slot
    /// directions are listed in increasing angle so that the placement
    /// reproduces the graph's own slot order.
    pub fn fallback(crossings: usize) -> Self {
        let positions = (0..crossings as i64).map(|i| [2 * i, 0]).collect();
        let directions = (0..crossings)
            .flat_map(|_| [[1, 0], [-1, 0], [0, 1], [0, -1]])
            .collect();
        Layout {
            positions,
            directions,
        }
    }
}

/// A textile hypergraph.
///
/// Terminals are not stored; they exist only as `None` peers. Equality is
/// structural (slots and label); the optional layout is ignored.
#[derive(Clone, Debug, Default)]
pub struct TextileGraph {
    slots: Vec<NodeSlot>,
    label: Option<String>,
    layout: Option<Layout>,
}

impl PartialEq for TextileGraph {
    fn eq(&self, other: &Self) -> bool {
        self.slots == other.slots && self.label == other.label
    }
}

impl Eq for TextileGraph {}

impl TextileGraph {
    /// Builds a graph from the peer table of each crossing, using the slot
    /// convention of the file format. The result is validated.
    pub fn from_peers(peers: &[[Option<usize>; 4]]) -> Result<Self> {
        let g = Self::from_peers_unchecked(peers);
        let report = validate(&g);
        if report.is_empty() {
            Ok(g)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub(crate) fn from_peers_unchecked(peers: &[[Option<usize>; 4]]) -> Self {
        let slots = peers
            .iter()
            .enumerate()
            .flat_map(|(c, p)| (0..4).map(move |s| NodeSlot::conventional(c, s, p[s])))
            .collect();
        TextileGraph {
            slots,
            label: None,
            layout: None,
        }
    }

    /// Wraps raw slots without any checking; see [`validate`].
    pub fn from_slots(slots: Vec<NodeSlot>) -> Self {
        TextileGraph {
            slots,
            label: None,
            layout: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub(crate) fn with_layout(mut self, layout: Layout) -> Self {
        debug_assert_eq!(layout.positions.len(), self.crossing_count());
        debug_assert_eq!(layout.directions.len(), self.slots.len());
        self.layout = Some(layout);
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_ref()
    }

    pub fn slots(&self) -> &[NodeSlot] {
        &self.slots
    }

    pub fn node_count(&self) -> usize {
        self.slots.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.slots.len() / 4
    }

    pub fn slot(&self, node: usize) -> Result<&NodeSlot> {
        self.slots.get(node).ok_or(Error::NodeOutOfRange {
            node,
            nodes: self.slots.len(),
        })
    }

    /// Number of thread ends.
    pub fn terminal_count(&self) -> usize {
        self.slots.iter().filter(|s| s.peer.is_none()).count()
    }

    /// Number of links between nodes plus links to terminals.
    pub fn omega_count(&self) -> usize {
        (self.node_count() + self.terminal_count()) / 2
    }

    /// Peers of the four slots of `crossing` in file order.
    pub fn crossing_peers(&self, crossing: usize) -> [Option<usize>; 4] {
        let base = 4 * crossing;
        [0, 1, 2, 3].map(|s| self.slots[base + s].peer)
    }

    /// Renumbers crossings and the slots inside them.
    ///
    /// New crossing `i` is old crossing `order[i]`; its local slot `j` is the
    /// old local slot `slot_order[i][j]`. Peers, opposites and the layout are
    /// carried along; `on_top` flags travel with their slots.
    pub(crate) fn relabel(&self, order: &[usize], slot_order: &[[usize; 4]]) -> TextileGraph {
        let n = self.crossing_count();
        debug_assert_eq!(order.len(), n);
        let mut new_index = vec![0usize; self.slots.len()];
        for (new_c, (&old_c, perm)) in order.iter().zip(slot_order).enumerate() {
            for (new_s, &old_s) in perm.iter().enumerate() {
                new_index[4 * old_c + old_s] = 4 * new_c + new_s;
            }
        }
        let mut slots = vec![
            NodeSlot {
                peer: None,
                on_top: false,
                opposite: 0,
            };
            self.slots.len()
        ];
        for (old, slot) in self.slots.iter().enumerate() {
            slots[new_index[old]] = NodeSlot {
                peer: slot.peer.map(|p| new_index[p]),
                on_top: slot.on_top,
                opposite: new_index[slot.opposite],
            };
        }
        let layout = self.layout.as_ref().map(|l| {
            let mut directions = vec![[0, 0]; l.directions.len()];
            for (old, d) in l.directions.iter().enumerate() {
                directions[new_index[old]] = *d;
            }
            Layout {
                positions: order.iter().map(|&c| l.positions[c]).collect(),
                directions,
            }
        });
        TextileGraph {
            slots,
            label: self.label.clone(),
            layout,
        }
    }

    /// Resets `on_top` to the slot convention (0,1 top, 2,3 bottom).
    pub(crate) fn reset_on_top(&mut self) {
        for (i, s) in self.slots.iter_mut().enumerate() {
            s.on_top = i % 4 < 2;
        }
    }
}
