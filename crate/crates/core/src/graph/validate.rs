use std::fmt;

use super::TextileGraph;

/// One violated structural rule, naming the nodes involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Node count is not a multiple of four.
    NodeCount { nodes: usize },
    /// A crossing does not have exactly two mutually opposite top slots.
    PiPair { crossing: usize, top_slots: usize },
    OppositeOutsideCrossing { node: usize, opposite: usize },
    OppositeNotMutual { node: usize, opposite: usize },
    OppositeLayer { node: usize, opposite: usize },
    SelfOpposite { node: usize },
    PeerOutOfRange { node: usize, peer: usize },
    PeerSameCrossing { node: usize, peer: usize },
    /// `node` links to `peer` but `peer` links back to `back`.
    PeerAsymmetric {
        node: usize,
        peer: usize,
        back: Option<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NodeCount { nodes } => {
                write!(f, "node count {nodes} is not a multiple of four")
            }
            Violation::PiPair {
                crossing,
                top_slots,
            } => write!(
                f,
                "Π-pair violation: crossing {crossing} has {top_slots} top slots forming no single top edge"
            ),
            Violation::OppositeOutsideCrossing { node, opposite } => write!(
                f,
                "node {node} has opposite {opposite} outside its crossing"
            ),
            Violation::OppositeNotMutual { node, opposite } => write!(
                f,
                "node {node} has opposite {opposite} whose opposite is not {node}"
            ),
            Violation::OppositeLayer { node, opposite } => write!(
                f,
                "node {node} and its opposite {opposite} lie on different layers"
            ),
            Violation::SelfOpposite { node } => write!(f, "node {node} is its own opposite"),
            Violation::PeerOutOfRange { node, peer } => {
                write!(f, "node {node} links to nonexistent node {peer}")
            }
            Violation::PeerSameCrossing { node, peer } => write!(
                f,
                "node {node} links to node {peer} of the same crossing"
            ),
            Violation::PeerAsymmetric { node, peer, back } => match back {
                Some(b) => write!(
                    f,
                    "symmetry violation: node {node} links to {peer} but {peer} links to {b}"
                ),
                None => write!(
                    f,
                    "symmetry violation: node {node} links to {peer} but {peer} is terminated"
                ),
            },
        }
    }
}

/// All violations found in a graph; empty iff the graph is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every structural rule of a textile graph.
///
/// The parity rule (node count plus terminal count is even) cannot fail for a
/// slot table: every slot holds exactly one peer or one terminal, and
/// symmetric peer links pair up the non-terminal slots.
pub fn validate(g: &TextileGraph) -> ValidationReport {
    let slots = g.slots();
    let n = slots.len();
    let mut violations = Vec::new();

    if n % 4 != 0 {
        violations.push(Violation::NodeCount { nodes: n });
    }

    for (node, slot) in slots.iter().enumerate() {
        let crossing = node / 4;
        let op = slot.opposite;
        if op == node {
            violations.push(Violation::SelfOpposite { node });
        } else if op >= n || op / 4 != crossing {
            violations.push(Violation::OppositeOutsideCrossing { node, opposite: op });
        } else {
            if slots[op].opposite != node {
                violations.push(Violation::OppositeNotMutual { node, opposite: op });
            }
            if slots[op].on_top != slot.on_top {
                violations.push(Violation::OppositeLayer { node, opposite: op });
            }
        }

        if let Some(peer) = slot.peer {
            if peer >= n {
                violations.push(Violation::PeerOutOfRange { node, peer });
            } else if peer / 4 == crossing {
                violations.push(Violation::PeerSameCrossing { node, peer });
            } else if slots[peer].peer != Some(node) {
                violations.push(Violation::PeerAsymmetric {
                    node,
                    peer,
                    back: slots[peer].peer,
                });
            }
        }
    }

    for crossing in 0..n / 4 {
        let top: Vec<usize> = (4 * crossing..4 * crossing + 4)
            .filter(|&i| slots[i].on_top)
            .collect();
        let paired = top.len() == 2 && slots[top[0]].opposite == top[1];
        if !paired {
            violations.push(Violation::PiPair {
                crossing,
                top_slots: top.len(),
            });
        }
    }

    ValidationReport { violations }
}
