//! Direction split: every location becomes a left-heading and a
//! right-heading node. A train entering a location through its left side
//! heads right and can only leave through the right side; turning around
//! takes a reversal arc, which only reversible locations have.

use crate::model::{Cost, Dir, LocId, TrackGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirNode(pub u32);

impl DirNode {
    pub fn new(loc: LocId, heading: Dir) -> Self {
        DirNode(loc.0 * 2 + heading.index() as u32)
    }

    pub fn location(self) -> LocId {
        LocId(self.0 / 2)
    }

    pub fn heading(self) -> Dir {
        if self.0.is_multiple_of(2) {
            Dir::Left
        } else {
            Dir::Right
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    Move,
    Reversal,
}

#[derive(Debug, Clone)]
pub struct DirectedYardGraph {
    n_locations: usize,
    moves: Vec<(DirNode, DirNode)>,
    reversals: Vec<(DirNode, DirNode)>,
    reversal_cost: Cost,
    out: Vec<Vec<(DirNode, ArcKind)>>,
}

impl DirectedYardGraph {
    pub fn node_count(&self) -> usize {
        self.n_locations * 2
    }

    pub fn location_count(&self) -> usize {
        self.n_locations
    }

    /// The two nodes that share the capacity of `loc`, left first.
    pub fn pair(&self, loc: LocId) -> (DirNode, DirNode) {
        (DirNode::new(loc, Dir::Left), DirNode::new(loc, Dir::Right))
    }

    pub fn moves(&self) -> &[(DirNode, DirNode)] {
        &self.moves
    }

    pub fn reversals(&self) -> &[(DirNode, DirNode)] {
        &self.reversals
    }

    pub fn reversal_cost(&self) -> Cost {
        self.reversal_cost
    }

    pub fn successors(&self, node: DirNode) -> &[(DirNode, ArcKind)] {
        &self.out[node.index()]
    }

    pub fn has_reversal(&self, loc: LocId) -> bool {
        let (l, r) = self.pair(loc);
        self.reversals.contains(&(l, r))
    }

    /// Movement arcs touching either node of `loc`.
    pub fn incident_moves(&self, loc: LocId) -> usize {
        self.moves
            .iter()
            .filter(|(a, b)| a.location() == loc || b.location() == loc)
            .count()
    }

    pub fn dump(&self, graph: &TrackGraph) -> String {
        let label = |n: DirNode| format!("{}/{}", graph.name(n.location()), n.heading());
        let mut out = String::new();
        for i in 0..self.node_count() {
            let n = DirNode(i as u32);
            let succ = self.out[i]
                .iter()
                .map(|(m, kind)| match kind {
                    ArcKind::Move => label(*m),
                    ArcKind::Reversal => format!("{} (rev {})", label(*m), self.reversal_cost),
                })
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!("{} -> {}\n", label(n), succ));
        }
        out
    }
}

pub fn split_directions(graph: &TrackGraph, reversal_cost: Cost) -> DirectedYardGraph {
    let n = graph.len();
    let mut moves = Vec::new();
    let mut reversals = Vec::new();
    let mut out = vec![Vec::new(); n * 2];
    for v in graph.ids() {
        for heading in Dir::BOTH {
            let from = DirNode::new(v, heading);
            for &(u, side) in graph.ports(v, heading) {
                // entering through `side` means heading away from it
                let to = DirNode::new(u, side.opposite());
                moves.push((from, to));
                out[from.index()].push((to, ArcKind::Move));
            }
        }
        if graph.location(v).reversible {
            let (l, r) = (DirNode::new(v, Dir::Left), DirNode::new(v, Dir::Right));
            reversals.push((l, r));
            reversals.push((r, l));
            out[l.index()].push((r, ArcKind::Reversal));
            out[r.index()].push((l, ArcKind::Reversal));
        }
    }
    DirectedYardGraph {
        n_locations: n,
        moves,
        reversals,
        reversal_cost,
        out,
    }
}
