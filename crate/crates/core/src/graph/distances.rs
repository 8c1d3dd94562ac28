use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::directed::{split_directions, ArcKind, DirNode};
use crate::model::{Cost, Dir, Instance, LocId, Time};

pub const UNREACHABLE: Cost = Cost::MAX / 4;
pub const UNREACHABLE_HOPS: Time = Time::MAX / 4;

/// All-pairs cheapest costs and step counts over the location graph, or over
/// the direction-split graph when headings are tracked.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    directions: bool,
    n: usize,
    cost: Vec<Cost>,
    hops: Vec<Time>,
}

impl DistanceTable {
    pub fn new(instance: &Instance) -> Self {
        let graph = &*instance.graph;
        let directions = instance.mode.directions;
        let move_cost = instance.costs.move_cost;
        let adjacency: Vec<Vec<(usize, Cost)>> = if directions {
            let split = split_directions(graph, instance.costs.reversal_cost);
            (0..split.node_count())
                .map(|i| {
                    split
                        .successors(DirNode(i as u32))
                        .iter()
                        .map(|&(m, kind)| {
                            let c = match kind {
                                ArcKind::Move => move_cost,
                                ArcKind::Reversal => split.reversal_cost(),
                            };
                            (m.index(), c)
                        })
                        .collect()
                })
                .collect()
        } else {
            graph
                .ids()
                .map(|v| graph.adjacent(v).iter().map(|u| (u.index(), move_cost)).collect())
                .collect()
        };
        let n = adjacency.len();
        let mut cost = vec![UNREACHABLE; n * n];
        let mut hops = vec![UNREACHABLE_HOPS; n * n];
        for src in 0..n {
            let row = &mut cost[src * n..(src + 1) * n];
            let mut heap = BinaryHeap::from([Reverse((0, src))]);
            row[src] = 0;
            while let Some(Reverse((d, v))) = heap.pop() {
                if d > row[v] {
                    continue;
                }
                for &(u, c) in &adjacency[v] {
                    let nd = d + c;
                    if nd < row[u] {
                        row[u] = nd;
                        heap.push(Reverse((nd, u)));
                    }
                }
            }
            let row = &mut hops[src * n..(src + 1) * n];
            row[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(v) = queue.pop_front() {
                for &(u, _) in &adjacency[v] {
                    if row[u] == UNREACHABLE_HOPS {
                        row[u] = row[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        DistanceTable {
            directions,
            n,
            cost,
            hops,
        }
    }

    pub fn node(&self, loc: LocId, dir: Option<Dir>) -> usize {
        match (self.directions, dir) {
            (true, Some(d)) => DirNode::new(loc, d).index(),
            (true, None) => panic!("heading required when directions are tracked"),
            (false, _) => loc.index(),
        }
    }

    fn loc_nodes(&self, loc: LocId) -> impl Iterator<Item = usize> + '_ {
        let dirs: &[Option<Dir>] = if self.directions {
            &[Some(Dir::Left), Some(Dir::Right)]
        } else {
            &[None]
        };
        dirs.iter().map(move |&d| self.node(loc, d))
    }

    /// Cheapest cost from a node to any heading at `loc`.
    pub fn cost_to(&self, from: usize, loc: LocId) -> Cost {
        self.loc_nodes(loc)
            .map(|to| self.cost[from * self.n + to])
            .min()
            .unwrap_or(UNREACHABLE)
    }

    /// Cheapest cost between two locations with free choice of headings at both.
    pub fn loc_cost(&self, from: LocId, to: LocId) -> Cost {
        self.loc_nodes(from)
            .map(|f| self.cost_to(f, to))
            .min()
            .unwrap_or(UNREACHABLE)
    }

    /// Fewest time steps from a node to any heading at `loc`.
    pub fn hops_to(&self, from: usize, loc: LocId) -> Time {
        self.loc_nodes(loc)
            .map(|to| self.hops[from * self.n + to])
            .min()
            .unwrap_or(UNREACHABLE_HOPS)
    }

    pub fn loc_hops(&self, from: LocId, to: LocId) -> Time {
        self.loc_nodes(from)
            .map(|f| self.hops_to(f, to))
            .min()
            .unwrap_or(UNREACHABLE_HOPS)
    }
}
