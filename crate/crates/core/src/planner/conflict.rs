use std::borrow::Borrow;
use std::fmt;

use serde::Serialize;

use super::path::Path;
use crate::model::{Instance, LocId, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictKind {
    /// Two agents on the same (directional) node.
    Node,
    /// Two agents on the two directional nodes of one location.
    PairCapacity,
    /// Two agents swap locations in one step.
    Edge,
}

impl fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConflictKind::Node => "node conflict",
            ConflictKind::PairCapacity => "pair-capacity conflict",
            ConflictKind::Edge => "edge conflict",
        })
    }
}

/// Violation between agents `a < b`. Node-type conflicts happen at `loc` at
/// time `t`; for edge conflicts `a` moves `loc -> to` while `b` moves
/// `to -> loc` during `t -> t + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Conflict {
    pub t: Time,
    pub a: usize,
    pub b: usize,
    pub kind: ConflictKind,
    pub loc: LocId,
    pub to: Option<LocId>,
}

impl Conflict {
    pub fn describe(&self, instance: &Instance) -> String {
        let name = |l: LocId| instance.graph.name(l);
        let (a, b) = (&instance.agents[self.a].id, &instance.agents[self.b].id);
        match self.to {
            Some(to) => format!(
                "{}: `{a}` {}->{} and `{b}` {}->{} during {}->{}",
                self.kind,
                name(self.loc),
                name(to),
                name(to),
                name(self.loc),
                self.t,
                self.t + 1
            ),
            None => format!("{}: `{a}` and `{b}` at {} at t={}", self.kind, name(self.loc), self.t),
        }
    }
}

/// All pairwise conflicts between `paths`, ordered by time, then agents.
///
/// A location holds at most one agent regardless of heading. Agents are
/// present from their first state to their last; in classic (non-matching)
/// mode they remain parked at their last location afterwards.
pub fn detect_conflicts<P: Borrow<Path>>(paths: &[P], instance: &Instance) -> Vec<Conflict> {
    scan(paths, instance, usize::MAX)
}

/// Earliest conflict, if any.
pub fn first_conflict<P: Borrow<Path>>(paths: &[P], instance: &Instance) -> Option<Conflict> {
    scan(paths, instance, 1).into_iter().next()
}

fn scan<P: Borrow<Path>>(paths: &[P], instance: &Instance, limit: usize) -> Vec<Conflict> {
    let paths: Vec<&Path> = paths.iter().map(Borrow::borrow).collect();
    let parks = !instance.mode.matching;
    let mut out = Vec::new();
    let Some(t_min) = paths.iter().filter(|p| !p.states.is_empty()).map(|p| p.start_time()).min() else {
        return out;
    };
    let t_max = paths.iter().map(|p| p.end_time()).max().unwrap_or(t_min);
    let mut now: Vec<_> = paths.iter().map(|p| p.position(t_min, parks)).collect();
    for t in t_min..=t_max {
        let next: Vec<_> = paths.iter().map(|p| p.position(t + 1, parks)).collect();
        let mut found = Vec::new();
        for i in 0..paths.len() {
            let Some((li, di)) = now[i] else { continue };
            for j in i + 1..paths.len() {
                let Some((lj, dj)) = now[j] else { continue };
                let (a, b) = ordered(paths[i].agent, paths[j].agent);
                if li == lj {
                    found.push(Conflict {
                        t,
                        a,
                        b,
                        kind: if di == dj {
                            ConflictKind::Node
                        } else {
                            ConflictKind::PairCapacity
                        },
                        loc: li,
                        to: None,
                    });
                } else if t < t_max {
                    if let (Some((ni, _)), Some((nj, _))) = (next[i], next[j]) {
                        if ni == lj && nj == li {
                            // report from the lower-numbered agent's side
                            let (from, to) = if paths[i].agent < paths[j].agent {
                                (li, ni)
                            } else {
                                (lj, nj)
                            };
                            found.push(Conflict {
                                t,
                                a,
                                b,
                                kind: ConflictKind::Edge,
                                loc: from,
                                to: Some(to),
                            });
                        }
                    }
                }
            }
        }
        found.sort();
        for c in found {
            out.push(c);
            if out.len() >= limit {
                return out;
            }
        }
        now = next;
    }
    out
}

fn ordered(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}
