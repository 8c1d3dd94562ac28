use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::model::{LocId, Time};

/// Agent-specific prohibition added when branching on a conflict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// The agent may not occupy `loc` (either heading) at time `t`.
    Vertex { agent: usize, loc: LocId, t: Time },
    /// The agent may not move from `from` to `to` during `t -> t + 1`.
    Edge {
        agent: usize,
        from: LocId,
        to: LocId,
        t: Time,
    },
    /// The agent's path must end strictly after `t`. Only used with a
    /// parking goal.
    EndsAfter { agent: usize, t: Time },
    /// The agent's path must end at or before `t`. Only used with a
    /// parking goal.
    EndsBy { agent: usize, t: Time },
}

impl Constraint {
    pub fn agent(&self) -> usize {
        match *self {
            Constraint::Vertex { agent, .. }
            | Constraint::Edge { agent, .. }
            | Constraint::EndsAfter { agent, .. }
            | Constraint::EndsBy { agent, .. } => agent,
        }
    }
}

/// Constraints of one agent, indexed for the low-level search.
#[derive(Debug, Clone, Default)]
pub struct AgentConstraints {
    vertices: HashSet<(LocId, Time)>,
    edges: HashSet<(LocId, LocId, Time)>,
    latest: HashMap<LocId, Time>,
    ends_after: Option<Time>,
    ends_by: Option<Time>,
}

impl AgentConstraints {
    pub fn new<'c>(agent: usize, constraints: impl IntoIterator<Item = &'c Constraint>) -> Self {
        let mut out = AgentConstraints::default();
        for c in constraints {
            if c.agent() == agent {
                out.insert(c);
            }
        }
        out
    }

    pub fn insert(&mut self, c: &Constraint) {
        match *c {
            Constraint::Vertex { loc, t, .. } => {
                self.vertices.insert((loc, t));
                let latest = self.latest.entry(loc).or_insert(t);
                *latest = (*latest).max(t);
            }
            Constraint::Edge { from, to, t, .. } => {
                self.edges.insert((from, to, t));
            }
            Constraint::EndsAfter { t, .. } => {
                self.ends_after = Some(self.ends_after.map_or(t, |e| e.max(t)));
            }
            Constraint::EndsBy { t, .. } => {
                self.ends_by = Some(self.ends_by.map_or(t, |e| e.min(t)));
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
            + self.edges.len()
            + usize::from(self.ends_after.is_some())
            + usize::from(self.ends_by.is_some())
    }

    #[inline]
    pub fn forbids_vertex(&self, loc: LocId, t: Time) -> bool {
        !self.vertices.is_empty() && self.vertices.contains(&(loc, t))
    }

    #[inline]
    pub fn forbids_edge(&self, from: LocId, to: LocId, t: Time) -> bool {
        !self.edges.is_empty() && self.edges.contains(&(from, to, t))
    }

    /// Latest time at which `loc` is forbidden, if ever.
    pub fn latest_at(&self, loc: LocId) -> Option<Time> {
        self.latest.get(&loc).copied()
    }

    /// Whether a path ending at `t` satisfies the end-time constraints.
    pub fn allows_end(&self, t: Time) -> bool {
        self.ends_after.is_none_or(|e| t > e) && self.ends_by.is_none_or(|e| t <= e)
    }

    pub fn ends_by(&self) -> Option<Time> {
        self.ends_by
    }
}
