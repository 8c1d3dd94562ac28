use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use super::constraint::{AgentConstraints, Constraint};
use super::heuristic::Heuristic;
use super::path::Path;
use crate::graph::{AgentSpace, DistanceTable, SearchState};
use crate::model::{Cost, Instance, LocId, Time};

/// How a path has to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Present at `loc` exactly at `time`, then leave the yard.
    Exact { loc: LocId, time: Time },
    /// Leave from `loc` at any time up to `latest`.
    Window { loc: LocId, latest: Time },
    /// Reach `loc` and stay there for good.
    Park { loc: LocId },
}

impl Target {
    pub fn location(&self) -> LocId {
        match *self {
            Target::Exact { loc, .. } | Target::Window { loc, .. } | Target::Park { loc } => loc,
        }
    }
}

const NO_PARENT: u32 = u32::MAX;

/// Open-list key: lowest f first, then deeper (higher g), then fewer pending
/// tasks, then insertion order.
type OpenKey = Reverse<(Cost, Reverse<Cost>, u32, u32)>;

struct Node {
    state: SearchState,
    parent: u32,
}

struct Search<'s, 'a> {
    arena: Vec<Node>,
    best: HashMap<SearchState, Cost>,
    open: BinaryHeap<OpenKey>,
    deadline: Time,
    heuristic: &'s Heuristic<'s>,
    space: &'s AgentSpace<'a>,
}

impl Search<'_, '_> {
    fn push(&mut self, state: SearchState, parent: u32, g: Cost) {
        if state.t.saturating_add(self.heuristic.steps(&state)) > self.deadline {
            return;
        }
        match self.best.entry(state) {
            Entry::Occupied(mut e) => {
                if *e.get() <= g {
                    return;
                }
                e.insert(g);
            }
            Entry::Vacant(e) => {
                e.insert(g);
            }
        }
        let f = g.saturating_add(self.heuristic.cost(&state));
        let idx = self.arena.len() as u32;
        self.arena.push(Node { state, parent });
        self.open
            .push(Reverse((f, Reverse(g), self.space.pending_count(&state), idx)));
    }

    fn trace(&self, mut idx: u32) -> Vec<SearchState> {
        let mut states = Vec::new();
        while idx != NO_PARENT {
            let node = &self.arena[idx as usize];
            states.push(node.state);
            idx = node.parent;
        }
        states.reverse();
        states
    }
}

/// Single-agent optimal search under constraints. Holds only immutable
/// precomputed tables, so one planner can serve concurrent calls.
pub struct Planner<'a> {
    instance: &'a Instance,
    dist: DistanceTable,
    spaces: Vec<AgentSpace<'a>>,
}

impl<'a> Planner<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        Planner {
            instance,
            dist: DistanceTable::new(instance),
            spaces: (0..instance.agents.len())
                .map(|a| AgentSpace::new(instance, a))
                .collect(),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.dist
    }

    pub fn space(&self, agent: usize) -> &AgentSpace<'a> {
        &self.spaces[agent]
    }

    /// End condition of `agent` when serving goal vertex `goal`, or its fixed
    /// goal when `goal` is `None`.
    pub fn target(&self, agent: usize, goal: Option<usize>) -> Option<Target> {
        let mode = self.instance.mode;
        match goal {
            Some(j) => {
                let g = self.instance.goals.get(j)?;
                Some(if mode.timed {
                    Target::Exact {
                        loc: g.location,
                        time: g.time,
                    }
                } else {
                    Target::Window {
                        loc: g.location,
                        latest: g.time,
                    }
                })
            }
            None => self.instance.agents[agent].goal.map(|loc| Target::Park { loc }),
        }
    }

    pub fn heuristic(&self, agent: usize, goal: LocId, s: &SearchState) -> Cost {
        Heuristic::new(&self.dist, &self.spaces[agent], goal).cost(s)
    }

    /// Minimum-cost path for `agent` ending at `goal` (see [`Planner::target`])
    /// that respects `constraints`, or `None` when no such path exists
    /// within the horizon.
    pub fn plan(
        &self,
        agent: usize,
        goal: Option<usize>,
        constraints: &AgentConstraints,
    ) -> Option<Path> {
        let target = self.target(agent, goal)?;
        let space = &self.spaces[agent];
        let heuristic = Heuristic::new(&self.dist, space, target.location());
        let horizon = space.horizon();
        let arrival = self.instance.agents[agent].arrival;
        let goal_loc = target.location();
        let (deadline, entry_latest) = match target {
            Target::Exact { time, .. } => (time.min(horizon), arrival.time),
            Target::Window { latest, .. } => (latest.min(horizon), latest.min(horizon)),
            Target::Park { .. } => (
                constraints.ends_by().map_or(horizon, |e| e.min(horizon)),
                arrival.time,
            ),
        };

        let is_goal = |s: &SearchState| {
            if s.loc != goal_loc || !space.is_complete(s) {
                return false;
            }
            match target {
                Target::Exact { time, .. } => s.t == time,
                Target::Window { latest, .. } => s.t <= latest,
                Target::Park { loc } => {
                    constraints.latest_at(loc).is_none_or(|lt| lt <= s.t) && constraints.allows_end(s.t)
                }
            }
        };

        let mut search = Search {
            arena: Vec::new(),
            best: HashMap::new(),
            open: BinaryHeap::new(),
            deadline,
            heuristic: &heuristic,
            space,
        };
        for t in arrival.time..=entry_latest {
            if constraints.forbids_vertex(arrival.location, t) {
                continue;
            }
            for s in space.entry_states(arrival.location, arrival.direction, t) {
                search.push(s, NO_PARENT, 0);
            }
        }

        let mut succs = Vec::with_capacity(6);
        while let Some(Reverse((_, Reverse(g), _, idx))) = search.open.pop() {
            let state = search.arena[idx as usize].state;
            if search.best.get(&state).is_some_and(|&b| b < g) {
                continue;
            }
            if is_goal(&state) {
                return Some(Path {
                    agent,
                    goal,
                    states: search.trace(idx),
                    cost: g,
                });
            }
            succs.clear();
            space.for_each_neighbor(&state, |s| succs.push(s));
            for succ in &succs {
                let next = succ.state;
                if constraints.forbids_vertex(next.loc, next.t) {
                    continue;
                }
                if next.loc != state.loc && constraints.forbids_edge(state.loc, next.loc, state.t) {
                    continue;
                }
                search.push(next, idx, g + succ.cost);
            }
        }
        None
    }
}

/// Plans one agent from scratch. See [`Planner::plan`].
pub fn plan_single(
    instance: &Instance,
    agent: usize,
    goal: Option<usize>,
    constraints: &[Constraint],
) -> Option<Path> {
    let planner = Planner::new(instance);
    planner.plan(agent, goal, &AgentConstraints::new(agent, constraints))
}
