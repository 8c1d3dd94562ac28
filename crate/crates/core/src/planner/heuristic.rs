use crate::graph::{AgentSpace, DistanceTable, SearchState, UNREACHABLE, UNREACHABLE_HOPS};
use crate::model::{Cost, Instance, LocId, Time};

/// Admissible cost-to-go and time-to-go bounds toward one goal location.
///
/// Each pending service task forces a visit to one of its locations, so the
/// remaining cost is at least the cheapest detour through that set. Tasks
/// are bounded one at a time and the maximum is taken.
pub struct Heuristic<'a> {
    dist: &'a DistanceTable,
    space: &'a AgentSpace<'a>,
    goal: LocId,
}

impl<'a> Heuristic<'a> {
    pub fn new(dist: &'a DistanceTable, space: &'a AgentSpace<'a>, goal: LocId) -> Self {
        Heuristic { dist, space, goal }
    }

    pub fn cost(&self, s: &SearchState) -> Cost {
        let node = self.dist.node(s.loc, s.dir);
        let mut h = self.dist.cost_to(node, self.goal);
        let pending = self.space.all_done() & !s.done;
        for (i, task) in self.space.tasks().iter().enumerate() {
            if pending & (1 << i) == 0 {
                continue;
            }
            let detour = task
                .locations
                .iter()
                .map(|&l| {
                    self.dist
                        .cost_to(node, l)
                        .saturating_add(self.dist.loc_cost(l, self.goal))
                })
                .min()
                .unwrap_or(UNREACHABLE);
            h = h.max(detour);
        }
        h.min(UNREACHABLE)
    }

    /// Fewest further time steps before the agent can be at the goal with
    /// all tasks done.
    pub fn steps(&self, s: &SearchState) -> Time {
        let node = self.dist.node(s.loc, s.dir);
        let mut need = self.dist.hops_to(node, self.goal);
        let pending = self.space.all_done() & !s.done;
        for (i, task) in self.space.tasks().iter().enumerate() {
            if pending & (1 << i) == 0 {
                continue;
            }
            let detour = task
                .locations
                .iter()
                .map(|&l| {
                    let stays = if l == s.loc {
                        task.duration.saturating_sub(s.run as u32)
                    } else {
                        task.duration - 1
                    };
                    self.dist
                        .hops_to(node, l)
                        .saturating_add(stays)
                        .saturating_add(self.dist.loc_hops(l, self.goal))
                })
                .min()
                .unwrap_or(UNREACHABLE_HOPS);
            need = need.max(detour);
        }
        need
    }
}

/// Lower bound on the remaining cost for `agent` from `state` to `goal`
/// (a location), accounting for its pending service tasks.
pub fn admissible_heuristic(
    state: &SearchState,
    goal: LocId,
    instance: &Instance,
    agent: usize,
) -> Cost {
    let dist = DistanceTable::new(instance);
    let space = AgentSpace::new(instance, agent);
    Heuristic::new(&dist, &space, goal).cost(state)
}
