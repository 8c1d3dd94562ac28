//! Implicit time-expanded state space of a single agent.

use crate::model::{Cost, Dir, Instance, LocId, ServiceTask, Time, TrackGraph};

/// One vertex of an agent's time-expanded search space.
///
/// `done` is the completion mask over the agent's service tasks. `run` counts
/// consecutive time steps spent at `loc` (including the step of entering),
/// capped at the largest value that can still matter: the longest pending
/// task duration at `loc`, or the no-parking dwell limit plus one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SearchState {
    pub loc: LocId,
    pub dir: Option<Dir>,
    pub t: Time,
    pub done: u32,
    pub run: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Move,
    Wait,
    Reverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Successor {
    pub state: SearchState,
    pub cost: Cost,
    pub kind: StepKind,
}

/// Successor generator for one agent; borrows the instance, holds no mutable state.
#[derive(Debug, Clone)]
pub struct AgentSpace<'a> {
    instance: &'a Instance,
    graph: &'a TrackGraph,
    tasks: &'a [ServiceTask],
    task_mask: Vec<u32>,
    all_done: u32,
    horizon: Time,
}

impl<'a> AgentSpace<'a> {
    pub fn new(instance: &'a Instance, agent: usize) -> Self {
        Self::with_tasks(instance, instance.active_tasks(agent))
    }

    pub fn with_tasks(instance: &'a Instance, tasks: &'a [ServiceTask]) -> Self {
        assert!(tasks.len() <= crate::model::MAX_TASKS, "too many service tasks");
        let graph = &*instance.graph;
        let mut task_mask = vec![0u32; graph.len()];
        for (i, task) in tasks.iter().enumerate() {
            for l in &task.locations {
                task_mask[l.index()] |= 1 << i;
            }
        }
        let all_done = if tasks.len() == 32 {
            u32::MAX
        } else {
            (1u32 << tasks.len()) - 1
        };
        AgentSpace {
            instance,
            graph,
            tasks,
            task_mask,
            all_done,
            horizon: instance.horizon(),
        }
    }

    pub fn tasks(&self) -> &[ServiceTask] {
        self.tasks
    }

    pub fn horizon(&self) -> Time {
        self.horizon
    }

    pub fn all_done(&self) -> u32 {
        self.all_done
    }

    pub fn is_complete(&self, s: &SearchState) -> bool {
        s.done == self.all_done
    }

    pub fn pending_count(&self, s: &SearchState) -> u32 {
        (self.all_done & !s.done).count_ones()
    }

    /// Tasks not yet done that can be served at `loc`.
    pub fn pending_at(&self, loc: LocId, done: u32) -> u32 {
        self.task_mask[loc.index()] & !done
    }

    fn dwell_limit(&self, loc: LocId) -> Option<u32> {
        if self.graph.location(loc).no_parking {
            self.instance.max_dwell
        } else {
            None
        }
    }

    fn cap(&self, loc: LocId, done: u32) -> u32 {
        let mut cap = 0;
        let mut pending = self.pending_at(loc, done);
        while pending != 0 {
            let i = pending.trailing_zeros() as usize;
            pending &= pending - 1;
            cap = cap.max(self.tasks[i].duration);
        }
        if let Some(m) = self.dwell_limit(loc) {
            cap = cap.max(m + 1);
        }
        cap
    }

    /// State reached after occupying `loc` for `count` consecutive steps,
    /// with any task whose duration is met marked done.
    pub fn settle(&self, loc: LocId, dir: Option<Dir>, t: Time, done: u32, count: u32) -> SearchState {
        let mut done = done;
        let mut pending = self.pending_at(loc, done);
        while pending != 0 {
            let i = pending.trailing_zeros() as usize;
            pending &= pending - 1;
            if count >= self.tasks[i].duration {
                done |= 1 << i;
            }
        }
        let run = count.min(self.cap(loc, done)) as u16;
        SearchState {
            loc,
            dir,
            t,
            done,
            run,
        }
    }

    /// States for entering the yard at `loc` at time `t`: one per admissible heading.
    pub fn entry_states(&self, loc: LocId, heading: Option<Dir>, t: Time) -> Vec<SearchState> {
        if !self.instance.mode.directions {
            return vec![self.settle(loc, None, t, 0, 1)];
        }
        match heading {
            Some(d) => vec![self.settle(loc, Some(d), t, 0, 1)],
            None => Dir::BOTH
                .iter()
                .map(|&d| self.settle(loc, Some(d), t, 0, 1))
                .collect(),
        }
    }

    /// Whether the agent may stay put (wait or reverse) for one more step.
    pub fn may_stay(&self, s: &SearchState) -> bool {
        match self.dwell_limit(s.loc) {
            Some(m) => (s.run as u32) <= m,
            None => true,
        }
    }

    /// All successors at time `t + 1`. Empty at the horizon.
    pub fn neighbors(&self, s: &SearchState) -> Vec<Successor> {
        let mut out = Vec::with_capacity(6);
        self.for_each_neighbor(s, |succ| out.push(succ));
        out
    }

    pub fn for_each_neighbor(&self, s: &SearchState, mut f: impl FnMut(Successor)) {
        if s.t >= self.horizon {
            return;
        }
        let costs = &self.instance.costs;
        let t = s.t + 1;
        match s.dir {
            Some(heading) if self.instance.mode.directions => {
                for &(u, side) in self.graph.ports(s.loc, heading) {
                    f(Successor {
                        state: self.settle(u, Some(side.opposite()), t, s.done, 1),
                        cost: costs.move_cost,
                        kind: StepKind::Move,
                    });
                }
            }
            _ => {
                for &u in self.graph.adjacent(s.loc) {
                    f(Successor {
                        state: self.settle(u, None, t, s.done, 1),
                        cost: costs.move_cost,
                        kind: StepKind::Move,
                    });
                }
            }
        }
        if !self.may_stay(s) {
            return;
        }
        let count = s.run as u32 + 1;
        f(Successor {
            state: self.settle(s.loc, s.dir, t, s.done, count),
            cost: costs.wait_cost,
            kind: StepKind::Wait,
        });
        if let Some(heading) = s.dir {
            if self.instance.mode.directions && self.graph.location(s.loc).reversible {
                f(Successor {
                    state: self.settle(s.loc, Some(heading.opposite()), t, s.done, count),
                    cost: costs.reversal_cost,
                    kind: StepKind::Reverse,
                });
            }
        }
    }

    /// The successor of `from` at location `loc` with heading `dir`, if that step is legal.
    pub fn step_to(&self, from: &SearchState, loc: LocId, dir: Option<Dir>) -> Option<Successor> {
        let mut found = None;
        self.for_each_neighbor(from, |succ| {
            if found.is_none() && succ.state.loc == loc && succ.state.dir == dir {
                found = Some(succ);
            }
        });
        found
    }
}

/// Successors of `state` for `agent` under the instance's mode and costs.
pub fn neighbors(state: &SearchState, instance: &Instance, agent: usize) -> Vec<Successor> {
    AgentSpace::new(instance, agent).neighbors(state)
}
