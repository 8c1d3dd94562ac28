//! Joint-state search for one fixed goal per agent.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use crate::graph::{AgentSpace, SearchState};
use crate::model::{Cost, Dir, Instance, LocId, Time, TrackGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(super) enum Status {
    /// Not yet in the yard.
    Pending,
    Present(SearchState),
    /// Left the yard through its goal vertex.
    Gone,
    /// Finished at its fixed goal and occupies it from now on.
    Parked(LocId, Option<Dir>),
}

impl Status {
    fn location(&self) -> Option<LocId> {
        match *self {
            Status::Present(s) => Some(s.loc),
            Status::Parked(l, _) => Some(l),
            _ => None,
        }
    }

    fn finished(&self) -> bool {
        matches!(self, Status::Gone | Status::Parked(..))
    }
}

/// What one agent has to achieve in this search.
#[derive(Debug, Clone, Copy)]
pub(super) struct Goal {
    pub loc: LocId,
    /// Last time the agent may be in the yard (matching) or must be
    /// parked by (classic).
    pub deadline: Time,
    /// Matching: leave exactly at `deadline`; otherwise any time up to it.
    pub exact_exit: bool,
    pub parks: bool,
}

/// Unweighted hop counts between locations, ignoring headings.
pub(super) fn hop_table(graph: &TrackGraph) -> Vec<Vec<Option<u32>>> {
    let n = graph.len();
    let mut table = vec![vec![None; n]; n];
    for src in graph.ids() {
        let row = &mut table[src.index()];
        row[src.index()] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = row[v.index()].unwrap();
            for &u in graph.adjacent(v) {
                if row[u.index()].is_none() {
                    row[u.index()] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
    }
    table
}

pub(super) struct Found {
    pub cost: Cost,
    /// Per agent: the states it occupies, and the cost it accumulated.
    pub paths: Vec<(Vec<SearchState>, Cost)>,
}

struct Record {
    statuses: Vec<Status>,
    costs: Vec<Cost>,
    parent: usize,
}

pub(super) struct JointSearch<'a> {
    instance: &'a Instance,
    spaces: Vec<AgentSpace<'a>>,
    goals: Vec<Goal>,
    hops: &'a [Vec<Option<u32>>],
    pub expanded: u64,
}

type Choice = (Status, Cost);

impl<'a> JointSearch<'a> {
    pub fn new(instance: &'a Instance, goals: Vec<Goal>, hops: &'a [Vec<Option<u32>>]) -> Self {
        JointSearch {
            instance,
            spaces: (0..instance.agents.len())
                .map(|a| AgentSpace::new(instance, a))
                .collect(),
            goals,
            hops,
            expanded: 0,
        }
    }

    fn hops(&self, from: LocId, to: LocId) -> Option<u32> {
        self.hops[from.index()][to.index()]
    }

    /// Admissible remaining cost: every remaining hop costs one move.
    fn estimate(&self, statuses: &[Status]) -> Cost {
        let mv = self.instance.costs.move_cost;
        statuses
            .iter()
            .enumerate()
            .map(|(a, st)| {
                let from = match st {
                    Status::Pending => self.instance.agents[a].arrival.location,
                    Status::Present(s) => s.loc,
                    _ => return 0,
                };
                self.hops(from, self.goals[a].loc).map_or(0, |h| h as Cost * mv)
            })
            .sum()
    }

    /// Whether an agent at `loc` at time `t` can still make its deadline.
    fn in_time(&self, a: usize, loc: LocId, t: Time) -> bool {
        let g = &self.goals[a];
        match self.hops(loc, g.loc) {
            Some(h) => t as u64 + h as u64 <= g.deadline as u64,
            None => false,
        }
    }

    /// Options of agent `a` for the step from `t` to `t + 1`.
    fn options(&self, a: usize, st: &Status, t: i64) -> Vec<Choice> {
        let next = t + 1;
        let goal = self.goals[a];
        let space = &self.spaces[a];
        let arrival = self.instance.agents[a].arrival;
        let mut out = Vec::new();
        match *st {
            Status::Gone | Status::Parked(..) => out.push((*st, 0)),
            Status::Pending => {
                let entry_open = if goal.exact_exit || goal.parks {
                    next == arrival.time as i64
                } else {
                    next >= arrival.time as i64
                };
                let wait_outside = if goal.exact_exit || goal.parks {
                    next < arrival.time as i64
                } else {
                    next <= goal.deadline as i64
                };
                if wait_outside {
                    out.push((Status::Pending, 0));
                }
                if entry_open && next <= space.horizon() as i64 {
                    let nt = next as Time;
                    if self.in_time(a, arrival.location, nt) {
                        for s in space.entry_states(arrival.location, arrival.direction, nt) {
                            out.push((Status::Present(s), 0));
                        }
                    }
                }
            }
            Status::Present(s) => {
                let at_goal = s.loc == goal.loc && space.is_complete(&s);
                if goal.parks {
                    if at_goal {
                        out.push((Status::Parked(s.loc, s.dir), 0));
                    }
                } else if s.t == goal.deadline {
                    if at_goal {
                        out.push((Status::Gone, 0));
                    }
                    return out;
                } else if at_goal && !goal.exact_exit {
                    out.push((Status::Gone, 0));
                }
                for succ in space.neighbors(&s) {
                    if self.in_time(a, succ.state.loc, succ.state.t) {
                        out.push((Status::Present(succ.state), succ.cost));
                    }
                }
            }
        }
        out
    }

    /// Cheapest joint plan, or `None` if there is none.
    pub fn run(&mut self) -> Option<Found> {
        let n = self.instance.agents.len();
        let t0 = self
            .instance
            .agents
            .iter()
            .map(|a| a.arrival.time as i64)
            .min()
            .unwrap_or(0)
            - 1;
        let mut arena = vec![Record {
            statuses: vec![Status::Pending; n],
            costs: vec![0; n],
            parent: usize::MAX,
        }];
        let mut times = vec![t0];
        let mut best: HashMap<(i64, Vec<Status>), Cost> = HashMap::new();
        best.insert((t0, arena[0].statuses.clone()), 0);
        let mut open = BinaryHeap::new();
        open.push(Reverse((self.estimate(&arena[0].statuses), 0 as Cost, 0usize)));

        while let Some(Reverse((_, g, idx))) = open.pop() {
            let t = times[idx];
            let statuses = arena[idx].statuses.clone();
            if best.get(&(t, statuses.clone())).is_some_and(|&b| b < g) {
                continue;
            }
            if statuses.iter().all(Status::finished) {
                return Some(self.trace(&arena, idx, g));
            }
            self.expanded += 1;
            let options: Vec<Vec<Choice>> = statuses
                .iter()
                .enumerate()
                .map(|(a, st)| self.options(a, st, t))
                .collect();
            if options.iter().any(Vec::is_empty) {
                continue;
            }
            let mut chosen = Vec::with_capacity(n);
            let mut children = Vec::new();
            combine(&statuses, &options, &mut chosen, &mut children);
            for next in children {
                let step: Vec<Cost> = next.iter().map(|o| o.1).collect();
                let nst: Vec<Status> = next.iter().map(|o| o.0).collect();
                let ng = g + step.iter().sum::<Cost>();
                match best.entry((t + 1, nst.clone())) {
                    Entry::Occupied(mut e) => {
                        if *e.get() <= ng {
                            continue;
                        }
                        e.insert(ng);
                    }
                    Entry::Vacant(e) => {
                        e.insert(ng);
                    }
                }
                let costs = arena[idx].costs.iter().zip(&step).map(|(c, s)| c + s).collect();
                let f = ng + self.estimate(&nst);
                arena.push(Record {
                    statuses: nst,
                    costs,
                    parent: idx,
                });
                times.push(t + 1);
                open.push(Reverse((f, ng, arena.len() - 1)));
            }
        }
        None
    }

    fn trace(&self, arena: &[Record], mut idx: usize, cost: Cost) -> Found {
        let n = self.instance.agents.len();
        let costs = arena[idx].costs.clone();
        let mut states: Vec<Vec<SearchState>> = vec![Vec::new(); n];
        while idx != usize::MAX {
            for (a, st) in arena[idx].statuses.iter().enumerate() {
                if let Status::Present(s) = st {
                    states[a].push(*s);
                }
            }
            idx = arena[idx].parent;
        }
        Found {
            cost,
            paths: states
                .into_iter()
                .zip(costs)
                .map(|(mut s, c)| {
                    s.reverse();
                    (s, c)
                })
                .collect(),
        }
    }
}

/// Enumerates joint moves, keeping only those where no location holds two
/// agents at `t + 1` and no two agents swap locations.
fn combine<'o>(
    current: &[Status],
    options: &'o [Vec<Choice>],
    chosen: &mut Vec<&'o Choice>,
    out: &mut Vec<Vec<Choice>>,
) {
    let a = chosen.len();
    if a == options.len() {
        out.push(chosen.iter().map(|o| **o).collect());
        return;
    }
    let from = current[a].location();
    'opt: for opt in &options[a] {
        let to = opt.0.location();
        for (b, other) in chosen.iter().enumerate() {
            if !pair_is_legal((from, to), (current[b].location(), other.0.location())) {
                continue 'opt;
            }
        }
        chosen.push(opt);
        combine(current, options, chosen, out);
        chosen.pop();
    }
}

/// Whether two agents may make the given moves during one step. Each move
/// is the location before and after; `None` means outside the yard.
fn pair_is_legal(
    (from, to): (Option<LocId>, Option<LocId>),
    (other_from, other_to): (Option<LocId>, Option<LocId>),
) -> bool {
    if to.is_some() && to == other_to {
        return false;
    }
    match (from, to, other_from, other_to) {
        (Some(f), Some(t), Some(of), Some(ot)) => !(f != t && f == ot && t == of),
        _ => true,
    }
}

/// Whether a joint step from `before` to `after` (one entry per agent) is
/// allowed: no location holds two agents afterwards, and no two agents
/// trade locations.
pub fn step_is_legal(before: &[Option<LocId>], after: &[Option<LocId>]) -> bool {
    let n = before.len().min(after.len());
    (0..n).all(|i| {
        (i + 1..n).all(|j| pair_is_legal((before[i], after[i]), (before[j], after[j])))
    })
}
