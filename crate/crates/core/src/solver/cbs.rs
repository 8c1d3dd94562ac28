//! Conflict-based search with best-first enumeration of goal assignments.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use log::debug;
use rayon::prelude::*;
use thiserror::Error;

use super::assignment::AssignmentEnumerator;
use super::outcome::{Engine, Outcome, Status};
use crate::model::{Cost, Instance, Time, MAX_TASKS};
use crate::planner::{
    detect_conflicts, AgentConstraints, Conflict, ConflictKind, Constraint, Path, Planner, Solution,
};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveConfig {
    /// Wall-clock limit; `None` runs to completion.
    pub time_budget: Option<Duration>,
    /// Limit on expanded high-level nodes.
    pub node_limit: Option<u64>,
    /// Decision bound: report `Infeasible(decision)` once the optimum is
    /// known to exceed it.
    pub bound: Option<Cost>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("type `{ty}` has {agents} agent(s) but {goals} goal vertex(es)")]
    TypeImbalance {
        ty: String,
        agents: usize,
        goals: usize,
    },
    #[error("agent `{0}` has no fixed goal")]
    MissingGoal(String),
    #[error("agent `{0}` has more than {MAX_TASKS} service tasks")]
    TooManyTasks(String),
}

fn check(instance: &Instance, config: &SolveConfig) -> Result<(), SolveError> {
    if config.node_limit == Some(0) {
        return Err(SolveError::InvalidConfig("node limit must be positive".into()));
    }
    if config.time_budget.is_some_and(|b| b.is_zero()) {
        return Err(SolveError::InvalidConfig("time budget must be positive".into()));
    }
    for (a, agent) in instance.agents.iter().enumerate() {
        if instance.active_tasks(a).len() > MAX_TASKS {
            return Err(SolveError::TooManyTasks(agent.id.clone()));
        }
        if !instance.mode.matching && agent.goal.is_none() {
            return Err(SolveError::MissingGoal(agent.id.clone()));
        }
    }
    if instance.mode.matching {
        for (ty, (agents, goals)) in instance.type_counts() {
            if agents != goals {
                return Err(SolveError::TypeImbalance {
                    ty: ty.to_string(),
                    agents,
                    goals,
                });
            }
        }
    }
    Ok(())
}

/// Persistent list of branching constraints shared between nodes.
struct Link {
    constraint: Constraint,
    parent: Option<Arc<Link>>,
}

fn constraints_of(chain: &Option<Arc<Link>>, agent: usize) -> AgentConstraints {
    let mut out = AgentConstraints::default();
    let mut cur = chain.as_deref();
    while let Some(link) = cur {
        if link.constraint.agent() == agent {
            out.insert(&link.constraint);
        }
        cur = link.parent.as_deref();
    }
    out
}

struct Node {
    cost: Cost,
    n_conflicts: usize,
    seq: u64,
    goals: Arc<Vec<Option<usize>>>,
    chain: Option<Arc<Link>>,
    paths: Vec<Arc<Path>>,
    conflict: Option<Conflict>,
}

impl Node {
    fn key(&self) -> (Cost, usize, u64) {
        (self.cost, self.n_conflicts, self.seq)
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // reversed: BinaryHeap pops the smallest key
    fn cmp(&self, other: &Self) -> Ordering {
        other.key().cmp(&self.key())
    }
}

/// Cost, goal of each agent and paths of a root node.
type Root = (Cost, Vec<Option<usize>>, Vec<Arc<Path>>);

/// Cost, constraint chain and paths of a child node.
type Branch = (Cost, Option<Arc<Link>>, Vec<Arc<Path>>);

/// Source of root nodes: a single one for fixed goals, or one per
/// assignment in best-first order.
enum Roots {
    Fixed(Option<(Cost, Vec<Arc<Path>>)>),
    Matching {
        enumerator: AssignmentEnumerator,
        paths: Vec<Vec<Option<Arc<Path>>>>,
    },
}

impl Roots {
    fn new(planner: &Planner<'_>) -> Roots {
        let instance = planner.instance();
        let n = instance.agents.len();
        let free = AgentConstraints::default();
        if !instance.mode.matching {
            let paths: Option<Vec<_>> = (0..n)
                .into_par_iter()
                .map(|a| planner.plan(a, None, &free).map(Arc::new))
                .collect();
            return Roots::Fixed(paths.map(|p| (p.iter().map(|p| p.cost).sum(), p)));
        }
        let paths: Vec<Vec<Option<Arc<Path>>>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let ty = &instance.agents[a].agent_type;
                (0..instance.goals.len())
                    .map(|j| {
                        if &instance.goals[j].goal_type != ty {
                            return None;
                        }
                        planner.plan(a, Some(j), &free).map(Arc::new)
                    })
                    .collect()
            })
            .collect();
        let costs = paths
            .iter()
            .map(|row| row.iter().map(|p| p.as_ref().map(|p| p.cost)).collect())
            .collect();
        Roots::Matching {
            enumerator: AssignmentEnumerator::new(costs),
            paths,
        }
    }

    fn peek_cost(&self) -> Option<Cost> {
        match self {
            Roots::Fixed(root) => root.as_ref().map(|r| r.0),
            Roots::Matching { enumerator, .. } => enumerator.peek_cost(),
        }
    }

    fn next(&mut self) -> Option<Root> {
        match self {
            Roots::Fixed(root) => root.take().map(|(cost, paths)| {
                let goals = vec![None; paths.len()];
                (cost, goals, paths)
            }),
            Roots::Matching { enumerator, paths } => {
                let a = enumerator.next()?;
                let chosen = a
                    .goals
                    .iter()
                    .enumerate()
                    .map(|(agent, &g)| paths[agent][g].clone().expect("assigned pair has a path"))
                    .collect();
                Some((a.cost, a.goals.into_iter().map(Some).collect(), chosen))
            }
        }
    }
}

/// Cost of the cheapest assignment when conflicts between agents are
/// ignored. `None` when even that relaxation has no solution.
pub fn lower_bound(instance: &Instance) -> Option<Cost> {
    Roots::new(&Planner::new(instance)).peek_cost()
}

struct Search<'a> {
    instance: &'a Instance,
    planner: Planner<'a>,
    open: BinaryHeap<Node>,
    seq: u64,
}

impl<'a> Search<'a> {
    fn make_node(
        &mut self,
        cost: Cost,
        goals: Arc<Vec<Option<usize>>>,
        chain: Option<Arc<Link>>,
        paths: Vec<Arc<Path>>,
    ) -> Node {
        let conflicts = detect_conflicts(&paths, self.instance);
        self.seq += 1;
        Node {
            cost,
            n_conflicts: conflicts.len(),
            seq: self.seq,
            goals,
            chain,
            paths,
            conflict: conflicts.first().copied(),
        }
    }

    /// Child of `node` with `child.constraints` added; only `child.replan`
    /// gets a new path; the other constrained agents already comply.
    fn branch(&self, node: &Node, child: Child) -> Option<Branch> {
        let mut chain = node.chain.clone();
        for constraint in child.constraints {
            chain = Some(Arc::new(Link {
                constraint,
                parent: chain,
            }));
        }
        let agent = child.replan;
        let path = self
            .planner
            .plan(agent, node.goals[agent], &constraints_of(&chain, agent))?;
        let cost = node.cost - node.paths[agent].cost + path.cost;
        let mut paths = node.paths.clone();
        paths[agent] = Arc::new(path);
        Some((cost, chain, paths))
    }
}

struct Child {
    constraints: Vec<Constraint>,
    replan: usize,
}

impl Child {
    fn single(constraint: Constraint) -> Child {
        Child {
            replan: constraint.agent(),
            constraints: vec![constraint],
        }
    }
}

/// The agent of `c` that sits parked at its own fixed goal when the
/// conflict happens, if any.
fn parked_agent(c: &Conflict, node: &Node) -> Option<usize> {
    [c.a, c.b].into_iter().find(|&x| {
        let path = &node.paths[x];
        node.goals[x].is_none()
            && path.end_time() < c.t
            && path.states.last().is_some_and(|s| s.loc == c.loc)
    })
}

fn split(c: &Conflict, node: &Node, horizon: Time) -> [Child; 2] {
    match c.kind {
        ConflictKind::Node | ConflictKind::PairCapacity => {
            if let Some(parked) = parked_agent(c, node) {
                // Either the parked agent finishes later than t, or it is
                // done by t and the goal is closed to the other from t on.
                let other = if parked == c.a { c.b } else { c.a };
                let mut closed = vec![Constraint::EndsBy { agent: parked, t: c.t }];
                closed.extend((c.t..=horizon).map(|t| Constraint::Vertex {
                    agent: other,
                    loc: c.loc,
                    t,
                }));
                return [
                    Child::single(Constraint::EndsAfter { agent: parked, t: c.t }),
                    Child {
                        constraints: closed,
                        replan: other,
                    },
                ];
            }
            [c.a, c.b].map(|agent| {
                Child::single(Constraint::Vertex {
                    agent,
                    loc: c.loc,
                    t: c.t,
                })
            })
        }
        ConflictKind::Edge => {
            let to = c.to.expect("edge conflict has a target");
            [
                Child::single(Constraint::Edge {
                    agent: c.a,
                    from: c.loc,
                    to,
                    t: c.t,
                }),
                Child::single(Constraint::Edge {
                    agent: c.b,
                    from: to,
                    to: c.loc,
                    t: c.t,
                }),
            ]
        }
    }
}

/// Whether two agents must both stay at the same fixed goal forever.
fn shared_parking(instance: &Instance) -> bool {
    if instance.mode.matching {
        return false;
    }
    let mut seen = HashSet::new();
    instance.agents.iter().filter_map(|a| a.goal).any(|g| !seen.insert(g))
}

/// Optimal sum-of-costs search. Returns `Optimal` with a conflict-free
/// solution, `Infeasible` when no solution exists within the horizon,
/// `Infeasible(decision)` when the optimum exceeds `config.bound`, or
/// `Timeout` with the best proven lower bound.
pub fn solve(instance: &Instance, config: &SolveConfig) -> Result<Outcome, SolveError> {
    let start = Instant::now();
    check(instance, config)?;
    let planner = Planner::new(instance);
    let mut roots = Roots::new(&planner);
    let mut search = Search {
        instance,
        planner,
        open: BinaryHeap::new(),
        seq: 0,
    };
    let mut expanded = 0u64;
    let mut bound_reached = roots.peek_cost();

    let finish = |status, cost, lb, solution, expanded| Outcome {
        engine: Engine::Cbs,
        status,
        cost,
        lower_bound: lb,
        horizon: instance.horizon(),
        nodes_expanded: expanded,
        runtime_ms: start.elapsed().as_millis() as u64,
        solution,
    };

    if shared_parking(instance) {
        debug!("two agents park at the same location");
        return Ok(finish(Status::Infeasible, None, bound_reached, None, expanded));
    }

    loop {
        while let Some(c) = roots.peek_cost() {
            if search.open.peek().is_some_and(|n| n.cost < c) {
                break;
            }
            let (cost, goals, paths) = roots.next().expect("peeked root");
            let node = search.make_node(cost, Arc::new(goals), None, paths);
            search.open.push(node);
        }
        let Some(node) = search.open.pop() else {
            debug!("search space exhausted after {expanded} expansions");
            return Ok(finish(Status::Infeasible, None, bound_reached, None, expanded));
        };
        bound_reached = Some(bound_reached.map_or(node.cost, |b| b.max(node.cost)));
        if config.bound.is_some_and(|k| node.cost > k) {
            return Ok(finish(Status::InfeasibleDecision, None, Some(node.cost), None, expanded));
        }
        let Some(conflict) = node.conflict else {
            let paths = node.paths.iter().map(|p| (**p).clone()).collect();
            return Ok(finish(
                Status::Optimal,
                Some(node.cost),
                Some(node.cost),
                Some(Solution { paths }),
                expanded,
            ));
        };
        let out_of_time = config.time_budget.is_some_and(|b| start.elapsed() >= b);
        if out_of_time || config.node_limit.is_some_and(|n| expanded >= n) {
            debug!("budget exhausted at bound {}", node.cost);
            return Ok(finish(Status::Timeout, None, Some(node.cost), None, expanded));
        }
        expanded += 1;

        let [ca, cb] = split(&conflict, &node, instance.horizon());
        let (left, right) = rayon::join(|| search.branch(&node, ca), || search.branch(&node, cb));
        for (cost, chain, paths) in [left, right].into_iter().flatten() {
            let child = search.make_node(cost, node.goals.clone(), chain, paths);
            search.open.push(child);
        }
    }
}
