//! Exhaustive reference solver for tiny instances.
//!
//! Searches the joint state space of all agents directly, using only the
//! instance model and the per-agent successor function. Nothing here calls
//! into the planner or the solver, so agreement between the two is a real
//! check.

mod joint;

use std::time::Instant;

use thiserror::Error;

use crate::model::{Instance, Time};
use crate::planner::{Path, Solution};
use crate::solver::{Engine, Outcome, Status};
pub use joint::step_is_legal;
use joint::{hop_table, Goal, JointSearch};

pub const MAX_AGENTS: usize = 3;
pub const MAX_LOCATIONS: usize = 12;
pub const MAX_HORIZON: Time = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the oracle: {what} is {value}, limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("agent `{0}` has no fixed goal")]
    MissingGoal(String),
    #[error("agents and goal vertices of type `{0}` do not pair up")]
    TypeImbalance(String),
}

fn guard(instance: &Instance) -> Result<(), OracleError> {
    let checks = [
        ("agent count", instance.agents.len(), MAX_AGENTS),
        ("location count", instance.graph.len(), MAX_LOCATIONS),
        ("horizon", instance.horizon() as usize, MAX_HORIZON as usize),
    ];
    for (what, value, limit) in checks {
        if value > limit {
            return Err(OracleError::TooLarge { what, value, limit });
        }
    }
    Ok(())
}

/// Every type-respecting agent-to-goal bijection, in lexicographic order.
fn assignments(instance: &Instance) -> Vec<Vec<usize>> {
    fn rec(instance: &Instance, a: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a == instance.agents.len() {
            out.push(cur.clone());
            return;
        }
        for (j, g) in instance.goals.iter().enumerate() {
            if used[j] || g.goal_type != instance.agents[a].agent_type {
                continue;
            }
            used[j] = true;
            cur.push(j);
            rec(instance, a + 1, used, cur, out);
            cur.pop();
            used[j] = false;
        }
    }
    let mut out = Vec::new();
    rec(instance, 0, &mut vec![false; instance.goals.len()], &mut Vec::new(), &mut out);
    out
}

/// Exact optimum by exhaustive search over joint states. Refuses instances
/// beyond [`MAX_AGENTS`] agents, [`MAX_LOCATIONS`] locations or a horizon
/// of [`MAX_HORIZON`].
pub fn brute_force(instance: &Instance) -> Result<Outcome, OracleError> {
    let start = Instant::now();
    guard(instance)?;
    let mode = instance.mode;
    let horizon = instance.horizon();

    let plans: Vec<(Vec<Option<usize>>, Vec<Goal>)> = if mode.matching {
        for (ty, (agents, goals)) in instance.type_counts() {
            if agents != goals {
                return Err(OracleError::TypeImbalance(ty.to_string()));
            }
        }
        if instance.goals.len() != instance.agents.len() {
            return Err(OracleError::TypeImbalance(String::new()));
        }
        assignments(instance)
            .into_iter()
            .map(|assign| {
                let goals = assign
                    .iter()
                    .map(|&j| {
                        let g = &instance.goals[j];
                        Goal {
                            loc: g.location,
                            deadline: if mode.timed { g.time } else { g.time.min(horizon) },
                            exact_exit: mode.timed,
                            parks: false,
                        }
                    })
                    .collect();
                (assign.into_iter().map(Some).collect(), goals)
            })
            .collect()
    } else {
        let goals = instance
            .agents
            .iter()
            .map(|a| {
                let loc = a.goal.ok_or_else(|| OracleError::MissingGoal(a.id.clone()))?;
                Ok(Goal {
                    loc,
                    deadline: horizon,
                    exact_exit: false,
                    parks: true,
                })
            })
            .collect::<Result<Vec<_>, OracleError>>()?;
        vec![(vec![None; instance.agents.len()], goals)]
    };

    let hops = hop_table(&instance.graph);
    let mut expanded = 0;
    let mut best: Option<(joint::Found, Vec<Option<usize>>)> = None;
    for (assign, goals) in plans {
        let mut search = JointSearch::new(instance, goals, &hops);
        let found = search.run();
        expanded += search.expanded;
        if let Some(f) = found {
            if best.as_ref().is_none_or(|(b, _)| f.cost < b.cost) {
                best = Some((f, assign));
            }
        }
    }

    let (status, cost, solution) = match best {
        Some((found, assign)) => {
            let paths = found
                .paths
                .into_iter()
                .zip(assign)
                .enumerate()
                .map(|(agent, ((states, cost), goal))| Path {
                    agent,
                    goal,
                    states,
                    cost,
                })
                .collect();
            (Status::Optimal, Some(found.cost), Some(Solution { paths }))
        }
        None => (Status::Infeasible, None, None),
    };
    Ok(Outcome {
        engine: Engine::Oracle,
        status,
        cost,
        lower_bound: cost,
        horizon,
        nodes_expanded: expanded,
        runtime_ms: start.elapsed().as_millis() as u64,
        solution,
    })
}
