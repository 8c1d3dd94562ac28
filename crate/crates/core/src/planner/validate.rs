//! Independent feasibility check of a complete solution.

use std::fmt;

use serde::Serialize;

use super::conflict::{detect_conflicts, Conflict};
use super::path::Solution;
use crate::graph::AgentSpace;
use crate::model::{Cost, Instance, Time};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingPath { agent: String },
    DuplicatePath { agent: String },
    EmptyPath { agent: String },
    WrongStart { agent: String, detail: String },
    IllegalStep { agent: String, t: Time },
    CostMismatch { agent: String, declared: Cost, actual: Cost },
    TasksIncomplete { agent: String, tasks: Vec<String> },
    MissingGoal { agent: String },
    UnknownGoal { agent: String, goal: usize },
    TypeMismatch { agent: String, goal: usize },
    WrongExit { agent: String, detail: String },
    GoalNotCovered { goal: usize },
    GoalReused { goal: usize },
    BeyondHorizon { agent: String, t: Time },
    Conflict { conflict: Conflict, detail: String },
}

impl Violation {
    pub fn label(&self) -> &'static str {
        match self {
            Violation::MissingPath { .. } => "missing path",
            Violation::DuplicatePath { .. } => "duplicate path",
            Violation::EmptyPath { .. } => "empty path",
            Violation::WrongStart { .. } => "wrong start",
            Violation::IllegalStep { .. } => "illegal step",
            Violation::CostMismatch { .. } => "cost mismatch",
            Violation::TasksIncomplete { .. } => "tasks incomplete",
            Violation::MissingGoal { .. } => "missing goal",
            Violation::UnknownGoal { .. } => "unknown goal",
            Violation::TypeMismatch { .. } => "type mismatch",
            Violation::WrongExit { .. } => "wrong exit",
            Violation::GoalNotCovered { .. } => "goal not covered",
            Violation::GoalReused { .. } => "goal reused",
            Violation::BeyondHorizon { .. } => "beyond horizon",
            Violation::Conflict { .. } => "conflict",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingPath { agent }
            | Violation::DuplicatePath { agent }
            | Violation::EmptyPath { agent }
            | Violation::MissingGoal { agent } => write!(f, "{}: `{agent}`", self.label()),
            Violation::WrongStart { agent, detail } | Violation::WrongExit { agent, detail } => {
                write!(f, "{}: `{agent}` {detail}", self.label())
            }
            Violation::IllegalStep { agent, t } => {
                write!(f, "illegal step: `{agent}` at t={t}")
            }
            Violation::CostMismatch {
                agent,
                declared,
                actual,
            } => write!(f, "cost mismatch: `{agent}` declares {declared}, path costs {actual}"),
            Violation::TasksIncomplete { agent, tasks } => {
                write!(f, "tasks incomplete: `{agent}` misses {}", tasks.join(", "))
            }
            Violation::UnknownGoal { agent, goal } | Violation::TypeMismatch { agent, goal } => {
                write!(f, "{}: `{agent}` -> goal #{goal}", self.label())
            }
            Violation::GoalNotCovered { goal } | Violation::GoalReused { goal } => {
                write!(f, "{}: goal #{goal}", self.label())
            }
            Violation::BeyondHorizon { agent, t } => {
                write!(f, "beyond horizon: `{agent}` at t={t}")
            }
            Violation::Conflict { detail, .. } => f.write_str(detail),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub violations: Vec<Violation>,
    /// Cost recomputed from the states, summed over legal paths.
    pub recomputed_cost: Cost,
}

impl SolutionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn conflicts(&self) -> impl Iterator<Item = &Conflict> {
        self.violations.iter().filter_map(|v| match v {
            Violation::Conflict { conflict, .. } => Some(conflict),
            _ => None,
        })
    }

    pub fn has(&self, label: &str) -> bool {
        self.violations.iter().any(|v| v.label() == label)
    }
}

/// Checks every path against the instance by replaying it through the
/// successor function, then checks goal coverage and pairwise conflicts.
pub fn validate_solution(instance: &Instance, solution: &Solution) -> SolutionReport {
    let mut report = SolutionReport::default();
    let mode = instance.mode;
    let horizon = instance.horizon();
    let graph = &*instance.graph;
    let v = &mut report.violations;

    let mut seen = vec![0usize; instance.agents.len()];
    for p in &solution.paths {
        seen[p.agent] += 1;
    }
    for (i, &n) in seen.iter().enumerate() {
        let agent = instance.agents[i].id.clone();
        if n == 0 {
            v.push(Violation::MissingPath { agent });
        } else if n > 1 {
            v.push(Violation::DuplicatePath { agent });
        }
    }

    let mut goal_use = vec![0usize; instance.goals.len()];
    for path in &solution.paths {
        let agent = &instance.agents[path.agent];
        let id = agent.id.clone();
        let (Some(first), Some(last)) = (path.states.first(), path.states.last()) else {
            v.push(Violation::EmptyPath { agent: id });
            continue;
        };

        // entry
        if first.loc != agent.arrival.location {
            v.push(Violation::WrongStart {
                agent: id.clone(),
                detail: format!(
                    "starts at `{}` instead of `{}`",
                    graph.name(first.loc),
                    graph.name(agent.arrival.location)
                ),
            });
        }
        let flexible_entry = mode.matching && !mode.timed;
        if (flexible_entry && first.t < agent.arrival.time)
            || (!flexible_entry && first.t != agent.arrival.time)
        {
            v.push(Violation::WrongStart {
                agent: id.clone(),
                detail: format!("enters at t={} but arrives at t={}", first.t, agent.arrival.time),
            });
        }
        let heading_ok = if mode.directions {
            first.dir.is_some() && (agent.arrival.direction.is_none() || first.dir == agent.arrival.direction)
        } else {
            first.dir.is_none()
        };
        if !heading_ok {
            v.push(Violation::WrongStart {
                agent: id.clone(),
                detail: "has a heading that does not match the mode or arrival".into(),
            });
        }
        if last.t > horizon || first.t > horizon {
            v.push(Violation::BeyondHorizon {
                agent: id.clone(),
                t: last.t.max(first.t),
            });
        }

        // replay
        let space = AgentSpace::new(instance, path.agent);
        let mut cur = space.settle(first.loc, first.dir, first.t, 0, 1);
        let mut cost = 0;
        let mut legal = true;
        for next in &path.states[1..] {
            let step = if next.t == cur.t + 1 {
                space.step_to(&cur, next.loc, next.dir)
            } else {
                None
            };
            match step {
                Some(s) => {
                    cost += s.cost;
                    cur = s.state;
                }
                None => {
                    v.push(Violation::IllegalStep {
                        agent: id.clone(),
                        t: cur.t,
                    });
                    legal = false;
                    break;
                }
            }
        }
        if legal {
            report.recomputed_cost += cost;
            if cost != path.cost {
                v.push(Violation::CostMismatch {
                    agent: id.clone(),
                    declared: path.cost,
                    actual: cost,
                });
            }
            if !space.is_complete(&cur) {
                let tasks = space
                    .tasks()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| cur.done & (1 << i) == 0)
                    .map(|(_, t)| t.id.clone())
                    .collect();
                v.push(Violation::TasksIncomplete {
                    agent: id.clone(),
                    tasks,
                });
            }
        }

        // exit
        if mode.matching {
            let Some(j) = path.goal else {
                v.push(Violation::MissingGoal { agent: id });
                continue;
            };
            let Some(goal) = instance.goals.get(j) else {
                v.push(Violation::UnknownGoal { agent: id, goal: j });
                continue;
            };
            goal_use[j] += 1;
            if goal.goal_type != agent.agent_type {
                v.push(Violation::TypeMismatch {
                    agent: id.clone(),
                    goal: j,
                });
            }
            let on_time = if mode.timed {
                last.t == goal.time
            } else {
                last.t <= goal.time
            };
            if last.loc != goal.location || !on_time {
                v.push(Violation::WrongExit {
                    agent: id,
                    detail: format!(
                        "leaves from `{}` at t={} instead of `{}` at t={}",
                        graph.name(last.loc),
                        last.t,
                        graph.name(goal.location),
                        goal.time
                    ),
                });
            }
        } else {
            match agent.goal {
                Some(g) if g == last.loc => {}
                Some(g) => v.push(Violation::WrongExit {
                    agent: id,
                    detail: format!(
                        "ends at `{}` instead of `{}`",
                        graph.name(last.loc),
                        graph.name(g)
                    ),
                }),
                None => v.push(Violation::MissingGoal { agent: id }),
            }
        }
    }

    if mode.matching {
        for (j, &n) in goal_use.iter().enumerate() {
            if n == 0 {
                v.push(Violation::GoalNotCovered { goal: j });
            } else if n > 1 {
                v.push(Violation::GoalReused { goal: j });
            }
        }
    }

    for conflict in detect_conflicts(&solution.paths, instance) {
        v.push(Violation::Conflict {
            detail: conflict.describe(instance),
            conflict,
        });
    }
    report
}
