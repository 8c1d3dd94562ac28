//! Static admissibility checks on an instance.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::instance::Instance;
use super::yard::{Dir, LocId, TrackGraph};
use super::MAX_TASKS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    TypeCountMismatch,
    UnreachableGoal,
    UnreachableService,
    DeadEndWithoutReversal,
    ArrivalAfterDepartures,
    GoalNotAfterArrival,
    HorizonTooShort,
    MissingFixedGoal,
    UnexpectedFixedGoal,
    TimedWithoutMatching,
    InvalidTask,
    TooManyTasks,
    DuplicateAgentId,
    WaitCostExceedsReversal,
    IgnoredField,
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FindingKind::TypeCountMismatch => "type count mismatch",
            FindingKind::UnreachableGoal => "unreachable goal location",
            FindingKind::UnreachableService => "unreachable service location",
            FindingKind::DeadEndWithoutReversal => "dead-end without reversal",
            FindingKind::ArrivalAfterDepartures => "arrival after all departures of its type",
            FindingKind::GoalNotAfterArrival => "goal not after any arrival of its type",
            FindingKind::HorizonTooShort => "horizon shorter than latest goal",
            FindingKind::MissingFixedGoal => "missing fixed goal",
            FindingKind::UnexpectedFixedGoal => "fixed goal in matching mode",
            FindingKind::TimedWithoutMatching => "timed mode requires matching",
            FindingKind::InvalidTask => "invalid service task",
            FindingKind::TooManyTasks => "too many service tasks",
            FindingKind::DuplicateAgentId => "duplicate agent id",
            FindingKind::WaitCostExceedsReversal => "wait cost exceeds reversal cost",
            FindingKind::IgnoredField => "ignored field",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<Finding>,
    pub warnings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_admissible(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn has_error(&self, kind: FindingKind) -> bool {
        self.errors.iter().any(|f| f.kind == kind)
    }

    fn error(&mut self, kind: FindingKind, message: impl Into<String>) {
        self.errors.push(Finding {
            kind,
            message: message.into(),
        });
    }

    fn warn(&mut self, kind: FindingKind, message: impl Into<String>) {
        self.warnings.push(Finding {
            kind,
            message: message.into(),
        });
    }
}

/// Locations reachable from `start`, honoring headings when `directions` is set.
fn reachable(
    graph: &TrackGraph,
    directions: bool,
    start: LocId,
    heading: Option<Dir>,
) -> BTreeSet<LocId> {
    let mut out = BTreeSet::new();
    if !directions {
        let mut queue = VecDeque::from([start]);
        out.insert(start);
        while let Some(v) = queue.pop_front() {
            for &u in graph.adjacent(v) {
                if out.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        return out;
    }
    let mut seen = vec![[false; 2]; graph.len()];
    let mut queue = VecDeque::new();
    let starts: Vec<Dir> = heading.map_or(Dir::BOTH.to_vec(), |d| vec![d]);
    for d in starts {
        seen[start.index()][d.index()] = true;
        queue.push_back((start, d));
    }
    while let Some((v, d)) = queue.pop_front() {
        out.insert(v);
        let mut next: Vec<(LocId, Dir)> = graph
            .ports(v, d)
            .iter()
            .map(|&(u, side)| (u, side.opposite()))
            .collect();
        if graph.location(v).reversible {
            next.push((v, d.opposite()));
        }
        for (u, h) in next {
            if !seen[u.index()][h.index()] {
                seen[u.index()][h.index()] = true;
                queue.push_back((u, h));
            }
        }
    }
    out
}

/// Checks that an instance is admissible for solving. Never fails; all
/// findings are carried in the report.
pub fn validate_instance(instance: &Instance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let graph = &*instance.graph;
    let mode = instance.mode;
    let horizon = instance.horizon();

    let mut ids = BTreeSet::new();
    for a in &instance.agents {
        if !ids.insert(a.id.as_str()) {
            report.error(FindingKind::DuplicateAgentId, format!("agent `{}`", a.id));
        }
    }

    if mode.timed && !mode.matching {
        report.error(
            FindingKind::TimedWithoutMatching,
            "timed arrivals and departures need goal vertices",
        );
    }

    if mode.matching {
        for (ty, (agents, goals)) in instance.type_counts() {
            if agents != goals {
                report.error(
                    FindingKind::TypeCountMismatch,
                    format!("type `{ty}`: {agents} agents arrive but {goals} depart"),
                );
            }
        }
        for a in &instance.agents {
            if a.goal.is_some() {
                report.error(
                    FindingKind::UnexpectedFixedGoal,
                    format!("agent `{}` has a fixed goal", a.id),
                );
            }
            let latest = instance
                .goals
                .iter()
                .filter(|g| g.goal_type == a.agent_type)
                .map(|g| g.time)
                .max();
            if let Some(latest) = latest {
                if a.arrival.time >= latest {
                    report.error(
                        FindingKind::ArrivalAfterDepartures,
                        format!(
                            "agent `{}` arrives at {} but the last `{}` departure is at {}",
                            a.id, a.arrival.time, a.agent_type, latest
                        ),
                    );
                }
            }
        }
        for (j, g) in instance.goals.iter().enumerate() {
            let earliest = instance
                .agents
                .iter()
                .filter(|a| a.agent_type == g.goal_type)
                .map(|a| a.arrival.time)
                .min();
            if let Some(earliest) = earliest {
                if g.time <= earliest {
                    report.error(
                        FindingKind::GoalNotAfterArrival,
                        format!(
                            "goal #{j} at time {} is not after the earliest `{}` arrival ({})",
                            g.time, g.goal_type, earliest
                        ),
                    );
                }
            }
            if g.time > horizon {
                report.error(
                    FindingKind::HorizonTooShort,
                    format!("goal #{j} at time {} exceeds horizon {horizon}", g.time),
                );
            }
        }
    } else {
        for a in &instance.agents {
            if a.goal.is_none() {
                report.error(
                    FindingKind::MissingFixedGoal,
                    format!("agent `{}` needs a goal in classic mode", a.id),
                );
            }
        }
        if !instance.goals.is_empty() {
            report.warn(
                FindingKind::IgnoredField,
                "goal vertices are ignored when matching is off",
            );
        }
    }

    for a in &instance.agents {
        if a.arrival.time > horizon {
            report.error(
                FindingKind::HorizonTooShort,
                format!("agent `{}` arrives after horizon {horizon}", a.id),
            );
        }
        if a.tasks.len() > MAX_TASKS {
            report.error(
                FindingKind::TooManyTasks,
                format!("agent `{}` has {} tasks (max {MAX_TASKS})", a.id, a.tasks.len()),
            );
        }
        for t in &a.tasks {
            if t.duration == 0 {
                report.error(
                    FindingKind::InvalidTask,
                    format!("task `{}` of agent `{}` has zero duration", t.id, a.id),
                );
            }
            if t.locations.is_empty() {
                report.error(
                    FindingKind::InvalidTask,
                    format!("task `{}` of agent `{}` has no locations", t.id, a.id),
                );
            }
            if let Some(kind) = &t.kind {
                for &l in &t.locations {
                    if !graph.location(l).task_kinds.contains(kind) {
                        report.error(
                            FindingKind::InvalidTask,
                            format!(
                                "task `{}` of agent `{}`: location `{}` does not offer `{kind}`",
                                t.id,
                                a.id,
                                graph.name(l)
                            ),
                        );
                    }
                }
            }
        }
        if !a.tasks.is_empty() && !mode.services {
            report.warn(
                FindingKind::IgnoredField,
                format!("tasks of agent `{}` are ignored with services off", a.id),
            );
        }
    }

    if mode.directions {
        for id in graph.ids() {
            let loc = graph.location(id);
            let open_side = Dir::BOTH.iter().any(|&d| graph.ports(id, d).is_empty());
            if graph.degree(id) > 0 && open_side && !loc.reversible {
                report.error(
                    FindingKind::DeadEndWithoutReversal,
                    format!("location `{}` is a stub that cannot be reversed on", loc.name),
                );
            }
        }
        if instance.costs.wait_cost > instance.costs.reversal_cost {
            report.warn(
                FindingKind::WaitCostExceedsReversal,
                "reversing is cheaper than waiting; relaxation ordering against direction-free levels may not hold",
            );
        }
    }

    // Reachability of goals and service locations from arrivals.
    for a in &instance.agents {
        let reach = reachable(
            graph,
            mode.directions,
            a.arrival.location,
            if mode.directions { a.arrival.direction } else { None },
        );
        if mode.matching {
            let reaches_any = instance
                .goals
                .iter()
                .filter(|g| g.goal_type == a.agent_type)
                .any(|g| reach.contains(&g.location));
            let has_goal = instance.goals.iter().any(|g| g.goal_type == a.agent_type);
            if has_goal && !reaches_any {
                report.error(
                    FindingKind::UnreachableGoal,
                    format!("agent `{}` cannot reach any `{}` goal", a.id, a.agent_type),
                );
            }
        } else if let Some(goal) = a.goal {
            if !reach.contains(&goal) {
                report.error(
                    FindingKind::UnreachableGoal,
                    format!("agent `{}` cannot reach `{}`", a.id, graph.name(goal)),
                );
            }
        }
        if mode.services {
            for t in &a.tasks {
                if !t.locations.is_empty() && !t.locations.iter().any(|l| reach.contains(l)) {
                    report.error(
                        FindingKind::UnreachableService,
                        format!("agent `{}` cannot reach any location of task `{}`", a.id, t.id),
                    );
                }
            }
        }
    }
    if mode.matching {
        for (j, g) in instance.goals.iter().enumerate() {
            let reached = instance
                .agents
                .iter()
                .filter(|a| a.agent_type == g.goal_type)
                .any(|a| {
                    reachable(
                        graph,
                        mode.directions,
                        a.arrival.location,
                        if mode.directions { a.arrival.direction } else { None },
                    )
                    .contains(&g.location)
                });
            let typed = instance.agents.iter().any(|a| a.agent_type == g.goal_type);
            if typed && !reached {
                report.error(
                    FindingKind::UnreachableGoal,
                    format!(
                        "goal #{j} at `{}` is unreachable for every `{}` agent",
                        graph.name(g.location),
                        g.goal_type
                    ),
                );
            }
        }
    }

    report
}
