//! JSON instance format.
//!
//! Locations are referenced by name everywhere. For yards given as tracks the
//! discretized locations are named `<track>.<index>`, counted from the left end.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::instance::{
    Agent, Arrival, CostModel, GoalVertex, Instance, ModeFlags, ServiceTask, YardSource,
};
use super::yard::{Dir, Edge, LocId, Location, TrackGraph};
use super::{Cost, ModelError, Time};
use crate::graph::discretize_yard;

/// Hand-built location graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub locations: Vec<LocationSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocationSpec {
    pub name: String,
    #[serde(default)]
    pub reversible: bool,
    #[serde(default)]
    pub no_parking: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<String>,
}

/// Edge between two named locations; by default the right side of `from`
/// meets the left side of `to`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub from: String,
    #[serde(default = "right")]
    pub from_side: Dir,
    pub to: String,
    #[serde(default = "left")]
    pub to_side: Dir,
}

fn right() -> Dir {
    Dir::Right
}

fn left() -> Dir {
    Dir::Left
}

impl LocationSpec {
    /// A reversible location without restrictions or services.
    pub fn new(name: &str) -> Self {
        LocationSpec {
            name: name.to_string(),
            reversible: true,
            no_parking: false,
            tasks: Vec::new(),
        }
    }
}

impl EdgeSpec {
    pub fn new(from: &str, to: &str) -> Self {
        EdgeSpec {
            from: from.to_string(),
            from_side: Dir::Right,
            to: to.to_string(),
            to_side: Dir::Left,
        }
    }
}

impl GraphSpec {
    pub fn build(&self) -> Result<TrackGraph, ModelError> {
        let locations = self
            .locations
            .iter()
            .map(|l| Location {
                name: l.name.clone(),
                track: l.name.clone(),
                reversible: l.reversible,
                no_parking: l.no_parking,
                task_kinds: l.tasks.iter().cloned().collect::<BTreeSet<_>>(),
            })
            .collect::<Vec<_>>();
        let find = |name: &str| {
            locations
                .iter()
                .position(|l| l.name == name)
                .map(|i| LocId(i as u32))
                .ok_or_else(|| ModelError::UnknownLocation {
                    context: "edge".into(),
                    name: name.to_string(),
                })
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            edges.push(Edge {
                a: find(&e.from)?,
                a_side: e.from_side,
                b: find(&e.to)?,
                b_side: e.to_side,
            });
        }
        Ok(TrackGraph::new(locations, edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub yard: YardSource,
    pub agents: Vec<AgentFile>,
    #[serde(default)]
    pub goals: Vec<GoalFile>,
    #[serde(default)]
    pub costs: CostsFile,
    #[serde(default)]
    pub mode: ModeFlags,
    #[serde(default)]
    pub horizon: Option<Time>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dwell: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentFile {
    pub id: String,
    #[serde(rename = "type")]
    pub agent_type: String,
    pub arrival: ArrivalFile,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrivalFile {
    pub location: String,
    pub time: Time,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Dir>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskFile {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Defaults to every location offering `kind`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locations: Option<Vec<String>>,
    pub duration: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalFile {
    pub location: String,
    pub time: Time,
    #[serde(rename = "type")]
    pub goal_type: String,
}

/// Unset fields take the mode defaults of [`CostModel::default_for`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostsFile {
    #[serde(rename = "move", default, skip_serializing_if = "Option::is_none")]
    pub move_cost: Option<Cost>,
    #[serde(rename = "wait", default, skip_serializing_if = "Option::is_none")]
    pub wait_cost: Option<Cost>,
    #[serde(rename = "reversal", default, skip_serializing_if = "Option::is_none")]
    pub reversal_cost: Option<Cost>,
}

impl YardSource {
    pub fn build(&self) -> Result<TrackGraph, ModelError> {
        match self {
            YardSource::Tracks {
                min_train_length_m,
                spec,
            } => Ok(discretize_yard(spec, *min_train_length_m)?),
            YardSource::Graph(g) => g.build(),
        }
    }
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance, ModelError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        Instance::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Instance, ModelError> {
        let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Instance::from_json(&text)
    }

    pub fn from_file(file: InstanceFile) -> Result<Instance, ModelError> {
        let graph = Arc::new(file.yard.build()?);
        let resolve = |context: &str, name: &str| {
            graph
                .lookup(name)
                .ok_or_else(|| ModelError::UnknownLocation {
                    context: context.to_string(),
                    name: name.to_string(),
                })
        };

        let mut agents = Vec::with_capacity(file.agents.len());
        for a in &file.agents {
            let context = format!("agent `{}`", a.id);
            let mut tasks = Vec::with_capacity(a.tasks.len());
            for t in &a.tasks {
                let locations = match (&t.locations, &t.kind) {
                    (Some(names), _) => names
                        .iter()
                        .map(|n| resolve(&context, n))
                        .collect::<Result<Vec<_>, _>>()?,
                    (None, Some(kind)) => graph
                        .ids()
                        .filter(|&l| graph.location(l).task_kinds.contains(kind))
                        .collect(),
                    (None, None) => {
                        return Err(ModelError::TaskWithoutLocations {
                            agent: a.id.clone(),
                            task: t.id.clone(),
                        })
                    }
                };
                tasks.push(ServiceTask {
                    id: t.id.clone(),
                    kind: t.kind.clone(),
                    locations,
                    duration: t.duration,
                });
            }
            agents.push(Agent {
                id: a.id.clone(),
                agent_type: a.agent_type.clone(),
                arrival: Arrival {
                    location: resolve(&context, &a.arrival.location)?,
                    time: a.arrival.time,
                    direction: a.arrival.direction,
                },
                tasks,
                goal: a.goal.as_deref().map(|g| resolve(&context, g)).transpose()?,
            });
        }

        let goals = file
            .goals
            .iter()
            .map(|g| {
                Ok(GoalVertex {
                    location: resolve("goal", &g.location)?,
                    time: g.time,
                    goal_type: g.goal_type.clone(),
                })
            })
            .collect::<Result<Vec<_>, ModelError>>()?;

        let defaults = CostModel::default_for(file.mode);
        let costs = CostModel {
            move_cost: file.costs.move_cost.unwrap_or(defaults.move_cost),
            wait_cost: file.costs.wait_cost.unwrap_or(defaults.wait_cost),
            reversal_cost: file.costs.reversal_cost.unwrap_or(defaults.reversal_cost),
        };

        Ok(Instance {
            yard: file.yard,
            graph,
            agents,
            goals,
            costs,
            mode: file.mode,
            horizon: file.horizon,
            max_dwell: file.max_dwell,
            seed: file.seed,
        })
    }

    pub fn to_file(&self) -> InstanceFile {
        let name = |l: LocId| self.graph.name(l).to_string();
        InstanceFile {
            yard: self.yard.clone(),
            agents: self
                .agents
                .iter()
                .map(|a| AgentFile {
                    id: a.id.clone(),
                    agent_type: a.agent_type.clone(),
                    arrival: ArrivalFile {
                        location: name(a.arrival.location),
                        time: a.arrival.time,
                        direction: a.arrival.direction,
                    },
                    tasks: a
                        .tasks
                        .iter()
                        .map(|t| TaskFile {
                            id: t.id.clone(),
                            kind: t.kind.clone(),
                            locations: Some(t.locations.iter().map(|&l| name(l)).collect()),
                            duration: t.duration,
                        })
                        .collect(),
                    goal: a.goal.map(name),
                })
                .collect(),
            goals: self
                .goals
                .iter()
                .map(|g| GoalFile {
                    location: name(g.location),
                    time: g.time,
                    goal_type: g.goal_type.clone(),
                })
                .collect(),
            costs: CostsFile {
                move_cost: Some(self.costs.move_cost),
                wait_cost: Some(self.costs.wait_cost),
                reversal_cost: Some(self.costs.reversal_cost),
            },
            mode: self.mode,
            horizon: self.horizon,
            max_dwell: self.max_dwell,
            seed: self.seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance serializes")
    }
}
