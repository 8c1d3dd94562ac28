use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::yard::{Dir, LocId, TrackGraph, YardSpec};
use super::{Cost, GraphSpec, Time};

/// Where the location graph came from; kept so instances round-trip through files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum YardSource {
    Tracks {
        min_train_length_m: f64,
        #[serde(flatten)]
        spec: YardSpec,
    },
    Graph(GraphSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceTask {
    pub id: String,
    pub kind: Option<String>,
    /// Locations where the task can be carried out. Never empty.
    pub locations: Vec<LocId>,
    /// Consecutive time steps the agent has to occupy one of `locations`.
    pub duration: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrival {
    pub location: LocId,
    pub time: Time,
    /// Heading on arrival. `None` lets the planner pick either heading.
    pub direction: Option<Dir>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    pub id: String,
    pub agent_type: String,
    pub arrival: Arrival,
    pub tasks: Vec<ServiceTask>,
    /// Fixed goal location; only used when matching is off.
    pub goal: Option<LocId>,
}

/// A timed departure slot that any agent of `goal_type` may fill.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalVertex {
    pub location: LocId,
    pub time: Time,
    pub goal_type: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    #[serde(rename = "move")]
    pub move_cost: Cost,
    #[serde(rename = "wait")]
    pub wait_cost: Cost,
    #[serde(rename = "reversal")]
    pub reversal_cost: Cost,
}

impl CostModel {
    /// Unit move cost, zero reversal cost, and a wait cost of 1 in classic
    /// mode or 0 when matching (elapsed time is then fixed by the goal vertices).
    pub fn default_for(mode: ModeFlags) -> Self {
        CostModel {
            move_cost: 1,
            wait_cost: if mode.matching { 0 } else { 1 },
            reversal_cost: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ModeFlags {
    #[serde(default)]
    pub matching: bool,
    #[serde(default)]
    pub directions: bool,
    #[serde(default)]
    pub services: bool,
    #[serde(default)]
    pub timed: bool,
}

impl ModeFlags {
    pub const CLASSIC: ModeFlags = ModeFlags {
        matching: false,
        directions: false,
        services: false,
        timed: false,
    };
    pub const FULL: ModeFlags = ModeFlags {
        matching: true,
        directions: true,
        services: true,
        timed: true,
    };

    /// Parses a comma separated flag list such as `matching,timed`.
    /// `classic` and `full` are accepted as shorthands.
    pub fn parse_list(s: &str) -> Result<ModeFlags, String> {
        let mut mode = ModeFlags::CLASSIC;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "classic" => {}
                "full" => mode = ModeFlags::FULL,
                "matching" => mode.matching = true,
                "directions" => mode.directions = true,
                "services" => mode.services = true,
                "timed" => mode.timed = true,
                other => return Err(format!("unknown mode flag `{other}`")),
            }
        }
        Ok(mode)
    }
}

/// A complete problem instance. Immutable once built; the graph is shared.
#[derive(Debug, Clone)]
pub struct Instance {
    pub yard: YardSource,
    pub graph: Arc<TrackGraph>,
    pub agents: Vec<Agent>,
    pub goals: Vec<GoalVertex>,
    pub costs: CostModel,
    pub mode: ModeFlags,
    /// Explicit horizon; see [`Instance::horizon`] for the default.
    pub horizon: Option<Time>,
    /// Longest run of consecutive stays allowed at no-parking locations.
    pub max_dwell: Option<u32>,
    /// Generator seed, if the instance was generated. Informational only.
    pub seed: Option<u64>,
}

impl Instance {
    /// Last time step any agent may occupy the yard.
    ///
    /// Defaults to the latest goal time when matching, and to
    /// `|L| * |A|` for classic fixed-goal instances.
    pub fn horizon(&self) -> Time {
        if let Some(h) = self.horizon {
            return h;
        }
        if self.mode.matching {
            self.max_goal_time()
        } else {
            let arrivals = self.agents.iter().map(|a| a.arrival.time).max().unwrap_or(0);
            ((self.graph.len() * self.agents.len()) as Time).max(arrivals)
        }
    }

    pub fn max_goal_time(&self) -> Time {
        self.goals.iter().map(|g| g.time).max().unwrap_or(0)
    }

    /// Agent and goal counts per type.
    pub fn type_counts(&self) -> BTreeMap<&str, (usize, usize)> {
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for a in &self.agents {
            counts.entry(a.agent_type.as_str()).or_default().0 += 1;
        }
        for g in &self.goals {
            counts.entry(g.goal_type.as_str()).or_default().1 += 1;
        }
        counts
    }

    /// Service tasks that are in force for `agent` under the current mode.
    pub fn active_tasks(&self, agent: usize) -> &[ServiceTask] {
        if self.mode.services {
            &self.agents[agent].tasks
        } else {
            &[]
        }
    }

    pub fn agent_index(&self, id: &str) -> Option<usize> {
        self.agents.iter().position(|a| a.id == id)
    }
}
