use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SearchState;
use crate::model::{Cost, Dir, Instance, LocId, Time};

/// One agent's trajectory through the time-expanded graph, one state per
/// time step from entering the yard to leaving it (or parking for good in
/// classic mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub agent: usize,
    /// Index of the goal vertex served; `None` for fixed-goal agents.
    pub goal: Option<usize>,
    pub states: Vec<SearchState>,
    pub cost: Cost,
}

impl Path {
    pub fn start_time(&self) -> Time {
        self.states.first().map_or(0, |s| s.t)
    }

    pub fn end_time(&self) -> Time {
        self.states.last().map_or(0, |s| s.t)
    }

    /// Where the agent is at time `t`. With `parks` set the agent stays at
    /// its final location forever after the path ends.
    pub fn position(&self, t: Time, parks: bool) -> Option<(LocId, Option<Dir>)> {
        let first = self.states.first()?;
        if t < first.t {
            return None;
        }
        match self.states.get((t - first.t) as usize) {
            Some(s) => Some((s.loc, s.dir)),
            None if parks => self.states.last().map(|s| (s.loc, s.dir)),
            None => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Solution {
    /// One path per agent, ordered by agent index.
    pub paths: Vec<Path>,
}

impl Solution {
    pub fn cost(&self) -> Cost {
        self.paths.iter().map(|p| p.cost).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateFile {
    pub loc: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<Dir>,
    pub t: Time,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFile {
    pub agent: String,
    #[serde(default)]
    pub goal: Option<usize>,
    pub cost: Cost,
    pub states: Vec<StateFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub paths: Vec<PathFile>,
}

#[derive(Debug, Error)]
pub enum SolutionError {
    #[error("malformed solution: {0}")]
    Json(#[from] serde_json::Error),
    #[error("solution names unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("solution names unknown location `{0}`")]
    UnknownLocation(String),
    #[error("document carries no solution")]
    Missing,
}

impl Solution {
    pub fn to_file(&self, instance: &Instance) -> SolutionFile {
        SolutionFile {
            paths: self
                .paths
                .iter()
                .map(|p| PathFile {
                    agent: instance.agents[p.agent].id.clone(),
                    goal: p.goal,
                    cost: p.cost,
                    states: p
                        .states
                        .iter()
                        .map(|s| StateFile {
                            loc: instance.graph.name(s.loc).to_string(),
                            dir: s.dir,
                            t: s.t,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Resolves names against `instance`. Only location, heading and time of
    /// the loaded states are meaningful; service progress is left at zero and
    /// recomputed by validation.
    pub fn from_file(instance: &Instance, file: &SolutionFile) -> Result<Solution, SolutionError> {
        let mut paths = Vec::with_capacity(file.paths.len());
        for p in &file.paths {
            let agent = instance
                .agent_index(&p.agent)
                .ok_or_else(|| SolutionError::UnknownAgent(p.agent.clone()))?;
            let states = p
                .states
                .iter()
                .map(|s| {
                    let loc = instance
                        .graph
                        .lookup(&s.loc)
                        .ok_or_else(|| SolutionError::UnknownLocation(s.loc.clone()))?;
                    Ok(SearchState {
                        loc,
                        dir: s.dir,
                        t: s.t,
                        done: 0,
                        run: 0,
                    })
                })
                .collect::<Result<Vec<_>, SolutionError>>()?;
            paths.push(Path {
                agent,
                goal: p.goal,
                states,
                cost: p.cost,
            });
        }
        paths.sort_by_key(|p| p.agent);
        Ok(Solution { paths })
    }

    /// Accepts either a bare solution document or a solver outcome that
    /// embeds one under `solution`.
    pub fn from_json(instance: &Instance, text: &str) -> Result<Solution, SolutionError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let body = if value.get("paths").is_some() {
            value
        } else {
            match value.get("solution") {
                Some(s) if !s.is_null() => s.clone(),
                _ => return Err(SolutionError::Missing),
            }
        };
        let file: SolutionFile = serde_json::from_value(body)?;
        Solution::from_file(instance, &file)
    }
}
