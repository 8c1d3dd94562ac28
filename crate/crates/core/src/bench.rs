//! Ladder-level benchmark runs and their records.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{relax_instance, Cost, Instance, ModelError};
use crate::solver::{solve, SolveConfig, SolveError};

/// CSV header of [`BenchRecord`], in column order.
pub const BENCH_COLUMNS: [&str; 12] = [
    "instance_id",
    "matching",
    "directions",
    "services",
    "timed",
    "level",
    "status",
    "cost",
    "lower_bound",
    "nodes_expanded",
    "runtime_ms",
    "seed",
];

/// One solver run of one instance at one ladder level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub matching: bool,
    pub directions: bool,
    pub services: bool,
    pub timed: bool,
    pub level: u8,
    pub status: String,
    pub cost: Option<Cost>,
    pub lower_bound: Option<Cost>,
    pub nodes_expanded: u64,
    pub runtime_ms: u64,
    /// Generator seed of the instance, or the run seed when unknown.
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("instance `{id}`: {source}")]
    Model {
        id: String,
        #[source]
        source: ModelError,
    },
    #[error("instance `{id}`: {source}")]
    Solve {
        id: String,
        #[source]
        source: SolveError,
    },
}

/// Relaxes `instance` to `level` and solves it.
pub fn run_one(
    id: &str,
    instance: &Instance,
    level: u8,
    config: &SolveConfig,
    seed: u64,
) -> Result<BenchRecord, BenchError> {
    let relaxed = relax_instance(instance, level).map_err(|source| BenchError::Model {
        id: id.to_string(),
        source,
    })?;
    let out = solve(&relaxed, config).map_err(|source| BenchError::Solve {
        id: id.to_string(),
        source,
    })?;
    let mode = relaxed.mode;
    Ok(BenchRecord {
        instance_id: id.to_string(),
        matching: mode.matching,
        directions: mode.directions,
        services: mode.services,
        timed: mode.timed,
        level,
        status: out.status.to_string(),
        cost: out.cost,
        lower_bound: out.lower_bound,
        nodes_expanded: out.nodes_expanded,
        runtime_ms: out.runtime_ms,
        seed: instance.seed.unwrap_or(seed),
    })
}

/// Every instance at every level, run concurrently. Records come back
/// sorted by instance id, then level.
pub fn run_matrix(
    instances: &[(String, Instance)],
    levels: &[u8],
    config: &SolveConfig,
    seed: u64,
) -> Result<Vec<BenchRecord>, BenchError> {
    let jobs: Vec<(&str, &Instance, u8)> = instances
        .iter()
        .flat_map(|(id, inst)| levels.iter().map(move |&l| (id.as_str(), inst, l)))
        .collect();
    let mut records = jobs
        .into_par_iter()
        .map(|(id, inst, level)| run_one(id, inst, level, config, seed))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| (&a.instance_id, a.level).cmp(&(&b.instance_id, b.level)));
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_instance, GenParams};
    use crate::model::LADDER_LEVELS;

    #[test]
    fn matrix_is_complete_and_sorted() {
        let instances: Vec<_> = (0..3)
            .map(|s| (format!("g{s}"), generate_instance(s, &GenParams::tiny(s)).unwrap()))
            .collect();
        let recs = run_matrix(&instances, &LADDER_LEVELS, &SolveConfig::default(), 9).unwrap();
        assert_eq!(recs.len(), 12);
        let keys: Vec<_> = recs.iter().map(|r| (r.instance_id.clone(), r.level)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(recs.iter().all(|r| r.seed < 3));
    }
}
