//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    validate_instance, AgentFile, ArrivalFile, Connection, CostsFile, Dir, GoalFile, Instance,
    InstanceFile, LocId, ModeFlags, ServicePoint, TaskFile, Time, Track, YardSource, YardSpec,
    MAX_TASKS,
};
use crate::planner::plan_single;

pub const MIN_TRAIN_LENGTH_M: f64 = 70.0;
pub const SERVICE_KINDS: [&str; 2] = ["clean", "inspect"];
const MAX_ATTEMPTS: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub n_tracks: usize,
    pub n_agents: usize,
    pub n_types: usize,
    pub tasks_per_agent: usize,
    pub horizon: Time,
    /// Longest track, in minimum train lengths.
    pub max_units: u32,
    /// Longest service duration.
    pub max_duration: u32,
    /// When set, each goal time is the earliest time its agent alone can
    /// reach it with all tasks done, plus a random slack up to this value.
    #[serde(default)]
    pub goal_slack: Option<Time>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n_tracks: 3,
            n_agents: 2,
            n_types: 1,
            tasks_per_agent: 1,
            horizon: 10,
            max_units: 3,
            max_duration: 2,
            goal_slack: None,
        }
    }
}

impl GenParams {
    /// Parameters for instances within reach of the exhaustive oracle:
    /// at most 12 locations, 3 agents and a horizon of 10, drawn from `seed`.
    pub fn tiny(seed: u64) -> GenParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e_ed0f_7e57);
        let n_agents = rng.gen_range(1..=3);
        GenParams {
            n_tracks: rng.gen_range(2..=4),
            n_agents,
            n_types: rng.gen_range(1..=n_agents.min(2)),
            tasks_per_agent: rng.gen_range(0..=2),
            horizon: rng.gen_range(6..=10),
            max_units: 3,
            max_duration: 2,
            goal_slack: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("cannot satisfy type balance: {0} type(s) for {1} agent(s)")]
    TypeBalance(usize, usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no admissible instance after {0} attempts")]
    Exhausted(u32),
}

fn check(p: &GenParams) -> Result<(), GenError> {
    if p.n_types == 0 || p.n_types > p.n_agents {
        return Err(GenError::TypeBalance(p.n_types, p.n_agents));
    }
    let bad = |what: &str| Err(GenError::OutOfRange(what.to_string()));
    if !(1..=64).contains(&p.n_tracks) {
        return bad("n_tracks must be in 1..=64");
    }
    if p.n_agents > 32 {
        return bad("n_agents must be at most 32");
    }
    if p.tasks_per_agent > MAX_TASKS {
        return bad("tasks_per_agent must be at most 32");
    }
    if !(2..=1000).contains(&p.horizon) {
        return bad("horizon must be in 2..=1000");
    }
    if !(1..=10).contains(&p.max_units) {
        return bad("max_units must be in 1..=10");
    }
    if p.max_duration == 0 {
        return bad("max_duration must be positive");
    }
    let locations_lb = p.n_tracks;
    if p.n_agents > locations_lb * p.horizon as usize {
        return bad("more agents than arrival slots");
    }
    Ok(())
}

/// A deterministic pseudo-random instance that passes
/// [`validate_instance`]. Equal seeds and parameters give equal instances.
///
/// The yard is a tree of tracks. Agent `i` gets type `t{i % n_types}` and one
/// goal vertex of the same type; tasks ask for a service kind offered
/// somewhere in the yard. All mode flags are on.
pub fn generate_instance(seed: u64, params: &GenParams) -> Result<Instance, GenError> {
    check(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut file = draw(&mut rng, params);
        file.seed = Some(seed);
        let Ok(instance) = Instance::from_file(file) else {
            continue;
        };
        let instance = match params.goal_slack {
            Some(slack) => match retime_goals(instance, slack, &mut rng) {
                Some(i) => i,
                None => continue,
            },
            None => instance,
        };
        if validate_instance(&instance).is_admissible() {
            return Ok(instance);
        }
    }
    Err(GenError::Exhausted(MAX_ATTEMPTS))
}

/// Moves goal `i` to the earliest time agent `i` can reach it on its own,
/// plus up to `slack` steps. `None` if some goal is out of reach.
fn retime_goals(mut inst: Instance, slack: Time, rng: &mut ChaCha8Rng) -> Option<Instance> {
    let h = inst.horizon();
    let mut used: Vec<(LocId, Time)> = Vec::new();
    for i in 0..inst.agents.len() {
        let start = inst.agents[i].arrival.time;
        let earliest = (start..=h).find(|&t| {
            inst.goals[i].time = t;
            plan_single(&inst, i, Some(i), &[]).is_some()
        })?;
        let loc = inst.goals[i].location;
        let want = (earliest + rng.gen_range(0..=slack)).min(h);
        let t = (want..=h).chain(earliest..want).find(|&t| !used.contains(&(loc, t)))?;
        used.push((loc, t));
        inst.goals[i].time = t;
    }
    Some(inst)
}

fn draw(rng: &mut ChaCha8Rng, p: &GenParams) -> InstanceFile {
    let n = p.n_tracks;
    let mut units = Vec::with_capacity(n);
    let mut tracks = Vec::with_capacity(n);
    for i in 0..n {
        let u = rng.gen_range(1..=p.max_units);
        let slack: f64 = rng.gen_range(0.0..35.0);
        units.push(u);
        tracks.push(Track {
            id: format!("T{i}"),
            length_m: ((u as f64 * MIN_TRAIN_LENGTH_M - slack) * 10.0).round() / 10.0,
            reversible: rng.gen_bool(0.3),
            no_parking: false,
        });
    }

    // tree of tracks; each end takes at most two connections
    let mut end_use = vec![[0u8; 2]; n];
    let mut connections = Vec::new();
    for i in 1..n {
        let (parent, end) = loop {
            let parent = rng.gen_range(0..i);
            let end = Dir::BOTH[rng.gen_range(0..2)];
            if end_use[parent][end.index()] < 2 {
                break (parent, end);
            }
        };
        let my_end = Dir::BOTH[rng.gen_range(0..2)];
        end_use[parent][end.index()] += 1;
        end_use[i][my_end.index()] += 1;
        connections.push(Connection {
            from: format!("T{parent}"),
            from_end: end,
            to: format!("T{i}"),
            to_end: my_end,
        });
    }
    for (i, track) in tracks.iter_mut().enumerate() {
        if end_use[i].contains(&0) {
            track.reversible = true;
        }
    }

    let mut service_points = Vec::new();
    for track in &tracks {
        if rng.gen_bool(0.3) {
            let kind = SERVICE_KINDS[rng.gen_range(0..SERVICE_KINDS.len())];
            service_points.push(ServicePoint {
                track: track.id.clone(),
                kind: kind.to_string(),
            });
        }
    }
    if p.tasks_per_agent > 0 && service_points.is_empty() {
        let track = &tracks[rng.gen_range(0..n)];
        service_points.push(ServicePoint {
            track: track.id.clone(),
            kind: SERVICE_KINDS[rng.gen_range(0..SERVICE_KINDS.len())].to_string(),
        });
    }
    let mut kinds: Vec<String> = service_points.iter().map(|s| s.kind.clone()).collect();
    kinds.sort();
    kinds.dedup();

    let locations: Vec<String> = tracks
        .iter()
        .zip(&units)
        .flat_map(|(t, &u)| (0..u).map(move |k| format!("{}.{k}", t.id)))
        .collect();

    let h = p.horizon;
    let mut arrivals: Vec<(usize, Time)> = Vec::new();
    let mut goal_slots: Vec<(usize, Time)> = Vec::new();
    let mut agents = Vec::with_capacity(p.n_agents);
    let mut goals = Vec::with_capacity(p.n_agents);
    for i in 0..p.n_agents {
        let ty = format!("t{}", i % p.n_types);
        let arrival = loop {
            let slot = (rng.gen_range(0..locations.len()), rng.gen_range(0..=h / 4));
            if !arrivals.contains(&slot) {
                break slot;
            }
        };
        arrivals.push(arrival);
        let earliest = (arrival.1 + 1).max(h / 2).min(h);
        let goal = loop {
            let slot = (rng.gen_range(0..locations.len()), rng.gen_range(earliest..=h));
            if !goal_slots.contains(&slot) {
                break slot;
            }
        };
        goal_slots.push(goal);
        let tasks = (0..p.tasks_per_agent)
            .map(|k| TaskFile {
                id: format!("s{k}"),
                kind: Some(kinds.choose(rng).expect("service kinds exist").clone()),
                locations: None,
                duration: rng.gen_range(1..=p.max_duration),
            })
            .collect();
        agents.push(AgentFile {
            id: format!("a{i}"),
            agent_type: ty.clone(),
            arrival: ArrivalFile {
                location: locations[arrival.0].clone(),
                time: arrival.1,
                direction: Some(Dir::BOTH[rng.gen_range(0..2)]),
            },
            tasks,
            goal: None,
        });
        goals.push(GoalFile {
            location: locations[goal.0].clone(),
            time: goal.1,
            goal_type: ty,
        });
    }

    InstanceFile {
        yard: YardSource::Tracks {
            min_train_length_m: MIN_TRAIN_LENGTH_M,
            spec: YardSpec {
                tracks,
                connections,
                service_points,
            },
        },
        agents,
        goals,
        costs: CostsFile {
            move_cost: Some(1),
            wait_cost: Some(0),
            reversal_cost: Some(1),
        },
        mode: ModeFlags::FULL,
        horizon: Some(h),
        max_dwell: None,
        seed: None,
    }
}
