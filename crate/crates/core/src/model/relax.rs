//! Relaxation ladder: progressively looser variants of a full instance.

use super::instance::{Instance, ModeFlags};
use super::ModelError;

/// Type name shared by all agents and goals at ladder level 0.
pub const RELAXED_TYPE: &str = "any";

pub const LADDER_LEVELS: [u8; 4] = [0, 1, 2, 3];

/// Maps an instance onto a ladder level.
///
/// * level 3: the instance itself.
/// * level 2: service tasks erased.
/// * level 1: additionally headings erased (no direction split).
/// * level 0: additionally a single agent type, arrivals at time 0, goals at
///   the horizon, and untimed windows (enter no earlier than the arrival,
///   leave no later than the goal time).
///
/// Each level only drops restrictions of the one above it, so a feasible
/// plan at a higher level is feasible at every lower level.
pub fn relax_instance(instance: &Instance, level: u8) -> Result<Instance, ModelError> {
    if level > 3 {
        return Err(ModelError::InvalidLevel(level));
    }
    if level == 3 {
        return Ok(instance.clone());
    }
    if !instance.mode.matching {
        return Err(ModelError::LadderNeedsMatching);
    }
    let horizon = instance.horizon();
    let mut out = instance.clone();
    out.horizon = Some(horizon);
    out.mode.services = false;
    for a in &mut out.agents {
        a.tasks.clear();
    }
    if level <= 1 {
        out.mode.directions = false;
        for a in &mut out.agents {
            a.arrival.direction = None;
        }
    }
    if level == 0 {
        out.mode = ModeFlags {
            matching: true,
            directions: false,
            services: false,
            timed: false,
        };
        for a in &mut out.agents {
            a.agent_type = RELAXED_TYPE.to_string();
            a.arrival.time = 0;
        }
        for g in &mut out.goals {
            g.goal_type = RELAXED_TYPE.to_string();
            g.time = horizon;
        }
    }
    Ok(out)
}
