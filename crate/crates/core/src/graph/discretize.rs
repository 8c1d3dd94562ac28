use std::collections::{BTreeSet, HashMap};

use crate::model::{Dir, Edge, GraphError, LocId, Location, TrackGraph, YardSpec};

/// Number of locations a track is cut into: its length over the shortest
/// train length, rounded up, and never less than one.
pub fn track_units(length_m: f64, min_train_length_m: f64) -> u32 {
    ((length_m / min_train_length_m).ceil() as u32).max(1)
}

/// Cuts every track into a left-to-right chain of locations and joins the
/// end locations of connected tracks.
///
/// Locations are named `<track>.<index>`. Track flags and the task kinds of
/// its service points are copied onto every location of the track.
pub fn discretize_yard(spec: &YardSpec, min_train_length_m: f64) -> Result<TrackGraph, GraphError> {
    if min_train_length_m <= 0.0 || !min_train_length_m.is_finite() {
        return Err(GraphError::NonPositiveTrainLength(min_train_length_m));
    }
    let mut kinds: HashMap<&str, BTreeSet<String>> = HashMap::new();
    for sp in &spec.service_points {
        if !spec.tracks.iter().any(|t| t.id == sp.track) {
            return Err(GraphError::UnknownTrack(sp.track.clone()));
        }
        kinds.entry(sp.track.as_str()).or_default().insert(sp.kind.clone());
    }

    let mut locations = Vec::new();
    let mut edges = Vec::new();
    // (first, last) location of each track
    let mut ends: HashMap<&str, (LocId, LocId)> = HashMap::new();
    for track in &spec.tracks {
        if track.length_m.is_nan() || track.length_m <= 0.0 {
            return Err(GraphError::NonPositiveLength(track.id.clone()));
        }
        let units = track_units(track.length_m, min_train_length_m);
        let first = LocId(locations.len() as u32);
        for i in 0..units {
            let id = LocId(locations.len() as u32);
            locations.push(Location {
                name: format!("{}.{}", track.id, i),
                track: track.id.clone(),
                reversible: track.reversible,
                no_parking: track.no_parking,
                task_kinds: kinds.get(track.id.as_str()).cloned().unwrap_or_default(),
            });
            if i > 0 {
                edges.push(Edge {
                    a: LocId(id.0 - 1),
                    a_side: Dir::Right,
                    b: id,
                    b_side: Dir::Left,
                });
            }
        }
        let last = LocId(locations.len() as u32 - 1);
        if ends.insert(track.id.as_str(), (first, last)).is_some() {
            return Err(GraphError::DuplicateTrack(track.id.clone()));
        }
    }

    let end_of = |track: &str, end: Dir| -> Result<LocId, GraphError> {
        let (first, last) = ends
            .get(track)
            .ok_or_else(|| GraphError::UnknownTrack(track.to_string()))?;
        Ok(match end {
            Dir::Left => *first,
            Dir::Right => *last,
        })
    };
    for c in &spec.connections {
        edges.push(Edge {
            a: end_of(&c.from, c.from_end)?,
            a_side: c.from_end,
            b: end_of(&c.to, c.to_end)?,
            b_side: c.to_end,
        });
    }
    TrackGraph::new(locations, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Connection, ServicePoint, Track};

    fn track(id: &str, len: f64) -> Track {
        Track {
            id: id.into(),
            length_m: len,
            reversible: true,
            no_parking: false,
        }
    }

    #[test]
    fn units_round_up() {
        assert_eq!(track_units(300.0, 70.0), 5);
        assert_eq!(track_units(70.0, 70.0), 1);
        assert_eq!(track_units(40.0, 70.0), 1);
        assert_eq!(track_units(140.0, 70.0), 2);
    }

    #[test]
    fn single_track_becomes_chain() {
        let spec = YardSpec {
            tracks: vec![track("T", 300.0)],
            ..Default::default()
        };
        let g = discretize_yard(&spec, 70.0).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.edges().len(), 4);
        assert_eq!(g.name(LocId(0)), "T.0");
        assert_eq!(g.ports(LocId(0), Dir::Right), &[(LocId(1), Dir::Left)]);
        assert!(g.ports(LocId(0), Dir::Left).is_empty());
    }

    #[test]
    fn connections_join_only_track_ends() {
        let spec = YardSpec {
            tracks: vec![track("A", 210.0), track("B", 140.0)],
            connections: vec![Connection {
                from: "A".into(),
                from_end: Dir::Right,
                to: "B".into(),
                to_end: Dir::Right,
            }],
            service_points: vec![ServicePoint {
                track: "B".into(),
                kind: "clean".into(),
            }],
        };
        let g = discretize_yard(&spec, 70.0).unwrap();
        let a2 = g.lookup("A.2").unwrap();
        let b1 = g.lookup("B.1").unwrap();
        assert_eq!(g.ports(a2, Dir::Right), &[(b1, Dir::Right)]);
        assert_eq!(g.degree(g.lookup("A.1").unwrap()), 2);
        assert!(g.location(b1).task_kinds.contains("clean"));
        assert!(g.location(g.lookup("B.0").unwrap()).task_kinds.contains("clean"));
        assert!(g.location(a2).task_kinds.is_empty());
    }

    #[test]
    fn disconnected_yard_is_rejected() {
        let spec = YardSpec {
            tracks: vec![track("A", 70.0), track("B", 70.0)],
            ..Default::default()
        };
        assert!(matches!(
            discretize_yard(&spec, 70.0),
            Err(GraphError::Disconnected(..))
        ));
    }

    #[test]
    fn bad_inputs() {
        let spec = YardSpec {
            tracks: vec![track("A", 70.0)],
            ..Default::default()
        };
        assert!(matches!(
            discretize_yard(&spec, 0.0),
            Err(GraphError::NonPositiveTrainLength(_))
        ));
        let dup = YardSpec {
            tracks: vec![track("A", 70.0), track("A", 70.0)],
            ..Default::default()
        };
        assert!(matches!(
            discretize_yard(&dup, 70.0),
            Err(GraphError::DuplicateTrack(_))
        ));
        let zero = YardSpec {
            tracks: vec![track("A", 0.0)],
            ..Default::default()
        };
        assert!(matches!(
            discretize_yard(&zero, 70.0),
            Err(GraphError::NonPositiveLength(_))
        ));
    }
}
