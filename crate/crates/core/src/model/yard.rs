//! Yard descriptions and the discretized location graph.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Side of a location, or heading of a train standing on it.
///
/// A train heading `Right` leaves through the right side of its location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Left,
    Right,
}

impl Dir {
    pub const BOTH: [Dir; 2] = [Dir::Left, Dir::Right];

    pub fn opposite(self) -> Dir {
        match self {
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Dir::Left => 0,
            Dir::Right => 1,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Left => "left",
            Dir::Right => "right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocId(pub u32);

impl LocId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("duplicate track id `{0}`")]
    DuplicateTrack(String),
    #[error("unknown track `{0}`")]
    UnknownTrack(String),
    #[error("track `{0}` has non-positive length")]
    NonPositiveLength(String),
    #[error("minimum train length must be positive, got {0}")]
    NonPositiveTrainLength(f64),
    #[error("duplicate location name `{0}`")]
    DuplicateLocation(String),
    #[error("unknown location `{0}`")]
    UnknownLocation(String),
    #[error("self-loop at location `{0}`")]
    SelfLoop(String),
    #[error("yard graph has no locations")]
    Empty,
    #[error("yard graph is disconnected: `{0}` is unreachable from `{1}`")]
    Disconnected(String, String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Track {
    pub id: String,
    pub length_m: f64,
    #[serde(default)]
    pub reversible: bool,
    #[serde(default)]
    pub no_parking: bool,
}

/// Joins one end of a track to one end of another.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Connection {
    pub from: String,
    pub from_end: Dir,
    pub to: String,
    pub to_end: Dir,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServicePoint {
    pub track: String,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct YardSpec {
    pub tracks: Vec<Track>,
    #[serde(default)]
    pub connections: Vec<Connection>,
    #[serde(default)]
    pub service_points: Vec<ServicePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub name: String,
    /// Track this location was cut from; equal to `name` for hand-built graphs.
    pub track: String,
    pub reversible: bool,
    pub no_parking: bool,
    pub task_kinds: BTreeSet<String>,
}

/// Undirected edge that remembers which side of each endpoint it attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: LocId,
    pub a_side: Dir,
    pub b: LocId,
    pub b_side: Dir,
}

/// Connected, undirected location graph.
#[derive(Debug, Clone)]
pub struct TrackGraph {
    locations: Vec<Location>,
    edges: Vec<Edge>,
    /// `ports[v][side]` lists `(neighbor, neighbor side)` pairs attached to that side of `v`.
    ports: Vec<[Vec<(LocId, Dir)>; 2]>,
    adjacent: Vec<Vec<LocId>>,
    by_name: HashMap<String, LocId>,
}

impl TrackGraph {
    pub fn new(locations: Vec<Location>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if locations.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut by_name = HashMap::with_capacity(locations.len());
        for (i, loc) in locations.iter().enumerate() {
            if by_name.insert(loc.name.clone(), LocId(i as u32)).is_some() {
                return Err(GraphError::DuplicateLocation(loc.name.clone()));
            }
        }
        let n = locations.len();
        let mut ports: Vec<[Vec<(LocId, Dir)>; 2]> = vec![[Vec::new(), Vec::new()]; n];
        let mut adjacent: Vec<Vec<LocId>> = vec![Vec::new(); n];
        for e in &edges {
            for id in [e.a, e.b] {
                if id.index() >= n {
                    return Err(GraphError::UnknownLocation(format!("#{}", id.0)));
                }
            }
            if e.a == e.b {
                return Err(GraphError::SelfLoop(locations[e.a.index()].name.clone()));
            }
            ports[e.a.index()][e.a_side.index()].push((e.b, e.b_side));
            ports[e.b.index()][e.b_side.index()].push((e.a, e.a_side));
            if !adjacent[e.a.index()].contains(&e.b) {
                adjacent[e.a.index()].push(e.b);
                adjacent[e.b.index()].push(e.a);
            }
        }
        let graph = TrackGraph {
            locations,
            edges,
            ports,
            adjacent,
            by_name,
        };
        graph.check_connected()?;
        Ok(graph)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([LocId(0)]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacent[v.index()] {
                if !seen[u.index()] {
                    seen[u.index()] = true;
                    queue.push_back(u);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            None => Ok(()),
            Some(i) => Err(GraphError::Disconnected(
                self.locations[i].name.clone(),
                self.locations[0].name.clone(),
            )),
        }
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    pub fn location(&self, id: LocId) -> &Location {
        &self.locations[id.index()]
    }

    pub fn locations(&self) -> &[Location] {
        &self.locations
    }

    pub fn ids(&self) -> impl Iterator<Item = LocId> {
        (0..self.locations.len() as u32).map(LocId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn lookup(&self, name: &str) -> Option<LocId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: LocId) -> &str {
        &self.locations[id.index()].name
    }

    /// Neighbors reachable by leaving `v` through `side`, with the side of the
    /// neighbor the move enters through.
    pub fn ports(&self, v: LocId, side: Dir) -> &[(LocId, Dir)] {
        &self.ports[v.index()][side.index()]
    }

    /// Distinct undirected neighbors of `v`.
    pub fn adjacent(&self, v: LocId) -> &[LocId] {
        &self.adjacent[v.index()]
    }

    pub fn degree(&self, v: LocId) -> usize {
        self.adjacent[v.index()].len()
    }

    /// Plain-text adjacency dump, one line per location.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for id in self.ids() {
            let loc = self.location(id);
            let mut flags = Vec::new();
            if loc.reversible {
                flags.push("rev".to_string());
            }
            if loc.no_parking {
                flags.push("no_parking".to_string());
            }
            for k in &loc.task_kinds {
                flags.push(format!("task:{k}"));
            }
            let side = |d: Dir| {
                self.ports(id, d)
                    .iter()
                    .map(|(u, s)| format!("{}.{}", self.name(*u), s))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "{} [{}] left: {} | right: {}\n",
                loc.name,
                flags.join(" "),
                side(Dir::Left),
                side(Dir::Right)
            ));
        }
        out
    }
}
