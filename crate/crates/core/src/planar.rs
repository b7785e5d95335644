//! Maximal planar blueprints with rotation systems, and their vertex truncations.
//!
//! A [`Triangulation`] stores, for each vertex, the cyclic order of its
//! neighbors in a spherical embedding. Faces are recovered by the walk
//! `(u -> v) => (v -> pred_v(u))`, where `pred_v` steps backwards in the
//! rotation of `v`. Vertex labels are `0..m` in the API and `1..=m` in the
//! text format.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarError {
    #[error("a triangulation needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} has invalid neighbor {neighbor}")]
    BadNeighbor { vertex: usize, neighbor: usize },
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    RepeatedNeighbor { vertex: usize, neighbor: usize },
    #[error("edge {0}-{1} is listed only at one endpoint")]
    Asymmetric(usize, usize),
    #[error("vertex {vertex} has degree {degree}, outside 3..={max}")]
    Degree { vertex: usize, degree: usize, max: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("rotation system has a face of length {0}")]
    NonTriangularFace(usize),
    #[error("expected {expected} faces, found {found}")]
    FaceCount { expected: usize, found: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A maximal planar graph on `m` vertices together with a rotation system
/// in which every face is a triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Triangulation {
    rotation: Vec<Vec<usize>>,
}

impl Triangulation {
    /// Validates a rotation system and wraps it.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, PlanarError> {
        let m = rotation.len();
        if m < 4 {
            return Err(PlanarError::TooFewVertices(m));
        }
        let mut edges = HashSet::new();
        for (v, around) in rotation.iter().enumerate() {
            let mut seen = HashSet::new();
            for &w in around {
                if w >= m || w == v {
                    return Err(PlanarError::BadNeighbor { vertex: v, neighbor: w });
                }
                if !seen.insert(w) {
                    return Err(PlanarError::RepeatedNeighbor { vertex: v, neighbor: w });
                }
                edges.insert((v.min(w), v.max(w)));
            }
            if around.len() < 3 || around.len() > m - 1 {
                return Err(PlanarError::Degree { vertex: v, degree: around.len(), max: m - 1 });
            }
        }
        for &(u, v) in &edges {
            if !rotation[u].contains(&v) || !rotation[v].contains(&u) {
                return Err(PlanarError::Asymmetric(u, v));
            }
        }
        if edges.len() != 3 * m - 6 {
            return Err(PlanarError::EdgeCount { expected: 3 * m - 6, found: edges.len() });
        }
        let tri = Triangulation { rotation };
        if !tri.is_connected() {
            return Err(PlanarError::Disconnected);
        }
        let faces = tri.faces();
        if let Some(face) = faces.iter().find(|f| f.len() != 3) {
            return Err(PlanarError::NonTriangularFace(face.len()));
        }
        if faces.len() != 2 * m - 4 {
            return Err(PlanarError::FaceCount { expected: 2 * m - 4, found: faces.len() });
        }
        Ok(tri)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Neighbor after `w` in the rotation of `v`.
    pub fn succ(&self, v: usize, w: usize) -> usize {
        let around = &self.rotation[v];
        let pos = around.iter().position(|&x| x == w).expect("not a neighbor");
        around[(pos + 1) % around.len()]
    }

    /// Neighbor before `w` in the rotation of `v`.
    pub fn pred(&self, v: usize, w: usize) -> usize {
        let around = &self.rotation[v];
        let pos = around.iter().position(|&x| x == w).expect("not a neighbor");
        around[(pos + around.len() - 1) % around.len()]
    }

    /// Face boundaries traced by the rotation system, each as a vertex cycle.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut used = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.vertex_count() {
            for &v in &self.rotation[u] {
                if used.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while used.insert((a, b)) {
                    face.push(a);
                    let c = self.pred(b, a);
                    (a, b) = (b, c);
                }
                faces.push(face);
            }
        }
        faces
    }
}

impl Graph for Triangulation {
    fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation[v].iter().copied()
    }
}

impl TryFrom<Vec<Vec<usize>>> for Triangulation {
    type Error = PlanarError;

    /// Builds from 1-based rotation lists, as used in serialized forms.
    fn try_from(lists: Vec<Vec<usize>>) -> Result<Self, PlanarError> {
        let rotation = lists
            .into_iter()
            .enumerate()
            .map(|(v, around)| {
                around
                    .into_iter()
                    .map(|w| w.checked_sub(1).ok_or(PlanarError::BadNeighbor { vertex: v, neighbor: w }))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        Triangulation::from_rotation(rotation)
    }
}

impl From<Triangulation> for Vec<Vec<usize>> {
    fn from(tri: Triangulation) -> Self {
        tri.rotation.into_iter().map(|around| around.into_iter().map(|w| w + 1).collect()).collect()
    }
}

/// One line per vertex, `i: j1 j2 ... jd`, labels starting at 1.
impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, around) in self.rotation.iter().enumerate() {
            write!(f, "{}:", v + 1)?;
            for w in around {
                write!(f, " {}", w + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Triangulation {
    type Err = PlanarError;

    /// Parses the rotation text format. Blank lines and `#` comments are ignored.
    fn from_str(text: &str) -> Result<Self, PlanarError> {
        let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |reason: String| PlanarError::Parse { line: line_no, reason };
            let (head, tail) = line.split_once(':').ok_or_else(|| parse_err("missing ':'".into()))?;
            let label: usize = head.trim().parse().map_err(|e| parse_err(format!("bad label: {e}")))?;
            let around = tail
                .split_whitespace()
                .map(|tok| tok.parse::<usize>().map_err(|e| parse_err(format!("bad neighbor {tok:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push((label, around));
        }
        rows.sort_by_key(|(label, _)| *label);
        for (expected, (label, _)) in rows.iter().enumerate() {
            if *label != expected + 1 {
                return Err(PlanarError::Parse {
                    line: 0,
                    reason: format!("vertex labels must be 1..={} exactly once", rows.len()),
                });
            }
        }
        Triangulation::try_from(rows.into_iter().map(|(_, around)| around).collect::<Vec<_>>())
    }
}

/// Rotation system of a set of consistently oriented triangles.
fn rotation_from_faces(m: usize, faces: &[[usize; 3]]) -> Vec<Vec<usize>> {
    let mut succ = vec![Vec::new(); m];
    for &[a, b, c] in faces {
        succ[a].push((b, c));
        succ[b].push((c, a));
        succ[c].push((a, b));
    }
    succ.into_iter()
        .map(|pairs| {
            let start = pairs.iter().map(|&(w, _)| w).min().expect("isolated vertex");
            let mut around = vec![start];
            let mut cur = start;
            loop {
                let next = pairs.iter().find(|&&(w, _)| w == cur).expect("open fan").1;
                if next == start {
                    break;
                }
                around.push(next);
                cur = next;
            }
            around
        })
        .collect()
}

/// Stacked triangulation: starts from an embedded `K4` and repeatedly
/// inserts a new vertex into a face chosen uniformly by the seeded RNG.
pub fn stacked_triangulation(m: usize, seed: u64) -> Result<Triangulation, PlanarError> {
    if m < 4 {
        return Err(PlanarError::TooFewVertices(m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces = vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
    for x in 4..m {
        let idx = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[idx];
        faces[idx] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    Triangulation::from_rotation(rotation_from_faces(m, &faces))
}

pub fn degree_profile(h: &Triangulation) -> Vec<usize> {
    (0..h.vertex_count()).map(|v| h.degree(v)).collect()
}

/// The truncation of a triangulation: a cubic graph whose vertices are the
/// directed edges `(i, j)` of the blueprint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterGraph {
    darts: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    twin: Vec<usize>,
    cycle_next: Vec<usize>,
    cycle_prev: Vec<usize>,
}

impl ClusterGraph {
    /// Directed edge `(i, j)` of the blueprint at local index `local`.
    pub fn dart(&self, local: usize) -> (usize, usize) {
        self.darts[local]
    }

    pub fn darts(&self) -> &[(usize, usize)] {
        &self.darts
    }

    /// Local index of the directed edge `(i, j)`, if it exists.
    pub fn local_index(&self, i: usize, j: usize) -> Option<usize> {
        let range = *self.offsets.get(i)?..*self.offsets.get(i + 1)?;
        let slot = self.darts[range.clone()].binary_search(&(i, j)).ok()?;
        Some(range.start + slot)
    }

    /// Local indices of the darts leaving blueprint vertex `i`.
    pub fn darts_from(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn twin(&self, local: usize) -> usize {
        self.twin[local]
    }

    pub fn cycle_next(&self, local: usize) -> usize {
        self.cycle_next[local]
    }

    pub fn cycle_prev(&self, local: usize) -> usize {
        self.cycle_prev[local]
    }
}

impl Graph for ClusterGraph {
    fn vertex_count(&self) -> usize {
        self.darts.len()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        [self.twin[v], self.cycle_next[v], self.cycle_prev[v]].into_iter()
    }
}

/// Cuts off every vertex of the blueprint. Shortened original edges join
/// `(i, j)` to `(j, i)`; truncation cycles join `(i, j)` to `(i, k)` for `k`
/// following `j` in the rotation of `i`.
pub fn truncate(h: &Triangulation) -> ClusterGraph {
    let m = h.vertex_count();
    let mut darts = Vec::with_capacity(6 * m - 12);
    let mut offsets = Vec::with_capacity(m + 1);
    for i in 0..m {
        offsets.push(darts.len());
        let mut out: Vec<usize> = h.rotation(i).to_vec();
        out.sort_unstable();
        darts.extend(out.into_iter().map(|j| (i, j)));
    }
    offsets.push(darts.len());
    let mut graph = ClusterGraph {
        darts,
        offsets,
        twin: Vec::new(),
        cycle_next: Vec::new(),
        cycle_prev: Vec::new(),
    };
    let index = |g: &ClusterGraph, i, j| g.local_index(i, j).expect("dart of a valid triangulation");
    graph.twin = graph.darts.iter().map(|&(i, j)| index(&graph, j, i)).collect();
    graph.cycle_next = graph.darts.iter().map(|&(i, j)| index(&graph, i, h.succ(i, j))).collect();
    graph.cycle_prev = graph.darts.iter().map(|&(i, j)| index(&graph, i, h.pred(i, j))).collect();
    graph
}
