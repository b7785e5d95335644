//! Minimal adjacency interface shared by the cube, cluster, and model graphs.

use std::collections::VecDeque;
use std::ops::Range;

use crate::cube::CubeVertex;

/// An undirected simple graph on vertices `0..vertex_count()`.
pub trait Graph {
    fn vertex_count(&self) -> usize;

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_;

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Each edge once, as `(u, v)` with `u < v`, ordered by `u`.
    fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            let mut up: Vec<usize> = self.neighbors(u).filter(|&v| v > u).collect();
            up.sort_unstable();
            up.into_iter().map(move |v| (u, v))
        })
    }

    fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// `Some(d)` when every vertex has degree `d`.
    fn regular_degree(&self) -> Option<usize> {
        let d = if self.vertex_count() == 0 { 0 } else { self.degree(0) };
        (0..self.vertex_count()).all(|v| self.degree(v) == d).then_some(d)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }
}

/// A graph whose vertices are grouped into one cluster per vertex of an
/// m-cube, each cluster occupying a contiguous index range.
pub trait ClusteredGraph: Graph {
    /// Dimension `m` of the quotient cube.
    fn cube_dim(&self) -> u32;

    /// Number of vertices in each cluster.
    fn fiber_size(&self) -> usize;

    fn cluster_count(&self) -> usize {
        1 << self.cube_dim()
    }

    /// Cluster of an in-range vertex.
    fn cluster_index(&self, v: usize) -> CubeVertex {
        CubeVertex((v / self.fiber_size()) as u64)
    }

    fn cluster_range(&self, cluster: CubeVertex) -> Range<usize> {
        let start = cluster.index() * self.fiber_size();
        start..start + self.fiber_size()
    }
}
