//! The model graph `C''_m` and its Cartesian products with small cubes.
//!
//! Vertices are numbered canonically by `(cube vertex, i, j)`: cluster `v`
//! occupies indices `v * (6m - 12) ..`, and inside a cluster the directed
//! blueprint edges `(i, j)` appear in lexicographic order. Adjacency is
//! implicit, so memory does not grow with `2^m`.

use thiserror::Error;

use crate::cube::CubeVertex;
use crate::graph::{ClusteredGraph, Graph};
use crate::planar::{truncate, ClusterGraph, Triangulation};

/// Largest cube dimension accepted for the model graph.
pub const MAX_MODEL_DIM: u32 = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("m = {0} is outside 4..={MAX_MODEL_DIM}")]
    Dimension(u32),
    #[error("blueprint has {found} vertices but the cube has {m} directions")]
    LabelMismatch { m: u32, found: usize },
    #[error("vertex {vertex} is not in a graph with {count} vertices")]
    UnknownVertex { vertex: usize, count: usize },
    #[error("product exponent {0} is too large")]
    ProductDimension(u32),
}

/// Graph of the doubly truncated neighborly cubical polytope model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedCubeGraph {
    m: u32,
    blueprint: Triangulation,
    cluster: ClusterGraph,
    seed: Option<u64>,
}

/// One copy of `truncate(H)` per cube vertex; for each cube edge in
/// direction `i`, the darts `(i, j)` of the two clusters are matched.
pub fn build_ncc_graph(m: u32, blueprint: &Triangulation) -> Result<TruncatedCubeGraph, ConstructError> {
    if !(4..=MAX_MODEL_DIM).contains(&m) {
        return Err(ConstructError::Dimension(m));
    }
    if blueprint.vertex_count() != m as usize {
        return Err(ConstructError::LabelMismatch { m, found: blueprint.vertex_count() });
    }
    Ok(TruncatedCubeGraph {
        m,
        blueprint: blueprint.clone(),
        cluster: truncate(blueprint),
        seed: None,
    })
}

impl TruncatedCubeGraph {
    /// Records the seed the blueprint was generated from, for exports.
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn blueprint(&self) -> &Triangulation {
        &self.blueprint
    }

    pub fn cluster(&self) -> &ClusterGraph {
        &self.cluster
    }

    /// Vertex index of `(v, (i, j))`.
    pub fn vertex(&self, v: CubeVertex, i: usize, j: usize) -> Option<usize> {
        if v.0 >> self.m != 0 {
            return None;
        }
        Some(v.index() * self.fiber_size() + self.cluster.local_index(i, j)?)
    }

    /// Inverse of [`TruncatedCubeGraph::vertex`].
    pub fn label(&self, vertex: usize) -> Result<(CubeVertex, (usize, usize)), ConstructError> {
        let cluster = self.cluster_of(vertex)?;
        Ok((cluster, self.cluster.dart(vertex % self.fiber_size())))
    }

    pub fn cluster_of(&self, vertex: usize) -> Result<CubeVertex, ConstructError> {
        if vertex >= self.vertex_count() {
            return Err(ConstructError::UnknownVertex { vertex, count: self.vertex_count() });
        }
        Ok(self.cluster_index(vertex))
    }

    /// Cube direction of the unique inter-cluster edge at `vertex`.
    pub fn direction(&self, vertex: usize) -> usize {
        self.cluster.dart(vertex % self.fiber_size()).0
    }

    /// Neighbor across the inter-cluster edge.
    pub fn inter_neighbor(&self, vertex: usize) -> usize {
        let f = self.fiber_size();
        let local = vertex % f;
        let dir = self.cluster.dart(local).0;
        ((vertex / f) ^ (1 << dir)) * f + local
    }

    pub fn intra_edge_count(&self) -> usize {
        self.cluster.edge_count() << self.m
    }

    pub fn inter_edge_count(&self) -> usize {
        self.fiber_size() << (self.m - 1)
    }

    /// Inter-cluster edges across each cube edge in direction `i`.
    pub fn inter_edges_per_cube_edge(&self, i: usize) -> usize {
        self.blueprint.degree(i)
    }
}

impl Graph for TruncatedCubeGraph {
    fn vertex_count(&self) -> usize {
        self.fiber_size() << self.m
    }

    fn degree(&self, _v: usize) -> usize {
        4
    }

    fn edge_count(&self) -> usize {
        self.vertex_count() * 2
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let f = self.fiber_size();
        let base = v - v % f;
        let local = v % f;
        [
            base + self.cluster.twin(local),
            base + self.cluster.cycle_next(local),
            base + self.cluster.cycle_prev(local),
            self.inter_neighbor(v),
        ]
        .into_iter()
    }
}

impl ClusteredGraph for TruncatedCubeGraph {
    fn cube_dim(&self) -> u32 {
        self.m
    }

    fn fiber_size(&self) -> usize {
        self.cluster.vertex_count()
    }
}

/// `C''_m x C_k`. Vertex `(g, w)` has index `g * 2^k + w`, so clusters stay
/// contiguous with fiber size `(6m - 12) * 2^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    base: TruncatedCubeGraph,
    k: u32,
}

pub fn cartesian_product_with_cube(g: &TruncatedCubeGraph, k: u32) -> Result<ProductGraph, ConstructError> {
    if g.m + k > 40 {
        return Err(ConstructError::ProductDimension(k));
    }
    Ok(ProductGraph { base: g.clone(), k })
}

impl ProductGraph {
    pub fn base(&self) -> &TruncatedCubeGraph {
        &self.base
    }

    pub fn extra_dim(&self) -> u32 {
        self.k
    }

    pub fn vertex(&self, base_vertex: usize, corner: usize) -> usize {
        base_vertex << self.k | corner
    }

    /// `(base vertex, corner of C_k)` of a product vertex.
    pub fn split(&self, v: usize) -> (usize, usize) {
        (v >> self.k, v & ((1 << self.k) - 1))
    }

    pub fn cluster_of(&self, vertex: usize) -> Result<CubeVertex, ConstructError> {
        if vertex >= self.vertex_count() {
            return Err(ConstructError::UnknownVertex { vertex, count: self.vertex_count() });
        }
        Ok(self.cluster_index(vertex))
    }
}

impl Graph for ProductGraph {
    fn vertex_count(&self) -> usize {
        self.base.vertex_count() << self.k
    }

    fn degree(&self, _v: usize) -> usize {
        4 + self.k as usize
    }

    fn edge_count(&self) -> usize {
        self.vertex_count() * (4 + self.k as usize) / 2
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (g, w) = self.split(v);
        let k = self.k;
        self.base
            .neighbors(g)
            .map(move |h| h << k | w)
            .chain((0..k).map(move |b| v ^ (1 << b)))
    }
}

impl ClusteredGraph for ProductGraph {
    fn cube_dim(&self) -> u32 {
        self.base.m
    }

    fn fiber_size(&self) -> usize {
        self.base.fiber_size() << self.k
    }
}
