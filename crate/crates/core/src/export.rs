//! Graph exporters (edge list, METIS, DIMACS, JSON) and the matching readers.
//!
//! All formats use the canonical numbering of [`crate::construct`]. Edge
//! lists are 0-based `u v` lines with `u < v`; METIS and DIMACS are 1-based.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{build_ncc_graph, cartesian_product_with_cube, ConstructError, ProductGraph, TruncatedCubeGraph};
use crate::graph::{ClusteredGraph, Graph};
use crate::planar::Triangulation;

pub const JSON_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("graph document is inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    EdgeList,
    Metis,
    Dimacs,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "edge-list" | "edgelist" | "edges" => Ok(Format::EdgeList),
            "metis" => Ok(Format::Metis),
            "dimacs" => Ok(Format::Dimacs),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (edge-list, metis, dimacs, json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::EdgeList => "edge-list",
            Format::Metis => "metis",
            Format::Dimacs => "dimacs",
            Format::Json => "json",
        })
    }
}

/// Self-describing JSON form of a model graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub schema: u32,
    pub m: u32,
    pub k: u32,
    pub seed: Option<u64>,
    /// Rotation lists, 1-based.
    pub blueprint: Triangulation,
    pub n: usize,
    pub edge_count: usize,
    pub degree: usize,
    pub fiber_size: usize,
    pub clusters: usize,
    pub numbering: String,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDocument {
    pub fn from_graph(g: &ProductGraph) -> Self {
        let base = g.base();
        GraphDocument {
            schema: JSON_SCHEMA,
            m: base.m(),
            k: g.extra_dim(),
            seed: base.seed(),
            blueprint: base.blueprint().clone(),
            n: g.vertex_count(),
            edge_count: g.edge_count(),
            degree: g.degree(0),
            fiber_size: g.fiber_size(),
            clusters: g.cluster_count(),
            numbering: "index = (cube_vertex * (6m-12) + rank of dart (i,j)) * 2^k + corner".to_string(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    /// Rebuilds the graph from `m`, `k` and the blueprint, and checks the
    /// stored counts and edges against it.
    pub fn rebuild(&self) -> Result<ProductGraph, ExportError> {
        if self.schema != JSON_SCHEMA {
            return Err(ExportError::Schema(self.schema));
        }
        let base = build_ncc_graph(self.m, &self.blueprint)?.with_seed(self.seed);
        let g = cartesian_product_with_cube(&base, self.k)?;
        if g.vertex_count() != self.n || g.edge_count() != self.edge_count {
            return Err(ExportError::Inconsistent(format!(
                "stored n={} edges={}, rebuilt n={} edges={}",
                self.n,
                self.edge_count,
                g.vertex_count(),
                g.edge_count()
            )));
        }
        if !self.edges.is_empty() && !self.edges.iter().copied().eq(g.edges().map(|(u, v)| [u, v])) {
            return Err(ExportError::Inconsistent("edge list differs from the rebuilt graph".into()));
        }
        Ok(g)
    }
}

/// Wraps a base model as a trivial product so one code path serves both.
pub fn as_product(g: &TruncatedCubeGraph) -> ProductGraph {
    cartesian_product_with_cube(g, 0).expect("k = 0 is always valid")
}

pub fn export_graph<W: Write>(g: &ProductGraph, format: Format, sink: &mut W) -> Result<(), ExportError> {
    match format {
        Format::EdgeList => {
            for (u, v) in g.edges() {
                writeln!(sink, "{u} {v}")?;
            }
        }
        Format::Metis => {
            writeln!(sink, "{} {}", g.vertex_count(), g.edge_count())?;
            for v in 0..g.vertex_count() {
                let mut nbrs: Vec<usize> = g.neighbors(v).collect();
                nbrs.sort_unstable();
                let line: Vec<String> = nbrs.into_iter().map(|w| (w + 1).to_string()).collect();
                writeln!(sink, "{}", line.join(" "))?;
            }
        }
        Format::Dimacs => {
            writeln!(sink, "p edge {} {}", g.vertex_count(), g.edge_count())?;
            for (u, v) in g.edges() {
                writeln!(sink, "e {} {}", u + 1, v + 1)?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *sink, &GraphDocument::from_graph(g))?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}

/// Reads a 0-based edge list; returns normalized `(u, v)` pairs with `u < v`, sorted.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Vec<(usize, usize)>, ExportError> {
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |reason: String| ExportError::Parse { line: idx + 1, reason };
        let mut parts = line.split_whitespace().map(|t| t.parse::<usize>());
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u.min(v), u.max(v))),
            _ => return Err(parse_err(format!("expected two vertex indices, got {line:?}"))),
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

pub fn read_graph_json<R: io::Read>(reader: R) -> Result<GraphDocument, ExportError> {
    Ok(serde_json::from_reader(reader)?)
}
