use std::fmt;

use serde::Serialize;

use super::{Provenance, SeparationConstant, Separator, SeparatorError};
use crate::cube::{cube_graph, CubeVertex};
use crate::graph::{ClusteredGraph, Graph};

/// A–B edges listed individually before the report switches to a count.
const MAX_LISTED_EDGES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OutOfRange { set: char, vertex: usize },
    Duplicate { vertex: usize },
    Uncovered { count: usize, first: usize },
    AbEdge { a: usize, b: usize },
    MoreAbEdges { count: usize },
    SmallA { size: usize, min: u64 },
    AExceedsB { a: usize, b: usize },
    LargeB { size: usize, max: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { set, vertex } => write!(f, "vertex {vertex} in {set} is out of range"),
            Violation::Duplicate { vertex } => write!(f, "vertex {vertex} is listed more than once"),
            Violation::Uncovered { count, first } => {
                write!(f, "{count} vertices are in no set (first: {first})")
            }
            Violation::AbEdge { a, b } => write!(f, "edge {a}-{b} joins A and B"),
            Violation::MoreAbEdges { count } => write!(f, "{count} further A-B edges not listed"),
            Violation::SmallA { size, min } => write!(f, "|A| = {size} < c*n (needs at least {min})"),
            Violation::AExceedsB { a, b } => write!(f, "|A| = {a} > |B| = {b}"),
            Violation::LargeB { size, max } => write!(f, "|B| = {size} > (1-c)*n (at most {max})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub constant: SeparationConstant,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_valid() { "valid" } else { "INVALID" };
        writeln!(
            f,
            "{verdict}: n = {}, |A| = {}, |B| = {}, |C| = {}, c = {}",
            self.n, self.a, self.b, self.c, self.constant
        )?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

/// Checks that `(A, B, C)` partitions the vertex set, that no edge joins A
/// and B, and that `c n <= |A| <= |B| <= (1 - c) n`.
pub fn verify_separator<G: Graph>(g: &G, sep: &Separator) -> VerificationReport {
    let n = g.vertex_count();
    let mut violations = Vec::new();
    let mut seen = vec![0u8; n];
    for (set, name) in [(&sep.a, 'A'), (&sep.b, 'B'), (&sep.c, 'C')] {
        for &v in set {
            if v >= n {
                violations.push(Violation::OutOfRange { set: name, vertex: v });
            } else {
                seen[v] += 1;
                if seen[v] == 2 {
                    violations.push(Violation::Duplicate { vertex: v });
                }
            }
        }
    }
    let uncovered: Vec<usize> = (0..n).filter(|&v| seen[v] == 0).collect();
    if let Some(&first) = uncovered.first() {
        violations.push(Violation::Uncovered { count: uncovered.len(), first });
    }

    let mut in_b = vec![false; n];
    for &v in sep.b.iter().filter(|&&v| v < n) {
        in_b[v] = true;
    }
    let mut crossing = 0usize;
    for &u in sep.a.iter().filter(|&&u| u < n) {
        for w in g.neighbors(u) {
            if in_b[w] {
                crossing += 1;
                if crossing <= MAX_LISTED_EDGES {
                    violations.push(Violation::AbEdge { a: u, b: w });
                }
            }
        }
    }
    if crossing > MAX_LISTED_EDGES {
        violations.push(Violation::MoreAbEdges { count: crossing - MAX_LISTED_EDGES });
    }

    let c = sep.constant;
    let (na, nb) = (sep.a.len(), sep.b.len());
    if !c.at_most(n as u64, na as u64) {
        violations.push(Violation::SmallA { size: na, min: c.ceil_times(n as u64) });
    }
    if na > nb {
        violations.push(Violation::AExceedsB { a: na, b: nb });
    }
    if !c.complement_at_least(n as u64, nb as u64) {
        violations.push(Violation::LargeB { size: nb, max: n as u64 - c.ceil_times(n as u64) });
    }
    VerificationReport { n, a: na, b: nb, c: sep.c.len(), constant: c, violations }
}

/// Labels of the cube vertices induced by a separator of a clustered graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeLabeling {
    m: u32,
    labels: Vec<Label>,
}

impl CubeLabeling {
    pub fn new(m: u32, labels: Vec<Label>) -> Result<Self, SeparatorError> {
        cube_graph(m)?;
        if labels.len() != 1 << m {
            return Err(SeparatorError::LabelingSize { found: labels.len(), expected: 1 << m });
        }
        Ok(CubeLabeling { m, labels })
    }

    /// Labeling of `C_m` from a separator of the cube graph itself.
    pub fn from_cube_separator(m: u32, sep: &Separator) -> Result<Self, SeparatorError> {
        let sides = sep.sides(1 << m);
        let labels = sides
            .into_iter()
            .enumerate()
            .map(|(v, side)| side.ok_or_else(|| SeparatorError::Invalid(format!("cube vertex {v} unlabeled"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(m, labels)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn label(&self, v: CubeVertex) -> Label {
        self.labels[v.index()]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// `(#a, #b, #c)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        let count = |l| self.labels.iter().filter(|&&x| x == l).count();
        (count(Label::A), count(Label::B), count(Label::C))
    }

    /// A cube edge joining an `a` and a `b` vertex, if any.
    pub fn find_ab_edge(&self) -> Option<(u64, u64)> {
        let cube = cube_graph(self.m).ok()?;
        let found = cube.edges().find_map(|(u, v)| {
            let pair = (self.labels[u], self.labels[v]);
            matches!(pair, (Label::A, Label::B) | (Label::B, Label::A)).then_some((u as u64, v as u64))
        });
        found
    }
}

/// Cluster `v` gets `a` if it lies entirely in A, `b` if entirely in B, and
/// `c` otherwise.
pub fn quotient_labeling<G: ClusteredGraph>(g: &G, sep: &Separator) -> Result<CubeLabeling, SeparatorError> {
    let report = verify_separator(g, sep);
    if !report.is_valid() {
        return Err(SeparatorError::Invalid(report.to_string()));
    }
    let sides = sep.sides(g.vertex_count());
    let labels = (0..g.cluster_count() as u64)
        .map(|v| {
            let range = g.cluster_range(CubeVertex(v));
            let first = sides[range.start];
            if matches!(first, Some(Label::A) | Some(Label::B)) && sides[range].iter().all(|&s| s == first) {
                first.expect("checked above")
            } else {
                Label::C
            }
        })
        .collect();
    CubeLabeling::new(g.cube_dim(), labels)
}

/// Blows a cube labeling up to whole clusters. The smaller of the two
/// sides becomes A. Without an explicit constant the natural balance
/// `|A| / n` is used.
pub fn lift_cube_separator<G: ClusteredGraph>(
    g: &G,
    labeling: &CubeLabeling,
    constant: Option<SeparationConstant>,
) -> Result<Separator, SeparatorError> {
    if labeling.m != g.cube_dim() {
        return Err(SeparatorError::LabelingSize { found: labeling.labels.len(), expected: g.cluster_count() });
    }
    if let Some((u, v)) = labeling.find_ab_edge() {
        return Err(SeparatorError::AbCubeEdge(u, v));
    }
    let mut sets = [Vec::new(), Vec::new(), Vec::new()];
    for (v, &label) in labeling.labels.iter().enumerate() {
        let slot = match label {
            Label::A => 0,
            Label::B => 1,
            Label::C => 2,
        };
        sets[slot].extend(g.cluster_range(CubeVertex(v as u64)));
    }
    let [mut a, mut b, c] = sets;
    if a.is_empty() || b.is_empty() {
        return Err(SeparatorError::Unbalanced("one side is empty".into()));
    }
    if a.len() > b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let n = g.vertex_count() as u64;
    let constant = match constant {
        Some(c) => c,
        None => SeparationConstant::new(a.len() as u64, n)?,
    };
    if !constant.at_most(n, a.len() as u64) || !constant.complement_at_least(n, b.len() as u64) {
        return Err(SeparatorError::Unbalanced(format!(
            "|A| = {}, |B| = {} on n = {n} at c = {constant}",
            a.len(),
            b.len()
        )));
    }
    Ok(Separator::new(a, b, c, constant, Provenance::method("lift")))
}
