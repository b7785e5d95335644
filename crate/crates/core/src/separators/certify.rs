//! Lower-bound certificates through the cluster quotient.
//!
//! For a valid separator with constant `c` of a clustered graph over `C_m`
//! (connected clusters of size `F`), let `x` be the number of c-labeled
//! clusters. Each c-cluster meets C, otherwise a connected cluster would
//! contain an A–B edge, so `|C| >= x`. Every A-vertex lies in an a-cluster
//! or a c-cluster, so `#a >= c 2^m - x`, and likewise for `b`. Fix
//! `0 < c' < c`:
//!
//! * if `x > (c - c') 2^m`, then `|C| >= floor((c - c') 2^m) + 1`;
//! * otherwise both `#a, #b >= c' 2^m`, the labels form a separator of
//!   `C_m`, and `x >= |N(smaller side)|` is at least the Harper minimum over
//!   the window `[ceil(c' 2^m), 2^(m-1)]`.
//!
//! The certified bound is the smaller of the two thresholds and holds for
//! every separator with constant `c`.

use serde::Serialize;

use super::{quotient_labeling, Label, SeparationConstant, Separator, SeparatorError};
use crate::cube::{cube_separator_lower_bound_with, harper_boundary, CubeVertex, HarperProfile};
use crate::graph::ClusteredGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Verdict {
    /// The c-clusters alone exceed the linear threshold.
    LinearClusterCount,
    /// The a/b labels separate the cube; the smaller side has this size.
    CubeSeparator { smaller_side: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub m: u32,
    pub c: SeparationConstant,
    pub c_prime: SeparationConstant,
    pub a_clusters: usize,
    pub b_clusters: usize,
    pub c_cluster_count: usize,
    /// `floor((c - c') 2^m) + 1`.
    pub linear_threshold: u64,
    /// Harper minimum over the feasible window at `c'`.
    pub harper_bound: u64,
    pub certified_bound: u64,
    pub separator_size: usize,
    pub verdict: Verdict,
}

/// Certificate with a freshly computed Harper profile; `c_prime` defaults to `c / 2`.
pub fn certify_lower_bound<G: ClusteredGraph>(
    g: &G,
    sep: &Separator,
    c_prime: Option<SeparationConstant>,
) -> Result<BoundCertificate, SeparatorError> {
    let profile = HarperProfile::new(g.cube_dim())?;
    certify_lower_bound_with(&profile, g, sep, c_prime)
}

pub fn certify_lower_bound_with<G: ClusteredGraph>(
    profile: &HarperProfile,
    g: &G,
    sep: &Separator,
    c_prime: Option<SeparationConstant>,
) -> Result<BoundCertificate, SeparatorError> {
    let m = g.cube_dim();
    if profile.dim() != m {
        return Err(SeparatorError::Inconsistent(format!("profile for m = {} used at m = {m}", profile.dim())));
    }
    let c = sep.constant;
    let c_prime = c_prime.unwrap_or_else(|| c.half());
    if c_prime >= c {
        return Err(SeparatorError::Constant(format!("c' = {c_prime} must be below c = {c}")));
    }
    let labeling = quotient_labeling(g, sep)?;
    let (a_clusters, b_clusters, c_cluster_count) = labeling.counts();

    let clusters = 1u64 << m;
    let gap = SeparationConstant::from_ratio(c.ratio() - c_prime.ratio())?;
    let linear_threshold = gap.floor_times(clusters) + 1;
    let harper_bound = cube_separator_lower_bound_with(profile, &c_prime)?;
    let certified_bound = linear_threshold.min(harper_bound);

    // Each c-cluster must contain a separator vertex.
    let sides = sep.sides(g.vertex_count());
    for (v, _) in labeling.labels().iter().enumerate().filter(|(_, &l)| l == Label::C) {
        let range = g.cluster_range(CubeVertex(v as u64));
        if !sides[range].contains(&Some(Label::C)) {
            return Err(SeparatorError::Inconsistent(format!("c-cluster {v} contains no separator vertex")));
        }
    }

    let x = c_cluster_count as u64;
    let verdict = if x >= linear_threshold {
        Verdict::LinearClusterCount
    } else {
        let smaller = a_clusters.min(b_clusters) as u64;
        if smaller < c_prime.ceil_times(clusters) {
            return Err(SeparatorError::Inconsistent(format!(
                "{x} c-clusters leave a side of only {smaller} clusters, below c' 2^m"
            )));
        }
        let boundary = harper_boundary(m, smaller)?;
        if x < boundary || boundary < harper_bound {
            return Err(SeparatorError::Inconsistent(format!(
                "{x} c-clusters around a side of {smaller}: Harper boundary {boundary}, window minimum {harper_bound}"
            )));
        }
        Verdict::CubeSeparator { smaller_side: smaller }
    };

    let separator_size = sep.size();
    if (separator_size as u64) < x || (separator_size as u64) < certified_bound {
        return Err(SeparatorError::Inconsistent(format!(
            "|C| = {separator_size} is below its certified bound {certified_bound} or cluster count {x}"
        )));
    }
    Ok(BoundCertificate {
        m,
        c,
        c_prime,
        a_clusters,
        b_clusters,
        c_cluster_count,
        linear_threshold,
        harper_bound,
        certified_bound,
        separator_size,
        verdict,
    })
}
