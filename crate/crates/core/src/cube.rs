//! The m-cube graph, Harper's vertex-isoperimetric order, and level-set separators.
//!
//! Coordinates are numbered `0..m`; coordinate `i` is bit `i` of the integer
//! encoding of a [`CubeVertex`]. Within a weight layer the Harper order is
//! lexicographic on the bit word read from coordinate 0 upward, with `1`
//! sorting before `0`. For weight-2 vertices of the 4-cube that gives
//! `{0,1}, {0,2}, {0,3}, {1,2}, {1,3}, {2,3}`.

use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;
use thiserror::Error;

use crate::graph::Graph;
use crate::separators::{Provenance, SeparationConstant, Separator};

/// Largest cube dimension for which explicit vertex enumeration is allowed.
pub const MAX_CUBE_DIM: u32 = 32;

/// Largest dimension accepted by [`min_boundary_bruteforce`].
pub const MAX_BRUTEFORCE_DIM: u32 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubeError {
    #[error("cube dimension {0} is outside 1..={MAX_CUBE_DIM}")]
    Dimension(u32),
    #[error("segment size {size} is outside 0..={max}")]
    SegmentSize { size: u64, max: u64 },
    #[error("level {level} is outside 1..={max}")]
    Level { level: u32, max: u32 },
    #[error("separation constant {0} is outside (0, 1/2)")]
    Constant(String),
    #[error("brute force over subsets of the {0}-cube is infeasible (limit m <= {MAX_BRUTEFORCE_DIM})")]
    Infeasible(u32),
}

/// A vertex of `{0,1}^m`, stored as the integer whose bit `i` is coordinate `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeVertex(pub u64);

impl CubeVertex {
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn bit(self, i: u32) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn flip(self, i: u32) -> CubeVertex {
        CubeVertex(self.0 ^ (1 << i))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Renders the bit word of an `m`-dimensional vertex, coordinate 0 first.
    pub fn word(self, m: u32) -> String {
        (0..m).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The graph `C_m` of the m-cube with implicit Hamming-distance-1 adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypercubeGraph {
    m: u32,
}

pub fn cube_graph(m: u32) -> Result<HypercubeGraph, CubeError> {
    if m == 0 || m > MAX_CUBE_DIM {
        return Err(CubeError::Dimension(m));
    }
    Ok(HypercubeGraph { m })
}

impl HypercubeGraph {
    pub fn dim(&self) -> u32 {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = CubeVertex> {
        (0..1u64 << self.m).map(CubeVertex)
    }

    pub fn adjacent(&self, u: CubeVertex, v: CubeVertex) -> bool {
        (u.0 ^ v.0).count_ones() == 1
    }
}

impl Graph for HypercubeGraph {
    fn vertex_count(&self) -> usize {
        1 << self.m
    }

    fn edge_count(&self) -> usize {
        (self.m as usize) << (self.m - 1)
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).map(move |i| v ^ (1 << i))
    }
}

fn check_dim(m: u32) -> Result<(), CubeError> {
    cube_graph(m).map(|_| ())
}

fn check_size(m: u32, s: u64) -> Result<(), CubeError> {
    check_dim(m)?;
    let max = 1u64 << m;
    if s > max {
        return Err(CubeError::SegmentSize { size: s, max });
    }
    Ok(())
}

/// Exact binomial coefficient; values used here stay far below `u128::MAX`.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * u128::from(n - j) / u128::from(j + 1);
    }
    acc
}

/// All vertices of `{0,1}^m` in Harper order.
pub fn harper_order(m: u32) -> Result<impl Iterator<Item = CubeVertex>, CubeError> {
    check_dim(m)?;
    Ok((0..=m).flat_map(move |w| layer_in_order(m, w)))
}

/// The weight-`w` layer in lexicographic order (coordinate 0 first, `1 < 0`).
fn layer_in_order(m: u32, w: u32) -> impl Iterator<Item = CubeVertex> {
    (0..m)
        .combinations(w as usize)
        .map(|coords| CubeVertex(coords.into_iter().fold(0u64, |acc, i| acc | 1 << i)))
}

/// The first `s` vertices of the Harper order.
pub fn harper_initial_segment(m: u32, s: u64) -> Result<Vec<CubeVertex>, CubeError> {
    check_size(m, s)?;
    Ok(harper_order(m)?.take(s as usize).collect())
}

/// `|N(S)|` for the Harper segment `S` of size `s`, computed from binomial
/// counts and a shadow recursion without touching individual vertices.
pub fn harper_boundary(m: u32, s: u64) -> Result<u64, CubeError> {
    check_size(m, s)?;
    let total = 1u64 << m;
    if s == 0 || s == total {
        return Ok(0);
    }
    // Complete layers 0..=d, then `rest` vertices from layer d + 1.
    let mut covered: u128 = 0;
    let mut d = 0;
    while covered + binomial(m, d) <= u128::from(s) {
        covered += binomial(m, d);
        d += 1;
    }
    let next = d;
    let rest = u128::from(s) - covered;
    let boundary = binomial(m, next) - rest + upper_shadow(m, next, rest);
    Ok(boundary as u64)
}

/// Size of the upper shadow (all (k+1)-supersets) of the first `r` k-subsets
/// of an `n`-element ground set in lexicographic order.
fn upper_shadow(n: u32, k: u32, r: u128) -> u128 {
    if r == 0 || k >= n {
        return 0;
    }
    if k == 0 {
        return u128::from(n);
    }
    let with_first = binomial(n - 1, k - 1);
    if r >= with_first {
        binomial(n - 1, k) + upper_shadow(n - 1, k, r - with_first)
    } else {
        upper_shadow(n - 1, k - 1, r)
    }
}

/// Boundary sizes of every Harper initial segment of one cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarperProfile {
    m: u32,
    boundary: Vec<u64>,
}

impl HarperProfile {
    /// Sweeps the Harper order once, maintaining `|N(S)|` incrementally.
    pub fn new(m: u32) -> Result<Self, CubeError> {
        let cube = cube_graph(m)?;
        let n = cube.vertex_count();
        let mut inside = vec![false; n];
        let mut hits = vec![0u32; n];
        let mut current: u64 = 0;
        let mut boundary = Vec::with_capacity(n + 1);
        boundary.push(0);
        for v in harper_order(m)? {
            let v = v.index();
            if hits[v] > 0 {
                current -= 1;
            }
            inside[v] = true;
            for w in cube.neighbors(v) {
                if !inside[w] {
                    hits[w] += 1;
                    if hits[w] == 1 {
                        current += 1;
                    }
                }
            }
            boundary.push(current);
        }
        Ok(HarperProfile { m, boundary })
    }

    pub fn dim(&self) -> u32 {
        self.m
    }

    pub fn boundary(&self, s: u64) -> Option<u64> {
        self.boundary.get(s as usize).copied()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.boundary
    }

    /// Minimum boundary over segment sizes in `lo..=hi`.
    pub fn min_over(&self, lo: u64, hi: u64) -> Option<u64> {
        let hi = hi.min(self.boundary.len() as u64 - 1);
        (lo <= hi).then(|| self.boundary[lo as usize..=hi as usize].iter().copied().min())?
    }
}

/// Exact `min |N(S)|` over all `S` of size `s`, by exhaustive enumeration.
pub fn min_boundary_bruteforce(m: u32, s: u64) -> Result<u64, CubeError> {
    check_size(m, s)?;
    Ok(min_boundary_table(m)?[s as usize])
}

/// The exhaustive minimum for every size at once, `table[s]` for `s` in `0..=2^m`.
pub fn min_boundary_table(m: u32) -> Result<Vec<u64>, CubeError> {
    check_dim(m)?;
    if m > MAX_BRUTEFORCE_DIM {
        return Err(CubeError::Infeasible(m));
    }
    let n = 1usize << m;
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = vec![u64::MAX; n + 1];
    for set in 0..=u64::from(all) {
        let set = set as u32;
        let mut hood = 0u32;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            for i in 0..m {
                hood |= 1 << (v ^ (1 << i));
            }
        }
        let size = set.count_ones() as usize;
        let boundary = u64::from((hood & !set).count_ones());
        best[size] = best[size].min(boundary);
    }
    Ok(best)
}

fn check_constant(c: &SeparationConstant) -> Result<(), CubeError> {
    let half = Ratio::new(1, 2);
    if *c.ratio() <= Ratio::from_integer(0) || *c.ratio() >= half {
        return Err(CubeError::Constant(c.to_string()));
    }
    Ok(())
}

/// Lower bound on `|C|` for every `(A, B, C)` separator of `C_m` with
/// `c * 2^m <= |A| <= |B|`: the smallest Harper boundary over the feasible
/// window of sizes for the smaller side.
pub fn cube_separator_lower_bound(m: u32, c: &SeparationConstant) -> Result<u64, CubeError> {
    check_constant(c)?;
    let profile = HarperProfile::new(m)?;
    cube_separator_lower_bound_with(&profile, c)
}

/// As [`cube_separator_lower_bound`], reusing a precomputed profile.
pub fn cube_separator_lower_bound_with(
    profile: &HarperProfile,
    c: &SeparationConstant,
) -> Result<u64, CubeError> {
    check_constant(c)?;
    let n = 1u64 << profile.dim();
    let lo = c.ceil_times(n);
    Ok(profile.min_over(lo, n / 2).unwrap_or(0))
}

/// The level-set separator: `C` is the weight-`k` layer, the two remaining
/// sides are ordered so that `|A| <= |B|`. The carried constant is the
/// natural balance `|A| / 2^m`.
pub fn level_set_separator(m: u32, k: u32) -> Result<Separator, CubeError> {
    check_dim(m)?;
    if k == 0 || k >= m {
        return Err(CubeError::Level { level: k, max: m.saturating_sub(1) });
    }
    let mut low = Vec::new();
    let mut level = Vec::new();
    let mut high = Vec::new();
    for v in 0..1usize << m {
        match (v.count_ones()).cmp(&k) {
            std::cmp::Ordering::Less => low.push(v),
            std::cmp::Ordering::Equal => level.push(v),
            std::cmp::Ordering::Greater => high.push(v),
        }
    }
    let (a, b) = if low.len() <= high.len() { (low, high) } else { (high, low) };
    let constant = SeparationConstant::new(a.len() as u64, 1 << m)
        .map_err(|_| CubeError::Level { level: k, max: m - 1 })?;
    Ok(Separator::new(a, b, level, constant, Provenance::level_set(k)))
}
