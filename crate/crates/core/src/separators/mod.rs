//! Vertex separators `(A, B, C)`: construction, verification, the cluster
//! quotient, lower-bound certificates, and a greedy refiner.

mod certify;
mod cut;
mod refine;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use certify::{certify_lower_bound, certify_lower_bound_with, BoundCertificate, Verdict};
pub use cut::{best_coordinate_cut, coordinate_cut_separator, lift_to_product};
pub use refine::refine_separator;
pub use verify::{
    lift_cube_separator, quotient_labeling, verify_separator, CubeLabeling, Label, VerificationReport, Violation,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("invalid separation constant: {0}")]
    Constant(String),
    #[error("direction {direction} is outside 0..{m}")]
    Direction { direction: usize, m: u32 },
    #[error("separator is invalid: {0}")]
    Invalid(String),
    #[error("labeling is unbalanced: {0}")]
    Unbalanced(String),
    #[error("labeling has an a-b cube edge {0}-{1}")]
    AbCubeEdge(u64, u64),
    #[error("labeling covers {found} cube vertices, expected {expected}")]
    LabelingSize { found: usize, expected: usize },
    #[error("certificate inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Cube(#[from] crate::cube::CubeError),
}

/// The balance parameter `c` with `0 < c < 1/2`, kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeparationConstant(Ratio<u64>);

impl SeparationConstant {
    pub fn new(numer: u64, denom: u64) -> Result<Self, SeparatorError> {
        if denom == 0 {
            return Err(SeparatorError::Constant(format!("{numer}/0")));
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(ratio: Ratio<u64>) -> Result<Self, SeparatorError> {
        if *ratio.numer() == 0 || ratio >= Ratio::new(1, 2) {
            return Err(SeparatorError::Constant(format!("{ratio} is outside (0, 1/2)")));
        }
        Ok(SeparationConstant(ratio))
    }

    /// `c = 1/3`.
    pub fn one_third() -> Self {
        SeparationConstant(Ratio::new(1, 3))
    }

    pub fn ratio(&self) -> &Ratio<u64> {
        &self.0
    }

    /// Default certification constant `c' = c / 2`.
    pub fn half(&self) -> Self {
        SeparationConstant(self.0 / 2)
    }

    /// `ceil(c * n)`.
    pub fn ceil_times(&self, n: u64) -> u64 {
        let (p, q) = (u128::from(*self.0.numer()), u128::from(*self.0.denom()));
        (p * u128::from(n)).div_ceil(q) as u64
    }

    /// `floor(c * n)`.
    pub fn floor_times(&self, n: u64) -> u64 {
        let (p, q) = (u128::from(*self.0.numer()), u128::from(*self.0.denom()));
        (p * u128::from(n) / q) as u64
    }

    /// `c * n <= x`, exactly.
    pub fn at_most(&self, n: u64, x: u64) -> bool {
        u128::from(*self.0.numer()) * u128::from(n) <= u128::from(*self.0.denom()) * u128::from(x)
    }

    /// `x <= (1 - c) * n`, exactly.
    pub fn complement_at_least(&self, n: u64, x: u64) -> bool {
        let (p, q) = (u128::from(*self.0.numer()), u128::from(*self.0.denom()));
        u128::from(x) * q <= (q - p) * u128::from(n)
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl Default for SeparationConstant {
    fn default() -> Self {
        Self::one_third()
    }
}

impl fmt::Display for SeparationConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for SeparationConstant {
    type Err = SeparatorError;

    /// Accepts `p/q` or a finite decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self, SeparatorError> {
        let s = s.trim();
        let bad = || SeparatorError::Constant(format!("cannot parse {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return Self::new(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.chars().all(|ch| ch.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let denom = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let numer = int.checked_mul(denom).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
        Self::new(numer, denom)
    }
}

impl Serialize for SeparationConstant {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SeparationConstant {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// How a separator was produced.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passes: Option<u32>,
}

impl Provenance {
    pub fn method(method: &str) -> Self {
        Provenance { method: method.to_string(), ..Default::default() }
    }

    pub fn coordinate(direction: usize) -> Self {
        Provenance { direction: Some(direction), ..Self::method("coordinate") }
    }

    pub fn level_set(level: u32) -> Self {
        Provenance { level: Some(level), ..Self::method("level-set") }
    }
}

/// A candidate separator. Vertex lists are kept sorted; nothing else is
/// enforced on construction, see [`verify_separator`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    #[serde(rename = "separation_constant")]
    pub constant: SeparationConstant,
    pub provenance: Provenance,
}

impl Separator {
    pub fn new(
        mut a: Vec<usize>,
        mut b: Vec<usize>,
        mut c: Vec<usize>,
        constant: SeparationConstant,
        provenance: Provenance,
    ) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        c.sort_unstable();
        Separator { a, b, c, constant, provenance }
    }

    pub fn with_constant(mut self, constant: SeparationConstant) -> Self {
        self.constant = constant;
        self
    }

    pub fn size(&self) -> usize {
        self.c.len()
    }

    /// Per-vertex side labels, `None` where a vertex is missing or out of range.
    pub(crate) fn sides(&self, n: usize) -> Vec<Option<Label>> {
        let mut sides = vec![None; n];
        for (set, label) in [(&self.a, Label::A), (&self.b, Label::B), (&self.c, Label::C)] {
            for &v in set {
                if v < n {
                    sides[v] = Some(label);
                }
            }
        }
        sides
    }
}
