//! Separator-size bounds as functions of `m`, and their normalizations for
//! trend inspection. Normalized columns are generic over the float type.

use num_traits::Float;
use serde::Serialize;

use crate::cube::{cube_separator_lower_bound_with, HarperProfile};
use crate::separators::{SeparationConstant, SeparatorError};

/// Lower bound on `|C|` valid for every separator with constant `c` of any
/// clustered graph over `C_m` with connected clusters:
/// `min(floor((c - c') 2^m) + 1, Harper window minimum at c')`.
pub fn certified_lower_bound(
    profile: &HarperProfile,
    c: SeparationConstant,
    c_prime: SeparationConstant,
) -> Result<u64, SeparatorError> {
    if c_prime >= c {
        return Err(SeparatorError::Constant(format!("c' = {c_prime} must be below c = {c}")));
    }
    let gap = SeparationConstant::from_ratio(c.ratio() - c_prime.ratio())?;
    let linear = gap.floor_times(1 << profile.dim()) + 1;
    Ok(linear.min(cube_separator_lower_bound_with(profile, &c_prime)?))
}

/// Vertex count `(6m - 12) 2^m` of the model graph, times `2^k` for products.
pub fn model_vertex_count(m: u32, k: u32) -> u64 {
    (6 * u64::from(m) - 12) << (m + k)
}

/// Coordinate-cut size for a blueprint whose minimum degree is `min_degree`.
pub fn coordinate_cut_size(m: u32, k: u32, min_degree: usize) -> u64 {
    (min_degree as u64) << (m - 1 + k)
}

/// `bound * ln(n)^power / n`.
pub fn normalize<F: Float>(bound: u64, n: u64, power: F) -> F {
    let n_f = F::from(n).expect("finite");
    F::from(bound).expect("finite") * n_f.ln().powf(power) / n_f
}

/// `lower * sqrt(m) / 2^m`: the lower bound against `2^m / sqrt(m)`.
pub fn lower_over_cube_scale<F: Float>(lower: u64, m: u32) -> F {
    let m_f = F::from(m).expect("finite");
    F::from(lower).expect("finite") * m_f.sqrt() / F::from(2.0).expect("finite").powi(m as i32)
}

/// `upper * (m - 2) / 2^m`.
pub fn upper_times_m_minus_2<F: Float>(upper: u64, m: u32) -> F {
    F::from(upper).expect("finite") * F::from(m - 2).expect("finite") / F::from(2.0).expect("finite").powi(m as i32)
}

/// Ratio of the largest to the smallest entry; `None` if some entry is not positive.
pub fn band_ratio<F: Float>(values: &[F]) -> Option<F> {
    let lo = values.iter().copied().fold(F::infinity(), F::min);
    let hi = values.iter().copied().fold(F::neg_infinity(), F::max);
    (lo > F::zero()).then(|| hi / lo)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow<F> {
    pub m: u32,
    pub n: u64,
    pub lower: u64,
    pub upper: u64,
    #[serde(rename = "lower*ln(n)^1.5/n")]
    pub lower_norm: F,
    #[serde(rename = "upper*ln(n)/n")]
    pub upper_norm: F,
    #[serde(rename = "n/ln(n)")]
    pub n_over_ln: F,
    #[serde(rename = "n/ln(n)^1.5")]
    pub n_over_ln15: F,
}

impl<F: Float> BoundsRow<F> {
    pub fn new(m: u32, n: u64, lower: u64, upper: u64) -> Self {
        let n_f = F::from(n).expect("finite");
        let ln = n_f.ln();
        let three_halves = F::from(1.5).expect("finite");
        BoundsRow {
            m,
            n,
            lower,
            upper,
            lower_norm: normalize(lower, n, three_halves),
            upper_norm: normalize(upper, n, F::one()),
            n_over_ln: n_f / ln,
            n_over_ln15: n_f / ln.powf(three_halves),
        }
    }
}
