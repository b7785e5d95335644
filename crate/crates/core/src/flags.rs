//! Flag vectors `(f0, f1, f2, f3; f03)` of the neighborly cubical 4-polytope
//! family and its vertex and edge truncations.
//!
//! Everything is exact integer arithmetic, generic over the integer type.
//! [`crate::FlagVector`] fixes it to `BigInt`; `i64` and `i128` work too and
//! report [`FlagError::Overflow`] instead of wrapping.
//!
//! Two independent routes are provided: the printed closed forms
//! ([`flag_nc4`], [`flag_nc4_prime`], [`flag_nc4_double_prime`]) and
//! counting derivations from facet censuses ([`derive_prime_census`],
//! [`derive_double_prime_census`]). The printed `f03` entries of the two
//! truncations disagree with the census counts; [`cross_check_prime`] and
//! [`cross_check_double_prime`] report exactly which entries differ.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::planar::Triangulation;

/// Largest `m` accepted by the closed forms.
pub const MAX_FLAG_M: u32 = 10_000;

/// Integer types usable for exact flag-vector arithmetic.
pub trait FlagInt:
    Clone + Debug + Display + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64>
{
}

impl<T> FlagInt for T where
    T: Clone + Debug + Display + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64>
{
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlagError {
    #[error("m = {0} is outside 4..={MAX_FLAG_M}")]
    Dimension(u32),
    #[error("integer overflow at m = {0}")]
    Overflow(u32),
    #[error("f1 - f0 = {0} must be positive and even for a cubical 4-polytope")]
    Inconsistent(String),
    #[error("solution {0} has fewer than 16 vertices, impossible for a cubical 4-polytope")]
    Degenerate(String),
    #[error("simplicity test only supports d = 4, got d = {0}")]
    UnsupportedDimension(u32),
    #[error("census routes disagree on {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FlagVectorOf<T> {
    pub f0: T,
    pub f1: T,
    pub f2: T,
    pub f3: T,
    pub f03: T,
}

impl<T: FlagInt> FlagVectorOf<T> {
    /// `f0 - f1 + f2 - f3`, zero for every 4-polytope.
    pub fn euler_residual(&self) -> T {
        self.f0.clone() - self.f1.clone() + self.f2.clone() - self.f3.clone()
    }

    pub fn entries(&self) -> [&T; 5] {
        [&self.f0, &self.f1, &self.f2, &self.f3, &self.f03]
    }

    /// Names of the entries in which `self` and `other` differ.
    pub fn differences(&self, other: &Self) -> Vec<&'static str> {
        const NAMES: [&str; 5] = ["f0", "f1", "f2", "f3", "f03"];
        NAMES
            .iter()
            .zip(self.entries().into_iter().zip(other.entries()))
            .filter(|(_, (a, b))| a != b)
            .map(|(name, _)| *name)
            .collect()
    }
}

impl<T: Display> Display for FlagVectorOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}; {})", self.f0, self.f1, self.f2, self.f3, self.f03)
    }
}

/// A flag vector of the shape `(a_0 m + b_0, ..., a_4 m + b_4) * 2^(m-2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactoredFlag {
    pub name: &'static str,
    pub coefficients: [(i64, i64); 5],
}

pub const NC4: FactoredFlag = FactoredFlag {
    name: "NC4(m)",
    coefficients: [(0, 4), (2, 0), (3, -6), (1, -2), (8, -16)],
};

pub const NC4_PRIME: FactoredFlag = FactoredFlag {
    name: "NC4(m)'",
    coefficients: [(4, 0), (14, -24), (11, -22), (1, 2), (28, -24)],
};

pub const NC4_DOUBLE_PRIME: FactoredFlag = FactoredFlag {
    name: "NC4(m)''",
    coefficients: [(24, -48), (48, -96), (27, -46), (3, 2), (28, -48)],
};

fn render_linear(a: i64, b: i64) -> String {
    let head = if a == 1 { "m".to_string() } else { format!("{a}m") };
    match (a, b) {
        (0, b) => b.to_string(),
        (_, 0) => head,
        (_, b) if b < 0 => format!("{head}-{}", -b),
        (_, b) => format!("{head}+{b}"),
    }
}

impl FactoredFlag {
    /// Symbolic form, e.g. `(4, 2m, 3m-6, m-2; 8m-16)*2^(m-2)`.
    pub fn template(&self) -> String {
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .map(|&(a, b)| render_linear(a, b))
            .collect();
        format!("({}, {}, {}, {}; {})*2^(m-2)", parts[0], parts[1], parts[2], parts[3], parts[4])
    }

    /// The bracketed factor at a given `m`, before scaling by `2^(m-2)`.
    pub fn factor<T: FlagInt>(&self, m: u32) -> FlagVectorOf<T> {
        let [a, b, c, d, e] = self.coefficients.map(|(x, y)| T::from(x * i64::from(m) + y));
        FlagVectorOf { f0: a, f1: b, f2: c, f3: d, f03: e }
    }

    pub fn evaluate<T: FlagInt>(&self, m: u32) -> Result<FlagVectorOf<T>, FlagError> {
        check_m(m)?;
        let scale = pow2::<T>(m - 2, m)?;
        let f = self.factor::<T>(m);
        let mul = |x: T| x.checked_mul(&scale).ok_or(FlagError::Overflow(m));
        Ok(FlagVectorOf { f0: mul(f.f0)?, f1: mul(f.f1)?, f2: mul(f.f2)?, f3: mul(f.f3)?, f03: mul(f.f03)? })
    }
}

fn check_m(m: u32) -> Result<(), FlagError> {
    if !(4..=MAX_FLAG_M).contains(&m) {
        return Err(FlagError::Dimension(m));
    }
    Ok(())
}

fn pow2<T: FlagInt>(exp: u32, m: u32) -> Result<T, FlagError> {
    num_traits::checked_pow(T::from(2), exp as usize).ok_or(FlagError::Overflow(m))
}

/// Checked `sum(terms)` with overflow reported against `m`.
fn sum<T: FlagInt>(m: u32, terms: impl IntoIterator<Item = T>) -> Result<T, FlagError> {
    terms
        .into_iter()
        .try_fold(T::zero(), |acc, x| acc.checked_add(&x))
        .ok_or(FlagError::Overflow(m))
}

fn times<T: FlagInt>(m: u32, a: T, b: &T) -> Result<T, FlagError> {
    a.checked_mul(b).ok_or(FlagError::Overflow(m))
}

fn lin<T: FlagInt>(a: i64, b: i64, m: u32) -> T {
    T::from(a * i64::from(m) + b)
}

pub fn flag_nc4<T: FlagInt>(m: u32) -> Result<FlagVectorOf<T>, FlagError> {
    NC4.evaluate(m)
}

pub fn flag_nc4_prime<T: FlagInt>(m: u32) -> Result<FlagVectorOf<T>, FlagError> {
    NC4_PRIME.evaluate(m)
}

pub fn flag_nc4_double_prime<T: FlagInt>(m: u32) -> Result<FlagVectorOf<T>, FlagError> {
    NC4_DOUBLE_PRIME.evaluate(m)
}

/// Completes `(f0, f1)` of a cubical 4-polytope using Euler's relation,
/// `2 f2 = 6 f3` and `f03 = 8 f3`.
pub fn complete_cubical_flag<T: FlagInt>(f0: T, f1: T) -> Result<FlagVectorOf<T>, FlagError> {
    let diff = f1.clone() - f0.clone();
    let two = T::from(2);
    if !diff.is_positive() || !diff.is_multiple_of(&two) {
        return Err(FlagError::Inconsistent(diff.to_string()));
    }
    let f3 = diff / two;
    let out = FlagVectorOf {
        f2: f3.clone() * T::from(3),
        f03: f3.clone() * T::from(8),
        f0,
        f1,
        f3,
    };
    if out.f0 < T::from(16) {
        return Err(FlagError::Degenerate(out.to_string()));
    }
    Ok(out)
}

/// `f1 = 2 f0`: the graph is 4-regular, so every vertex lies on exactly 4 facets.
pub fn is_simple_flag<T: FlagInt>(fv: &FlagVectorOf<T>, d: u32) -> Result<bool, FlagError> {
    if d != 4 {
        return Err(FlagError::UnsupportedDimension(d));
    }
    Ok(fv.f1 == fv.f0.clone() * T::from(2))
}

/// Combinatorial type of a facet family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FacetShape {
    /// Every facet in the family has this 3-polytope f-vector.
    Fixed([u64; 3]),
    /// Prisms over `k`-gons, f-vector `(2k, 3k, k + 2)`.
    Prism { k: u64 },
    /// Prisms over polygons with between `min_k` and `max_k` sides.
    PrismRange { min_k: u64, max_k: u64 },
}

impl FacetShape {
    pub fn prism(k: u64) -> [u64; 3] {
        [2 * k, 3 * k, k + 2]
    }

    pub fn fvector(&self) -> Option<[u64; 3]> {
        match *self {
            FacetShape::Fixed(f) => Some(f),
            FacetShape::Prism { k } => Some(Self::prism(k)),
            FacetShape::PrismRange { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetFamily<T> {
    pub name: String,
    pub count: T,
    pub shape: FacetShape,
    /// Total vertex-facet incidences contributed by the family.
    pub incidences: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetCensus<T> {
    pub families: Vec<FacetFamily<T>>,
}

impl<T: FlagInt> FacetCensus<T> {
    pub fn facet_count(&self) -> T {
        self.families.iter().fold(T::zero(), |acc, f| acc + f.count.clone())
    }

    pub fn incidences(&self) -> T {
        self.families.iter().fold(T::zero(), |acc, f| acc + f.incidences.clone())
    }
}

fn family<T: FlagInt>(m: u32, name: &str, count: T, shape: FacetShape) -> Result<FacetFamily<T>, FlagError> {
    let f0 = shape.fvector().expect("fixed shape")[0] as i64;
    let incidences = times(m, count.clone(), &T::from(f0))?;
    Ok(FacetFamily { name: name.to_string(), count, shape, incidences })
}

/// Facets after cutting off all vertices of `NC4(m)`.
pub fn facet_census_prime<T: FlagInt>(m: u32) -> Result<FacetCensus<T>, FlagError> {
    check_m(m)?;
    let quarter = pow2::<T>(m - 2, m)?;
    let full = pow2::<T>(m, m)?;
    let mm = u64::from(m);
    Ok(FacetCensus {
        families: vec![
            family(m, "truncated 3-cubes", times(m, lin(1, -2, m), &quarter)?, FacetShape::Fixed([24, 36, 14]))?,
            family(m, "vertex figures", full, FacetShape::Fixed([mm, 3 * mm - 6, 2 * mm - 4]))?,
        ],
    })
}

/// Facets after additionally cutting off the original edges. With a
/// blueprint, edge prisms are split by polygon size (direction `i` gives
/// `2^(m-1)` prisms over `deg(i)`-gons); without one only the range is known.
pub fn facet_census_double_prime<T: FlagInt>(
    m: u32,
    blueprint: Option<&Triangulation>,
) -> Result<FacetCensus<T>, FlagError> {
    check_m(m)?;
    let quarter = pow2::<T>(m - 2, m)?;
    let half = pow2::<T>(m - 1, m)?;
    let full = pow2::<T>(m, m)?;
    let mm = u64::from(m);
    let mut families = vec![
        family(m, "doubly truncated 3-cubes", times(m, lin(1, -2, m), &quarter)?, FacetShape::Fixed([48, 72, 26]))?,
        family(
            m,
            "truncated vertex figures",
            full.clone(),
            FacetShape::Fixed([6 * mm - 12, 9 * mm - 18, 3 * mm - 4]),
        )?,
    ];
    match blueprint {
        Some(h) => {
            if h.vertex_count() != m as usize {
                return Err(FlagError::Internal(format!(
                    "blueprint has {} vertices, m = {m}",
                    h.vertex_count()
                )));
            }
            let mut by_k: BTreeMap<u64, i64> = BTreeMap::new();
            for i in 0..h.vertex_count() {
                *by_k.entry(h.degree(i) as u64).or_default() += 1;
            }
            for (k, directions) in by_k {
                let count = times(m, T::from(directions), &half)?;
                families.push(family(m, &format!("{k}-gon prisms"), count, FacetShape::Prism { k })?);
            }
        }
        None => {
            // Polygon sizes sum to 6m - 12 over the m directions (handshake
            // in the blueprint), so the incidence total is known anyway.
            let incidences = times(m, lin(12, -24, m), &half)?;
            families.push(FacetFamily {
                name: "edge prisms".to_string(),
                count: times(m, T::from(i64::from(m)), &half)?,
                shape: FacetShape::PrismRange { min_k: 3, max_k: mm - 1 },
                incidences,
            });
        }
    }
    Ok(FacetCensus { families })
}

/// Recounts the flag vector of `NC4(m)'` from the truncation: one new vertex
/// per vertex-edge incidence, the old edges plus the vertex-figure edges,
/// the facet census, Euler's relation for `f2` (checked against a direct
/// ridge count), and census incidences for `f03`.
pub fn derive_prime_census<T: FlagInt>(m: u32) -> Result<FlagVectorOf<T>, FlagError> {
    check_m(m)?;
    let quarter = pow2::<T>(m - 2, m)?;
    let half = pow2::<T>(m - 1, m)?;
    let full = pow2::<T>(m, m)?;
    let mt = T::from(i64::from(m));
    let census = facet_census_prime::<T>(m)?;

    let f0 = times(m, mt.clone(), &full)?;
    let f1 = sum(m, [times(m, mt, &half)?, times(m, lin(3, -6, m), &full)?])?;
    let f3 = census.facet_count();
    let f2 = f1.clone() - f0.clone() + f3.clone();
    let ridges = sum(m, [times(m, lin(3, -6, m), &quarter)?, times(m, lin(2, -4, m), &full)?])?;
    if ridges != f2 {
        return Err(FlagError::Internal(format!("f2: Euler gives {f2}, ridge count gives {ridges}")));
    }
    Ok(FlagVectorOf { f0, f1, f2, f3, f03: census.incidences() })
}

/// Recounts the flag vector of `NC4(m)''`: each original edge with a
/// `k`-gon edge figure yields `2k` vertices; edges split into cluster edges
/// and prism edges between clusters; `f3` and `f03` come from the census and
/// `f2` from Euler's relation.
pub fn derive_double_prime_census<T: FlagInt>(m: u32) -> Result<FlagVectorOf<T>, FlagError> {
    check_m(m)?;
    let half = pow2::<T>(m - 1, m)?;
    let full = pow2::<T>(m, m)?;
    let census = facet_census_double_prime::<T>(m, None)?;

    let f0 = times(m, lin(12, -24, m), &half)?;
    let f1 = sum(m, [times(m, lin(9, -18, m), &full)?, times(m, lin(6, -12, m), &half)?])?;
    let f3 = census.facet_count();
    let f2 = f1.clone() - f0.clone() + f3.clone();
    Ok(FlagVectorOf { f0, f1, f2, f3, f03: census.incidences() })
}

/// Printed closed form next to the census recount.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagComparison<T> {
    pub printed: FlagVectorOf<T>,
    pub derived: FlagVectorOf<T>,
    pub mismatches: Vec<&'static str>,
}

impl<T> FlagComparison<T> {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare<T: FlagInt>(printed: FlagVectorOf<T>, derived: FlagVectorOf<T>) -> FlagComparison<T> {
    let mismatches = printed.differences(&derived);
    FlagComparison { printed, derived, mismatches }
}

pub fn cross_check_nc4<T: FlagInt>(m: u32) -> Result<FlagComparison<T>, FlagError> {
    let printed = flag_nc4::<T>(m)?;
    let f0 = pow2::<T>(m, m)?;
    let f1 = times(m, T::from(i64::from(m)), &pow2::<T>(m - 1, m)?)?;
    Ok(compare(printed, complete_cubical_flag(f0, f1)?))
}

pub fn cross_check_prime<T: FlagInt>(m: u32) -> Result<FlagComparison<T>, FlagError> {
    Ok(compare(flag_nc4_prime(m)?, derive_prime_census(m)?))
}

pub fn cross_check_double_prime<T: FlagInt>(m: u32) -> Result<FlagComparison<T>, FlagError> {
    Ok(compare(flag_nc4_double_prime(m)?, derive_double_prime_census(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::stacked_triangulation;
    use num_bigint::BigInt;

    fn fv(v: [i64; 5]) -> FlagVectorOf<i64> {
        FlagVectorOf { f0: v[0], f1: v[1], f2: v[2], f3: v[3], f03: v[4] }
    }

    #[test]
    fn nc4_values() {
        assert_eq!(flag_nc4::<i64>(4), Ok(fv([16, 32, 24, 8, 64])));
        assert_eq!(flag_nc4::<i64>(5), Ok(fv([32, 80, 72, 24, 192])));
        assert_eq!(flag_nc4::<i64>(3), Err(FlagError::Dimension(3)));
    }

    #[test]
    fn printed_truncation_values() {
        assert_eq!(flag_nc4_prime::<i64>(4), Ok(fv([64, 128, 88, 24, 352])));
        assert_eq!(flag_nc4_double_prime::<i64>(4), Ok(fv([192, 384, 248, 56, 256])));
    }

    #[test]
    fn euler_for_all_families() {
        for m in 4..=30 {
            for family in [NC4, NC4_PRIME, NC4_DOUBLE_PRIME] {
                let f = family.evaluate::<i64>(m).unwrap();
                assert_eq!(f.euler_residual(), 0, "{} m={m}", family.name);
            }
        }
    }

    #[test]
    fn completion_reproduces_nc4() {
        assert_eq!(complete_cubical_flag(16i64, 32), Ok(fv([16, 32, 24, 8, 64])));
        for m in 4..=30 {
            let c = cross_check_nc4::<i64>(m).unwrap();
            assert!(c.agrees(), "m={m}");
        }
    }

    #[test]
    fn completion_rejects_bad_input() {
        assert!(matches!(complete_cubical_flag(16i64, 31), Err(FlagError::Inconsistent(_))));
        assert!(matches!(complete_cubical_flag(16i64, 16), Err(FlagError::Inconsistent(_))));
        // (8, 12) solves to (8, 12, 6, 2; 16): two facets, not a 4-polytope.
        assert!(matches!(complete_cubical_flag(8i64, 12), Err(FlagError::Degenerate(_))));
    }

    #[test]
    fn prime_census() {
        let census = facet_census_prime::<i64>(4).unwrap();
        assert_eq!(census.families[0].count, 8);
        assert_eq!(census.families[0].shape, FacetShape::Fixed([24, 36, 14]));
        assert_eq!(census.families[1].count, 16);
        assert_eq!(census.families[1].shape, FacetShape::Fixed([4, 6, 4]));
        for m in 4..=30 {
            let census = facet_census_prime::<i64>(m).unwrap();
            assert_eq!(census.facet_count(), flag_nc4_prime::<i64>(m).unwrap().f3);
        }
    }

    #[test]
    fn double_prime_census() {
        let h = stacked_triangulation(4, 0).unwrap();
        let census = facet_census_double_prime::<i64>(4, Some(&h)).unwrap();
        assert_eq!(census.families[1].shape, FacetShape::Fixed([12, 18, 8]));
        assert_eq!(census.families[2].shape.fvector(), Some([6, 9, 5]));
        assert_eq!(census.families[2].count, 32);
        for m in 4..=30 {
            let printed = flag_nc4_double_prime::<i64>(m).unwrap();
            let bare = facet_census_double_prime::<i64>(m, None).unwrap();
            assert_eq!(bare.facet_count(), printed.f3);
            if m <= 20 {
                let h = stacked_triangulation(m as usize, u64::from(m)).unwrap();
                let full = facet_census_double_prime::<i64>(m, Some(&h)).unwrap();
                assert_eq!(full.facet_count(), printed.f3);
                assert_eq!(full.incidences(), bare.incidences());
            }
        }
    }

    #[test]
    fn prime_recount_matches_except_f03() {
        let c = cross_check_prime::<i64>(4).unwrap();
        assert_eq!(c.derived, fv([64, 128, 88, 24, 256]));
        for m in 4..=30 {
            let c = cross_check_prime::<i64>(m).unwrap();
            assert_eq!(c.mismatches, vec!["f03"], "m={m}");
            assert_eq!(c.derived.euler_residual(), 0);
        }
    }

    #[test]
    fn double_prime_recount() {
        for m in 4..=30 {
            let c = cross_check_double_prime::<i64>(m).unwrap();
            assert_eq!(c.mismatches, vec!["f03"], "m={m}");
            // simple: each vertex on exactly four facets
            assert_eq!(c.derived.f03, 4 * c.derived.f0);
        }
    }

    #[test]
    fn simplicity() {
        for m in 4..=30 {
            assert_eq!(is_simple_flag(&flag_nc4_double_prime::<i64>(m).unwrap(), 4), Ok(true));
        }
        assert_eq!(is_simple_flag(&flag_nc4::<i64>(5).unwrap(), 4), Ok(false));
        assert_eq!(is_simple_flag(&flag_nc4::<i64>(4).unwrap(), 4), Ok(true));
        assert_eq!(
            is_simple_flag(&flag_nc4::<i64>(4).unwrap(), 5),
            Err(FlagError::UnsupportedDimension(5))
        );
    }

    #[test]
    fn wide_integers() {
        assert_eq!(flag_nc4::<i64>(70), Err(FlagError::Overflow(70)));
        let big = flag_nc4::<BigInt>(70).unwrap();
        assert_eq!(big.f0, BigInt::from(1) << 70);
        let huge = flag_nc4_double_prime::<BigInt>(MAX_FLAG_M).unwrap();
        assert_eq!(huge.euler_residual(), BigInt::from(0));
        assert!(flag_nc4::<BigInt>(MAX_FLAG_M + 1).is_err());
        let narrow = flag_nc4_prime::<i128>(60).unwrap();
        assert_eq!(narrow.f0, 240i128 << 58);
    }

    #[test]
    fn templates() {
        assert_eq!(NC4.template(), "(4, 2m, 3m-6, m-2; 8m-16)*2^(m-2)");
        assert_eq!(NC4_DOUBLE_PRIME.template(), "(24m-48, 48m-96, 27m-46, 3m+2; 28m-48)*2^(m-2)");
        assert_eq!(NC4_PRIME.template(), "(4m, 14m-24, 11m-22, m+2; 28m-24)*2^(m-2)");
    }
}
