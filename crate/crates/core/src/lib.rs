//! Separator instances from doubly truncated neighborly cubical polytopes.
//!
//! The model graph `C''_m` replaces every vertex of the m-cube by a cubic
//! cluster (the truncation of a maximal planar blueprint on `m` vertices)
//! and every cube edge by a prism. This crate builds those graphs and their
//! products with small cubes, computes and cross-checks the flag vectors of
//! the underlying polytopes, finds coordinate-cut separators, and certifies
//! lower bounds for any separator through the cluster quotient and Harper's
//! vertex-isoperimetric order on the cube.
//!
//! ```
//! use ncsep::{build_ncc_graph, best_coordinate_cut, certify_lower_bound, stacked_triangulation, verify_separator};
//!
//! let h = stacked_triangulation(6, 0).unwrap();
//! let g = build_ncc_graph(6, &h).unwrap();
//! let sep = best_coordinate_cut(&g);
//! assert!(verify_separator(&g, &sep).is_valid());
//! let cert = certify_lower_bound(&g, &sep, None).unwrap();
//! assert!(cert.certified_bound <= sep.size() as u64);
//! ```

pub mod bounds;
pub mod construct;
pub mod cube;
pub mod export;
pub mod flags;
pub mod graph;
pub mod planar;
pub mod separators;

use num_bigint::BigInt;

pub use construct::{build_ncc_graph, cartesian_product_with_cube, ProductGraph, TruncatedCubeGraph};
pub use cube::{
    cube_graph, cube_separator_lower_bound, harper_boundary, harper_initial_segment, level_set_separator,
    min_boundary_bruteforce, CubeVertex, HarperProfile, HypercubeGraph,
};
pub use export::{export_graph, Format, GraphDocument};
pub use flags::{FlagInt, FlagVectorOf};
pub use graph::{ClusteredGraph, Graph};
pub use planar::{degree_profile, stacked_triangulation, truncate, ClusterGraph, Triangulation};
pub use separators::{
    best_coordinate_cut, certify_lower_bound, coordinate_cut_separator, lift_cube_separator, lift_to_product,
    quotient_labeling, refine_separator, verify_separator, BoundCertificate, CubeLabeling, SeparationConstant,
    Separator, VerificationReport,
};

/// Exact flag vector with arbitrary-precision entries.
pub type FlagVector = FlagVectorOf<BigInt>;
/// Flag vector in 128-bit integers, exact for `m` below 100.
pub type FlagVector128 = FlagVectorOf<i128>;
/// Facet census with arbitrary-precision counts.
pub type FacetCensus = flags::FacetCensus<BigInt>;
/// Bounds table row with `f64` normalizations.
pub type BoundsRow = bounds::BoundsRow<f64>;
