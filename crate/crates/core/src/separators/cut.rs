use super::{Provenance, SeparationConstant, Separator, SeparatorError};
use crate::construct::{ProductGraph, TruncatedCubeGraph};
use crate::graph::{ClusteredGraph, Graph};

/// Splits the clusters by coordinate `direction` and puts the
/// coordinate-1 endpoint of every crossing edge into C. Each vertex has
/// exactly one inter-cluster edge, so `|C| = 2^(m-1) * deg_H(direction)`.
/// The separator is tagged with `c = 1/3`.
pub fn coordinate_cut_separator(g: &TruncatedCubeGraph, direction: usize) -> Result<Separator, SeparatorError> {
    let m = g.m();
    if direction >= m as usize {
        return Err(SeparatorError::Direction { direction, m });
    }
    let f = g.fiber_size();
    let mut zero_side = Vec::with_capacity(g.vertex_count() / 2);
    let mut one_side = Vec::with_capacity(g.vertex_count() / 2);
    let mut cut = Vec::new();
    for v in 0..g.vertex_count() {
        if (v / f) >> direction & 1 == 0 {
            zero_side.push(v);
        } else if g.direction(v) == direction {
            cut.push(v);
        } else {
            one_side.push(v);
        }
    }
    let (a, b) = if one_side.len() <= zero_side.len() { (one_side, zero_side) } else { (zero_side, one_side) };
    Ok(Separator::new(a, b, cut, SeparationConstant::one_third(), Provenance::coordinate(direction)))
}

/// The coordinate cut in a direction of smallest blueprint degree (lowest
/// index on ties).
pub fn best_coordinate_cut(g: &TruncatedCubeGraph) -> Separator {
    let h = g.blueprint();
    let direction = (0..h.vertex_count()).min_by_key(|&i| (h.degree(i), i)).expect("m >= 4");
    coordinate_cut_separator(g, direction).expect("direction in range")
}

/// `(A x C_k, B x C_k, C x C_k)` in the product graph.
pub fn lift_to_product(p: &ProductGraph, sep: &Separator) -> Separator {
    let corners = 1usize << p.extra_dim();
    let lift = |set: &[usize]| -> Vec<usize> {
        set.iter().flat_map(|&v| (0..corners).map(move |w| p.vertex(v, w))).collect()
    };
    let mut provenance = sep.provenance.clone();
    provenance.method = format!("{}-x-cube", provenance.method);
    Separator::new(lift(&sep.a), lift(&sep.b), lift(&sep.c), sep.constant, provenance)
}
