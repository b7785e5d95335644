use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{verify_separator, Label, Separator};
use crate::graph::Graph;

struct State {
    labels: Vec<Label>,
    sizes: [usize; 3],
    n: u64,
}

impl State {
    fn slot(label: Label) -> usize {
        match label {
            Label::A => 0,
            Label::B => 1,
            Label::C => 2,
        }
    }

    fn relabel(&mut self, v: usize, to: Label) {
        self.sizes[Self::slot(self.labels[v])] -= 1;
        self.sizes[Self::slot(to)] += 1;
        self.labels[v] = to;
    }

    fn size(&self, label: Label) -> usize {
        self.sizes[Self::slot(label)]
    }
}

/// Greedy vertex moves that never enlarge C and never break validity.
///
/// Each pass visits the C-vertices in a seeded random order. A C-vertex with
/// no B-neighbor joins A (or with no A-neighbor joins B) when the larger
/// side stays within `(1 - c) n`. A C-vertex whose only B-neighbor is `w`
/// may also join A while `w` enters C, when that strictly improves balance.
/// Stops early once a pass changes nothing.
pub fn refine_separator<G: Graph>(g: &G, sep: &Separator, passes: u32, seed: u64) -> Separator {
    if !verify_separator(g, sep).is_valid() {
        return sep.clone();
    }
    let n = g.vertex_count();
    let mut state = State { labels: vec![Label::C; n], sizes: [0, 0, n], n: n as u64 };
    for &v in &sep.a {
        state.relabel(v, Label::A);
    }
    for &v in &sep.b {
        state.relabel(v, Label::B);
    }
    let c = sep.constant;
    let fits = |state: &State, extra: Label| {
        let grow = |l| state.size(l) + usize::from(extra == l);
        c.complement_at_least(state.n, grow(Label::A).max(grow(Label::B)) as u64)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..passes {
        let mut order: Vec<usize> = (0..n).filter(|&v| state.labels[v] == Label::C).collect();
        order.shuffle(&mut rng);
        let mut changed = false;
        for u in order {
            if state.labels[u] != Label::C {
                continue;
            }
            let mut a_nbrs = 0;
            let mut b_nbrs = Vec::new();
            for w in g.neighbors(u) {
                match state.labels[w] {
                    Label::A => a_nbrs += 1,
                    Label::B => b_nbrs.push(w),
                    Label::C => {}
                }
            }
            let to_a = b_nbrs.is_empty() && fits(&state, Label::A);
            let to_b = a_nbrs == 0 && fits(&state, Label::B);
            let target = match (to_a, to_b) {
                (true, true) if state.size(Label::B) < state.size(Label::A) => Some(Label::B),
                (true, _) => Some(Label::A),
                (false, true) => Some(Label::B),
                (false, false) => None,
            };
            if let Some(side) = target {
                state.relabel(u, side);
                changed = true;
            } else if b_nbrs.len() == 1 && state.size(Label::A) + 1 < state.size(Label::B) {
                state.relabel(b_nbrs[0], Label::C);
                state.relabel(u, Label::A);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let pick = |label| (0..n).filter(|&v| state.labels[v] == label).collect::<Vec<_>>();
    let (mut a, mut b) = (pick(Label::A), pick(Label::B));
    if a.len() > b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut provenance = sep.provenance.clone();
    provenance.method = format!("refine({})", sep.provenance.method);
    provenance.seed = Some(seed);
    provenance.passes = Some(passes);
    let refined = Separator::new(a, b, pick(Label::C), c, provenance);
    if refined.size() <= sep.size() && verify_separator(g, &refined).is_valid() {
        refined
    } else {
        sep.clone()
    }
}
