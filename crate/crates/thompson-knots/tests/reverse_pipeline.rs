//! Random midline graphs pushed through the reverse pipeline.
//!
//! The oracle is the Jones polynomial of the drawing of the input graph: it
//! must survive normalization, conversion to a tree pair, and the full
//! diagram-to-element pipeline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thompson_knots::invariants::jones_set;
use thompson_knots::jones_map::psi;
use thompson_knots::reverse_pipeline::{
    graph_to_element, midline_to_diagram, normalize, reverse, ArcSide, MidlineArc,
    SignedMidlineGraph,
};

const CASES: usize = 150;

fn side(rng: &mut ChaCha8Rng) -> ArcSide {
    if rng.gen_bool(0.5) {
        ArcSide::Above
    } else {
        ArcSide::Below
    }
}

fn sign(rng: &mut ChaCha8Rng) -> i32 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// A connected graph on a midline: a path through all vertices plus a few
/// extra arcs, kept only when they cross nothing.
fn random_graph(rng: &mut ChaCha8Rng) -> SignedMidlineGraph {
    let n = rng.gen_range(2..=6);
    let mut arcs: Vec<MidlineArc> = (1..n)
        .map(|i| MidlineArc::new(i - 1, i, sign(rng), side(rng)))
        .collect();
    for _ in 0..rng.gen_range(0..6) {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        let arc = MidlineArc::new(i, j, sign(rng), side(rng));
        let mut candidate = arcs.clone();
        candidate.insert(rng.gen_range(0..=arcs.len()), arc);
        if SignedMidlineGraph::new(n, candidate.clone()).is_ok() {
            arcs = candidate;
        }
    }
    SignedMidlineGraph::new(n, arcs).unwrap()
}

#[test]
fn random_graphs_keep_their_link() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for it in 0..CASES {
        let g = random_graph(&mut rng);
        let d = midline_to_diagram(&g);
        let want = jones_set(&d).unwrap();
        let h = normalize(&g);
        assert!(h.is_thompson_form());
        assert_eq!(
            jones_set(&midline_to_diagram(&h)).unwrap(),
            want,
            "it {it}\n{g}\n{h}"
        );
        let e = graph_to_element(&h).unwrap();
        assert_eq!(jones_set(&psi(&e)).unwrap(), want);
        if d.piece_count() == 1 {
            let e2 = reverse(&d).unwrap();
            assert_eq!(jones_set(&psi(&e2)).unwrap(), want, "reverse it {it}\n{g}");
        }
    }
}
