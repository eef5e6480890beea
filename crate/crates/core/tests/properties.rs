//! Randomised invariants across modules.

use feynman_motives::fixtures;
use feynman_motives::graph::{Graph, LoopBasis, Theory};
use feynman_motives::hopf::{
    antipode_sides, coassociativity_sides, Birkhoff, ConnectedHopf, GraphCharacter, GraphHopf, GraphMonomial, Lin,
};
use feynman_motives::poly::Homogeneity;
use feynman_motives::series::Window;
use feynman_motives::symanzik::{psi_determinant, psi_spanning_trees};
use num_traits::One;
use proptest::prelude::*;

/// Connected multigraphs without self-loops: a path plus random chords.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=5)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=6)))
        .prop_map(|(n, extra)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            Graph::new(n, edges, vec![]).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_is_basis_independent((g, order) in connected_graph().prop_flat_map(|g| {
        let order: Vec<usize> = (0..g.edge_count()).collect();
        (Just(g), Just(order).prop_shuffle())
    })) {
        let trees = psi_spanning_trees(&g).unwrap();
        prop_assert_eq!(&psi_determinant(&g, &LoopBasis::dfs(&g)).unwrap(), &trees);
        let basis = LoopBasis::from_edge_order(&g, &order).unwrap();
        prop_assert_eq!(&psi_determinant(&g, &basis).unwrap(), &trees);
    }

    #[test]
    fn psi_is_multilinear_of_degree_loop_number(g in connected_graph()) {
        let psi = psi_spanning_trees(&g).unwrap();
        prop_assert_eq!(psi.homogeneity(), Homogeneity::Degree(g.loop_number() as u32));
        for (m, c) in psi.terms() {
            prop_assert!(c.is_one());
            prop_assert!(m.0.iter().all(|&e| e <= 1));
        }
    }
}

fn phi4_generators() -> (GraphHopf, Vec<GraphMonomial>) {
    let th = Theory::phi4();
    let corpus = fixtures::hopf_corpus(&th);
    let h = GraphHopf::new(th);
    let gens = corpus.iter().map(|(_, g)| GraphMonomial::generator(h.generator(g).unwrap())).collect();
    (h, gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hopf_axioms_on_random_products(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=3)) {
        let (h, gens) = phi4_generators();
        let m = picks.iter().fold(GraphMonomial::unit(), |acc, i| acc.times(i.get(&gens)));
        prop_assume!(h.degree(&m) <= 5);
        let (l, r) = coassociativity_sides(&h, &m).unwrap();
        prop_assert_eq!(l, r);
        let (a, b) = antipode_sides(&h, &Lin::basis(m)).unwrap();
        prop_assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn renormalized_part_is_multiplicative(seed in any::<u64>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (h, gens) = phi4_generators();
        let window = Window::default();
        let phi = GraphCharacter::new(format!("seeded:seed={seed}").parse().unwrap(), window);
        let bk = Birkhoff::new(&h, &phi, window);
        let (a, b) = (i.get(&gens), j.get(&gens));
        let joint = bk.plus(&a.times(b)).unwrap();
        let split = &bk.plus(a).unwrap() * &bk.plus(b).unwrap();
        prop_assert!(joint.agrees(&split));
        prop_assert!(!joint.has_polar_part());
    }
}
