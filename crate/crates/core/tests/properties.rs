use proptest::prelude::*;

use linforest::bounds::{kary_bounds_l, perfect_kary_decycling, perfect_kary_l};
use linforest::forest::{dp_table, dp_table_all_pairs, hc_construct, l_of_tree, leaf_exchange, max_linear_forest};
use linforest::generate::{perfect_kary_order, prufer_decode, prufer_encode, random_kary, random_tree};
use linforest::graph::{line_graph, parse_graph, Graph};
use linforest::oracle::{self, is_decycling_set, is_induced_forest, is_simple_path, Oracle, Witness};
use linforest::tree::{center, diameter, root_at_center, RootedTree};
use linforest::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prufer(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (3..=max_n).prop_flat_map(|n| prop::collection::vec(0..n, n - 2))
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (prufer(max_n), prop::collection::vec((0usize..64, 0usize..64), 0..6)).prop_map(|(seq, extra)| {
        let tree = prufer_decode(&seq).unwrap();
        let n = tree.n();
        let mut add: Vec<(usize, usize)> = Vec::new();
        for (a, b) in extra {
            let (u, v) = ((a % n).min(b % n), (a % n).max(b % n));
            if u != v && !tree.has_edge(u, v) && !add.contains(&(u, v)) {
                add.push((u, v));
            }
        }
        tree.with_added_edges(add).unwrap()
    })
}

proptest! {
    #[test]
    fn dp_variants_agree_and_reconstruct(seq in prufer(40)) {
        let g = prufer_decode(&seq).unwrap();
        let t = root_at_center(g.clone()).unwrap();
        let fast = dp_table(&t);
        let slow = dp_table_all_pairs(&t);
        prop_assert_eq!(&fast.f, &slow.f);
        prop_assert_eq!(&fast.f_constrained, &slow.f_constrained);
        let forest = fast.reconstruct(&t, false);
        prop_assert!(forest.validate(&g).is_ok());
        prop_assert_eq!(forest.len(), fast.f[t.root()]);
    }

    #[test]
    fn l_is_independent_of_root(seq in prufer(25), root in 0usize..25) {
        let g = prufer_decode(&seq).unwrap();
        let root = root % g.n();
        let t = RootedTree::new(g.clone(), root).unwrap();
        prop_assert_eq!(max_linear_forest(&t).best.len(), l_of_tree(&g).unwrap());
    }

    #[test]
    fn l_sits_between_diameter_and_n_minus_one(seq in prufer(60)) {
        let g = prufer_decode(&seq).unwrap();
        let l = l_of_tree(&g).unwrap();
        prop_assert!(diameter(&g) <= l && l < g.n());
    }

    #[test]
    fn prufer_round_trips(seq in prufer(30)) {
        prop_assert_eq!(prufer_encode(&prufer_decode(&seq).unwrap()).unwrap(), seq);
    }

    #[test]
    fn hc_construct_adds_one_edge_per_extra_leaf(seq in prufer(30)) {
        let g = prufer_decode(&seq).unwrap();
        let done = hc_construct(&g).unwrap();
        let out = (0..g.n()).filter(|&v| g.degree(v) == 1).count();
        prop_assert_eq!(done.added_edges.len(), out - 1);
        prop_assert!(out > g.n() - l_of_tree(&g).unwrap());
        let h = g.with_added_edges(done.added_edges.iter().copied()).unwrap();
        prop_assert!(oracle::is_hamiltonian_cycle(&h, &done.cycle));
    }

    #[test]
    fn leaf_exchange_never_lowers_l(seq in prufer(20), a in 0usize..20, b in 0usize..20) {
        let g = prufer_decode(&seq).unwrap();
        let leaves: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
        let (a, b) = (leaves[a % leaves.len()], leaves[b % leaves.len()]);
        prop_assume!(a != b);
        let moved = leaf_exchange(&g, a, b).unwrap();
        prop_assert!(moved.is_tree());
        prop_assert!(l_of_tree(&moved).unwrap() >= l_of_tree(&g).unwrap());
    }

    #[test]
    fn line_graph_edge_count_and_claw_freeness(g in connected_graph(8)) {
        let lg = line_graph(&g).graph;
        let pairs: usize = (0..g.n()).map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(lg.n(), g.m());
        prop_assert_eq!(lg.m(), pairs);
        for v in 0..lg.n() {
            let nb = lg.neighbors(v);
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    for k in j + 1..nb.len() {
                        let (x, y, z) = (nb[i], nb[j], nb[k]);
                        prop_assert!(lg.has_edge(x, y) || lg.has_edge(x, z) || lg.has_edge(y, z));
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_witnesses_certify_their_values(g in connected_graph(7)) {
        let lg = line_graph(&g).graph;
        let forest = oracle::max_induced_forest(&lg).unwrap();
        let Witness::Vertices(kept) = &forest.witness else { panic!("vertex witness") };
        prop_assert_eq!(kept.len(), forest.value);
        prop_assert!(is_induced_forest(&lg, kept));
        let nabla = oracle::decycling_number(&lg).unwrap();
        let Witness::Vertices(removed) = &nabla.witness else { panic!("vertex witness") };
        prop_assert!(is_decycling_set(&lg, removed));
        prop_assert_eq!(nabla.value + forest.value, lg.n());
        prop_assert!(nabla.value + g.n() > g.m());
        let path = oracle::longest_path_bf(&g).unwrap();
        let Witness::Walk(walk) = &path.witness else { panic!("walk witness") };
        prop_assert!(is_simple_path(&g, walk));
        prop_assert_eq!(walk.len(), path.value + 1);
    }

    #[test]
    fn some_spanning_tree_attains_l(g in connected_graph(6)) {
        let l = oracle::max_linear_forest_bf(&g).unwrap().value;
        let best = oracle::spanning_trees(&g).unwrap().iter().map(|t| l_of_tree(t).unwrap()).max().unwrap();
        prop_assert_eq!(l, best);
    }

    #[test]
    fn random_kary_trees_respect_bounds(k in 2usize..6, internal in 1usize..80, seed in any::<u64>()) {
        let g = random_kary(k, internal, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(g.n(), 1 + k * internal);
        let l = Rational::from_integer(l_of_tree(&g).unwrap() as i64);
        let (lo, hi) = kary_bounds_l(g.n() as i64, k as i64).unwrap();
        prop_assert!(lo <= l && l <= hi);
    }
}

#[test]
fn hc_matches_oracle_on_small_trees() {
    for seed in 0..60 {
        let n = 3 + (seed as usize % 5);
        let g = random_tree(n, seed).unwrap();
        let bf = oracle::hc_bf(&g).unwrap().value;
        assert_eq!(bf, g.n() - l_of_tree(&g).unwrap(), "{:?}", g.edges());
    }
}

#[test]
fn perfect_kary_decycling_complements_l() {
    for k in 2..=5usize {
        for h in 1..=6 {
            let n = perfect_kary_order(k, h).unwrap() as i64;
            let (l, nabla) = (perfect_kary_l(n, k as i64).unwrap(), perfect_kary_decycling(n, k as i64).unwrap());
            assert_eq!(l + nabla, n - 1, "k={k} h={h}");
        }
    }
}

#[test]
fn non_tree_inputs_go_to_the_oracle() {
    let c4 = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert!(l_of_tree(&c4).is_err());
    assert_eq!(Oracle::default().max_linear_forest(&c4).unwrap().value, 3);
    assert!(center(&c4).is_err());
}
