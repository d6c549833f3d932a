use proptest::prelude::*;

use sepdim_core::enumerate::Caps;
use sepdim_core::game::{fractional_sepdim, solve_matrix, Reduction};
use sepdim_core::graph::{generate, parse_graph, FamilySpec, Graph};
use sepdim_core::ordering::{Mode, Ordering};
use sepdim_core::rational::{int, rat};
use sepdim_core::separation::separates;
use sepdim_core::strategies::tree::random_tree;
use sepdim_core::strategies::{k4free_strategy, uniform_strategy};

fn graph_strategy(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn has_pair(g: &Graph) -> bool {
    !g.nonincident_pairs().is_empty()
}

fn pi(g: &Graph, mode: Mode, red: Reduction) -> sepdim_core::Rational {
    fractional_sepdim(g, mode, red, &Caps::default()).unwrap().pi_f
}

fn mode_strategy() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Linear), Just(Mode::Circular)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reversal_preserves_separation((g, perm) in graph_strategy(4, 8).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), perm_strategy(n))
    }), mode in mode_strategy()) {
        let o = Ordering::new(mode, perm).unwrap();
        let r = o.reversed();
        for p in g.nonincident_pairs() {
            prop_assert_eq!(separates(&o, &p), separates(&r, &p));
        }
    }

    #[test]
    fn circular_form_ignores_rotation_and_reflection(perm in perm_strategy(7), shift in 0usize..7, flip in any::<bool>()) {
        let mut rot: Vec<usize> = (0..7).map(|i| perm[(i + shift) % 7]).collect();
        if flip {
            rot.reverse();
        }
        prop_assert_eq!(Ordering::circular(perm).unwrap(), Ordering::circular(rot).unwrap());
    }

    #[test]
    fn linear_separation_implies_circular((g, perm) in graph_strategy(4, 8).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), perm_strategy(n))
    })) {
        let lin = Ordering::linear(perm.clone()).unwrap();
        let circ = Ordering::circular(perm).unwrap();
        for p in g.nonincident_pairs() {
            prop_assert!(!separates(&lin, &p) || separates(&circ, &p));
        }
    }

    #[test]
    fn matrix_solution_is_certified(rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 4), 1..12)) {
        let mut counts = rows;
        counts.push(vec![1; 4]);
        let sol = solve_matrix(&counts, &[2, 3, 1, 4]).unwrap();
        prop_assert!(sol.certified);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn uniform_separates_every_pair_at_one_third(g in graph_strategy(4, 6), mode in mode_strategy()) {
        prop_assume!(has_pair(&g));
        let s = uniform_strategy(&g, mode, None).unwrap();
        let ev = s.evaluate(&g).unwrap();
        let want = if mode == Mode::Linear { rat(1, 3) } else { rat(2, 3) };
        for (_, p) in &ev.per_pair {
            prop_assert_eq!(p, &want);
        }
    }

    #[test]
    fn orbit_reduction_is_exact(g in graph_strategy(4, 6), mode in mode_strategy()) {
        prop_assert_eq!(pi(&g, mode, Reduction::None), pi(&g, mode, Reduction::Orbits));
    }

    #[test]
    fn pattern_reduction_is_exact(sizes in proptest::collection::vec(1usize..4, 2..4), mode in mode_strategy()) {
        let n: usize = sizes.iter().sum();
        prop_assume!((4..=7).contains(&n));
        let g = generate(&FamilySpec::Multipartite(sizes)).unwrap();
        prop_assert_eq!(pi(&g, mode, Reduction::None), pi(&g, mode, Reduction::Patterns));
    }

    #[test]
    fn monotone_under_edge_deletion(g in graph_strategy(4, 6), pick in any::<prop::sample::Index>(), mode in mode_strategy()) {
        prop_assume!(!g.edges().is_empty());
        let drop = pick.index(g.edges().len());
        let edges: Vec<_> = g.edges().iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, e)| *e).collect();
        let h = Graph::from_edges(g.n(), edges).unwrap();
        prop_assert!(pi(&h, mode, Reduction::Auto) <= pi(&g, mode, Reduction::Auto));
    }

    #[test]
    fn values_within_bounds(g in graph_strategy(4, 6)) {
        prop_assume!(has_pair(&g));
        let lin = pi(&g, Mode::Linear, Reduction::Auto);
        let circ = pi(&g, Mode::Circular, Reduction::Auto);
        prop_assert!(lin >= int(1) && lin <= int(3));
        prop_assert!(circ >= int(1) && circ <= rat(3, 2));
        prop_assert!(circ <= lin);
        if g.find_k4().is_some() {
            prop_assert_eq!(lin, int(3));
            prop_assert_eq!(circ, rat(3, 2));
        } else {
            prop_assert!(lin < int(3));
            prop_assert!(circ < rat(3, 2));
        }
    }

    #[test]
    fn k4free_strategy_meets_guarantee(g in graph_strategy(4, 6), mode in mode_strategy()) {
        prop_assume!(g.find_k4().is_none() && has_pair(&g));
        let s = k4free_strategy(&g, mode, None).unwrap();
        let (ev, ok) = s.verify(&g).unwrap();
        prop_assert!(ok, "min {:?} guarantee {:?}", ev.min, s.guarantee);
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(2, 8)) {
        prop_assume!(g.edges().iter().any(|&(u, v)| u.max(v) + 1 == g.n()));
        let h = parse_graph(&g.to_edge_list()).unwrap();
        prop_assert_eq!(h.n(), g.n());
        prop_assert_eq!(h.edges(), g.edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn trees_reach_one_exactly_when_caterpillars(n in 5usize..=7, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(n, &mut rng);
        prop_assume!(has_pair(&t));
        let v = pi(&t, Mode::Linear, Reduction::Auto);
        prop_assert_eq!(v == int(1), t.is_caterpillar().unwrap());
    }
}
