//! Invariants checked on random small graphs against the exhaustive oracles.

use capfree::construct::{generate_instance, GeneratorParams};
use capfree::decomposition::clique_cutset_tree;
use capfree::oracles::{
    brute_chromatic, brute_clique_cutset, brute_max_clique, brute_mwss, find_forbidden_induced,
    odd_signable_signing, Certificate, ForbiddenKind,
};
use capfree::recognition::{detect_cap_fast, recognize, GraphClass};
use capfree::skeleton::twin_classes;
use capfree::solvers::{chromatic_number, clique_number, greedy_color, mwss, q_color};
use capfree::treewidth::tree_decomposition;
use capfree::{Graph, Limits};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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
    })
}

fn weighted(max_n: usize, low: i64) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_flat_map(move |g| {
        let n = g.n();
        proptest::collection::vec(low..=100, n)
            .prop_map(move |w| g.clone().with_weights(w).unwrap())
    })
}

fn brute_chi(g: &Graph) -> usize {
    match brute_chromatic(g, &Limits::default()).unwrap() {
        Certificate::Coloring { k, .. } => k,
        other => panic!("unexpected certificate {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_format_round_trips(g in weighted(12, 0)) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn decomposition_is_valid_and_atoms_have_no_clique_cutset(g in graph(10)) {
        let tree = clique_cutset_tree(&g);
        prop_assert!(tree.validate(&g).is_ok());
        let atoms = tree.atoms();
        for (i, a) in atoms.iter().enumerate() {
            for (j, b) in atoms.iter().enumerate() {
                prop_assert!(i == j || !a.is_subset(b), "atom {:?} inside {:?}", a, b);
            }
        }
        for atom in atoms {
            let (sub, _) = g.induced_subgraph(atom).unwrap();
            match brute_clique_cutset(&sub, &Limits::default()).unwrap() {
                Certificate::CliqueCutset(c) => prop_assert!(c.is_none(), "atom {:?} splits on {:?}", atom, c),
                other => panic!("unexpected certificate {other:?}"),
            }
        }
    }

    #[test]
    fn twin_classes_share_closed_neighbourhoods(g in graph(12)) {
        let p = twin_classes(&g);
        let class = p.class_index(g.n());
        for u in g.vertices() {
            for v in g.vertices() {
                let twins = g.closed_neighborhood(u) == g.closed_neighborhood(v);
                prop_assert_eq!(class[u] == class[v], twins);
            }
        }
    }

    #[test]
    fn tree_decomposition_is_valid(g in graph(12)) {
        let td = tree_decomposition(&g, &Limits::default()).unwrap();
        prop_assert!(td.validate(&g).is_ok());
    }

    #[test]
    fn chromatic_number_matches_brute_force(g in graph(9)) {
        let (chi, c) = chromatic_number(&g, &Limits::default()).unwrap();
        prop_assert_eq!(chi, brute_chi(&g));
        prop_assert!(c.is_proper(&g));
        prop_assert_eq!(c.num_colors(), chi);
    }

    #[test]
    fn q_color_is_exact(g in graph(9)) {
        let chi = brute_chi(&g);
        let td = tree_decomposition(&g, &Limits::default()).unwrap();
        let c = q_color(&g, &td, chi).unwrap();
        prop_assert!(c.is_some_and(|c| c.is_proper(&g) && c.num_colors() <= chi));
        if chi > 1 {
            prop_assert!(q_color(&g, &td, chi - 1).unwrap().is_none());
        }
    }

    #[test]
    fn greedy_colouring_is_proper(g in graph(14)) {
        let c = greedy_color(&g);
        prop_assert!(c.is_proper(&g));
        prop_assert!(c.num_colors() >= brute_chi(&g));
    }

    #[test]
    fn stable_set_matches_brute_force(g in weighted(12, -20)) {
        let r = mwss(&g, &Limits::default()).unwrap();
        prop_assert!(g.is_stable(&r.set));
        prop_assert_eq!(r.set.iter().map(|&v| g.weight(v)).sum::<i64>(), r.weight);
        match brute_mwss(&g, &Limits::default()).unwrap() {
            Certificate::StableSet { weight, .. } => prop_assert_eq!(r.weight, weight),
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn clique_number_matches_brute_force(g in graph(12)) {
        let (k, c) = clique_number(&g, &Limits::default()).unwrap();
        prop_assert!(g.is_clique(&c) && c.len() == k);
        match brute_max_clique(&g, &Limits::default()).unwrap() {
            Certificate::Clique { vertices } => prop_assert_eq!(k, vertices.len()),
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn cap_detector_matches_oracle(g in graph(10)) {
        let fast = detect_cap_fast(&g);
        let slow = find_forbidden_induced(&g, ForbiddenKind::Cap, &Limits::default()).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(w) = fast {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn recognition_certificates_check_out(g in graph(10)) {
        for class in [GraphClass::CapEvenHoleFree, GraphClass::CapFourHoleOddSignable] {
            let v = recognize(&g, class, &Limits::default()).unwrap();
            prop_assert!(v.check(&g), "{} certificate fails", class);
        }
    }

    #[test]
    fn odd_signings_verify(g in graph(9)) {
        if let Some(s) = odd_signable_signing(&g, &Limits::default()).unwrap() {
            prop_assert!(s.verify(&g));
        }
    }

    #[test]
    fn generated_instances_are_in_class(seed in 1u64..10_000, ehf in any::<bool>()) {
        let class = if ehf { GraphClass::CapEvenHoleFree } else { GraphClass::CapFourHoleOddSignable };
        let params = GeneratorParams { seed, class, ears: 2, max_ear_len: 8, ..GeneratorParams::default() };
        let inst = generate_instance(&params).unwrap();
        let v = recognize(&inst.graph, class, &Limits::default()).unwrap();
        prop_assert!(v.accepted() && v.check(&inst.graph));
    }
}
