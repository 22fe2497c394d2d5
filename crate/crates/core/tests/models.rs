//! Property tests for contractibility, minimal models, rigidity, standard
//! forms and triangulations.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wgraph::testgen::{
    random_blowups, random_diagram, random_graph, random_minimal_graph, GraphShape,
};
use wgraph::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small() -> GraphShape {
    GraphShape {
        max_vertices: 5,
        min_weight: -4,
        max_weight: 2,
        max_loops: 1,
        max_multiplicity: 2,
        non_rational_percent: 0,
    }
}

/// Contractible by exhaustive search over blowdown orders.
fn contracts_to_nothing(g: &WeightedGraph) -> bool {
    if g.is_empty() {
        return true;
    }
    g.vertex_ids()
        .filter(|v| g.weight(v).ok() == Some(-1))
        .any(|v| {
            if g.len() == 1 {
                g.degree(v).ok() == Some(0)
            } else {
                blowdown(g, v)
                    .map(|h| contracts_to_nothing(&h))
                    .unwrap_or(false)
            }
        })
}

/// A chain or cycle written in short notation.
fn segment_graph(r: &mut ChaCha8Rng) -> WeightedGraph {
    let n = r.gen_range(1..=5);
    let ws: Vec<String> = (0..n).map(|_| r.gen_range(-4..=3).to_string()).collect();
    let text = if r.gen_bool(0.5) {
        format!("[[{}]]", ws.join(","))
    } else {
        format!("(({}))", ws.join(","))
    };
    parse(&text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn contractibility_matches_search(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed), &small());
        let c = is_contractible(&g).unwrap();
        prop_assert_eq!(c, contracts_to_nothing(&g));
        // The numeric route is necessary only; branched unimodular trees escape it.
        if c {
            prop_assert!(is_contractible_numeric(&g).unwrap());
        }
        if c {
            prop_assert!(g.vertices().all(|(_, d)| d.weight < 0));
            for (_, a, b) in g.edges() {
                prop_assert!(!(g.weight(a).unwrap() == -1 && g.weight(b).unwrap() == -1));
            }
            for v in g.vertex_ids().filter(|v| g.weight(v).unwrap() == -1) {
                prop_assert!(g.is_at_most_linear(v));
            }
        }
    }

    #[test]
    fn minimal_models_are_minimal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, &GraphShape::default());
        let k = r.gen_range(0..6);
        let (_, top) = random_blowups(&mut r, &g, k).unwrap();
        let contractible = is_contractible(&top).unwrap();
        for policy in [Policy::SmallestId, Policy::LargestId] {
            match minimal_model(&top, &policy) {
                Ok((m, p)) => {
                    prop_assert!(!contractible);
                    prop_assert!(m.is_minimal());
                    prop_assert_eq!(canonical_key(&p.target()), canonical_key(&m));
                }
                Err(Error::Invalid(_)) => prop_assert!(contractible),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn rigid_implies_surface_rigid(seed in any::<u64>()) {
        let g = random_minimal_graph(&mut rng(seed), &GraphShape { max_vertices: 6, ..GraphShape::default() });
        let Ok(v) = is_surface_rigid(&g) else { return Ok(()) };
        prop_assert_eq!(v.birationally_rigid, is_birationally_rigid(&g).unwrap());
        if v.birationally_rigid {
            prop_assert!(v.surface_rigid);
        }
        prop_assert_eq!(v.a1_sequence.is_some(), !v.surface_rigid);
        if let Some(seq) = v.a1_sequence {
            let trace = apply(&g, &seq).unwrap();
            prop_assert!(has_zero_tip(trace.last().unwrap()));
        }
    }

    #[test]
    fn standard_forms_replay(seed in any::<u64>()) {
        let g = segment_graph(&mut rng(seed));
        if !g.is_minimal() {
            prop_assert!(matches!(standard_form(&g), Err(Error::NotMinimal)));
            return Ok(());
        }
        let sf = standard_form(&g).unwrap();
        let end = apply(&g, &sf.reduction).unwrap().pop().unwrap();
        prop_assert!(are_isomorphic(&end, &sf.graph).is_some());
        let (a, b) = (inertia(&g), inertia(&sf.graph));
        prop_assert_eq!((a.plus, a.zero), (b.plus, b.zero));
        let mut ws = vec![0; sf.zeros];
        ws.extend(&sf.tail);
        match sf.shape {
            Shape::Linear => prop_assert!(standard::is_standard_linear(&ws)),
            Shape::Circular => prop_assert!(standard::standard_circular_rotation(&ws).is_some()),
        }
    }

    #[test]
    fn random_diagrams_satisfy_the_lemma(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_minimal_graph(&mut r, &GraphShape { max_vertices: 5, ..GraphShape::default() });
        let k = r.gen_range(1..6);
        let d = random_diagram(&mut r, &g, k).unwrap();
        prop_assert!(d.is_relatively_minimal());
        prop_assert!(check_graph_lemma(&d).unwrap().pass());
        if is_admissible_mod_earrings(&g).unwrap() {
            let (g1, g2) = d.ends();
            prop_assert!(are_isomorphic(&g1, &g2).is_some());
        }
    }

    #[test]
    fn triangulations_glue_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut g = parse("((0,0))").unwrap();
        let k = r.gen_range(1..=6);
        for _ in 0..k {
            let es: Vec<EdgeId> = g.edge_ids().cloned().collect();
            let e = es[r.gen_range(0..es.len())].clone();
            g = inner_blowup(&g, &e).unwrap().0;
        }
        let t = triangulate_circular(&g).unwrap().expect("blowups of ((0,0)) triangulate");
        prop_assert_eq!(t.triangles.len(), k);
        prop_assert!(t.check(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn unique_models_enumerate_once(seed in any::<u64>()) {
        let g = random_minimal_graph(&mut rng(seed), &GraphShape { max_vertices: 3, min_weight: -3, max_weight: 1, max_loops: 1, max_multiplicity: 1, non_rational_percent: 0 });
        if has_unique_minimal_model(&g).unwrap() {
            let e = enumerate_minimal_models(&g, &Budget { max_nodes: 400, ..Budget::default() }).unwrap();
            prop_assert_eq!(e.classes.len(), 1);
            prop_assert!(e.complete);
        }
    }
}
