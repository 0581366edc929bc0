mod common;

use std::collections::BTreeSet;

use common::*;
use diamond_kernel::instances::*;
use diamond_kernel::patterns::{
    find_induced_star, greedy_packing, induced_occurrences, PackingResult,
};
use diamond_kernel::phase1::run_phase1;
use diamond_kernel::phase2::kernelize_dfed;
use diamond_kernel::solver::*;
use diamond_kernel::{EdgeKey, FamilySpec, Graph, Instance, Pattern, VertexId};
use proptest::prelude::*;

fn vc_feasible(g: &Graph, k: usize) -> bool {
    brute_force_vertex_deletion(g, VertexPattern::VertexCover, k)
        .unwrap()
        .is_some()
}

fn star_free_feasible(g: &Graph, s: usize, k: usize) -> bool {
    search_min_vertex_deletion(g, VertexPattern::Star(s + 1), k)
        .unwrap()
        .0
        .is_some()
}

/// Checks K4-freeness and that every induced s-diamond has the universal vertex
/// at the middle with a star of the pre-universal graph around it.
fn assert_universal_structure(inst: &Instance, trace: &ReductionTrace) {
    let g = &inst.graph;
    let s = trace.s;
    assert!(is_free(g, &FamilySpec::new(None, Some(4)).unwrap()));
    let starred = trace.starred_graph(g);
    for o in induced_occurrences(g, &inst.family) {
        assert!(o.vertices.contains(&trace.universal), "{o:?} misses w");
        let rest: Vec<VertexId> = o
            .vertices
            .iter()
            .copied()
            .filter(|&v| v != trace.universal)
            .collect();
        assert!(induces_star(&starred, &rest, s + 1));
    }
}

fn induces_star(g: &Graph, vs: &[VertexId], leaves: usize) -> bool {
    vs.len() == leaves + 1
        && vs.iter().any(|&c| {
            let others: Vec<VertexId> = vs.iter().copied().filter(|&v| v != c).collect();
            others.iter().all(|&u| g.has_edge(c, u))
                && others
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| others[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
        })
}

#[test]
fn gnp_golden() {
    let g = gen_gnp(8, 0.4, 7).unwrap();
    assert_eq!(g.edge_count(), 16);
    let expected = [
        (0, 1),
        (0, 2),
        (0, 6),
        (0, 7),
        (1, 3),
        (1, 5),
        (1, 6),
        (2, 3),
        (2, 6),
        (2, 7),
        (3, 4),
        (3, 5),
        (4, 5),
        (4, 6),
        (4, 7),
        (6, 7),
    ];
    assert_eq!(g, Graph::from_edges(8, &expected).unwrap());
}

#[test]
fn planted_instances_are_yes_instances() {
    let base = CliqueGluing {
        n: 10,
        cliques: vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6], vec![6, 7, 8, 9]],
    };
    let inst = gen_planted_yes(&base, 2, 11).unwrap();
    let added: BTreeSet<EdgeKey> = inst
        .graph
        .edges()
        .filter(|e| !base.build().unwrap().has_edge_key(*e))
        .collect();
    assert_eq!(
        added,
        BTreeSet::from([EdgeKey::new(1, 6), EdgeKey::new(1, 7)])
    );
    assert_eq!(min_deletion(&inst.graph, &inst.family, 2), Some(1));

    let triangles = CliqueGluing {
        n: 6,
        cliques: vec![vec![0, 1, 2], vec![3, 4, 5]],
    };
    for seed in 0..10 {
        let one = gen_planted_yes(&triangles, 1, seed).unwrap();
        assert!(brute_force_min_deletion(&one.graph, &one.family, 1)
            .unwrap()
            .is_some());
    }
    let zero = gen_planted_yes(&triangles, 0, 0).unwrap();
    assert!(is_free(&zero.graph, &zero.family));
}

#[test]
fn planted_random_bases() {
    for seed in 0..30 {
        let base = CliqueGluing::random(9, 4, seed).unwrap();
        let k = (seed % 3) as usize;
        let inst = gen_planted_yes(&base, k, seed).unwrap();
        assert_eq!(inst.k, k);
        assert!(brute_force_min_deletion(&inst.graph, &inst.family, k)
            .unwrap()
            .is_some());
    }
}

#[test]
fn hard_structure_audit() {
    for k in 2..=6 {
        let inst = gen_hard_structure(k).unwrap();
        assert_eq!(inst.graph.vertex_count(), k * k + 4);
        assert_eq!(inst.k, k);
        let p1 = run_phase1(inst.clone()).unwrap();
        assert!(
            p1.log.is_empty(),
            "phase 1 fired on k = {k}: {:?}",
            p1.log.counts()
        );
        let kernel = kernelize_dfed(inst.clone()).unwrap();
        assert_eq!(kernel.kernel(), Some(&inst));
    }
    let h3 = gen_hard_structure(3).unwrap();
    let PackingResult::Packed(p) = greedy_packing(&h3.graph, 3, &h3.family).unwrap() else {
        panic!("hard structure exceeds its budget");
    };
    assert_eq!(p.occurrences.len(), 1);
    for o in induced_occurrences(&h3.graph, &h3.family) {
        assert!(o.edges.iter().any(|e| p.edges.contains(e)));
    }
}

#[test]
fn subdivided_k4() {
    let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let (sub, k, trace) = subdivide_twice(&k4, 2).unwrap();
    assert_eq!((sub.vertex_count(), k, trace.paths.len()), (16, 8, 6));
    for budget in 0..=4 {
        assert_eq!(
            vc_feasible(&k4, budget),
            vc_feasible(&sub, budget + 6),
            "budget {budget}"
        );
    }
}

#[test]
fn starred_path() {
    let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let (out, _) = attach_stars(&p4, 1).unwrap();
    assert_eq!(out.vertex_count(), 8);
    for k in 0..=3 {
        let brute = brute_force_vertex_deletion(&out, VertexPattern::Star(2), k)
            .unwrap()
            .is_some();
        assert_eq!(vc_feasible(&p4, k), brute, "k = {k}");
    }
}

#[test]
fn wheel_is_k4_free() {
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let (w5, w) = add_universal(&c5).unwrap();
    assert_eq!((w5.degree(w), w5.edge_count()), (5, 10));
    assert!(is_free(&w5, &FamilySpec::new(None, Some(4)).unwrap()));
}

#[test]
fn single_edge_pipeline() {
    let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let (inst, trace) = reduce_vc_to_sdfed(&edge, 1, 1).unwrap();
    assert_eq!(
        (inst.graph.vertex_count(), inst.graph.edge_count(), inst.k),
        (9, 15, 2)
    );
    let (del, sets) = optimal_deletion_sets(&inst.graph, &inst.family, 2, DEFAULT_ORACLE_CAP, true)
        .unwrap()
        .unwrap();
    let edit = brute_force_min_editing(&inst.graph, &inst.family, 2).unwrap();
    assert_eq!(Some(del), edit);
    assert!(del <= 2);
    for s in &sets {
        let lifted = lift_solution(&trace, &inst, s).unwrap();
        assert_eq!(lifted.cover.len(), 1);
        assert!(lifted.repaired.is_empty());
    }
    assert_universal_structure(&inst, &trace);
}

#[test]
fn triangle_pipeline() {
    let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let (inst, trace) = reduce_vc_to_sdfed(&tri, 1, 1).unwrap();
    assert_eq!(inst.k, 4);
    assert_eq!(
        brute_force_min_deletion(&inst.graph, &inst.family, 4).unwrap(),
        None
    );
    let (edit, _) = search_edge_modification(&inst.graph, &inst.family, EdgeMode::Edit, 4).unwrap();
    assert!(edit.is_none());

    let (inst2, trace2) = reduce_vc_to_sdfed(&tri, 2, 1).unwrap();
    assert_eq!(inst2.k, 5);
    let (size, sets) =
        optimal_deletion_sets(&inst2.graph, &inst2.family, 5, DEFAULT_ORACLE_CAP, true)
            .unwrap()
            .unwrap();
    assert_eq!(size, 5);
    for s in &sets {
        let lifted = lift_solution(&trace2, &inst2, s).unwrap();
        assert!(lifted.cover.len() <= 2);
    }
    assert_universal_structure(&inst, &trace);
}

#[test]
fn trivial_pipelines() {
    for s in 1..=3 {
        let (inst, trace) = reduce_vc_to_sdfed(&Graph::with_vertices(1), 0, s).unwrap();
        assert!(solve_branching(&inst).is_feasible());
        let lifted = lift_solution(&trace, &inst, &BTreeSet::new()).unwrap();
        assert!(lifted.cover.is_empty());
    }
    let (inst, trace) = reduce_vc_to_sdfed(&Graph::with_vertices(3), 0, 1).unwrap();
    assert!(lift_solution(&trace, &inst, &BTreeSet::new())
        .unwrap()
        .cover
        .is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn subdivision_size_law(g in arb_graph(0, 8), k in 0usize..4) {
        let (sub, k2, _) = subdivide_twice(&g, k).unwrap();
        prop_assert_eq!(sub.vertex_count(), g.vertex_count() + 2 * g.edge_count());
        prop_assert_eq!(sub.edge_count(), 3 * g.edge_count());
        prop_assert_eq!(k2, k + g.edge_count());
        prop_assert!(diamond_kernel::patterns::find_triangle(&sub).is_none());
    }

    #[test]
    fn reduction_stages_are_equivalent(g in arb_graph(1, 4), k in 0usize..=3, s in 1usize..=2) {
        let (inst, trace) = reduce_vc_to_sdfed(&g, k, s).unwrap();
        let expected = min_vertex_cover(&g) <= k;
        let sub = trace.subdivided_graph(&inst.graph);
        let starred = trace.starred_graph(&inst.graph);
        prop_assert_eq!(vc_feasible(&sub, inst.k), expected);
        prop_assert_eq!(star_free_feasible(&starred, s, inst.k), expected);
        let (del, _) = search_edge_modification(&inst.graph, &inst.family, EdgeMode::Delete, inst.k).unwrap();
        prop_assert_eq!(del.is_some(), expected);
        if let Some(sol) = del {
            let lifted = lift_solution(&trace, &inst, &sol).unwrap();
            prop_assert!(lifted.cover.len() <= k);
            prop_assert!(lifted.repaired.is_empty());
            prop_assert!(g.edges().all(|e| lifted.cover.contains(&e.lo()) || lifted.cover.contains(&e.hi())));
        } else {
            let (edit, _) = search_edge_modification(&inst.graph, &inst.family, EdgeMode::Edit, inst.k).unwrap();
            prop_assert!(edit.is_none());
        }
        assert_universal_structure(&inst, &trace);
    }
}

#[test]
fn stars_in_the_starred_graph_are_the_only_witnesses() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let (inst, trace) = reduce_vc_to_sdfed(&g, 1, 2).unwrap();
    let starred = trace.starred_graph(&inst.graph);
    assert!(find_induced_star(&starred, 3).is_some());
    assert_eq!(inst.family.patterns(), vec![Pattern::SDiamond(2)]);
}
