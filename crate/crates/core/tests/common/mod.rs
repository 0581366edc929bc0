//! Slow, obviously-correct reference implementations shared by the integration
//! tests. Nothing here calls into the library's pattern search.
#![allow(dead_code)]

use std::collections::BTreeSet;

use diamond_kernel::{EdgeKey, FamilySpec, Graph, Pattern, VertexId};
use proptest::prelude::*;

pub fn subsets<T: Copy>(items: &[T], size: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(items: &[T], size: usize, from: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

fn edges_within(g: &Graph, vs: &[VertexId]) -> usize {
    let mut m = 0;
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            m += usize::from(g.has_edge(a, b));
        }
    }
    m
}

/// Whether `vs` induces the pattern, decided from the degree sequence: an
/// s-diamond is the only graph on s+3 vertices with two adjacent vertices of
/// degree s+2 and all others of degree 2 forming an independent set.
pub fn induces(g: &Graph, vs: &[VertexId], p: Pattern) -> bool {
    let deg = |v: VertexId| vs.iter().filter(|&&u| g.has_edge(u, v)).count();
    match p {
        Pattern::Clique(t) => vs.len() == t && edges_within(g, vs) == t * (t - 1) / 2,
        Pattern::SDiamond(s) => {
            if vs.len() != s + 3 || edges_within(g, vs) != 2 * s + 3 {
                return false;
            }
            let hubs: Vec<VertexId> = vs.iter().copied().filter(|&v| deg(v) == s + 2).collect();
            hubs.len() == 2
                && g.has_edge(hubs[0], hubs[1])
                && vs
                    .iter()
                    .filter(|v| !hubs.contains(v))
                    .all(|&v| deg(v) == 2)
        }
    }
}

pub fn all_induced(g: &Graph, fam: &FamilySpec) -> Vec<(Pattern, Vec<VertexId>)> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for p in fam.patterns() {
        for sub in subsets(&vs, p.vertex_count()) {
            if induces(g, &sub, p) {
                out.push((p, sub));
            }
        }
    }
    out
}

pub fn is_free(g: &Graph, fam: &FamilySpec) -> bool {
    all_induced(g, fam).is_empty()
}

/// Edge lies in a subgraph (not necessarily induced) isomorphic to a member of
/// the family. Only diamonds and cliques.
pub fn core_edge(g: &Graph, e: EdgeKey, fam: &FamilySpec) -> bool {
    let others: Vec<VertexId> = g.vertices().filter(|&v| !e.contains(v)).collect();
    let in_diamond = subsets(&others, 2).into_iter().any(|pair| {
        let vs = [e.lo(), e.hi(), pair[0], pair[1]];
        edges_within(g, &vs) >= 5
    });
    let in_clique = fam.t().is_some_and(|t| {
        subsets(&others, t - 2).into_iter().any(|rest| {
            let mut vs = rest.clone();
            vs.extend([e.lo(), e.hi()]);
            edges_within(g, &vs) == t * (t - 1) / 2
        })
    });
    in_diamond || in_clique
}

/// Smallest deletion set size at most `kmax`, by trying every edge subset.
pub fn min_deletion(g: &Graph, fam: &FamilySpec, kmax: usize) -> Option<usize> {
    let edges: Vec<EdgeKey> = g.edges().collect();
    (0..=kmax.min(edges.len())).find(|&size| {
        subsets(&edges, size)
            .into_iter()
            .any(|del| is_free(&g.without_edges(&del), fam))
    })
}

pub fn max_matching_size(g: &Graph) -> usize {
    fn go(edges: &[EdgeKey], used: &mut BTreeSet<VertexId>) -> usize {
        let Some((first, rest)) = edges.split_first() else {
            return 0;
        };
        let skip = go(rest, used);
        if used.contains(&first.lo()) || used.contains(&first.hi()) {
            return skip;
        }
        used.insert(first.lo());
        used.insert(first.hi());
        let take = 1 + go(rest, used);
        used.remove(&first.lo());
        used.remove(&first.hi());
        skip.max(take)
    }
    let edges: Vec<EdgeKey> = g.edges().collect();
    go(&edges, &mut BTreeSet::new())
}

pub fn min_vertex_cover(g: &Graph) -> usize {
    let vs: Vec<VertexId> = g.vertices().collect();
    (0..=vs.len())
        .find(|&size| {
            subsets(&vs, size).into_iter().any(|c| {
                g.edges()
                    .all(|e| c.contains(&e.lo()) || c.contains(&e.hi()))
            })
        })
        .unwrap()
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::with_vertices(n);
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits[i] {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
            i += 1;
        }
    }
    g
}

/// Random graphs on `lo..=hi` vertices.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Random graphs biased toward dense ones, where diamonds are common.
pub fn arb_dense_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.65), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn arb_family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::diamond()),
        Just(FamilySpec::diamond_clique(4).unwrap())
    ]
}
