use std::collections::BTreeSet;

use super::{FamilySpec, Pattern, PatternOccurrence};
use crate::graph::{EdgeKey, Graph, VertexId};

/// The lexicographically first induced occurrence of any pattern in `fam`, trying
/// the s-diamond before the clique.
pub fn find_induced_occurrence(g: &Graph, fam: &FamilySpec) -> Option<PatternOccurrence> {
    find_occurrence_avoiding(g, fam, &BTreeSet::new())
}

pub fn is_family_free(g: &Graph, fam: &FamilySpec) -> bool {
    find_induced_occurrence(g, fam).is_none()
}

/// Like [`find_induced_occurrence`], restricted to occurrences none of whose edges
/// lie in `avoid`. The occurrence is still induced in `g` itself.
pub fn find_occurrence_avoiding(
    g: &Graph,
    fam: &FamilySpec,
    avoid: &BTreeSet<EdgeKey>,
) -> Option<PatternOccurrence> {
    fam.patterns().into_iter().find_map(|p| match p {
        Pattern::SDiamond(s) => first_s_diamond(g, s, avoid),
        Pattern::Clique(t) => first_clique(g, t, avoid),
    })
}

/// Every induced occurrence of every pattern, s-diamonds first, each group sorted
/// by vertex tuple.
pub fn induced_occurrences(g: &Graph, fam: &FamilySpec) -> Vec<PatternOccurrence> {
    let mut out = Vec::new();
    for p in fam.patterns() {
        let start = out.len();
        match p {
            Pattern::SDiamond(s) => {
                for e in g.edges() {
                    let (x, y) = e.endpoints();
                    let common: Vec<VertexId> = g.common_neighbors(x, y).into_iter().collect();
                    let mut chosen = Vec::new();
                    each_independent(g, &common, s + 1, 0, &mut chosen, &mut |set| {
                        out.push(s_diamond_occurrence(s, x, y, set));
                    });
                }
            }
            Pattern::Clique(t) => {
                let vs: Vec<VertexId> = g.vertices().collect();
                let mut chosen = Vec::new();
                each_clique(g, &vs, t, &mut chosen, &mut |set| {
                    out.push(clique_occurrence(t, set));
                });
            }
        }
        out[start..].sort_by_key(PatternOccurrence::key);
    }
    out
}

/// An induced `K_{1,s}`: a center and `s` pairwise non-adjacent neighbors, the
/// lexicographically first by (center, leaves).
pub fn find_induced_star(g: &Graph, s: usize) -> Option<(VertexId, BTreeSet<VertexId>)> {
    g.vertices().find_map(|v| {
        let nbrs: Vec<VertexId> = g.neighbors(v).iter().copied().collect();
        first_independent(g, &nbrs, s).map(|leaves| (v, leaves.into_iter().collect()))
    })
}

pub fn find_triangle(g: &Graph) -> Option<[VertexId; 3]> {
    g.edges().find_map(|e| {
        let (x, y) = e.endpoints();
        g.neighbors(x)
            .intersection(g.neighbors(y))
            .next()
            .map(|&z| {
                let mut t = [x, y, z];
                t.sort();
                t
            })
    })
}

fn first_s_diamond(g: &Graph, s: usize, avoid: &BTreeSet<EdgeKey>) -> Option<PatternOccurrence> {
    let allowed = |a: VertexId, b: VertexId| !avoid.contains(&EdgeKey::new(a, b));
    let mut best: Option<PatternOccurrence> = None;
    for e in g.edges() {
        if avoid.contains(&e) {
            continue;
        }
        let (x, y) = e.endpoints();
        let common: Vec<VertexId> = g
            .neighbors(x)
            .intersection(g.neighbors(y))
            .copied()
            .filter(|&c| allowed(x, c) && allowed(y, c))
            .collect();
        // For a fixed middle edge, merging with {x, y} preserves the order of the
        // independent sets, so the first one found is the best for this edge.
        if let Some(set) = first_independent(g, &common, s + 1) {
            let occ = s_diamond_occurrence(s, x, y, &set);
            if best.as_ref().is_none_or(|b| occ.key() < b.key()) {
                best = Some(occ);
            }
        }
    }
    best
}

fn first_clique(g: &Graph, t: usize, avoid: &BTreeSet<EdgeKey>) -> Option<PatternOccurrence> {
    fn extend(
        g: &Graph,
        t: usize,
        avoid: &BTreeSet<EdgeKey>,
        chosen: &mut Vec<VertexId>,
        cands: &[VertexId],
    ) -> bool {
        if chosen.len() == t {
            return true;
        }
        for (i, &v) in cands.iter().enumerate() {
            if cands.len() - i < t - chosen.len() {
                break;
            }
            let next: Vec<VertexId> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(v, u) && !avoid.contains(&EdgeKey::new(v, u)))
                .collect();
            chosen.push(v);
            if extend(g, t, avoid, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut chosen = Vec::with_capacity(t);
    extend(g, t, avoid, &mut chosen, &vs).then(|| clique_occurrence(t, &chosen))
}

/// First independent `size`-subset of `cands` (ascending) in lexicographic order.
fn first_independent(g: &Graph, cands: &[VertexId], size: usize) -> Option<Vec<VertexId>> {
    fn go(
        g: &Graph,
        cands: &[VertexId],
        size: usize,
        from: usize,
        chosen: &mut Vec<VertexId>,
    ) -> bool {
        if chosen.len() == size {
            return true;
        }
        for i in from..cands.len() {
            if cands.len() - i < size - chosen.len() {
                break;
            }
            let v = cands[i];
            if chosen.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            chosen.push(v);
            if go(g, cands, size, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    go(g, cands, size, 0, &mut chosen).then_some(chosen)
}

fn each_independent(
    g: &Graph,
    cands: &[VertexId],
    size: usize,
    from: usize,
    chosen: &mut Vec<VertexId>,
    visit: &mut dyn FnMut(&[VertexId]),
) {
    if chosen.len() == size {
        visit(chosen);
        return;
    }
    for i in from..cands.len() {
        let v = cands[i];
        if chosen.iter().any(|&u| g.has_edge(u, v)) {
            continue;
        }
        chosen.push(v);
        each_independent(g, cands, size, i + 1, chosen, visit);
        chosen.pop();
    }
}

fn each_clique(
    g: &Graph,
    cands: &[VertexId],
    t: usize,
    chosen: &mut Vec<VertexId>,
    visit: &mut dyn FnMut(&[VertexId]),
) {
    if chosen.len() == t {
        visit(chosen);
        return;
    }
    for (i, &v) in cands.iter().enumerate() {
        let next: Vec<VertexId> = cands[i + 1..]
            .iter()
            .copied()
            .filter(|&u| g.has_edge(v, u))
            .collect();
        chosen.push(v);
        each_clique(g, &next, t, chosen, visit);
        chosen.pop();
    }
}

fn s_diamond_occurrence(s: usize, x: VertexId, y: VertexId, set: &[VertexId]) -> PatternOccurrence {
    let mut vertices: BTreeSet<VertexId> = set.iter().copied().collect();
    vertices.insert(x);
    vertices.insert(y);
    let mut edges = BTreeSet::from([EdgeKey::new(x, y)]);
    for &c in set {
        edges.insert(EdgeKey::new(x, c));
        edges.insert(EdgeKey::new(y, c));
    }
    PatternOccurrence {
        kind: Pattern::SDiamond(s),
        vertices,
        edges,
    }
}

fn clique_occurrence(t: usize, set: &[VertexId]) -> PatternOccurrence {
    let mut edges = BTreeSet::new();
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            edges.insert(EdgeKey::new(a, b));
        }
    }
    PatternOccurrence {
        kind: Pattern::Clique(t),
        vertices: set.iter().copied().collect(),
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> BTreeSet<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    fn k(n: usize) -> Graph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn diamond_is_found() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let occ = find_induced_occurrence(&g, &FamilySpec::diamond()).unwrap();
        assert_eq!(occ.kind, Pattern::SDiamond(1));
        assert_eq!(occ.vertices, ids(&[0, 1, 2, 3]));
        assert_eq!(occ.edges.len(), 5);
        assert!(!occ.edges.contains(&EdgeKey::new(0, 3)));
    }

    #[test]
    fn k4_has_no_induced_diamond() {
        assert!(find_induced_occurrence(&k(4), &FamilySpec::diamond()).is_none());
    }

    #[test]
    fn two_diamond() {
        // K2 on {0,1} joined to independent {2,3,4}
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
            .unwrap();
        let fam = FamilySpec::s_diamond(2).unwrap();
        let occ = find_induced_occurrence(&g, &fam).unwrap();
        assert_eq!(occ.vertices.len(), 5);
        assert_eq!(occ.edges.len(), 7);
    }

    #[test]
    fn family_freeness_examples() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        assert!(is_family_free(&c4, &FamilySpec::diamond()));
        let fam = FamilySpec::diamond_clique(4).unwrap();
        let occ = find_induced_occurrence(&k(5), &fam).unwrap();
        assert_eq!(occ.kind, Pattern::Clique(4));
        assert_eq!(occ.vertices, ids(&[0, 1, 2, 3]));
    }

    #[test]
    fn lex_first_across_middle_edges() {
        // Two diamonds: {0,5,6,7} with middle 5-6 and {1,2,3,4} with middle 2-3.
        let g = Graph::from_edges(
            8,
            &[
                (5, 6),
                (0, 5),
                (0, 6),
                (7, 5),
                (7, 6),
                (2, 3),
                (1, 2),
                (1, 3),
                (4, 2),
                (4, 3),
            ],
        )
        .unwrap();
        let occ = find_induced_occurrence(&g, &FamilySpec::diamond()).unwrap();
        assert_eq!(occ.vertices, ids(&[0, 5, 6, 7]));
        assert_eq!(induced_occurrences(&g, &FamilySpec::diamond()).len(), 2);
    }

    #[test]
    fn stars_and_triangles() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            find_induced_star(&star, 3),
            Some((VertexId(0), ids(&[1, 2, 3])))
        );
        assert_eq!(find_triangle(&star), None);
        assert_eq!(
            find_triangle(&k(4)),
            Some([VertexId(0), VertexId(1), VertexId(2)])
        );
    }
}
