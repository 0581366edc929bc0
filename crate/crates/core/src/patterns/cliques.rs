use std::collections::BTreeSet;

use super::{find_induced_occurrence, FamilySpec};
use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};

/// The maximal-clique partition of a diamond-free graph.
///
/// In a diamond-free graph the common neighbors of an edge form a clique, so each
/// edge lies in exactly one maximal clique: its endpoints plus their common
/// neighbors. Isolated vertices become singletons. Sets are returned sorted.
pub fn clique_partition(g: &Graph) -> Result<Vec<BTreeSet<VertexId>>> {
    if let Some(witness) = find_induced_occurrence(g, &FamilySpec::diamond()) {
        return Err(Error::NotDiamondFree {
            witness: Box::new(witness),
        });
    }
    let mut covered: BTreeSet<EdgeKey> = BTreeSet::new();
    let mut cliques = Vec::new();
    for e in g.edges() {
        if covered.contains(&e) {
            continue;
        }
        let (x, y) = e.endpoints();
        let mut clique = g.common_neighbors(x, y);
        clique.insert(x);
        clique.insert(y);
        let members: Vec<VertexId> = clique.iter().copied().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                covered.insert(EdgeKey::new(a, b));
            }
        }
        cliques.push(clique);
    }
    cliques.extend(
        g.vertices()
            .filter(|&v| g.degree(v) == 0)
            .map(|v| BTreeSet::from([v])),
    );
    cliques.sort();
    Ok(cliques)
}
