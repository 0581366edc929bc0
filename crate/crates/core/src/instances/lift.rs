use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::reduction::ReductionTrace;
use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::instance::Instance;
use crate::patterns::find_induced_star;
use crate::solver::is_edit_solution;

/// Intermediate sets produced while mapping a reduced solution to a vertex cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCover {
    /// Vertices of the starred graph whose edge to the universal vertex is removed
    /// after rewriting.
    pub star_deletion: BTreeSet<VertexId>,
    /// Vertices added because the rewritten set left a large star behind. Empty
    /// for deletion solutions.
    pub repaired: Vec<VertexId>,
    /// Vertex cover of the twice-subdivided graph.
    pub subdivided_cover: BTreeSet<VertexId>,
    /// Vertex cover of the input graph.
    pub cover: BTreeSet<VertexId>,
}

/// Maps a set of toggled pairs that solves the reduced instance to a vertex cover
/// of the input graph of size at most the input budget.
///
/// Pairs not touching the universal vertex are charged to their smaller endpoint.
/// For pure deletions this never loses feasibility; for additions the remaining
/// large stars are fixed by deleting their centers, and the final size check
/// decides.
pub fn lift_solution(
    trace: &ReductionTrace,
    reduced: &Instance,
    toggles: &BTreeSet<EdgeKey>,
) -> Result<LiftedCover> {
    if toggles.len() > reduced.k || !is_edit_solution(&reduced.graph, &reduced.family, toggles) {
        return Err(Error::InvalidSolution(format!(
            "{} toggled pairs do not solve the reduced instance with budget {}",
            toggles.len(),
            reduced.k
        )));
    }
    let w = trace.universal;
    let mut star_deletion: BTreeSet<VertexId> = toggles
        .iter()
        .map(|e| e.other(w).unwrap_or(e.lo()))
        .collect();

    let starred = trace.starred_graph(&reduced.graph);
    let mut repaired = Vec::new();
    while let Some((center, _)) =
        find_induced_star(&starred.without_vertices(&star_deletion), trace.s + 1)
    {
        star_deletion.insert(center);
        repaired.push(center);
    }

    let subdivided = trace.subdivided_graph(&reduced.graph);
    let subdivided_cover: BTreeSet<VertexId> = star_deletion
        .iter()
        .map(|&v| trace.stars.center_of(v).unwrap_or(v))
        .collect();
    if let Some(e) = uncovered_edge(&subdivided, &subdivided_cover) {
        return Err(Error::invariant(format!(
            "lifted set misses subdivided edge {e}"
        )));
    }

    let mut cover: BTreeSet<VertexId> = subdivided_cover
        .iter()
        .copied()
        .filter(|v| trace.input.contains(*v))
        .collect();
    for p in &trace.subdivision.paths {
        if !cover.contains(&p.edge.lo()) && !cover.contains(&p.edge.hi()) {
            cover.insert(p.edge.lo());
        }
    }
    if let Some(e) = uncovered_edge(&trace.input, &cover) {
        return Err(Error::invariant(format!("lifted cover misses edge {e}")));
    }
    if cover.len() > trace.input_k {
        return Err(Error::InvalidSolution(format!(
            "lifted cover has {} vertices, budget is {}",
            cover.len(),
            trace.input_k
        )));
    }
    Ok(LiftedCover {
        star_deletion,
        repaired,
        subdivided_cover,
        cover,
    })
}

fn uncovered_edge(g: &Graph, cover: &BTreeSet<VertexId>) -> Option<EdgeKey> {
    g.edges()
        .find(|e| !cover.contains(&e.lo()) && !cover.contains(&e.hi()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::reduce_vc_to_sdfed;
    use crate::solver::{search_min_edge_modification, EdgeMode};

    #[test]
    fn lifts_path_cover() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (inst, trace) = reduce_vc_to_sdfed(&p3, 1, 1).unwrap();
        let (sol, _) =
            search_min_edge_modification(&inst.graph, &inst.family, EdgeMode::Delete, inst.k)
                .unwrap();
        let lifted = lift_solution(&trace, &inst, &sol.unwrap()).unwrap();
        assert_eq!(lifted.cover, BTreeSet::from([VertexId(1)]));
        assert!(lifted.repaired.is_empty());
    }

    #[test]
    fn rejects_non_solutions() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (inst, trace) = reduce_vc_to_sdfed(&edge, 1, 1).unwrap();
        let err = lift_solution(&trace, &inst, &BTreeSet::new()).unwrap_err();
        assert!(matches!(err, Error::InvalidSolution(_)));
    }
}
