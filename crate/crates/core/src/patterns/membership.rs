use super::FamilySpec;
use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};

/// Whether `e` lies in a (not necessarily induced) copy of a pattern in `fam`.
///
/// For the diamond this asks for two further vertices `a, b` such that
/// `{x, y, a, b}` spans at least five edges. Either both are common neighbors of
/// `x` and `y`, or one is and the other touches it and one of `x, y`.
pub fn is_core_member_edge(g: &Graph, e: EdgeKey, fam: &FamilySpec) -> Result<bool> {
    fam.require_reduction()?;
    if !g.has_edge_key(e) {
        return Err(Error::MissingEdge(e));
    }
    let (x, y) = e.endpoints();
    let (nx, ny) = (g.neighbors(x), g.neighbors(y));
    let common: Vec<VertexId> = nx.intersection(ny).copied().collect();
    if common.len() >= 2 {
        return Ok(true);
    }
    if let Some(&a) = common.first() {
        let touches = g
            .neighbors(a)
            .iter()
            .any(|&b| b != x && b != y && (nx.contains(&b) || ny.contains(&b)));
        if touches {
            return Ok(true);
        }
    }
    if let Some(t) = fam.t() {
        return Ok(contains_clique(g, &common, t - 2));
    }
    Ok(false)
}

/// A vertex is core exactly when one of its edges is: every vertex of a diamond
/// or a clique with `t >= 3` has an incident pattern edge.
pub fn is_core_member_vertex(g: &Graph, v: VertexId, fam: &FamilySpec) -> Result<bool> {
    fam.require_reduction()?;
    for &u in g.try_neighbors(v)? {
        if is_core_member_edge(g, EdgeKey::new(v, u), fam)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn contains_clique(g: &Graph, cands: &[VertexId], size: usize) -> bool {
    if size == 0 {
        return true;
    }
    cands.iter().enumerate().any(|(i, &v)| {
        if cands.len() - i < size {
            return false;
        }
        let next: Vec<VertexId> = cands[i + 1..]
            .iter()
            .copied()
            .filter(|&u| g.has_edge(u, v))
            .collect();
        contains_clique(g, &next, size - 1)
    })
}
