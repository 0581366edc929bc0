use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::instance::Instance;
use crate::patterns::{find_triangle, FamilySpec};

/// One original edge `u v` (u < v) turned into the path `u - near_lo - near_hi - v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdividedEdge {
    pub edge: EdgeKey,
    pub near_lo: VertexId,
    pub near_hi: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionTrace {
    pub paths: Vec<SubdividedEdge>,
    /// Added to the vertex-cover budget: one per original edge.
    pub k_offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarTrace {
    /// Pendant leaves attached to each vertex, keyed by the vertex.
    pub leaves: BTreeMap<VertexId, Vec<VertexId>>,
}

impl StarTrace {
    pub fn center_of(&self, leaf: VertexId) -> Option<VertexId> {
        self.leaves
            .iter()
            .find(|(_, ls)| ls.contains(&leaf))
            .map(|(&c, _)| c)
    }
}

/// Everything needed to map a solution of the reduced instance back to a vertex
/// cover of the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub s: usize,
    pub input_k: usize,
    pub input: Graph,
    pub subdivision: SubdivisionTrace,
    pub stars: StarTrace,
    pub universal: VertexId,
    /// Budget of the reduced instance, `input_k + |E(input)|`.
    pub budget: usize,
}

/// Replaces every edge by a path of three edges. The vertex-cover budget grows by
/// the number of edges.
pub fn subdivide_twice(g: &Graph, k: usize) -> Result<(Graph, usize, SubdivisionTrace)> {
    let mut out = g.clone();
    let mut paths = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        out.remove_edge_key(e);
        let near_lo = out.add_vertex();
        let near_hi = out.add_vertex();
        out.add_edge(e.lo(), near_lo)?;
        out.add_edge(near_lo, near_hi)?;
        out.add_edge(near_hi, e.hi())?;
        paths.push(SubdividedEdge {
            edge: e,
            near_lo,
            near_hi,
        });
    }
    let m = g.edge_count();
    Ok((out, k + m, SubdivisionTrace { paths, k_offset: m }))
}

/// Gives every vertex `c` fresh pendant neighbors, vertices in ascending order.
pub fn attach_stars(g: &Graph, c: usize) -> Result<(Graph, StarTrace)> {
    if c == 0 {
        return Err(Error::InvalidParameter(
            "attach_stars needs at least one leaf".into(),
        ));
    }
    let mut out = g.clone();
    let mut leaves = BTreeMap::new();
    for v in g.vertices() {
        let ls: Vec<VertexId> = (0..c)
            .map(|_| {
                let leaf = out.add_vertex();
                out.add_edge(v, leaf).map(|_| leaf)
            })
            .collect::<Result<_>>()?;
        leaves.insert(v, ls);
    }
    Ok((out, StarTrace { leaves }))
}

/// Adds a vertex adjacent to every vertex. The input must be triangle-free so
/// that the output has no `K_4`.
pub fn add_universal(g: &Graph) -> Result<(Graph, VertexId)> {
    if let Some(t) = find_triangle(g) {
        return Err(Error::NotTriangleFree(t));
    }
    let mut out = g.clone();
    let w = out.add_vertex();
    for v in g.vertices() {
        out.add_edge(w, v)?;
    }
    Ok((out, w))
}

/// Vertex cover on `g` with budget `k` to s-diamond-free edge deletion: subdivide
/// twice, attach `s` leaves per vertex, add a universal vertex.
pub fn reduce_vc_to_sdfed(g: &Graph, k: usize, s: usize) -> Result<(Instance, ReductionTrace)> {
    let family = FamilySpec::s_diamond(s)?;
    let (sub, budget, subdivision) = subdivide_twice(g, k)?;
    let (starred, stars) = attach_stars(&sub, s)?;
    let (graph, universal) = add_universal(&starred)?;
    let trace = ReductionTrace {
        s,
        input_k: k,
        input: g.clone(),
        subdivision,
        stars,
        universal,
        budget,
    };
    Ok((Instance::new(graph, budget, family), trace))
}

impl ReductionTrace {
    /// The graph before the universal vertex was added.
    pub fn starred_graph(&self, reduced: &Graph) -> Graph {
        reduced.without_vertices(&BTreeSet::from([self.universal]))
    }

    /// The twice-subdivided graph.
    pub fn subdivided_graph(&self, reduced: &Graph) -> Graph {
        let leaves: BTreeSet<VertexId> = self.stars.leaves.values().flatten().copied().collect();
        self.starred_graph(reduced).without_vertices(&leaves)
    }
}
