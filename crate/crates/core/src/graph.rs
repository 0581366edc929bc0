//! Undirected simple graphs over stable vertex ids.
//!
//! Vertices are kept in ordered maps so that every iteration (vertices, neighbors,
//! edges) runs in ascending id order. All rules, searches and generators rely on
//! this to be reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex identifier. Ids are never renumbered or recycled within a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

/// An unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct EdgeKey {
    lo: VertexId,
    hi: VertexId,
}

impl EdgeKey {
    /// Panics if `a == b`.
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        let (a, b) = (a.into(), b.into());
        Self::try_new(a, b).unwrap_or_else(|_| panic!("edge key with equal endpoints {a}"))
    }

    pub fn try_new(a: VertexId, b: VertexId) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(EdgeKey { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(EdgeKey { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    pub fn lo(&self) -> VertexId {
        self.lo
    }

    pub fn hi(&self) -> VertexId {
        self.hi
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl From<EdgeKey> for [usize; 2] {
    fn from(e: EdgeKey) -> Self {
        [e.lo.0, e.hi.0]
    }
}

impl TryFrom<[usize; 2]> for EdgeKey {
    type Error = Error;

    fn try_from(pair: [usize; 2]) -> Result<Self> {
        EdgeKey::try_new(VertexId(pair[0]), VertexId(pair[1]))
    }
}

/// Undirected simple graph backed by ordered adjacency sets.
///
/// Equality compares vertex and edge sets only; the fresh-id counter is not part of
/// a graph's identity.
#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edge_count: usize,
    next_id: usize,
}

/// Serialized form: the vertex list and the canonical edge list.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeKey>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertices: g.vertices().collect(),
            edges: g.edges().collect(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = Graph::new();
        for v in r.vertices {
            g.insert_vertex(v);
        }
        for e in r.edges {
            g.add_edge_key(e)?;
        }
        Ok(g)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(usize, usize)> = self.edges().map(|e| (e.lo().0, e.hi().0)).collect();
        f.debug_struct("Graph")
            .field(
                "vertices",
                &self.adj.keys().map(|v| v.0).collect::<Vec<_>>(),
            )
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Adds a vertex with a fresh id, larger than any id this graph has used.
    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_id);
        self.next_id += 1;
        self.adj.insert(v, BTreeSet::new());
        v
    }

    /// Inserts a vertex with a caller-chosen id. Used when copying ids from another
    /// graph; returns false if the vertex already exists.
    pub fn insert_vertex(&mut self, v: VertexId) -> bool {
        self.next_id = self.next_id.max(v.0 + 1);
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Returns whether the edge was newly inserted.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check(u)?;
        self.check(v)?;
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        if fresh {
            self.adj.get_mut(&v).unwrap().insert(u);
            self.edge_count += 1;
        }
        Ok(fresh)
    }

    pub fn add_edge_key(&mut self, e: EdgeKey) -> Result<bool> {
        self.add_edge(e.lo, e.hi)
    }

    /// Returns whether the edge was present.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let present = self.adj.get_mut(&u).is_some_and(|n| n.remove(&v));
        if present {
            self.adj.get_mut(&v).unwrap().remove(&u);
            self.edge_count -= 1;
        }
        present
    }

    pub fn remove_edge_key(&mut self, e: EdgeKey) -> bool {
        self.remove_edge(e.lo, e.hi)
    }

    /// Removes `v` with its incident edges and returns its former neighbors.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        let nbrs = self.adj.remove(&v).ok_or(Error::UnknownVertex(v))?;
        for u in &nbrs {
            self.adj.get_mut(u).unwrap().remove(&v);
        }
        self.edge_count -= nbrs.len();
        Ok(nbrs)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn has_edge_key(&self, e: EdgeKey) -> bool {
        self.has_edge(e.lo, e.hi)
    }

    /// Neighbors of `v`. Panics if `v` is not a vertex; see [`Graph::try_neighbors`].
    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("unknown vertex {v}"))
    }

    pub fn try_neighbors(&self, v: VertexId) -> Result<&BTreeSet<VertexId>> {
        self.adj.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.adj.iter().flat_map(|(&u, nbrs)| {
            nbrs.range(VertexId(u.0 + 1)..)
                .map(move |&v| EdgeKey { lo: u, hi: v })
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// The id the next [`Graph::add_vertex`] call will hand out.
    pub fn next_id(&self) -> usize {
        self.next_id
    }

    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> BTreeSet<VertexId> {
        self.neighbors(u)
            .intersection(self.neighbors(v))
            .copied()
            .collect()
    }

    /// `G - F` for an edge set `F`. Edges not present are ignored.
    pub fn without_edges<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeKey>) -> Graph {
        let mut g = self.clone();
        for e in edges {
            g.remove_edge_key(*e);
        }
        g
    }

    /// `G - V'` for a vertex set `V'`. Vertices not present are ignored.
    pub fn without_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a VertexId>) -> Graph {
        let mut g = self.clone();
        for v in vs {
            let _ = g.remove_vertex(*v);
        }
        g
    }

    /// Connected components of `G[N(v)]`, ordered by smallest member.
    pub fn neighborhood_components(&self, v: VertexId) -> Result<Vec<BTreeSet<VertexId>>> {
        let nbrs = self.try_neighbors(v)?;
        Ok(self.components_within(nbrs))
    }

    /// Connected components of the whole graph, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        self.components_within(&self.vertex_set())
    }

    /// Components of `G[vs]` via BFS; `vs` must be a vertex subset.
    fn components_within(&self, vs: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &root in vs {
            if !seen.insert(root) {
                continue;
            }
            let mut comp = BTreeSet::from([root]);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    if vs.contains(&y) && seen.insert(y) {
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// `G[vs]`, keeping ids.
    pub fn induced_subgraph(&self, vs: &BTreeSet<VertexId>) -> Result<Graph> {
        let mut h = Graph {
            next_id: self.next_id,
            ..Graph::default()
        };
        for &v in vs {
            self.check(v)?;
            h.adj.insert(v, BTreeSet::new());
        }
        for &v in vs {
            for &u in self.neighbors(v).range(VertexId(v.0 + 1)..) {
                if vs.contains(&u) {
                    h.add_edge(v, u)?;
                }
            }
        }
        Ok(h)
    }

    /// Graph on `vs` whose edges are exactly the non-edges of `G[vs]`.
    pub fn complement_restricted(&self, vs: &BTreeSet<VertexId>) -> Result<Graph> {
        let mut h = Graph {
            next_id: self.next_id,
            ..Graph::default()
        };
        for &v in vs {
            self.check(v)?;
            h.adj.insert(v, BTreeSet::new());
        }
        let list: Vec<VertexId> = vs.iter().copied().collect();
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if !self.has_edge(a, b) {
                    h.add_edge(a, b)?;
                }
            }
        }
        Ok(h)
    }

    /// Checks symmetry, absence of self-loops, endpoint membership and counters.
    pub fn validate(&self) -> Result<()> {
        let mut half_edges = 0usize;
        for (&v, nbrs) in &self.adj {
            if v.0 >= self.next_id {
                return Err(Error::invariant(format!(
                    "vertex {v} not below fresh-id counter {}",
                    self.next_id
                )));
            }
            for &u in nbrs {
                if u == v {
                    return Err(Error::SelfLoop(v));
                }
                match self.adj.get(&u) {
                    None => return Err(Error::UnknownVertex(u)),
                    Some(back) if !back.contains(&v) => {
                        return Err(Error::invariant(format!("asymmetric adjacency {v}->{u}")))
                    }
                    _ => {}
                }
                half_edges += 1;
            }
        }
        if half_edges != 2 * self.edge_count {
            return Err(Error::invariant("edge counter out of sync"));
        }
        Ok(())
    }

    pub(crate) fn debug_validate(&self) {
        if cfg!(debug_assertions) {
            if let Err(e) = self.validate() {
                panic!("graph invariant broken: {e}");
            }
        }
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.adj.contains_key(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    // p=0 q=1 r=2 s=3, middle edge q-r
    fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn neighborhood_components_bowtie() {
        // v=0, triangles {0,1,2} and {0,3,4}
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        assert_eq!(
            g.neighborhood_components(VertexId(0)).unwrap(),
            vec![set(&[1, 2]), set(&[3, 4])]
        );
    }

    #[test]
    fn neighborhood_components_diamond_and_isolated() {
        let g = diamond();
        assert_eq!(
            g.neighborhood_components(VertexId(1)).unwrap(),
            vec![set(&[0, 2, 3])]
        );
        let lone = Graph::with_vertices(1);
        assert!(lone
            .neighborhood_components(VertexId(0))
            .unwrap()
            .is_empty());
        assert!(matches!(
            lone.neighborhood_components(VertexId(7)),
            Err(Error::UnknownVertex(VertexId(7)))
        ));
    }

    #[test]
    fn connected_components_examples() {
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            two.connected_components(),
            vec![set(&[0, 1, 2]), set(&[3, 4, 5])]
        );
        assert!(Graph::new().connected_components().is_empty());
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.connected_components(), vec![set(&[0, 1, 2])]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tri = k4.induced_subgraph(&set(&[0, 1, 2])).unwrap();
        assert_eq!(
            tri,
            Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
        );
        assert!(k4.induced_subgraph(&BTreeSet::new()).unwrap().is_empty());
        let d = diamond().induced_subgraph(&set(&[0, 3])).unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 0);
        assert!(k4.induced_subgraph(&set(&[9])).is_err());
    }

    #[test]
    fn complement_restricted_examples() {
        let empty4 = Graph::with_vertices(4);
        let c = empty4.complement_restricted(&set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(c.edge_count(), 6);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            k4.complement_restricted(&k4.vertex_set())
                .unwrap()
                .edge_count(),
            0
        );
        let d = diamond()
            .complement_restricted(&set(&[0, 1, 2, 3]))
            .unwrap();
        assert_eq!(d.edges().collect::<Vec<_>>(), vec![EdgeKey::new(0, 3)]);
    }

    #[test]
    fn ids_are_not_recycled() {
        let mut g = Graph::with_vertices(3);
        g.remove_vertex(VertexId(2)).unwrap();
        let v = g.add_vertex();
        assert_eq!(v, VertexId(3));
        g.validate().unwrap();
    }

    #[test]
    fn mutation_keeps_invariants() {
        let mut g = diamond();
        assert!(g.add_edge(VertexId(0), VertexId(0)).is_err());
        assert!(!g.add_edge(VertexId(1), VertexId(0)).unwrap());
        assert!(g.remove_edge(VertexId(2), VertexId(1)));
        assert!(!g.remove_edge(VertexId(2), VertexId(1)));
        assert_eq!(g.edge_count(), 4);
        g.remove_vertex(VertexId(0)).unwrap();
        assert_eq!(g.edge_count(), 2);
        g.validate().unwrap();
    }

    #[test]
    fn edge_key_is_canonical() {
        assert_eq!(EdgeKey::new(5, 2), EdgeKey::new(2, 5));
        assert_eq!(EdgeKey::new(5, 2).lo(), VertexId(2));
        assert!(EdgeKey::try_new(VertexId(1), VertexId(1)).is_err());
        let json = serde_json_like(EdgeKey::new(3, 1));
        assert_eq!(json, [1, 3]);
    }

    fn serde_json_like(e: EdgeKey) -> [usize; 2] {
        e.into()
    }
}
