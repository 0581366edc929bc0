//! Bitset adjacency for graphs with at most 128 vertices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::patterns::{FamilySpec, Pattern};

pub const MAX_DENSE_VERTICES: usize = 128;

/// Compact copy of a [`Graph`]: vertex `i` stands for `ids[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseGraph {
    pub(crate) rows: Vec<u128>,
    pub(crate) ids: Vec<VertexId>,
}

impl DenseGraph {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let ids: Vec<VertexId> = g.vertices().collect();
        if ids.len() > MAX_DENSE_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "{} vertices exceed the dense limit of {MAX_DENSE_VERTICES}",
                ids.len()
            )));
        }
        let mut rows = vec![0u128; ids.len()];
        for e in g.edges() {
            let a = ids.binary_search(&e.lo()).unwrap();
            let b = ids.binary_search(&e.hi()).unwrap();
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        Ok(DenseGraph { rows, ids })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn toggle(&mut self, a: usize, b: usize) {
        self.rows[a] ^= 1 << b;
        self.rows[b] ^= 1 << a;
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in bits(self.rows[a] & !mask_upto(a + 1)) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                out.push((a, b));
            }
        }
        out
    }

    pub fn key(&self, a: usize, b: usize) -> EdgeKey {
        EdgeKey::new(self.ids[a], self.ids[b])
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn keys(&self, pairs: &[(usize, usize)]) -> BTreeSet<EdgeKey> {
        pairs.iter().map(|&(a, b)| self.key(a, b)).collect()
    }

    /// Whether any pattern of `fam` occurs induced, restricted to the vertices in
    /// `alive`.
    pub fn has_occurrence(&self, fam: &FamilySpec, alive: u128) -> bool {
        fam.patterns().iter().any(|p| match *p {
            Pattern::SDiamond(s) => self.has_s_diamond(s, alive),
            Pattern::Clique(t) => has_clique(&self.rows, alive, t),
        })
    }

    fn has_s_diamond(&self, s: usize, alive: u128) -> bool {
        for x in bits(alive) {
            for y in bits(self.rows[x] & alive & !mask_upto(x + 1)) {
                let common = self.rows[x] & self.rows[y] & alive;
                if common.count_ones() as usize > s && has_independent(&self.rows, common, s + 1) {
                    return true;
                }
            }
        }
        false
    }

    /// Whether an induced `K_{1,s}` exists among `alive`.
    pub fn has_induced_star(&self, s: usize, alive: u128) -> bool {
        bits(alive).any(|v| has_independent(&self.rows, self.rows[v] & alive, s))
    }

    pub fn has_edge_within(&self, alive: u128) -> bool {
        bits(alive).any(|v| self.rows[v] & alive != 0)
    }

    pub fn all(&self) -> u128 {
        mask_upto(self.len())
    }
}

/// Bits `0..n` set.
pub(crate) fn mask_upto(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub(crate) fn bits(mut set: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let b = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(b)
        }
    })
}

pub(crate) fn has_independent(rows: &[u128], cands: u128, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if (cands.count_ones() as usize) < size {
        return false;
    }
    let v = cands.trailing_zeros() as usize;
    let rest = cands & !(1 << v);
    has_independent(rows, rest & !rows[v], size - 1) || has_independent(rows, rest, size)
}

pub(crate) fn has_clique(rows: &[u128], cands: u128, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if (cands.count_ones() as usize) < size {
        return false;
    }
    let v = cands.trailing_zeros() as usize;
    let rest = cands & !(1 << v);
    has_clique(rows, rest & rows[v], size - 1) || has_clique(rows, rest, size)
}

/// Calls `visit` with every independent `size`-subset of `cands`, as a bitmask.
pub(crate) fn each_independent(
    rows: &[u128],
    cands: u128,
    size: usize,
    acc: u128,
    visit: &mut dyn FnMut(u128),
) {
    if size == 0 {
        visit(acc);
        return;
    }
    if (cands.count_ones() as usize) < size {
        return;
    }
    let v = cands.trailing_zeros() as usize;
    let rest = cands & !(1 << v);
    each_independent(rows, rest & !rows[v], size - 1, acc | 1 << v, visit);
    each_independent(rows, rest, size, acc, visit);
}

pub(crate) fn each_clique(
    rows: &[u128],
    cands: u128,
    size: usize,
    acc: u128,
    visit: &mut dyn FnMut(u128),
) {
    if size == 0 {
        visit(acc);
        return;
    }
    if (cands.count_ones() as usize) < size {
        return;
    }
    let v = cands.trailing_zeros() as usize;
    let rest = cands & !(1 << v);
    each_clique(rows, rest & rows[v], size - 1, acc | 1 << v, visit);
    each_clique(rows, rest, size, acc, visit);
}
