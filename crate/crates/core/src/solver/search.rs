//! Exact branch-and-bound for edge deletion, edge editing and vertex deletion.
//!
//! Every induced occurrence must have one of its pairs (or vertices) modified, so
//! each node branches over the free choices of the occurrence with the fewest of
//! them. Earlier siblings' choices are fixed as unmodified, and a greedy packing
//! of occurrences with pairwise disjoint free choices gives the lower bound.
//! Budgets are tried in increasing order, so the first solution is a minimum.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::brute::VertexPattern;
use super::dense::{bits, each_clique, each_independent, mask_upto, DenseGraph};
use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::patterns::{FamilySpec, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeMode {
    /// Only existing edges may be removed.
    Delete,
    /// Any vertex pair may be toggled.
    Edit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
}

/// A minimum set of pairs to toggle, if one of size at most `kmax` exists.
pub fn search_min_edge_modification(
    g: &Graph,
    fam: &FamilySpec,
    mode: EdgeMode,
    kmax: usize,
) -> Result<(Option<BTreeSet<EdgeKey>>, SearchStats)> {
    let dense = DenseGraph::from_graph(g)?;
    let mut stats = SearchStats::default();
    let start = EdgeSearch::new(&dense, fam, mode).root_bound();
    for budget in start..=kmax {
        if let Some(sol) = edge_search(&dense, fam, mode, budget, &mut stats) {
            return Ok((Some(sol), stats));
        }
    }
    Ok((None, stats))
}

/// Some set of at most `budget` pairs to toggle, not necessarily a smallest one.
pub fn search_edge_modification(
    g: &Graph,
    fam: &FamilySpec,
    mode: EdgeMode,
    budget: usize,
) -> Result<(Option<BTreeSet<EdgeKey>>, SearchStats)> {
    let dense = DenseGraph::from_graph(g)?;
    let mut stats = SearchStats::default();
    let sol = edge_search(&dense, fam, mode, budget, &mut stats);
    Ok((sol, stats))
}

fn edge_search(
    dense: &DenseGraph,
    fam: &FamilySpec,
    mode: EdgeMode,
    budget: usize,
    stats: &mut SearchStats,
) -> Option<BTreeSet<EdgeKey>> {
    let mut s = EdgeSearch::new(dense, fam, mode);
    let found = s.run(budget);
    stats.nodes += s.nodes;
    found.then(|| s.d.keys(&s.chosen))
}

/// A minimum vertex set whose removal leaves an edgeless or `K_{1,s}`-free graph,
/// if one of size at most `kmax` exists.
pub fn search_min_vertex_deletion(
    g: &Graph,
    pattern: VertexPattern,
    kmax: usize,
) -> Result<(Option<BTreeSet<VertexId>>, SearchStats)> {
    if pattern == VertexPattern::Star(0) {
        return Err(Error::InvalidParameter("star pattern needs s >= 1".into()));
    }
    let dense = DenseGraph::from_graph(g)?;
    let mut stats = SearchStats::default();
    for budget in 0..=kmax {
        let mut s = VertexSearch {
            alive: dense.all(),
            fixed: 0,
            d: &dense,
            pattern,
            nodes: 0,
        };
        let found = s.run(budget);
        stats.nodes += s.nodes;
        if found {
            let removed = dense.all() & !s.alive;
            return Ok((Some(bits(removed).map(|i| dense.ids[i]).collect()), stats));
        }
    }
    Ok((None, stats))
}

struct EdgeSearch {
    d: DenseGraph,
    /// Pairs that may no longer be toggled, as a symmetric bit matrix.
    fixed: Vec<u128>,
    fam: FamilySpec,
    mode: EdgeMode,
    chosen: Vec<(usize, usize)>,
    nodes: u64,
}

impl EdgeSearch {
    fn new(dense: &DenseGraph, fam: &FamilySpec, mode: EdgeMode) -> Self {
        EdgeSearch {
            fixed: vec![0; dense.len()],
            d: dense.clone(),
            fam: *fam,
            mode,
            chosen: Vec::new(),
            nodes: 0,
        }
    }

    fn root_bound(&self) -> usize {
        let mut free: Vec<Vec<(usize, usize)>> = self
            .occurrences()
            .iter()
            .map(|&o| self.free_pairs(o))
            .collect();
        free.sort_by_key(Vec::len);
        lower_bound(&free, usize::MAX - 1)
    }

    fn occurrences(&self) -> Vec<u128> {
        let rows = &self.d.rows;
        let mut out = Vec::new();
        for p in self.fam.patterns() {
            match p {
                Pattern::SDiamond(s) => {
                    for (x, y) in self.d.edges() {
                        let common = rows[x] & rows[y];
                        each_independent(rows, common, s + 1, 1 << x | 1 << y, &mut |m| {
                            out.push(m)
                        });
                    }
                }
                Pattern::Clique(t) => each_clique(rows, self.d.all(), t, 0, &mut |m| out.push(m)),
            }
        }
        out
    }

    fn free_pairs(&self, occ: u128) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in bits(occ) {
            for b in bits(occ & !mask_upto(a + 1)) {
                let open = self.fixed[a] >> b & 1 == 0;
                if open && (self.mode == EdgeMode::Edit || self.d.has_edge(a, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn run(&mut self, budget: usize) -> bool {
        self.nodes += 1;
        let occs = self.occurrences();
        if occs.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let mut free: Vec<Vec<(usize, usize)>> = occs.iter().map(|&o| self.free_pairs(o)).collect();
        if free.iter().any(Vec::is_empty) {
            return false;
        }
        free.sort_by_key(Vec::len);
        if lower_bound(&free, budget) > budget {
            return false;
        }
        let branch = free.swap_remove(0);
        let mut fixed_here = Vec::with_capacity(branch.len());
        for (a, b) in branch {
            self.d.toggle(a, b);
            self.fix(a, b, true);
            self.chosen.push((a, b));
            if self.run(budget - 1) {
                return true;
            }
            self.chosen.pop();
            self.d.toggle(a, b);
            fixed_here.push((a, b));
        }
        for (a, b) in fixed_here {
            self.fix(a, b, false);
        }
        false
    }

    fn fix(&mut self, a: usize, b: usize, on: bool) {
        if on {
            self.fixed[a] |= 1 << b;
            self.fixed[b] |= 1 << a;
        } else {
            self.fixed[a] &= !(1 << b);
            self.fixed[b] &= !(1 << a);
        }
    }
}

/// Number of occurrences picked greedily (fewest choices first) with pairwise
/// disjoint choice sets; stops once it exceeds `budget`.
fn lower_bound<T: Ord + Copy>(free: &[Vec<T>], budget: usize) -> usize {
    let mut used: BTreeSet<T> = BTreeSet::new();
    let mut count = 0;
    for choices in free {
        if choices.iter().all(|c| !used.contains(c)) {
            used.extend(choices.iter().copied());
            count += 1;
            if count > budget {
                break;
            }
        }
    }
    count
}

struct VertexSearch<'a> {
    d: &'a DenseGraph,
    alive: u128,
    /// Vertices that may no longer be deleted.
    fixed: u128,
    pattern: VertexPattern,
    nodes: u64,
}

impl VertexSearch<'_> {
    fn occurrences(&self) -> Vec<u128> {
        let rows = &self.d.rows;
        let mut out = Vec::new();
        for v in bits(self.alive) {
            let nbrs = rows[v] & self.alive;
            match self.pattern {
                VertexPattern::VertexCover => {
                    for u in bits(nbrs & !mask_upto(v + 1)) {
                        out.push(1 << v | 1 << u);
                    }
                }
                VertexPattern::Star(s) => {
                    each_independent(rows, nbrs, s, 1 << v, &mut |m| out.push(m));
                }
            }
        }
        out
    }

    fn run(&mut self, budget: usize) -> bool {
        self.nodes += 1;
        let occs = self.occurrences();
        if occs.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let mut free: Vec<Vec<usize>> = occs
            .iter()
            .map(|&o| bits(o & !self.fixed).collect())
            .collect();
        if free.iter().any(Vec::is_empty) {
            return false;
        }
        free.sort_by_key(Vec::len);
        if lower_bound(&free, budget) > budget {
            return false;
        }
        let branch = free.swap_remove(0);
        let saved = self.fixed;
        for v in branch {
            self.alive &= !(1 << v);
            if self.run(budget - 1) {
                return true;
            }
            self.alive |= 1 << v;
            self.fixed |= 1 << v;
        }
        self.fixed = saved;
        false
    }
}
