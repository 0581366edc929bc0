//! Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{EdgeKey, Graph, VertexId};

const NONE: usize = usize::MAX;

/// A maximum matching of `g`, as canonical edge keys.
///
/// Runs one augmenting-path search per free vertex, contracting odd cycles on the
/// fly. O(n^3) on the compact index space.
pub fn maximum_matching(g: &Graph) -> BTreeSet<EdgeKey> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| ids.binary_search(&v).expect("neighbor is a vertex");
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&u| index(u)).collect())
        .collect();

    let mut blossom = Blossom::new(adj);
    blossom.greedy_init();
    for root in 0..ids.len() {
        if blossom.mate[root] == NONE {
            if let Some(end) = blossom.find_path(root) {
                blossom.augment(end);
            }
        }
    }

    (0..ids.len())
        .filter(|&v| blossom.mate[v] != NONE && v < blossom.mate[v])
        .map(|v| EdgeKey::new(ids[v], ids[blossom.mate[v]]))
        .collect()
}

/// Size of a maximum matching in the complement of `g[vs]`, i.e. the largest set of
/// pairwise vertex-disjoint non-edges inside `vs`.
pub fn max_non_matching(g: &Graph, vs: &BTreeSet<VertexId>) -> usize {
    let comp = g
        .complement_restricted(vs)
        .expect("vertex subset of the graph");
    maximum_matching(&comp).len()
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn greedy_init(&mut self) {
        for v in 0..self.adj.len() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                self.mate[v] = u;
                self.mate[u] = v;
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS over alternating trees from `root`; returns a free vertex reached by an
    /// augmenting path, with the path recorded in `parent`.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for u in 0..n {
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.used[u] {
                                self.used[u] = true;
                                self.queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}
