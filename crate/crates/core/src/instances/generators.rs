use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::instance::Instance;
use crate::patterns::{find_induced_occurrence, FamilySpec};

pub type Seed = u64;

pub(crate) fn rng(seed: Seed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `0..n`; pairs are visited in canonical order, one draw
/// each.
pub fn gen_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} is outside [0, 1]"
        )));
    }
    let mut rng = rng(seed);
    let mut g = Graph::with_vertices(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(VertexId(a), VertexId(b))?;
            }
        }
    }
    Ok(g)
}

/// A diamond-free base graph on `0..n`: the union of the listed cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueGluing {
    pub n: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueGluing {
    /// Builds the union graph after checking that cliques share at most one vertex
    /// and that the union is diamond-free (no edges arise between cliques beyond
    /// the listed ones, so every triangle lies in one clique).
    pub fn build(&self) -> Result<Graph> {
        let sets: Vec<BTreeSet<usize>> = self
            .cliques
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        for (i, c) in sets.iter().enumerate() {
            if c.len() != self.cliques[i].len() {
                return Err(Error::InvalidParameter(format!(
                    "clique {i} repeats a vertex"
                )));
            }
            if let Some(&v) = c.iter().find(|&&v| v >= self.n) {
                return Err(Error::InvalidParameter(format!(
                    "clique {i} uses vertex {v} >= n"
                )));
            }
            for (j, d) in sets.iter().enumerate().skip(i + 1) {
                if c.intersection(d).count() > 1 {
                    return Err(Error::InvalidParameter(format!(
                        "cliques {i} and {j} share more than one vertex"
                    )));
                }
            }
        }
        let mut g = Graph::with_vertices(self.n);
        for c in &self.cliques {
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    g.add_edge(VertexId(a), VertexId(b))?;
                }
            }
        }
        if let Some(witness) = find_induced_occurrence(&g, &FamilySpec::diamond()) {
            return Err(Error::NotDiamondFree {
                witness: Box::new(witness),
            });
        }
        Ok(g)
    }

    /// A random block graph: cliques of size `2..=max_clique` hung at random
    /// existing vertices until `n` vertices are used.
    pub fn random(n: usize, max_clique: usize, seed: Seed) -> Result<Self> {
        if max_clique < 2 {
            return Err(Error::InvalidParameter(
                "max_clique must be at least 2".into(),
            ));
        }
        let mut rng = rng(seed);
        let mut cliques = Vec::new();
        let mut used = usize::from(n > 0);
        while used < n {
            let size = rng.gen_range(2..=max_clique).min(n - used + 1);
            let anchor = rng.gen_range(0..used);
            let mut c = vec![anchor];
            c.extend(used..used + size - 1);
            used += size - 1;
            cliques.push(c);
        }
        Ok(CliqueGluing { n, cliques })
    }
}

/// The base plus `k` absent edges chosen uniformly, with budget `k` and the
/// diamond family. Deleting the added edges restores the base, so the instance
/// is a yes-instance.
pub fn gen_planted_yes(base: &CliqueGluing, k: usize, seed: Seed) -> Result<Instance> {
    let mut g = base.build()?;
    let absent: Vec<EdgeKey> = (0..base.n)
        .flat_map(|a| (a + 1..base.n).map(move |b| EdgeKey::new(a, b)))
        .filter(|e| !g.has_edge_key(*e))
        .collect();
    if k > absent.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot plant {k} edges: only {} pairs are free",
            absent.len()
        )));
    }
    let mut picks = sample(&mut rng(seed), absent.len(), k).into_vec();
    picks.sort_unstable();
    for i in picks {
        g.add_edge_key(absent[i])?;
    }
    Ok(Instance::diamond(g, k))
}

/// A diamond `w1 w2 w3 w4` with middle edge `w1 w2` (ids 0..4) and `k` disjoint
/// `k`-cliques (ids from 4 on). `w1` is adjacent to every clique vertex, `w2` to
/// the smallest vertex of each clique. `k^2 + 4` vertices, budget `k`.
pub fn gen_hard_structure(k: usize) -> Result<Instance> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "hard structure needs k >= 2, got {k}"
        )));
    }
    let n = k * k + 4;
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
    for i in 0..k {
        let first = 4 + i * k;
        edges.push((1, first));
        for a in first..first + k {
            edges.push((0, a));
            for b in a + 1..first + k {
                edges.push((a, b));
            }
        }
    }
    Ok(Instance::diamond(Graph::from_edges(n, &edges)?, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        let g = gen_gnp(5, 0.0, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 0));
        assert_eq!(gen_gnp(4, 1.0, 1).unwrap().edge_count(), 6);
        assert!(gen_gnp(4, 1.5, 1).is_err());
        assert_eq!(gen_gnp(8, 0.4, 7).unwrap(), gen_gnp(8, 0.4, 7).unwrap());
    }

    #[test]
    fn planted_rejects_bad_bases() {
        let overlap = CliqueGluing {
            n: 4,
            cliques: vec![vec![0, 1, 2], vec![1, 2, 3]],
        };
        assert!(gen_planted_yes(&overlap, 0, 1).is_err());
        // three triangles whose shared vertices form a fourth triangle
        let ring = CliqueGluing {
            n: 6,
            cliques: vec![vec![0, 1, 3], vec![1, 2, 4], vec![0, 2, 5]],
        };
        assert!(matches!(ring.build(), Err(Error::NotDiamondFree { .. })));
    }

    #[test]
    fn random_gluing_is_diamond_free() {
        for seed in 0..20 {
            let base = CliqueGluing::random(30, 6, seed).unwrap();
            let g = base.build().unwrap();
            assert_eq!(g.vertex_count(), 30);
            assert_eq!(g.connected_components().len(), 1);
        }
    }

    #[test]
    fn hard_structure_shape() {
        assert_eq!(gen_hard_structure(2).unwrap().graph.vertex_count(), 8);
        let h3 = gen_hard_structure(3).unwrap();
        assert_eq!(h3.graph.vertex_count(), 13);
        assert!(h3
            .graph
            .vertices()
            .all(|v| h3.graph.neighborhood_components(v).unwrap().len() == 1));
        assert!(gen_hard_structure(1).is_err());
    }
}
