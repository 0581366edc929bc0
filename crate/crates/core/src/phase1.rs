//! The four phase-1 reduction rules and their fixpoint driver.
//!
//! Rules are tried in the order irrelevant edge, sunflower, vertex split,
//! irrelevant component; after any rule fires the driver starts again from the
//! first rule. Every change is recorded in a [`RuleLog`] that can be replayed.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::instance::Instance;
use crate::matching::max_non_matching;
use crate::patterns::{is_core_member_edge, is_family_free};

/// For every vertex created by a split: the vertex it replaced and the
/// neighborhood component it was attached to.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProvenance {
    origins: BTreeMap<VertexId, (VertexId, BTreeSet<VertexId>)>,
}

impl SplitProvenance {
    pub fn get(&self, v: VertexId) -> Option<&(VertexId, BTreeSet<VertexId>)> {
        self.origins.get(&v)
    }

    /// The input vertex that `v` descends from through any number of splits.
    pub fn root(&self, mut v: VertexId) -> VertexId {
        while let Some((parent, _)) = self.origins.get(&v) {
            v = *parent;
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &(VertexId, BTreeSet<VertexId>))> {
        self.origins.iter().map(|(&v, o)| (v, o))
    }

    pub fn len(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    fn record(&mut self, new: VertexId, original: VertexId, component: BTreeSet<VertexId>) {
        let prev = self.origins.insert(new, (original, component));
        debug_assert!(prev.is_none(), "split id {new} recorded twice");
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    IrrelevantEdge,
    Sunflower,
    VertexSplit,
    IrrelevantComponent,
    CliqueReduction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleChange {
    DeleteEdge(EdgeKey),
    SplitVertex(VertexSplit),
    DeleteVertices(BTreeSet<VertexId>),
}

/// A vertex replaced by one fresh vertex per neighborhood component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSplit {
    pub vertex: VertexId,
    pub parts: Vec<(VertexId, BTreeSet<VertexId>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEvent {
    pub rule: RuleKind,
    pub change: RuleChange,
    pub k_before: usize,
    pub k_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleLog {
    pub events: Vec<RuleEvent>,
}

impl RuleLog {
    pub fn push(&mut self, rule: RuleKind, change: RuleChange, k_before: usize, k_after: usize) {
        self.events.push(RuleEvent {
            rule,
            change,
            k_before,
            k_after,
        });
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn counts(&self) -> BTreeMap<RuleKind, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.events {
            *counts.entry(e.rule).or_insert(0) += 1;
        }
        counts
    }

    /// Applies the logged changes to `inst` and returns the result. Fails if a
    /// change does not fit the graph it is applied to, including a split whose
    /// fresh ids differ from the recorded ones.
    pub fn replay(&self, inst: &Instance) -> Result<Instance> {
        let mut out = inst.clone();
        for ev in &self.events {
            if ev.k_before != out.k {
                return Err(Error::invariant(format!(
                    "log expects k = {}, replay has k = {}",
                    ev.k_before, out.k
                )));
            }
            apply_change(&mut out.graph, &ev.change)?;
            out.k = ev.k_after;
        }
        Ok(out)
    }
}

pub(crate) fn apply_change(g: &mut Graph, change: &RuleChange) -> Result<()> {
    match change {
        RuleChange::DeleteEdge(e) => {
            if !g.remove_edge_key(*e) {
                return Err(Error::MissingEdge(*e));
            }
        }
        RuleChange::SplitVertex(split) => {
            for (new, comp) in &split.parts {
                let fresh = g.add_vertex();
                if fresh != *new {
                    return Err(Error::invariant(format!(
                        "split produced id {fresh}, log recorded {new}"
                    )));
                }
                for &u in comp {
                    g.add_edge(fresh, u)?;
                }
            }
            g.remove_vertex(split.vertex)?;
        }
        RuleChange::DeleteVertices(vs) => {
            for &v in vs {
                g.remove_vertex(v)?;
            }
        }
    }
    Ok(())
}

/// Which non-matching size makes the sunflower rule fire. Only `KPlusOne` is
/// sound; `K` exists so that the verification harness can be shown to catch an
/// off-by-one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SunflowerThreshold {
    #[default]
    KPlusOne,
    K,
}

impl SunflowerThreshold {
    fn value(self, k: usize) -> usize {
        match self {
            SunflowerThreshold::KPlusOne => k + 1,
            SunflowerThreshold::K => k.max(1),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Phase1Options {
    pub sunflower: SunflowerThreshold,
}

#[derive(Clone, Debug)]
pub struct Phase1Output {
    pub instance: Instance,
    pub provenance: SplitProvenance,
    pub log: RuleLog,
}

/// Deletes the smallest edge that is not a core member.
pub fn rule_irrelevant_edge(inst: &mut Instance) -> Result<Option<EdgeKey>> {
    inst.family.require_reduction()?;
    for e in inst.graph.edges().collect::<Vec<_>>() {
        if !is_core_member_edge(&inst.graph, e, &inst.family)? {
            inst.graph.remove_edge_key(e);
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Deletes the first edge `xy` whose common neighborhood has `k + 1` pairwise
/// disjoint non-edges, and decrements `k`. Does nothing when `k = 0`.
pub fn rule_sunflower(inst: &mut Instance) -> Result<Option<EdgeKey>> {
    rule_sunflower_with(inst, SunflowerThreshold::KPlusOne)
}

pub fn rule_sunflower_with(
    inst: &mut Instance,
    threshold: SunflowerThreshold,
) -> Result<Option<EdgeKey>> {
    inst.family.require_reduction()?;
    if inst.k == 0 {
        return Ok(None);
    }
    let need = threshold.value(inst.k);
    let g = &inst.graph;
    let hit = g.edges().find(|e| {
        let common = g.common_neighbors(e.lo(), e.hi());
        common.len() >= 2 * need && max_non_matching(g, &common) >= need
    });
    if let Some(e) = hit {
        inst.graph.remove_edge_key(e);
        inst.k -= 1;
    }
    Ok(hit)
}

/// Replaces the smallest vertex with a disconnected neighborhood by one fresh
/// vertex per component, assigned in component order.
pub fn rule_vertex_split(
    inst: &mut Instance,
    prov: &mut SplitProvenance,
) -> Result<Option<VertexSplit>> {
    let g = &inst.graph;
    let mut found = None;
    for v in g.vertices() {
        let comps = g.neighborhood_components(v)?;
        if comps.len() >= 2 {
            found = Some((v, comps));
            break;
        }
    }
    let Some((v, comps)) = found else {
        return Ok(None);
    };
    let mut parts = Vec::with_capacity(comps.len());
    for comp in comps {
        let fresh = inst.graph.add_vertex();
        for &u in &comp {
            inst.graph.add_edge(fresh, u)?;
        }
        prov.record(fresh, v, comp.clone());
        parts.push((fresh, comp));
    }
    inst.graph.remove_vertex(v)?;
    inst.graph.debug_validate();
    Ok(Some(VertexSplit { vertex: v, parts }))
}

/// Deletes the first connected component that is free of the family.
pub fn rule_irrelevant_component(inst: &mut Instance) -> Result<Option<BTreeSet<VertexId>>> {
    for comp in inst.graph.connected_components() {
        let sub = inst.graph.induced_subgraph(&comp)?;
        if is_family_free(&sub, &inst.family) {
            for &v in &comp {
                inst.graph.remove_vertex(v)?;
            }
            return Ok(Some(comp));
        }
    }
    Ok(None)
}

pub fn run_phase1(inst: Instance) -> Result<Phase1Output> {
    run_phase1_with(inst, &Phase1Options::default())
}

/// Applies the rules until none fires.
///
/// Irrelevant edges are removed a sweep at a time: an edge that is not core stays
/// not core when other edges are deleted, so a sweep deletes exactly what
/// repeated single applications would, and the logged order is still ascending
/// within each sweep.
pub fn run_phase1_with(inst: Instance, opts: &Phase1Options) -> Result<Phase1Output> {
    inst.family.require_reduction()?;
    let mut inst = inst;
    let mut prov = SplitProvenance::default();
    let mut log = RuleLog::default();
    if inst.graph.is_empty() {
        return Ok(Phase1Output {
            instance: inst,
            provenance: prov,
            log,
        });
    }

    loop {
        let k = inst.k;
        let irrelevant: Vec<EdgeKey> = {
            let g = &inst.graph;
            let mut out = Vec::new();
            for e in g.edges() {
                if !is_core_member_edge(g, e, &inst.family)? {
                    out.push(e);
                }
            }
            out
        };
        if !irrelevant.is_empty() {
            for e in irrelevant {
                inst.graph.remove_edge_key(e);
                log.push(RuleKind::IrrelevantEdge, RuleChange::DeleteEdge(e), k, k);
            }
            continue;
        }
        if let Some(e) = rule_sunflower_with(&mut inst, opts.sunflower)? {
            log.push(RuleKind::Sunflower, RuleChange::DeleteEdge(e), k, inst.k);
            continue;
        }
        if let Some(split) = rule_vertex_split(&mut inst, &mut prov)? {
            log.push(RuleKind::VertexSplit, RuleChange::SplitVertex(split), k, k);
            continue;
        }
        if let Some(comp) = rule_irrelevant_component(&mut inst)? {
            log.push(
                RuleKind::IrrelevantComponent,
                RuleChange::DeleteVertices(comp),
                k,
                k,
            );
            continue;
        }
        break;
    }
    inst.graph.debug_validate();
    Ok(Phase1Output {
        instance: inst,
        provenance: prov,
        log,
    })
}
