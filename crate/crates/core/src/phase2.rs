//! Modulator construction, clique contexts, the clique-reduction rule and the two
//! kernelization pipelines.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, Graph, VertexId};
use crate::instance::Instance;
use crate::patterns::{
    clique_partition, greedy_packing, FamilySpec, PackingResult, PatternOccurrence,
};
use crate::phase1::{run_phase1_with, Phase1Options, RuleChange, RuleKind, RuleLog};
use crate::timing::Stopwatch;

/// Packed edges `X`, their endpoints `V_X`, and the maximal-clique partition of
/// `G - V_X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modulator {
    pub packing_edges: BTreeSet<EdgeKey>,
    pub modulator_vertices: BTreeSet<VertexId>,
    pub cliques: Vec<BTreeSet<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulatorOutcome {
    /// More than `k` edge-disjoint occurrences exist.
    DecidedNo {
        occurrences: Vec<PatternOccurrence>,
    },
    Modulator(Modulator),
}

/// How a clique of the partition attaches to the rest of the graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueContext {
    pub clique: BTreeSet<VertexId>,
    /// Modulator vertices adjacent to every vertex of the clique.
    pub a: BTreeSet<VertexId>,
    /// Other outside vertices adjacent to exactly one vertex of the clique.
    pub b: BTreeSet<VertexId>,
    /// Modulator vertices adjacent to exactly one vertex of the clique.
    pub d: BTreeSet<VertexId>,
    pub b_of: BTreeMap<VertexId, BTreeSet<VertexId>>,
    pub d_of: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl CliqueContext {
    /// Members of the clique whose neighborhood lies inside `C ∪ A_C`.
    pub fn local_vertices(&self) -> BTreeSet<VertexId> {
        self.clique
            .iter()
            .copied()
            .filter(|v| !self.b_of.contains_key(v) && !self.d_of.contains_key(v))
            .collect()
    }
}

pub fn compute_modulator(inst: &Instance) -> Result<ModulatorOutcome> {
    inst.family.require_kernelizable()?;
    let packing = match greedy_packing(&inst.graph, inst.k, &inst.family)? {
        PackingResult::BudgetExceeded { occurrences } => {
            return Ok(ModulatorOutcome::DecidedNo { occurrences })
        }
        PackingResult::Packed(p) => p,
    };
    let modulator_vertices: BTreeSet<VertexId> = packing
        .edges
        .iter()
        .flat_map(|e| [e.lo(), e.hi()])
        .collect();
    let rest = inst.graph.without_vertices(&modulator_vertices);
    let cliques = clique_partition(&rest)?;
    Ok(ModulatorOutcome::Modulator(Modulator {
        packing_edges: packing.edges,
        modulator_vertices,
        cliques,
    }))
}

/// Splits the outside neighborhood of `clique` into `A_C`, `B_C` and `D_C`.
///
/// Fails when the sets do not have the shape a valid modulator guarantees: a
/// modulator vertex seeing some but not all (and more than one) clique vertices,
/// another vertex seeing two or more, or `A_C` not a clique.
pub fn classify_clique(
    g: &Graph,
    modulator: &BTreeSet<VertexId>,
    clique: &BTreeSet<VertexId>,
) -> Result<CliqueContext> {
    let mut ctx = CliqueContext {
        clique: clique.clone(),
        ..Default::default()
    };
    let mut outside: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &v in clique {
        for &u in g.try_neighbors(v)? {
            if !clique.contains(&u) {
                outside.entry(u).or_default().push(v);
            }
        }
    }
    for (u, seen) in outside {
        let in_modulator = modulator.contains(&u);
        if in_modulator && seen.len() == clique.len() {
            ctx.a.insert(u);
        } else if seen.len() == 1 && clique.len() > 1 {
            let v = seen[0];
            let (set, per) = if in_modulator {
                (&mut ctx.d, &mut ctx.d_of)
            } else {
                (&mut ctx.b, &mut ctx.b_of)
            };
            set.insert(u);
            per.entry(v).or_default().insert(u);
        } else {
            return Err(Error::invariant(format!(
                "vertex {u} ({}) sees {} of the {} vertices of clique {:?}",
                if in_modulator { "modulator" } else { "outside" },
                seen.len(),
                clique.len(),
                clique
            )));
        }
    }
    if clique.len() > 1 {
        let a: Vec<VertexId> = ctx.a.iter().copied().collect();
        for (i, &x) in a.iter().enumerate() {
            if let Some(&y) = a[i + 1..].iter().find(|&&y| !g.has_edge(x, y)) {
                return Err(Error::invariant(format!(
                    "A_C of {clique:?} is not a clique: {x} and {y} are non-adjacent"
                )));
            }
        }
    }
    Ok(ctx)
}

/// Shrinks the first large clique of the partition by deleting vertices whose
/// neighborhood lies in `C ∪ A_C`.
///
/// A clique qualifies when `|C| >= 3` and `|C| > 4k`. The smallest local vertices
/// are kept and at most `min(|C''| - 1, |C| - (2k + 2))` are deleted, where `C''`
/// is the local set. The partition in `modulator` is updated in place.
pub fn rule_clique_reduction(
    inst: &mut Instance,
    modulator: &mut Modulator,
) -> Result<Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)>> {
    if inst.family != FamilySpec::diamond() {
        return Err(Error::UnsupportedFamily {
            family: inst.family.to_string(),
            reason: "clique reduction applies to the diamond family only".into(),
        });
    }
    let k = inst.k;
    if modulator.packing_edges.len() > 5 * k || modulator.modulator_vertices.len() > 4 * k {
        return Err(Error::invariant(format!(
            "modulator too large for k = {k}: |X| = {}, |V_X| = {}",
            modulator.packing_edges.len(),
            modulator.modulator_vertices.len()
        )));
    }
    for idx in 0..modulator.cliques.len() {
        let clique = &modulator.cliques[idx];
        if clique.len() < 3 || clique.len() <= 4 * k {
            continue;
        }
        let ctx = classify_clique(&inst.graph, &modulator.modulator_vertices, clique)?;
        let local = ctx.local_vertices();
        let non_local = clique.len() - local.len();
        if k >= 1 && non_local + 1 > 4 * k {
            return Err(Error::invariant(format!(
                "clique {clique:?} has {non_local} non-local vertices, more than 4k - 1"
            )));
        }
        let quota = (local.len().saturating_sub(1)).min(clique.len().saturating_sub(2 * k + 2));
        if quota == 0 {
            continue;
        }
        let deleted: BTreeSet<VertexId> = local.iter().rev().take(quota).copied().collect();
        let before = clique.clone();
        for &v in &deleted {
            inst.graph.remove_vertex(v)?;
        }
        let clique = &mut modulator.cliques[idx];
        clique.retain(|v| !deleted.contains(v));
        modulator.cliques.sort();
        if cfg!(debug_assertions) {
            let rest = inst.graph.without_vertices(&modulator.modulator_vertices);
            let fresh = clique_partition(&rest)?;
            debug_assert_eq!(
                fresh, modulator.cliques,
                "in-place partition update drifted"
            );
        }
        return Ok(Some((before, deleted)));
    }
    Ok(None)
}

/// Checks the two structural facts the size analysis rests on, for every clique
/// of the partition:
/// some `x ∈ A_C` is adjacent to some `y ∈ A_C ∪ D_C`, and
/// `B_v` non-empty implies `D_v` non-empty.
pub fn check_modulator_structure(g: &Graph, modulator: &Modulator) -> Result<()> {
    for clique in &modulator.cliques {
        let ctx = classify_clique(g, &modulator.modulator_vertices, clique)?;
        let anchored = ctx.a.iter().any(|&x| {
            ctx.a
                .iter()
                .chain(&ctx.d)
                .any(|&y| x != y && g.has_edge(x, y))
        });
        if !anchored {
            return Err(Error::invariant(format!(
                "no adjacent pair x in A_C, y in A_C ∪ D_C for clique {clique:?}"
            )));
        }
        for v in ctx.b_of.keys() {
            if !ctx.d_of.contains_key(v) {
                return Err(Error::invariant(format!(
                    "vertex {v} of clique {clique:?} has B_v but no D_v"
                )));
            }
        }
    }
    Ok(())
}

/// Vertex bound for diamond kernels: `152k^3 + 70k^2 + 7k`.
pub fn diamond_kernel_bound(k: usize) -> u128 {
    let k = k as u128;
    152 * k * k * k + 70 * k * k + 7 * k
}

/// Vertex bound for `{diamond, K_t}` kernels:
/// `tk + [t(t-1)k/2 (2k+1) + C(tk, 2)] t + t(t-1)k (2k+1)(t-1)`.
pub fn diamond_clique_kernel_bound(k: usize, t: usize) -> u128 {
    let (k, t) = (k as u128, t as u128);
    let singletons = t * (t - 1) * k / 2 * (2 * k + 1) + (t * k) * (t * k).saturating_sub(1) / 2;
    t * k + singletons * t + t * (t - 1) * k * (2 * k + 1) * (t - 1)
}

pub fn kernel_bound(k: usize, family: &FamilySpec) -> u128 {
    match family.t() {
        Some(t) => diamond_clique_kernel_bound(k, t),
        None => diamond_kernel_bound(k),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelOptions {
    /// Verify the structural facts of [`check_modulator_structure`] after the
    /// modulator is built.
    pub check_structure: bool,
    pub phase1: Phase1Options,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            check_structure: cfg!(debug_assertions),
            phase1: Phase1Options::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageSize {
    pub vertices: usize,
    pub edges: usize,
    pub k: usize,
}

impl StageSize {
    fn of(inst: &Instance) -> Self {
        StageSize {
            vertices: inst.graph.vertex_count(),
            edges: inst.graph.edge_count(),
            k: inst.k,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulatorSizes {
    pub packing_edges: usize,
    pub modulator_vertices: usize,
    pub cliques: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub phase1_s: f64,
    pub modulator_s: f64,
    pub phase2_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub family: FamilySpec,
    pub rule_counts: BTreeMap<RuleKind, usize>,
    pub input: StageSize,
    pub after_phase1: StageSize,
    pub after_phase2: Option<StageSize>,
    pub modulator: Option<ModulatorSizes>,
    /// Vertex bound for the output budget; absent when the instance was decided.
    pub size_bound: Option<u128>,
    pub within_bound: Option<bool>,
    pub timings: StageTimings,
}

#[derive(Clone, Debug, PartialEq)]
pub enum KernelOutcome {
    DecidedNo {
        report: KernelReport,
        occurrences: Vec<PatternOccurrence>,
    },
    Kernel {
        instance: Instance,
        report: KernelReport,
        /// Every change from the input to the kernel, replayable on the input.
        log: RuleLog,
    },
}

impl KernelOutcome {
    pub fn report(&self) -> &KernelReport {
        match self {
            KernelOutcome::DecidedNo { report, .. } | KernelOutcome::Kernel { report, .. } => {
                report
            }
        }
    }

    pub fn kernel(&self) -> Option<&Instance> {
        match self {
            KernelOutcome::Kernel { instance, .. } => Some(instance),
            KernelOutcome::DecidedNo { .. } => None,
        }
    }
}

pub fn kernelize_dfed(inst: Instance) -> Result<KernelOutcome> {
    kernelize_dfed_with(inst, &KernelOptions::default())
}

/// Phase 1, modulator, then clique reduction to exhaustion.
pub fn kernelize_dfed_with(inst: Instance, opts: &KernelOptions) -> Result<KernelOutcome> {
    if inst.family != FamilySpec::diamond() {
        return Err(Error::UnsupportedFamily {
            family: inst.family.to_string(),
            reason:
                "this pipeline handles the diamond family; use kernelize_dkt for {diamond, K_t}"
                    .into(),
        });
    }
    kernelize(inst, opts, true)
}

pub fn kernelize_dkt(inst: Instance) -> Result<KernelOutcome> {
    kernelize_dkt_with(inst, &KernelOptions::default())
}

/// Phase 1 followed by the packing check.
pub fn kernelize_dkt_with(inst: Instance, opts: &KernelOptions) -> Result<KernelOutcome> {
    match inst.family.t() {
        Some(t) if inst.family.s() == Some(1) && t >= 4 => kernelize(inst, opts, false),
        _ => Err(Error::UnsupportedFamily {
            family: inst.family.to_string(),
            reason: "this pipeline handles {diamond, K_t} with t >= 4".into(),
        }),
    }
}

/// Dispatches on the family.
pub fn kernelize_auto(inst: Instance, opts: &KernelOptions) -> Result<KernelOutcome> {
    inst.family.require_kernelizable()?;
    if inst.family.t().is_some() {
        kernelize_dkt_with(inst, opts)
    } else {
        kernelize_dfed_with(inst, opts)
    }
}

fn kernelize(inst: Instance, opts: &KernelOptions, reduce_cliques: bool) -> Result<KernelOutcome> {
    let input = StageSize::of(&inst);
    let family = inst.family;
    let mut timings = StageTimings::default();

    let clock = Stopwatch::start();
    let p1 = run_phase1_with(inst, &opts.phase1)?;
    timings.phase1_s = clock.seconds();
    let mut log = p1.log;
    let mut inst = p1.instance;
    let after_phase1 = StageSize::of(&inst);

    let clock = Stopwatch::start();
    let outcome = compute_modulator(&inst)?;
    timings.modulator_s = clock.seconds();

    let mut report = KernelReport {
        family,
        rule_counts: log.counts(),
        input,
        after_phase1,
        after_phase2: None,
        modulator: None,
        size_bound: None,
        within_bound: None,
        timings,
    };
    let mut modulator = match outcome {
        ModulatorOutcome::DecidedNo { occurrences } => {
            return Ok(KernelOutcome::DecidedNo {
                report,
                occurrences,
            })
        }
        ModulatorOutcome::Modulator(m) => m,
    };
    report.modulator = Some(ModulatorSizes {
        packing_edges: modulator.packing_edges.len(),
        modulator_vertices: modulator.modulator_vertices.len(),
        cliques: modulator.cliques.len(),
    });
    if opts.check_structure {
        check_modulator_structure(&inst.graph, &modulator)?;
    }

    let clock = Stopwatch::start();
    if reduce_cliques {
        while let Some((_, deleted)) = rule_clique_reduction(&mut inst, &mut modulator)? {
            log.push(
                RuleKind::CliqueReduction,
                RuleChange::DeleteVertices(deleted),
                inst.k,
                inst.k,
            );
        }
    }
    report.timings.phase2_s = clock.seconds();
    report.rule_counts = log.counts();
    report.after_phase2 = Some(StageSize::of(&inst));
    let bound = kernel_bound(inst.k, &family);
    report.size_bound = Some(bound);
    report.within_bound = Some(inst.graph.vertex_count() as u128 <= bound);
    Ok(KernelOutcome::Kernel {
        instance: inst,
        report,
        log,
    })
}
