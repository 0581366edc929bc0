//! Randomized verification harnesses: rule safety against the brute-force oracle,
//! the vertex-cover reduction, and maximum matching.

use std::collections::{BTreeMap, BTreeSet};

use diamond_kernel::instances::{gen_gnp, lift_solution, reduce_vc_to_sdfed};
use diamond_kernel::matching::maximum_matching;
use diamond_kernel::patterns::{induced_occurrences, is_core_member_edge, is_family_free};
use diamond_kernel::phase1::{
    rule_irrelevant_component, rule_irrelevant_edge, rule_sunflower_with, rule_vertex_split,
    run_phase1_with, Phase1Options, SplitProvenance, SunflowerThreshold,
};
use diamond_kernel::phase2::{
    compute_modulator, kernel_bound, kernelize_auto, rule_clique_reduction, KernelOptions,
    KernelOutcome, ModulatorOutcome,
};
use diamond_kernel::solver::{
    brute_force_min_deletion_capped, is_edit_solution, optimal_vertex_deletion_sets,
    search_edge_modification, search_min_vertex_deletion, solve_branching, EdgeMode, VertexPattern,
};
use diamond_kernel::{EdgeKey, FamilySpec, Graph, Instance, Result, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Discrepancies kept verbatim in a report; the tallies count all of them.
const MAX_LISTED: usize = 50;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub trial: usize,
    pub check: String,
    pub detail: String,
}

#[derive(Default)]
struct Collector {
    tallies: BTreeMap<String, Tally>,
    discrepancies: Vec<Discrepancy>,
}

impl Collector {
    fn record(&mut self, trial: usize, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        let t = self.tallies.entry(check.to_string()).or_default();
        t.checked += 1;
        if !ok {
            t.failed += 1;
            self.discrepancies.push(Discrepancy {
                trial,
                check: check.to_string(),
                detail: detail(),
            });
        }
    }

    fn merge(&mut self, other: Collector) {
        for (k, t) in other.tallies {
            let mine = self.tallies.entry(k).or_default();
            mine.checked += t.checked;
            mine.failed += t.failed;
        }
        self.discrepancies.extend(other.discrepancies);
    }

    fn finish(mut self) -> (BTreeMap<String, Tally>, Vec<Discrepancy>, usize) {
        let total = self.discrepancies.len();
        self.discrepancies.truncate(MAX_LISTED);
        (self.tallies, self.discrepancies, total)
    }
}

/// One random instance of a corpus: `G(n, p)` drawn with `graph_seed`, budget `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusItem {
    pub index: usize,
    pub n: usize,
    pub p: f64,
    pub k: usize,
    pub graph_seed: u64,
}

impl CorpusItem {
    pub fn graph(&self) -> Result<Graph> {
        gen_gnp(self.n, self.p, self.graph_seed)
    }
}

/// Draws `trials` items; every parameter comes from one stream seeded by `seed`.
pub fn corpus(
    trials: usize,
    n_range: (usize, usize),
    probabilities: &[f64],
    max_k: usize,
    seed: u64,
) -> Vec<CorpusItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|index| CorpusItem {
            index,
            n: rng.gen_range(n_range.0..=n_range.1),
            p: *probabilities
                .choose(&mut rng)
                .expect("at least one probability"),
            k: rng.gen_range(0..=max_k),
            graph_seed: rng.gen(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RulesConfig {
    pub trials: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub probabilities: Vec<f64>,
    pub max_k: usize,
    pub seed: u64,
    pub family: FamilySpec,
    pub sunflower: SunflowerThreshold,
    pub oracle_cap: u64,
}

impl Default for RulesConfig {
    fn default() -> Self {
        RulesConfig {
            trials: 500,
            min_n: 5,
            max_n: 9,
            probabilities: vec![0.3, 0.5, 0.7],
            max_k: 3,
            seed: 1,
            family: FamilySpec::diamond(),
            sunflower: SunflowerThreshold::KPlusOne,
            oracle_cap: diamond_kernel::solver::DEFAULT_ORACLE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSize {
    pub trial: usize,
    pub k: usize,
    pub vertices: usize,
    pub bound: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RulesReport {
    pub config: RulesConfig,
    pub tallies: BTreeMap<String, Tally>,
    pub discrepancies: Vec<Discrepancy>,
    pub discrepancy_count: usize,
    pub yes_instances: usize,
    pub decided_no: usize,
    pub kernels: Vec<KernelSize>,
}

impl RulesReport {
    pub fn passed(&self) -> bool {
        self.discrepancy_count == 0
    }

    /// Tallies whose name starts with `prefix`, summed.
    pub fn total(&self, prefix: &str) -> Tally {
        self.tallies
            .iter()
            .filter(|(k, _)| k.starts_with(prefix))
            .fold(Tally::default(), |acc, (_, t)| Tally {
                checked: acc.checked + t.checked,
                failed: acc.failed + t.failed,
            })
    }
}

struct RulesTrial {
    collector: Collector,
    yes: bool,
    decided_no: bool,
    kernel: Option<KernelSize>,
}

/// Applies every rule once and both pipelines to each corpus instance and
/// compares decisions with the brute-force oracle. Also checks the Phase-1
/// fixpoint properties, kernel sizes, and the branching solver at every budget.
pub fn run_rules_suite(cfg: &RulesConfig) -> Result<RulesReport> {
    cfg.family.require_reduction()?;
    let items = corpus(
        cfg.trials,
        (cfg.min_n, cfg.max_n),
        &cfg.probabilities,
        cfg.max_k,
        cfg.seed,
    );
    let trials: Vec<RulesTrial> = items
        .par_iter()
        .map(|item| rules_trial(cfg, item))
        .collect::<Result<_>>()?;
    let mut all = Collector::default();
    let (mut yes, mut decided_no, mut kernels) = (0, 0, Vec::new());
    for t in trials {
        all.merge(t.collector);
        yes += usize::from(t.yes);
        decided_no += usize::from(t.decided_no);
        kernels.extend(t.kernel);
    }
    let (tallies, discrepancies, discrepancy_count) = all.finish();
    Ok(RulesReport {
        config: cfg.clone(),
        tallies,
        discrepancies,
        discrepancy_count,
        yes_instances: yes,
        decided_no,
        kernels,
    })
}

fn rules_trial(cfg: &RulesConfig, item: &CorpusItem) -> Result<RulesTrial> {
    let trial = item.index;
    let inst = Instance::new(item.graph()?, item.k, cfg.family);
    let decide = |i: &Instance| -> Result<bool> {
        Ok(brute_force_min_deletion_capped(&i.graph, &i.family, i.k, cfg.oracle_cap)?.is_some())
    };
    let best =
        brute_force_min_deletion_capped(&inst.graph, &inst.family, cfg.max_k, cfg.oracle_cap)?;
    let before = best.is_some_and(|b| b <= inst.k);
    let mut c = Collector::default();
    let mismatch = |what: &str, after: bool| {
        let what = what.to_string();
        move || {
            format!(
                "{what}: decision {before} before, {after} after (n={}, p={}, k={})",
                item.n, item.p, item.k
            )
        }
    };

    let mut a = inst.clone();
    if let Some(e) = rule_irrelevant_edge(&mut a)? {
        let after = decide(&a)?;
        c.record(
            trial,
            "rule.irrelevant_edge",
            after == before,
            mismatch(&format!("deleted {e}"), after),
        );
    }
    let mut a = inst.clone();
    if let Some(e) = rule_sunflower_with(&mut a, cfg.sunflower)? {
        let after = decide(&a)?;
        c.record(
            trial,
            "rule.sunflower",
            after == before,
            mismatch(&format!("deleted {e}"), after),
        );
    }
    let mut a = inst.clone();
    if let Some(split) = rule_vertex_split(&mut a, &mut SplitProvenance::default())? {
        let after = decide(&a)?;
        c.record(
            trial,
            "rule.vertex_split",
            after == before,
            mismatch(&format!("split {}", split.vertex), after),
        );
    }
    let mut a = inst.clone();
    if let Some(comp) = rule_irrelevant_component(&mut a)? {
        let after = decide(&a)?;
        c.record(
            trial,
            "rule.irrelevant_component",
            after == before,
            mismatch(&format!("removed {comp:?}"), after),
        );
    }

    let phase1 = Phase1Options {
        sunflower: cfg.sunflower,
    };
    let p1 = run_phase1_with(inst.clone(), &phase1)?;
    let out = &p1.instance;
    let after = decide(out)?;
    c.record(
        trial,
        "pipeline.phase1",
        after == before,
        mismatch("phase 1", after),
    );
    check_fixpoint(&mut c, trial, &inst, out)?;

    if cfg.family == FamilySpec::diamond() {
        if let ModulatorOutcome::Modulator(mut m) = compute_modulator(out)? {
            let mut reduced = out.clone();
            if let Some((clique, deleted)) = rule_clique_reduction(&mut reduced, &mut m)? {
                let p1_decision = decide(out)?;
                let after = decide(&reduced)?;
                c.record(trial, "rule.clique_reduction", after == p1_decision, || {
                    format!("deleting {deleted:?} from {clique:?}: decision {p1_decision} before, {after} after")
                });
            }
        }
    }

    let opts = KernelOptions {
        check_structure: true,
        phase1,
    };
    let (decided_no, kernel) = match kernelize_auto(inst.clone(), &opts)? {
        KernelOutcome::DecidedNo { .. } => {
            c.record(
                trial,
                "pipeline.kernel",
                !before,
                mismatch("kernel decided no", false),
            );
            (true, None)
        }
        KernelOutcome::Kernel { instance, .. } => {
            let after = decide(&instance)?;
            c.record(
                trial,
                "pipeline.kernel",
                after == before,
                mismatch("kernel", after),
            );
            let size = KernelSize {
                trial,
                k: instance.k,
                vertices: instance.graph.vertex_count(),
                bound: kernel_bound(instance.k, &cfg.family),
            };
            c.record(
                trial,
                "kernel.size_bound",
                size.vertices as u128 <= size.bound,
                || {
                    format!(
                        "{} vertices exceed {} at k = {}",
                        size.vertices, size.bound, size.k
                    )
                },
            );
            (false, Some(size))
        }
    };

    for k in 0..=cfg.max_k {
        let feasible = solve_branching(&Instance { k, ..inst.clone() }).is_feasible();
        let oracle = best.is_some_and(|b| b <= k);
        c.record(trial, "solver.branching", feasible == oracle, || {
            format!("k = {k}: branching says {feasible}, oracle {oracle}")
        });
    }

    Ok(RulesTrial {
        collector: c,
        yes: before,
        decided_no,
        kernel,
    })
}

fn check_fixpoint(c: &mut Collector, trial: usize, input: &Instance, out: &Instance) -> Result<()> {
    let g = &out.graph;
    let mut non_core = Vec::new();
    for e in g.edges() {
        if !is_core_member_edge(g, e, &out.family)? {
            non_core.push(e);
        }
    }
    c.record(trial, "fixpoint.core_edges", non_core.is_empty(), || {
        format!("non-core edges {non_core:?}")
    });
    let mut bad = Vec::new();
    for v in g.vertices() {
        if g.degree(v) == 0 || g.neighborhood_components(v)?.len() != 1 {
            bad.push(v);
        }
    }
    c.record(
        trial,
        "fixpoint.connected_neighborhoods",
        bad.is_empty(),
        || format!("vertices without a connected neighborhood {bad:?}"),
    );
    let (m_in, m_out, n_out) = (input.graph.edge_count(), g.edge_count(), g.vertex_count());
    c.record(trial, "fixpoint.edge_count", m_out <= m_in, || {
        format!("{m_out} edges after, {m_in} before")
    });
    c.record(trial, "fixpoint.vertex_bound", n_out <= 2 * m_in, || {
        format!("{n_out} vertices after, input has {m_in} edges")
    });
    c.record(trial, "fixpoint.budget", out.k <= input.k, || {
        format!("k grew from {} to {}", input.k, out.k)
    });
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionConfig {
    pub trials: usize,
    pub max_n: usize,
    pub max_k: usize,
    pub s_values: Vec<usize>,
    pub probabilities: Vec<f64>,
    pub seed: u64,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            trials: 100,
            max_n: 5,
            max_k: 3,
            s_values: vec![1, 2],
            probabilities: vec![0.3, 0.5, 0.7],
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub config: ReductionConfig,
    pub instances: usize,
    pub feasible: usize,
    pub tallies: BTreeMap<String, Tally>,
    pub discrepancies: Vec<Discrepancy>,
    pub discrepancy_count: usize,
    pub max_reduced_vertices: usize,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.discrepancy_count == 0
    }

    pub fn tally(&self, name: &str) -> Tally {
        self.tallies.get(name).copied().unwrap_or_default()
    }
}

/// For random vertex-cover instances and each `s`, checks that the cover
/// decision survives every stage of the reduction, that the reduced graph has
/// the expected structure, and that deletion solutions lift to covers.
///
/// The first stage uses exhaustive enumeration. Later stages are too large for
/// it and use the exact branch-and-bound search. Editing feasibility follows
/// from deletion feasibility, so editing is searched only when deletion fails.
pub fn run_reduction_suite(cfg: &ReductionConfig) -> Result<ReductionReport> {
    let items = corpus(
        cfg.trials,
        (1, cfg.max_n),
        &cfg.probabilities,
        cfg.max_k,
        cfg.seed,
    );
    let jobs: Vec<(CorpusItem, usize)> = items
        .iter()
        .flat_map(|it| cfg.s_values.iter().map(move |&s| (*it, s)))
        .collect();
    let results: Vec<(Collector, bool, usize)> = jobs
        .par_iter()
        .map(|(item, s)| reduction_trial(item, *s))
        .collect::<Result<_>>()?;
    let mut all = Collector::default();
    let (mut feasible, mut largest) = (0, 0);
    for (c, f, n) in results {
        all.merge(c);
        feasible += usize::from(f);
        largest = largest.max(n);
    }
    let (tallies, discrepancies, discrepancy_count) = all.finish();
    Ok(ReductionReport {
        config: cfg.clone(),
        instances: jobs.len(),
        feasible,
        tallies,
        discrepancies,
        discrepancy_count,
        max_reduced_vertices: largest,
    })
}

fn reduction_trial(item: &CorpusItem, s: usize) -> Result<(Collector, bool, usize)> {
    let trial = item.index;
    let g = item.graph()?;
    let k = item.k;
    let expected =
        optimal_vertex_deletion_sets(&g, VertexPattern::VertexCover, k, u64::MAX, false)?.is_some();
    let (inst, trace) = reduce_vc_to_sdfed(&g, k, s)?;
    let mut c = Collector::default();
    let (n, m) = (g.vertex_count(), g.edge_count());
    let label = |stage: &str, got: bool| {
        let stage = stage.to_string();
        move || format!("{stage}: expected {expected}, got {got} (n={n}, m={m}, k={k}, s={s})")
    };

    let sub = trace.subdivided_graph(&inst.graph);
    let got = search_min_vertex_deletion(&sub, VertexPattern::VertexCover, inst.k)?
        .0
        .is_some();
    c.record(
        trial,
        "stage.subdivision",
        got == expected,
        label("subdivision", got),
    );
    let starred = trace.starred_graph(&inst.graph);
    let got = search_min_vertex_deletion(&starred, VertexPattern::Star(s + 1), inst.k)?
        .0
        .is_some();
    c.record(trial, "stage.stars", got == expected, label("stars", got));

    let (deletion, _) =
        search_edge_modification(&inst.graph, &inst.family, EdgeMode::Delete, inst.k)?;
    c.record(
        trial,
        "stage.deletion",
        deletion.is_some() == expected,
        label("deletion", deletion.is_some()),
    );
    let editing = match &deletion {
        Some(sol) => is_edit_solution(&inst.graph, &inst.family, sol),
        None => search_edge_modification(&inst.graph, &inst.family, EdgeMode::Edit, inst.k)?
            .0
            .is_some(),
    };
    c.record(
        trial,
        "stage.editing",
        editing == expected,
        label("editing", editing),
    );

    let k4 = FamilySpec::new(None, Some(4))?;
    c.record(
        trial,
        "structure.k4_free",
        is_family_free(&inst.graph, &k4),
        || "reduced graph has a K4".into(),
    );
    let occurrences = induced_occurrences(&inst.graph, &inst.family);
    let stray: Vec<BTreeSet<VertexId>> = occurrences
        .iter()
        .filter(|o| {
            !o.vertices.contains(&trace.universal)
                || !is_star_without(&starred, &o.vertices, trace.universal)
        })
        .map(|o| o.vertices.clone())
        .collect();
    c.record(
        trial,
        "structure.universal_in_every_occurrence",
        stray.is_empty(),
        || format!("occurrences not centered at w: {stray:?}"),
    );

    if let Some(sol) = &deletion {
        let ok = match lift_solution(&trace, &inst, sol) {
            Ok(lifted) => {
                lifted.cover.len() <= k
                    && g.edges().all(|e: EdgeKey| {
                        lifted.cover.contains(&e.lo()) || lifted.cover.contains(&e.hi())
                    })
            }
            Err(_) => false,
        };
        c.record(trial, "lift.cover", ok, || {
            format!("lifting {sol:?} failed")
        });
    }
    Ok((c, expected, inst.graph.vertex_count()))
}

/// Whether `vs` minus `w` induces a star in `g`.
fn is_star_without(g: &Graph, vs: &BTreeSet<VertexId>, w: VertexId) -> bool {
    let rest: Vec<VertexId> = vs.iter().copied().filter(|&v| v != w).collect();
    rest.iter().any(|&c| {
        let leaves: Vec<VertexId> = rest.iter().copied().filter(|&v| v != c).collect();
        leaves.iter().all(|&l| g.has_edge(c, l))
            && leaves
                .iter()
                .enumerate()
                .all(|(i, &a)| leaves[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingReport {
    pub trials: usize,
    pub seed: u64,
    pub with_odd_components: usize,
    pub agreed: usize,
    pub disagreements: Vec<usize>,
}

impl MatchingReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares the blossom matching with exhaustive search on random graphs with at
/// most `max_n` vertices. Every fourth graph is a union of odd cycles with
/// chords.
pub fn run_matching_suite(trials: usize, max_n: usize, seed: u64) -> Result<MatchingReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::with_capacity(trials);
    for i in 0..trials {
        let g = if i % 4 == 0 {
            odd_cycles(&mut rng, max_n)
        } else {
            let n = rng.gen_range(1..=max_n);
            gen_gnp(n, rng.gen_range(0.1..0.9), rng.gen())?
        };
        graphs.push(g);
    }
    let mut report = MatchingReport {
        trials,
        seed,
        with_odd_components: 0,
        agreed: 0,
        disagreements: Vec::new(),
    };
    for (i, g) in graphs.iter().enumerate() {
        if g.connected_components()
            .iter()
            .any(|c| c.len() >= 3 && c.len() % 2 == 1)
        {
            report.with_odd_components += 1;
        }
        let m = maximum_matching(g);
        let valid = {
            let mut seen = BTreeSet::new();
            m.iter()
                .all(|e| g.has_edge_key(*e) && seen.insert(e.lo()) && seen.insert(e.hi()))
        };
        if valid && m.len() == exhaustive_matching(g) {
            report.agreed += 1;
        } else {
            report.disagreements.push(i);
        }
    }
    Ok(report)
}

fn odd_cycles(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let mut g = Graph::new();
    let mut used = 0;
    while used + 3 <= max_n {
        let len = [3, 5, 7]
            .into_iter()
            .filter(|&l| used + l <= max_n)
            .collect::<Vec<_>>();
        let len = *len.choose(rng).expect("a cycle fits");
        let ids: Vec<VertexId> = (0..len).map(|_| g.add_vertex()).collect();
        for i in 0..len {
            g.add_edge(ids[i], ids[(i + 1) % len]).expect("fresh cycle");
        }
        for _ in 0..rng.gen_range(0..=len / 2) {
            let (a, b) = (rng.gen_range(0..len), rng.gen_range(0..len));
            if a != b {
                g.add_edge(ids[a], ids[b]).expect("vertices exist");
            }
        }
        used += len;
        if rng.gen_bool(0.4) {
            break;
        }
    }
    if g.is_empty() {
        g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).expect("triangle");
    }
    g
}

/// Maximum matching size by trying, for the first edge, both skipping and taking
/// it.
pub fn exhaustive_matching(g: &Graph) -> usize {
    fn go(edges: &[EdgeKey], used: &mut BTreeSet<VertexId>) -> usize {
        let Some((first, rest)) = edges.split_first() else {
            return 0;
        };
        let skip = go(rest, used);
        if used.contains(&first.lo()) || used.contains(&first.hi()) {
            return skip;
        }
        used.extend([first.lo(), first.hi()]);
        let take = 1 + go(rest, used);
        used.remove(&first.lo());
        used.remove(&first.hi());
        skip.max(take)
    }
    let edges: Vec<EdgeKey> = g.edges().collect();
    go(&edges, &mut BTreeSet::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        let a = corpus(20, (5, 9), &[0.3, 0.5], 3, 4);
        assert_eq!(a, corpus(20, (5, 9), &[0.3, 0.5], 3, 4));
        assert!(a.iter().all(|i| (5..=9).contains(&i.n) && i.k <= 3));
        assert_ne!(a, corpus(20, (5, 9), &[0.3, 0.5], 3, 5));
    }

    #[test]
    fn small_suites_pass() {
        let cfg = RulesConfig {
            trials: 20,
            ..Default::default()
        };
        let report = run_rules_suite(&cfg).unwrap();
        assert!(report.passed(), "{:?}", report.discrepancies);
        assert_eq!(report.tallies["solver.branching"].checked, 80);
        let red = run_reduction_suite(&ReductionConfig {
            trials: 5,
            max_n: 3,
            ..Default::default()
        })
        .unwrap();
        assert!(red.passed(), "{:?}", red.discrepancies);
        assert_eq!(red.instances, 10);
        let m = run_matching_suite(40, 8, 3).unwrap();
        assert!(m.passed());
        assert!(m.with_odd_components >= 10);
    }
}
