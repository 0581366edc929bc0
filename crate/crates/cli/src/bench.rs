use diamond_kernel::instances::{gen_gnp, gen_hard_structure, gen_planted_yes, CliqueGluing};
use diamond_kernel::phase2::{
    kernel_bound, kernelize_auto, KernelOptions, KernelOutcome, StageTimings,
};
use diamond_kernel::{FamilySpec, Instance, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BenchCorpus {
    /// The rule-resistant structure for each listed budget.
    Hard { ks: Vec<usize> },
    /// Block graphs with `k` planted edges.
    Planted {
        n: usize,
        k: usize,
        max_clique: usize,
        count: usize,
        seed: u64,
    },
    Gnp {
        n: usize,
        p: f64,
        k: usize,
        count: usize,
        seed: u64,
        family: FamilySpec,
    },
}

impl BenchCorpus {
    pub fn instances(&self) -> Result<Vec<Instance>> {
        match self {
            BenchCorpus::Hard { ks } => ks.iter().map(|&k| gen_hard_structure(k)).collect(),
            BenchCorpus::Planted {
                n,
                k,
                max_clique,
                count,
                seed,
            } => (0..*count as u64)
                .map(|i| {
                    gen_planted_yes(
                        &CliqueGluing::random(*n, *max_clique, seed + i)?,
                        *k,
                        seed + i,
                    )
                })
                .collect(),
            BenchCorpus::Gnp {
                n,
                p,
                k,
                count,
                seed,
                family,
            } => (0..*count as u64)
                .map(|i| Ok(Instance::new(gen_gnp(*n, *p, seed + i)?, *k, *family)))
                .collect(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BenchCorpus::Hard { .. } => "hard",
            BenchCorpus::Planted { .. } => "planted",
            BenchCorpus::Gnp { .. } => "gnp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub corpus: String,
    pub index: usize,
    pub vertices: usize,
    pub edges: usize,
    pub k: usize,
    pub decided_no: bool,
    pub kernel_vertices: Option<usize>,
    pub kernel_edges: Option<usize>,
    pub kernel_k: Option<usize>,
    pub bound: Option<u128>,
    pub within_bound: Option<bool>,
    pub timings: StageTimings,
}

/// Same columns as [`BenchRow`] with the timings spread out, for CSV.
#[derive(Serialize)]
struct CsvRow<'a> {
    corpus: &'a str,
    index: usize,
    vertices: usize,
    edges: usize,
    k: usize,
    decided_no: bool,
    kernel_vertices: Option<usize>,
    kernel_edges: Option<usize>,
    kernel_k: Option<usize>,
    bound: Option<String>,
    within_bound: Option<bool>,
    phase1_s: f64,
    modulator_s: f64,
    phase2_s: f64,
}

/// Kernelizes every instance of the corpus and records sizes, bounds and stage
/// timings. Instances run in parallel; rows come back in corpus order.
pub fn run_bench(corpus: &BenchCorpus, opts: &KernelOptions) -> Result<Vec<BenchRow>> {
    let instances = corpus.instances()?;
    instances
        .into_par_iter()
        .enumerate()
        .map(|(index, inst)| {
            let (vertices, edges, k, family) = (
                inst.graph.vertex_count(),
                inst.graph.edge_count(),
                inst.k,
                inst.family,
            );
            let out = kernelize_auto(inst, opts)?;
            let timings = out.report().timings;
            let mut row = BenchRow {
                corpus: corpus.name().to_string(),
                index,
                vertices,
                edges,
                k,
                decided_no: true,
                kernel_vertices: None,
                kernel_edges: None,
                kernel_k: None,
                bound: None,
                within_bound: None,
                timings,
            };
            if let KernelOutcome::Kernel { instance, .. } = &out {
                let bound = kernel_bound(instance.k, &family);
                row.decided_no = false;
                row.kernel_vertices = Some(instance.graph.vertex_count());
                row.kernel_edges = Some(instance.graph.edge_count());
                row.kernel_k = Some(instance.k);
                row.bound = Some(bound);
                row.within_bound = Some(instance.graph.vertex_count() as u128 <= bound);
            }
            Ok(row)
        })
        .collect()
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(CsvRow {
            corpus: &r.corpus,
            index: r.index,
            vertices: r.vertices,
            edges: r.edges,
            k: r.k,
            decided_no: r.decided_no,
            kernel_vertices: r.kernel_vertices,
            kernel_edges: r.kernel_edges,
            kernel_k: r.kernel_k,
            bound: r.bound.map(|b| b.to_string()),
            within_bound: r.within_bound,
            phase1_s: r.timings.phase1_s,
            modulator_s: r.timings.modulator_s,
            phase2_s: r.timings.phase2_s,
        })
        .expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}
