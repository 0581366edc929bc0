//! The operations behind the page, as plain functions from instance text to JSON
//! values so they can be tested without a browser.

use std::collections::BTreeMap;

use diamond_kernel::format::{parse_instance, serialize_instance};
use diamond_kernel::instances::{gen_gnp, gen_hard_structure, gen_planted_yes, CliqueGluing};
use diamond_kernel::patterns::find_induced_occurrence;
use diamond_kernel::phase1::RuleChange;
use diamond_kernel::phase2::{kernelize_auto, KernelOptions, KernelOutcome};
use diamond_kernel::solver::{
    search_min_edge_modification, solve_min_branching, BranchingOptions, EdgeMode,
};
use diamond_kernel::{FamilySpec, Graph, Instance, VertexId};
use serde::Serialize;
use serde_json::{json, Value};

/// Graphs above this size are solved by plain branching instead of the bitset
/// search.
const SEARCH_LIMIT: usize = 128;
/// Keeps generated pictures readable.
const MAX_VERTICES: usize = 400;

#[derive(Debug, Serialize)]
pub struct GraphView {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphView {
    pub fn of(g: &Graph) -> Self {
        GraphView {
            vertices: g.vertices().map(|v| v.0).collect(),
            edges: g.edges().map(|e| [e.lo().0, e.hi().0]).collect(),
        }
    }
}

fn parse(text: &str) -> Result<Instance, String> {
    parse_instance(text).map_err(|e| e.to_string())
}

/// Instance text and graph from one of the generators: `gnp`, `planted` or
/// `hard`.
pub fn generate(kind: &str, n: usize, k: usize, p: f64, seed: u64) -> Result<Value, String> {
    let inst = match kind {
        "gnp" => {
            check_size(n)?;
            Instance::new(
                gen_gnp(n, p, seed).map_err(|e| e.to_string())?,
                k,
                FamilySpec::diamond(),
            )
        }
        "planted" => {
            check_size(n)?;
            let base = CliqueGluing::random(n, 6, seed).map_err(|e| e.to_string())?;
            gen_planted_yes(&base, k, seed).map_err(|e| e.to_string())?
        }
        "hard" => {
            check_size(k * k + 4)?;
            gen_hard_structure(k).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown generator `{other}`")),
    };
    Ok(json!({
        "text": serialize_instance(&inst, &[]),
        "input": GraphView::of(&inst.graph),
        "k": inst.k,
    }))
}

fn check_size(n: usize) -> Result<(), String> {
    if n > MAX_VERTICES {
        return Err(format!("at most {MAX_VERTICES} vertices, asked for {n}"));
    }
    Ok(())
}

/// Input and kernel graphs, the kernel's vertices mapped to the input vertex
/// they descend from, and the rule statistics.
pub fn kernelize(text: &str) -> Result<Value, String> {
    let inst = parse(text)?;
    let input = GraphView::of(&inst.graph);
    let k = inst.k;
    let out = kernelize_auto(inst, &KernelOptions::default()).map_err(|e| e.to_string())?;
    let report = out.report().clone();
    Ok(match out {
        KernelOutcome::Kernel { instance, log, .. } => {
            let mut origin: BTreeMap<usize, usize> = BTreeMap::new();
            for ev in &log.events {
                if let RuleChange::SplitVertex(s) = &ev.change {
                    let root = origin.get(&s.vertex.0).copied().unwrap_or(s.vertex.0);
                    for (part, _) in &s.parts {
                        origin.insert(part.0, root);
                    }
                }
            }
            let origin: BTreeMap<usize, usize> = instance
                .graph
                .vertices()
                .map(|VertexId(v)| (v, origin.get(&v).copied().unwrap_or(v)))
                .collect();
            json!({
                "outcome": "kernel",
                "input": input,
                "k": k,
                "kernel": GraphView::of(&instance.graph),
                "kernel_k": instance.k,
                "origin": origin,
                "rule_counts": report.rule_counts,
                "bound": report.size_bound.map(|b| b.to_string()),
                "text": serialize_instance(&instance, &[]),
            })
        }
        KernelOutcome::DecidedNo { occurrences, .. } => json!({
            "outcome": "no",
            "input": input,
            "k": k,
            "occurrences": occurrences.iter().map(|o| o.vertices.iter().map(|v| v.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "rule_counts": report.rule_counts,
        }),
    })
}

/// A smallest deletion set within the budget, and the first forbidden induced
/// subgraph of the input for highlighting.
pub fn solve(text: &str) -> Result<Value, String> {
    let inst = parse(text)?;
    let first = find_induced_occurrence(&inst.graph, &inst.family)
        .map(|o| o.vertices.iter().map(|v| v.0).collect::<Vec<_>>());
    let (solution, nodes) = if inst.graph.vertex_count() <= SEARCH_LIMIT {
        let (sol, stats) =
            search_min_edge_modification(&inst.graph, &inst.family, EdgeMode::Delete, inst.k)
                .map_err(|e| e.to_string())?;
        (sol, stats.nodes)
    } else {
        let (sol, stats) = solve_min_branching(
            &inst,
            &BranchingOptions {
                packing_bound: true,
            },
        );
        (sol.edges().cloned(), stats.nodes)
    };
    Ok(json!({
        "input": GraphView::of(&inst.graph),
        "k": inst.k,
        "feasible": solution.is_some(),
        "delete": solution.iter().flatten().map(|e| [e.lo().0, e.hi().0]).collect::<Vec<_>>(),
        "first_occurrence": first,
        "nodes": nodes,
    }))
}
