use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use diamond_kernel::format::{parse_instance, parse_vc, serialize_instance, serialize_vc};
use diamond_kernel::instances::{
    gen_gnp, gen_hard_structure, gen_planted_yes, reduce_vc_to_sdfed, CliqueGluing,
};
use diamond_kernel::phase1::SunflowerThreshold;
use diamond_kernel::phase2::{kernelize_auto, KernelOptions, KernelOutcome};
use diamond_kernel::solver::{
    is_edit_solution, optimal_deletion_sets, optimal_editing_sets, search_edge_modification,
    search_min_edge_modification, solve_branching_with, solve_min_branching, BranchingOptions,
    EdgeMode, DEFAULT_ORACLE_CAP,
};
use diamond_kernel::{EdgeKey, FamilySpec, Instance};
use serde::Serialize;
use serde_json::json;

use crate::bench::{rows_to_csv, run_bench, BenchCorpus};
use crate::report::{sha256_hex, RunReport};
use crate::suites::{
    run_matching_suite, run_reduction_suite, run_rules_suite, ReductionConfig, RulesConfig,
};
use crate::{exit, CliError};

pub const ORACLE_CAP_ENV: &str = "DIAMOND_KERNEL_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "diamond-kernel",
    version,
    about = "Kernels and exact solvers for diamond-free edge deletion"
)]
pub struct Cli {
    /// Largest number of candidate sets a brute-force oracle may enumerate.
    /// Overrides DIAMOND_KERNEL_ORACLE_CAP.
    #[arg(long, global = true)]
    pub oracle_cap: Option<u64>,
    /// Check the structural facts about the modulator while kernelizing.
    #[arg(long, global = true)]
    pub debug_assert: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce an instance to a kernel or decide that it is a no-instance.
    Kernelize(KernelizeArgs),
    /// Solve an instance exactly.
    Solve(SolveArgs),
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Run a randomized verification suite against brute-force oracles.
    Verify(VerifyArgs),
    /// Kernelize a generated corpus and report sizes and stage timings.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct KernelizeArgs {
    /// Instance file, `-` for stdin.
    #[arg(short, long, default_value = "-")]
    pub input: PathBuf,
    /// Where to write the kernel instance.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Where to write the JSON report; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Replace the family named in the file.
    #[arg(long)]
    pub family: Option<FamilySpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Branch on the first occurrence.
    Branching,
    /// Enumerate deletion sets.
    Brute,
    /// Enumerate toggle sets over all vertex pairs.
    BruteEdit,
    /// Branch and bound over deletions (at most 128 vertices).
    Search,
    /// Branch and bound over toggles (at most 128 vertices).
    SearchEdit,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(short, long, default_value = "-")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Engine::Branching)]
    pub engine: Engine,
    /// Re-check that the solution leaves no forbidden induced subgraph.
    #[arg(long)]
    pub verify: bool,
    /// Return a smallest solution. The brute engines always do.
    #[arg(long)]
    pub min: bool,
    #[arg(long)]
    pub family: Option<FamilySpec>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub kind: GenerateKind,
    /// Instance output; stdout when absent.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON report output. Without it the report goes to stdout only when the
    /// instance does not.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// Random graph G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value = "diamond")]
        family: FamilySpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cliques glued at cut vertices plus `k` random extra edges.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        max_clique: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// `k` disjoint `k`-cliques attached to a diamond; no reduction rule applies.
    Hard {
        #[arg(long)]
        k: usize,
    },
    /// Random vertex-cover instance.
    Vc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduce a triangle-free vertex-cover instance to s-diamond-free edge deletion.
    ReduceVc {
        #[arg(short, long, default_value = "-")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Where to write the reduction trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rules,
    Reduction,
    Matching,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mutant {
    /// Fire the sunflower rule at `k` instead of `k + 1` petals.
    SunflowerK,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Rules)]
    pub suite: Suite,
    /// Same as `--suite rules`.
    #[arg(long, conflicts_with = "suite")]
    pub rules: bool,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub min_n: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "diamond")]
    pub family: FamilySpec,
    /// Vertex-cover sizes for the reduction suite.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    /// Lift the size guard on `--max-n`.
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, value_enum, hide = true)]
    pub mutant: Option<Mutant>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusKind {
    Hard,
    Planted,
    Gnp,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = CorpusKind::All)]
    pub corpus: CorpusKind,
    #[arg(long, value_enum, default_value_t = BenchFormat::Json)]
    pub format: BenchFormat,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Instances per random corpus.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Largest `--max-n` each suite accepts without `--allow-large`.
const RULES_MAX_N: usize = 9;
const REDUCTION_MAX_N: usize = 5;
const MATCHING_MAX_N: usize = 12;

struct Ctx<'a> {
    oracle_cap: u64,
    kernel: KernelOptions,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Writes `text` to `path`, or to stdout when there is no path.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("stdout", e)),
        }
    }
}

/// Runs one command and returns its exit code. `env_cap` is the value of
/// [`ORACLE_CAP_ENV`], if set.
pub fn run(cli: Cli, env_cap: Option<&str>, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let oracle_cap = match (cli.oracle_cap, env_cap) {
        (Some(c), _) => c,
        (None, Some(s)) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("{ORACLE_CAP_ENV} must be an integer, found `{s}`"))
        })?,
        (None, None) => DEFAULT_ORACLE_CAP,
    };
    let kernel = KernelOptions {
        check_structure: cli.debug_assert || cfg!(debug_assertions),
        ..KernelOptions::default()
    };
    let mut ctx = Ctx {
        oracle_cap,
        kernel,
        stdout,
    };
    match cli.command {
        Command::Kernelize(a) => kernelize(&mut ctx, a),
        Command::Solve(a) => solve(&mut ctx, a),
        Command::Generate(a) => generate(&mut ctx, a),
        Command::Verify(a) => verify(&mut ctx, a),
        Command::Bench(a) => bench(&mut ctx, a),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io("stdin", e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

fn load(path: &Path, family: Option<FamilySpec>) -> Result<(Instance, String), CliError> {
    let text = read_input(path)?;
    let mut inst =
        parse_instance(&text).map_err(|e| CliError::Input(path.display().to_string(), e))?;
    if let Some(f) = family {
        inst.family = f;
    }
    Ok((inst, sha256_hex(text.as_bytes())))
}

fn pairs(edges: &BTreeSet<EdgeKey>) -> Vec<[usize; 2]> {
    edges.iter().map(|e| [e.lo().0, e.hi().0]).collect()
}

fn outcome_name(code: i32) -> &'static str {
    match code {
        exit::OK => "ok",
        exit::NO => "no",
        _ => "failed",
    }
}

fn kernelize(ctx: &mut Ctx, a: KernelizeArgs) -> Result<i32, CliError> {
    let (inst, digest) = load(&a.input, a.family)?;
    let out = kernelize_auto(inst, &ctx.kernel)?;
    let report = out.report().clone();
    let timings = BTreeMap::from([
        ("phase1_s".to_string(), report.timings.phase1_s),
        ("modulator_s".to_string(), report.timings.modulator_s),
        ("phase2_s".to_string(), report.timings.phase2_s),
    ]);
    let (code, result) = match &out {
        KernelOutcome::Kernel { instance, log, .. } => {
            let text = serialize_instance(instance, &[]);
            if let Some(p) = &a.out {
                std::fs::write(p, &text).map_err(|e| CliError::io(p, e))?;
            }
            let result = json!({
                "kernel": report,
                "rule_firings": log.len(),
                "kernel_digest": sha256_hex(text.as_bytes()),
            });
            (exit::OK, result)
        }
        KernelOutcome::DecidedNo { occurrences, .. } => {
            let witnesses: Vec<Vec<usize>> = occurrences
                .iter()
                .map(|o| o.vertices.iter().map(|v| v.0).collect())
                .collect();
            (
                exit::NO,
                json!({ "kernel": report, "disjoint_occurrences": witnesses }),
            )
        }
    };
    let outcome = if code == exit::OK {
        "kernelized"
    } else {
        "decided-no"
    };
    let rr = RunReport::new("kernelize", outcome, None, Some(digest), result, timings);
    ctx.emit(a.report.as_deref(), &rr.to_json())?;
    Ok(code)
}

#[derive(Serialize)]
struct SolveResult {
    engine: &'static str,
    k: usize,
    feasible: bool,
    minimum: bool,
    size: Option<usize>,
    delete: Vec<[usize; 2]>,
    add: Vec<[usize; 2]>,
    verified: Option<bool>,
    nodes: Option<u64>,
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Branching => "branching",
        Engine::Brute => "brute",
        Engine::BruteEdit => "brute-edit",
        Engine::Search => "search",
        Engine::SearchEdit => "search-edit",
    }
}

fn solve(ctx: &mut Ctx, a: SolveArgs) -> Result<i32, CliError> {
    let (inst, digest) = load(&a.input, a.family)?;
    let g = &inst.graph;
    let (toggles, nodes, minimum) = match a.engine {
        Engine::Branching => {
            let opts = BranchingOptions {
                packing_bound: true,
            };
            let (sol, stats) = if a.min {
                solve_min_branching(&inst, &opts)
            } else {
                solve_branching_with(&inst, &opts)
            };
            (sol.edges().cloned(), Some(stats.nodes), a.min)
        }
        Engine::Brute | Engine::BruteEdit => {
            let found = if a.engine == Engine::Brute {
                optimal_deletion_sets(g, &inst.family, inst.k, ctx.oracle_cap, true)?
            } else {
                optimal_editing_sets(g, &inst.family, inst.k, ctx.oracle_cap, true)?
            };
            (
                found.and_then(|(_, sets)| sets.into_iter().next()),
                None,
                true,
            )
        }
        Engine::Search | Engine::SearchEdit => {
            let mode = if a.engine == Engine::Search {
                EdgeMode::Delete
            } else {
                EdgeMode::Edit
            };
            let (sol, stats) = if a.min {
                search_min_edge_modification(g, &inst.family, mode, inst.k)?
            } else {
                search_edge_modification(g, &inst.family, mode, inst.k)?
            };
            (sol, Some(stats.nodes), a.min)
        }
    };
    let verified = match (&toggles, a.verify) {
        (Some(t), true) => Some(t.len() <= inst.k && is_edit_solution(g, &inst.family, t)),
        _ => None,
    };
    let (delete, add): (BTreeSet<EdgeKey>, BTreeSet<EdgeKey>) = toggles
        .iter()
        .flatten()
        .partition(|e| g.has_edge(e.lo(), e.hi()));
    let result = SolveResult {
        engine: engine_name(a.engine),
        k: inst.k,
        feasible: toggles.is_some(),
        minimum,
        size: toggles.as_ref().map(BTreeSet::len),
        delete: pairs(&delete),
        add: pairs(&add),
        verified,
        nodes,
    };
    let code = match (verified, toggles.is_some()) {
        (Some(false), _) => exit::FAILURE,
        (_, true) => exit::OK,
        (_, false) => exit::NO,
    };
    if verified == Some(false) {
        eprintln!("solution failed verification");
    }
    let outcome = match code {
        exit::OK => "feasible",
        exit::NO => "infeasible",
        _ => "verification-failed",
    };
    let rr = RunReport::new(
        "solve",
        outcome,
        None,
        Some(digest),
        result,
        BTreeMap::new(),
    );
    ctx.emit(a.report.as_deref(), &rr.to_json())?;
    Ok(code)
}

fn generate(ctx: &mut Ctx, a: GenerateArgs) -> Result<i32, CliError> {
    let mut seed = None;
    let mut input_digest = None;
    let (text, result) = match a.kind {
        GenerateKind::Gnp {
            n,
            p,
            k,
            family,
            seed: s,
        } => {
            seed = Some(s);
            let inst = Instance::new(gen_gnp(n, p, s)?, k, family);
            let comment = format!("gnp n={n} p={p} seed={s}");
            (serialize_instance(&inst, &[comment]), summary(&inst))
        }
        GenerateKind::Planted {
            n,
            k,
            max_clique,
            seed: s,
        } => {
            seed = Some(s);
            let base = CliqueGluing::random(n, max_clique, s)?;
            let inst = gen_planted_yes(&base, k, s)?;
            let comment = format!("planted n={n} k={k} max_clique={max_clique} seed={s}");
            (serialize_instance(&inst, &[comment]), summary(&inst))
        }
        GenerateKind::Hard { k } => {
            let inst = gen_hard_structure(k)?;
            (
                serialize_instance(&inst, &[format!("hard k={k}")]),
                summary(&inst),
            )
        }
        GenerateKind::Vc { n, p, k, seed: s } => {
            seed = Some(s);
            let g = gen_gnp(n, p, s)?;
            let text = serialize_vc(&g, k, &[format!("vc n={n} p={p} seed={s}")]);
            let result = json!({ "vertices": g.vertex_count(), "edges": g.edge_count(), "k": k });
            (text, result)
        }
        GenerateKind::ReduceVc { input, s, trace } => {
            let raw = read_input(&input)?;
            input_digest = Some(sha256_hex(raw.as_bytes()));
            let (g, k) =
                parse_vc(&raw).map_err(|e| CliError::Input(input.display().to_string(), e))?;
            let (inst, tr) = reduce_vc_to_sdfed(&g, k, s)?;
            if let Some(p) = &trace {
                let mut json = serde_json::to_string_pretty(&tr).expect("trace serializes");
                json.push('\n');
                std::fs::write(p, json).map_err(|e| CliError::io(p, e))?;
            }
            let comment = format!(
                "reduced from vertex cover, k={k}, s={s}, universal vertex {}",
                tr.universal
            );
            let mut result = summary(&inst);
            result["universal"] = json!(tr.universal.0);
            (serialize_instance(&inst, &[comment]), result)
        }
    };
    let result = json!({ "instance": result, "instance_digest": sha256_hex(text.as_bytes()) });
    let rr = RunReport::new(
        "generate",
        "ok",
        seed,
        input_digest,
        result,
        BTreeMap::new(),
    );
    ctx.emit(a.out.as_deref(), &text)?;
    match (&a.report, &a.out) {
        (Some(p), _) => ctx.emit(Some(p), &rr.to_json())?,
        (None, Some(_)) => ctx.emit(None, &rr.to_json())?,
        (None, None) => {}
    }
    Ok(exit::OK)
}

fn summary(inst: &Instance) -> serde_json::Value {
    json!({
        "vertices": inst.graph.vertex_count(),
        "edges": inst.graph.edge_count(),
        "k": inst.k,
        "family": inst.family.to_string(),
    })
}

fn guard_n(suite: &str, max_n: usize, limit: usize, allow: bool) -> Result<(), CliError> {
    if max_n > limit && !allow {
        return Err(CliError::Guard(format!(
            "{suite} suite with --max-n {max_n} exceeds the default limit of {limit}; pass --allow-large to run it anyway"
        )));
    }
    Ok(())
}

fn verify(ctx: &mut Ctx, a: VerifyArgs) -> Result<i32, CliError> {
    let suite = if a.rules { Suite::Rules } else { a.suite };
    let clock = std::time::Instant::now();
    let (passed, result) = match suite {
        Suite::Rules => {
            let d = RulesConfig::default();
            let cfg = RulesConfig {
                trials: a.trials.unwrap_or(d.trials),
                min_n: a.min_n.unwrap_or(d.min_n),
                max_n: a.max_n.unwrap_or(d.max_n),
                max_k: a.max_k.unwrap_or(d.max_k),
                seed: a.seed,
                family: a.family,
                sunflower: match a.mutant {
                    Some(Mutant::SunflowerK) => SunflowerThreshold::K,
                    None => SunflowerThreshold::KPlusOne,
                },
                oracle_cap: ctx.oracle_cap,
                ..d
            };
            if cfg.min_n > cfg.max_n {
                return Err(CliError::Usage("--min-n exceeds --max-n".into()));
            }
            guard_n("rules", cfg.max_n, RULES_MAX_N, a.allow_large)?;
            let r = run_rules_suite(&cfg)?;
            (
                r.passed(),
                serde_json::to_value(r).expect("report serializes"),
            )
        }
        Suite::Reduction => {
            let d = ReductionConfig::default();
            let cfg = ReductionConfig {
                trials: a.trials.unwrap_or(d.trials),
                max_n: a.max_n.unwrap_or(d.max_n),
                max_k: a.max_k.unwrap_or(d.max_k),
                s_values: a.s.clone().unwrap_or(d.s_values.clone()),
                seed: a.seed,
                ..d
            };
            guard_n("reduction", cfg.max_n, REDUCTION_MAX_N, a.allow_large)?;
            let r = run_reduction_suite(&cfg)?;
            (
                r.passed(),
                serde_json::to_value(r).expect("report serializes"),
            )
        }
        Suite::Matching => {
            let max_n = a.max_n.unwrap_or(10);
            guard_n("matching", max_n, MATCHING_MAX_N, a.allow_large)?;
            let r = run_matching_suite(a.trials.unwrap_or(200), max_n, a.seed)?;
            (
                r.passed(),
                serde_json::to_value(r).expect("report serializes"),
            )
        }
    };
    let code = if passed { exit::OK } else { exit::FAILURE };
    let timings = BTreeMap::from([("total_s".to_string(), clock.elapsed().as_secs_f64())]);
    let outcome = if passed { "passed" } else { "discrepancies" };
    let rr = RunReport::new("verify", outcome, Some(a.seed), None, result, timings);
    ctx.emit(a.report.as_deref(), &rr.to_json())?;
    Ok(code)
}

/// Corpora for `bench`: the hard structures for budgets 2 to 6, planted block
/// graphs with 200 vertices and budget 5, and sparse random graphs.
pub fn bench_corpora(kind: CorpusKind, count: usize, seed: u64) -> Vec<BenchCorpus> {
    let hard = BenchCorpus::Hard {
        ks: (2..=6).collect(),
    };
    let planted = BenchCorpus::Planted {
        n: 200,
        k: 5,
        max_clique: 8,
        count,
        seed,
    };
    let gnp = BenchCorpus::Gnp {
        n: 40,
        p: 0.1,
        k: 3,
        count,
        seed,
        family: FamilySpec::diamond(),
    };
    match kind {
        CorpusKind::Hard => vec![hard],
        CorpusKind::Planted => vec![planted],
        CorpusKind::Gnp => vec![gnp],
        CorpusKind::All => vec![hard, planted, gnp],
    }
}

fn bench(ctx: &mut Ctx, a: BenchArgs) -> Result<i32, CliError> {
    let mut rows = Vec::new();
    for c in bench_corpora(a.corpus, a.count, a.seed) {
        rows.extend(run_bench(&c, &ctx.kernel)?);
    }
    let violations = rows
        .iter()
        .filter(|r| r.within_bound == Some(false))
        .count();
    let code = if violations == 0 {
        exit::OK
    } else {
        exit::FAILURE
    };
    let text = match a.format {
        BenchFormat::Csv => rows_to_csv(&rows),
        BenchFormat::Json => {
            let result = json!({ "rows": rows, "bound_violations": violations });
            RunReport::new(
                "bench",
                outcome_name(code),
                Some(a.seed),
                None,
                result,
                BTreeMap::new(),
            )
            .to_json()
        }
    };
    ctx.emit(a.out.as_deref(), &text)?;
    if violations > 0 {
        eprintln!("{violations} kernels exceed their size bound");
    }
    Ok(code)
}
