//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use diamond_kernel::instances::gen_hard_structure;
use diamond_kernel::phase1::run_phase1;
use diamond_kernel::phase2::{
    compute_modulator, diamond_kernel_bound, kernelize_dfed_with, rule_clique_reduction,
    KernelOptions, KernelOutcome, ModulatorOutcome,
};
use diamond_kernel::solver::brute_force_min_deletion;
use diamond_kernel::{FamilySpec, Graph, Instance, VertexId};
use diamond_kernel_cli::bench::{run_bench, BenchCorpus};
use diamond_kernel_cli::suites::{
    run_matching_suite, run_reduction_suite, run_rules_suite, ReductionConfig, RulesConfig,
    RulesReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_diamond-kernel");

const RULES_TRIALS: usize = 500;
const RULES_BUDGET: Duration = Duration::from_secs(300);
const HARD_BUDGET: Duration = Duration::from_secs(10);
const REDUCTION_TRIALS: usize = 100;
const REDUCTION_BUDGET: Duration = Duration::from_secs(600);
const MATCHING_TRIALS: usize = 200;
const MATCHING_MAX_N: usize = 10;
const MIN_ODD_COMPONENT_GRAPHS: usize = 20;
const CLIQUE_HOSTS: usize = 200;
const SEED: u64 = 1;

struct Line {
    ok: bool,
    text: String,
}

fn line(ok: bool, text: String) -> Line {
    Line { ok, text }
}

/// A clique on `0..c` plus up to three vertices attached at random, so that the
/// clique-reduction rule has something to cut.
fn clique_host(rng: &mut ChaCha8Rng) -> Graph {
    let c = rng.gen_range(6..=8);
    let n = c + rng.gen_range(0..=3);
    let mut g = Graph::with_vertices(n);
    for a in 0..n {
        for b in 0..a {
            if b < c && a < c || rng.gen_bool(0.2) {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
    }
    g
}

fn feasible(inst: &Instance) -> bool {
    brute_force_min_deletion(&inst.graph, &inst.family, inst.k)
        .unwrap()
        .is_some()
}

/// Returns (firings, discrepancies).
fn clique_reduction_check() -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut fired, mut bad) = (0, 0);
    for _ in 0..CLIQUE_HOSTS {
        let g = clique_host(&mut rng);
        let k = rng.gen_range(0..=1);
        let p1 = run_phase1(Instance::diamond(g, k)).unwrap().instance;
        let ModulatorOutcome::Modulator(mut m) = compute_modulator(&p1).unwrap() else {
            continue;
        };
        let mut reduced = p1.clone();
        if rule_clique_reduction(&mut reduced, &mut m)
            .unwrap()
            .is_some()
        {
            fired += 1;
            if feasible(&reduced) != feasible(&p1) {
                bad += 1;
            }
        }
    }
    (fired, bad)
}

fn rules_config(family: FamilySpec) -> RulesConfig {
    RulesConfig {
        trials: RULES_TRIALS,
        seed: SEED,
        family,
        ..RulesConfig::default()
    }
}

fn criteria_1_2_3_7(out: &mut Vec<Line>) {
    let clock = Instant::now();
    let reports: Vec<RulesReport> = [
        FamilySpec::diamond(),
        FamilySpec::diamond_clique(4).unwrap(),
    ]
    .into_iter()
    .map(|f| run_rules_suite(&rules_config(f)).unwrap())
    .collect();
    let elapsed = clock.elapsed();
    let (fired, bad) = clique_reduction_check();

    let rules: Vec<_> = reports
        .iter()
        .map(|r| (r.total("rule."), r.total("pipeline.")))
        .collect();
    let checked: usize = rules.iter().map(|(a, b)| a.checked + b.checked).sum();
    let failed: usize = rules.iter().map(|(a, b)| a.failed + b.failed).sum();
    out.push(line(
        failed == 0 && bad == 0 && fired > 0 && elapsed <= RULES_BUDGET,
        format!(
            "C1 rule safety: {checked} checks on {RULES_TRIALS} instances per family, {failed} failed; \
             clique reduction fired on {fired} of {CLIQUE_HOSTS} clique hosts, {bad} failed; {:.1}s (limit {}s)",
            elapsed.as_secs_f64(),
            RULES_BUDGET.as_secs()
        ),
    ));

    let fix: Vec<_> = reports.iter().map(|r| r.total("fixpoint.")).collect();
    let checked: usize = fix.iter().map(|t| t.checked).sum();
    let failed: usize = fix.iter().map(|t| t.failed).sum();
    out.push(line(
        failed == 0 && checked == 5 * 2 * RULES_TRIALS,
        format!("C2 phase-1 fixpoint: {checked} property checks, {failed} failed"),
    ));

    let mut kernels = 0;
    let mut over = 0;
    for r in &reports {
        kernels += r.kernels.len();
        over += r
            .kernels
            .iter()
            .filter(|k| k.vertices as u128 > k.bound)
            .count();
    }
    let opts = KernelOptions {
        check_structure: true,
        ..KernelOptions::default()
    };
    let bench = [
        BenchCorpus::Hard {
            ks: (2..=6).collect(),
        },
        BenchCorpus::Planted {
            n: 200,
            k: 5,
            max_clique: 8,
            count: 5,
            seed: SEED,
        },
    ];
    let mut largest_planted = 0;
    for c in &bench {
        for row in run_bench(c, &opts).unwrap() {
            if let Some(v) = row.kernel_vertices {
                kernels += 1;
                if row.within_bound != Some(true) {
                    over += 1;
                }
                if row.corpus == "planted" {
                    largest_planted = largest_planted.max(v);
                }
            }
        }
    }
    out.push(line(
        over == 0 && kernels > 0,
        format!(
            "C3 kernel size: {kernels} kernels, {over} over bound; largest planted kernel (n=200, k=5) has \
             {largest_planted} vertices, bound {}",
            diamond_kernel_bound(5)
        ),
    ));

    let t: Vec<_> = reports
        .iter()
        .map(|r| {
            r.tallies
                .get("solver.branching")
                .copied()
                .unwrap_or_default()
        })
        .collect();
    let checked: usize = t.iter().map(|t| t.checked).sum();
    let failed: usize = t.iter().map(|t| t.failed).sum();
    out.push(line(
        failed == 0 && checked == 2 * RULES_TRIALS * 4,
        format!(
            "C7 branching vs brute force: {checked} decisions (k = 0..3), {failed} disagreements"
        ),
    ));
}

fn criterion_4(out: &mut Vec<Line>) {
    let clock = Instant::now();
    let mut bad = Vec::new();
    let opts = KernelOptions {
        check_structure: true,
        ..KernelOptions::default()
    };
    for k in 2..=6usize {
        let inst = gen_hard_structure(k).unwrap();
        let sized = inst.graph.vertex_count() == k * k + 4;
        let unchanged = match kernelize_dfed_with(inst.clone(), &opts).unwrap() {
            KernelOutcome::Kernel { instance, .. } => instance == inst,
            KernelOutcome::DecidedNo { .. } => false,
        };
        if !(sized && unchanged) {
            bad.push(k);
        }
    }
    let elapsed = clock.elapsed();
    out.push(line(
        bad.is_empty() && elapsed <= HARD_BUDGET,
        format!(
            "C4 hard structures k=2..6: k^2+4 vertices and unchanged by kernelization, failures {bad:?}; \
             {:.2}s (limit {}s)",
            elapsed.as_secs_f64(),
            HARD_BUDGET.as_secs()
        ),
    ));
}

fn criteria_5_6(out: &mut Vec<Line>) {
    let clock = Instant::now();
    let cfg = ReductionConfig {
        trials: REDUCTION_TRIALS,
        seed: SEED,
        ..ReductionConfig::default()
    };
    let r = run_reduction_suite(&cfg).unwrap();
    let elapsed = clock.elapsed();
    let names = [
        "stage.subdivision",
        "stage.stars",
        "stage.deletion",
        "stage.editing",
        "structure.k4_free",
        "structure.universal_in_every_occurrence",
    ];
    let checked: usize = names.iter().map(|n| r.tally(n).checked).sum();
    let failed: usize = names.iter().map(|n| r.tally(n).failed).sum();
    let complete = names.iter().all(|n| r.tally(n).checked == r.instances);
    out.push(line(
        failed == 0
            && complete
            && r.instances == REDUCTION_TRIALS * 2
            && elapsed <= REDUCTION_BUDGET,
        format!(
            "C5 reduction equivalence: {} instances (s in 1,2), {checked} checks, {failed} failed, \
             largest reduced graph {} vertices; {:.1}s (limit {}s)",
            r.instances,
            r.max_reduced_vertices,
            elapsed.as_secs_f64(),
            REDUCTION_BUDGET.as_secs()
        ),
    ));
    let lift = r.tally("lift.cover");
    out.push(line(
        lift.failed == 0 && lift.checked == r.feasible && r.feasible > 0,
        format!(
            "C6 lifted covers: {} of {} feasible cases checked, {} invalid",
            lift.checked, r.feasible, lift.failed
        ),
    ));
}

fn criterion_8(out: &mut Vec<Line>) {
    let r = run_matching_suite(MATCHING_TRIALS, MATCHING_MAX_N, SEED).unwrap();
    out.push(line(
        r.passed() && r.agreed == MATCHING_TRIALS && r.with_odd_components >= MIN_ODD_COMPONENT_GRAPHS,
        format!(
            "C8 matching: {} of {} graphs agree, {} with odd components (need {MIN_ODD_COMPONENT_GRAPHS})",
            r.agreed, r.trials, r.with_odd_components
        ),
    ));
}

/// What one run produced: the report digest, stdout when it holds no timings,
/// and the bytes of each listed output file.
#[derive(PartialEq)]
struct RunOutput {
    digest: Option<String>,
    stdout: Option<Vec<u8>>,
    files: Vec<Option<Vec<u8>>>,
}

fn run_in(dir: &Path, args: &[&str], files: &[&str]) -> RunOutput {
    let o = Command::new(BIN)
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    let digest = serde_json::from_slice::<serde_json::Value>(&o.stdout)
        .ok()
        .and_then(|v| v["digest"].as_str().map(str::to_string));
    // these print timings, which their digests leave out
    let timed = matches!(
        args.first(),
        Some(&"kernelize") | Some(&"verify") | Some(&"bench")
    );
    RunOutput {
        digest,
        stdout: (!timed).then_some(o.stdout),
        files: files
            .iter()
            .map(|f| std::fs::read(dir.join(f)).ok())
            .collect(),
    }
}

fn criterion_9(out: &mut Vec<Line>) {
    let commands: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (
            vec![
                "generate", "gnp", "--n", "30", "--p", "0.3", "--k", "4", "--seed", "7", "-o",
                "gnp.txt",
            ],
            vec!["gnp.txt"],
        ),
        (
            vec![
                "generate",
                "planted",
                "--n",
                "60",
                "--k",
                "5",
                "--seed",
                "3",
                "-o",
                "planted.txt",
            ],
            vec!["planted.txt"],
        ),
        (
            vec!["generate", "hard", "--k", "4", "-o", "hard.txt"],
            vec!["hard.txt"],
        ),
        (
            vec![
                "generate", "vc", "--n", "5", "--p", "0.5", "--k", "2", "--seed", "9", "-o",
                "vc.txt",
            ],
            vec!["vc.txt"],
        ),
        (
            vec![
                "generate",
                "reduce-vc",
                "-i",
                "vc.txt",
                "--s",
                "2",
                "-o",
                "red.txt",
                "--trace",
                "trace.json",
            ],
            vec!["red.txt", "trace.json"],
        ),
        (
            vec!["kernelize", "-i", "planted.txt", "-o", "kernel.txt"],
            vec!["kernel.txt"],
        ),
        (
            vec!["solve", "-i", "gnp.txt", "--engine", "search", "--min"],
            vec![],
        ),
        (
            vec!["solve", "-i", "hard.txt", "--engine", "branching"],
            vec![],
        ),
        (vec!["verify", "--trials", "60", "--seed", "5"], vec![]),
        (
            vec![
                "verify",
                "--suite",
                "reduction",
                "--trials",
                "4",
                "--max-n",
                "4",
                "--seed",
                "5",
            ],
            vec![],
        ),
        (
            vec![
                "verify", "--suite", "matching", "--trials", "30", "--seed", "5",
            ],
            vec![],
        ),
        (
            vec!["bench", "--corpus", "hard", "--format", "json"],
            vec![],
        ),
    ];
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut differing = Vec::new();
    for (args, files) in &commands {
        let first = run_in(a.path(), args, files);
        let second = run_in(b.path(), args, files);
        let complete = first.digest.is_some() && first.files.iter().all(Option::is_some);
        if first != second || !complete {
            differing.push(args[..2].join(" "));
        }
    }
    out.push(line(
        differing.is_empty(),
        format!(
            "C9 determinism: {} commands run twice, output files and report digests compared, differing {differing:?}",
            commands.len()
        ),
    ));
}

fn main() -> ExitCode {
    let mut lines = Vec::new();
    criteria_1_2_3_7(&mut lines);
    criterion_4(&mut lines);
    criteria_5_6(&mut lines);
    criterion_8(&mut lines);
    criterion_9(&mut lines);
    lines.sort_by_key(|l| l.text[1..l.text.find(' ').unwrap()].parse::<u32>().unwrap());
    let mut all = true;
    for l in &lines {
        println!("{} {}", if l.ok { "PASS" } else { "FAIL" }, l.text);
        all &= l.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
