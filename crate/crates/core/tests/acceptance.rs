//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::Rng;

use stablecut::connectivity::vertex_connectivity;
use stablecut::covering::{
    binomial, build_hash_family, build_lopsided_family, build_modulator_family, build_random_family, draw_random_cover,
    draw_success_bound, perfect_hash_family, random_family_size, verify_covering, Construction, CoverageVerdict,
    CoveringFamily, FamilyOptions,
};
use stablecut::gen::{dense_core, disjoint_cliques, random_degenerate, random_digraph, random_graph, random_terminals};
use stablecut::graph::{degeneracy, degeneracy_order, TerminalPairs, UndirectedGraph, Vertex};
use stablecut::oracle::{self, brute_force, OracleLimits, Problem};
use stablecut::rng::stream;
use stablecut::separators::enumerate_important_separators;
use stablecut::solvers::{stable_dfvs, stable_multicut, stable_oct, stable_st_separator, Mode, Scope, SolveResult};
use stablecut::sparsifier::{degeneracy_reduce, mader_subgraph, Thresholds};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// One-sided z value for 99% confidence.
const Z_99: f64 = 2.326;
/// Allowed ratio between a deterministic family and its reference size.
const SIZE_SLACK: f64 = 8.0;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn covered(g: &UndirectedGraph, k: usize, family: &CoveringFamily) -> Result<(), String> {
    match verify_covering(g, k, family, OracleLimits::default()).map_err(|e| e.to_string())? {
        CoverageVerdict::Covered => Ok(()),
        other => Err(format!("{} family: {other:?}", family.construction.tag())),
    }
}

/// Lopsided family of `g - modulator`, in the ids of `g`.
fn inner_family(
    g: &UndirectedGraph,
    modulator: &[Vertex],
    k: usize,
    options: &FamilyOptions,
) -> Result<CoveringFamily, String> {
    let rest = g.without_vertices(modulator);
    let mut inner = build_lopsided_family(&rest.graph, k, options).map_err(|e| e.to_string())?;
    for m in &mut inner.members {
        *m = rest.to_original(m);
    }
    Ok(inner)
}

fn covering_correctness() -> Outcome {
    let start = Instant::now();
    let options = FamilyOptions::default();
    for i in 0..100u64 {
        let mut r = stream(1001, i);
        let n = r.gen_range(5..=14);
        let d = r.gen_range(1..=3);
        let k = r.gen_range(1..=4);
        let g = random_degenerate(n, d, 0.8, &mut r);
        let ctx = |e: String| format!("instance {i} (n={n} d={d} k={k}): {e}");
        let lopsided = build_lopsided_family(&g, k, &options).map_err(|e| ctx(e.to_string()))?;
        covered(&g, k, &lopsided).map_err(ctx)?;
        let hash = build_hash_family(&g, k, &options).map_err(|e| ctx(e.to_string()))?;
        covered(&g, k, &hash).map_err(ctx)?;
        let size = r.gen_range(0..=3);
        let modulator: Vec<Vertex> = sample(&mut r, n, size).into_vec();
        let inner = inner_family(&g, &modulator, k, &options).map_err(ctx)?;
        let extended = build_modulator_family(&g, &modulator, k, &inner, &options).map_err(|e| ctx(e.to_string()))?;
        covered(&g, k, &extended).map_err(ctx)?;
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "100 instances x 3 constructions covered ({:.1?})",
        start.elapsed()
    ))
}

fn empirical_rate(g: &UndirectedGraph, target: &[Vertex], draws: u64, seed: u64) -> f64 {
    let order = degeneracy_order(g);
    let hits = (0..draws)
        .filter(|&i| {
            let y = draw_random_cover(g, &order, &mut stream(seed, i));
            target.iter().all(|v| y.binary_search(v).is_ok())
        })
        .count();
    hits as f64 / draws as f64
}

fn randomized_bound() -> Outcome {
    let start = Instant::now();
    const DRAWS: u64 = 50_000;
    let path = UndirectedGraph::path(10);
    let two_tree = UndirectedGraph::from_edges(
        10,
        (1..10).flat_map(|v| [(v - 1, v)].into_iter().chain((v >= 2).then(|| (v - 2, v)))),
    )
    .unwrap();
    let cases: [(&UndirectedGraph, Vec<Vertex>, usize); 2] = [(&path, vec![2, 6], 1), (&two_tree, vec![0, 4, 8], 2)];
    let mut report = Vec::new();
    for (g, target, d) in cases {
        ensure(degeneracy(g) == d, || {
            format!("instance degeneracy {} != {d}", degeneracy(g))
        })?;
        ensure(g.is_independent(&target), || "target not independent".to_string())?;
        let bound = draw_success_bound(target.len(), d);
        let margin = Z_99 * (bound * (1.0 - bound) / DRAWS as f64).sqrt();
        let rate = empirical_rate(g, &target, DRAWS, 2002);
        ensure(rate >= bound - margin, || {
            format!("k={} rate {rate:.5} < bound {bound:.5} - {margin:.5}", target.len())
        })?;
        report.push(format!("k={} rate {rate:.5} >= {bound:.5}", target.len()));
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{} ({:.1?})", report.join(", "), start.elapsed()))
}

fn important_separators() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for i in 0..300u64 {
        let mut r = stream(3003, i);
        let n = r.gen_range(3..=9);
        let k = r.gen_range(0..=3);
        let d = random_digraph(n, r.gen_range(0.15..0.5), &mut r);
        let (x, y) = (r.gen_range(1..=2), r.gen_range(1..=2));
        let sources = sample(&mut r, n, x).into_vec();
        let sinks = sample(&mut r, n, y).into_vec();
        let fast: Vec<Vec<Vertex>> = enumerate_important_separators(&d, &sources, &sinks, k)
            .into_iter()
            .map(|s| s.vertices)
            .collect();
        let slow = oracle::important_separators(&d, &sources, &sinks, k, OracleLimits::default())
            .map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("instance {i}: {fast:?} != oracle {slow:?}"))?;
        ensure(fast.len() <= 4usize.pow(k as u32), || {
            format!("instance {i}: {} > 4^{k}", fast.len())
        })?;
        total += fast.len();
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "300 digraphs agree with the oracle, {total} separators ({:.1?})",
        start.elapsed()
    ))
}

const DETERMINISTIC: Mode = Mode::Deterministic {
    construction: Construction::Lopsided,
};

/// Compares the deterministic verdict with brute force and checks that no
/// randomized run says yes on a no-instance.
fn check_solver(
    name: &str,
    i: u64,
    brute: Option<Vec<Vertex>>,
    solve: impl Fn(Mode) -> stablecut::Result<SolveResult>,
    independent: impl Fn(&[Vertex]) -> bool,
) -> Result<bool, String> {
    let det = solve(DETERMINISTIC).map_err(|e| e.to_string())?;
    ensure(det.feasible == brute.is_some(), || {
        format!(
            "{name} instance {i}: deterministic {} vs brute force {:?}",
            det.feasible, brute
        )
    })?;
    if let Some(s) = &det.solution {
        ensure(independent(s), || {
            format!("{name} instance {i}: dependent solution {s:?}")
        })?;
    }
    if brute.is_none() {
        for seed in 0..10 {
            let rand = solve(Mode::Randomized { seed }).map_err(|e| e.to_string())?;
            ensure(!rand.feasible, || {
                format!("{name} instance {i}: randomized seed {seed} false yes")
            })?;
        }
    }
    Ok(det.feasible)
}

fn solver_equivalence() -> Outcome {
    let start = Instant::now();
    let limits = OracleLimits::default();
    let mut yes = [0usize; 4];
    for i in 0..200u64 {
        let mut r = stream(4004, i);
        let n = r.gen_range(4..=12);
        let d = r.gen_range(1..=3);
        let k = r.gen_range(0..=3);
        let g = random_degenerate(n, d, 0.8, &mut r);

        let pick = sample(&mut r, n, 2);
        let (s, t) = (pick.index(0), pick.index(1));
        let brute =
            brute_force(Problem::StSeparator { graph: &g, s, t }, k, true, limits).map_err(|e| e.to_string())?;
        yes[0] += check_solver(
            "separator",
            i,
            brute,
            |m| stable_st_separator(&g, s, t, k, m),
            |x| g.is_independent(x),
        )? as usize;

        let brute =
            brute_force(Problem::OddCycleTransversal { graph: &g }, k, true, limits).map_err(|e| e.to_string())?;
        yes[1] += check_solver("oct", i, brute, |m| stable_oct(&g, k, m), |x| g.is_independent(x))? as usize;

        let dg = random_digraph(n, r.gen_range(0.1..0.35), &mut r);
        let brute =
            brute_force(Problem::FeedbackVertexSet { graph: &dg }, k, true, limits).map_err(|e| e.to_string())?;
        yes[2] += check_solver("dfvs", i, brute, |m| stable_dfvs(&dg, k, m), |x| dg.is_independent(x))? as usize;

        let terminals = random_terminals(n, r.gen_range(0..=4), &mut r).map_err(|e| e.to_string())?;
        let brute = brute_force(
            Problem::Multicut {
                graph: &g,
                terminals: &terminals,
            },
            k,
            true,
            limits,
        )
        .map_err(|e| e.to_string())?;
        yes[3] += check_solver(
            "multicut",
            i,
            brute,
            |m| stable_multicut(&g, &terminals, k, Scope::Degenerate, m),
            |x| g.is_independent(x),
        )? as usize;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "200 instances per problem match brute force, yes counts sep/oct/dfvs/multicut {yes:?} ({:.1?})",
        start.elapsed()
    ))
}

fn mapped_minimal_multicuts(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    k: usize,
    thresholds: &Thresholds,
) -> Result<(Vec<Vec<Vertex>>, usize), String> {
    let reduced = degeneracy_reduce(g, terminals, k, thresholds).map_err(|e| e.to_string())?;
    let mut cuts: Vec<Vec<Vertex>> = oracle::minimal_multicuts(
        &reduced.graph.graph,
        &reduced.local_terminals(),
        k,
        OracleLimits::default(),
    )
    .map_err(|e| e.to_string())?
    .into_iter()
    .map(|c| reduced.graph.to_original(&c))
    .collect();
    cuts.sort();
    Ok((cuts, reduced.deleted.len()))
}

fn sparsifier_preservation() -> Outcome {
    let start = Instant::now();
    let mut deletions = [0usize; 3];
    let mut triggered = [0usize; 3];
    for i in 0..100u64 {
        let mut r = stream(5005, i);
        let k = (i % 3) as usize;
        // Smallest cliques dense enough for a deletion at this k.
        let core = [8, 12, 14][k];
        let extra = r.gen_range(0..=(14 - core).min(5));
        let g = dense_core(core, extra, &mut r);
        let n = core + extra;
        let terminals = random_terminals(n, r.gen_range(1..=4), &mut r).map_err(|e| e.to_string())?;
        let mut before =
            oracle::minimal_multicuts(&g, &terminals, k, OracleLimits::default()).map_err(|e| e.to_string())?;
        before.sort();

        let small = Thresholds {
            connected_set_size: Some(2),
            root_in_cap: Some(r.gen_range(0..=1)),
            separator_limit: Some(r.gen_range(0..=2)),
            ..Thresholds::default()
        };
        let (after, deleted) = mapped_minimal_multicuts(&g, &terminals, k, &small)?;
        ensure(after == before, || {
            format!("instance {i} (k={k}): minimal multicuts changed")
        })?;
        deletions[k] += deleted;
        triggered[k] += (deleted > 0) as usize;

        let reduced = degeneracy_reduce(&g, &terminals, k, &Thresholds::default()).map_err(|e| e.to_string())?;
        ensure(reduced.deleted.is_empty(), || {
            format!("instance {i}: default thresholds deleted vertices")
        })?;
    }
    ensure(triggered[0] > 0 && triggered[1] > 0, || {
        format!("deletions never triggered: {triggered:?}")
    })?;
    within(start.elapsed(), Duration::from_secs(180))?;
    Ok(format!(
        "100 instances preserved; instances with deletions per k {triggered:?}, vertices deleted {deletions:?} ({:.1?})",
        start.elapsed()
    ))
}

/// A graph of degeneracy at least `floor`: a clique with some edges dropped
/// plus a sparse tail.
fn dense_graph<R: Rng>(floor: usize, r: &mut R) -> UndirectedGraph {
    loop {
        let core = floor + 1 + r.gen_range(0..=5);
        let mut g = random_graph(core, 0.9, r);
        if r.gen_bool(0.5) {
            let tail = dense_core(0, r.gen_range(1..=4), r);
            let edges = g
                .edges()
                .chain(tail.edges().map(|(u, v)| (u + core, v + core)))
                .chain([(0, core)])
                .collect::<Vec<_>>();
            g = UndirectedGraph::from_edges(core + tail.vertex_count(), edges).unwrap();
        }
        if degeneracy(&g) >= floor {
            return g;
        }
    }
}

fn mader_extraction() -> Outcome {
    let start = Instant::now();
    for d in 1..=3usize {
        for i in 0..50u64 {
            let mut r = stream(6006 + d as u64, i);
            let g = dense_graph(4 * d, &mut r);
            let found = mader_subgraph(&g, d).map_err(|e| format!("d={d} graph {i}: {e}"))?;
            let sub = g.induced_subgraph(&found);
            let kappa = vertex_connectivity(&sub.graph);
            ensure(kappa > d && found.len() >= d + 2, || {
                format!("d={d} graph {i}: {} vertices, connectivity {kappa}", found.len())
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "150 graphs yield (d+1)-connected subgraphs ({:.1?})",
        start.elapsed()
    ))
}

fn barrier_sanity() -> Outcome {
    let start = Instant::now();
    let (k, n) = (3usize, 12usize);
    let g = disjoint_cliques(k, n / k);
    let transversals: Vec<Vec<Vertex>> = oracle::independent_sets(&g, k, OracleLimits::default())
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|s| s.len() == k)
        .collect();
    let expected = (n / k).pow(k as u32);
    ensure(transversals.len() == expected, || {
        format!("{} transversals, expected {expected}", transversals.len())
    })?;
    for (a, x) in transversals.iter().enumerate() {
        for y in &transversals[a + 1..] {
            let mut union = x.clone();
            union.extend(y);
            union.sort_unstable();
            union.dedup();
            ensure(!g.is_independent(&union), || {
                format!("{x:?} and {y:?} fit in one member")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "{expected} transversals, no two share a member ({:.1?})",
        start.elapsed()
    ))
}

fn ceil_log2(n: usize) -> u128 {
    (n.max(2) as f64).log2().ceil() as u128
}

/// Reference sizes with the unspecified `2^{o(p+q)}` factor of the universal
/// set construction set to one, and a perfect hash family of `ℓ ⌈log₂ n⌉`
/// functions (the count a union bound gives for random functions into `ℓ²`).
fn lopsided_reference(n: usize, k: usize, d: usize) -> u128 {
    binomial(k * (d + 1), k) * ceil_log2(n)
}

fn hash_reference(n: usize, k: usize, d: usize) -> u128 {
    let ell = k * (d + 1);
    let functions = ell as u128 * ceil_log2(n);
    functions * (1..=k).map(|i| binomial(ell * ell, i)).sum::<u128>()
}

fn family_sizes() -> Outcome {
    let start = Instant::now();
    let options = FamilyOptions::default();
    let mut worst = [0f64; 3];
    for n in [8usize, 11, 14] {
        for d in 1..=3usize {
            for k in 1..=4usize {
                let g = random_degenerate(n, d, 1.0, &mut stream(8008, (n * 100 + d * 10 + k) as u64));
                let d = degeneracy(&g);
                let ctx = |e: stablecut::Error| format!("n={n} d={d} k={k}: {e}");
                let random = build_random_family(&g, k, 1, &options).map_err(ctx)?;
                ensure(random.members.len() as u128 == random_family_size(n, k, d), || {
                    format!("n={n} d={d} k={k}: random family size {}", random.members.len())
                })?;
                let lopsided = build_lopsided_family(&g, k, &options).map_err(ctx)?;
                let hash = build_hash_family(&g, k, &options).map_err(ctx)?;
                let phf = perfect_hash_family(n, k * (d + 1), &options).map_err(ctx)?;
                let ratios = [
                    lopsided.members.len() as f64 / lopsided_reference(n, k, d) as f64,
                    hash.members.len() as f64 / hash_reference(n, k, d) as f64,
                    phf.functions.len() as f64 / (k * (d + 1)) as f64 / ceil_log2(n) as f64,
                ];
                for (w, r) in worst.iter_mut().zip(ratios) {
                    *w = w.max(r);
                }
            }
        }
    }
    ensure(worst.iter().all(|&w| w <= SIZE_SLACK), || {
        format!("size ratios {worst:.2?} exceed {SIZE_SLACK}")
    })?;
    Ok(format!(
        "random sizes exact; worst ratio to reference lopsided {:.2}, hash {:.3}, perfect hash {:.2} (slack {SIZE_SLACK}) ({:.1?})",
        worst[0],
        worst[1],
        worst[2],
        start.elapsed()
    ))
}

fn main() {
    // `cargo test` forwards libtest flags; only a name filter is honoured.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [Criterion; 8] = [
        ("covering correctness", covering_correctness),
        ("randomized draw bound", randomized_bound),
        ("important separators", important_separators),
        ("solver-oracle equivalence", solver_equivalence),
        ("sparsifier preservation", sparsifier_preservation),
        ("mader extraction", mader_extraction),
        ("barrier sanity", barrier_sanity),
        ("family size reporting", family_sizes),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if filter.as_ref().is_some_and(|f| !name.contains(f.as_str())) {
            continue;
        }
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("acceptance {} {name}: PASS {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {} {name}: FAIL {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
