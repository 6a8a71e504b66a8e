//! Exact solvers for separator, odd cycle transversal, directed feedback
//! vertex set and multicut, their annotated forms (solution restricted to a
//! given set `Y`), and stable forms (solution independent).
//!
//! A stable solution of size at most `k` is independent, so it lies inside
//! some member of an independence covering family. The stable solvers run
//! the annotated solver once per member (deterministic mode) or once per
//! random draw (randomized mode). Annotated odd cycle transversal, feedback
//! vertex set and multicut reduce to the plain problems by replacing every
//! vertex outside `Y` with `k + 1` twins: a minimal solution of size at most
//! `k` can never use a twin.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::covering::{
    build_hash_family, build_lopsided_family, build_random_family, draw_random_cover, draws_for_constant_success,
    Construction, FamilyOptions,
};
use crate::error::{Error, Result};
use crate::flow::{Role, VertexCutNetwork};
use crate::graph::{degeneracy_order, Digraph, TerminalPairs, UndirectedGraph, Vertex};
use crate::io::format_set;
use crate::rng;
use crate::separators::{min_st_separator, reach_after, SeparatorQuery};
use crate::sparsifier::{degeneracy_reduce, Thresholds};

/// How stable solvers enumerate candidate sets `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Mode {
    /// `C(k(d+1), k) * k(d+1)` random draws; a yes-instance is answered yes
    /// with probability at least `1 - 1/e`, a no-instance always no.
    Randomized { seed: u64 },
    /// Every member of a covering family; always exact.
    Deterministic { construction: Construction },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub degeneracy: Option<usize>,
    pub family_size: Option<usize>,
    /// Random covers drawn.
    pub draws: u64,
    /// Annotated subproblems actually solved.
    pub subproblems: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub problem: &'static str,
    pub feasible: bool,
    pub solution: Option<Vec<Vertex>>,
    /// Checks recomputed on the returned solution.
    pub certificate: Vec<String>,
    pub stats: SolveStats,
}

impl SolveResult {
    fn no(problem: &'static str, stats: SolveStats) -> Self {
        SolveResult {
            problem,
            feasible: false,
            solution: None,
            certificate: Vec::new(),
            stats,
        }
    }

    fn yes(problem: &'static str, mut solution: Vec<Vertex>, certificate: Vec<String>, stats: SolveStats) -> Self {
        solution.sort_unstable();
        SolveResult {
            problem,
            feasible: true,
            solution: Some(solution),
            certificate,
            stats,
        }
    }

    fn from_search(
        problem: &'static str,
        found: Option<Vec<Vertex>>,
        stats: SolveStats,
        check: impl Fn(&[Vertex]) -> Vec<String>,
    ) -> Self {
        match found {
            Some(s) => {
                let notes = check(&s);
                SolveResult::yes(problem, s, notes, stats)
            }
            None => SolveResult::no(problem, stats),
        }
    }
}

/// How a stable solver scopes its multicut instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Solve on the input graph directly.
    Degenerate,
    /// Sparsify first, then solve on the reduced graph.
    General(Thresholds),
}

fn check_vertices(n: usize, vs: &[Vertex]) -> Result<()> {
    match vs.iter().find(|&&v| v >= n) {
        Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n }),
        None => Ok(()),
    }
}

fn mask_of(n: usize, vs: &[Vertex]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vs {
        mask[v] = true;
    }
    mask
}

/// Drops vertices one at a time while `feasible` still holds.
fn minimize(mut solution: Vec<Vertex>, feasible: impl Fn(&[Vertex]) -> bool) -> Vec<Vertex> {
    solution.sort_unstable();
    let mut i = 0;
    while i < solution.len() {
        let mut smaller = solution.clone();
        smaller.remove(i);
        if feasible(&smaller) {
            solution = smaller;
        } else {
            i += 1;
        }
    }
    solution
}

fn size_note(solution: &[Vertex], k: usize) -> String {
    format!("size {} <= k = {k}", solution.len())
}

fn independence_note(independent: bool) -> String {
    if independent { "independent" } else { "not independent" }.to_string()
}

// ---------------------------------------------------------------------------
// s-t separator

fn separates(g: &UndirectedGraph, s: Vertex, t: Vertex, cut: &[Vertex]) -> bool {
    !cut.contains(&s) && !cut.contains(&t) && reach_after(g, &[s], cut).binary_search(&t).is_err()
}

fn check_endpoints(g: &UndirectedGraph, s: Vertex, t: Vertex) -> Result<()> {
    check_vertices(g.vertex_count(), &[s, t])?;
    if s == t {
        return Err(Error::Precondition("s and t must differ".to_string()));
    }
    Ok(())
}

fn separator_inside(g: &UndirectedGraph, s: Vertex, t: Vertex, allowed: &[Vertex], k: usize) -> Option<Vec<Vertex>> {
    let query = SeparatorQuery {
        graph: g,
        sources: vec![s],
        sinks: vec![t],
        deletable: allowed.iter().copied().filter(|&v| v != s && v != t).collect(),
        budget: k,
    };
    min_st_separator(&query).ok().map(|sep| sep.vertices)
}

fn separator_certificate(g: &UndirectedGraph, s: Vertex, t: Vertex, k: usize, cut: &[Vertex]) -> Vec<String> {
    assert!(separates(g, s, t, cut), "solver returned a non-separator");
    vec![
        size_note(cut, k),
        format!("separates {s} from {t}"),
        independence_note(g.is_independent(cut)),
    ]
}

/// `s`-`t` separator of size at most `k` using only vertices of `allowed`.
pub fn annotated_st_separator(
    g: &UndirectedGraph,
    s: Vertex,
    t: Vertex,
    allowed: &[Vertex],
    k: usize,
) -> Result<SolveResult> {
    check_endpoints(g, s, t)?;
    check_vertices(g.vertex_count(), allowed)?;
    let found = separator_inside(g, s, t, allowed, k);
    Ok(SolveResult::from_search(
        "annotated-st-separator",
        found,
        SolveStats::default(),
        |cut| separator_certificate(g, s, t, k, cut),
    ))
}

pub fn stable_st_separator(g: &UndirectedGraph, s: Vertex, t: Vertex, k: usize, mode: Mode) -> Result<SolveResult> {
    check_endpoints(g, s, t)?;
    let everything: Vec<Vertex> = (0..g.vertex_count()).collect();
    let problem = "stable-st-separator";
    if separator_inside(g, s, t, &everything, k).is_none() {
        return Ok(SolveResult::no(problem, SolveStats::default()));
    }
    let (found, stats) = search_covers(g, k, mode, |y| Ok(separator_inside(g, s, t, y, k)))?;
    Ok(SolveResult::from_search(problem, found, stats, |cut| {
        separator_certificate(g, s, t, k, cut)
    }))
}

// ---------------------------------------------------------------------------
// Replication

/// A graph in which every vertex outside a kept set has been replaced by
/// `k + 1` pairwise non-adjacent twins with the same neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplicatedGraph<G> {
    pub graph: G,
    /// `copies[v]` lists the ids standing for input vertex `v`: `v`'s own id
    /// when kept, its block of twins otherwise.
    pub copies: Vec<Vec<Vertex>>,
    /// Input vertex of every id.
    pub origin: Vec<Vertex>,
    /// True for ids that belong to a block.
    pub in_block: Vec<bool>,
}

impl<G> ReplicatedGraph<G> {
    pub fn to_input(&self, ids: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = ids.iter().map(|&v| self.origin[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Pairs between every copy of `s` and every copy of `t`.
    pub fn expand_pairs(&self, terminals: &TerminalPairs) -> TerminalPairs {
        let pairs = terminals.pairs().iter().flat_map(|&(s, t)| {
            self.copies[s]
                .iter()
                .flat_map(move |&a| self.copies[t].iter().map(move |&b| (a, b)))
        });
        TerminalPairs::new(pairs).expect("copies of distinct vertices differ")
    }
}

fn replication_layout(n: usize, keep: &[Vertex], k: usize) -> (Vec<Vec<Vertex>>, Vec<Vertex>, Vec<bool>) {
    let kept = mask_of(n, keep);
    let mut copies = Vec::with_capacity(n);
    let mut origin = Vec::new();
    let mut in_block = Vec::new();
    for (v, &is_kept) in kept.iter().enumerate() {
        let count = if is_kept { 1 } else { k + 1 };
        let first = origin.len();
        copies.push((first..first + count).collect());
        origin.extend(std::iter::repeat_n(v, count));
        in_block.extend(std::iter::repeat_n(!is_kept, count));
    }
    (copies, origin, in_block)
}

pub fn replicate_outside(g: &UndirectedGraph, keep: &[Vertex], k: usize) -> ReplicatedGraph<UndirectedGraph> {
    let (copies, origin, in_block) = replication_layout(g.vertex_count(), keep, k);
    let edges = g.edges().flat_map(|(u, v)| {
        copies[u]
            .iter()
            .flat_map(|&a| copies[v].iter().map(move |&b| (a, b)))
            .collect::<Vec<_>>()
    });
    let graph = UndirectedGraph::from_edges(origin.len(), edges).expect("replicated edges");
    ReplicatedGraph {
        graph,
        copies,
        origin,
        in_block,
    }
}

pub fn replicate_outside_digraph(d: &Digraph, keep: &[Vertex], k: usize) -> ReplicatedGraph<Digraph> {
    let (copies, origin, in_block) = replication_layout(d.vertex_count(), keep, k);
    let arcs = d.arcs().flat_map(|(u, v)| {
        copies[u]
            .iter()
            .flat_map(|&a| copies[v].iter().map(move |&b| (a, b)))
            .collect::<Vec<_>>()
    });
    let graph = Digraph::from_arcs(origin.len(), arcs).expect("replicated arcs");
    ReplicatedGraph {
        graph,
        copies,
        origin,
        in_block,
    }
}

/// Minimal solution of the replicated instance, mapped back to input ids.
fn solve_replicated<G>(
    rep: &ReplicatedGraph<G>,
    found: Option<Vec<Vertex>>,
    feasible: impl Fn(&[Vertex]) -> bool,
) -> Option<Vec<Vertex>> {
    let minimal = minimize(found?, feasible);
    assert!(
        minimal.iter().all(|&v| !rep.in_block[v]),
        "a minimal solution used a replicated vertex"
    );
    Some(rep.to_input(&minimal))
}

// ---------------------------------------------------------------------------
// Odd cycle transversal

/// Proper 2-colouring of the vertices with `alive` set, if one exists.
fn two_color_alive(g: &UndirectedGraph, alive: &[bool]) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    for start in (0..n).filter(|&v| alive[v]) {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !alive[w] {
                    continue;
                }
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

fn bipartite_without(g: &UndirectedGraph, cut: &[Vertex]) -> bool {
    let mut alive = vec![true; g.vertex_count()];
    for &v in cut {
        alive[v] = false;
    }
    two_color_alive(g, &alive).is_some()
}

/// Replaces `solution` (size `k + 1`, valid on the `alive` vertices) by one
/// of size at most `k`: guess which solution vertices stay and on which side,
/// then separate the vertices that must switch sides from those that must
/// not.
fn compress_oct(g: &UndirectedGraph, alive: &[bool], solution: &[Vertex], k: usize) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut rest = alive.to_vec();
    for &v in solution {
        rest[v] = false;
    }
    let base = two_color_alive(g, &rest).expect("solution leaves a bipartite graph");
    let rest_ids: Vec<Vertex> = (0..n).filter(|&v| rest[v]).collect();
    let h = g.induced_subgraph(&rest_ids);
    let size = solution.len();
    // 0 = delete, 1 = keep on side 0, 2 = keep on side 1.
    for code in 0..3usize.pow(size as u32) {
        let mut choice = vec![0u8; size];
        let mut c = code;
        for slot in choice.iter_mut() {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        let deleted: Vec<Vertex> = (0..size).filter(|&i| choice[i] == 0).map(|i| solution[i]).collect();
        if deleted.len() > k {
            continue;
        }
        let consistent = (0..size).all(|i| {
            (i + 1..size).all(|j| choice[i] == 0 || choice[i] != choice[j] || !g.has_edge(solution[i], solution[j]))
        });
        if !consistent {
            continue;
        }
        let mut must_switch = Vec::new();
        let mut must_stay = Vec::new();
        for i in (0..size).filter(|&i| choice[i] != 0) {
            let side = choice[i] - 1;
            for &w in g.neighbors(solution[i]).iter().filter(|&&w| rest[w]) {
                let local = h.to_local(w).expect("alive neighbour");
                if base[w] == side {
                    must_switch.push(local);
                } else {
                    must_stay.push(local);
                }
            }
        }
        let roles = vec![Role::Deletable; h.graph.vertex_count()];
        let mut net = VertexCutNetwork::new(&h.graph, &roles, &must_switch, &must_stay);
        if net.max_flow(k - deleted.len()).is_some() {
            let mut out = deleted;
            out.extend(h.to_original(&net.closest_cut()));
            return Some(out);
        }
    }
    None
}

/// Odd cycle transversal of size at most `k` by iterative compression.
fn find_oct(g: &UndirectedGraph, k: usize) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut alive = vec![false; n];
    let mut solution: Vec<Vertex> = Vec::new();
    for v in 0..n {
        alive[v] = true;
        let mut remainder = alive.clone();
        for &u in &solution {
            remainder[u] = false;
        }
        if two_color_alive(g, &remainder).is_some() {
            continue;
        }
        solution.push(v);
        if solution.len() > k {
            solution = compress_oct(g, &alive, &solution, k)?;
        }
    }
    Some(minimize(solution, |s| bipartite_without(g, s)))
}

fn oct_certificate(g: &UndirectedGraph, k: usize, cut: &[Vertex]) -> Vec<String> {
    let mut alive = vec![true; g.vertex_count()];
    for &v in cut {
        alive[v] = false;
    }
    let color = two_color_alive(g, &alive).expect("solver returned a non-transversal");
    let side = |c: u8| -> Vec<Vertex> { (0..g.vertex_count()).filter(|&v| alive[v] && color[v] == c).collect() };
    vec![
        size_note(cut, k),
        format!("bipartition {} | {}", format_set(&side(0)), format_set(&side(1))),
        independence_note(g.is_independent(cut)),
    ]
}

pub fn oct_solve(g: &UndirectedGraph, k: usize) -> SolveResult {
    SolveResult::from_search("oct", find_oct(g, k), SolveStats::default(), |cut| {
        oct_certificate(g, k, cut)
    })
}

fn oct_inside(g: &UndirectedGraph, allowed: &[Vertex], k: usize) -> Option<Vec<Vertex>> {
    let fixed: Vec<Vertex> = {
        let inside = mask_of(g.vertex_count(), allowed);
        (0..g.vertex_count()).filter(|&v| inside[v]).collect()
    };
    // Everything outside `allowed` survives, so it must already be bipartite.
    if !bipartite_without(g, &fixed) {
        return None;
    }
    let rep = replicate_outside(g, allowed, k);
    let found = find_oct(&rep.graph, k);
    solve_replicated(&rep, found, |s| bipartite_without(&rep.graph, s))
}

pub fn annotated_oct(g: &UndirectedGraph, allowed: &[Vertex], k: usize) -> Result<SolveResult> {
    check_vertices(g.vertex_count(), allowed)?;
    let found = oct_inside(g, allowed, k);
    Ok(SolveResult::from_search(
        "annotated-oct",
        found,
        SolveStats::default(),
        |cut| oct_certificate(g, k, cut),
    ))
}

pub fn stable_oct(g: &UndirectedGraph, k: usize, mode: Mode) -> Result<SolveResult> {
    let problem = "stable-oct";
    if find_oct(g, k).is_none() {
        return Ok(SolveResult::no(problem, SolveStats::default()));
    }
    let (found, stats) = search_covers(g, k, mode, |y| Ok(oct_inside(g, y, k)))?;
    Ok(SolveResult::from_search(problem, found, stats, |cut| {
        oct_certificate(g, k, cut)
    }))
}

// ---------------------------------------------------------------------------
// Directed feedback vertex set

/// A shortest directed cycle avoiding `removed`.
fn shortest_cycle(d: &Digraph, removed: &[bool]) -> Option<Vec<Vertex>> {
    let n = d.vertex_count();
    let mut best: Option<Vec<Vertex>> = None;
    for start in (0..n).filter(|&v| !removed[v]) {
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([start]);
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut closing = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in d.out_neighbors(u) {
                if removed[w] {
                    continue;
                }
                if w == start {
                    closing = Some(u);
                    break 'bfs;
                }
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if let Some(mut u) = closing {
            let mut cycle = vec![u];
            while u != start {
                u = parent[u];
                cycle.push(u);
            }
            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                best = Some(cycle);
            }
        }
    }
    best
}

fn dfvs_branch(d: &Digraph, removed: &mut Vec<bool>, k: usize) -> Option<Vec<Vertex>> {
    let Some(mut cycle) = shortest_cycle(d, removed) else {
        return Some(Vec::new());
    };
    if k == 0 {
        return None;
    }
    cycle.sort_unstable();
    for v in cycle {
        removed[v] = true;
        let found = dfvs_branch(d, removed, k - 1);
        removed[v] = false;
        if let Some(mut rest) = found {
            rest.push(v);
            return Some(rest);
        }
    }
    None
}

fn acyclic_without(d: &Digraph, cut: &[Vertex]) -> bool {
    shortest_cycle(d, &mask_of(d.vertex_count(), cut)).is_none()
}

fn find_dfvs(d: &Digraph, k: usize) -> Option<Vec<Vertex>> {
    let found = dfvs_branch(d, &mut vec![false; d.vertex_count()], k)?;
    Some(minimize(found, |s| acyclic_without(d, s)))
}

fn dfvs_certificate(d: &Digraph, k: usize, cut: &[Vertex]) -> Vec<String> {
    assert!(acyclic_without(d, cut), "solver returned a non-feedback set");
    vec![
        size_note(cut, k),
        "remainder acyclic".to_string(),
        independence_note(d.is_independent(cut)),
    ]
}

pub fn dfvs_solve(d: &Digraph, k: usize) -> SolveResult {
    SolveResult::from_search("dfvs", find_dfvs(d, k), SolveStats::default(), |cut| {
        dfvs_certificate(d, k, cut)
    })
}

fn dfvs_inside(d: &Digraph, allowed: &[Vertex], k: usize) -> Option<Vec<Vertex>> {
    if !acyclic_without(d, allowed) {
        return None;
    }
    let rep = replicate_outside_digraph(d, allowed, k);
    let found = find_dfvs(&rep.graph, k);
    solve_replicated(&rep, found, |s| acyclic_without(&rep.graph, s))
}

pub fn annotated_dfvs(d: &Digraph, allowed: &[Vertex], k: usize) -> Result<SolveResult> {
    check_vertices(d.vertex_count(), allowed)?;
    let found = dfvs_inside(d, allowed, k);
    Ok(SolveResult::from_search(
        "annotated-dfvs",
        found,
        SolveStats::default(),
        |cut| dfvs_certificate(d, k, cut),
    ))
}

/// Independence is read on the underlying undirected graph: an arc in
/// either direction makes two vertices adjacent.
pub fn stable_dfvs(d: &Digraph, k: usize, mode: Mode) -> Result<SolveResult> {
    let problem = "stable-dfvs";
    if find_dfvs(d, k).is_none() {
        return Ok(SolveResult::no(problem, SolveStats::default()));
    }
    let (found, stats) = search_covers(&d.underlying(), k, mode, |y| Ok(dfvs_inside(d, y, k)))?;
    Ok(SolveResult::from_search(problem, found, stats, |cut| {
        dfvs_certificate(d, k, cut)
    }))
}

// ---------------------------------------------------------------------------
// Multicut

/// A shortest path joining some pair in `g` minus `removed`, endpoints
/// included.
fn shortest_violated_path(g: &UndirectedGraph, pairs: &[(Vertex, Vertex)], removed: &[bool]) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut best: Option<Vec<Vertex>> = None;
    for &(s, t) in pairs {
        if removed[s] || removed[t] {
            continue;
        }
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &w in g.neighbors(u) {
                if !removed[w] && !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if seen[t] {
            let mut path = vec![t];
            let mut u = t;
            while u != s {
                u = parent[u];
                path.push(u);
            }
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best
}

fn multicut_branch(
    g: &UndirectedGraph,
    pairs: &[(Vertex, Vertex)],
    removed: &mut Vec<bool>,
    k: usize,
) -> Option<Vec<Vertex>> {
    let Some(mut path) = shortest_violated_path(g, pairs, removed) else {
        return Some(Vec::new());
    };
    if k == 0 {
        return None;
    }
    path.sort_unstable();
    for v in path {
        removed[v] = true;
        let found = multicut_branch(g, pairs, removed, k - 1);
        removed[v] = false;
        if let Some(mut rest) = found {
            rest.push(v);
            return Some(rest);
        }
    }
    None
}

fn find_multicut(g: &UndirectedGraph, terminals: &TerminalPairs, k: usize) -> Option<Vec<Vertex>> {
    let found = multicut_branch(g, terminals.pairs(), &mut vec![false; g.vertex_count()], k)?;
    Some(minimize(found, |s| terminals.is_multicut(g, s)))
}

fn multicut_certificate(g: &UndirectedGraph, terminals: &TerminalPairs, k: usize, cut: &[Vertex]) -> Vec<String> {
    assert!(terminals.is_multicut(g, cut), "solver returned a non-multicut");
    vec![
        size_note(cut, k),
        format!("cuts all {} pairs", terminals.len()),
        independence_note(g.is_independent(cut)),
    ]
}

fn check_terminals(g: &UndirectedGraph, terminals: &TerminalPairs) -> Result<()> {
    terminals.check_range(g.vertex_count())
}

/// Terminals may be deleted.
pub fn multicut_solve(g: &UndirectedGraph, terminals: &TerminalPairs, k: usize) -> Result<SolveResult> {
    check_terminals(g, terminals)?;
    let found = find_multicut(g, terminals, k);
    Ok(SolveResult::from_search(
        "multicut",
        found,
        SolveStats::default(),
        |cut| multicut_certificate(g, terminals, k, cut),
    ))
}

fn multicut_inside(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    allowed: &[Vertex],
    k: usize,
) -> Option<Vec<Vertex>> {
    // Pairs with both ends outside `allowed` must already be disconnected
    // once `allowed` is gone.
    let inside = mask_of(g.vertex_count(), allowed);
    let fixed: Vec<(Vertex, Vertex)> = terminals
        .pairs()
        .iter()
        .copied()
        .filter(|&(s, t)| !inside[s] && !inside[t])
        .collect();
    if shortest_violated_path(g, &fixed, &inside).is_some() {
        return None;
    }
    let rep = replicate_outside(g, allowed, k);
    let expanded = rep.expand_pairs(terminals);
    let found = find_multicut(&rep.graph, &expanded, k);
    solve_replicated(&rep, found, |s| expanded.is_multicut(&rep.graph, s))
}

pub fn annotated_multicut(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    allowed: &[Vertex],
    k: usize,
) -> Result<SolveResult> {
    check_terminals(g, terminals)?;
    check_vertices(g.vertex_count(), allowed)?;
    let found = multicut_inside(g, terminals, allowed, k);
    Ok(SolveResult::from_search(
        "annotated-multicut",
        found,
        SolveStats::default(),
        |cut| multicut_certificate(g, terminals, k, cut),
    ))
}

pub fn stable_multicut(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    k: usize,
    scope: Scope,
    mode: Mode,
) -> Result<SolveResult> {
    check_terminals(g, terminals)?;
    match scope {
        Scope::Degenerate => stable_multicut_direct(g, terminals, k, mode),
        Scope::General(thresholds) => {
            let reduced = degeneracy_reduce(g, terminals, k, &thresholds)?;
            let mut result = stable_multicut_direct(&reduced.graph.graph, &reduced.local_terminals(), k, mode)?;
            if let Some(local) = result.solution.take() {
                let original = reduced.graph.to_original(&local);
                result.certificate = multicut_certificate(g, terminals, k, &original);
                result.solution = Some(original);
            }
            result
                .certificate
                .push(format!("sparsifier deleted {} vertices", reduced.deleted.len()));
            Ok(result)
        }
    }
}

fn stable_multicut_direct(g: &UndirectedGraph, terminals: &TerminalPairs, k: usize, mode: Mode) -> Result<SolveResult> {
    let problem = "stable-multicut";
    if find_multicut(g, terminals, k).is_none() {
        return Ok(SolveResult::no(problem, SolveStats::default()));
    }
    let (found, stats) = search_covers(g, k, mode, |y| Ok(multicut_inside(g, terminals, y, k)))?;
    Ok(SolveResult::from_search(problem, found, stats, |cut| {
        multicut_certificate(g, terminals, k, cut)
    }))
}

// ---------------------------------------------------------------------------
// Covering loop

/// Sets already handed to the annotated solver. A candidate contained in one
/// of them cannot succeed where that one failed.
struct Tried {
    words: usize,
    sets: Vec<Vec<u64>>,
}

impl Tried {
    fn new(n: usize) -> Self {
        Tried {
            words: n.div_ceil(64),
            sets: Vec::new(),
        }
    }

    fn bits(&self, set: &[Vertex]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for &v in set {
            bits[v / 64] |= 1 << (v % 64);
        }
        bits
    }

    /// Records `set` unless an earlier set contains it.
    fn insert(&mut self, set: &[Vertex]) -> bool {
        let bits = self.bits(set);
        let covered = self
            .sets
            .iter()
            .any(|other| bits.iter().zip(other).all(|(a, b)| a & !b == 0));
        if !covered {
            self.sets.push(bits);
        }
        !covered
    }
}

/// Runs `annotated` on independent candidate sets until one yields a
/// solution.
fn search_covers<F>(
    g: &UndirectedGraph,
    k: usize,
    mode: Mode,
    mut annotated: F,
) -> Result<(Option<Vec<Vertex>>, SolveStats)>
where
    F: FnMut(&[Vertex]) -> Result<Option<Vec<Vertex>>>,
{
    let order = degeneracy_order(g);
    let mut stats = SolveStats {
        degeneracy: Some(order.degeneracy),
        ..SolveStats::default()
    };
    if k == 0 {
        stats.subproblems = 1;
        return Ok((annotated(&[])?, stats));
    }
    let options = FamilyOptions::default();
    match mode {
        Mode::Randomized { seed } => {
            let draws = draws_for_constant_success(k, order.degeneracy);
            if draws > options.cap {
                return Err(Error::Resource {
                    what: "random draws",
                    predicted: draws,
                    cap: options.cap,
                });
            }
            let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
            for i in 0..draws as u64 {
                stats.draws += 1;
                let y = draw_random_cover(g, &order, &mut rng::stream(seed, i));
                if !seen.insert(y.clone()) {
                    continue;
                }
                stats.subproblems += 1;
                if let Some(found) = annotated(&y)? {
                    return Ok((Some(found), stats));
                }
            }
        }
        Mode::Deterministic { construction } => {
            let family = match construction {
                Construction::Lopsided => build_lopsided_family(g, k, &options)?,
                Construction::Hash => build_hash_family(g, k, &options)?,
                Construction::Random => build_random_family(g, k, options.seed, &options)?,
                Construction::Modulator => {
                    return Err(Error::Precondition(
                        "the modulator construction needs an explicit modulator".to_string(),
                    ))
                }
            };
            stats.family_size = Some(family.members.len());
            let mut tried = Tried::new(g.vertex_count());
            for y in family.distinct_members() {
                if !tried.insert(&y) {
                    continue;
                }
                stats.subproblems += 1;
                if let Some(found) = annotated(&y)? {
                    return Ok((Some(found), stats));
                }
            }
        }
    }
    Ok((None, stats))
}
