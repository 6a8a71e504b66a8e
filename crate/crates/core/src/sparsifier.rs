//! Multicut-preserving sparsification.
//!
//! A vertex is irrelevant to a multicut instance `(G, T, k)` when no
//! inclusion-minimal multicut of size at most `k` contains it. Irrelevant
//! vertices are found inside highly connected sets: attaching a root to such
//! a set `Y` turns the instance into a digraph pair cut instance, and only a
//! bounded number of the root's in-neighbours can be relevant there.
//! [`degeneracy_reduce`] deletes irrelevant vertices until no large highly
//! connected set is left.

use std::fmt;

use serde::Serialize;

use crate::connectivity::{internally_disjoint_path_count, minimum_vertex_cut};
use crate::error::{Error, Result};
use crate::graph::{
    bidirect_with_root, degeneracy, reachable, Digraph, InducedSubgraph, TerminalPairs, UndirectedGraph, Vertex,
};
use crate::separators::{important_root_separators, important_st_separators, max_disjoint_paths, min_vertex_separator};

/// Digraph pair cut instance: find `S` avoiding the root such that for every
/// pair `{s, t}`, `s` or `t` cannot reach the root in `D - S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCutInstance {
    pub digraph: Digraph,
    pub terminals: TerminalPairs,
    pub root: Vertex,
    pub budget: usize,
}

impl PairCutInstance {
    /// A deleted terminal counts as cut from the root.
    pub fn is_pair_cut(&self, cut: &[Vertex]) -> bool {
        if cut.contains(&self.root) {
            return false;
        }
        let mut blocked = vec![false; self.digraph.vertex_count()];
        for &v in cut {
            blocked[v] = true;
        }
        let reaches_root = reachable(&self.digraph.reverse(), &[self.root], &blocked);
        self.terminals
            .pairs()
            .iter()
            .all(|&(s, t)| !reaches_root[s] || !reaches_root[t])
    }
}

/// Size limits used by the sparsifier. `None` selects the default for the
/// budget in play; the defaults are far beyond anything a desk-sized graph
/// reaches, so tests override them to exercise the reduction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    /// Largest terminal-to-root separator handled by marking important
    /// separators directly. Default `16^k * 64(k + 1)`.
    pub separator_limit: Option<u64>,
    /// Root in-degree at or below which every in-neighbour is reported.
    /// Default `64^(k+1) * (k + 1)^2`.
    pub root_in_cap: Option<u64>,
    /// The `d` handed to [`find_k_connected_set`]. Default
    /// `64^(k+1) * (k + 1)^2`; overrides below `k + 1` are raised to `k + 1`.
    pub connected_set_size: Option<u64>,
    /// Budget for important separators in the reversed digraph. Default
    /// `2k + 2`.
    pub reverse_budget: Option<usize>,
}

fn pow_saturating(base: u64, exp: usize) -> u64 {
    base.saturating_pow(u32::try_from(exp).unwrap_or(u32::MAX))
}

fn relevant_bound(k: usize) -> u64 {
    let k1 = k as u64 + 1;
    pow_saturating(64, k + 1).saturating_mul(k1.saturating_mul(k1))
}

impl Thresholds {
    pub fn separator_limit(&self, k: usize) -> u64 {
        self.separator_limit
            .unwrap_or_else(|| pow_saturating(16, k).saturating_mul(64 * (k as u64 + 1)))
    }

    pub fn root_in_cap(&self, k: usize) -> u64 {
        self.root_in_cap.unwrap_or_else(|| relevant_bound(k))
    }

    pub fn connected_set_size(&self, k: usize) -> u64 {
        self.connected_set_size
            .map_or_else(|| relevant_bound(k), |d| d.max(k as u64 + 1))
    }

    pub fn reverse_budget(&self, k: usize) -> usize {
        self.reverse_budget.unwrap_or(2 * k + 2)
    }
}

/// Gives every pair fresh private endpoints: pair `i` becomes
/// `(n + 2i, n + 2i + 1)` with arcs to the old endpoints. Arcs leaving the
/// root are dropped since no path to the root uses them. With no terminals
/// the instance is returned unchanged.
pub fn split_terminals(inst: &PairCutInstance) -> PairCutInstance {
    if inst.terminals.is_empty() {
        return inst.clone();
    }
    let n = inst.digraph.vertex_count();
    let root = inst.root;
    let mut arcs: Vec<(Vertex, Vertex)> = inst.digraph.arcs().filter(|&(u, _)| u != root).collect();
    let mut pairs = Vec::with_capacity(inst.terminals.len());
    for (i, &(s, t)) in inst.terminals.pairs().iter().enumerate() {
        let (s_copy, t_copy) = (n + 2 * i, n + 2 * i + 1);
        arcs.push((s_copy, s));
        arcs.push((t_copy, t));
        pairs.push((s_copy, t_copy));
    }
    PairCutInstance {
        digraph: Digraph::from_arcs(n + 2 * pairs.len(), arcs).expect("split arcs"),
        terminals: TerminalPairs::new(pairs).expect("fresh endpoints differ"),
        root,
        budget: inst.budget,
    }
}

/// Root without out-arcs; terminals pairwise distinct, never the root, each
/// with no in-arcs and exactly one out-arc.
pub fn is_split_normalized(inst: &PairCutInstance) -> bool {
    let d = &inst.digraph;
    if !d.out_neighbors(inst.root).is_empty() {
        return false;
    }
    let mut seen = vec![false; d.vertex_count()];
    for &(s, t) in inst.terminals.pairs() {
        for v in [s, t] {
            if seen[v] || v == inst.root || !d.in_neighbors(v).is_empty() || d.out_neighbors(v).len() != 1 {
                return false;
            }
            seen[v] = true;
        }
    }
    true
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelevanceReport {
    /// In-neighbours of the root that may lie in a minimal pair cut within
    /// budget; every other in-neighbour is irrelevant.
    pub marked: Vec<Vertex>,
    /// Pairs discarded as irrelevant, in discard order.
    pub removed_pairs: Vec<(Vertex, Vertex)>,
    /// Set when the pair-discarding step found every candidate marked and
    /// the marking step ran on an over-sized separator instead.
    pub fallback: bool,
}

/// Superset of the root's in-neighbours that belong to some minimal pair cut
/// of size at most the budget. The instance must be split-normalized.
pub fn relevant_root_neighbors(inst: &PairCutInstance, thresholds: &Thresholds) -> Result<RelevanceReport> {
    if !is_split_normalized(inst) {
        return Err(Error::Precondition(
            "pair cut instance must be split-normalized".to_string(),
        ));
    }
    let (d, root, k) = (&inst.digraph, inst.root, inst.budget);
    let mut report = RelevanceReport::default();
    if inst.terminals.is_empty() {
        return Ok(report);
    }
    let mut root_in = d.in_neighbors(root).to_vec();
    root_in.sort_unstable();
    if root_in.len() as u64 <= thresholds.root_in_cap(k) {
        report.marked = root_in;
        return Ok(report);
    }
    let reversed = d.reverse();
    let mut pairs = inst.terminals.pairs().to_vec();
    loop {
        if pairs.is_empty() {
            return Ok(report);
        }
        let mut endpoints: Vec<Vertex> = pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
        endpoints.sort_unstable();
        let separator = min_vertex_separator(d, &endpoints, &[root], &[root])
            .expect("terminals are deletable")
            .vertices;
        if separator.len() as u64 <= thresholds.separator_limit(k) {
            report.marked = mark_near_root(d, root, &separator, k);
            return Ok(report);
        }
        let Some(q) = unmarked_partner(d, &reversed, root, &pairs, &endpoints, thresholds.reverse_budget(k)) else {
            report.fallback = true;
            report.marked = mark_near_root(d, root, &separator, k);
            return Ok(report);
        };
        let at = pairs
            .iter()
            .position(|&(s, t)| s == q || t == q)
            .expect("q is a terminal");
        report.removed_pairs.push(pairs.remove(at));
    }
}

/// Root in-neighbours in `separator` or in some important `z`-root
/// separator of size at most `k`, `z` ranging over `separator`.
fn mark_near_root(d: &Digraph, root: Vertex, separator: &[Vertex], k: usize) -> Vec<Vertex> {
    let mut into_root = vec![false; d.vertex_count()];
    for &v in d.in_neighbors(root) {
        into_root[v] = true;
    }
    let mut marked = vec![false; d.vertex_count()];
    for &z in separator {
        marked[z] |= into_root[z];
        for sep in important_st_separators(d, z, root, k) {
            for v in sep.vertices {
                marked[v] |= into_root[v];
            }
        }
    }
    (0..d.vertex_count()).filter(|&v| marked[v]).collect()
}

/// Packs disjoint terminal-to-root paths, keeps one endpoint per pair among
/// the path starts, and returns the lowest partner of a kept endpoint that no
/// important root-to-partners separator of the reversed digraph contains.
fn unmarked_partner(
    d: &Digraph,
    reversed: &Digraph,
    root: Vertex,
    pairs: &[(Vertex, Vertex)],
    endpoints: &[Vertex],
    budget: usize,
) -> Option<Vertex> {
    let partner = |v: Vertex| -> Vertex {
        pairs
            .iter()
            .find_map(|&(s, t)| {
                if s == v {
                    Some(t)
                } else if t == v {
                    Some(s)
                } else {
                    None
                }
            })
            .expect("endpoint of a pair")
    };
    let mut starts: Vec<Vertex> = max_disjoint_paths(d, endpoints, root)
        .paths
        .iter()
        .map(|p| p[0])
        .collect();
    starts.sort_unstable();
    let mut chosen: Vec<Vertex> = Vec::new();
    for &x in &starts {
        if !chosen.contains(&partner(x)) {
            chosen.push(x);
        }
    }
    let mut partners: Vec<Vertex> = chosen.iter().map(|&x| partner(x)).collect();
    partners.sort_unstable();
    let mut marked = vec![false; d.vertex_count()];
    for sep in important_root_separators(reversed, root, &partners, budget) {
        for v in sep.vertices {
            marked[v] = true;
        }
    }
    partners.into_iter().find(|&q| !marked[q])
}

/// `n >= 2d + 1` and `|E| >= 2d(n - d - 1/2)`; such graphs contain a
/// `(d + 1)`-connected subgraph.
pub fn satisfies_mader_premise(g: &UndirectedGraph, d: usize) -> bool {
    let n = g.vertex_count();
    n > 2 * d && g.edge_count() >= d * (2 * n - 2 * d - 1)
}

/// Vertices of the largest subgraph with minimum degree at least `min_degree`.
fn min_degree_core(g: &UndirectedGraph, min_degree: usize) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut stack: Vec<Vertex> = (0..n).filter(|&v| degree[v] < min_degree).collect();
    for &v in &stack {
        gone[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !gone[u] {
                degree[u] -= 1;
                if degree[u] < min_degree {
                    gone[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    (0..n).filter(|&v| !gone[v]).collect()
}

/// Vertex set of a `(d + 1)`-connected subgraph, found in a graph of
/// degeneracy at least `4d`. The result has at least `2d + 1` vertices.
pub fn mader_subgraph(g: &UndirectedGraph, d: usize) -> Result<Vec<Vertex>> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".to_string()));
    }
    let found = degeneracy(g);
    if found < 4 * d {
        return Err(Error::Precondition(format!(
            "degeneracy {found} is below 4d = {}",
            4 * d
        )));
    }
    let mut current = g.induced_subgraph(&min_degree_core(g, 4 * d));
    loop {
        let h = &current.graph;
        debug_assert!(satisfies_mader_premise(h, d));
        let n = h.vertex_count();
        let (connectivity, cut) = minimum_vertex_cut(h);
        if connectivity > d {
            return Ok(current.original);
        }
        let keep: Vec<Vertex> = match (0..n).find(|&v| h.degree(v) <= 2 * d) {
            Some(low) => (0..n).filter(|&v| v != low).collect(),
            None => {
                let cut = cut.expect("a graph that is not (d+1)-connected has a small cut");
                let rest = h.without_vertices(&cut);
                let first = rest.to_original(&rest.graph.components()[0]);
                let mut side_a: Vec<Vertex> = cut.iter().chain(&first).copied().collect();
                side_a.sort_unstable();
                if satisfies_mader_premise(&h.induced_subgraph(&side_a).graph, d) {
                    side_a
                } else {
                    (0..n).filter(|v| first.binary_search(v).is_err()).collect()
                }
            }
        };
        let next = h.induced_subgraph(&keep);
        current = InducedSubgraph {
            original: next.original.iter().map(|&v| current.original[v]).collect(),
            graph: next.graph,
        };
    }
}

/// A `k`-connected set of size at least `d + 1`, or `None` when no
/// `k`-connected set of size at least `4d` exists. Requires `k <= d`.
pub fn find_k_connected_set(g: &UndirectedGraph, k: usize, d: usize) -> Result<Option<Vec<Vertex>>> {
    if k > d {
        return Err(Error::Precondition(format!("k = {k} exceeds d = {d}")));
    }
    let n = g.vertex_count();
    if k == 0 {
        return Ok((n > d).then(|| (0..n).collect()));
    }
    if d.saturating_mul(4) > n {
        return Ok(None);
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if internally_disjoint_path_count(g, u, v, k) >= k {
                edges.push((u, v));
            }
        }
    }
    let linked = UndirectedGraph::from_edges(n, edges)?;
    if degeneracy(&linked) + 1 < 4 * d {
        return Ok(None);
    }
    if d == 1 {
        // k = 1: components of the auxiliary graph are connected sets.
        let component = linked.components().into_iter().find(|c| c.len() > 1);
        return Ok(component);
    }
    mader_subgraph(&linked, d - 1).map(Some)
}

/// A vertex in no minimal multicut of `terminals` of size at most `k`, taken
/// from a `(k + 1)`-connected set, or `None` when no large enough set exists
/// or every vertex of the set found may be relevant.
pub fn find_irrelevant_vertex(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    k: usize,
    thresholds: &Thresholds,
) -> Result<Option<Vertex>> {
    terminals.check_range(g.vertex_count())?;
    let d = usize::try_from(thresholds.connected_set_size(k)).unwrap_or(usize::MAX);
    let Some(set) = find_k_connected_set(g, k + 1, d)? else {
        return Ok(None);
    };
    let inst = PairCutInstance {
        digraph: bidirect_with_root(g, &set)?,
        terminals: terminals.clone(),
        root: g.vertex_count(),
        budget: k,
    };
    let report = relevant_root_neighbors(&split_terminals(&inst), thresholds)?;
    Ok(set.into_iter().find(|v| report.marked.binary_search(v).is_err()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDeletion {
    /// Deleted vertex, in the ids of the input graph.
    pub vertex: Vertex,
    pub graph: InducedSubgraph<UndirectedGraph>,
    /// Surviving pairs in the ids of `graph.graph`.
    pub terminals: TerminalPairs,
    /// Input pairs that contained `vertex`.
    pub dropped_pairs: Vec<(Vertex, Vertex)>,
}

/// Deletes one vertex so that the minimal multicuts of size at most `k` are
/// unchanged once pairs through it are dropped.
pub fn delete_one_irrelevant(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    k: usize,
    thresholds: &Thresholds,
) -> Result<Option<OneDeletion>> {
    let Some(v) = find_irrelevant_vertex(g, terminals, k + 1, thresholds)? else {
        return Ok(None);
    };
    let graph = g.without_vertices(&[v]);
    let dropped_pairs = terminals
        .pairs()
        .iter()
        .copied()
        .filter(|&(s, t)| s == v || t == v)
        .collect();
    Ok(Some(OneDeletion {
        vertex: v,
        terminals: terminals.restrict_to(&graph),
        graph,
        dropped_pairs,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deletion {
    pub vertex: Vertex,
    pub dropped_pairs: Vec<(Vertex, Vertex)>,
}

impl fmt::Display for Deletion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} irrelevant", self.vertex)?;
        if !self.dropped_pairs.is_empty() {
            write!(f, "; dropped pairs")?;
            for (s, t) in &self.dropped_pairs {
                write!(f, " {s}-{t}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsifyResult {
    pub graph: InducedSubgraph<UndirectedGraph>,
    /// Surviving pairs in the ids of the input graph.
    pub terminals: TerminalPairs,
    /// Deletions in order, in the ids of the input graph.
    pub deleted: Vec<Deletion>,
}

impl SparsifyResult {
    /// Surviving pairs in the ids of the reduced graph.
    pub fn local_terminals(&self) -> TerminalPairs {
        self.terminals.restrict_to(&self.graph)
    }

    pub fn deletion_log(&self) -> String {
        self.deleted.iter().map(|d| format!("{d}\n")).collect()
    }
}

/// Repeatedly deletes irrelevant vertices. A set `S` of at most `k` vertices
/// is a minimal multicut of the input exactly when it lies in the reduced
/// graph and is a minimal multicut of the surviving pairs there.
pub fn degeneracy_reduce(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    k: usize,
    thresholds: &Thresholds,
) -> Result<SparsifyResult> {
    terminals.check_range(g.vertex_count())?;
    let mut result = SparsifyResult {
        graph: g.induced_subgraph(&(0..g.vertex_count()).collect::<Vec<_>>()),
        terminals: terminals.clone(),
        deleted: Vec::new(),
    };
    while let Some(step) = delete_one_irrelevant(&result.graph.graph, &result.local_terminals(), k, thresholds)? {
        let vertex = result.graph.original[step.vertex];
        let dropped_pairs = result
            .terminals
            .pairs()
            .iter()
            .copied()
            .filter(|&(s, t)| s == vertex || t == vertex)
            .collect();
        result.terminals = result.terminals.without_vertex(vertex);
        result.graph = InducedSubgraph {
            original: step.graph.original.iter().map(|&v| result.graph.original[v]).collect(),
            graph: step.graph.graph,
        };
        result.deleted.push(Deletion { vertex, dropped_pairs });
    }
    Ok(result)
}
