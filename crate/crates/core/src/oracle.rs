//! Exhaustive reference implementations over vertex bitmasks.
//!
//! Nothing here calls into the flow, covering, separator or solver code; the
//! only shared pieces are the graph containers themselves.

use crate::error::{Error, Result};
use crate::graph::{Digraph, TerminalPairs, UndirectedGraph, Vertex};

type Mask = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_budget: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 16,
            max_budget: 4,
        }
    }
}

impl OracleLimits {
    fn check(&self, n: usize, k: usize) -> Result<()> {
        if n > self.max_vertices.min(64) {
            return Err(Error::Resource {
                what: "oracle vertex count",
                predicted: n as u128,
                cap: self.max_vertices.min(64) as u128,
            });
        }
        if k > self.max_budget {
            return Err(Error::Resource {
                what: "oracle budget",
                predicted: k as u128,
                cap: self.max_budget as u128,
            });
        }
        Ok(())
    }
}

fn bit(v: Vertex) -> Mask {
    1 << v
}

fn mask_of(set: &[Vertex]) -> Mask {
    set.iter().fold(0, |m, &v| m | bit(v))
}

fn members(mask: Mask) -> Vec<Vertex> {
    (0..64).filter(|&v| mask & bit(v) != 0).collect()
}

/// All masks over `n` bits with at most `k` ones, by size then value.
fn subsets_up_to(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    fn extend(n: usize, k: usize, start: usize, cur: Mask, out: &mut Vec<Mask>) {
        out.push(cur);
        if k == 0 {
            return;
        }
        for v in start..n {
            extend(n, k - 1, v + 1, cur | bit(v), out);
        }
    }
    extend(n, k, 0, 0, &mut out);
    out.sort_by_key(|&m| (m.count_ones(), m));
    out
}

fn undirected_masks(g: &UndirectedGraph) -> Vec<Mask> {
    (0..g.vertex_count()).map(|v| mask_of(g.neighbors(v))).collect()
}

fn out_masks(d: &Digraph) -> Vec<Mask> {
    (0..d.vertex_count()).map(|v| mask_of(d.out_neighbors(v))).collect()
}

/// Closure of `start` under `adj`, never entering `removed`.
fn closure(adj: &[Mask], start: Mask, removed: Mask) -> Mask {
    let mut seen = start & !removed;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !removed & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen
}

fn independent(adj: &[Mask], set: Mask) -> bool {
    members(set).iter().all(|&v| adj[v] & set == 0)
}

/// Every independent set of size at most `k`, ordered by size then bitmask.
pub fn independent_sets(g: &UndirectedGraph, k: usize, limits: OracleLimits) -> Result<Vec<Vec<Vertex>>> {
    let n = g.vertex_count();
    limits.check(n, k)?;
    let adj = undirected_masks(g);
    Ok(subsets_up_to(n, k)
        .into_iter()
        .filter(|&m| independent(&adj, m))
        .map(members)
        .collect())
}

fn is_multicut(adj: &[Mask], pairs: &[(Vertex, Vertex)], cut: Mask) -> bool {
    pairs
        .iter()
        .all(|&(s, t)| cut & (bit(s) | bit(t)) != 0 || closure(adj, bit(s), cut) & bit(t) == 0)
}

/// Every inclusion-minimal multicut of size at most `k`; terminals may be
/// deleted.
pub fn minimal_multicuts(
    g: &UndirectedGraph,
    terminals: &TerminalPairs,
    k: usize,
    limits: OracleLimits,
) -> Result<Vec<Vec<Vertex>>> {
    let n = g.vertex_count();
    limits.check(n, k)?;
    let adj = undirected_masks(g);
    let pairs = terminals.pairs();
    let cuts: Vec<Mask> = subsets_up_to(n, k)
        .into_iter()
        .filter(|&m| is_multicut(&adj, pairs, m))
        .collect();
    Ok(cuts
        .iter()
        .copied()
        .filter(|&m| members(m).iter().all(|&v| !is_multicut(&adj, pairs, m & !bit(v))))
        .map(members)
        .collect())
}

fn separates(adj: &[Mask], sources: Mask, sinks: Mask, cut: Mask) -> bool {
    closure(adj, sources, cut) & sinks & !cut == 0
}

/// Important `X`-`Y` separators of size at most `k` in `d`, every vertex
/// deletable: minimal separators for which no separator of at most the same
/// size has a strictly larger reachable set from `X`.
pub fn important_separators(
    d: &Digraph,
    sources: &[Vertex],
    sinks: &[Vertex],
    k: usize,
    limits: OracleLimits,
) -> Result<Vec<Vec<Vertex>>> {
    let n = d.vertex_count();
    limits.check(n, k)?;
    let adj = out_masks(d);
    let (x, y) = (mask_of(sources), mask_of(sinks));
    let seps: Vec<(Mask, Mask)> = subsets_up_to(n, k)
        .into_iter()
        .filter(|&s| separates(&adj, x, y, s))
        .map(|s| (s, closure(&adj, x, s)))
        .collect();
    let minimal = |s: Mask| members(s).iter().all(|&v| !separates(&adj, x, y, s & !bit(v)));
    let mut out: Vec<Vec<Vertex>> = seps
        .iter()
        .filter(|&&(s, _)| minimal(s))
        .filter(|&&(s, reach)| {
            !seps.iter().any(|&(other, other_reach)| {
                other.count_ones() <= s.count_ones() && other_reach != reach && other_reach & reach == reach
            })
        })
        .map(|&(s, _)| members(s))
        .collect();
    out.sort();
    Ok(out)
}

/// Important separators in the `s`-`t` form: `N+(s)`-`N-(t)` separators in
/// `D - {s, t}`, reported in the ids of `d`.
pub fn important_st_separators(
    d: &Digraph,
    s: Vertex,
    t: Vertex,
    k: usize,
    limits: OracleLimits,
) -> Result<Vec<Vec<Vertex>>> {
    let sub = d.without_vertices(&[s, t]);
    let local = |vs: &[Vertex]| -> Vec<Vertex> { vs.iter().filter_map(|&v| sub.to_local(v)).collect() };
    let found = important_separators(
        &sub.graph,
        &local(d.out_neighbors(s)),
        &local(d.in_neighbors(t)),
        k,
        limits,
    )?;
    let mut out: Vec<Vec<Vertex>> = found.iter().map(|sep| sub.to_original(sep)).collect();
    out.sort();
    Ok(out)
}

/// Size of a minimum `X`-`Y` separator drawn from `deletable`, searched up to
/// size `k`.
pub fn min_separator_size(
    d: &Digraph,
    sources: &[Vertex],
    sinks: &[Vertex],
    deletable: &[Vertex],
    k: usize,
    limits: OracleLimits,
) -> Result<Option<usize>> {
    let n = d.vertex_count();
    limits.check(n, k)?;
    let adj = out_masks(d);
    let allowed = mask_of(deletable);
    let (x, y) = (mask_of(sources), mask_of(sinks));
    Ok(subsets_up_to(n, k)
        .into_iter()
        .filter(|&s| s & !allowed == 0)
        .find(|&s| separates(&adj, x, y, s))
        .map(|s| s.count_ones() as usize))
}

fn is_pair_cut(adj: &[Mask], pairs: &[(Vertex, Vertex)], root: Vertex, cut: Mask) -> bool {
    pairs
        .iter()
        .all(|&(s, t)| closure(adj, bit(s), cut) & bit(root) == 0 || closure(adj, bit(t), cut) & bit(root) == 0)
}

/// Every inclusion-minimal `root`-`T` pair cut of size at most `k`: sets
/// avoiding the root that cut `s` or `t` from the root for every pair.
pub fn minimal_pair_cuts(
    d: &Digraph,
    terminals: &[(Vertex, Vertex)],
    root: Vertex,
    k: usize,
    limits: OracleLimits,
) -> Result<Vec<Vec<Vertex>>> {
    let n = d.vertex_count();
    limits.check(n, k)?;
    let adj = out_masks(d);
    Ok(subsets_up_to(n, k)
        .into_iter()
        .filter(|&m| m & bit(root) == 0 && is_pair_cut(&adj, terminals, root, m))
        .filter(|&m| {
            members(m)
                .iter()
                .all(|&v| !is_pair_cut(&adj, terminals, root, m & !bit(v)))
        })
        .map(members)
        .collect())
}

/// Problems with a brute-force decision procedure.
#[derive(Clone, Copy, Debug)]
pub enum Problem<'a> {
    StSeparator {
        graph: &'a UndirectedGraph,
        s: Vertex,
        t: Vertex,
    },
    OddCycleTransversal {
        graph: &'a UndirectedGraph,
    },
    FeedbackVertexSet {
        graph: &'a Digraph,
    },
    Multicut {
        graph: &'a UndirectedGraph,
        terminals: &'a TerminalPairs,
    },
}

fn bipartite_after(adj: &[Mask], n: usize, removed: Mask) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if removed & bit(start) != 0 || color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for w in members(adj[u] & !removed) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn acyclic_after(out: &[Mask], n: usize, removed: Mask) -> bool {
    let mut alive: Mask = (0..n).fold(0, |m, v| m | bit(v)) & !removed;
    loop {
        let sinks: Mask = members(alive)
            .into_iter()
            .filter(|&v| out[v] & alive == 0)
            .fold(0, |m, v| m | bit(v));
        if sinks == 0 {
            return alive == 0;
        }
        alive &= !sinks;
    }
}

/// Smallest solution of size at most `k` (independent when `stable`), first
/// in size-then-bitmask order, or `None`.
pub fn brute_force(problem: Problem<'_>, k: usize, stable: bool, limits: OracleLimits) -> Result<Option<Vec<Vertex>>> {
    let (n, conflict): (usize, Vec<Mask>) = match problem {
        Problem::StSeparator { graph, .. }
        | Problem::OddCycleTransversal { graph }
        | Problem::Multicut { graph, .. } => (graph.vertex_count(), undirected_masks(graph)),
        Problem::FeedbackVertexSet { graph } => (graph.vertex_count(), undirected_masks(&graph.underlying())),
    };
    limits.check(n, k)?;
    let arcs = match problem {
        Problem::FeedbackVertexSet { graph } => out_masks(graph),
        _ => Vec::new(),
    };
    let feasible = |cut: Mask| -> bool {
        match problem {
            Problem::StSeparator { s, t, .. } => {
                cut & (bit(s) | bit(t)) == 0 && closure(&conflict, bit(s), cut) & bit(t) == 0
            }
            Problem::OddCycleTransversal { .. } => bipartite_after(&conflict, n, cut),
            Problem::FeedbackVertexSet { .. } => acyclic_after(&arcs, n, cut),
            Problem::Multicut { terminals, .. } => is_multicut(&conflict, terminals.pairs(), cut),
        }
    };
    Ok(subsets_up_to(n, k)
        .into_iter()
        .filter(|&m| !stable || independent(&conflict, m))
        .find(|&m| feasible(m))
        .map(members))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIMITS: OracleLimits = OracleLimits {
        max_vertices: 16,
        max_budget: 4,
    };

    #[test]
    fn independent_sets_examples() {
        let k3 = UndirectedGraph::complete(3);
        assert_eq!(
            independent_sets(&k3, 2, LIMITS).unwrap(),
            vec![vec![], vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            independent_sets(&UndirectedGraph::empty(3), 2, LIMITS).unwrap().len(),
            7
        );
        assert!(independent_sets(&UndirectedGraph::path(3), 2, LIMITS)
            .unwrap()
            .contains(&vec![0, 2]));
    }

    #[test]
    fn multicut_examples() {
        let p3 = UndirectedGraph::path(3);
        let none = TerminalPairs::default();
        assert_eq!(
            minimal_multicuts(&p3, &none, 2, LIMITS).unwrap(),
            vec![Vec::<Vertex>::new()]
        );
        let ends = TerminalPairs::new([(0, 2)]).unwrap();
        assert_eq!(
            minimal_multicuts(&p3, &ends, 1, LIMITS).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let triangle = UndirectedGraph::complete(3);
        let all = TerminalPairs::new([(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(minimal_multicuts(&triangle, &all, 1, LIMITS).unwrap().is_empty());
    }

    #[test]
    fn important_separator_examples() {
        let disconnected = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        assert_eq!(
            important_separators(&disconnected, &[0], &[2], 1, LIMITS).unwrap(),
            vec![Vec::<Vertex>::new()]
        );
        // s=0 -> a=1 -> b=2 -> t=3
        let path = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(important_st_separators(&path, 0, 3, 2, LIMITS).unwrap(), vec![vec![2]]);
        // s=0 -> {a=1, b=2} -> t=3
        let diamond = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            important_st_separators(&diamond, 0, 3, 2, LIMITS).unwrap(),
            vec![vec![1, 2]]
        );
    }

    #[test]
    fn refuses_large_inputs() {
        assert!(independent_sets(&UndirectedGraph::empty(17), 1, LIMITS).is_err());
        assert!(independent_sets(&UndirectedGraph::empty(3), 5, LIMITS).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let k4 = UndirectedGraph::complete(4);
        let oct = Problem::OddCycleTransversal { graph: &k4 };
        assert_eq!(brute_force(oct, 1, false, LIMITS).unwrap(), None);
        assert_eq!(brute_force(oct, 2, false, LIMITS).unwrap(), Some(vec![0, 1]));
        let two_cycles = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        let fvs = Problem::FeedbackVertexSet { graph: &two_cycles };
        assert_eq!(brute_force(fvs, 1, false, LIMITS).unwrap(), None);
        assert_eq!(brute_force(fvs, 2, true, LIMITS).unwrap(), Some(vec![0, 2]));
    }
}
