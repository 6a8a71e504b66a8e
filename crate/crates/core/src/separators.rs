//! Minimum separators, disjoint path packings and important separators.
//!
//! An `X`-`Y` separator is a vertex set `S` such that no vertex of `Y \ S` is
//! reachable from `X \ S` in the graph minus `S`. Functions here are generic
//! over [`OutNeighbors`], so undirected graphs are handled as symmetric
//! digraphs.

use serde::Serialize;
use thiserror::Error;

use crate::flow::{Role, VertexCutNetwork};
use crate::graph::{reachable, Digraph, OutNeighbors, Vertex};

#[derive(Clone, Debug)]
pub struct SeparatorQuery<'a, G> {
    pub graph: &'a G,
    pub sources: Vec<Vertex>,
    pub sinks: Vec<Vertex>,
    /// Vertices a separator may use; everything else is forbidden.
    pub deletable: Vec<Vertex>,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatorSet {
    pub vertices: Vec<Vertex>,
    /// Vertices reachable from the sources after deleting `vertices`.
    pub reach: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum NoSeparator {
    #[error("sets intersect")]
    SetsIntersect,
    #[error("no separator within budget")]
    OverBudget,
}

/// Vertices reachable from `sources \ cut` in `g - cut`, sorted.
pub fn reach_after<G: OutNeighbors>(g: &G, sources: &[Vertex], cut: &[Vertex]) -> Vec<Vertex> {
    let mut blocked = vec![false; g.vertex_count()];
    for &v in cut {
        blocked[v] = true;
    }
    let seen = reachable(g, sources, &blocked);
    (0..g.vertex_count()).filter(|&v| seen[v]).collect()
}

pub fn is_separator<G: OutNeighbors>(g: &G, sources: &[Vertex], sinks: &[Vertex], cut: &[Vertex]) -> bool {
    let reach = reach_after(g, sources, cut);
    sinks.iter().all(|y| reach.binary_search(y).is_err())
}

/// Minimum separator that avoids the sources and sinks and uses only
/// deletable vertices, provided its size is within the budget. Among minimum
/// separators the one closest to the sources is returned.
pub fn min_st_separator<G: OutNeighbors>(query: &SeparatorQuery<'_, G>) -> Result<SeparatorSet, NoSeparator> {
    let n = query.graph.vertex_count();
    let mut in_sources = vec![false; n];
    for &x in &query.sources {
        in_sources[x] = true;
    }
    if query.sinks.iter().any(|&y| in_sources[y]) {
        return Err(NoSeparator::SetsIntersect);
    }
    let mut roles = vec![Role::Forbidden; n];
    for &v in &query.deletable {
        roles[v] = Role::Deletable;
    }
    for &v in query.sources.iter().chain(&query.sinks) {
        roles[v] = Role::Forbidden;
    }
    let mut net = VertexCutNetwork::new(query.graph, &roles, &query.sources, &query.sinks);
    net.max_flow(query.budget).ok_or(NoSeparator::OverBudget)?;
    let vertices = net.closest_cut();
    let reach = reach_after(query.graph, &query.sources, &vertices);
    Ok(SeparatorSet { vertices, reach })
}

/// Minimum `X`-`Y` separator where every vertex outside `forbidden` may be
/// deleted, sources and sinks included. `None` when some path uses forbidden
/// vertices only.
pub fn min_vertex_separator<G: OutNeighbors>(
    g: &G,
    sources: &[Vertex],
    sinks: &[Vertex],
    forbidden: &[Vertex],
) -> Option<SeparatorSet> {
    let mut roles = vec![Role::Deletable; g.vertex_count()];
    for &v in forbidden {
        roles[v] = Role::Forbidden;
    }
    let mut net = VertexCutNetwork::new(g, &roles, sources, sinks);
    net.max_flow(g.vertex_count())?;
    let vertices = net.closest_cut();
    let reach = reach_after(g, sources, &vertices);
    Some(SeparatorSet { vertices, reach })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointPaths {
    pub count: usize,
    /// Each path starts in the source set and ends at the root.
    pub paths: Vec<Vec<Vertex>>,
}

/// Maximum packing of `sources`-`root` paths that share only the root.
pub fn max_disjoint_paths<G: OutNeighbors>(g: &G, sources: &[Vertex], root: Vertex) -> DisjointPaths {
    assert!(!sources.contains(&root), "root must not be a source");
    let mut roles = vec![Role::Deletable; g.vertex_count()];
    roles[root] = Role::Forbidden;
    let mut net = VertexCutNetwork::new(g, &roles, sources, &[root]);
    let count = net
        .max_flow(sources.len())
        .expect("flow is bounded by the number of sources");
    let mut paths = net.paths();
    paths.sort();
    DisjointPaths { count, paths }
}

/// Enumerates every important `X`-`Y` separator of size at most `budget`;
/// every vertex, sources and sinks included, may be deleted. At most
/// `4^budget` sets are returned, sorted.
pub fn enumerate_important_separators<G: OutNeighbors>(
    g: &G,
    sources: &[Vertex],
    sinks: &[Vertex],
    budget: usize,
) -> Vec<SeparatorSet> {
    let n = g.vertex_count();
    let search = ImportantSearch { g, sources, sinks };
    let mut candidates = Vec::new();
    search.branch(
        vec![Role::Deletable; n],
        Vec::new(),
        Vec::new(),
        budget,
        &mut candidates,
    );
    for c in &mut candidates {
        c.sort_unstable();
    }
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .filter(|c| search.is_important(c))
        .map(|vertices| {
            let reach = reach_after(g, sources, &vertices);
            SeparatorSet { vertices, reach }
        })
        .collect()
}

struct ImportantSearch<'a, G> {
    g: &'a G,
    sources: &'a [Vertex],
    sinks: &'a [Vertex],
}

impl<G: OutNeighbors> ImportantSearch<'_, G> {
    /// `pinned` vertices are forbidden and act as extra sources; `taken`
    /// vertices are already in the separator and removed from the graph.
    fn branch(
        &self,
        roles: Vec<Role>,
        pinned: Vec<Vertex>,
        taken: Vec<Vertex>,
        budget: usize,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let all_sources: Vec<Vertex> = self.sources.iter().chain(&pinned).copied().collect();
        let mut net = VertexCutNetwork::new(self.g, &roles, &all_sources, self.sinks);
        let Some(flow) = net.max_flow(budget) else {
            return;
        };
        if flow == 0 {
            out.push(taken);
            return;
        }
        let farthest = net.farthest_cut();
        let v = farthest[0];

        let mut blocked: Vec<bool> = roles.iter().map(|&r| r == Role::Removed).collect();
        for &u in &farthest {
            blocked[u] = true;
        }
        let live_sources: Vec<Vertex> = all_sources.iter().copied().filter(|&x| !blocked[x]).collect();
        let reach = reachable(self.g, &live_sources, &blocked);

        let mut with_v = roles.clone();
        with_v[v] = Role::Removed;
        let mut taken_v = taken.clone();
        taken_v.push(v);
        self.branch(with_v, pinned.clone(), taken_v, budget - 1, out);

        let mut without_v = roles;
        let mut pinned_v = pinned;
        for u in (0..self.g.vertex_count()).filter(|&u| reach[u] || u == v) {
            if without_v[u] != Role::Forbidden {
                without_v[u] = Role::Forbidden;
                pinned_v.push(u);
            }
        }
        self.branch(without_v, pinned_v, taken, budget, out);
    }

    fn is_important(&self, cut: &[Vertex]) -> bool {
        if !is_separator(self.g, self.sources, self.sinks, cut) {
            return false;
        }
        let minimal = (0..cut.len()).all(|i| {
            let smaller: Vec<Vertex> = cut
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect();
            !is_separator(self.g, self.sources, self.sinks, &smaller)
        });
        if !minimal {
            return false;
        }
        // A dominating separator must reach some w in the cut as well as
        // everything the cut already reaches.
        let reach = reach_after(self.g, self.sources, cut);
        cut.iter().all(|&w| {
            let mut roles = vec![Role::Deletable; self.g.vertex_count()];
            let mut pinned: Vec<Vertex> = reach.clone();
            pinned.push(w);
            for &u in &pinned {
                roles[u] = Role::Forbidden;
            }
            pinned.extend_from_slice(self.sources);
            let mut net = VertexCutNetwork::new(self.g, &roles, &pinned, self.sinks);
            net.max_flow(cut.len()).is_none()
        })
    }
}

/// Important `N+(s)`-`N-(t)` separators in `D - {s, t}`, in the ids of `d`.
pub fn important_st_separators(d: &Digraph, s: Vertex, t: Vertex, budget: usize) -> Vec<SeparatorSet> {
    let sub = d.without_vertices(&[s, t]);
    let local = |vs: &[Vertex]| -> Vec<Vertex> { vs.iter().filter_map(|&v| sub.to_local(v)).collect() };
    enumerate_important_separators(
        &sub.graph,
        &local(d.out_neighbors(s)),
        &local(d.in_neighbors(t)),
        budget,
    )
    .into_iter()
    .map(|sep| SeparatorSet {
        vertices: sub.to_original(&sep.vertices),
        reach: sub.to_original(&sep.reach),
    })
    .collect()
}

/// Important `N+(r)`-`Y` separators in `D - r`, in the ids of `d`.
pub fn important_root_separators(d: &Digraph, root: Vertex, sinks: &[Vertex], budget: usize) -> Vec<SeparatorSet> {
    let sub = d.without_vertices(&[root]);
    let local = |vs: &[Vertex]| -> Vec<Vertex> { vs.iter().filter_map(|&v| sub.to_local(v)).collect() };
    enumerate_important_separators(&sub.graph, &local(d.out_neighbors(root)), &local(sinks), budget)
        .into_iter()
        .map(|sep| SeparatorSet {
            vertices: sub.to_original(&sep.vertices),
            reach: sub.to_original(&sep.reach),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::UndirectedGraph;
    use crate::oracle::{self, OracleLimits};

    fn diamond() -> UndirectedGraph {
        UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn min_separator_examples() {
        let path = UndirectedGraph::path(3);
        let q = SeparatorQuery {
            graph: &path,
            sources: vec![0],
            sinks: vec![2],
            deletable: vec![1],
            budget: 1,
        };
        assert_eq!(min_st_separator(&q).unwrap().vertices, vec![1]);

        let g = diamond();
        let one_side = SeparatorQuery {
            graph: &g,
            sources: vec![0],
            sinks: vec![3],
            deletable: vec![1],
            budget: 2,
        };
        assert_eq!(min_st_separator(&one_side), Err(NoSeparator::OverBudget));

        let all = SeparatorQuery {
            deletable: vec![0, 1, 2, 3],
            ..one_side.clone()
        };
        let oracle_size = oracle::min_separator_size(&g.to_digraph(), &[0], &[3], &[1, 2], 2, OracleLimits::default());
        let found = min_st_separator(&all).unwrap();
        assert_eq!(Some(found.vertices.len()), oracle_size.unwrap());
        assert_eq!(found.vertices, vec![1, 2]);
        assert_eq!(found.reach, vec![0]);

        let overlap = SeparatorQuery { sinks: vec![0], ..all };
        assert_eq!(min_st_separator(&overlap), Err(NoSeparator::SetsIntersect));
    }

    #[test]
    fn disjoint_path_examples() {
        let star_in = Digraph::from_arcs(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        let packed = max_disjoint_paths(&star_in, &[0, 1, 2], 3);
        assert_eq!(packed.count, 3);
        assert_eq!(packed.paths, vec![vec![0, 3], vec![1, 3], vec![2, 3]]);

        let funnel = Digraph::from_arcs(5, [(0, 3), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert_eq!(max_disjoint_paths(&funnel, &[0, 1, 2], 4).count, 1);
        let cut = min_vertex_separator(&funnel, &[0, 1, 2], &[4], &[4]).unwrap();
        assert_eq!(cut.vertices, vec![3]);
        let sources_only = min_vertex_separator(&star_in, &[0, 1], &[3], &[3]).unwrap();
        assert_eq!(sources_only.vertices, vec![0, 1]);
        assert_eq!(min_vertex_separator(&funnel, &[0], &[4], &[0, 3, 4]), None);
    }

    #[test]
    fn important_separator_examples() {
        let disconnected = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        let found = enumerate_important_separators(&disconnected, &[0], &[2], 0);
        assert_eq!(found.len(), 1);
        assert!(found[0].vertices.is_empty());

        let path = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let got: Vec<_> = important_st_separators(&path, 0, 3, 2)
            .into_iter()
            .map(|s| s.vertices)
            .collect();
        let expected = oracle::important_st_separators(&path, 0, 3, 2, OracleLimits::default()).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got, vec![vec![2]]);

        let diamond = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let got: Vec<_> = important_st_separators(&diamond, 0, 3, 2)
            .into_iter()
            .map(|s| s.vertices)
            .collect();
        assert_eq!(
            got,
            oracle::important_st_separators(&diamond, 0, 3, 2, OracleLimits::default()).unwrap()
        );
        assert_eq!(got, vec![vec![1, 2]]);
    }

    #[test]
    fn important_separators_of_a_fan() {
        // x -> {1, 2, 3} -> m -> y: the single vertex m beats the triple.
        let d = Digraph::from_arcs(6, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5)]).unwrap();
        for budget in 0..=3 {
            let got: Vec<_> = enumerate_important_separators(&d, &[0], &[5], budget)
                .into_iter()
                .map(|s| s.vertices)
                .collect();
            let expected = oracle::important_separators(&d, &[0], &[5], budget, OracleLimits::default()).unwrap();
            assert_eq!(got, expected, "budget {budget}");
        }
    }
}
