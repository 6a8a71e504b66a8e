//! Local and global vertex connectivity of undirected graphs.

use crate::flow::{Role, VertexCutNetwork};
use crate::graph::{UndirectedGraph, Vertex};

/// Number of internally vertex-disjoint `u`-`v` paths, capped at `cap`.
/// An edge `uv` counts as one path.
pub fn internally_disjoint_path_count(g: &UndirectedGraph, u: Vertex, v: Vertex, cap: usize) -> usize {
    assert_ne!(u, v, "endpoints must differ");
    let adjacent = g.has_edge(u, v);
    let direct = usize::from(adjacent);
    if direct >= cap {
        return cap;
    }
    let mut roles = vec![Role::Deletable; g.vertex_count()];
    roles[u] = Role::Forbidden;
    roles[v] = Role::Forbidden;
    let flow = if adjacent {
        let edges = g.edges().filter(|&e| e != (u.min(v), u.max(v)));
        let without = UndirectedGraph::from_edges(g.vertex_count(), edges).expect("subgraph edges");
        VertexCutNetwork::new(&without, &roles, &[u], &[v]).max_flow(cap - direct)
    } else {
        VertexCutNetwork::new(g, &roles, &[u], &[v]).max_flow(cap - direct)
    };
    match flow {
        Some(f) => (f + direct).min(cap),
        None => cap,
    }
}

/// Minimum `u`-`v` vertex separator for non-adjacent `u`, `v`, if one of
/// size at most `limit` exists.
fn local_cut(g: &UndirectedGraph, u: Vertex, v: Vertex, limit: usize) -> Option<Vec<Vertex>> {
    let mut roles = vec![Role::Deletable; g.vertex_count()];
    roles[u] = Role::Forbidden;
    roles[v] = Role::Forbidden;
    let mut net = VertexCutNetwork::new(g, &roles, &[u], &[v]);
    net.max_flow(limit)?;
    Some(net.closest_cut())
}

/// Global vertex connectivity together with a minimum vertex cut.
/// Complete graphs have connectivity `n - 1` and no cut.
pub fn minimum_vertex_cut(g: &UndirectedGraph) -> (usize, Option<Vec<Vertex>>) {
    let n = g.vertex_count();
    let mut best = n.saturating_sub(1);
    let mut best_cut = None;
    let mut i = 0;
    // Some vertex among the first best + 1 survives any minimum cut, and a
    // vertex on the far side of it has a larger index.
    while i <= best && i < n {
        for j in i + 1..n {
            if best == 0 {
                break;
            }
            if g.has_edge(i, j) {
                continue;
            }
            if let Some(cut) = local_cut(g, i, j, best - 1) {
                best = cut.len();
                best_cut = Some(cut);
            }
        }
        i += 1;
    }
    (best, best_cut)
}

pub fn vertex_connectivity(g: &UndirectedGraph) -> usize {
    minimum_vertex_cut(g).0
}
