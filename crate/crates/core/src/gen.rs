//! Instance generators: barrier constructions for covering families and
//! seeded random instances for the solvers and the sparsifier.

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AnyGraph, Digraph, TerminalPairs, UndirectedGraph, Vertex};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum InstanceSpec {
    /// `count` disjoint cliques on `size` vertices each.
    Cliques { count: usize, size: usize },
    /// `count` disjoint stars with `leaves` leaves each.
    Stars { count: usize, leaves: usize },
    /// `count` disjoint copies of `K_{2,m}`.
    Bicliques { count: usize, m: usize },
    /// Each vertex joins up to `d` earlier vertices, each candidate edge kept
    /// with probability `density`.
    Degenerate {
        n: usize,
        d: usize,
        density: f64,
        terminals: usize,
        seed: u64,
    },
    /// Every ordered pair becomes an arc with probability `arc_probability`.
    Digraph { n: usize, arc_probability: f64, seed: u64 },
    /// A clique on `core` vertices plus `extra` vertices, each attached to one
    /// or two earlier vertices.
    DenseCore {
        core: usize,
        extra: usize,
        terminals: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub graph: AnyGraph,
    pub terminals: TerminalPairs,
}

pub fn generate(spec: &InstanceSpec) -> Result<Instance> {
    let invalid = |msg: &str| Err(Error::Precondition(msg.to_string()));
    let undirected = |g: UndirectedGraph| Instance {
        graph: AnyGraph::Undirected(g),
        terminals: TerminalPairs::default(),
    };
    match *spec {
        InstanceSpec::Cliques { count, size } => {
            if size == 0 {
                return invalid("clique size must be positive");
            }
            Ok(undirected(disjoint_cliques(count, size)))
        }
        InstanceSpec::Stars { count, leaves } => Ok(undirected(disjoint_stars(count, leaves))),
        InstanceSpec::Bicliques { count, m } => Ok(undirected(biclique_union(count, m))),
        InstanceSpec::Degenerate {
            n,
            d,
            density,
            terminals,
            seed,
        } => {
            if !(0.0..=1.0).contains(&density) {
                return invalid("density must lie in [0, 1]");
            }
            let mut rng = rng::stream(seed, 0);
            let g = random_degenerate(n, d, density, &mut rng);
            let terminals = random_terminals(n, terminals, &mut rng)?;
            Ok(Instance {
                graph: AnyGraph::Undirected(g),
                terminals,
            })
        }
        InstanceSpec::Digraph {
            n,
            arc_probability,
            seed,
        } => {
            if !(0.0..=1.0).contains(&arc_probability) {
                return invalid("arc probability must lie in [0, 1]");
            }
            let mut rng = rng::stream(seed, 0);
            Ok(Instance {
                graph: AnyGraph::Directed(random_digraph(n, arc_probability, &mut rng)),
                terminals: TerminalPairs::default(),
            })
        }
        InstanceSpec::DenseCore {
            core,
            extra,
            terminals,
            seed,
        } => {
            let mut rng = rng::stream(seed, 0);
            let g = dense_core(core, extra, &mut rng);
            let terminals = random_terminals(core + extra, terminals, &mut rng)?;
            Ok(Instance {
                graph: AnyGraph::Undirected(g),
                terminals,
            })
        }
    }
}

/// Vertices `i * size .. (i + 1) * size` form clique `i`.
pub fn disjoint_cliques(count: usize, size: usize) -> UndirectedGraph {
    let edges = (0..count).flat_map(|c| {
        let base = c * size;
        (0..size).flat_map(move |i| (i + 1..size).map(move |j| (base + i, base + j)))
    });
    UndirectedGraph::from_edges(count * size, edges).expect("clique edges")
}

/// Star `i` has centre `i * (leaves + 1)` followed by its leaves.
pub fn disjoint_stars(count: usize, leaves: usize) -> UndirectedGraph {
    let edges = (0..count).flat_map(|c| {
        let centre = c * (leaves + 1);
        (1..=leaves).map(move |i| (centre, centre + i))
    });
    UndirectedGraph::from_edges(count * (leaves + 1), edges).expect("star edges")
}

/// Copy `i` has hubs `i * (m + 2)` and `i * (m + 2) + 1`, each joined to the
/// `m` vertices that follow.
pub fn biclique_union(count: usize, m: usize) -> UndirectedGraph {
    let edges = (0..count).flat_map(|c| {
        let base = c * (m + 2);
        (0..m).flat_map(move |i| [(base, base + 2 + i), (base + 1, base + 2 + i)])
    });
    UndirectedGraph::from_edges(count * (m + 2), edges).expect("biclique edges")
}

/// Degeneracy is at most `d`: deleting vertices in reverse insertion order
/// never meets a vertex of degree above `d`.
pub fn random_degenerate<R: Rng>(n: usize, d: usize, density: f64, rng: &mut R) -> UndirectedGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let picks = d.min(v);
        for u in sample(rng, v, picks).into_iter() {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).expect("generated edges")
}

pub fn random_graph<R: Rng>(n: usize, edge_probability: f64, rng: &mut R) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_probability) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).expect("generated edges")
}

pub fn random_digraph<R: Rng>(n: usize, arc_probability: f64, rng: &mut R) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(arc_probability) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("generated arcs")
}

pub fn dense_core<R: Rng>(core: usize, extra: usize, rng: &mut R) -> UndirectedGraph {
    let mut edges: Vec<(Vertex, Vertex)> = (0..core).flat_map(|i| (i + 1..core).map(move |j| (i, j))).collect();
    for v in core..core + extra {
        if v == 0 {
            continue;
        }
        let attach = rng.gen_range(1..=2usize).min(v);
        for u in sample(rng, v, attach).into_iter() {
            edges.push((u, v));
        }
    }
    UndirectedGraph::from_edges(core + extra, edges).expect("generated edges")
}

/// Up to `count` distinct random pairs; fewer when `n` is too small.
pub fn random_terminals<R: Rng>(n: usize, count: usize, rng: &mut R) -> Result<TerminalPairs> {
    if n < 2 {
        return Ok(TerminalPairs::default());
    }
    let wanted = count.min(n * (n - 1) / 2);
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    while pairs.len() < wanted {
        let pick = sample(rng, n, 2);
        let (s, t) = (pick.index(0), pick.index(1));
        let pair = (s.min(t), s.max(t));
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    TerminalPairs::new(pairs)
}
