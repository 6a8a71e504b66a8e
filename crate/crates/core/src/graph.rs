//! Simple undirected graphs and digraphs on vertex ids `0..n`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Read access to out-neighbourhoods, shared by both graph types so flow and
/// reachability code can walk either one. Undirected edges count as two arcs.
pub trait OutNeighbors {
    fn vertex_count(&self) -> usize;
    fn out_neighbors(&self, v: Vertex) -> &[Vertex];
}

fn check_vertex(v: Vertex, n: usize) -> Result<()> {
    if v >= n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

fn sorted_unique(mut set: Vec<Vertex>) -> Vec<Vertex> {
    set.sort_unstable();
    set.dedup();
    set
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> Self {
        UndirectedGraph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(UndirectedGraph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        UndirectedGraph {
            adj,
            edge_count: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// Star with centre 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// Union of the neighbourhoods of `set`, sorted.
    pub fn open_neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        sorted_unique(set.iter().flat_map(|&v| self.adj[v].iter().copied()).collect())
    }

    pub fn induced_subgraph(&self, keep: &[Vertex]) -> InducedSubgraph<UndirectedGraph> {
        let keep = sorted_unique(keep.to_vec());
        let local = local_index(self.vertex_count(), &keep);
        let edges = keep.iter().enumerate().flat_map(|(i, &u)| {
            let local = &local;
            self.adj[u]
                .iter()
                .filter_map(move |&v| local[v].filter(|&j| i < j).map(|j| (i, j)))
        });
        let graph = UndirectedGraph::from_edges(keep.len(), edges).expect("induced edges are valid");
        InducedSubgraph { graph, original: keep }
    }

    pub fn without_vertices(&self, remove: &[Vertex]) -> InducedSubgraph<UndirectedGraph> {
        let keep = complement(self.vertex_count(), remove);
        self.induced_subgraph(&keep)
    }

    /// Each edge becomes a pair of opposite arcs.
    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_arcs(self.vertex_count(), self.edges().flat_map(|(u, v)| [(u, v), (v, u)]))
            .expect("bidirected edges are valid")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Attempts a proper 2-colouring; `Some(side)` with `side[v] ∈ {0, 1}`.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        for start in 0..n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

impl OutNeighbors for UndirectedGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Digraph {
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    arc_count: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    /// Builds a digraph from an arc list; repeated arcs are collapsed, opposite
    /// arcs are kept as a 2-cycle.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let mut arc_count = 0;
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
            arc_count += list.len();
        }
        Ok(Digraph {
            out_adj,
            in_adj,
            arc_count: arc_count / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn reverse(&self) -> Digraph {
        Digraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            arc_count: self.arc_count,
        }
    }

    /// Forgets orientation; 2-cycles become single edges.
    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph::from_edges(self.vertex_count(), self.arcs()).expect("arcs are valid")
    }

    /// Adjacent in either direction.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u != v && !self.has_arc(u, v) && !self.has_arc(v, u))
        })
    }

    pub fn induced_subgraph(&self, keep: &[Vertex]) -> InducedSubgraph<Digraph> {
        let keep = sorted_unique(keep.to_vec());
        let local = local_index(self.vertex_count(), &keep);
        let arcs = keep.iter().enumerate().flat_map(|(i, &u)| {
            let local = &local;
            self.out_adj[u].iter().filter_map(move |&v| local[v].map(|j| (i, j)))
        });
        let graph = Digraph::from_arcs(keep.len(), arcs).expect("induced arcs are valid");
        InducedSubgraph { graph, original: keep }
    }

    pub fn without_vertices(&self, remove: &[Vertex]) -> InducedSubgraph<Digraph> {
        let keep = complement(self.vertex_count(), remove);
        self.induced_subgraph(&keep)
    }

    /// Kahn's algorithm; `None` when a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_adj[v].len()).collect();
        let mut ready: BTreeSet<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for &v in &self.out_adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices reachable from `sources` without entering `blocked`.
    pub fn reachable_from(&self, sources: &[Vertex], blocked: &[bool]) -> Vec<bool> {
        reachable(self, sources, blocked)
    }
}

impl OutNeighbors for Digraph {
    fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }
}

/// Breadth-first reachability; blocked sources are skipped.
pub fn reachable<G: OutNeighbors>(g: &G, sources: &[Vertex], blocked: &[bool]) -> Vec<bool> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !blocked[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.out_neighbors(u) {
            if !blocked[v] && !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

fn local_index(n: usize, keep: &[Vertex]) -> Vec<Option<usize>> {
    let mut local = vec![None; n];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = Some(i);
    }
    local
}

fn complement(n: usize, remove: &[Vertex]) -> Vec<Vertex> {
    let mut gone = vec![false; n];
    for &v in remove {
        gone[v] = true;
    }
    (0..n).filter(|&v| !gone[v]).collect()
}

/// A subgraph together with the map from its ids back to the parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph<G> {
    pub graph: G,
    /// `original[i]` is the parent id of local vertex `i`; sorted ascending.
    pub original: Vec<Vertex>,
}

impl<G> InducedSubgraph<G> {
    pub fn to_original(&self, local: &[Vertex]) -> Vec<Vertex> {
        sorted_unique(local.iter().map(|&v| self.original[v]).collect())
    }

    pub fn to_local(&self, parent: Vertex) -> Option<Vertex> {
        self.original.binary_search(&parent).ok()
    }
}

/// Peeling order produced by repeatedly removing a minimum-degree vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrder {
    /// Vertices in removal order.
    pub order: Vec<Vertex>,
    /// `rank[v]` is the position of `v` in `order`.
    pub rank: Vec<usize>,
    pub degeneracy: usize,
    /// Neighbours removed after `v`, in increasing rank.
    pub forward_neighbors: Vec<Vec<Vertex>>,
}

/// Minimum-degree peeling with lowest-id tie-break.
pub fn degeneracy_order(g: &UndirectedGraph) -> DegeneracyOrder {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some((deg, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(deg);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(degree[u], u));
                degree[u] -= 1;
                queue.insert((degree[u], u));
            }
        }
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let forward_neighbors = (0..n)
        .map(|v| {
            let mut fwd: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| rank[u] > rank[v]).collect();
            fwd.sort_unstable_by_key(|&u| rank[u]);
            fwd
        })
        .collect();
    DegeneracyOrder {
        order,
        rank,
        degeneracy,
        forward_neighbors,
    }
}

pub fn degeneracy(g: &UndirectedGraph) -> usize {
    degeneracy_order(g).degeneracy
}

/// Bidirects every edge of `g` and appends a root `r = n` whose in-neighbours
/// are `root_in_neighbors`. The root has no out-arcs.
pub fn bidirect_with_root(g: &UndirectedGraph, root_in_neighbors: &[Vertex]) -> Result<Digraph> {
    let n = g.vertex_count();
    for &y in root_in_neighbors {
        check_vertex(y, n)?;
    }
    let arcs = g
        .edges()
        .flat_map(|(u, v)| [(u, v), (v, u)])
        .chain(root_in_neighbors.iter().map(|&y| (y, n)));
    Digraph::from_arcs(n + 1, arcs)
}

/// Either kind of graph, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(UndirectedGraph),
    Directed(Digraph),
}

impl AnyGraph {
    pub fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.vertex_count(),
            AnyGraph::Directed(d) => d.vertex_count(),
        }
    }
}

/// Unordered terminal pairs, stored as `(min, max)` in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TerminalPairs {
    pairs: Vec<(Vertex, Vertex)>,
}

impl TerminalPairs {
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out: Vec<(Vertex, Vertex)> = Vec::new();
        for (s, t) in pairs {
            if s == t {
                return Err(Error::Precondition(format!(
                    "terminal pair {{{s}, {t}}} has equal endpoints"
                )));
            }
            let pair = (s.min(t), s.max(t));
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
        Ok(TerminalPairs { pairs: out })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        for &(s, t) in &self.pairs {
            check_vertex(s, n)?;
            check_vertex(t, n)?;
        }
        Ok(())
    }

    /// Pairs avoiding `v`.
    pub fn without_vertex(&self, v: Vertex) -> TerminalPairs {
        TerminalPairs {
            pairs: self.pairs.iter().copied().filter(|&(s, t)| s != v && t != v).collect(),
        }
    }

    /// Re-expresses the pairs in the local ids of `sub`; pairs touching a
    /// vertex outside the subgraph are dropped.
    pub fn restrict_to<G>(&self, sub: &InducedSubgraph<G>) -> TerminalPairs {
        TerminalPairs {
            pairs: self
                .pairs
                .iter()
                .filter_map(|&(s, t)| {
                    let (a, b) = (sub.to_local(s)?, sub.to_local(t)?);
                    Some((a.min(b), a.max(b)))
                })
                .collect(),
        }
    }

    /// True when no pair is connected in `g` after deleting `cut`.
    pub fn is_multicut(&self, g: &UndirectedGraph, cut: &[Vertex]) -> bool {
        let mut blocked = vec![false; g.vertex_count()];
        for &v in cut {
            blocked[v] = true;
        }
        self.pairs.iter().all(|&(s, t)| {
            if blocked[s] || blocked[t] {
                return true;
            }
            !reachable(g, &[s], &blocked)[t]
        })
    }
}
