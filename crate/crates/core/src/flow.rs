//! Vertex-capacitated max-flow on the split network.
//!
//! Every surviving vertex `v` becomes `in(v) -> out(v)` with capacity 1 when
//! deletable and effectively infinite otherwise; every arc `u -> w` becomes
//! `out(u) -> in(w)` with infinite capacity. A super source feeds the source
//! set and the sink set drains into a super sink. Augmenting paths are found
//! by breadth-first search visiting arcs in insertion order, which follows
//! vertex ids, so all cuts and paths are deterministic.

use std::collections::VecDeque;

use crate::graph::{OutNeighbors, Vertex};

const UNLIMITED: u32 = u32::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Role {
    Deletable,
    Forbidden,
    Removed,
}

pub(crate) struct VertexCutNetwork {
    n: usize,
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<u32>,
    capacity: Vec<u32>,
    flow: usize,
}

impl VertexCutNetwork {
    pub(crate) fn new<G: OutNeighbors>(g: &G, roles: &[Role], sources: &[Vertex], sinks: &[Vertex]) -> Self {
        let n = g.vertex_count();
        let mut net = VertexCutNetwork {
            n,
            head: vec![Vec::new(); 2 * n + 2],
            to: Vec::new(),
            residual: Vec::new(),
            capacity: Vec::new(),
            flow: 0,
        };
        let mut sources = sources.to_vec();
        sources.sort_unstable();
        sources.dedup();
        let mut sinks = sinks.to_vec();
        sinks.sort_unstable();
        sinks.dedup();
        let alive = |v: Vertex| roles[v] != Role::Removed;
        for &s in sources.iter().filter(|&&s| alive(s)) {
            net.add_arc(net.super_source(), 2 * s, UNLIMITED);
        }
        for v in (0..n).filter(|&v| alive(v)) {
            let cap = if roles[v] == Role::Deletable { 1 } else { UNLIMITED };
            net.add_arc(2 * v, 2 * v + 1, cap);
            for &w in g.out_neighbors(v) {
                if alive(w) {
                    net.add_arc(2 * v + 1, 2 * w, UNLIMITED);
                }
            }
        }
        for &t in sinks.iter().filter(|&&t| alive(t)) {
            net.add_arc(2 * t + 1, net.super_sink(), UNLIMITED);
        }
        net
    }

    fn super_source(&self) -> usize {
        2 * self.n
    }

    fn super_sink(&self) -> usize {
        2 * self.n + 1
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let e = self.to.len();
        self.to.extend([to, from]);
        self.residual.extend([cap, 0]);
        self.capacity.extend([cap, 0]);
        self.head[from].push(e);
        self.head[to].push(e + 1);
    }

    /// Augments until no path remains or the value exceeds `limit`.
    /// Returns `Some(value)` when the maximum flow is at most `limit`.
    pub(crate) fn max_flow(&mut self, limit: usize) -> Option<usize> {
        let nodes = self.head.len();
        let (source, sink) = (self.super_source(), self.super_sink());
        loop {
            if self.flow > limit {
                return None;
            }
            let mut parent_arc = vec![usize::MAX; nodes];
            let mut seen = vec![false; nodes];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                for &e in &self.head[x] {
                    let y = self.to[e];
                    if !seen[y] && self.residual[e] > 0 {
                        seen[y] = true;
                        parent_arc[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[sink] {
                return Some(self.flow);
            }
            let mut bottleneck = UNLIMITED;
            let mut y = sink;
            while y != source {
                let e = parent_arc[y];
                bottleneck = bottleneck.min(self.residual[e]);
                y = self.to[e ^ 1];
            }
            if bottleneck >= UNLIMITED {
                return None;
            }
            let mut y = sink;
            while y != source {
                let e = parent_arc[y];
                self.residual[e] -= bottleneck;
                self.residual[e ^ 1] += bottleneck;
                y = self.to[e ^ 1];
            }
            self.flow += bottleneck as usize;
        }
    }

    fn residual_reach_from_source(&self) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        let source = self.super_source();
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.head[x] {
                let y = self.to[e];
                if !seen[y] && self.residual[e] > 0 {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn residual_reach_to_sink(&self) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        let sink = self.super_sink();
        seen[sink] = true;
        let mut queue = VecDeque::from([sink]);
        while let Some(y) = queue.pop_front() {
            for &back in &self.head[y] {
                let e = back ^ 1;
                let x = self.to[back];
                if !seen[x] && self.residual[e] > 0 {
                    seen[x] = true;
                    queue.push_back(x);
                }
            }
        }
        seen
    }

    /// Minimum cut closest to the sources. Call after a finite `max_flow`.
    pub(crate) fn closest_cut(&self) -> Vec<Vertex> {
        let reach = self.residual_reach_from_source();
        (0..self.n).filter(|&v| reach[2 * v] && !reach[2 * v + 1]).collect()
    }

    /// Minimum cut closest to the sinks. Call after a finite `max_flow`.
    pub(crate) fn farthest_cut(&self) -> Vec<Vertex> {
        let coreach = self.residual_reach_to_sink();
        (0..self.n).filter(|&v| coreach[2 * v + 1] && !coreach[2 * v]).collect()
    }

    /// Decomposes the current flow into source-to-sink vertex sequences.
    pub(crate) fn paths(&self) -> Vec<Vec<Vertex>> {
        let mut carried: Vec<u32> = (0..self.to.len())
            .map(|e| {
                if e % 2 == 0 {
                    self.capacity[e] - self.residual[e]
                } else {
                    0
                }
            })
            .collect();
        let (source, sink) = (self.super_source(), self.super_sink());
        let mut out = Vec::new();
        for _ in 0..self.flow {
            let mut nodes = vec![source];
            let mut x = source;
            while x != sink {
                let e = *self.head[x]
                    .iter()
                    .find(|&&e| e % 2 == 0 && carried[e] > 0)
                    .expect("flow conservation");
                carried[e] -= 1;
                x = self.to[e];
                if let Some(pos) = nodes.iter().position(|&y| y == x) {
                    nodes.truncate(pos + 1);
                } else {
                    nodes.push(x);
                }
            }
            let mut path: Vec<Vertex> = Vec::new();
            for &node in &nodes[1..nodes.len() - 1] {
                let v = node / 2;
                if path.last() != Some(&v) {
                    path.push(v);
                }
            }
            out.push(path);
        }
        out
    }
}
