//! Exact invariants of simple undirected graphs stored as adjacency bitsets.

mod basic;
mod clique;
mod forbidden;
mod holes;
mod iso;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::Bitset;

pub use basic::{
    components, degree_sequence, girth, induced_four_cycle, is_bipartite, is_connected, is_cycle,
    triangle_count, universal_vertices,
};
pub use clique::{clique_number, independence_number, Clique};
pub use forbidden::{find_claw, find_induced_p4, is_clawfree, is_cograph};
pub use holes::{find_odd_hole_or_antihole, HoleScan};
pub use iso::{find_isomorphism, graphs_isomorphic, ISO_VERTEX_LIMIT};

/// Default node-expansion cap for the clique and independence solvers.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticsError {
    #[error("{solver} search exceeded its budget of {budget} nodes (best so far {lower_bound})")]
    BudgetExhausted {
        solver: &'static str,
        budget: u64,
        lower_bound: usize,
    },
    #[error("isomorphism test limited to {limit} vertices, got {got}")]
    TooLarge { limit: usize, got: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<Bitset>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Bitset::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn from_rows(adj: Vec<Bitset>) -> Self {
        Graph { adj }
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n).complement()
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Sorted list of edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&b| b > a).map(|b| (a, b)));
        }
        out
    }

    pub fn isolated(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let adj = (0..n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph { adj }
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                Bitset::from_indices(
                    k,
                    self.adj[v]
                        .iter()
                        .filter(|&w| pos[w] != usize::MAX)
                        .map(|w| pos[w]),
                )
            })
            .collect();
        Graph { adj }
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.order());
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|r| r.iter().collect()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub clique: u64,
    pub independence: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            clique: DEFAULT_NODE_BUDGET,
            independence: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Exact invariants of one graph. Solver results are `None` when the budget
/// ran out; they are never approximated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub isolated_count: usize,
    pub component_count: usize,
    pub girth: Girth,
    pub bipartite: bool,
    pub clique_number: Option<usize>,
    pub independence_number: Option<usize>,
    pub clawfree: bool,
    pub cograph: bool,
    pub universal_vertices: Vec<usize>,
    pub is_cycle: bool,
    pub cycle_length: Option<usize>,
    pub degree_sequence: Vec<usize>,
}

pub fn analyze(g: &Graph, budgets: Budgets) -> AnalysisReport {
    let cycle = is_cycle(g);
    AnalysisReport {
        vertex_count: g.order(),
        edge_count: g.edge_count(),
        isolated_count: g.isolated().len(),
        component_count: components(g).len(),
        girth: girth(g),
        bipartite: is_bipartite(g),
        clique_number: clique_number(g, budgets.clique).ok().map(|c| c.size()),
        independence_number: independence_number(g, budgets.independence)
            .ok()
            .map(|c| c.size()),
        clawfree: is_clawfree(g),
        cograph: is_cograph(g),
        universal_vertices: universal_vertices(g),
        is_cycle: cycle.is_some(),
        cycle_length: cycle,
        degree_sequence: degree_sequence(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_helpers() {
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::cycle(6).edge_count(), 6);
        assert_eq!(Graph::path(4).edge_count(), 3);
        assert_eq!(Graph::star(3).degree(0), 3);
        let g = Graph::path(4);
        assert_eq!(g.complement().edge_count(), 3);
        assert_eq!(g.induced(&[1, 2, 3]).edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.relabel(&[3, 2, 1, 0]).edges(), g.edges());
    }

    #[test]
    fn report_invariants_on_small_graphs() {
        for g in [
            Graph::new(0),
            Graph::new(1),
            Graph::new(4),
            Graph::complete(5),
            Graph::cycle(5),
            Graph::cycle(4),
            Graph::path(4),
            Graph::star(3),
        ] {
            let r = analyze(&g, Budgets::default());
            let omega = r.clique_number.unwrap();
            assert_eq!(omega >= 2, r.edge_count >= 1);
            assert!(r.independence_number.unwrap() >= r.isolated_count);
            if r.bipartite {
                assert!(matches!(r.girth, Girth::Infinite) || r.girth.finite().unwrap() % 2 == 0);
            }
            if let Some(len) = r.cycle_length {
                if len % 2 == 1 {
                    assert!(!r.bipartite);
                }
            }
        }
    }

    #[test]
    fn girth_serializes_as_int_or_inf() {
        assert_eq!(serde_json::to_string(&Girth::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Girth::Infinite).unwrap(), "\"inf\"");
    }
}
