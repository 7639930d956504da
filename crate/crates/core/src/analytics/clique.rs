use serde::Serialize;

use super::{components, AnalyticsError, Graph};
use crate::bitset::Bitset;

/// A maximum clique (or independent set) together with its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clique {
    pub vertices: Vec<usize>,
    /// Search nodes expanded to prove optimality.
    pub nodes: u64,
}

impl Clique {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

struct Search<'a> {
    adj: &'a [Bitset],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p`; returns vertices in colour order.
    fn colour_sort(&self, p: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = p.clone();
        let mut k = 0;
        while !uncoloured.is_empty() {
            k += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.adj[v]);
                uncoloured.remove(v);
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut p: Bitset) -> Result<(), ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let (order, colours) = self.colour_sort(&p);
        for i in (0..order.len()).rev() {
            if self.current.len() + colours[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            self.current.push(v);
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            p.remove(v);
        }
        Ok(())
    }
}

fn max_clique(g: &Graph, budget: u64, solver: &'static str) -> Result<Clique, AnalyticsError> {
    let n = g.order();
    if n == 0 {
        return Ok(Clique {
            vertices: Vec::new(),
            nodes: 0,
        });
    }
    // Work in a relabelled copy so that bitset order is descending degree.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<Bitset> = order
        .iter()
        .map(|&v| Bitset::from_indices(n, g.neighbors(v).iter().map(|w| pos[w])))
        .collect();
    let mut search = Search {
        adj: &adj,
        best: vec![0],
        current: Vec::new(),
        nodes: 0,
        budget,
    };
    match search.expand(Bitset::full(n)) {
        Ok(()) => {
            let mut vertices: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
            vertices.sort_unstable();
            Ok(Clique {
                vertices,
                nodes: search.nodes,
            })
        }
        Err(()) => Err(AnalyticsError::BudgetExhausted {
            solver,
            budget,
            lower_bound: search.best.len(),
        }),
    }
}

/// Exact clique number by colour-bounded branch and bound. Fails rather than
/// approximates when `budget` search nodes are not enough.
pub fn clique_number(g: &Graph, budget: u64) -> Result<Clique, AnalyticsError> {
    max_clique(g, budget, "clique")
}

/// Exact independence number: a maximum clique of the complement, solved
/// separately on each connected component. `budget` is shared by all components.
pub fn independence_number(g: &Graph, budget: u64) -> Result<Clique, AnalyticsError> {
    let mut vertices = Vec::new();
    let mut nodes = 0;
    let mut comps = components(g);
    comps.sort_by_key(|c| c.len());
    let mut found = 0;
    let mut error = None;
    for comp in &comps {
        if comp.len() == 1 {
            vertices.push(comp[0]);
            found += 1;
            continue;
        }
        let sub = g.induced(comp).complement();
        match max_clique(&sub, budget.saturating_sub(nodes), "independence") {
            Ok(c) => {
                nodes += c.nodes;
                found += c.size();
                vertices.extend(c.vertices.iter().map(|&i| comp[i]));
            }
            Err(AnalyticsError::BudgetExhausted { lower_bound, .. }) => {
                error = Some(lower_bound);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(partial) = error {
        return Err(AnalyticsError::BudgetExhausted {
            solver: "independence",
            budget,
            lower_bound: found + partial,
        });
    }
    vertices.sort_unstable();
    Ok(Clique { vertices, nodes })
}
