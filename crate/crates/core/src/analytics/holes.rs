//! Bounded search for odd holes and odd antiholes. This is not a perfectness
//! test: a clean scan only rules out obstructions up to `max_length`.

use serde::Serialize;

use super::Graph;
use crate::bitset::Bitset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleScan {
    pub max_length: usize,
    /// Vertices of an induced odd cycle of length at least 5, in cycle order.
    pub odd_hole: Option<Vec<usize>>,
    /// Vertices of an induced odd cycle of the complement, in cycle order.
    pub odd_antihole: Option<Vec<usize>>,
    /// Set when the node budget ran out before the scan finished.
    pub truncated: bool,
    pub nodes: u64,
}

impl HoleScan {
    pub fn found(&self) -> bool {
        self.odd_hole.is_some() || self.odd_antihole.is_some()
    }
}

struct Scan<'a> {
    g: &'a Graph,
    max_length: usize,
    nodes: u64,
    budget: u64,
}

impl Scan<'_> {
    /// Extends the induced path `path` (starting at its minimum vertex).
    /// `interior` holds the closed neighbourhoods of every path vertex except
    /// the first and last, plus the first vertex itself.
    fn extend(&mut self, path: &mut Vec<usize>, interior: &Bitset) -> Option<Option<Vec<usize>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let s = path[0];
        let last = *path.last().unwrap();
        let mut cand = self.g.neighbors(last).clone();
        cand.difference_with(interior);
        for w in cand.iter().filter(|&w| w > s) {
            if path.len() >= 2 && self.g.has_edge(w, s) {
                let len = path.len() + 1;
                if len >= 5 && len % 2 == 1 {
                    let mut cycle = path.clone();
                    cycle.push(w);
                    return Some(Some(cycle));
                }
                continue;
            }
            if path.len() + 1 >= self.max_length {
                continue;
            }
            let mut next = interior.clone();
            if path.len() >= 2 {
                next.union_with(self.g.neighbors(last));
                next.insert(last);
            }
            path.push(w);
            let found = self.extend(path, &next)?;
            path.pop();
            if found.is_some() {
                return Some(found);
            }
        }
        Some(None)
    }

    /// `None` on budget exhaustion.
    fn odd_hole(&mut self) -> Option<Option<Vec<usize>>> {
        let n = self.g.order();
        for s in 0..n {
            let mut interior = Bitset::new(n);
            interior.insert(s);
            let found = self.extend(&mut vec![s], &interior)?;
            if found.is_some() {
                return Some(found);
            }
        }
        Some(None)
    }
}

/// Looks for an odd hole of `g`, then an odd antihole, of length at most
/// `max_length`, expanding at most `budget` search nodes in total.
pub fn find_odd_hole_or_antihole(g: &Graph, max_length: usize, budget: u64) -> HoleScan {
    let mut report = HoleScan {
        max_length,
        odd_hole: None,
        odd_antihole: None,
        truncated: false,
        nodes: 0,
    };
    let mut scan = Scan {
        g,
        max_length,
        nodes: 0,
        budget,
    };
    match scan.odd_hole() {
        None => report.truncated = true,
        Some(Some(h)) => report.odd_hole = Some(h),
        Some(None) => {
            let co = g.complement();
            let mut coscan = Scan {
                g: &co,
                max_length,
                nodes: scan.nodes,
                budget,
            };
            match coscan.odd_hole() {
                None => report.truncated = true,
                Some(found) => report.odd_antihole = found,
            }
            scan.nodes = coscan.nodes;
        }
    }
    report.nodes = scan.nodes.min(budget);
    report
}
