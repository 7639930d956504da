use std::collections::VecDeque;

use super::{Girth, Graph};
use crate::bitset::Bitset;

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = Bitset::new(n);
    let mut out = Vec::new();
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        seen.insert(s);
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for w in g.neighbors(v).iter() {
                if seen.put(w) {
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Single-vertex graphs count as connected; the empty graph does not.
pub fn is_connected(g: &Graph) -> bool {
    components(g).len() == 1
}

/// Shortest cycle length via a breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Girth {
    let n = g.order();
    let lists = g.adjacency_lists();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if best == 3 {
            break;
        }
        let mut touched = vec![root];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &lists[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v).iter() {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Vertices adjacent to every other vertex; the lone vertex of a one-vertex
/// graph qualifies vacuously.
pub fn universal_vertices(g: &Graph) -> Vec<usize> {
    let n = g.order();
    (0..n).filter(|&v| g.degree(v) + 1 == n).collect()
}

/// `Some(length)` when the graph is a single cycle of length at least 3.
pub fn is_cycle(g: &Graph) -> Option<usize> {
    let n = g.order();
    (n >= 3 && g.edge_count() == n && (0..n).all(|v| g.degree(v) == 2) && is_connected(g))
        .then_some(n)
}

pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

pub fn triangle_count(g: &Graph) -> usize {
    let mut t = 0;
    for (a, b) in g.edges() {
        t += g
            .neighbors(a)
            .intersection(g.neighbors(b))
            .iter()
            .filter(|&c| c > b)
            .count();
    }
    t
}

/// An induced 4-cycle `a ~ b ~ c ~ d ~ a`, if one exists.
pub fn induced_four_cycle(g: &Graph) -> Option<[usize; 4]> {
    let n = g.order();
    for a in 0..n {
        for c in a + 1..n {
            if g.has_edge(a, c) {
                continue;
            }
            let common = g.neighbors(a).intersection(g.neighbors(c));
            let list: Vec<usize> = common.iter().collect();
            for (i, &b) in list.iter().enumerate() {
                if let Some(&d) = list[i + 1..].iter().find(|&&d| !g.has_edge(b, d)) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Shortest cycle by enumerating simple cycles through each vertex.
    fn girth_brute(g: &Graph) -> Girth {
        fn dfs(g: &Graph, start: usize, v: usize, path: &mut Vec<usize>, best: &mut usize) {
            for w in g.neighbors(v).iter() {
                if w == start && path.len() >= 3 {
                    *best = (*best).min(path.len());
                } else if w > start && !path.contains(&w) && path.len() + 1 < *best {
                    path.push(w);
                    dfs(g, start, w, path, best);
                    path.pop();
                }
            }
        }
        let mut best = usize::MAX;
        for s in 0..g.order() {
            dfs(g, s, s, &mut vec![s], &mut best);
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    fn random_graph(n: usize, p_percent: u64, seed: u64) -> Graph {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if (state >> 33) % 100 < p_percent {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    #[test]
    fn components_examples() {
        assert_eq!(components(&Graph::new(4)).len(), 4);
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(components(&g), vec![vec![0, 1, 2], vec![3]]);
        assert!(is_connected(&Graph::new(1)));
        assert!(!is_connected(&Graph::new(0)));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&Graph::complete(3)), Girth::Finite(3));
        assert_eq!(girth(&Graph::cycle(4)), Girth::Finite(4));
        assert_eq!(girth(&Graph::cycle(7)), Girth::Finite(7));
        assert_eq!(girth(&Graph::path(5)), Girth::Infinite);
        assert_eq!(girth(&Graph::new(3)), Girth::Infinite);
    }

    #[test]
    fn girth_matches_brute_force() {
        for seed in 0..60 {
            let n = 6 + (seed as usize % 15);
            let g = random_graph(n, 8 + seed % 20, seed);
            assert_eq!(girth(&g), girth_brute(&g), "seed {seed}");
        }
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&Graph::cycle(4)));
        assert!(!is_bipartite(&Graph::complete(3)));
        assert!(is_bipartite(&Graph::new(5)));
        assert!(!is_bipartite(&Graph::cycle(5)));
    }

    #[test]
    fn universal_and_cycle() {
        assert_eq!(universal_vertices(&Graph::complete(3)), vec![0, 1, 2]);
        assert_eq!(universal_vertices(&Graph::new(1)), vec![0]);
        assert!(universal_vertices(&Graph::cycle(4)).is_empty());
        assert_eq!(is_cycle(&Graph::cycle(4)), Some(4));
        assert_eq!(is_cycle(&Graph::complete(3)), Some(3));
        assert_eq!(is_cycle(&Graph::complete(4)), None);
        assert_eq!(is_cycle(&Graph::new(3)), None);
    }

    #[test]
    fn triangles_and_four_cycles() {
        assert_eq!(triangle_count(&Graph::complete(4)), 4);
        assert_eq!(induced_four_cycle(&Graph::cycle(4)), Some([0, 1, 2, 3]));
        assert_eq!(induced_four_cycle(&Graph::complete(4)), None);
        assert_eq!(induced_four_cycle(&Graph::cycle(5)), None);
    }
}
