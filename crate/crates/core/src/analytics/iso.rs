use super::{components, degree_sequence, triangle_count, AnalyticsError, Graph};

/// Largest graphs accepted by the isomorphism test.
pub const ISO_VERTEX_LIMIT: usize = 2000;

/// Both graphs side by side; vertex `i` of the second graph is `n + i`.
struct Pair {
    n: usize,
    lists: Vec<Vec<usize>>,
}

impl Pair {
    fn new(g1: &Graph, g2: &Graph) -> Self {
        let n = g1.order();
        let mut lists = g1.adjacency_lists();
        lists.extend(
            g2.adjacency_lists()
                .into_iter()
                .map(|l| l.into_iter().map(|v| v + n).collect()),
        );
        Pair { n, lists }
    }

    /// Colour refinement to a stable partition, with colour ids shared by both
    /// sides. `None` once the two sides have different colour class sizes.
    fn refine(&self, mut colours: Vec<usize>) -> Option<Vec<usize>> {
        let mut classes = count_classes(&colours);
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..2 * self.n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.lists[v].iter().map(|&w| colours[w]).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            let mut sorted: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            colours = sigs
                .iter()
                .map(|s| sorted.binary_search(&s).unwrap())
                .collect();
            if !self.balanced(&colours) {
                return None;
            }
            let now = sorted.len();
            if now == classes {
                return Some(colours);
            }
            classes = now;
        }
    }

    fn balanced(&self, colours: &[usize]) -> bool {
        let k = colours.iter().max().map_or(0, |m| m + 1);
        let mut diff = vec![0i64; k];
        for (v, &c) in colours.iter().enumerate() {
            diff[c] += if v < self.n { 1 } else { -1 };
        }
        diff.iter().all(|&d| d == 0)
    }

    fn search(
        &self,
        colours: Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<Option<Vec<usize>>, AnalyticsError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(AnalyticsError::BudgetExhausted {
                solver: "isomorphism",
                budget,
                lower_bound: 0,
            });
        }
        let n = self.n;
        let k = colours.iter().max().map_or(0, |m| m + 1);
        let mut size = vec![0usize; k];
        for &c in &colours[..n] {
            size[c] += 1;
        }
        // Branch on the smallest non-singleton class, lowest colour first.
        let target = (0..k).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c));
        let Some(target) = target else {
            let mut map = vec![0; n];
            let mut by_colour = vec![usize::MAX; k];
            for v in n..2 * n {
                by_colour[colours[v]] = v - n;
            }
            for v in 0..n {
                map[v] = by_colour[colours[v]];
            }
            return Ok(self.is_isomorphism(&map).then_some(map));
        };
        let v = (0..n).find(|&v| colours[v] == target).unwrap();
        for u in (n..2 * n).filter(|&u| colours[u] == target) {
            let mut next = colours.clone();
            next[v] = k;
            next[u] = k;
            if let Some(refined) = self.refine(next) {
                if let Some(map) = self.search(refined, nodes, budget)? {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }

    fn is_isomorphism(&self, map: &[usize]) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            let mut img: Vec<usize> = self.lists[a].iter().map(|&b| map[b] + n).collect();
            img.sort_unstable();
            img == self.lists[map[a] + n]
        })
    }
}

fn count_classes(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn invariants(g: &Graph) -> (usize, usize, Vec<usize>, Vec<usize>, usize) {
    let mut comps: Vec<usize> = components(g).iter().map(Vec::len).collect();
    comps.sort_unstable();
    (
        g.order(),
        g.edge_count(),
        degree_sequence(g),
        comps,
        triangle_count(g),
    )
}

/// An isomorphism `map` with `a ~ b` in `g1` iff `map[a] ~ map[b]` in `g2`.
pub fn find_isomorphism(
    g1: &Graph,
    g2: &Graph,
    budget: u64,
) -> Result<Option<Vec<usize>>, AnalyticsError> {
    for g in [g1, g2] {
        if g.order() > ISO_VERTEX_LIMIT {
            return Err(AnalyticsError::TooLarge {
                limit: ISO_VERTEX_LIMIT,
                got: g.order(),
            });
        }
    }
    if invariants(g1) != invariants(g2) {
        return Ok(None);
    }
    // Isolated vertices pair up arbitrarily; only the rest needs a search.
    let core = |g: &Graph| -> (Vec<usize>, Vec<usize>) {
        (0..g.order()).partition(|&v| g.degree(v) > 0)
    };
    let (core1, iso1) = core(g1);
    let (core2, iso2) = core(g2);
    let pair = Pair::new(&g1.induced(&core1), &g2.induced(&core2));
    let start: Vec<usize> = pair.lists.iter().map(Vec::len).collect();
    let Some(colours) = pair.refine(start) else {
        return Ok(None);
    };
    let mut nodes = 0;
    let Some(inner) = pair.search(colours, &mut nodes, budget)? else {
        return Ok(None);
    };
    let mut map = vec![0; g1.order()];
    for (i, &v) in core1.iter().enumerate() {
        map[v] = core2[inner[i]];
    }
    for (&a, &b) in iso1.iter().zip(&iso2) {
        map[a] = b;
    }
    Ok(Some(map))
}

pub fn graphs_isomorphic(g1: &Graph, g2: &Graph, budget: u64) -> Result<bool, AnalyticsError> {
    find_isomorphism(g1, g2, budget).map(|m| m.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{RngExt, SeedableRng};

    fn check_map(g1: &Graph, g2: &Graph, map: &[usize]) {
        assert_eq!(g1.relabel(map), *g2);
    }

    #[test]
    fn examples() {
        assert!(!graphs_isomorphic(&Graph::complete(3), &Graph::path(3), 100).unwrap());
        assert!(graphs_isomorphic(&Graph::cycle(3), &Graph::complete(3), 100).unwrap());
        // Same degree sequence, different structure.
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!graphs_isomorphic(&Graph::cycle(6), &two_triangles, 100).unwrap());
        assert!(matches!(
            graphs_isomorphic(&Graph::new(2001), &Graph::new(2001), 10),
            Err(AnalyticsError::TooLarge { .. })
        ));
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // Petersen graph against a relabelled copy, and against a 3-regular
        // non-isomorphic graph with the same cheap invariants (no triangles).
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5)).collect();
        let petersen = Graph::from_edges(10, &[outer, spokes, inner].concat());
        let mut rng = StdRng::seed_from_u64(1);
        let mut perm: Vec<usize> = (0..10).collect();
        perm.shuffle(&mut rng);
        let copy = petersen.relabel(&perm);
        let map = find_isomorphism(&petersen, &copy, 10_000).unwrap().unwrap();
        check_map(&petersen, &copy, &map);
        // The 5-prism is 3-regular on 10 vertices but has 4-cycles.
        let prism_edges: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| [(i, (i + 1) % 5), (i + 5, (i + 1) % 5 + 5), (i, i + 5)])
            .collect();
        let prism = Graph::from_edges(10, &prism_edges);
        assert!(!graphs_isomorphic(&petersen, &prism, 10_000).unwrap());
    }

    #[test]
    fn invariant_under_random_relabelling() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.random_range(0..=40);
            let p = rng.random_range(0.05..0.5);
            let mut g = Graph::new(n);
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(a, b);
                    }
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            assert!(graphs_isomorphic(&g, &g, 100_000).unwrap());
            let map = find_isomorphism(&g, &h, 100_000).unwrap().unwrap();
            check_map(&g, &h, &map);
        }
    }
}
