use super::Graph;
use crate::bitset::Bitset;

/// A claw `K_{1,3}` as `[centre, a, b, c]` with `a, b, c` pairwise non-adjacent.
pub fn find_claw(g: &Graph) -> Option<[usize; 4]> {
    for v in 0..g.order() {
        let nv = g.neighbors(v);
        for a in nv.iter() {
            let mut rest = nv.clone();
            rest.difference_with(g.neighbors(a));
            rest.remove(a);
            for b in rest.iter().filter(|&b| b > a) {
                let mut tail = rest.clone();
                tail.difference_with(g.neighbors(b));
                if let Some(c) = tail.iter().find(|&c| c > b) {
                    return Some([v, a, b, c]);
                }
            }
        }
    }
    None
}

pub fn is_clawfree(g: &Graph) -> bool {
    find_claw(g).is_none()
}

/// Components of `g[within]` or, with `complemented`, of its complement.
fn split(g: &Graph, within: &Bitset, complemented: bool) -> Vec<Bitset> {
    let mut left = within.clone();
    let mut parts = Vec::new();
    while let Some(s) = left.first() {
        left.remove(s);
        let mut part = Bitset::new(g.order());
        part.insert(s);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let mut next = left.clone();
            if complemented {
                next.difference_with(g.neighbors(v));
            } else {
                next.intersect_with(g.neighbors(v));
            }
            for w in next.iter() {
                left.remove(w);
                part.insert(w);
                stack.push(w);
            }
        }
        parts.push(part);
    }
    parts
}

/// A vertex set of size at least 2 whose induced subgraph and its complement
/// are both connected, reached by the cotree decomposition.
fn prime_piece(g: &Graph) -> Option<Bitset> {
    let mut stack = vec![(Bitset::full(g.order()), false)];
    while let Some((set, complemented)) = stack.pop() {
        if set.count() < 2 {
            continue;
        }
        let parts = split(g, &set, complemented);
        if parts.len() > 1 {
            stack.extend(parts.into_iter().map(|p| (p, complemented)));
            continue;
        }
        let coparts = split(g, &set, !complemented);
        if coparts.len() == 1 {
            return Some(set);
        }
        stack.extend(coparts.into_iter().map(|p| (p, !complemented)));
    }
    None
}

/// Cographs are exactly the graphs in which every induced subgraph on two or
/// more vertices is disconnected or has a disconnected complement.
pub fn is_cograph(g: &Graph) -> bool {
    prime_piece(g).is_none()
}

/// An induced path `a - b - c - d`, if one exists.
pub fn find_induced_p4(g: &Graph) -> Option<[usize; 4]> {
    let piece = prime_piece(g)?;
    for b in piece.iter() {
        for c in g.neighbors(b).intersection(&piece).iter() {
            let mut left = g.neighbors(b).intersection(&piece);
            left.difference_with(g.neighbors(c));
            left.remove(c);
            let mut right = g.neighbors(c).intersection(&piece);
            right.difference_with(g.neighbors(b));
            right.remove(b);
            for a in left.iter() {
                let mut ends = right.clone();
                ends.difference_with(g.neighbors(a));
                if let Some(d) = ends.first() {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    unreachable!("a prime piece always contains an induced P4")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{RngExt, SeedableRng};

    fn brute_p4(g: &Graph) -> bool {
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let vs = [a, b, c, d];
                        if (0..4).any(|i| (i + 1..4).any(|j| vs[i] == vs[j])) {
                            continue;
                        }
                        if g.has_edge(a, b)
                            && g.has_edge(b, c)
                            && g.has_edge(c, d)
                            && !g.has_edge(a, c)
                            && !g.has_edge(b, d)
                            && !g.has_edge(a, d)
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn brute_claw(g: &Graph) -> bool {
        let n = g.order();
        for v in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if [a, b, c].iter().all(|&x| x != v && g.has_edge(v, x))
                            && !g.has_edge(a, b)
                            && !g.has_edge(a, c)
                            && !g.has_edge(b, c)
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn examples() {
        assert!(!is_cograph(&Graph::path(4)));
        assert!(is_cograph(&Graph::path(3)));
        assert!(is_cograph(&Graph::complete(5)));
        assert!(is_cograph(&Graph::cycle(4)));
        assert!(!is_cograph(&Graph::cycle(5)));
        assert!(is_cograph(&Graph::new(0)));
        assert!(!is_clawfree(&Graph::star(3)));
        assert!(is_clawfree(&Graph::cycle(6)));
        assert_eq!(find_claw(&Graph::star(3)), Some([0, 1, 2, 3]));
    }

    #[test]
    fn witnesses_are_valid_and_match_brute_force() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(0..=9);
            let p = rng.random_range(0.1..0.9);
            let mut g = Graph::new(n);
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(a, b);
                    }
                }
            }
            assert_eq!(is_cograph(&g), !brute_p4(&g));
            if let Some([a, b, c, d]) = find_induced_p4(&g) {
                assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d));
                assert!(!g.has_edge(a, c) && !g.has_edge(b, d) && !g.has_edge(a, d));
            }
            assert_eq!(is_clawfree(&g), !brute_claw(&g));
            if let Some([v, a, b, c]) = find_claw(&g) {
                assert!(g.has_edge(v, a) && g.has_edge(v, b) && g.has_edge(v, c));
                assert!(!g.has_edge(a, b) && !g.has_edge(a, c) && !g.has_edge(b, c));
            }
        }
    }
}
