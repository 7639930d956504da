//! Library results against independent brute force over the bundled corpus.

use std::collections::BTreeSet;
use std::sync::Arc;

use diffgraph::analytics::{clique_number, independence_number, is_clawfree, is_cograph, Graph};
use diffgraph::classify::classify;
use diffgraph::graphs::build_all;
use diffgraph::harness::Manifest;
use diffgraph::lattice::{all_subgroups, SubgroupLattice};
use diffgraph::perm::{realize, Elem, FiniteGroup, DEFAULT_ORDER_CAP};

fn corpus_groups(max_order: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    let m = Manifest::builtin();
    m.entries
        .iter()
        .filter_map(|e| {
            let g = realize(&e.spec, &m.actions, DEFAULT_ORDER_CAP).unwrap();
            (g.order() <= max_order).then(|| (e.label.clone(), Arc::new(g)))
        })
        .collect()
}

fn close(g: &FiniteGroup, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn members(lat: &SubgroupLattice) -> BTreeSet<Vec<Elem>> {
    lat.subgroups().iter().map(|h| h.member_list()).collect()
}

/// Every subset closed under multiplication (finite, so these are the subgroups).
fn subgroups_by_subsets(g: &FiniteGroup) -> BTreeSet<Vec<Elem>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let elems: Vec<Elem> = (0..n as Elem).filter(|&i| mask >> i & 1 == 1).collect();
        if elems
            .iter()
            .all(|&a| elems.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1))
        {
            out.insert(elems);
        }
    }
    out
}

/// Closures of every subset of at most `floor(log2 |G|)` elements; a subgroup
/// of order `m` needs at most `log2 m` generators.
fn subgroups_by_small_generating_sets(g: &FiniteGroup) -> BTreeSet<Vec<Elem>> {
    let n = g.order();
    let k = usize::BITS as usize - 1 - n.leading_zeros() as usize;
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Vec<Elem>, Elem)> = vec![(Vec::new(), 0)];
    while let Some((gens, start)) = stack.pop() {
        out.insert(close(g, &gens).into_iter().collect());
        if gens.len() < k {
            for x in start..n as Elem {
                let mut next = gens.clone();
                next.push(x);
                stack.push((next, x + 1));
            }
        }
    }
    out
}

#[test]
fn subgroups_match_subset_enumeration_up_to_order_12() {
    for (label, g) in corpus_groups(12) {
        let lat = all_subgroups(g.clone()).unwrap();
        assert_eq!(members(&lat), subgroups_by_subsets(&g), "{label}");
    }
}

#[test]
fn subgroups_match_generating_set_enumeration_up_to_order_24() {
    let groups = corpus_groups(24);
    assert!(groups.len() > 40);
    for (label, g) in groups {
        let lat = all_subgroups(g.clone()).unwrap();
        assert_eq!(members(&lat), subgroups_by_small_generating_sets(&g), "{label}");
    }
}

#[test]
fn graphs_match_definitions_up_to_order_40() {
    for (label, g) in corpus_groups(40) {
        let lat = all_subgroups(g.clone()).unwrap();
        let sets: Vec<BTreeSet<Elem>> = lat.subgroups().iter().map(|h| h.member_list().into_iter().collect()).collect();
        let graphs = build_all(&lat);
        let n = g.order();
        for h in lat.proper_nontrivial() {
            for k in lat.proper_nontrivial().filter(|&k| k > h) {
                let mut gens: Vec<Elem> = sets[h].iter().copied().collect();
                gens.extend(&sets[k]);
                let join_is_g = close(&g, &gens).len() == n;
                let product: BTreeSet<Elem> = sets[h]
                    .iter()
                    .flat_map(|&a| sets[k].iter().map(move |&b| (a, b)))
                    .map(|(a, b)| g.mul(a, b))
                    .collect();
                let product_is_g = product.len() == n;
                assert_eq!(graphs.delta.adjacent(h, k), join_is_g, "{label} delta {h} {k}");
                assert_eq!(graphs.gamma.adjacent(h, k), product_is_g, "{label} gamma {h} {k}");
                assert_eq!(graphs.difference.adjacent(h, k), join_is_g && !product_is_g, "{label} d {h} {k}");
            }
        }
        let isolated = graphs.difference.graph.isolated().len();
        assert_eq!(graphs.difference_star.vertices.len(), graphs.difference.vertices.len() - isolated);
    }
}

/// Upper central series: nilpotent iff it reaches the whole group.
fn nilpotent_by_centre_series(g: &FiniteGroup) -> bool {
    let n = g.order() as Elem;
    let mut z: BTreeSet<Elem> = BTreeSet::from([g.identity()]);
    loop {
        // x is in the next term iff [x, y] lies in z for every y
        let next: BTreeSet<Elem> = (0..n)
            .filter(|&x| {
                (0..n).all(|y| {
                    let comm = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
                    z.contains(&comm)
                })
            })
            .collect();
        if next.len() == n as usize {
            return true;
        }
        if next == z {
            return false;
        }
        z = next;
    }
}

fn derived_series_terminates(g: &FiniteGroup) -> bool {
    let mut current: Vec<Elem> = (0..g.order() as Elem).collect();
    loop {
        let comms: Vec<Elem> = current
            .iter()
            .flat_map(|&x| current.iter().map(move |&y| (x, y)))
            .map(|(x, y)| g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let next: Vec<Elem> = close(g, &comms).into_iter().collect();
        if next.len() == 1 {
            return true;
        }
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}

#[test]
fn classification_matches_series_definitions() {
    for (label, g) in corpus_groups(64) {
        let lat = all_subgroups(g.clone()).unwrap();
        let c = classify(&lat).unwrap();
        assert_eq!(c.nilpotent.value, nilpotent_by_centre_series(&g), "{label}");
        assert_eq!(c.solvable.value, derived_series_terminates(&g), "{label}");
        let abelian = (0..g.order() as Elem).all(|a| (0..g.order() as Elem).all(|b| g.mul(a, b) == g.mul(b, a)));
        assert_eq!(c.abelian.value, abelian, "{label}");
        let dedekind = lat.subgroups().iter().enumerate().all(|(h, _)| lat.is_normal(h));
        assert_eq!(c.dedekind.value, dedekind, "{label}");
    }
}

fn induced_on(g: &Graph, q: [usize; 4]) -> (usize, [usize; 4]) {
    let mut deg = [0; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(q[i], q[j]) {
                edges += 1;
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    deg.sort_unstable();
    (edges, deg)
}

fn quartic_scan(g: &Graph) -> (bool, bool) {
    let n = g.order();
    let (mut claw, mut p4) = (false, false);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    match induced_on(g, [a, b, c, d]) {
                        (3, [1, 1, 1, 3]) => claw = true,
                        (3, [1, 1, 2, 2]) => p4 = true,
                        _ => {}
                    }
                }
            }
        }
    }
    (claw, p4)
}

#[test]
fn recognizers_match_quartic_scan_on_small_difference_graphs() {
    let mut checked = 0;
    for (label, g) in corpus_groups(DEFAULT_ORDER_CAP) {
        if g.order() > 400 {
            continue;
        }
        let lat = all_subgroups(g).unwrap();
        let d = build_all(&lat).difference.graph;
        if d.order() > 40 {
            continue;
        }
        let (claw, p4) = quartic_scan(&d);
        assert_eq!(is_clawfree(&d), !claw, "{label}");
        assert_eq!(is_cograph(&d), !p4, "{label}");
        checked += 1;
    }
    assert!(checked > 100);
}

fn brute_alpha(g: &Graph) -> usize {
    let n = g.order();
    (0u32..1 << n)
        .filter(|&m| {
            (0..n).all(|i| m >> i & 1 == 0 || (i + 1..n).all(|j| m >> j & 1 == 0 || !g.has_edge(i, j)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[test]
fn solvers_match_subset_search_on_small_difference_graphs() {
    for (label, g) in corpus_groups(64) {
        let lat = all_subgroups(g).unwrap();
        let d = build_all(&lat).difference.graph;
        if d.order() > 18 {
            continue;
        }
        let alpha = brute_alpha(&d);
        assert_eq!(independence_number(&d, u64::MAX).unwrap().size(), alpha, "{label}");
        assert_eq!(clique_number(&d.complement(), u64::MAX).unwrap().size(), alpha, "{label}");
        assert_eq!(clique_number(&d, u64::MAX).unwrap().size(), brute_alpha(&d.complement()), "{label}");
    }
}
