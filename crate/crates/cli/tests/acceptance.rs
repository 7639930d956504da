//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 4 asks for D(D4 x Z3) ≅ D(Q8 x Z3). Q8 x Z3 is Dedekind, so its
//! difference graph has no edges while D(D4 x Z3) has 12; the check is kept as
//! stated and is expected to fail. The run exits non-zero only when the set of
//! failing criteria differs from `EXPECTED_FAILURES`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use diffgraph::analytics::{
    clique_number, girth, graphs_isomorphic, independence_number, is_bipartite, is_clawfree,
    is_cograph, AnalyticsError, Budgets, Girth, Graph, DEFAULT_NODE_BUDGET,
};
use diffgraph::classify::{classify, is_iwasawa};
use diffgraph::graphs::{build_all, GraphSet};
use diffgraph::harness::{
    build_bundles, find_gap3249_action, registry, run_checks, Compute, Manifest, Tier,
};
use diffgraph::lattice::{all_subgroups, SubgroupLattice};
use diffgraph::perm::{realize, ActionRegistry, Elem, FiniteGroup, DEFAULT_ORDER_CAP};

const EXPECTED_FAILURES: &[usize] = &[4];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Corpus {
    manifest: Manifest,
}

impl Corpus {
    fn group(&self, label: &str) -> Arc<FiniteGroup> {
        let e = self.manifest.get(label).unwrap_or_else(|| panic!("{label} missing from corpus"));
        Arc::new(realize(&e.spec, &self.manifest.actions, DEFAULT_ORDER_CAP).unwrap())
    }

    fn lattice(&self, label: &str) -> SubgroupLattice {
        all_subgroups(self.group(label)).unwrap()
    }

    fn graphs(&self, label: &str) -> GraphSet {
        build_all(&self.lattice(label))
    }

    fn d(&self, label: &str) -> Graph {
        self.graphs(label).difference.graph
    }
}

fn alpha(g: &Graph) -> usize {
    independence_number(g, u64::MAX).unwrap().size()
}

fn criterion_1(c: &Corpus) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (label, expected) in [("s4", 30), ("q8", 6), ("a5", 59)] {
        let t = Instant::now();
        let lat = c.lattice(label);
        let elapsed = t.elapsed();
        pass &= lat.len() == expected && elapsed < Duration::from_secs(1);
        parts.push(format!("Sub({label}) = {} in {:.0?}", lat.len(), elapsed));
    }
    let nontrivial = c.lattice("a5").proper_nontrivial().count();
    pass &= nontrivial == 57;
    parts.push(format!("{nontrivial} non-trivial proper in A5"));
    outcome(pass, parts.join(", "))
}

fn criterion_2(c: &Corpus) -> Outcome {
    let s3 = c.graphs("s3").difference_star.graph;
    let d4 = c.graphs("d4").difference_star.graph;
    let a = graphs_isomorphic(&s3, &Graph::cycle(3), 10_000).unwrap();
    let b = graphs_isomorphic(&d4, &Graph::cycle(4), 10_000).unwrap();
    outcome(a && b, format!("D*(S3) ≅ C3: {a}, D*(D4) ≅ C4: {b}"))
}

fn criterion_3(c: &Corpus) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, expected) in [("a4", 4), ("d4", 6), ("d4_x_z3", 14), ("a5", 15)] {
        let a = alpha(&c.d(label));
        pass &= a == expected;
        parts.push(format!("alpha({label}) = {a}"));
    }
    let w = clique_number(&c.d("a4"), u64::MAX).unwrap().size();
    pass &= w == 5;
    parts.push(format!("omega(a4) = {w}"));

    let t = Instant::now();
    let a = alpha(&c.d("psl2_7"));
    let elapsed = t.elapsed();
    pass &= a == 29 && elapsed < Duration::from_secs(60);
    parts.push(format!("alpha(psl2_7) = {a} in {elapsed:.1?} including the lattice"));

    // Long tier, optional: an exhausted budget is acceptable, a wrong value is not.
    let t = Instant::now();
    match independence_number(&c.d("psl2_13"), DEFAULT_NODE_BUDGET) {
        Ok(cl) => {
            pass &= cl.size() == 91;
            parts.push(format!("alpha(psl2_13) = {} in {:.1?}", cl.size(), t.elapsed()));
        }
        Err(AnalyticsError::BudgetExhausted { lower_bound, .. }) => {
            pass &= lower_bound <= 91;
            parts.push(format!("alpha(psl2_13) unverified (budget exhausted, at least {lower_bound})"));
        }
        Err(e) => {
            pass = false;
            parts.push(format!("alpha(psl2_13) failed: {e}"));
        }
    }
    outcome(pass, parts.join(", "))
}

fn criterion_4(c: &Corpus) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let pairs = [
        ("s3_x_z5", "s3_x_z7", Some(9)),
        ("d5_x_z3", "z5_sd_z8", Some(30)),
        ("d4_x_z3", "q8_x_z3", None),
    ];
    for (a, b, edges) in pairs {
        let (ga, gb) = (c.d(a), c.d(b));
        let iso = graphs_isomorphic(&ga, &gb, 10_000_000).unwrap();
        let counts_ok = edges.is_none_or(|e| ga.edge_count() == e && gb.edge_count() == e);
        pass &= iso && counts_ok;
        parts.push(format!(
            "D({a}) ≅ D({b}): {iso} ({} and {} edges)",
            ga.edge_count(),
            gb.edge_count()
        ));
    }
    // the pairs the text goes on to name, for comparison
    let extra = ["d4_x_z3", "d4_x_z5"];
    let iso = graphs_isomorphic(&c.d(extra[0]), &c.d(extra[1]), 10_000_000).unwrap();
    parts.push(format!("also D(d4_x_z3) ≅ D(d4_x_z5): {iso}"));
    outcome(pass, parts.join("; "))
}

fn criterion_5(c: &Corpus) -> Outcome {
    let m = &c.manifest;
    let mut abelian = 0;
    let mut bad = Vec::new();
    for e in &m.entries {
        let g = realize(&e.spec, &m.actions, DEFAULT_ORDER_CAP).unwrap();
        if !g.is_abelian_by_generators() {
            continue;
        }
        abelian += 1;
        if build_all(&all_subgroups(Arc::new(g)).unwrap()).difference.graph.edge_count() != 0 {
            bad.push(e.label.clone());
        }
    }
    for label in ["q8", "z4_x_q8"] {
        if c.d(label).edge_count() != 0 {
            bad.push(label.to_string());
        }
    }
    let iwasawa = is_iwasawa(&c.lattice("z4_x_q8")).value;
    outcome(
        bad.is_empty() && !iwasawa,
        format!(
            "{abelian} abelian groups plus q8 and z4_x_q8 checked, with edges: {bad:?}; is_iwasawa(z4_x_q8) = {iwasawa}"
        ),
    )
}

fn criterion_6(c: &Corpus) -> Outcome {
    let lat = c.lattice("heis27");
    let nilpotent = classify(&lat).unwrap().nilpotent.value;
    let g = girth(&build_all(&lat).difference.graph);
    outcome(
        nilpotent && g == Girth::Finite(3),
        format!("(Z3 x Z3) ⋊ Z3 nilpotent: {nilpotent}, girth {g:?}"),
    )
}

fn criterion_7(c: &Corpus) -> Outcome {
    let t = Instant::now();
    let bundles = build_bundles(&c.manifest, Tier::Fast, Budgets::default(), &Compute).unwrap();
    let report = run_checks(&c.manifest, &bundles, &registry(), Tier::Fast);
    let elapsed = t.elapsed();
    let total = report.total();
    let required = ["T-2.5", "T-2.6", "T-4.1", "T-4.2", "T-5.1", "T-5.2", "T-5.3", "T-5.4", "T-6.1", "T-6.2"];
    let unexercised: Vec<&str> = required
        .iter()
        .copied()
        .filter(|id| report.summary[*id].confirmed == 0)
        .collect();
    let counts: Vec<String> = required
        .iter()
        .map(|id| {
            let s = report.summary[*id];
            format!("{id} {}/{}", s.confirmed, s.vacuous)
        })
        .collect();
    outcome(
        total.counterexample == 0 && unexercised.is_empty() && elapsed < Duration::from_secs(300),
        format!(
            "{} groups in {elapsed:.1?}, {} counterexamples, {} unverified, confirmed/vacuous: {}",
            report.rows.len(),
            total.counterexample,
            total.unverified,
            counts.join(", ")
        ),
    )
}

fn criterion_8(c: &Corpus) -> Outcome {
    let a4 = c.d("a4").edge_count();
    let s3 = c.lattice("s3");
    let graphs = build_all(&s3);
    let a3 = s3.proper_nontrivial().find(|&h| s3.order(h) == 3).unwrap();
    let s3_edges = graphs.difference.graph.edge_count();
    let isolated = graphs.difference.degree_of(a3) == Some(0);
    outcome(
        a4 == 18 && s3_edges == 3 && isolated,
        format!("|E(D(A4))| = {a4}, |E(D(S3))| = {s3_edges}, A3 isolated: {isolated}"),
    )
}

fn criterion_9() -> Outcome {
    let found = find_gap3249_action().unwrap();
    let mut actions = ActionRegistry::new();
    actions.insert("gap3249", found.action.clone());
    let g = realize(&found.spec, &actions, DEFAULT_ORDER_CAP).unwrap();
    let order = g.order();
    let lat = all_subgroups(Arc::new(g)).unwrap();
    let nilpotent = classify(&lat).unwrap().nilpotent.value;
    let graphs = build_all(&lat);
    let bipartite = is_bipartite(&graphs.difference.graph);
    let components = diffgraph::analytics::components(&graphs.difference_star.graph).len();
    outcome(
        order == 32 && nilpotent && !bipartite && components > 1,
        format!(
            "action {} (candidate {}), order {order}, nilpotent {nilpotent}, D bipartite {bipartite}, D* components {components}",
            found.action, found.scanned
        ),
    )
}

fn close(g: &FiniteGroup, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut set = BTreeSet::from([g.identity()]);
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

/// Closures of all subsets of at most floor(log2 |G|) elements.
fn brute_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<Elem>> {
    let n = g.order();
    let k = (usize::BITS - 1 - n.leading_zeros()) as usize;
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

/// (has induced claw, has induced P4) by looking at every 4-set.
fn quartic(g: &Graph) -> (bool, bool) {
    let n = g.order();
    let (mut claw, mut p4) = (false, false);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let mut deg = [0; 4];
                    let mut e = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if g.has_edge(q[i], q[j]) {
                                e += 1;
                                deg[i] += 1;
                                deg[j] += 1;
                            }
                        }
                    }
                    deg.sort_unstable();
                    claw |= e == 3 && deg == [1, 1, 1, 3];
                    p4 |= e == 3 && deg == [1, 1, 2, 2];
                }
            }
        }
    }
    (claw, p4)
}

fn criterion_10(c: &Corpus) -> Outcome {
    let m = &c.manifest;
    let groups: Vec<(String, Arc<FiniteGroup>)> = m
        .entries
        .iter()
        .map(|e| (e.label.clone(), Arc::new(realize(&e.spec, &m.actions, DEFAULT_ORDER_CAP).unwrap())))
        .collect();

    let mut lattice_checked = 0;
    let mut lattice_bad = Vec::new();
    for (label, g) in groups.iter().filter(|(_, g)| g.order() <= 24) {
        let lat = all_subgroups(g.clone()).unwrap();
        let ours: BTreeSet<Vec<Elem>> = lat.subgroups().iter().map(|h| h.member_list()).collect();
        if ours != brute_subgroups(g) {
            lattice_bad.push(label.clone());
        }
        lattice_checked += 1;
    }

    let mut graphs_checked = 0;
    let mut recognizer_bad = Vec::new();
    for (label, g) in groups.iter().filter(|(_, g)| g.order() <= 400) {
        let d = build_all(&all_subgroups(g.clone()).unwrap()).difference.graph;
        if d.order() > 40 {
            continue;
        }
        let (claw, p4) = quartic(&d);
        if is_clawfree(&d) == claw || is_cograph(&d) == p4 {
            recognizer_bad.push(label.clone());
        }
        graphs_checked += 1;
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut solver_bad = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=30);
        let p = rng.random_range(0.1..0.9);
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(a, b);
                }
            }
        }
        let omega = clique_number(&g, u64::MAX).unwrap().size();
        let via_complement = independence_number(&g.complement(), u64::MAX).unwrap().size();
        if omega != via_complement {
            solver_bad += 1;
        }
    }
    outcome(
        lattice_bad.is_empty() && recognizer_bad.is_empty() && solver_bad == 0 && lattice_checked > 0,
        format!(
            "lattices {lattice_checked} checked (mismatch {lattice_bad:?}), recognizers {graphs_checked} graphs (mismatch {recognizer_bad:?}), clique vs complement independence 200 graphs ({solver_bad} mismatches)"
        ),
    )
}

fn criterion_11() -> Outcome {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_diffgraph"))
            .args(["verify", "--tier", "fast", "--threads", threads])
            .output()
            .unwrap()
    };
    let one = run("1");
    let eight = run("8");
    let same = one.stdout == eight.stdout && !one.stdout.is_empty();
    outcome(
        same && one.status.success() && eight.status.success(),
        format!(
            "{} bytes each, identical: {same}, exit codes {:?} and {:?}",
            one.stdout.len(),
            one.status.code(),
            eight.status.code()
        ),
    )
}

fn main() {
    // `cargo test` passes harness flags such as --nocapture or a filter; the
    // run ignores them, except for `--list`, which should not do any work.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let corpus = Corpus {
        manifest: Manifest::builtin(),
    };
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion_1(&corpus))),
        (2, Box::new(|| criterion_2(&corpus))),
        (3, Box::new(|| criterion_3(&corpus))),
        (4, Box::new(|| criterion_4(&corpus))),
        (5, Box::new(|| criterion_5(&corpus))),
        (6, Box::new(|| criterion_6(&corpus))),
        (7, Box::new(|| criterion_7(&corpus))),
        (8, Box::new(|| criterion_8(&corpus))),
        (9, Box::new(criterion_9)),
        (10, Box::new(|| criterion_10(&corpus))),
        (11, Box::new(criterion_11)),
    ];
    let mut failed = Vec::new();
    for (n, check) in &criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        println!(
            "criterion {n:2}: {} | {}",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail
        );
        if !result.pass {
            failed.push(*n);
        }
    }
    let expected: Vec<usize> = EXPECTED_FAILURES.to_vec();
    println!("failing criteria: {failed:?} (expected {expected:?})");
    if failed != expected {
        std::process::exit(1);
    }
}
