//! Executable statements about difference graphs, each checked per group as a
//! material conditional.

use serde::Serialize;

use super::GroupBundle;
use crate::graphs::{conjugation_vertex_map, quotient_embedding, semidirect_embedding};
use crate::lattice::{SubgroupId, SubgroupLattice};

/// At most this many normal subgroups get a quotient-embedding check per group.
pub const QUOTIENT_CHECK_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Vacuous,
    Confirmed,
    Counterexample,
    Unverified,
}

impl Status {
    pub fn code(self) -> char {
        match self {
            Status::Vacuous => '.',
            Status::Confirmed => '+',
            Status::Counterexample => 'X',
            Status::Unverified => '?',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub status: Status,
    /// Subgroup ids (or element ids where noted) exhibiting a failure.
    pub witness: Vec<usize>,
    pub note: String,
}

impl Outcome {
    fn vacuous(note: impl Into<String>) -> Self {
        Outcome {
            status: Status::Vacuous,
            witness: Vec::new(),
            note: note.into(),
        }
    }

    fn confirmed() -> Self {
        Outcome {
            status: Status::Confirmed,
            witness: Vec::new(),
            note: String::new(),
        }
    }

    fn counterexample(witness: Vec<usize>, note: impl Into<String>) -> Self {
        debug_assert!(!witness.is_empty());
        Outcome {
            status: Status::Counterexample,
            witness,
            note: note.into(),
        }
    }

    fn unverified(note: impl Into<String>) -> Self {
        Outcome {
            status: Status::Unverified,
            witness: Vec::new(),
            note: note.into(),
        }
    }

    /// Confirmed when `holds`, else a counterexample carrying `witness`.
    fn verdict(holds: bool, witness: Vec<usize>, note: &str) -> Self {
        if holds {
            Outcome::confirmed()
        } else {
            Outcome::counterexample(witness, note)
        }
    }
}

pub struct TheoremCheck {
    pub id: &'static str,
    pub hypothesis: &'static str,
    pub conclusion: &'static str,
    pub vacuity: &'static str,
    pub check: fn(&GroupBundle) -> Outcome,
}

#[derive(Serialize)]
pub struct CheckDescription {
    pub id: &'static str,
    pub hypothesis: &'static str,
    pub conclusion: &'static str,
    pub vacuity: &'static str,
}

impl TheoremCheck {
    pub fn describe(&self) -> CheckDescription {
        CheckDescription {
            id: self.id,
            hypothesis: self.hypothesis,
            conclusion: self.conclusion,
            vacuity: self.vacuity,
        }
    }
}

fn no_edges(b: &GroupBundle) -> Option<Outcome> {
    (b.d.edges == 0).then(|| Outcome::vacuous("D(G) has no edges"))
}

fn normal_isolated(b: &GroupBundle) -> Outcome {
    let lat = &b.lattice;
    let d = &b.graphs.difference;
    let normals: Vec<SubgroupId> = lat.proper_nontrivial().filter(|&h| lat.is_normal(h)).collect();
    if normals.is_empty() {
        return Outcome::vacuous("no non-trivial proper normal subgroup");
    }
    for n in normals {
        if let Some(deg) = d.degree_of(n) {
            if deg > 0 {
                let i = d.position(n).unwrap();
                let nb = d.graph.neighbors(i).first().unwrap();
                return Outcome::counterexample(vec![n, d.vertices[nb]], "normal subgroup has a neighbour");
            }
        }
    }
    Outcome::confirmed()
}

fn maximal_adjacent_to_conjugates(b: &GroupBundle) -> Outcome {
    let lat = &b.lattice;
    let d = &b.graphs.difference;
    let targets: Vec<SubgroupId> = lat
        .maximal_subgroups()
        .into_iter()
        .filter(|&m| !lat.is_normal(m))
        .collect();
    if targets.is_empty() {
        return Outcome::vacuous("every maximal subgroup is normal");
    }
    for m in targets {
        for c in lat.conjugates(m) {
            if c != m && !d.adjacent(m, c) {
                return Outcome::counterexample(vec![m, c], "maximal subgroup not adjacent to a conjugate");
            }
        }
    }
    Outcome::confirmed()
}

fn conjugation_automorphism(b: &GroupBundle) -> Outcome {
    if let Some(v) = no_edges(b) {
        return v;
    }
    let lat = &b.lattice;
    for kind in crate::graphs::GraphKind::ALL {
        let g = b.graphs.get(kind);
        for x in lat.group().generator_indices() {
            let perm = conjugation_vertex_map(lat, g, x);
            if let Some((u, v)) = g
                .graph
                .edges()
                .into_iter()
                .find(|&(u, v)| !g.graph.has_edge(perm[u], perm[v]))
            {
                return Outcome::counterexample(
                    vec![g.vertices[u], g.vertices[v], x as usize],
                    format!("conjugation by element {x} breaks an edge of {kind}"),
                );
            }
        }
    }
    Outcome::confirmed()
}

fn no_leaves(b: &GroupBundle) -> Outcome {
    if let Some(v) = no_edges(b) {
        return v;
    }
    let d = &b.graphs.difference;
    match (0..d.graph.order()).find(|&v| d.graph.degree(v) == 1) {
        Some(v) => Outcome::counterexample(vec![d.vertices[v]], "vertex of degree 1"),
        None => Outcome::confirmed(),
    }
}

fn degree_not_unique(b: &GroupBundle) -> Outcome {
    if let Some(v) = no_edges(b) {
        return v;
    }
    let g = &b.graphs.difference.graph;
    let degs: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    for (v, &d) in degs.iter().enumerate() {
        if d > 0 && degs.iter().filter(|&&e| e == d).count() < 2 {
            return Outcome::counterexample(vec![b.graphs.difference.vertices[v]], "unique degree");
        }
    }
    Outcome::confirmed()
}

fn semidirect_embeds(b: &GroupBundle) -> Outcome {
    if b.decompositions.is_empty() {
        return Outcome::vacuous("no product decomposition in the construction");
    }
    let mut any = false;
    for &(n, k) in &b.decompositions {
        let e = match semidirect_embedding(&b.lattice, n, k) {
            Ok(e) => e,
            Err(err) => return Outcome::counterexample(vec![n, k], err.to_string()),
        };
        if e.image.is_empty() {
            continue;
        }
        any = true;
        if let Err((x, y)) = e.check_induced(&b.graphs.difference) {
            return Outcome::counterexample(
                vec![n, k, e.image[x], e.image[y]],
                "complement graph does not embed as an induced subgraph",
            );
        }
    }
    if any {
        Outcome::confirmed()
    } else {
        Outcome::vacuous("complements have no non-trivial proper subgroups")
    }
}

fn quotient_embeds(b: &GroupBundle) -> Outcome {
    let lat = &b.lattice;
    let normals: Vec<SubgroupId> = lat.proper_nontrivial()
        .filter(|&h| lat.is_normal(h))
        .take(QUOTIENT_CHECK_CAP)
        .collect();
    let mut any = false;
    for n in normals {
        let e = match quotient_embedding(lat, n) {
            Ok(e) => e,
            Err(err) => return Outcome::counterexample(vec![n], err.to_string()),
        };
        if e.image.is_empty() {
            continue;
        }
        any = true;
        if let Err((x, y)) = e.check_induced(&b.graphs.difference) {
            return Outcome::counterexample(
                vec![n, e.image[x], e.image[y]],
                "quotient graph does not embed as an induced subgraph",
            );
        }
    }
    if any {
        Outcome::confirmed()
    } else {
        Outcome::vacuous("no quotient by a normal subgroup has vertices")
    }
}

fn edge_minima(b: &GroupBundle) -> Outcome {
    if let Some(v) = no_edges(b) {
        return v;
    }
    let lat = &b.lattice;
    for (h, k) in b.graphs.difference.subgroup_edges() {
        let need = if lat.are_conjugate(h, k) { 3 } else { 4 };
        if b.d.edges < need {
            return Outcome::counterexample(vec![h, k], format!("only {} edges", b.d.edges));
        }
    }
    Outcome::confirmed()
}

fn nilpotent_no_conjugate_edges(b: &GroupBundle) -> Outcome {
    if !b.classification.nilpotent.value {
        return Outcome::vacuous("not nilpotent");
    }
    match b
        .graphs
        .difference
        .subgroup_edges()
        .into_iter()
        .find(|&(h, k)| b.lattice.are_conjugate(h, k))
    {
        Some((h, k)) => Outcome::counterexample(vec![h, k], "conjugate subgroups adjacent"),
        None => Outcome::confirmed(),
    }
}

fn nilpotent_induced_c4(b: &GroupBundle) -> Outcome {
    if !b.classification.nilpotent.value {
        return Outcome::vacuous("not nilpotent");
    }
    if let Some(v) = no_edges(b) {
        return v;
    }
    let witness = b.graphs.difference.subgroup_edges()[0];
    Outcome::verdict(b.d.induced_c4.is_some(), vec![witness.0, witness.1], "no induced 4-cycle")
}

fn connected_iff_simple(b: &GroupBundle) -> Outcome {
    if b.d.vertices < 2 {
        return Outcome::vacuous("fewer than two vertices");
    }
    let connected = b.d.components == 1;
    let simple = b.classification.simple.value;
    let witness = match &b.classification.simple.witness {
        crate::classify::Witness::NormalSubgroup { subgroup } => vec![*subgroup],
        _ => vec![b.lattice.top()],
    };
    Outcome::verdict(connected == simple, witness, "connectivity and simplicity disagree")
}

fn nilpotent_witness(b: &GroupBundle) -> Vec<usize> {
    match &b.classification.nilpotent.witness {
        crate::classify::Witness::NonNormalSylow { subgroup, .. }
        | crate::classify::Witness::NonNormal { subgroup } => vec![*subgroup],
        _ => vec![b.lattice.top()],
    }
}

fn flag_witness(flag: &crate::classify::Flag, top: SubgroupId) -> Vec<usize> {
    use crate::classify::Witness;
    match &flag.witness {
        Witness::NonNormal { subgroup }
        | Witness::NonNormalSylow { subgroup, .. }
        | Witness::NonPrimeIndexMaximal { subgroup, .. }
        | Witness::NormalSubgroup { subgroup } => vec![*subgroup],
        _ => vec![top],
    }
}

fn triangle_free_nilpotent(b: &GroupBundle) -> Outcome {
    if b.d.triangles > 0 && !b.d.bipartite {
        return Outcome::vacuous("D(G) has a triangle");
    }
    Outcome::verdict(b.classification.nilpotent.value, nilpotent_witness(b), "not nilpotent")
}

fn edgeless_nilpotent(b: &GroupBundle) -> Outcome {
    if b.d.edges > 0 {
        return Outcome::vacuous("D(G) has edges");
    }
    Outcome::verdict(b.classification.nilpotent.value, nilpotent_witness(b), "not nilpotent")
}

fn girth_three_or_four(b: &GroupBundle) -> Outcome {
    if let Some(v) = no_edges(b) {
        return v;
    }
    let ok = matches!(b.d.girth.finite(), Some(3 | 4));
    Outcome::verdict(ok, vec![b.lattice.top()], "girth outside {3, 4}")
}

fn not_a_cycle(b: &GroupBundle) -> Outcome {
    if b.d.vertices < 3 {
        return Outcome::vacuous("fewer than three vertices");
    }
    Outcome::verdict(b.d.cycle_length.is_none(), b.graphs.difference.vertices.clone(), "D(G) is a cycle")
}

fn no_universal(b: &GroupBundle) -> Outcome {
    if b.d.vertices < 2 {
        return Outcome::vacuous("fewer than two vertices");
    }
    Outcome::verdict(b.d.universal.is_empty(), b.d.universal.clone(), "universal vertex")
}

fn is_elementary_abelian(lat: &SubgroupLattice, h: SubgroupId, q: u64) -> bool {
    let g = lat.group();
    let members = lat.subgroup(h).member_list();
    members.iter().all(|&x| x == 0 || g.element_order(x) as u64 == q)
        && members
            .iter()
            .all(|&x| members.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// `(p, q, P, Q)` with `|G| = p^a q^b`, a normal elementary abelian Sylow
/// q-subgroup `Q` and a cyclic maximal Sylow p-subgroup `P`.
fn pq_shape(lat: &SubgroupLattice, q_cyclic_prime_order: bool) -> Option<(u64, u64, SubgroupId, SubgroupId)> {
    let primes = lat.primes();
    if primes.len() != 2 {
        return None;
    }
    for (p, q) in [(primes[0], primes[1]), (primes[1], primes[0])] {
        let qs = lat.sylow_subgroups(q).ok()?;
        let ps = lat.sylow_subgroups(p).ok()?;
        if qs.len() != 1 {
            continue;
        }
        let qsub = qs[0];
        if !is_elementary_abelian(lat, qsub, q) {
            continue;
        }
        if q_cyclic_prime_order && lat.order(qsub) as u64 != q {
            continue;
        }
        let psub = ps[0];
        if lat.is_cyclic_subgroup(psub) && lat.is_maximal(psub) {
            return Some((p, q, psub, qsub));
        }
    }
    None
}

fn universal_dstar_shape(b: &GroupBundle) -> Outcome {
    if b.dstar.universal.is_empty() {
        return Outcome::vacuous("D*(G) has no universal vertex");
    }
    Outcome::verdict(
        pq_shape(&b.lattice, false).is_some(),
        b.dstar.universal.clone(),
        "group is not of shape Z_q^b ⋊ Z_{p^a}",
    )
}

fn complete_dstar_shape(b: &GroupBundle) -> Outcome {
    if !b.dstar.complete {
        return Outcome::vacuous("D*(G) is not complete");
    }
    Outcome::verdict(
        pq_shape(&b.lattice, true).is_some(),
        b.graphs.difference_star.vertices.clone(),
        "group is not of shape Z_q ⋊ Z_{p^a}",
    )
}

fn complete_dstar_count(b: &GroupBundle) -> Outcome {
    if !b.dstar.complete {
        return Outcome::vacuous("D*(G) is not complete");
    }
    let witness = b.graphs.difference_star.vertices.clone();
    let Some((p, q, _, _)) = pq_shape(&b.lattice, true) else {
        return Outcome::counterexample(witness, "group is not of shape Z_q ⋊ Z_{p^a}");
    };
    let n_p = b.lattice.sylow_subgroups(p).map(|s| s.len()).unwrap_or(0);
    Outcome::verdict(
        n_p == b.dstar.vertices && n_p as u64 == q,
        witness,
        &format!("n_p = {n_p}, |V(D*)| = {}, q = {q}", b.dstar.vertices),
    )
}

fn dstar_cycle_length(b: &GroupBundle) -> Outcome {
    match b.dstar.cycle_length {
        None => Outcome::vacuous("D*(G) is not a cycle"),
        Some(len) => Outcome::verdict(
            len == 3 || len == 4,
            b.graphs.difference_star.vertices.clone(),
            &format!("D*(G) is a {len}-cycle"),
        ),
    }
}

fn clawfree_supersolvable(b: &GroupBundle) -> Outcome {
    if !b.d.clawfree {
        return Outcome::vacuous("D(G) has a claw");
    }
    Outcome::verdict(
        b.classification.supersolvable.value,
        flag_witness(&b.classification.supersolvable, b.lattice.top()),
        "not supersolvable",
    )
}

fn cograph_solvable(b: &GroupBundle) -> Outcome {
    if !b.d.cograph {
        return Outcome::vacuous("D(G) has an induced P4");
    }
    Outcome::verdict(b.classification.solvable.value, vec![b.lattice.top()], "not solvable")
}

/// Shared shape of the independence and clique bounds.
fn bounded(
    b: &GroupBundle,
    value: super::Bound,
    what: &str,
    threshold: usize,
    need_edge: bool,
    conclusion: bool,
) -> Outcome {
    if need_edge {
        if let Some(v) = no_edges(b) {
            return v;
        }
    }
    match value.at_most(threshold) {
        None => Outcome::unverified(format!("{what} solver budget exhausted ({value:?})")),
        Some(false) => Outcome::vacuous(format!("{what} > {threshold}")),
        Some(true) => Outcome::verdict(conclusion, vec![b.lattice.top()], &format!("{what} <= {threshold}")),
    }
}

fn alpha_5(b: &GroupBundle) -> Outcome {
    bounded(b, b.d.alpha, "alpha", 5, true, !b.classification.nilpotent.value)
}

fn alpha_13(b: &GroupBundle) -> Outcome {
    let c = &b.classification;
    bounded(b, b.d.alpha, "alpha", 13, true, c.p_group.value || !c.nilpotent.value)
}

fn alpha_3(b: &GroupBundle) -> Outcome {
    bounded(b, b.d.alpha, "alpha", 3, true, b.classification.supersolvable.value)
}

fn alpha_14(b: &GroupBundle) -> Outcome {
    bounded(b, b.d.alpha, "alpha", 14, true, b.classification.solvable.value)
}

fn omega_4(b: &GroupBundle) -> Outcome {
    bounded(b, b.d.omega, "omega", 4, false, b.classification.supersolvable.value)
}

fn omega_7(b: &GroupBundle) -> Outcome {
    bounded(b, b.d.omega, "omega", 7, false, b.classification.solvable.value)
}

pub fn registry() -> Vec<TheoremCheck> {
    vec![
        TheoremCheck {
            id: "T-2.2a",
            hypothesis: "N is a non-trivial proper normal subgroup",
            conclusion: "N is isolated in D(G)",
            vacuity: "G has no non-trivial proper normal subgroup",
            check: normal_isolated,
        },
        TheoremCheck {
            id: "T-2.2b",
            hypothesis: "M is a maximal subgroup that is not normal",
            conclusion: "M is adjacent in D(G) to each of its other conjugates",
            vacuity: "every maximal subgroup is normal",
            check: maximal_adjacent_to_conjugates,
        },
        TheoremCheck {
            id: "T-2.2c",
            hypothesis: "H ~ K and g in G",
            conclusion: "gHg^-1 ~ gKg^-1; conjugation is an automorphism of gamma, delta, D and D*",
            vacuity: "D(G) has no edges",
            check: conjugation_automorphism,
        },
        TheoremCheck {
            id: "T-2.2d",
            hypothesis: "D(G) has an edge",
            conclusion: "no vertex of D(G) has degree 1",
            vacuity: "D(G) has no edges",
            check: no_leaves,
        },
        TheoremCheck {
            id: "T-2.2e",
            hypothesis: "v is a non-isolated vertex of D(G)",
            conclusion: "some other vertex has the same degree as v",
            vacuity: "D(G) has no edges",
            check: degree_not_unique,
        },
        TheoremCheck {
            id: "T-2.2f",
            hypothesis: "G = N ⋊ K as constructed",
            conclusion: "K1 -> N K1 embeds D(K) into D(G) as an induced subgraph",
            vacuity: "no product decomposition, or D(K) has no vertices",
            check: semidirect_embeds,
        },
        TheoremCheck {
            id: "T-2.2g",
            hypothesis: "N is a non-trivial proper normal subgroup",
            conclusion: "H/N -> H embeds D(G/N) into D(G) as an induced subgraph",
            vacuity: "no checked quotient has vertices",
            check: quotient_embeds,
        },
        TheoremCheck {
            id: "T-2.3",
            hypothesis: "H ~ K in D(G)",
            conclusion: "D(G) has at least 3 edges, and at least 4 when H and K are not conjugate",
            vacuity: "D(G) has no edges",
            check: edge_minima,
        },
        TheoremCheck {
            id: "T-2.4a",
            hypothesis: "G is nilpotent",
            conclusion: "no two conjugate subgroups are adjacent in D(G)",
            vacuity: "G is not nilpotent",
            check: nilpotent_no_conjugate_edges,
        },
        TheoremCheck {
            id: "T-2.4b",
            hypothesis: "G is nilpotent and D(G) has an edge",
            conclusion: "D(G) has an induced 4-cycle",
            vacuity: "G is not nilpotent, or D(G) has no edges",
            check: nilpotent_induced_c4,
        },
        TheoremCheck {
            id: "T-2.5",
            hypothesis: "D(G) has at least two vertices",
            conclusion: "D(G) is connected if and only if G is simple",
            vacuity: "D(G) has fewer than two vertices",
            check: connected_iff_simple,
        },
        TheoremCheck {
            id: "T-2.6",
            hypothesis: "D(G) is triangle-free or bipartite",
            conclusion: "G is nilpotent",
            vacuity: "D(G) has a triangle",
            check: triangle_free_nilpotent,
        },
        TheoremCheck {
            id: "T-2.7",
            hypothesis: "D(G) is edgeless",
            conclusion: "G is nilpotent",
            vacuity: "D(G) has edges",
            check: edgeless_nilpotent,
        },
        TheoremCheck {
            id: "T-2.8",
            hypothesis: "D(G) has at least one edge",
            conclusion: "the girth of D(G) is 3 or 4",
            vacuity: "D(G) has no edges",
            check: girth_three_or_four,
        },
        TheoremCheck {
            id: "T-2.9",
            hypothesis: "D(G) has at least three vertices",
            conclusion: "D(G) is not a cycle",
            vacuity: "D(G) has fewer than three vertices",
            check: not_a_cycle,
        },
        TheoremCheck {
            id: "T-2.10",
            hypothesis: "D(G) has at least two vertices",
            conclusion: "D(G) has no universal vertex",
            vacuity: "D(G) has fewer than two vertices",
            check: no_universal,
        },
        TheoremCheck {
            id: "T-3.1",
            hypothesis: "D*(G) has a universal vertex",
            conclusion: "|G| = p^a q^b with a normal elementary abelian Sylow q-subgroup and a cyclic maximal Sylow p-subgroup",
            vacuity: "D*(G) has no universal vertex",
            check: universal_dstar_shape,
        },
        TheoremCheck {
            id: "T-3.2",
            hypothesis: "D*(G) is complete",
            conclusion: "G has the shape Z_q ⋊ Z_{p^a}: normal Sylow q-subgroup of order q, cyclic maximal Sylow p-subgroup",
            vacuity: "D*(G) is not complete",
            check: complete_dstar_shape,
        },
        TheoremCheck {
            id: "T-3.3",
            hypothesis: "D*(G) is complete",
            conclusion: "|V(D*(G))| = n_p = q",
            vacuity: "D*(G) is not complete",
            check: complete_dstar_count,
        },
        TheoremCheck {
            id: "T-3.4",
            hypothesis: "D*(G) is a cycle",
            conclusion: "its length is 3 or 4",
            vacuity: "D*(G) is not a cycle",
            check: dstar_cycle_length,
        },
        TheoremCheck {
            id: "T-4.1",
            hypothesis: "D(G) is claw-free",
            conclusion: "G is supersolvable",
            vacuity: "D(G) has an induced claw",
            check: clawfree_supersolvable,
        },
        TheoremCheck {
            id: "T-4.2",
            hypothesis: "D(G) is a cograph",
            conclusion: "G is solvable",
            vacuity: "D(G) has an induced P4",
            check: cograph_solvable,
        },
        TheoremCheck {
            id: "T-5.1",
            hypothesis: "D(G) has an edge and alpha(D(G)) <= 5",
            conclusion: "G is not nilpotent",
            vacuity: "D(G) has no edges, or alpha > 5",
            check: alpha_5,
        },
        TheoremCheck {
            id: "T-5.2",
            hypothesis: "D(G) has an edge and alpha(D(G)) <= 13",
            conclusion: "G is a p-group or G is not nilpotent",
            vacuity: "D(G) has no edges, or alpha > 13",
            check: alpha_13,
        },
        TheoremCheck {
            id: "T-5.3",
            hypothesis: "D(G) has an edge and alpha(D(G)) <= 3",
            conclusion: "G is supersolvable",
            vacuity: "D(G) has no edges, or alpha > 3",
            check: alpha_3,
        },
        TheoremCheck {
            id: "T-5.4",
            hypothesis: "D(G) has an edge and alpha(D(G)) <= 14",
            conclusion: "G is solvable",
            vacuity: "D(G) has no edges, or alpha > 14",
            check: alpha_14,
        },
        TheoremCheck {
            id: "T-6.1",
            hypothesis: "omega(D(G)) <= 4",
            conclusion: "G is supersolvable",
            vacuity: "omega > 4",
            check: omega_4,
        },
        TheoremCheck {
            id: "T-6.2",
            hypothesis: "omega(D(G)) <= 7",
            conclusion: "G is solvable",
            vacuity: "omega > 7",
            check: omega_7,
        },
    ]
}

/// Registry entries selected by id; unknown ids are returned as errors.
pub fn select(filter: &[String]) -> Result<Vec<TheoremCheck>, String> {
    let all = registry();
    if filter.is_empty() {
        return Ok(all);
    }
    for id in filter {
        if !all.iter().any(|c| c.id == id) {
            return Err(format!("unknown theorem id {id:?}"));
        }
    }
    Ok(all.into_iter().filter(|c| filter.iter().any(|f| f == c.id)).collect())
}
