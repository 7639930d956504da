//! Scans the corpus for counterexamples to the open problems.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::GroupBundle;
use crate::analytics::{degree_sequence, find_odd_hole_or_antihole, graphs_isomorphic, Girth};
use crate::perm::{Elem, FiniteGroup};

/// Longest hole or antihole the perfectness scan looks for.
pub const HOLE_SCAN_MAX_LENGTH: usize = 11;
pub const HOLE_SCAN_BUDGET: u64 = 20_000_000;
pub const ISO_BUDGET: u64 = 5_000_000;
/// Candidate generator-image tuples tried by the group isomorphism search.
pub const GROUP_ISO_BUDGET: u64 = 2_000_000;
/// Text reports list supporting instances only up to this many.
const TEXT_SUPPORT_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HuntId {
    #[serde(rename = "H-1")]
    H1,
    #[serde(rename = "H-2")]
    H2,
    #[serde(rename = "H-3")]
    H3,
    #[serde(rename = "H-4")]
    H4,
    #[serde(rename = "H-5")]
    H5,
}

impl HuntId {
    pub const ALL: [HuntId; 5] = [HuntId::H1, HuntId::H2, HuntId::H3, HuntId::H4, HuntId::H5];

    pub fn statement(self) -> &'static str {
        match self {
            HuntId::H1 => "if G is non-nilpotent, then D*(G) is connected",
            HuntId::H2 => "if G is a p-group for an odd prime p and D(G) has an edge, then D(G) has girth 3",
            HuntId::H3 => {
                "(a) D(G) ≅ D(H) and both connected implies G ≅ H; (b) D(G) ≅ D(H) and G nilpotent implies H nilpotent"
            }
            HuntId::H4 => "if D(G) is perfect, then G is solvable",
            HuntId::H5 => "omega(D(G)) <= 15 implies G is solvable",
        }
    }
}

impl fmt::Display for HuntId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = HuntId::ALL.iter().position(|h| h == self).unwrap() + 1;
        write!(f, "H-{n}")
    }
}

impl std::str::FromStr for HuntId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HuntId::ALL
            .into_iter()
            .find(|h| h.to_string().eq_ignore_ascii_case(s) || h.to_string().replace('-', "") == s.to_uppercase())
            .ok_or_else(|| format!("unknown hunt id {s:?} (expected H-1 to H-5)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingStatus {
    Supports,
    Counterexample,
    /// Hypothesis fails; reported only when the instance is notable.
    OutsideHypothesis,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub groups: Vec<String>,
    pub status: FindingStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HuntReport {
    pub hunt: HuntId,
    pub statement: &'static str,
    /// Set when the test used is weaker than the statement.
    pub qualifier: Option<&'static str>,
    pub coverage: Option<String>,
    pub examined: usize,
    pub outside_hypothesis: usize,
    pub findings: Vec<Finding>,
}

impl HuntReport {
    pub fn count(&self, s: FindingStatus) -> usize {
        self.findings.iter().filter(|f| f.status == s).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.hunt, self.statement);
        if let Some(q) = self.qualifier {
            out += &format!("  note: {q}\n");
        }
        if let Some(c) = &self.coverage {
            out += &format!("  coverage: {c}\n");
        }
        out += &format!(
            "  examined {}, supporting {}, counterexamples {}, unverified {}, outside hypothesis {}\n",
            self.examined,
            self.count(FindingStatus::Supports),
            self.count(FindingStatus::Counterexample),
            self.count(FindingStatus::Unverified),
            self.outside_hypothesis,
        );
        let supports = self.count(FindingStatus::Supports);
        let list_supports = supports <= TEXT_SUPPORT_LIMIT;
        for f in &self.findings {
            if f.status == FindingStatus::Supports && !list_supports {
                continue;
            }
            let tag = match f.status {
                FindingStatus::Supports => "supports",
                FindingStatus::Counterexample => "COUNTEREXAMPLE",
                FindingStatus::OutsideHypothesis => "outside",
                FindingStatus::Unverified => "unverified",
            };
            out += &format!("  {tag:14} {}: {}\n", f.groups.join(" / "), f.detail);
        }
        if !list_supports {
            out += &format!("  ({supports} supporting instances listed in the JSON report)\n");
        }
        out
    }
}

fn finding(b: &GroupBundle, status: FindingStatus, detail: String) -> Finding {
    Finding {
        groups: vec![b.label.clone()],
        status,
        detail,
    }
}

fn report(hunt: HuntId, examined: usize, all: Vec<Option<Finding>>) -> HuntReport {
    let outside = all.iter().filter(|f| f.is_none()).count();
    let mut findings: Vec<Finding> = all.into_iter().flatten().collect();
    let notable_outside = findings
        .iter()
        .filter(|f| f.status == FindingStatus::OutsideHypothesis)
        .count();
    findings.sort_by_key(|f| f.status != FindingStatus::Counterexample);
    HuntReport {
        hunt,
        statement: hunt.statement(),
        qualifier: None,
        coverage: None,
        examined,
        outside_hypothesis: outside + notable_outside,
        findings,
    }
}

fn h1(bundles: &[GroupBundle]) -> HuntReport {
    let all = bundles
        .iter()
        .map(|b| {
            let connected = b.dstar.components <= 1;
            if b.classification.nilpotent.value {
                return (!connected).then(|| {
                    finding(
                        b,
                        FindingStatus::OutsideHypothesis,
                        format!("nilpotent, D* has {} components", b.dstar.components),
                    )
                });
            }
            let status = if connected {
                FindingStatus::Supports
            } else {
                FindingStatus::Counterexample
            };
            Some(finding(
                b,
                status,
                format!("non-nilpotent, D* has {} vertices in {} component(s)", b.dstar.vertices, b.dstar.components),
            ))
        })
        .collect();
    report(HuntId::H1, bundles.len(), all)
}

fn girth_text(g: Girth) -> String {
    g.finite().map_or("infinite".to_string(), |n| n.to_string())
}

fn h2(bundles: &[GroupBundle]) -> HuntReport {
    let all = bundles
        .iter()
        .map(|b| {
            let p = b.classification.prime()?;
            if p == 2 || b.d.edges == 0 {
                return None;
            }
            let status = if b.d.girth == Girth::Finite(3) {
                FindingStatus::Supports
            } else {
                FindingStatus::Counterexample
            };
            Some(finding(b, status, format!("{p}-group, {} edges, girth {}", b.d.edges, girth_text(b.d.girth))))
        })
        .collect();
    report(HuntId::H2, bundles.len(), all)
}

/// Whether there is an isomorphism `g -> h`, by searching images of the
/// generators of `g`. `None` when the search budget runs out.
pub fn groups_isomorphic(g: &FiniteGroup, h: &FiniteGroup, budget: u64) -> Option<bool> {
    if g.order() != h.order() {
        return Some(false);
    }
    let mut g_orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x as Elem)).collect();
    let mut h_orders: Vec<usize> = (0..h.order()).map(|x| h.element_order(x as Elem)).collect();
    let gens = g.generator_indices();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| {
            (0..h.order() as Elem)
                .filter(|&y| h_orders[y as usize] == g_orders[x as usize])
                .collect()
        })
        .collect();
    g_orders.sort_unstable();
    h_orders.sort_unstable();
    if g_orders != h_orders {
        return Some(false);
    }
    let mut choice = vec![0usize; gens.len()];
    let mut tried = 0u64;
    if candidates.iter().any(|c| c.is_empty()) {
        return Some(false);
    }
    loop {
        tried += 1;
        if tried > budget {
            return None;
        }
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if extends_to_isomorphism(g, h, &gens, &images) {
            return Some(true);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Some(false);
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extends_to_isomorphism(g: &FiniteGroup, h: &FiniteGroup, gens: &[Elem], images: &[Elem]) -> bool {
    const UNSET: Elem = Elem::MAX;
    let mut map = vec![UNSET; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity() as usize] = h.identity();
    used[h.identity() as usize] = true;
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        let y = map[x as usize];
        for (&s, &t) in gens.iter().zip(images) {
            let xs = g.mul(x, s);
            let yt = h.mul(y, t);
            match map[xs as usize] {
                UNSET => {
                    if used[yt as usize] {
                        return false;
                    }
                    used[yt as usize] = true;
                    map[xs as usize] = yt;
                    queue.push(xs);
                }
                m if m != yt => return false,
                _ => {}
            }
        }
    }
    map.iter().all(|&m| m != UNSET)
}

/// Connected with at least two vertices; a single vertex does not count.
fn nontrivially_connected(b: &GroupBundle) -> bool {
    b.d.vertices >= 2 && b.d.components == 1
}

fn h3(bundles: &[GroupBundle]) -> HuntReport {
    let key = |b: &GroupBundle| (b.d.vertices, b.d.edges, degree_sequence(&b.graphs.difference.graph));
    let keys: Vec<_> = bundles.iter().map(key).collect();
    let pairs: Vec<(usize, usize)> = (0..bundles.len())
        .flat_map(|i| (i + 1..bundles.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| keys[i] == keys[j] && keys[i].0 > 0)
        .collect();
    let results: Vec<Option<Finding>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&bundles[i], &bundles[j]);
            let groups = vec![a.label.clone(), b.label.clone()];
            let iso = match graphs_isomorphic(&a.graphs.difference.graph, &b.graphs.difference.graph, ISO_BUDGET) {
                Ok(iso) => iso,
                Err(e) => {
                    return Some(Finding {
                        groups,
                        status: FindingStatus::Unverified,
                        detail: format!("graph isomorphism undecided: {e}"),
                    })
                }
            };
            if !iso {
                return None;
            }
            let connected = nontrivially_connected(a) && nontrivially_connected(b);
            let (na, nb) = (a.classification.nilpotent.value, b.classification.nilpotent.value);
            let mut detail = format!(
                "D(G) ≅ D(H): {} vertices, {} edges, {}",
                a.d.vertices,
                a.d.edges,
                if connected { "connected" } else { "not connected" }
            );
            let mut status = FindingStatus::Supports;
            if na != nb {
                status = FindingStatus::Counterexample;
                detail += "; nilpotency differs (b)";
            }
            if connected {
                match groups_isomorphic(a.lattice.group(), b.lattice.group(), GROUP_ISO_BUDGET) {
                    Some(true) => detail += "; groups isomorphic (a)",
                    Some(false) => {
                        status = FindingStatus::Counterexample;
                        detail += "; groups not isomorphic (a)";
                    }
                    None => {
                        if status != FindingStatus::Counterexample {
                            status = FindingStatus::Unverified;
                        }
                        detail += "; group isomorphism undecided (a)";
                    }
                }
            } else {
                detail += if na { "; both nilpotent" } else { "; neither nilpotent" };
            }
            Some(Finding { groups, status, detail })
        })
        .collect();
    let connected = bundles.iter().filter(|b| nontrivially_connected(b)).count();
    let mut r = report(HuntId::H3, pairs.len(), results);
    r.outside_hypothesis = 0;
    r.coverage = Some(format!(
        "{} of {} groups have connected D(G); part (a) can only be exercised by pairs among them, and {} candidate pairs share vertex count, edge count and degree sequence",
        connected,
        bundles.len(),
        pairs.len()
    ));
    r
}

fn h4(bundles: &[GroupBundle]) -> HuntReport {
    let all = bundles
        .par_iter()
        .map(|b| {
            if b.classification.solvable.value {
                return None;
            }
            let scan = find_odd_hole_or_antihole(&b.graphs.difference.graph, HOLE_SCAN_MAX_LENGTH, HOLE_SCAN_BUDGET);
            let ids = |vs: &[usize]| vs.iter().map(|&v| b.graphs.difference.vertices[v]).collect::<Vec<_>>();
            let (status, detail) = if let Some(h) = &scan.odd_hole {
                (FindingStatus::Supports, format!("odd hole of length {} on subgroups {:?}", h.len(), ids(h)))
            } else if let Some(h) = &scan.odd_antihole {
                (FindingStatus::Supports, format!("odd antihole of length {} on subgroups {:?}", h.len(), ids(h)))
            } else if scan.truncated {
                (FindingStatus::Unverified, format!("scan budget exhausted after {} nodes", scan.nodes))
            } else {
                (
                    FindingStatus::Counterexample,
                    format!("non-solvable and no odd hole or antihole up to length {HOLE_SCAN_MAX_LENGTH}"),
                )
            };
            Some(finding(b, status, detail))
        })
        .collect();
    let mut r = report(HuntId::H4, bundles.len(), all);
    r.qualifier = Some("bounded-check only: perfectness is approximated by an odd hole/antihole scan up to length 11");
    r
}

fn h5(bundles: &[GroupBundle]) -> HuntReport {
    let all = bundles
        .iter()
        .map(|b| {
            let small = b.d.omega.at_most(15);
            let solvable = b.classification.solvable.value;
            let (status, detail) = match (small, solvable) {
                (Some(false), _) => return None,
                (_, true) => (FindingStatus::Supports, format!("solvable, omega {:?}", b.d.omega)),
                (None, false) => (FindingStatus::Unverified, format!("non-solvable, omega {:?}", b.d.omega)),
                (Some(true), false) => {
                    (FindingStatus::Counterexample, format!("non-solvable with omega {:?}", b.d.omega))
                }
            };
            Some(finding(b, status, detail))
        })
        .collect();
    report(HuntId::H5, bundles.len(), all)
}

pub fn hunt(id: HuntId, bundles: &[GroupBundle]) -> HuntReport {
    match id {
        HuntId::H1 => h1(bundles),
        HuntId::H2 => h2(bundles),
        HuntId::H3 => h3(bundles),
        HuntId::H4 => h4(bundles),
        HuntId::H5 => h5(bundles),
    }
}
