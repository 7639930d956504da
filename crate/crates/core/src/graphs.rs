//! Gamma, delta and difference graphs on the non-trivial proper subgroups.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::Graph;
use crate::bitset::Bitset;
use crate::lattice::{all_subgroups, LatticeError, SubgroupId, SubgroupLattice};
use crate::perm::{quotient_group, Elem, PermError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// `H ~ K` iff `HK = G`.
    Gamma,
    /// `H ~ K` iff `<H, K> = G`.
    Delta,
    /// Delta edges that are not gamma edges.
    Difference,
    /// The difference graph without its isolated vertices.
    DifferenceStar,
}

impl GraphKind {
    pub const ALL: [GraphKind; 4] = [
        GraphKind::Gamma,
        GraphKind::Delta,
        GraphKind::Difference,
        GraphKind::DifferenceStar,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            GraphKind::Gamma => "gamma",
            GraphKind::Delta => "delta",
            GraphKind::Difference => "d",
            GraphKind::DifferenceStar => "dstar",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "gamma" => GraphKind::Gamma,
            "delta" => GraphKind::Delta,
            "d" | "difference" => GraphKind::Difference,
            "dstar" | "difference_star" => GraphKind::DifferenceStar,
            _ => return Err(format!("unknown graph kind {s:?} (expected gamma, delta, d or dstar)")),
        })
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("subgroup {0} is not normal")]
    NotNormal(SubgroupId),
    #[error("subgroup {0} must be non-trivial and proper")]
    NotProperNontrivial(SubgroupId),
    #[error("subgroups {normal} and {complement} do not form a semidirect decomposition")]
    NotComplement {
        normal: SubgroupId,
        complement: SubgroupId,
    },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A graph whose vertices are subgroup ids of one lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGraph {
    pub kind: GraphKind,
    /// Subgroup ids in increasing order; vertex `i` of `graph` is `vertices[i]`.
    pub vertices: Vec<SubgroupId>,
    pub graph: Graph,
}

impl SubgroupGraph {
    pub fn position(&self, h: SubgroupId) -> Option<usize> {
        self.vertices.binary_search(&h).ok()
    }

    pub fn adjacent(&self, h: SubgroupId, k: SubgroupId) -> bool {
        match (self.position(h), self.position(k)) {
            (Some(a), Some(b)) => self.graph.has_edge(a, b),
            _ => false,
        }
    }

    /// Edges as pairs of subgroup ids, sorted.
    pub fn subgroup_edges(&self) -> Vec<(SubgroupId, SubgroupId)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(a, b)| (self.vertices[a], self.vertices[b]))
            .collect()
    }

    pub fn degree_of(&self, h: SubgroupId) -> Option<usize> {
        self.position(h).map(|i| self.graph.degree(i))
    }
}

/// All four graphs of one lattice, sharing one pass over the vertex pairs.
#[derive(Clone, Debug)]
pub struct GraphSet {
    pub gamma: SubgroupGraph,
    pub delta: SubgroupGraph,
    pub difference: SubgroupGraph,
    pub difference_star: SubgroupGraph,
}

impl GraphSet {
    pub fn get(&self, kind: GraphKind) -> &SubgroupGraph {
        match kind {
            GraphKind::Gamma => &self.gamma,
            GraphKind::Delta => &self.delta,
            GraphKind::Difference => &self.difference,
            GraphKind::DifferenceStar => &self.difference_star,
        }
    }
}

/// For each vertex, its delta neighbours and which of them are gamma neighbours.
fn pair_scan(lat: &SubgroupLattice) -> (Vec<SubgroupId>, Vec<(Vec<usize>, Vec<bool>)>) {
    let vertices: Vec<SubgroupId> = lat.proper_nontrivial().collect();
    let maximals = lat.maximal_subgroups();
    // <H, K> = G iff no maximal subgroup contains both.
    let above: Vec<Bitset> = vertices
        .iter()
        .map(|&h| {
            Bitset::from_indices(
                maximals.len(),
                maximals
                    .iter()
                    .enumerate()
                    .filter(|&(_, &m)| lat.contains(m, h))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    let n = lat.group().order();
    let rows = (0..vertices.len())
        .into_par_iter()
        .map(|a| {
            let mut delta = Vec::new();
            let mut gamma = Vec::new();
            for b in a + 1..vertices.len() {
                if !above[a].intersects(&above[b]) {
                    delta.push(b);
                    gamma.push(lat.product_size(vertices[a], vertices[b]) == n);
                }
            }
            (delta, gamma)
        })
        .collect();
    (vertices, rows)
}

pub fn build_all(lat: &SubgroupLattice) -> GraphSet {
    let (vertices, rows) = pair_scan(lat);
    let k = vertices.len();
    let mut gamma = Graph::new(k);
    let mut delta = Graph::new(k);
    let mut difference = Graph::new(k);
    for (a, (nbrs, is_gamma)) in rows.iter().enumerate() {
        for (&b, &g) in nbrs.iter().zip(is_gamma) {
            delta.add_edge(a, b);
            if g {
                gamma.add_edge(a, b);
            } else {
                difference.add_edge(a, b);
            }
        }
    }
    let make = |kind, graph| SubgroupGraph {
        kind,
        vertices: vertices.clone(),
        graph,
    };
    let difference = make(GraphKind::Difference, difference);
    let difference_star = star_reduction(&difference);
    GraphSet {
        gamma: make(GraphKind::Gamma, gamma),
        delta: make(GraphKind::Delta, delta),
        difference,
        difference_star,
    }
}

pub fn build_graph(lat: &SubgroupLattice, kind: GraphKind) -> SubgroupGraph {
    let set = build_all(lat);
    match kind {
        GraphKind::Gamma => set.gamma,
        GraphKind::Delta => set.delta,
        GraphKind::Difference => set.difference,
        GraphKind::DifferenceStar => set.difference_star,
    }
}

/// Drops isolated vertices. Applied to a difference graph this yields `D*`.
pub fn star_reduction(g: &SubgroupGraph) -> SubgroupGraph {
    let keep: Vec<usize> = (0..g.graph.order())
        .filter(|&v| g.graph.degree(v) > 0)
        .collect();
    SubgroupGraph {
        kind: match g.kind {
            GraphKind::Difference => GraphKind::DifferenceStar,
            other => other,
        },
        vertices: keep.iter().map(|&v| g.vertices[v]).collect(),
        graph: g.graph.induced(&keep),
    }
}

/// The permutation of local vertex indices induced by `H -> g H g^-1`.
pub fn conjugation_vertex_map(lat: &SubgroupLattice, g: &SubgroupGraph, elem: Elem) -> Vec<usize> {
    g.vertices
        .iter()
        .map(|&h| {
            g.position(lat.conjugate_by(elem, h))
                .expect("conjugation preserves the vertex set")
        })
        .collect()
}

/// A vertex injection from the difference graph of a smaller group into the
/// difference graph of `G`.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// Lattice of the smaller group (a quotient or a complement).
    pub source_lattice: Arc<SubgroupLattice>,
    pub source: SubgroupGraph,
    /// `image[i]` is the subgroup of `G` that source vertex `i` maps to.
    pub image: Vec<SubgroupId>,
}

impl Embedding {
    /// Checks that the map is injective and preserves and reflects adjacency
    /// in `target`. Returns an offending pair of source vertices otherwise.
    pub fn check_induced(&self, target: &SubgroupGraph) -> Result<(), (usize, usize)> {
        let k = self.image.len();
        for a in 0..k {
            for b in a + 1..k {
                if self.image[a] == self.image[b]
                    || self.source.graph.has_edge(a, b) != target.adjacent(self.image[a], self.image[b])
                {
                    return Err((a, b));
                }
            }
        }
        if self.image.iter().any(|&h| target.position(h).is_none()) {
            return Err((0, 0));
        }
        Ok(())
    }
}

/// Embeds `D(G/N)` into `D(G)` by sending `H/N` to `H`.
pub fn quotient_embedding(lat: &SubgroupLattice, n: SubgroupId) -> Result<Embedding, GraphError> {
    if n == lat.trivial() || n == lat.top() {
        return Err(GraphError::NotProperNontrivial(n));
    }
    if !lat.is_normal(n) {
        return Err(GraphError::NotNormal(n));
    }
    let g = lat.group();
    let q = quotient_group(g, &lat.subgroup(n).members)?;
    let projection: Vec<Elem> = (0..g.order() as Elem).map(|x| q.project(g, x)).collect();
    let source_lattice = Arc::new(all_subgroups(Arc::new(q.group))?);
    let source = build_graph(&source_lattice, GraphKind::Difference);
    let image = source
        .vertices
        .iter()
        .map(|&s| {
            let members = &source_lattice.subgroup(s).members;
            let preimage = Bitset::from_indices(
                g.order(),
                (0..g.order()).filter(|&x| members.contains(projection[x] as usize)),
            );
            lat.lookup(&preimage).expect("preimage of a subgroup is a subgroup")
        })
        .collect();
    Ok(Embedding {
        source_lattice,
        source,
        image,
    })
}

/// Embeds `D(K)` into `D(G)` by `K1 -> N K1`, where `G = N ⋊ K`.
pub fn semidirect_embedding(
    lat: &SubgroupLattice,
    normal: SubgroupId,
    complement: SubgroupId,
) -> Result<Embedding, GraphError> {
    let g = lat.group();
    let bad = GraphError::NotComplement { normal, complement };
    if !lat.is_normal(normal)
        || lat.intersection(normal, complement) != lat.trivial()
        || lat.product_size(normal, complement) != g.order()
    {
        return Err(bad);
    }
    let k_sub = lat.subgroup(complement);
    let k_group = g.subgroup_as_group(&k_sub.generators, format!("{} complement", g.spec_label()));
    let to_parent: Vec<usize> = k_group
        .elements()
        .iter()
        .map(|p| g.index_of(p).expect("complement elements lie in G") as usize)
        .collect();
    let source_lattice = Arc::new(all_subgroups(Arc::new(k_group))?);
    let source = build_graph(&source_lattice, GraphKind::Difference);
    let image = source
        .vertices
        .iter()
        .map(|&s| {
            let inside = Bitset::from_indices(
                g.order(),
                source_lattice.subgroup(s).members.iter().map(|x| to_parent[x]),
            );
            let k1 = lat.lookup(&inside).expect("subgroups of K are subgroups of G");
            lat.join(normal, k1)
        })
        .collect();
    Ok(Embedding {
        source_lattice,
        source,
        image,
    })
}
