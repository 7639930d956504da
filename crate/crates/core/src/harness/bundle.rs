use std::sync::Arc;

use serde::Serialize;

use super::{HarnessError, Tier};
use crate::analytics::{
    clique_number, components, girth, independence_number, induced_four_cycle, is_bipartite,
    is_clawfree, is_cograph, is_cycle, triangle_count, universal_vertices, AnalyticsError,
    Budgets, Girth, Graph,
};
use crate::classify::{classify, GroupClassification};
use crate::graphs::{build_all, GraphSet};
use crate::lattice::{all_subgroups, LatticeError, SubgroupId, SubgroupLattice};
use crate::perm::{realize, ActionRegistry, FiniteGroup, GroupSpec, DEFAULT_ORDER_CAP};

/// Where subgroup lattices come from; the command-line shell plugs in a cache.
pub trait LatticeSource: Sync {
    fn lattice(&self, group: Arc<FiniteGroup>) -> Result<SubgroupLattice, LatticeError>;
}

/// Enumerates every lattice from scratch.
pub struct Compute;

impl LatticeSource for Compute {
    fn lattice(&self, group: Arc<FiniteGroup>) -> Result<SubgroupLattice, LatticeError> {
        all_subgroups(group)
    }
}

/// Outcome of a budgeted exact solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exact(usize),
    /// The budget ran out; the true value is at least this.
    AtLeast(usize),
}

impl Bound {
    fn from_result(r: Result<usize, AnalyticsError>) -> Bound {
        match r {
            Ok(v) => Bound::Exact(v),
            Err(AnalyticsError::BudgetExhausted { lower_bound, .. }) => Bound::AtLeast(lower_bound),
            Err(AnalyticsError::TooLarge { .. }) => Bound::AtLeast(0),
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            Bound::Exact(v) => Some(v),
            Bound::AtLeast(_) => None,
        }
    }

    /// `Some(value <= t)` when decidable from what is known.
    pub fn at_most(self, t: usize) -> Option<bool> {
        match self {
            Bound::Exact(v) => Some(v <= t),
            Bound::AtLeast(v) if v > t => Some(false),
            Bound::AtLeast(_) => None,
        }
    }
}

/// Invariants of the difference graph used by the theorem checks.
#[derive(Clone, Debug, Serialize)]
pub struct DifferenceFacts {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub triangles: usize,
    pub bipartite: bool,
    pub girth: Girth,
    pub clawfree: bool,
    pub cograph: bool,
    pub universal: Vec<SubgroupId>,
    pub cycle_length: Option<usize>,
    pub induced_c4: Option<[SubgroupId; 4]>,
    pub omega: Bound,
    pub alpha: Bound,
}

/// Invariants of the reduced graph `D*`.
#[derive(Clone, Debug, Serialize)]
pub struct StarFacts {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub universal: Vec<SubgroupId>,
    pub cycle_length: Option<usize>,
    pub complete: bool,
}

/// Everything the checks need about one group, computed once.
#[derive(Clone, Debug)]
pub struct GroupBundle {
    pub label: String,
    pub spec: GroupSpec,
    pub tier: Tier,
    pub lattice: Arc<SubgroupLattice>,
    pub graphs: GraphSet,
    pub classification: GroupClassification,
    pub d: DifferenceFacts,
    pub dstar: StarFacts,
    /// Pairs `(N, K)` with `G = N ⋊ K` read off the construction.
    pub decompositions: Vec<(SubgroupId, SubgroupId)>,
}

fn difference_facts(g: &Graph, ids: &[SubgroupId], budgets: Budgets) -> DifferenceFacts {
    let to_ids = |vs: Vec<usize>| vs.into_iter().map(|v| ids[v]).collect::<Vec<_>>();
    DifferenceFacts {
        vertices: g.order(),
        edges: g.edge_count(),
        components: components(g).len(),
        triangles: triangle_count(g),
        bipartite: is_bipartite(g),
        girth: girth(g),
        clawfree: is_clawfree(g),
        cograph: is_cograph(g),
        universal: to_ids(universal_vertices(g)),
        cycle_length: is_cycle(g),
        induced_c4: induced_four_cycle(g).map(|c| c.map(|v| ids[v])),
        omega: Bound::from_result(clique_number(g, budgets.clique).map(|c| c.size())),
        alpha: Bound::from_result(independence_number(g, budgets.independence).map(|c| c.size())),
    }
}

fn star_facts(g: &Graph, ids: &[SubgroupId]) -> StarFacts {
    let n = g.order();
    StarFacts {
        vertices: n,
        edges: g.edge_count(),
        components: components(g).len(),
        universal: universal_vertices(g).into_iter().map(|v| ids[v]).collect(),
        cycle_length: is_cycle(g),
        complete: n >= 2 && g.edge_count() == n * (n - 1) / 2,
    }
}

/// Factor pairs visible in the expression: the two factors of a direct
/// product (both ways round) and the normal factor and complement of a
/// semidirect product.
fn decompositions(
    spec: &GroupSpec,
    actions: &ActionRegistry,
    lat: &SubgroupLattice,
) -> Vec<(SubgroupId, SubgroupId)> {
    let (first, direct) = match spec {
        GroupSpec::Direct(a, _) => (a, true),
        GroupSpec::Semidirect { normal, .. } => (normal, false),
        _ => return Vec::new(),
    };
    let Ok(first_group) = realize(first, actions, DEFAULT_ORDER_CAP) else {
        return Vec::new();
    };
    let g = lat.group();
    let gens = g.generator_indices();
    let split = first_group.generators().len();
    let n = lat.lookup(&g.closure(&gens[..split]));
    let k = lat.lookup(&g.closure(&gens[split..]));
    let (Some(n), Some(k)) = (n, k) else {
        return Vec::new();
    };
    let mut out = vec![(n, k)];
    if direct {
        out.push((k, n));
    }
    out.retain(|&(a, b)| a != lat.trivial() && b != lat.trivial());
    out
}

impl GroupBundle {
    pub fn build(
        label: &str,
        spec: &GroupSpec,
        actions: &ActionRegistry,
        budgets: Budgets,
        source: &dyn LatticeSource,
    ) -> Result<GroupBundle, HarnessError> {
        let group = realize(spec, actions, DEFAULT_ORDER_CAP).map_err(|e| HarnessError::Realize {
            label: label.to_string(),
            source: e,
        })?;
        GroupBundle::from_group(label, spec, group, actions, budgets, source)
    }

    /// Like [`GroupBundle::build`] for a group already realized from `spec`.
    pub fn from_group(
        label: &str,
        spec: &GroupSpec,
        group: FiniteGroup,
        actions: &ActionRegistry,
        budgets: Budgets,
        source: &dyn LatticeSource,
    ) -> Result<GroupBundle, HarnessError> {
        let tier = Tier::of_order(group.order() as u128);
        let lattice = source
            .lattice(Arc::new(group))
            .map_err(|e| HarnessError::Lattice {
                label: label.to_string(),
                source: e,
            })?;
        let classification = classify(&lattice).map_err(|e| HarnessError::Classify {
            label: label.to_string(),
            source: e,
        })?;
        let graphs = build_all(&lattice);
        let d = difference_facts(&graphs.difference.graph, &graphs.difference.vertices, budgets);
        let dstar = star_facts(&graphs.difference_star.graph, &graphs.difference_star.vertices);
        let decompositions = decompositions(spec, actions, &lattice);
        Ok(GroupBundle {
            label: label.to_string(),
            spec: spec.clone(),
            tier,
            lattice: Arc::new(lattice),
            graphs,
            classification,
            d,
            dstar,
            decompositions,
        })
    }

    pub fn order(&self) -> usize {
        self.lattice.group().order()
    }
}
