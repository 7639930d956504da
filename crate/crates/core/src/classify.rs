//! Group-theoretic predicates. Nilpotency and supersolvability are each decided
//! by two independent criteria that must agree.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::perm::{prime_power, quotient_group, Elem, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{predicate}: criteria disagree ({detail})")]
    Inconsistent {
        predicate: &'static str,
        detail: String,
    },
}

/// Evidence attached to a predicate's value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    NonCommuting { a: Elem, b: Elem },
    Prime { p: u64 },
    NonNormal { subgroup: SubgroupId },
    NonPermutable { h: SubgroupId, k: SubgroupId },
    NonNormalSylow { p: u64, subgroup: SubgroupId },
    DerivedLength { length: usize },
    PerfectCore { order: usize },
    NonPrimeIndexMaximal { subgroup: SubgroupId, index: usize },
    NormalSubgroup { subgroup: SubgroupId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub value: bool,
    pub witness: Witness,
}

impl Flag {
    fn new(value: bool, witness: Witness) -> Self {
        Flag { value, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupClassification {
    pub abelian: Flag,
    pub p_group: Flag,
    pub dedekind: Flag,
    pub iwasawa: Flag,
    pub nilpotent: Flag,
    pub solvable: Flag,
    pub supersolvable: Flag,
    pub simple: Flag,
}

impl GroupClassification {
    /// The prime when the group is a p-group.
    pub fn prime(&self) -> Option<u64> {
        match self.p_group.witness {
            Witness::Prime { p } if self.p_group.value => Some(p),
            _ => None,
        }
    }

    pub fn flags_json(&self) -> serde_json::Value {
        serde_json::json!({
            "abelian": self.abelian.value,
            "p_group": self.p_group.value,
            "dedekind": self.dedekind.value,
            "iwasawa": self.iwasawa.value,
            "nilpotent": self.nilpotent.value,
            "solvable": self.solvable.value,
            "supersolvable": self.supersolvable.value,
            "simple": self.simple.value,
        })
    }

    /// Checks the stored implication chain.
    pub fn check_implications(&self) -> Result<(), ClassifyError> {
        let chain = [
            ("abelian => dedekind", self.abelian.value, self.dedekind.value),
            ("dedekind => iwasawa", self.dedekind.value, self.iwasawa.value),
            ("abelian => nilpotent", self.abelian.value, self.nilpotent.value),
            ("nilpotent => supersolvable", self.nilpotent.value, self.supersolvable.value),
            ("supersolvable => solvable", self.supersolvable.value, self.solvable.value),
            ("p_group => nilpotent", self.p_group.value, self.nilpotent.value),
        ];
        for (name, a, b) in chain {
            if a && !b {
                return Err(ClassifyError::Inconsistent {
                    predicate: "implication chain",
                    detail: name.to_string(),
                });
            }
        }
        Ok(())
    }
}

pub fn classify(lat: &SubgroupLattice) -> Result<GroupClassification, ClassifyError> {
    let g = lat.group();
    let c = GroupClassification {
        abelian: is_abelian(g),
        p_group: is_p_group(g),
        dedekind: is_dedekind(lat),
        iwasawa: is_iwasawa(lat),
        nilpotent: is_nilpotent(lat)?,
        solvable: is_solvable(g),
        supersolvable: is_supersolvable(lat)?,
        simple: is_simple(lat),
    };
    c.check_implications()?;
    Ok(c)
}

pub fn is_abelian(g: &FiniteGroup) -> Flag {
    let gens = g.generator_indices();
    for &a in &gens {
        for &b in &gens {
            if g.mul(a, b) != g.mul(b, a) {
                return Flag::new(false, Witness::NonCommuting { a, b });
            }
        }
    }
    Flag::new(true, Witness::None)
}

/// The trivial group is not counted as a p-group.
pub fn is_p_group(g: &FiniteGroup) -> Flag {
    match prime_power(g.order() as u64) {
        Some((p, _)) => Flag::new(true, Witness::Prime { p }),
        None => Flag::new(false, Witness::None),
    }
}

pub fn is_dedekind(lat: &SubgroupLattice) -> Flag {
    match (0..lat.len()).find(|&h| !lat.is_normal(h)) {
        Some(h) => Flag::new(false, Witness::NonNormal { subgroup: h }),
        None => Flag::new(true, Witness::None),
    }
}

/// `HK = KH` exactly when the set `HK` is the subgroup `⟨H,K⟩`, i.e. when
/// both have the same size.
pub fn is_iwasawa(lat: &SubgroupLattice) -> Flag {
    for h in 0..lat.len() {
        for k in h + 1..lat.len() {
            if lat.order(lat.join(h, k)) != lat.product_size(h, k) {
                return Flag::new(false, Witness::NonPermutable { h, k });
            }
        }
    }
    Flag::new(true, Witness::None)
}

pub fn is_nilpotent(lat: &SubgroupLattice) -> Result<Flag, ClassifyError> {
    let mut by_sylow = Flag::new(true, Witness::None);
    'primes: for p in lat.primes() {
        for s in lat.sylow_subgroups(p).expect("p divides the order") {
            if !lat.is_normal(s) {
                by_sylow = Flag::new(false, Witness::NonNormalSylow { p, subgroup: s });
                break 'primes;
            }
        }
    }
    let by_maximal = lat.maximal_subgroups().into_iter().all(|m| lat.is_normal(m));
    if by_sylow.value != by_maximal {
        return Err(ClassifyError::Inconsistent {
            predicate: "nilpotent",
            detail: format!(
                "Sylow normality says {}, maximal normality says {by_maximal}",
                by_sylow.value
            ),
        });
    }
    Ok(by_sylow)
}

/// Closure of all commutators of the given subgroup.
pub fn derived_subgroup(g: &FiniteGroup, members: &Bitset) -> Bitset {
    let list: Vec<Elem> = members.iter().map(|x| x as Elem).collect();
    let mut comm = Bitset::new(g.order());
    for &a in &list {
        for &b in &list {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            comm.insert(c as usize);
        }
    }
    let gens: Vec<Elem> = comm.iter().map(|x| x as Elem).collect();
    g.closure(&gens)
}

pub fn is_solvable(g: &FiniteGroup) -> Flag {
    let mut current = Bitset::full(g.order());
    let mut length = 0;
    while current.count() > 1 {
        let next = derived_subgroup(g, &current);
        if next == current {
            return Flag::new(
                false,
                Witness::PerfectCore {
                    order: current.count(),
                },
            );
        }
        current = next;
        length += 1;
    }
    Flag::new(true, Witness::DerivedLength { length })
}

fn huppert(lat: &SubgroupLattice) -> Flag {
    let n = lat.group().order();
    for m in lat.maximal_subgroups() {
        let index = n / lat.order(m);
        if !crate::perm::is_prime(index as u64) {
            return Flag::new(false, Witness::NonPrimeIndexMaximal { subgroup: m, index });
        }
    }
    Flag::new(true, Witness::None)
}

/// Whether `N/M` is cyclic, computed in the quotient of `N` realized on its own.
fn factor_is_cyclic(lat: &SubgroupLattice, n: SubgroupId, m: SubgroupId) -> bool {
    let g = lat.group();
    let sub = lat.subgroup(n);
    let gens: Vec<Elem> = if sub.generators.is_empty() {
        vec![0]
    } else {
        sub.generators.clone()
    };
    let ng = g.subgroup_as_group(&gens, "factor");
    let m_bits = Bitset::from_indices(
        ng.order(),
        lat.subgroup(m).members.iter().map(|x| {
            ng.index_of(g.element(x as Elem))
                .expect("M is contained in N") as usize
        }),
    );
    let q = quotient_group(&ng, &m_bits).expect("M is normal in G, hence in N");
    let qo = q.group.order();
    (0..qo as Elem).any(|x| q.group.element_order(x) == qo)
}

/// Existence of a chain of normal subgroups of `G` with cyclic factors.
fn normal_cyclic_series(lat: &SubgroupLattice) -> bool {
    let normals = lat.normal_subgroups();
    let mut reach = vec![false; lat.len()];
    reach[lat.trivial()] = true;
    for (pos, &n) in normals.iter().enumerate().skip(1) {
        for &m in normals[..pos].iter().rev() {
            if reach[m] && lat.contains(n, m) && factor_is_cyclic(lat, n, m) {
                reach[n] = true;
                break;
            }
        }
    }
    reach[lat.top()]
}

pub fn is_supersolvable(lat: &SubgroupLattice) -> Result<Flag, ClassifyError> {
    let primary = huppert(lat);
    let series = normal_cyclic_series(lat);
    if primary.value != series {
        return Err(ClassifyError::Inconsistent {
            predicate: "supersolvable",
            detail: format!(
                "prime-index criterion says {}, normal cyclic series says {series}",
                primary.value
            ),
        });
    }
    Ok(primary)
}

pub fn is_simple(lat: &SubgroupLattice) -> Flag {
    if lat.group().order() == 1 {
        return Flag::new(false, Witness::None);
    }
    match lat
        .proper_nontrivial()
        .find(|&h| lat.is_normal(h))
    {
        Some(h) => Flag::new(false, Witness::NormalSubgroup { subgroup: h }),
        None => Flag::new(true, Witness::None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::all_subgroups;
    use crate::perm::{parse_group_spec, realize, ActionRegistry};
    use std::sync::Arc;

    fn lattice(text: &str) -> SubgroupLattice {
        let g = realize(&parse_group_spec(text).unwrap(), &ActionRegistry::new(), 20_000).unwrap();
        all_subgroups(Arc::new(g)).unwrap()
    }

    fn cls(text: &str) -> GroupClassification {
        classify(&lattice(text)).unwrap()
    }

    #[test]
    fn abelian_examples() {
        assert!(cls("cyclic(6)").abelian.value);
        assert!(!cls("symmetric(3)").abelian.value);
        assert!(!cls("dicyclic(2)").abelian.value);
    }

    #[test]
    fn abelian_by_generators_matches_all_pairs() {
        for text in ["cyclic(6)", "symmetric(3)", "dicyclic(2)", "elem_abelian(2, 3)", "dihedral(2)"] {
            let l = lattice(text);
            let g = l.group();
            let n = g.order() as Elem;
            let all = (0..n).all(|a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a)));
            assert_eq!(is_abelian(g).value, all, "{text}");
        }
    }

    #[test]
    fn dedekind_and_iwasawa() {
        let q8 = cls("dicyclic(2)");
        assert!(q8.dedekind.value && q8.iwasawa.value);
        assert!(!cls("dihedral(4)").dedekind.value);
        assert!(cls("cyclic(10)").dedekind.value);
        let z4q8 = cls("direct(cyclic(4), dicyclic(2))");
        assert!(!z4q8.iwasawa.value);
        assert!(!z4q8.dedekind.value);
        assert!(!cls("symmetric(3)").iwasawa.value);
    }

    #[test]
    fn nilpotent_examples() {
        assert!(cls("dihedral(4)").nilpotent.value);
        assert!(!cls("symmetric(3)").nilpotent.value);
        assert!(cls("direct(cyclic(4), dicyclic(2))").nilpotent.value);
    }

    #[test]
    fn solvable_examples() {
        let s4 = cls("symmetric(4)");
        assert!(s4.solvable.value);
        assert_eq!(s4.solvable.witness, Witness::DerivedLength { length: 3 });
        let a5 = cls("alternating(5)");
        assert!(!a5.solvable.value);
        assert_eq!(a5.solvable.witness, Witness::PerfectCore { order: 60 });
        assert!(cls("dihedral(8)").solvable.value);
    }

    #[test]
    fn supersolvable_examples() {
        assert!(cls("symmetric(3)").supersolvable.value);
        assert!(!cls("alternating(4)").supersolvable.value);
        assert!(!cls("symmetric(4)").supersolvable.value);
        assert!(cls("dihedral(6)").supersolvable.value);
    }

    #[test]
    fn simple_examples() {
        assert!(cls("alternating(5)").simple.value);
        assert!(cls("cyclic(7)").simple.value);
        assert!(!cls("symmetric(4)").simple.value);
        assert!(!cls("cyclic(1)").simple.value);
        assert!(cls("psl2(7)").simple.value);
    }

    #[test]
    fn p_group_flag() {
        assert_eq!(cls("dihedral(4)").prime(), Some(2));
        assert_eq!(cls("symmetric(3)").prime(), None);
    }
}
