//! Complete subgroup lattice of a finite group with inclusion, conjugacy,
//! normality, maximality, Sylow and Frattini annotations.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::bitset::Bitset;
use crate::perm::{factorize, Elem, FiniteGroup};

pub type SubgroupId = usize;

/// Default limit on the number of subgroups enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("more than {cap} subgroups")]
    TooManySubgroups { cap: usize },
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: usize },
    #[error("lattice data is inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub members: Bitset,
    pub order: usize,
    /// A small generating list, for reporting.
    pub generators: Vec<Elem>,
}

impl Subgroup {
    pub fn member_list(&self) -> Vec<Elem> {
        self.members.iter().map(|i| i as Elem).collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<Bitset, SubgroupId>,
    /// `supersets[h]` holds every `k` with `H <= K`, including `h` itself.
    supersets: Vec<Bitset>,
    class_of: Vec<usize>,
    classes: Vec<Vec<SubgroupId>>,
    normal: Vec<bool>,
    maximal: Vec<bool>,
    sylow: BTreeMap<u64, Vec<SubgroupId>>,
    frattini: SubgroupId,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group)
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.elements() == other.elements()
    }
}

impl Eq for FiniteGroup {}

/// Cyclic-extension enumeration: seed with the cyclic subgroups, then extend
/// every known subgroup by every cyclic subgroup it does not contain until no
/// new subgroup appears.
pub fn all_subgroups(group: Arc<FiniteGroup>) -> Result<SubgroupLattice, LatticeError> {
    all_subgroups_capped(group, DEFAULT_SUBGROUP_CAP)
}

pub fn all_subgroups_capped(
    group: Arc<FiniteGroup>,
    cap: usize,
) -> Result<SubgroupLattice, LatticeError> {
    let n = group.order();
    let mut found: Vec<Subgroup> = Vec::new();
    let mut index: HashMap<Bitset, SubgroupId> = HashMap::new();
    let mut insert = |found: &mut Vec<Subgroup>, bits: Bitset, gens: Vec<Elem>| {
        if index.contains_key(&bits) {
            return Ok(());
        }
        if found.len() >= cap {
            return Err(LatticeError::TooManySubgroups { cap });
        }
        index.insert(bits.clone(), found.len());
        let order = bits.count();
        found.push(Subgroup {
            members: bits,
            order,
            generators: gens,
        });
        Ok(())
    };

    let mut cyclic_gens: Vec<Elem> = Vec::new();
    for x in 0..n as Elem {
        let bits = group.closure(&[x]);
        let before = found.len();
        let gens = if x == 0 { Vec::new() } else { vec![x] };
        insert(&mut found, bits, gens)?;
        if found.len() > before && x != 0 {
            cyclic_gens.push(x);
        }
    }

    let mut i = 0;
    while i < found.len() {
        if found[i].order < n {
            let members = found[i].members.clone();
            let list = found[i].member_list();
            let base_gens = found[i].generators.clone();
            for &x in &cyclic_gens {
                if members.contains(x as usize) {
                    continue;
                }
                let bits = group.extend_subgroup(&members, &list, x);
                let mut gens = base_gens.clone();
                gens.push(x);
                insert(&mut found, bits, gens)?;
            }
        }
        i += 1;
    }

    found.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.members.cmp(&b.members)));
    SubgroupLattice::from_subgroups(group, found)
}

impl SubgroupLattice {
    /// Builds all annotations from a complete, canonically sorted subgroup list.
    pub fn from_subgroups(
        group: Arc<FiniteGroup>,
        subgroups: Vec<Subgroup>,
    ) -> Result<Self, LatticeError> {
        let n = group.order();
        let s = subgroups.len();
        if s == 0 || subgroups[0].order != 1 || subgroups[s - 1].order != n {
            return Err(LatticeError::Inconsistent(
                "list must start with the trivial subgroup and end with the group".into(),
            ));
        }
        let index: HashMap<Bitset, SubgroupId> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.members.clone(), i))
            .collect();
        if index.len() != s {
            return Err(LatticeError::Inconsistent("duplicate subgroups".into()));
        }

        let mut supersets = vec![Bitset::new(s); s];
        for i in 0..s {
            supersets[i].insert(i);
            for j in i + 1..s {
                let (a, b) = (&subgroups[i], &subgroups[j]);
                if b.order > a.order && b.order % a.order == 0 && a.members.is_subset(&b.members) {
                    supersets[i].insert(j);
                }
            }
        }

        // conjugation action of the group generators on subgroup ids
        let gens = group.generator_indices();
        let mut parent: Vec<usize> = (0..s).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &g in &gens {
            for (i, h) in subgroups.iter().enumerate() {
                let img = conjugate_members(&group, g, &h.members);
                let j = *index.get(&img).ok_or_else(|| {
                    LatticeError::Inconsistent("conjugate of a subgroup is missing".into())
                })?;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut class_of = vec![usize::MAX; s];
        let mut classes: Vec<Vec<SubgroupId>> = Vec::new();
        let mut root_class: HashMap<usize, usize> = HashMap::new();
        for i in 0..s {
            let r = find(&mut parent, i);
            let c = *root_class.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class_of[i] = c;
            classes[c].push(i);
        }
        let normal: Vec<bool> = (0..s).map(|i| classes[class_of[i]].len() == 1).collect();
        let top = s - 1;
        let maximal: Vec<bool> = (0..s)
            .map(|i| i != top && supersets[i].count() == 2 && supersets[i].contains(top))
            .collect();

        let mut sylow = BTreeMap::new();
        for (p, k) in factorize(n as u64) {
            let pk = p.pow(k) as usize;
            sylow.insert(p, (0..s).filter(|&i| subgroups[i].order == pk).collect());
        }

        let mut phi = Bitset::full(n);
        for i in (0..s).filter(|&i| maximal[i]) {
            phi.intersect_with(&subgroups[i].members);
        }
        let frattini = *index
            .get(&phi)
            .ok_or_else(|| LatticeError::Inconsistent("Frattini subgroup missing".into()))?;

        Ok(SubgroupLattice {
            group,
            subgroups,
            index,
            supersets,
            class_of,
            classes,
            normal,
            maximal,
            sylow,
            frattini,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, h: SubgroupId) -> &Subgroup {
        &self.subgroups[h]
    }

    pub fn order(&self, h: SubgroupId) -> usize {
        self.subgroups[h].order
    }

    pub fn trivial(&self) -> SubgroupId {
        0
    }

    pub fn top(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    /// Non-trivial proper subgroups, in id order.
    pub fn proper_nontrivial(&self) -> impl Iterator<Item = SubgroupId> + '_ {
        1..self.top()
    }

    pub fn lookup(&self, members: &Bitset) -> Option<SubgroupId> {
        self.index.get(members).copied()
    }

    /// Whether `K <= H`.
    pub fn contains(&self, h: SubgroupId, k: SubgroupId) -> bool {
        self.supersets[k].contains(h)
    }

    pub fn supersets(&self, h: SubgroupId) -> &Bitset {
        &self.supersets[h]
    }

    pub fn is_normal(&self, h: SubgroupId) -> bool {
        self.normal[h]
    }

    pub fn is_maximal(&self, h: SubgroupId) -> bool {
        self.maximal[h]
    }

    pub fn class_of(&self, h: SubgroupId) -> usize {
        self.class_of[h]
    }

    pub fn classes(&self) -> &[Vec<SubgroupId>] {
        &self.classes
    }

    pub fn are_conjugate(&self, h: SubgroupId, k: SubgroupId) -> bool {
        self.class_of[h] == self.class_of[k]
    }

    /// Smallest subgroup containing both: the least-order common upper bound.
    pub fn join(&self, h: SubgroupId, k: SubgroupId) -> SubgroupId {
        self.supersets[h]
            .intersection(&self.supersets[k])
            .first()
            .expect("the whole group is a common upper bound")
    }

    /// Join computed directly as the closure of the union.
    pub fn join_by_closure(&self, h: SubgroupId, k: SubgroupId) -> SubgroupId {
        let mut gens = self.subgroups[h].generators.clone();
        gens.extend(&self.subgroups[k].generators);
        self.lookup(&self.group.closure(&gens))
            .expect("closure of subgroups is in the lattice")
    }

    pub fn intersection(&self, h: SubgroupId, k: SubgroupId) -> SubgroupId {
        self.lookup(&self.subgroups[h].members.intersection(&self.subgroups[k].members))
            .expect("intersection of subgroups is in the lattice")
    }

    /// `|H||K| / |H ∩ K|`, the size of the set `HK`.
    pub fn product_size(&self, h: SubgroupId, k: SubgroupId) -> usize {
        let (a, b) = (&self.subgroups[h], &self.subgroups[k]);
        a.order * b.order / a.members.intersection_count(&b.members)
    }

    /// Id of `g H g^-1`.
    pub fn conjugate_by(&self, g: Elem, h: SubgroupId) -> SubgroupId {
        self.lookup(&conjugate_members(&self.group, g, &self.subgroups[h].members))
            .expect("conjugates of subgroups are in the lattice")
    }

    pub fn normalizer(&self, h: SubgroupId) -> SubgroupId {
        let members = &self.subgroups[h].members;
        let n = self.group.order();
        let bits = Bitset::from_indices(
            n,
            (0..n as Elem)
                .filter(|&g| {
                    members
                        .iter()
                        .all(|m| members.contains(self.group.conj(g, m as Elem) as usize))
                })
                .map(|g| g as usize),
        );
        self.lookup(&bits).expect("normalizer is a subgroup")
    }

    pub fn conjugates(&self, h: SubgroupId) -> Vec<SubgroupId> {
        self.classes[self.class_of[h]].clone()
    }

    pub fn maximal_subgroups(&self) -> Vec<SubgroupId> {
        (0..self.len()).filter(|&i| self.maximal[i]).collect()
    }

    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<SubgroupId>, LatticeError> {
        self.sylow
            .get(&p)
            .cloned()
            .ok_or(LatticeError::PrimeDoesNotDivide {
                p,
                order: self.group.order(),
            })
    }

    pub fn primes(&self) -> Vec<u64> {
        self.sylow.keys().copied().collect()
    }

    pub fn frattini(&self) -> SubgroupId {
        self.frattini
    }

    pub fn normal_subgroups(&self) -> Vec<SubgroupId> {
        (0..self.len()).filter(|&i| self.normal[i]).collect()
    }

    pub fn is_cyclic_subgroup(&self, h: SubgroupId) -> bool {
        let order = self.order(h);
        self.subgroups[h]
            .members
            .iter()
            .any(|x| self.group.element_order(x as Elem) == order)
    }
}

pub fn conjugate_members(group: &FiniteGroup, g: Elem, members: &Bitset) -> Bitset {
    Bitset::from_indices(
        members.len(),
        members.iter().map(|m| group.conj(g, m as Elem) as usize),
    )
}
