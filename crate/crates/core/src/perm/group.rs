use std::collections::{HashMap, HashSet, VecDeque};

use sha2::{Digest, Sha256};

use super::schreier::stabilizer_chain_order;
use super::{PermError, Permutation, DEFAULT_ORDER_CAP};
use crate::bitset::Bitset;

/// Index of an element in a group's canonical element table.
pub type Elem = u32;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A concrete permutation group with its full, canonically sorted element table.
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    inverse: Vec<Elem>,
    table: Option<Vec<Elem>>,
    spec_label: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.spec_label)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

/// Breadth-first closure of the generators under products, sorted lexicographically.
pub fn enumerate_elements(
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, PermError> {
    let degree = generators.first().ok_or(PermError::NoGenerators)?.degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(PermError::MixedDegrees);
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(PermError::OrderCapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

impl FiniteGroup {
    pub fn from_generators(
        degree: usize,
        generators: Vec<Permutation>,
        label: impl Into<String>,
        cap: usize,
    ) -> Result<Self, PermError> {
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(PermError::MixedDegrees);
        }
        let elements = enumerate_elements(&generators, cap)?;
        let chain_order = stabilizer_chain_order(degree, &generators);
        if chain_order != elements.len() as u128 {
            return Err(PermError::OrderMismatch {
                table: elements.len(),
                chain: chain_order,
            });
        }
        Ok(Self::from_sorted_elements(degree, generators, elements, label.into()))
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        spec_label: String,
    ) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Elem))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.compose(b)];
                }
            }
            t
        });
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
            inverse,
            table,
            spec_label,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> Vec<Elem> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, e: Elem) -> &Permutation {
        &self.elements[e as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn spec_label(&self) -> &str {
        &self.spec_label
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `g a g^-1`
    #[inline]
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Member set of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Bitset {
        let mut set = Bitset::new(self.order());
        set.insert(0);
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = self.mul(x, s);
                if set.put(y as usize) {
                    list.push(y);
                }
            }
            i += 1;
        }
        set
    }

    /// Members of `⟨H, x⟩` given the member list of a subgroup `H`.
    ///
    /// The result is grown as a union of left cosets of `H` that is closed
    /// under right multiplication by `x`. Stops early once more than half the
    /// group is reached, since that forces the whole group.
    pub fn extend_subgroup(&self, members: &Bitset, member_list: &[Elem], x: Elem) -> Bitset {
        let n = self.order();
        let mut set = members.clone();
        let mut list = member_list.to_vec();
        let mut i = 0;
        while i < list.len() {
            let z = self.mul(list[i], x);
            if !set.contains(z as usize) {
                for &h in member_list {
                    let w = self.mul(z, h);
                    set.insert(w as usize);
                    list.push(w);
                }
                if 2 * list.len() > n {
                    return Bitset::full(n);
                }
            }
            i += 1;
        }
        set
    }

    pub fn is_abelian_by_generators(&self) -> bool {
        let g = self.generator_indices();
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Content hash of the canonical element table.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.degree as u64).to_le_bytes());
        h.update((self.elements.len() as u64).to_le_bytes());
        for p in &self.elements {
            for &x in p.images() {
                h.update(x.to_le_bytes());
            }
        }
        let digest = h.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Realizes the subgroup with the given members as a group in its own right
    /// (same points, generated by `gens`).
    pub fn subgroup_as_group(&self, gens: &[Elem], label: impl Into<String>) -> FiniteGroup {
        let perms: Vec<Permutation> = gens.iter().map(|&g| self.elements[g as usize].clone()).collect();
        FiniteGroup::from_generators(self.degree, perms, label, DEFAULT_ORDER_CAP)
            .expect("subgroups of a realized group stay below the cap")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[Vec<u32>]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn identity_only() {
        let e = enumerate_elements(&[Permutation::identity(3)], 100).unwrap();
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn s3_closure() {
        let g = [cyc(3, &[vec![0, 1, 2]]), cyc(3, &[vec![0, 1]])];
        assert_eq!(enumerate_elements(&g, 100).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let g = [cyc(6, &[vec![0, 1]]), cyc(6, &[(0..6).collect()])];
        assert!(matches!(
            enumerate_elements(&g, 100),
            Err(PermError::OrderCapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn table_is_consistent() {
        let g = FiniteGroup::from_generators(
            4,
            vec![cyc(4, &[vec![0, 1]]), cyc(4, &[vec![0, 1, 2, 3]])],
            "s4",
            1000,
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        assert!(g.element(0).is_identity());
        for a in 0..24 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..24 {
                let p = g.element(a).compose(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &p);
            }
        }
    }

    #[test]
    fn extend_matches_closure() {
        let g = FiniteGroup::from_generators(
            4,
            vec![cyc(4, &[vec![0, 1]]), cyc(4, &[vec![0, 1, 2, 3]])],
            "s4",
            1000,
        )
        .unwrap();
        let v4 = g.closure(&[
            g.index_of(&cyc(4, &[vec![0, 1], vec![2, 3]])).unwrap(),
            g.index_of(&cyc(4, &[vec![0, 2], vec![1, 3]])).unwrap(),
        ]);
        let list: Vec<Elem> = v4.iter().map(|i| i as Elem).collect();
        for x in 0..24 {
            let mut gens = list.clone();
            gens.push(x);
            assert_eq!(g.extend_subgroup(&v4, &list, x), g.closure(&gens));
        }
    }
}
