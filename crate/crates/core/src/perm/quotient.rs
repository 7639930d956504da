use super::group::{Elem, FiniteGroup};
use super::{PermError, Permutation, DEFAULT_ORDER_CAP};
use crate::bitset::Bitset;

/// `G/N` realized as the action of `G` on the left cosets of `N`.
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset number of every element of the parent group.
    pub coset_of: Vec<u32>,
    /// Smallest element of each coset.
    pub representatives: Vec<Elem>,
}

impl Quotient {
    /// Image of a parent element in the quotient's element table.
    pub fn project(&self, parent: &FiniteGroup, x: Elem) -> Elem {
        let images = self
            .representatives
            .iter()
            .map(|&r| self.coset_of[parent.mul(x, r) as usize])
            .collect();
        let p = Permutation::from_images(images).expect("coset action is a bijection");
        self.group
            .index_of(&p)
            .expect("coset action lies in the quotient")
    }
}

pub fn is_normal_set(g: &FiniteGroup, members: &Bitset) -> bool {
    g.generator_indices()
        .iter()
        .all(|&s| members.iter().all(|m| members.contains(g.conj(s, m as Elem) as usize)))
}

pub fn quotient_group(g: &FiniteGroup, normal: &Bitset) -> Result<Quotient, PermError> {
    if normal.len() != g.order() || !normal.contains(0) || !is_normal_set(g, normal) {
        return Err(PermError::NotNormal);
    }
    let n_list: Vec<Elem> = normal.iter().map(|i| i as Elem).collect();
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() as Elem {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = representatives.len() as u32;
        representatives.push(x);
        for &m in &n_list {
            coset_of[g.mul(x, m) as usize] = c;
        }
    }
    let degree = representatives.len();
    let gens = g
        .generator_indices()
        .into_iter()
        .map(|s| {
            Permutation::from_images(
                representatives
                    .iter()
                    .map(|&r| coset_of[g.mul(s, r) as usize])
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let label = format!("{} / N(order {})", g.spec_label(), n_list.len());
    let group = FiniteGroup::from_generators(degree, gens, label, DEFAULT_ORDER_CAP.max(g.order()))?;
    Ok(Quotient {
        group,
        coset_of,
        representatives,
    })
}
