//! Deterministic Schreier-Sims: base and strong generating set for a permutation group.

use super::Permutation;

struct Level {
    base: u32,
    /// Strong generators first fixing every earlier base point.
    gens: Vec<Permutation>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<u32>,
}

/// A stabilizer chain `G = G_0 > G_1 > ... > G_k = 1`.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            let (residue, level) = chain.strip(g.clone(), 0);
            if !residue.is_identity() {
                chain.add_strong(level, residue);
            }
        }
        chain.complete();
        chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g.clone(), 0).0.is_identity()
    }

    /// Sifts `g` through the levels starting at `from`; returns the residue and
    /// the level at which sifting stopped.
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply(level.base);
            match &level.transversal[b as usize] {
                Some(u) => g = u.inverse().compose(&g),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    fn add_strong(&mut self, level: usize, g: Permutation) {
        if level == self.levels.len() {
            let base = g
                .first_moved_point()
                .expect("identity is never added as a strong generator");
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal: vec![None; self.degree],
                orbit: Vec::new(),
            });
        }
        self.levels[level].gens.push(g);
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens: Vec<Permutation> = self.levels[level..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect();
        let l = &mut self.levels[level];
        l.transversal = vec![None; self.degree];
        l.transversal[l.base as usize] = Some(Permutation::identity(self.degree));
        l.orbit = vec![l.base];
        let mut i = 0;
        while i < l.orbit.len() {
            let b = l.orbit[i];
            let ub = l.transversal[b as usize].clone().unwrap();
            for s in &gens {
                let c = s.apply(b);
                if l.transversal[c as usize].is_none() {
                    l.transversal[c as usize] = Some(s.compose(&ub));
                    l.orbit.push(c);
                }
            }
            i += 1;
        }
    }

    /// Repeats Schreier-generator sifting from the bottom level upward until
    /// every Schreier generator sifts to the identity.
    fn complete(&mut self) {
        'restart: loop {
            for level in (0..self.levels.len()).rev() {
                self.rebuild_orbit(level);
                let gens: Vec<Permutation> = self.levels[level..]
                    .iter()
                    .flat_map(|l| l.gens.iter().cloned())
                    .collect();
                let orbit = self.levels[level].orbit.clone();
                for &b in &orbit {
                    let ub = self.levels[level].transversal[b as usize].clone().unwrap();
                    for s in &gens {
                        let sb = s.apply(b);
                        let usb = self.levels[level].transversal[sb as usize]
                            .as_ref()
                            .unwrap();
                        let schreier = usb.inverse().compose(&s.compose(&ub));
                        if schreier.is_identity() {
                            continue;
                        }
                        let (residue, at) = self.strip(schreier, level + 1);
                        if !residue.is_identity() {
                            self.add_strong(at, residue);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }
}

/// Group order from a base-and-strong-generators construction.
pub fn stabilizer_chain_order(degree: usize, generators: &[Permutation]) -> u128 {
    StabilizerChain::new(degree, generators).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[Vec<u32>]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..=7usize {
            let t = cyc(n, &[vec![0, 1]]);
            let c = cyc(n, &[(0..n as u32).collect()]);
            let expect: u128 = (1..=n as u128).product();
            assert_eq!(stabilizer_chain_order(n, &[t, c]), expect);
        }
    }

    #[test]
    fn trivial_group() {
        assert_eq!(stabilizer_chain_order(3, &[Permutation::identity(3)]), 1);
        assert_eq!(stabilizer_chain_order(3, &[]), 1);
    }

    #[test]
    fn membership() {
        // A4 on 4 points
        let a = cyc(4, &[vec![0, 1, 2]]);
        let b = cyc(4, &[vec![1, 2, 3]]);
        let chain = StabilizerChain::new(4, &[a, b]);
        assert_eq!(chain.order(), 12);
        assert!(chain.contains(&cyc(4, &[vec![0, 1], vec![2, 3]])));
        assert!(!chain.contains(&cyc(4, &[vec![0, 1]])));
    }
}
