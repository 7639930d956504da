//! Canonical permutation realizations of the constructor expressions.

use std::collections::BTreeMap;
use std::fmt;

use super::group::FiniteGroup;
use super::{prime_power, PermError, Permutation, GroupSpec};

/// A word in the generators `x0, x1, ...` of the normal factor, e.g. `x0*x2^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(pub Vec<(usize, i64)>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Images of the normal factor's generators under each generator of the
/// acting factor: `images[j][i]` is the image of `x_i` under `y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    pub images: Vec<Vec<Word>>,
}

impl ActionTable {
    /// Parses `y0 -> [x0^2]; y1 -> [x1, x0*x1]`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut rows: Vec<(usize, Vec<Word>)> = Vec::new();
        for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (lhs, rhs) = part
                .split_once("->")
                .ok_or_else(|| format!("missing '->' in '{part}'"))?;
            let lhs = lhs.trim();
            let j: usize = lhs
                .strip_prefix('y')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad acting generator '{lhs}'"))?;
            let rhs = rhs.trim();
            let inner = rhs
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| format!("images must be bracketed in '{part}'"))?;
            let words = inner
                .split(',')
                .map(|w| parse_word(w.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push((j, words));
        }
        rows.sort_by_key(|r| r.0);
        for (expect, (j, _)) in rows.iter().enumerate() {
            if *j != expect {
                return Err(format!("acting generators must be y0..y{} exactly once", rows.len() - 1));
            }
        }
        Ok(ActionTable {
            images: rows.into_iter().map(|r| r.1).collect(),
        })
    }
}

impl fmt::Display for ActionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, row) in self.images.iter().enumerate() {
            if j > 0 {
                write!(f, "; ")?;
            }
            let words: Vec<String> = row.iter().map(|w| w.to_string()).collect();
            write!(f, "y{j} -> [{}]", words.join(", "))?;
        }
        Ok(())
    }
}

fn parse_word(text: &str) -> Result<Word, String> {
    if text == "1" || text == "e" {
        return Ok(Word(Vec::new()));
    }
    let mut out = Vec::new();
    for factor in text.split('*').map(str::trim) {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b.trim(),
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| format!("bad exponent in '{factor}'"))?,
            ),
            None => (factor, 1),
        };
        let g = base
            .strip_prefix('x')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("bad generator '{base}'"))?;
        out.push((g, exp));
    }
    Ok(Word(out))
}

/// Named action tables referenced by `semidirect(.., .., id)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionRegistry {
    tables: BTreeMap<String, ActionTable>,
}

impl ActionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: impl Into<String>, table: ActionTable) -> Option<ActionTable> {
        self.tables.insert(id.into(), table)
    }

    pub fn get(&self, id: &str) -> Option<&ActionTable> {
        self.tables.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ActionTable)> {
        self.tables.iter()
    }
}

/// Realizes a group expression with its frozen canonical generators.
pub fn realize(
    spec: &GroupSpec,
    actions: &ActionRegistry,
    cap: usize,
) -> Result<FiniteGroup, PermError> {
    let (degree, gens) = generators_of(spec, actions, cap)?;
    let g = FiniteGroup::from_generators(degree, gens, spec.to_string(), cap)?;
    if let Some(expected) = spec.expected_order() {
        if expected != g.order() as u128 {
            return Err(PermError::TheoreticalOrderMismatch {
                expected,
                got: g.order(),
            });
        }
    }
    Ok(g)
}

fn cycle_perm(degree: usize, cycle: impl IntoIterator<Item = u32>) -> Permutation {
    let c: Vec<u32> = cycle.into_iter().collect();
    if c.len() < 2 {
        return Permutation::identity(degree);
    }
    Permutation::from_cycles(degree, &[c]).expect("canonical cycle is valid")
}

fn images_perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).expect("canonical images form a bijection")
}

fn generators_of(
    spec: &GroupSpec,
    actions: &ActionRegistry,
    cap: usize,
) -> Result<(usize, Vec<Permutation>), PermError> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n as usize;
            (n, vec![cycle_perm(n, 0..n as u32)])
        }
        GroupSpec::Dihedral(n) => dihedral(*n as usize),
        GroupSpec::Dicyclic(n) => dicyclic(*n as usize),
        GroupSpec::Symmetric(n) => {
            let n = *n as usize;
            (n, vec![cycle_perm(n, [0, 1].into_iter().filter(|&x| (x as usize) < n)), cycle_perm(n, 0..n as u32)])
        }
        GroupSpec::Alternating(n) => {
            let n = *n as usize;
            if n < 3 {
                (n, vec![Permutation::identity(n)])
            } else {
                let second = if n % 2 == 1 {
                    cycle_perm(n, 0..n as u32)
                } else {
                    cycle_perm(n, 1..n as u32)
                };
                (n, vec![cycle_perm(n, 0..3), second])
            }
        }
        GroupSpec::ElemAbelian { p, k } => {
            let mut spec = GroupSpec::Cyclic(*p);
            for _ in 1..*k {
                spec = GroupSpec::Direct(Box::new(spec), Box::new(GroupSpec::Cyclic(*p)));
            }
            generators_of(&spec, actions, cap)?
        }
        GroupSpec::Direct(a, b) => {
            let (da, ga) = generators_of(a, actions, cap)?;
            let (db, gb) = generators_of(b, actions, cap)?;
            let d = da + db;
            let mut gens: Vec<Permutation> = ga.iter().map(|g| g.shifted(0, d)).collect();
            gens.extend(gb.iter().map(|g| g.shifted(da, d)));
            (d, gens)
        }
        GroupSpec::Semidirect {
            normal,
            acting,
            action,
        } => {
            let table = actions
                .get(action)
                .ok_or_else(|| PermError::UnknownAction(action.clone()))?;
            semidirect(normal, acting, action, table, actions, cap)?
        }
        GroupSpec::Psl2(q) => psl2(*q),
        GroupSpec::Raw(gens) => {
            let degree = gens
                .iter()
                .flatten()
                .flatten()
                .map(|&x| x as usize + 1)
                .max()
                .unwrap_or(1);
            let perms = gens
                .iter()
                .map(|cycles| Permutation::from_cycles(degree, cycles))
                .collect::<Result<Vec<_>, _>>()?;
            (degree, perms)
        }
    })
}

fn dihedral(n: usize) -> (usize, Vec<Permutation>) {
    match n {
        1 => (2, vec![Permutation::identity(2), cycle_perm(2, [0, 1])]),
        2 => (
            4,
            vec![
                images_perm(vec![1, 0, 3, 2]),
                images_perm(vec![2, 3, 0, 1]),
            ],
        ),
        _ => {
            let rotation = cycle_perm(n, 0..n as u32);
            let reflection = images_perm((0..n).map(|i| ((n - i) % n) as u32).collect());
            (n, vec![rotation, reflection])
        }
    }
}

/// Left-regular action on the words `a^i x^j` (point `j*2n + i`).
fn dicyclic(n: usize) -> (usize, Vec<Permutation>) {
    let m = 2 * n;
    let a = images_perm(
        (0..2 * m)
            .map(|p| {
                let (j, i) = (p / m, p % m);
                (j * m + (i + 1) % m) as u32
            })
            .collect(),
    );
    // x a^i = a^-i x and x a^i x = a^(n-i)
    let x = images_perm(
        (0..2 * m)
            .map(|p| {
                let (j, i) = (p / m, p % m);
                let neg = (m - i) % m;
                if j == 0 {
                    (m + neg) as u32
                } else {
                    ((neg + n) % m) as u32
                }
            })
            .collect(),
    );
    (2 * m, vec![a, x])
}

/// Arithmetic in GF(p^k) with elements encoded base p.
struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Monic irreducible modulus coefficients, low degree first (length k+1).
    modulus: Vec<u32>,
}

impl Field {
    fn new(q: u32) -> Self {
        let (p, k) = prime_power(q as u64).expect("validated prime power");
        let (p, k) = (p as u32, k);
        let mut f = Field {
            p,
            k,
            q,
            modulus: Vec::new(),
        };
        if k > 1 {
            // smallest monic irreducible: no roots suffice for k <= 3
            'search: for code in 0..p.pow(k) {
                let mut m = f.digits(code);
                m.push(1);
                if k <= 3 && (0..p).all(|x| eval_poly(&m, x, p) != 0) {
                    f.modulus = m;
                    break 'search;
                }
            }
            assert!(!f.modulus.is_empty(), "no irreducible polynomial found");
        }
        f
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s)
    }

    fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.undigits(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a * b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c != 0 {
                for i in 0..k {
                    let sub = c * self.modulus[i] % self.p;
                    prod[deg - k + i] = (prod[deg - k + i] + self.p - sub) % self.p;
                }
                prod[deg] = 0;
            }
        }
        self.undigits(&prod[..k])
    }

    fn inv(&self, a: u32) -> u32 {
        (1..self.q)
            .find(|&b| self.mul(a, b) == 1)
            .expect("nonzero field elements are invertible")
    }

    fn primitive(&self) -> u32 {
        (2..self.q)
            .find(|&w| {
                let mut x = w;
                let mut ord = 1;
                while x != 1 {
                    x = self.mul(x, w);
                    ord += 1;
                }
                ord == self.q - 1
            })
            .unwrap_or(1)
    }
}

fn eval_poly(coeffs: &[u32], x: u32, p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Projective line action: points `0..q` are field elements, `q` is infinity.
fn psl2(q: u32) -> (usize, Vec<Permutation>) {
    let f = Field::new(q);
    let inf = q;
    let degree = (q + 1) as usize;
    let translate = images_perm(
        (0..=q)
            .map(|x| if x == inf { inf } else { f.add(x, 1) })
            .collect(),
    );
    let invert = images_perm(
        (0..=q)
            .map(|x| {
                if x == inf {
                    0
                } else if x == 0 {
                    inf
                } else {
                    f.neg(f.inv(x))
                }
            })
            .collect(),
    );
    let mut gens = vec![translate, invert];
    if f.k > 1 {
        // x -> x+1 and x -> -1/x only reach PSL(2,p) over a proper extension field
        let w = f.primitive();
        let w2 = f.mul(w, w);
        gens.push(images_perm(
            (0..=q)
                .map(|x| if x == inf { inf } else { f.mul(w2, x) })
                .collect(),
        ));
    }
    (degree, gens)
}

fn eval_word(group: &FiniteGroup, gens: &[u32], word: &Word) -> Result<u32, String> {
    let mut acc = group.identity();
    for &(g, e) in &word.0 {
        let base = *gens
            .get(g)
            .ok_or_else(|| format!("generator x{g} does not exist"))?;
        let ord = group.element_order(base) as i64;
        let e = e.rem_euclid(ord);
        for _ in 0..e {
            acc = group.mul(acc, base);
        }
    }
    Ok(acc)
}

/// Extends generator images to an automorphism of `group`, as a map on element indices.
fn extend_to_automorphism(
    group: &FiniteGroup,
    gens: &[u32],
    images: &[u32],
) -> Result<Vec<u32>, String> {
    let n = group.order();
    let mut map: Vec<Option<u32>> = vec![None; n];
    map[0] = Some(0);
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x as usize].unwrap();
        for (&g, &fg) in gens.iter().zip(images) {
            let y = group.mul(g, x);
            let fy = group.mul(fg, fx);
            match map[y as usize] {
                None => {
                    map[y as usize] = Some(fy);
                    queue.push(y);
                }
                Some(prev) if prev != fy => {
                    return Err("generator images do not define a homomorphism".into())
                }
                _ => {}
            }
        }
        i += 1;
    }
    let map: Vec<u32> = map.into_iter().map(|m| m.expect("generators span the group")).collect();
    let mut seen = vec![false; n];
    for &y in &map {
        if std::mem::replace(&mut seen[y as usize], true) {
            return Err("generator images do not define a bijection".into());
        }
    }
    Ok(map)
}

/// The normal factor acts on its own elements by left translation, the acting
/// factor by the tabulated automorphisms together with its natural points.
fn semidirect(
    normal: &GroupSpec,
    acting: &GroupSpec,
    id: &str,
    table: &ActionTable,
    actions: &ActionRegistry,
    cap: usize,
) -> Result<(usize, Vec<Permutation>), PermError> {
    let bad = |reason: String| PermError::BadAction {
        id: id.to_string(),
        reason,
    };
    let n_group = realize(normal, actions, cap)?;
    let (k_degree, k_gens) = generators_of(acting, actions, cap)?;
    let k_order = realize(acting, actions, cap)?.order();
    if table.images.len() != k_gens.len() {
        return Err(bad(format!(
            "table has {} rows but the acting group has {} generators",
            table.images.len(),
            k_gens.len()
        )));
    }
    let n = n_group.order();
    let n_gens = n_group.generator_indices();
    let degree = n + k_degree;
    let mut gens = Vec::new();
    for &g in &n_gens {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for x in 0..n as u32 {
            images[x as usize] = n_group.mul(g, x);
        }
        gens.push(images_perm(images));
    }
    for (row, kg) in table.images.iter().zip(&k_gens) {
        if row.len() != n_gens.len() {
            return Err(bad(format!(
                "row gives {} images but the normal group has {} generators",
                row.len(),
                n_gens.len()
            )));
        }
        let imgs = row
            .iter()
            .map(|w| eval_word(&n_group, &n_gens, w))
            .collect::<Result<Vec<_>, _>>()
            .map_err(bad)?;
        let auto = extend_to_automorphism(&n_group, &n_gens, &imgs).map_err(bad)?;
        let mut images: Vec<u32> = auto;
        images.extend(kg.images().iter().map(|&x| x + n as u32));
        gens.push(images_perm(images));
    }
    let order = super::enumerate_elements(&gens, cap)?.len();
    if order != n * k_order {
        return Err(PermError::NotHomomorphism(id.to_string()));
    }
    Ok((degree, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_group_spec, DEFAULT_ORDER_CAP};

    fn order_of(text: &str, actions: &ActionRegistry) -> usize {
        realize(&parse_group_spec(text).unwrap(), actions, DEFAULT_ORDER_CAP)
            .unwrap()
            .order()
    }

    #[test]
    fn named_orders() {
        let a = ActionRegistry::new();
        for (text, order) in [
            ("cyclic(1)", 1),
            ("cyclic(12)", 12),
            ("dihedral(1)", 2),
            ("dihedral(2)", 4),
            ("dihedral(7)", 14),
            ("dicyclic(1)", 4),
            ("dicyclic(2)", 8),
            ("dicyclic(5)", 20),
            ("symmetric(1)", 1),
            ("symmetric(2)", 2),
            ("symmetric(5)", 120),
            ("alternating(3)", 3),
            ("alternating(4)", 12),
            ("alternating(5)", 60),
            ("alternating(6)", 360),
            ("elem_abelian(3, 3)", 27),
            ("direct(symmetric(3), cyclic(2))", 12),
            ("psl2(2)", 6),
            ("psl2(3)", 12),
            ("psl2(4)", 60),
            ("psl2(5)", 60),
            ("psl2(7)", 168),
            ("psl2(8)", 504),
            ("psl2(9)", 360),
            ("raw((0 1 2), (0 1))", 6),
        ] {
            assert_eq!(order_of(text, &a), order, "{text}");
        }
    }

    #[test]
    fn psl27_acts_on_eight_points() {
        let g = realize(&GroupSpec::Psl2(7), &ActionRegistry::new(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.degree(), 8);
        assert_eq!(g.order(), 168);
    }

    #[test]
    fn q8_has_unique_involution() {
        let g = realize(&GroupSpec::Dicyclic(2), &ActionRegistry::new(), DEFAULT_ORDER_CAP).unwrap();
        let involutions = (0..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn semidirect_validates_action() {
        let mut a = ActionRegistry::new();
        a.insert("double", ActionTable::parse("y0 -> [x0^2]").unwrap());
        a.insert("triple", ActionTable::parse("y0 -> [x0^3]").unwrap());
        a.insert("zero", ActionTable::parse("y0 -> [1]").unwrap());
        // 2 has order 4 mod 5, dividing 8
        assert_eq!(order_of("semidirect(cyclic(5), cyclic(8), double)", &a), 40);
        // 2 has order 3 mod 7, which does not divide 2
        let err = realize(
            &parse_group_spec("semidirect(cyclic(7), cyclic(2), double)").unwrap(),
            &a,
            DEFAULT_ORDER_CAP,
        )
        .unwrap_err();
        assert!(matches!(err, PermError::NotHomomorphism(_)));
        let err = realize(
            &parse_group_spec("semidirect(cyclic(6), cyclic(2), triple)").unwrap(),
            &a,
            DEFAULT_ORDER_CAP,
        )
        .unwrap_err();
        assert!(matches!(err, PermError::BadAction { .. }));
        let err = realize(
            &parse_group_spec("semidirect(cyclic(5), cyclic(2), zero)").unwrap(),
            &a,
            DEFAULT_ORDER_CAP,
        )
        .unwrap_err();
        assert!(matches!(err, PermError::BadAction { .. }));
        let err = realize(
            &parse_group_spec("semidirect(cyclic(5), cyclic(2), missing)").unwrap(),
            &a,
            DEFAULT_ORDER_CAP,
        )
        .unwrap_err();
        assert!(matches!(err, PermError::UnknownAction(_)));
    }

    #[test]
    fn action_table_text_roundtrip() {
        let t = ActionTable::parse("y1 -> [x0, x0*x1^2]; y0 -> [1, x1]").unwrap();
        assert_eq!(t.to_string(), "y0 -> [1, x1]; y1 -> [x0, x0*x1^2]");
        assert_eq!(ActionTable::parse(&t.to_string()).unwrap(), t);
        assert!(ActionTable::parse("y1 -> [x0]").is_err());
        assert!(ActionTable::parse("y0 -> x0").is_err());
    }

    #[test]
    fn realization_is_reproducible() {
        let a = ActionRegistry::new();
        let s = parse_group_spec("direct(dihedral(4), cyclic(3))").unwrap();
        let g1 = realize(&s, &a, DEFAULT_ORDER_CAP).unwrap();
        let g2 = realize(&s, &a, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g1.elements(), g2.elements());
        assert_eq!(g1.content_hash(), g2.content_hash());
    }
}
