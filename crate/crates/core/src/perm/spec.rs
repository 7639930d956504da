//! Constructor-expression grammar for groups, e.g. `direct(dihedral(4), cyclic(3))`.

use std::fmt;

use super::{is_prime, prime_power, SpecError};

/// Validated abstract syntax tree of a group expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    /// Dihedral group of order `2n`.
    Dihedral(u32),
    /// Dicyclic group of order `4n`; `dicyclic(2)` is Q8.
    Dicyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    ElemAbelian { p: u32, k: u32 },
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: String,
    },
    Psl2(u32),
    /// Explicit generators given as disjoint cycles.
    Raw(Vec<Vec<Vec<u32>>>),
}

impl GroupSpec {
    /// Order predicted by the construction, when it can be known without realizing.
    pub fn expected_order(&self) -> Option<u128> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Dihedral(n) => 2 * *n as u128,
            GroupSpec::Dicyclic(n) => 4 * *n as u128,
            GroupSpec::Symmetric(n) => (1..=*n as u128).product(),
            GroupSpec::Alternating(n) => {
                let f: u128 = (1..=*n as u128).product();
                if *n >= 2 {
                    f / 2
                } else {
                    f
                }
            }
            GroupSpec::ElemAbelian { p, k } => (*p as u128).checked_pow(*k)?,
            GroupSpec::Direct(a, b) => a.expected_order()? * b.expected_order()?,
            GroupSpec::Semidirect { normal, acting, .. } => {
                normal.expected_order()? * acting.expected_order()?
            }
            GroupSpec::Psl2(q) => {
                let q = *q as u128;
                let d = if q % 2 == 1 { 2 } else { 1 };
                q * (q * q - 1) / d
            }
            GroupSpec::Raw(_) => return None,
        })
    }

    /// Action identifiers referenced anywhere in the expression.
    pub fn action_ids(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_actions(&mut out);
        out
    }

    fn collect_actions<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            GroupSpec::Direct(a, b) => {
                a.collect_actions(out);
                b.collect_actions(out);
            }
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => {
                normal.collect_actions(out);
                acting.collect_actions(out);
                out.push(action);
            }
            _ => {}
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupSpec::Alternating(n) => write!(f, "alternating({n})"),
            GroupSpec::ElemAbelian { p, k } => write!(f, "elem_abelian({p}, {k})"),
            GroupSpec::Direct(a, b) => write!(f, "direct({a}, {b})"),
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => write!(f, "semidirect({normal}, {acting}, {action})"),
            GroupSpec::Psl2(q) => write!(f, "psl2({q})"),
            GroupSpec::Raw(gens) => {
                write!(f, "raw(")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    if g.is_empty() {
                        write!(f, "()")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let spec = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Arg {
    Expr(GroupSpec),
    Int(u32),
    Ident(String),
    Perm(Vec<Vec<u32>>),
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> SpecError {
        SpecError::Syntax {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), SpecError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start || self.src[start].is_ascii_digit() {
            self.pos = start;
            None
        } else {
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        }
    }

    fn int(&mut self) -> Result<u32, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| SpecError::Syntax {
                position: start,
                message: "integer out of range".into(),
            })
    }

    fn expr(&mut self) -> Result<GroupSpec, SpecError> {
        let start = self.pos;
        let name = self
            .ident()
            .ok_or_else(|| self.syntax("expected constructor name"))?;
        self.expect(b'(')?;
        let args = if name == "raw" {
            self.perm_args()?
        } else {
            self.args()?
        };
        build(&name, args).map_err(|e| match e {
            SpecError::Syntax { message, .. } => SpecError::Syntax {
                position: start,
                message,
            },
            other => other,
        })
    }

    fn args(&mut self) -> Result<Vec<Arg>, SpecError> {
        let mut out = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => out.push(Arg::Int(self.int()?)),
                Some(_) => {
                    let save = self.pos;
                    let id = self.ident().ok_or_else(|| self.syntax("expected argument"))?;
                    if self.peek() == Some(b'(') {
                        self.pos = save;
                        out.push(Arg::Expr(self.expr()?));
                    } else {
                        out.push(Arg::Ident(id));
                    }
                }
                None => return Err(self.syntax("unexpected end of input")),
            }
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.syntax("expected ',' or ')'")),
            }
        }
    }

    fn perm_args(&mut self) -> Result<Vec<Arg>, SpecError> {
        let mut out = Vec::new();
        loop {
            let mut cycles = Vec::new();
            if self.peek() != Some(b'(') {
                return Err(self.syntax("expected cycle"));
            }
            while self.peek() == Some(b'(') {
                self.pos += 1;
                let mut cycle = Vec::new();
                loop {
                    match self.peek() {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(b',') if !cycle.is_empty() => self.pos += 1,
                        Some(c) if c.is_ascii_digit() => cycle.push(self.int()?),
                        _ => return Err(self.syntax("malformed cycle")),
                    }
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
            }
            out.push(Arg::Perm(cycles));
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.syntax("expected ',' or ')'")),
            }
        }
    }
}

fn int_args(name: &str, args: &[Arg], n: usize) -> Result<Vec<u32>, SpecError> {
    if args.len() != n {
        return Err(SpecError::Arity {
            name: name.to_string(),
            expected: n,
            found: args.len(),
        });
    }
    args.iter()
        .map(|a| match a {
            Arg::Int(v) => Ok(*v),
            _ => Err(SpecError::Syntax {
                position: 0,
                message: format!("{name} expects integer arguments"),
            }),
        })
        .collect()
}

fn positive(name: &str, n: u32) -> Result<u32, SpecError> {
    if n == 0 {
        Err(SpecError::Domain(format!("{name}: parameter must be at least 1")))
    } else {
        Ok(n)
    }
}

fn build(name: &str, args: Vec<Arg>) -> Result<GroupSpec, SpecError> {
    Ok(match name {
        "cyclic" => GroupSpec::Cyclic(positive(name, int_args(name, &args, 1)?[0])?),
        "dihedral" => GroupSpec::Dihedral(positive(name, int_args(name, &args, 1)?[0])?),
        "dicyclic" => GroupSpec::Dicyclic(positive(name, int_args(name, &args, 1)?[0])?),
        "symmetric" => GroupSpec::Symmetric(positive(name, int_args(name, &args, 1)?[0])?),
        "alternating" => GroupSpec::Alternating(positive(name, int_args(name, &args, 1)?[0])?),
        "elem_abelian" => {
            let v = int_args(name, &args, 2)?;
            if !is_prime(v[0] as u64) {
                return Err(SpecError::Domain(format!(
                    "elem_abelian: {} is not prime",
                    v[0]
                )));
            }
            GroupSpec::ElemAbelian {
                p: v[0],
                k: positive(name, v[1])?,
            }
        }
        "psl2" => {
            let q = int_args(name, &args, 1)?[0];
            if prime_power(q as u64).is_none() {
                return Err(SpecError::Domain(format!("psl2: {q} is not a prime power")));
            }
            if q > 13 {
                return Err(SpecError::Domain(format!(
                    "psl2: field size {q} exceeds the supported maximum 13"
                )));
            }
            GroupSpec::Psl2(q)
        }
        "direct" | "semidirect" => {
            let want = if name == "direct" { 2 } else { 3 };
            if args.len() != want {
                return Err(SpecError::Arity {
                    name: name.to_string(),
                    expected: want,
                    found: args.len(),
                });
            }
            let mut it = args.into_iter();
            let a = expr_arg(name, it.next().unwrap())?;
            let b = expr_arg(name, it.next().unwrap())?;
            if name == "direct" {
                GroupSpec::Direct(Box::new(a), Box::new(b))
            } else {
                let action = match it.next().unwrap() {
                    Arg::Ident(s) => s,
                    _ => {
                        return Err(SpecError::Syntax {
                            position: 0,
                            message: "semidirect: third argument must be an action id".into(),
                        })
                    }
                };
                GroupSpec::Semidirect {
                    normal: Box::new(a),
                    acting: Box::new(b),
                    action,
                }
            }
        }
        "raw" => {
            let gens = args
                .into_iter()
                .map(|a| match a {
                    Arg::Perm(c) => c,
                    _ => unreachable!("raw arguments are parsed as permutations"),
                })
                .collect::<Vec<_>>();
            for g in &gens {
                let mut seen = std::collections::HashSet::new();
                for &x in g.iter().flatten() {
                    if !seen.insert(x) {
                        return Err(SpecError::Domain(format!(
                            "raw: point {x} repeated within one permutation"
                        )));
                    }
                }
            }
            GroupSpec::Raw(gens)
        }
        other => return Err(SpecError::UnknownConstructor(other.to_string())),
    })
}

fn expr_arg(name: &str, a: Arg) -> Result<GroupSpec, SpecError> {
    match a {
        Arg::Expr(e) => Ok(e),
        _ => Err(SpecError::Syntax {
            position: 0,
            message: format!("{name}: expected a group expression"),
        }),
    }
}
