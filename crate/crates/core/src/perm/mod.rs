//! Permutation groups: elements, constructors, stabilizer chains and quotients.

mod construct;
mod group;
mod permutation;
mod quotient;
mod schreier;
mod spec;

use thiserror::Error;

pub use construct::{realize, ActionRegistry, ActionTable, Word};
pub use group::{enumerate_elements, Elem, FiniteGroup};
pub use permutation::Permutation;
pub use quotient::{is_normal_set, quotient_group, Quotient};
pub use schreier::{stabilizer_chain_order, StabilizerChain};
pub use spec::{parse_group_spec, GroupSpec};

/// Largest element table materialized by default.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{name} takes {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("unknown constructor '{0}'")]
    UnknownConstructor(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list {0:?} is not a bijection")]
    NotBijection(Vec<u32>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("point {0} appears in more than one cycle")]
    OverlappingCycles(u32),
    #[error("empty generator list")]
    NoGenerators,
    #[error("generators have different degrees")]
    MixedDegrees,
    #[error("element table exceeds the order cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element table has {table} elements but the stabilizer chain gives {chain}")]
    OrderMismatch { table: usize, chain: u128 },
    #[error("construction should have order {expected} but realized {got}")]
    TheoreticalOrderMismatch { expected: u128, got: usize },
    #[error("unknown action table '{0}'")]
    UnknownAction(String),
    #[error("action table '{id}' is invalid: {reason}")]
    BadAction { id: String, reason: String },
    #[error("action table '{0}' does not define a homomorphism into the automorphism group")]
    NotHomomorphism(String),
    #[error("subgroup is not normal")]
    NotNormal,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(p, k)` with `n = p^k`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    match f.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Prime factorization in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_theory() {
        assert!(is_prime(13));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(factorize(1092), vec![(2, 2), (3, 1), (7, 1), (13, 1)]);
    }
}
