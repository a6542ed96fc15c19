//! Small integer utilities: valuations, residues, primality of small moduli.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// p-adic valuation, with `Infinite` standing for the valuation of 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn of(n: &BigInt, p: u32) -> Valuation {
        if n.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(split_prime(n, p).0)
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(e) => s.serialize_u32(*e),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Writes nonzero `n` as `p^e · r` with `p ∤ r`; returns `(e, r)`.
pub fn split_prime(n: &BigInt, p: u32) -> (u32, BigInt) {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut e = 0;
    let mut r = n.clone();
    loop {
        let (q, rem) = r.div_rem(&p);
        if !rem.is_zero() {
            return (e, r);
        }
        r = q;
        e += 1;
    }
}

/// Least nonnegative residue of `n` mod `m`.
pub fn residue(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m))
        .to_u32()
        .expect("residue fits the modulus")
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Positive divisors of `n`, ascending, by trial division.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn abs_u64(n: &BigInt) -> Option<u64> {
    n.abs().to_u64()
}
