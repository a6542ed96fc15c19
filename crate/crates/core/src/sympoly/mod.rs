//! Sparse multivariate polynomials in the 24 S4 coefficient variables
//! `a1..a12, b1..b12`, with big-integer or modular coefficients.

pub mod identities;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use identities::{
    build_symbolic, check_identity, check_identity_with, symbolic, IdentityId, IdentityReport,
    SymbolicFactors,
};

pub const NVARS: usize = 24;
const BITS: u32 = 5;
const FIELD: u128 = (1 << BITS) - 1;
/// Largest exponent a single variable may carry.
pub const MAX_VAR_EXP: u32 = (1 << BITS) - 1;

/// Exponent vector packed into a `u128`, five bits per variable, variable 0
/// in the most significant field so integer order is lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(var: usize) -> u32 {
        BITS * (NVARS - 1 - var) as u32
    }

    pub fn var(var: usize) -> Monomial {
        assert!(var < NVARS, "variable index {var} out of range");
        Monomial(1u128 << Self::shift(var))
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= NVARS);
        let mut packed = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_VAR_EXP, "exponent {e} exceeds {MAX_VAR_EXP}");
            packed |= (e as u128) << Self::shift(i);
        }
        Monomial(packed)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & FIELD) as u32
    }

    pub fn exponents(&self) -> [u32; NVARS] {
        std::array::from_fn(|i| self.exponent(i))
    }

    pub fn degree(&self) -> u32 {
        (0..NVARS).map(|i| self.exponent(i)).sum()
    }

    /// Product; the caller guarantees no field overflows.
    fn mul_unchecked(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    fn max_exponents(&self, acc: &mut [u32; NVARS]) {
        for (i, slot) in acc.iter_mut().enumerate() {
            *slot = (*slot).max(self.exponent(i));
        }
    }
}

pub fn var_name(i: usize) -> String {
    if i < 12 {
        format!("a{}", i + 1)
    } else {
        format!("b{}", i - 11)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..NVARS {
            let e = self.exponent(i);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Map from monomial to nonzero coefficient. With a modulus set, every
/// coefficient is the canonical representative in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigInt>,
    modulus: Option<BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::ONE, c.into());
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(i), BigInt::one());
        p
    }

    /// `Σ c·x_i` from `(variable, coefficient)` pairs.
    pub fn linear(terms: &[(usize, i64)]) -> Self {
        let mut p = Self::zero();
        for &(i, c) in terms {
            p.add_term(Monomial::var(i), BigInt::from(c));
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn normalize(&self, c: BigInt) -> BigInt {
        match &self.modulus {
            Some(m) => c.mod_floor(m),
            None => c,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self_normalize(&self.modulus, o.get() + c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_moduli(&self, other: &SparsePoly) -> Result<Option<BigInt>> {
        if self.modulus == other.modulus {
            Ok(self.modulus.clone())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_moduli(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_moduli(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> SparsePoly {
        let k = k.into();
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            modulus: self.modulus.clone(),
        };
        for (m, c) in &self.terms {
            out.add_term(*m, c * &k);
        }
        out
    }

    /// Term-by-term product with hash aggregation. Accumulates in `i128`
    /// when the coefficient sizes guarantee no overflow.
    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        let modulus = self.check_moduli(other)?;
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            modulus,
        };
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }

        let mut ea = [0u32; NVARS];
        let mut eb = [0u32; NVARS];
        self.terms.keys().for_each(|m| m.max_exponents(&mut ea));
        other.terms.keys().for_each(|m| m.max_exponents(&mut eb));
        if let Some(i) = (0..NVARS).find(|&i| ea[i] + eb[i] > MAX_VAR_EXP) {
            panic!(
                "exponent of {} exceeds {MAX_VAR_EXP} in product",
                var_name(i)
            );
        }

        let bits = |p: &SparsePoly| p.terms.values().map(|c| c.bits()).max().unwrap_or(0);
        let fan_in = self.len().min(other.len()) as u64;
        let bound = bits(self) + bits(other) + (64 - fan_in.leading_zeros() as u64);
        let capacity = self.len().saturating_mul(other.len()).min(1 << 22);

        if bound < 126 {
            let lhs: Vec<(Monomial, i128)> = small_terms(self);
            let rhs: Vec<(Monomial, i128)> = small_terms(other);
            let mut acc: HashMap<Monomial, i128> = HashMap::with_capacity(capacity);
            for &(ma, ca) in &lhs {
                for &(mb, cb) in &rhs {
                    *acc.entry(ma.mul_unchecked(mb)).or_insert(0) += ca * cb;
                }
            }
            for (m, c) in acc {
                out.add_term(m, BigInt::from(c));
            }
        } else {
            let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(capacity);
            for (ma, ca) in &self.terms {
                for (mb, cb) in &other.terms {
                    *acc.entry(ma.mul_unchecked(*mb)).or_default() += ca * cb;
                }
            }
            for (m, c) in acc {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::constant(1).with_modulus_of(self);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn with_modulus_of(self, other: &SparsePoly) -> SparsePoly {
        match &other.modulus {
            Some(m) => self.reduce_mod(m),
            None => self,
        }
    }

    /// Reduces every coefficient into `[0, m)` and records the modulus.
    pub fn reduce_mod(&self, m: &BigInt) -> SparsePoly {
        assert!(m.is_positive(), "modulus must be positive");
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            modulus: Some(m.clone()),
        };
        for (mono, c) in &self.terms {
            out.add_term(*mono, c.clone());
        }
        out
    }

    /// Divides every coefficient by `k`, or returns the terms that are not
    /// divisible.
    pub fn div_exact(&self, k: &BigInt) -> std::result::Result<SparsePoly, SparsePoly> {
        assert!(
            self.modulus.is_none(),
            "exact division needs integer coefficients"
        );
        let (good, bad): (Vec<_>, Vec<_>) = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.div_rem(k)))
            .partition(|(_, (_, r))| r.is_zero());
        if bad.is_empty() {
            Ok(SparsePoly::from_terms(
                good.into_iter().map(|(m, (q, _))| (m, q)),
            ))
        } else {
            Err(SparsePoly::from_terms(
                self.terms
                    .iter()
                    .filter(|(_, c)| !c.is_multiple_of(k))
                    .map(|(m, c)| (*m, c.clone())),
            ))
        }
    }

    /// Substitutes `x_i → −x_i` for every `i` in `vars`.
    pub fn negate_vars(&self, vars: impl Fn(usize) -> bool) -> SparsePoly {
        let mut out = SparsePoly {
            terms: BTreeMap::new(),
            modulus: self.modulus.clone(),
        };
        for (m, c) in &self.terms {
            let flips: u32 = (0..NVARS).filter(|&i| vars(i)).map(|i| m.exponent(i)).sum();
            out.add_term(*m, if flips % 2 == 1 { -c } else { c.clone() });
        }
        out
    }

    /// Evaluates at an integer point (reduced mod the modulus if set).
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), NVARS);
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += term;
        }
        self.normalize(total)
    }
}

fn self_normalize(modulus: &Option<BigInt>, c: BigInt) -> BigInt {
    match modulus {
        Some(m) => c.mod_floor(m),
        None => c,
    }
}

fn small_terms(p: &SparsePoly) -> Vec<(Monomial, i128)> {
    p.terms
        .iter()
        .map(|(m, c)| (*m, c.to_i128().expect("bounded by the bit check")))
        .collect()
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        if let Some(m) = &self.modulus {
            write!(f, " (mod {m})")?;
        }
        Ok(())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, o: &SparsePoly) -> SparsePoly {
        self.try_add(o).expect("modulus mismatch")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, o: &SparsePoly) -> SparsePoly {
        self.try_sub(o).expect("modulus mismatch")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, o: &SparsePoly) -> SparsePoly {
        self.try_mul(o).expect("modulus mismatch")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(-1)
    }
}

pub fn poly_add(p: &SparsePoly, q: &SparsePoly) -> Result<SparsePoly> {
    p.try_add(q)
}

pub fn poly_mul(p: &SparsePoly, q: &SparsePoly) -> Result<SparsePoly> {
    p.try_mul(q)
}

pub fn poly_mod(p: &SparsePoly, m: u64) -> SparsePoly {
    p.reduce_mod(&BigInt::from(m))
}

/// Cofactor-expansion determinant of a square matrix of size at most 3.
pub fn symbolic_det(m: &[Vec<SparsePoly>]) -> SparsePoly {
    let n = m.len();
    assert!(
        n <= 3 && m.iter().all(|r| r.len() == n),
        "square matrix of size ≤ 3 expected"
    );
    match n {
        0 => SparsePoly::constant(1),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let minor = |r1: usize, c1: usize, r2: usize, c2: usize| {
                &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
            };
            let t0 = &m[0][0] * &minor(1, 1, 2, 2);
            let t1 = &m[0][1] * &minor(1, 0, 2, 2);
            let t2 = &m[0][2] * &minor(1, 0, 2, 1);
            &(&t0 - &t1) + &t2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(i: usize) -> SparsePoly {
        SparsePoly::var(i - 1)
    }
    fn b(i: usize) -> SparsePoly {
        SparsePoly::var(11 + i)
    }

    #[test]
    fn monomial_packing() {
        let mut e = [0u32; NVARS];
        e[0] = 3;
        e[23] = 31;
        e[7] = 2;
        let m = Monomial::from_exponents(&e);
        assert_eq!(m.exponents(), e);
        assert_eq!(m.degree(), 36);
        assert!(Monomial::var(0) > Monomial::var(1));
        assert_eq!(Monomial::var(12).to_string(), "b1");
    }

    #[test]
    fn ring_basics() {
        let p = &(&a(1) * &b(3)) + &SparsePoly::constant(7);
        assert_eq!(&p + &SparsePoly::zero(), p);
        assert_eq!(&p * &SparsePoly::constant(1), p);
        assert!((&p - &p).is_zero());
        let lhs = &(&a(1) + &b(1)) * &(&a(1) - &b(1));
        let rhs = &(&a(1) * &a(1)) - &(&b(1) * &b(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_of_linear_form_term_counts() {
        let ones: Vec<(usize, i64)> = (0..24).map(|i| (i, 1)).collect();
        let l1 = SparsePoly::linear(&ones);
        let signed: Vec<(usize, i64)> = (0..24).map(|i| (i, if i < 12 { 1 } else { -1 })).collect();
        let l2 = SparsePoly::linear(&signed);
        // 24 squares + C(24, 2) cross terms
        assert_eq!((&l1 * &l1).len(), 300);
        // (Σa)² − (Σb)²: the a·b cross terms cancel, leaving 2·(12 + 66)
        let prod = &l1 * &l2;
        assert_eq!(prod.len(), 156);
        assert!(prod.is_homogeneous(2));
    }

    #[test]
    fn modular_reduction() {
        let p = SparsePoly::linear(&[(0, 5), (1, -3), (2, 8)]);
        let r = poly_mod(&p, 4);
        assert_eq!(r.coeff(&Monomial::var(0)), BigInt::from(1));
        assert_eq!(r.coeff(&Monomial::var(1)), BigInt::from(1));
        assert_eq!(r.len(), 2);
        assert!(matches!(poly_add(&p, &r), Err(Error::ModulusMismatch)));
        assert!(matches!(poly_mul(&p, &r), Err(Error::ModulusMismatch)));
        let sq = poly_mul(&r, &r).unwrap();
        assert_eq!(sq, poly_mod(&(&p * &p), 4));
    }

    #[test]
    fn exact_division_reports_residue() {
        let p = SparsePoly::linear(&[(0, 8), (1, -4), (2, 6)]);
        let residue = p.div_exact(&BigInt::from(4)).unwrap_err();
        assert_eq!(residue, SparsePoly::linear(&[(2, 6)]));
        let q = SparsePoly::linear(&[(0, 8), (1, -4)])
            .div_exact(&BigInt::from(4))
            .unwrap();
        assert_eq!(q, SparsePoly::linear(&[(0, 2), (1, -1)]));
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let huge: BigInt = BigInt::from(1) << 100usize;
        let p = SparsePoly::from_terms([
            (Monomial::var(0), huge.clone()),
            (Monomial::var(1), BigInt::from(1)),
        ]);
        let sq = &p * &p;
        assert_eq!(sq.coeff(&Monomial::from_exponents(&[2])), &huge * &huge);
        assert_eq!(sq.coeff(&Monomial::from_exponents(&[1, 1])), &huge * 2);
    }

    #[test]
    fn determinants() {
        let one = SparsePoly::constant(1);
        let zero = SparsePoly::zero();
        let id = vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ];
        assert_eq!(symbolic_det(&id), one);
        let m = vec![vec![a(1), a(2)], vec![a(3), a(4)]];
        assert_eq!(symbolic_det(&m), &(&a(1) * &a(4)) - &(&a(2) * &a(3)));
    }

    #[test]
    fn negate_vars_flips_odd_powers() {
        let p = &(&(&a(1) * &b(1)) * &b(2)) + &(&a(2) * &b(1));
        let q = p.negate_vars(|i| i >= 12);
        assert_eq!(q, &(&(&a(1) * &b(1)) * &b(2)) - &(&a(2) * &b(1)));
    }

    fn small_poly() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((0usize..24, 0u32..3, -20i64..20), 0..6).prop_map(|ts| {
            SparsePoly::from_terms(ts.into_iter().map(|(v, e, c)| {
                let mut ex = [0u32; NVARS];
                ex[v] = e;
                ex[(v + 5) % NVARS] += 1;
                (Monomial::from_exponents(&ex), BigInt::from(c))
            }))
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_homomorphism(p in small_poly(), q in small_poly(),
                                        pt in prop::collection::vec(-4i64..5, 24)) {
            let pt: Vec<BigInt> = pt.into_iter().map(BigInt::from).collect();
            prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
            prop_assert_eq!((&p + &q).eval(&pt), p.eval(&pt) + q.eval(&pt));
        }

        #[test]
        fn multiplication_commutes_and_reduction_commutes(p in small_poly(), q in small_poly()) {
            prop_assert_eq!(&p * &q, &q * &p);
            let m = BigInt::from(8);
            prop_assert_eq!((&p * &q).reduce_mod(&m), &p.reduce_mod(&m) * &q.reduce_mod(&m));
        }
    }
}
