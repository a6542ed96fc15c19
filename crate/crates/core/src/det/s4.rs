//! The S4 group determinant as `ℓ₁ ℓ₂ q₁² d₁³ d₂³`.
//!
//! Coefficient slots follow the S4 table: `a1..a12` are slots `0..12`,
//! `b1..b12` are slots `12..24`. Both the numeric evaluation here and the
//! symbolic polynomials in [`crate::sympoly`] are driven by the same tables
//! below; [`super::reps`] re-derives them from the representation matrices.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::Valuation;
use crate::det::{det3, EisensteinInt};
use crate::error::{Error, Result};
use crate::json;
use crate::ring::RingElement;

/// A matrix entry `Σ signs[t] · x[base + t]` over one coefficient quartet.
#[derive(Debug, Clone, Copy)]
pub struct QuartetForm {
    pub quartet: usize,
    pub signs: [i8; 4],
}

const fn qf(quartet: usize, signs: [i8; 4]) -> QuartetForm {
    QuartetForm { quartet, signs }
}

/// Even part of `Σ x_g ρ₂(g)`; quartets 0, 1, 2 are `a1..a4`, `a5..a8`, `a9..a12`.
pub const MATRIX_A: [[QuartetForm; 3]; 3] = [
    [
        qf(0, [1, -1, -1, 1]),
        qf(2, [1, 1, -1, -1]),
        qf(1, [-1, 1, -1, 1]),
    ],
    [
        qf(1, [1, -1, -1, 1]),
        qf(0, [1, -1, 1, -1]),
        qf(2, [-1, 1, 1, -1]),
    ],
    [
        qf(2, [-1, 1, -1, 1]),
        qf(1, [-1, -1, 1, 1]),
        qf(0, [1, 1, -1, -1]),
    ],
];

/// Odd part of `Σ x_g ρ₂(g)`; quartets 0, 1, 2 are `b1..b4`, `b5..b8`, `b9..b12`.
pub const MATRIX_B: [[QuartetForm; 3]; 3] = [
    [
        qf(2, [1, 1, -1, -1]),
        qf(0, [-1, 1, -1, 1]),
        qf(1, [-1, 1, 1, -1]),
    ],
    [
        qf(0, [1, -1, -1, 1]),
        qf(1, [1, 1, -1, -1]),
        qf(2, [1, -1, 1, -1]),
    ],
    [
        qf(1, [-1, 1, -1, 1]),
        qf(2, [1, -1, -1, 1]),
        qf(0, [-1, -1, 1, 1]),
    ],
];

/// Index sets (1-based within `a` resp. `b`) of the six-term sums `A_i`, `B_i`.
pub const A_SUMS: [[usize; 6]; 3] = [
    [1, 2, 5, 8, 9, 10],
    [1, 3, 6, 8, 10, 12],
    [1, 4, 7, 8, 10, 11],
];
pub const B_SUMS: [[usize; 6]; 3] = [
    [1, 2, 7, 8, 11, 12],
    [2, 3, 5, 8, 10, 11],
    [1, 3, 5, 7, 10, 12],
];

/// Linear form of an entry as `(slot, sign)` pairs. `odd` selects the `b` half.
pub fn entry_terms(f: &QuartetForm, odd: bool) -> [(usize, i64); 4] {
    let base = if odd { 12 } else { 0 } + 4 * f.quartet;
    std::array::from_fn(|t| (base + t, f.signs[t] as i64))
}

fn eval_form(f: &QuartetForm, odd: bool, x: &[BigInt]) -> BigInt {
    entry_terms(f, odd)
        .iter()
        .fold(BigInt::zero(), |acc, &(i, s)| acc + &x[i] * s)
}

/// Quadratic form `x² + y² + z² − xy − yz − zx = |x + yω + zω²|²`.
pub fn quad_form(x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
    x * x + y * y + z * z - x * y - y * z - z * x
}

/// Factor values of one S4 group-ring element plus the auxiliary sums used
/// by the mod-4 and mod-8 congruences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorProfile {
    #[serde(with = "json::bigint")]
    pub l1: BigInt,
    #[serde(with = "json::bigint")]
    pub l2: BigInt,
    #[serde(with = "json::bigint")]
    pub q1: BigInt,
    #[serde(with = "json::bigint")]
    pub d1: BigInt,
    #[serde(with = "json::bigint")]
    pub d2: BigInt,
    #[serde(with = "json::bigint")]
    pub det: BigInt,
    /// 2-adic valuation of `det`.
    pub val2: Valuation,
    /// 3-adic valuation of `det`.
    pub val3: Valuation,
    #[serde(with = "json::bigint")]
    pub u1: BigInt,
    #[serde(with = "json::bigint")]
    pub u2: BigInt,
    #[serde(with = "json::bigint")]
    pub u3: BigInt,
    #[serde(with = "json::bigint")]
    pub v1: BigInt,
    #[serde(with = "json::bigint")]
    pub v2: BigInt,
    #[serde(with = "json::bigint")]
    pub v3: BigInt,
    #[serde(with = "json::bigint")]
    pub u: BigInt,
    #[serde(with = "json::bigint")]
    pub v: BigInt,
    #[serde(with = "json::bigint")]
    pub w: BigInt,
    #[serde(rename = "A", with = "json::bigints")]
    pub a_sums: Vec<BigInt>,
    #[serde(rename = "B", with = "json::bigints")]
    pub b_sums: Vec<BigInt>,
}

impl FactorProfile {
    /// `q₁` recomputed through Eisenstein norms.
    pub fn q1_via_norms(&self) -> BigInt {
        EisensteinInt::from_triple(&self.u1, &self.u2, &self.u3).norm()
            - EisensteinInt::from_triple(&self.v1, &self.v2, &self.v3).norm()
    }
}

fn require_s4(e: &RingElement) -> Result<()> {
    if e.group().is_s4() {
        Ok(())
    } else {
        Err(Error::NotS4(e.group().kind.to_string()))
    }
}

fn cubic_factors(x: &[BigInt]) -> (BigInt, BigInt) {
    let a: [[BigInt; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| eval_form(&MATRIX_A[i][j], false, x)));
    let b: [[BigInt; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| eval_form(&MATRIX_B[i][j], true, x)));
    let plus = std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + &b[i][j]));
    let minus = std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] - &b[i][j]));
    (det3(&plus), det3(&minus))
}

fn quartet_sums(x: &[BigInt], base: usize) -> [BigInt; 3] {
    std::array::from_fn(|q| x[base + 4 * q..base + 4 * q + 4].iter().sum())
}

/// All factor values and auxiliary sums for an S4 element.
pub fn s4_factors(e: &RingElement) -> Result<FactorProfile> {
    require_s4(e)?;
    let x = e.coeffs();
    let [u1, u2, u3] = quartet_sums(x, 0);
    let [v1, v2, v3] = quartet_sums(x, 12);
    let u: BigInt = &u1 + &u2 + &u3;
    let v: BigInt = &v1 + &v2 + &v3;
    let l1 = &u + &v;
    let l2 = &u - &v;
    let q1 = quad_form(&u1, &u2, &u3) - quad_form(&v1, &v2, &v3);
    let (d1, d2) = cubic_factors(x);

    let six =
        |set: &[usize; 6], base: usize| -> BigInt { set.iter().map(|&i| &x[base + i - 1]).sum() };
    let a_sums: Vec<BigInt> = A_SUMS.iter().map(|s| six(s, 0)).collect();
    let b_sums: Vec<BigInt> = B_SUMS.iter().map(|s| six(s, 12)).collect();
    let w = &u1 * &b_sums[0]
        + &u2 * &b_sums[1]
        + &u3 * &b_sums[2]
        + &v1 * &a_sums[0]
        + &v2 * &a_sums[1]
        + &v3 * &a_sums[2];

    let det = assemble(&l1, &l2, &q1, &d1, &d2);
    Ok(FactorProfile {
        val2: Valuation::of(&det, 2),
        val3: Valuation::of(&det, 3),
        l1,
        l2,
        q1,
        d1,
        d2,
        det,
        u1,
        u2,
        u3,
        v1,
        v2,
        v3,
        u,
        v,
        w,
        a_sums,
        b_sums,
    })
}

fn assemble(l1: &BigInt, l2: &BigInt, q1: &BigInt, d1: &BigInt, d2: &BigInt) -> BigInt {
    let dd = d1 * d2;
    l1 * l2 * q1 * q1 * &dd * &dd * &dd
}

/// `ℓ₁ℓ₂q₁²d₁³d₂³` without the auxiliary bookkeeping.
pub fn s4_det_fast(e: &RingElement) -> Result<BigInt> {
    require_s4(e)?;
    let x = e.coeffs();
    let [u1, u2, u3] = quartet_sums(x, 0);
    let [v1, v2, v3] = quartet_sums(x, 12);
    let u: BigInt = &u1 + &u2 + &u3;
    let v: BigInt = &v1 + &v2 + &v3;
    let q1 = quad_form(&u1, &u2, &u3) - quad_form(&v1, &v2, &v3);
    let (d1, d2) = cubic_factors(x);
    Ok(assemble(&(&u + &v), &(&u - &v), &q1, &d1, &d2))
}
