//! Exact group determinants.
//!
//! [`det_exact`] works for any group by fraction-free elimination on the
//! group matrix. For S4 the [`s4`] submodule evaluates the factored form
//! `ℓ₁ℓ₂q₁²d₁³d₂³` directly, and [`reps`] holds the representation tables
//! the factors are derived from.

pub mod eisenstein;
pub mod reps;
pub mod s4;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::group::GroupTable;
use crate::ring::RingElement;

pub use eisenstein::EisensteinInt;
pub use reps::{rep_factor_check, RepTable};
pub use s4::{s4_det_fast, s4_factors, FactorProfile};

/// The matrix with `(i, j)` entry `x_{g_i g_j^{-1}}`.
pub fn group_matrix(g: &GroupTable, coeffs: &[BigInt]) -> Vec<Vec<BigInt>> {
    (0..g.order)
        .map(|i| {
            (0..g.order)
                .map(|j| coeffs[g.op(i, g.inv[j])].clone())
                .collect()
        })
        .collect()
}

/// Group determinant of `e` over its own group.
pub fn det_exact(e: &RingElement) -> BigInt {
    let m = group_matrix(e.group(), e.coeffs());
    determinant(m)
}

/// Integer determinant by one-step fraction-free (Bareiss) elimination.
/// Tries checked `i128` arithmetic first and restarts with big integers on
/// overflow.
pub fn determinant(m: Vec<Vec<BigInt>>) -> BigInt {
    let small: Option<Vec<Vec<i128>>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.to_i128()).collect())
        .collect();
    if let Some(small) = small {
        if let Some(d) = bareiss_i128(small) {
            return BigInt::from(d);
        }
    }
    bareiss_big(m)
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return Some(0);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = pivot_row[k];
        for row in tail.iter_mut() {
            let lead = row[k];
            for j in k + 1..n {
                let t = row[j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(pivot_row[j])?)?;
                row[j] = t / prev;
            }
            row[k] = 0;
        }
        prev = pivot;
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let t = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = t / &prev;
            }
        }
        prev = pivot.clone();
    }
    let d = m[n - 1].pop().expect("nonempty row");
    if negate {
        -d
    } else {
        d
    }
}

/// 3×3 integer determinant by cofactor expansion.
pub fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}
