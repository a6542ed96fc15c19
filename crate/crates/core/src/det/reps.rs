//! Irreducible representations of S4 used to derive the factor matrices.
//!
//! `rho1` is two-dimensional over Z[ω]; `rho2` comes from the action of S4
//! on `{x ∈ Z⁴ : Σx = 0}` in the basis `e1+e2−e3−e4, −e1+e2+e3−e4,
//! e1−e2+e3−e4`; `rho3 = sgn · rho2`. Tables are indexed like the S4
//! coefficient slots.

use crate::det::EisensteinInt;
use crate::group::GroupTable;
use crate::sympoly::{symbolic, symbolic_det, SparsePoly};

pub type IntMat3 = [[i64; 3]; 3];
pub type EisMat2 = [[EisensteinInt; 2]; 2];

#[rustfmt::skip]
const RHO2: [IntMat3; 24] = [
    // 1, (13)(24), (14)(23), (12)(34)
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
    [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
    [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
    // (134), (243), (142), (123)
    [[0, 0, -1], [1, 0, 0], [0, -1, 0]],
    [[0, 0, 1], [-1, 0, 0], [0, -1, 0]],
    [[0, 0, -1], [-1, 0, 0], [0, 1, 0]],
    [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
    // (143), (132), (124), (234)
    [[0, 1, 0], [0, 0, -1], [-1, 0, 0]],
    [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    [[0, -1, 0], [0, 0, 1], [-1, 0, 0]],
    [[0, -1, 0], [0, 0, -1], [1, 0, 0]],
    // (1234), (1432), (24), (13)
    [[0, -1, 0], [1, 0, 0], [0, 0, -1]],
    [[0, 1, 0], [-1, 0, 0], [0, 0, -1]],
    [[0, -1, 0], [-1, 0, 0], [0, 0, 1]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    // (14), (23), (1243), (1342)
    [[0, 0, -1], [0, 1, 0], [-1, 0, 0]],
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    [[0, 0, 1], [0, -1, 0], [-1, 0, 0]],
    [[0, 0, -1], [0, -1, 0], [1, 0, 0]],
    // (12), (34), (1324), (1423)
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[1, 0, 0], [0, 0, -1], [0, -1, 0]],
    [[-1, 0, 0], [0, 0, 1], [0, -1, 0]],
    [[-1, 0, 0], [0, 0, -1], [0, 1, 0]],
];

/// `rho1` is constant on each quartet of slots; entries are `(kind, ω-power)`
/// where kind 0 is diagonal `diag(ω^p, ω^-p)` and kind 1 is anti-diagonal
/// `[[0, ω^-p], [ω^p, 0]]`.
const RHO1_QUARTETS: [(u8, i64); 6] = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (1, 1)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTable {
    pub rho1: Vec<EisMat2>,
    pub rho2: Vec<IntMat3>,
    pub rho3: Vec<IntMat3>,
}

impl RepTable {
    pub fn s4() -> RepTable {
        let rho1 = (0..24)
            .map(|g| {
                let (kind, p) = RHO1_QUARTETS[g / 4];
                let w = EisensteinInt::omega_pow(p);
                let wbar = EisensteinInt::omega_pow(-p);
                let z = EisensteinInt::zero();
                if kind == 0 {
                    [[w, z.clone()], [z, wbar]]
                } else {
                    [[z.clone(), wbar], [w, z]]
                }
            })
            .collect();
        let rho2 = RHO2.to_vec();
        let rho3 = RHO2
            .iter()
            .enumerate()
            .map(|(g, m)| if g < 12 { *m } else { m.map(|r| r.map(|x| -x)) })
            .collect();
        RepTable { rho1, rho2, rho3 }
    }

    /// `ρ(g)ρ(h) = ρ(gh)` for every pair, for all three tables.
    pub fn is_homomorphism(&self, g: &GroupTable) -> bool {
        self.homomorphism_failures(g) == [0, 0, 0]
    }

    /// Number of failing pairs per table (`rho1`, `rho2`, `rho3`).
    pub fn homomorphism_failures(&self, g: &GroupTable) -> [usize; 3] {
        let mut fails = [0; 3];
        for a in 0..g.order {
            for b in 0..g.order {
                let ab = g.op(a, b);
                if mul2(&self.rho1[a], &self.rho1[b]) != self.rho1[ab] {
                    fails[0] += 1;
                }
                if mul3(&self.rho2[a], &self.rho2[b]) != self.rho2[ab] {
                    fails[1] += 1;
                }
                if mul3(&self.rho3[a], &self.rho3[b]) != self.rho3[ab] {
                    fails[2] += 1;
                }
            }
        }
        fails
    }
}

fn mul3(a: &IntMat3, b: &IntMat3) -> IntMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn mul2(a: &EisMat2, b: &EisMat2) -> EisMat2 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))
    })
}

/// `Σ_g x_g ρ(g)` with symbolic `x_g`.
fn symbolic_sum3(table: &[IntMat3]) -> Vec<Vec<SparsePoly>> {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let terms: Vec<(usize, i64)> = table
                        .iter()
                        .enumerate()
                        .map(|(g, m)| (g, m[i][j]))
                        .collect();
                    SparsePoly::linear(&terms)
                })
                .collect()
        })
        .collect()
}

/// Polynomial with Eisenstein coefficients, stored as `re + om·ω`.
#[derive(Clone)]
struct EisPoly {
    re: SparsePoly,
    om: SparsePoly,
}

impl EisPoly {
    fn mul(&self, o: &EisPoly) -> EisPoly {
        let bd = &self.om * &o.om;
        EisPoly {
            re: &(&self.re * &o.re) - &bd,
            om: &(&(&self.re * &o.om) + &(&self.om * &o.re)) - &bd,
        }
    }

    fn sub(&self, o: &EisPoly) -> EisPoly {
        EisPoly {
            re: &self.re - &o.re,
            om: &self.om - &o.om,
        }
    }
}

fn symbolic_sum2(table: &[EisMat2]) -> [[EisPoly; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let part = |f: fn(&EisensteinInt) -> i64| {
                let terms: Vec<(usize, i64)> = table
                    .iter()
                    .enumerate()
                    .map(|(g, m)| (g, f(&m[i][j])))
                    .collect();
                SparsePoly::linear(&terms)
            };
            EisPoly {
                re: part(|e| i64::try_from(&e.x).expect("table entries are small")),
                om: part(|e| i64::try_from(&e.y).expect("table entries are small")),
            }
        })
    })
}

/// Symbolic determinants of the three representation sums.
pub struct RepDeterminants {
    pub from_rho1: SparsePoly,
    /// ω-part of the `rho1` determinant; zero when the result is rational.
    pub rho1_omega_part: SparsePoly,
    pub from_rho2: SparsePoly,
    pub from_rho3: SparsePoly,
}

pub fn rep_determinants(tables: &RepTable) -> RepDeterminants {
    let m = symbolic_sum2(&tables.rho1);
    let det1 = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    RepDeterminants {
        from_rho1: det1.re,
        rho1_omega_part: det1.om,
        from_rho2: symbolic_det(&symbolic_sum3(&tables.rho2)),
        from_rho3: symbolic_det(&symbolic_sum3(&tables.rho3)),
    }
}

/// True iff the representation sums reproduce `q₁`, `d₁`, `d₂` exactly.
pub fn rep_factor_check(tables: &RepTable) -> bool {
    let dets = rep_determinants(tables);
    let f = symbolic();
    dets.rho1_omega_part.is_zero()
        && dets.from_rho1 == f.q1
        && dets.from_rho2 == f.d1
        && dets.from_rho3 == f.d2
}
