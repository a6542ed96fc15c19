//! The S4 factor polynomials and the congruence identities between them.
//!
//! Every identity is checked over the integers first and reduced afterwards,
//! so a failure reports the offending monomials.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use super::{symbolic_det, SparsePoly};
use crate::det::s4::{entry_terms, A_SUMS, B_SUMS, MATRIX_A, MATRIX_B};
use crate::error::{Error, Result};

/// Symbolic forms of the factors and auxiliary sums.
#[derive(Debug, Clone)]
pub struct SymbolicFactors {
    pub l1: SparsePoly,
    pub l2: SparsePoly,
    pub q1: SparsePoly,
    pub d1: SparsePoly,
    pub d2: SparsePoly,
    pub u: SparsePoly,
    pub v: SparsePoly,
    pub w: SparsePoly,
    pub u_parts: [SparsePoly; 3],
    pub v_parts: [SparsePoly; 3],
    pub a_sums: [SparsePoly; 3],
    pub b_sums: [SparsePoly; 3],
}

fn quartet(base: usize) -> SparsePoly {
    SparsePoly::linear(&[(base, 1), (base + 1, 1), (base + 2, 1), (base + 3, 1)])
}

fn quad_form(x: &SparsePoly, y: &SparsePoly, z: &SparsePoly) -> SparsePoly {
    let sq = &(&(x * x) + &(y * y)) + &(z * z);
    let cross = &(&(x * y) + &(y * z)) + &(z * x);
    &sq - &cross
}

pub fn build_symbolic() -> SymbolicFactors {
    let u_parts = [quartet(0), quartet(4), quartet(8)];
    let v_parts = [quartet(12), quartet(16), quartet(20)];
    let u = &(&u_parts[0] + &u_parts[1]) + &u_parts[2];
    let v = &(&v_parts[0] + &v_parts[1]) + &v_parts[2];
    let l1 = &u + &v;
    let l2 = &u - &v;
    let q1 = &quad_form(&u_parts[0], &u_parts[1], &u_parts[2])
        - &quad_form(&v_parts[0], &v_parts[1], &v_parts[2]);

    let a: Vec<Vec<SparsePoly>> = MATRIX_A
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| SparsePoly::linear(&entry_terms(f, false)))
                .collect()
        })
        .collect();
    let b: Vec<Vec<SparsePoly>> = MATRIX_B
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| SparsePoly::linear(&entry_terms(f, true)))
                .collect()
        })
        .collect();
    let combine = |sign: i64| -> Vec<Vec<SparsePoly>> {
        (0..3)
            .map(|i| (0..3).map(|j| &a[i][j] + &b[i][j].scale(sign)).collect())
            .collect()
    };
    let d1 = symbolic_det(&combine(1));
    let d2 = symbolic_det(&combine(-1));

    let six = |set: &[usize; 6], base: usize| SparsePoly::linear(&set.map(|i| (base + i - 1, 1)));
    let a_sums = A_SUMS.map(|s| six(&s, 0));
    let b_sums = B_SUMS.map(|s| six(&s, 12));
    let mut w = SparsePoly::zero();
    for i in 0..3 {
        w = &w + &(&u_parts[i] * &b_sums[i]);
        w = &w + &(&v_parts[i] * &a_sums[i]);
    }

    SymbolicFactors {
        l1,
        l2,
        q1,
        d1,
        d2,
        u,
        v,
        w,
        u_parts,
        v_parts,
        a_sums,
        b_sums,
    }
}

/// Lazily built, process-wide copy of [`build_symbolic`].
pub fn symbolic() -> &'static SymbolicFactors {
    static CELL: OnceLock<SymbolicFactors> = OnceLock::new();
    CELL.get_or_init(build_symbolic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityId {
    /// `ℓ₁ ≡ ℓ₂ (mod 2)`
    LMod2,
    /// `d₁ ≡ d₂ (mod 2)`
    DMod2,
    /// `q₁ ≡ ℓ₁ℓ₂ (mod 3)`
    QMod3,
    /// `d₁d₂ ≡ ℓ₁ℓ₂q₁² (mod 4)`
    ProdMod4,
    /// `d₁ + d₂ ≡ (ℓ₁ + ℓ₂)q₁ (mod 4)`
    SumMod4,
    /// `d₁ = ℓ₁(q₁ + 2uv + 2w) + 4C(a, b)` with its mirror for `d₂`
    D1Expansion,
    /// `d₁ + d₂ ≡ 2uq₁ + 4uv² + 4vw (mod 8)`
    SumMod8,
    /// `d₁ − d₂ ≡ 2vq₁ + 4u²v + 4uw (mod 8)`
    DiffMod8,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::LMod2,
        IdentityId::DMod2,
        IdentityId::QMod3,
        IdentityId::ProdMod4,
        IdentityId::SumMod4,
        IdentityId::D1Expansion,
        IdentityId::SumMod8,
        IdentityId::DiffMod8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::LMod2 => "L_MOD2",
            IdentityId::DMod2 => "D_MOD2",
            IdentityId::QMod3 => "Q_MOD3",
            IdentityId::ProdMod4 => "PROD_MOD4",
            IdentityId::SumMod4 => "SUM_MOD4",
            IdentityId::D1Expansion => "D1_EXPANSION",
            IdentityId::SumMod8 => "SUM_MOD8",
            IdentityId::DiffMod8 => "DIFF_MOD8",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::Input(format!("unknown identity `{s}`")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub holds: bool,
    pub modulus: u32,
    /// Monomials left after reduction (zero when the identity holds).
    pub residual_term_count: usize,
    /// Up to eight residual terms, for diagnostics.
    pub residual_sample: Vec<String>,
    /// Term count of the unreduced difference.
    pub difference_terms: usize,
    /// For `D1_EXPANSION`: number of terms of `C(a, b)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_terms: Option<usize>,
    #[serde(skip)]
    pub quotient: Option<SparsePoly>,
}

fn sample(p: &SparsePoly) -> Vec<String> {
    p.terms().take(8).map(|(m, c)| format!("{c}*{m}")).collect()
}

fn congruence(id: IdentityId, diff: SparsePoly, modulus: u32) -> IdentityReport {
    let reduced = diff.reduce_mod(&BigInt::from(modulus));
    IdentityReport {
        id,
        holds: reduced.is_zero(),
        modulus,
        residual_term_count: reduced.len(),
        residual_sample: sample(&reduced),
        difference_terms: diff.len(),
        quotient_terms: None,
        quotient: None,
    }
}

/// `C(a, b)` from `d₁ − ℓ₁(q₁ + 2uv + 2w) = 4C`, or the non-divisible terms.
pub fn d1_expansion_quotient(f: &SymbolicFactors) -> std::result::Result<SparsePoly, SparsePoly> {
    let uv2 = (&f.u * &f.v).scale(2);
    let inner = &(&f.q1 + &uv2) + &f.w.scale(2);
    let diff = &f.d1 - &(&f.l1 * &inner);
    diff.div_exact(&BigInt::from(4))
}

fn d1_expansion(f: &SymbolicFactors) -> IdentityReport {
    let id = IdentityId::D1Expansion;
    let c = match d1_expansion_quotient(f) {
        Ok(c) => c,
        Err(residue) => {
            return IdentityReport {
                id,
                holds: false,
                modulus: 4,
                residual_term_count: residue.len(),
                residual_sample: sample(&residue),
                difference_terms: residue.len(),
                quotient_terms: None,
                quotient: None,
            }
        }
    };

    // mirror: d₂ = ℓ₂(q₁ − 2uv − 2w) + 4C(a, −b)
    let c_mirror = c.negate_vars(|i| i >= 12);
    let uv2 = (&f.u * &f.v).scale(2);
    let inner = &(&f.q1 - &uv2) - &f.w.scale(2);
    let mirror_residual = &(&f.d2 - &(&f.l2 * &inner)) - &c_mirror.scale(4);

    // C(a, b) + C(a, −b) ≡ 0 (mod 2)
    let odd_part = (&c + &c_mirror).reduce_mod(&BigInt::from(2));

    let homogeneous = c.is_homogeneous(3);
    let residual = mirror_residual.len() + odd_part.len();
    let mut residual_sample = sample(&mirror_residual);
    residual_sample.extend(sample(&odd_part));
    residual_sample.truncate(8);
    IdentityReport {
        id,
        holds: residual == 0 && homogeneous,
        modulus: 4,
        residual_term_count: residual,
        residual_sample,
        difference_terms: c.len(),
        quotient_terms: Some(c.len()),
        quotient: Some(c),
    }
}

/// Checks one identity against an explicit set of factor polynomials.
pub fn check_identity_with(f: &SymbolicFactors, id: IdentityId) -> IdentityReport {
    match id {
        IdentityId::LMod2 => congruence(id, &f.l1 - &f.l2, 2),
        IdentityId::DMod2 => congruence(id, &f.d1 - &f.d2, 2),
        IdentityId::QMod3 => congruence(id, &f.q1 - &(&f.l1 * &f.l2), 3),
        IdentityId::ProdMod4 => {
            let rhs = &(&f.l1 * &f.l2) * &(&f.q1 * &f.q1);
            congruence(id, &(&f.d1 * &f.d2) - &rhs, 4)
        }
        IdentityId::SumMod4 => {
            let rhs = &(&f.l1 + &f.l2) * &f.q1;
            congruence(id, &(&f.d1 + &f.d2) - &rhs, 4)
        }
        IdentityId::D1Expansion => d1_expansion(f),
        IdentityId::SumMod8 => {
            let uq = (&f.u * &f.q1).scale(2);
            let uvv = (&(&f.u * &f.v) * &f.v).scale(4);
            let vw = (&f.v * &f.w).scale(4);
            let rhs = &(&uq + &uvv) + &vw;
            congruence(id, &(&f.d1 + &f.d2) - &rhs, 8)
        }
        IdentityId::DiffMod8 => {
            let vq = (&f.v * &f.q1).scale(2);
            let uuv = (&(&f.u * &f.u) * &f.v).scale(4);
            let uw = (&f.u * &f.w).scale(4);
            let rhs = &(&vq + &uuv) + &uw;
            congruence(id, &(&f.d1 - &f.d2) - &rhs, 8)
        }
    }
}

pub fn check_identity(id: IdentityId) -> IdentityReport {
    check_identity_with(symbolic(), id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::s4::s4_factors;
    use crate::ring::{s4, RingElement};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn point(assign: &[(usize, i64)]) -> Vec<BigInt> {
        let mut p = vec![BigInt::from(0); 24];
        for &(i, v) in assign {
            p[i] = BigInt::from(v);
        }
        p
    }

    #[test]
    fn degrees_and_point_values() {
        let f = symbolic();
        let expected = [
            (&f.l1, 1),
            (&f.l2, 1),
            (&f.q1, 2),
            (&f.d1, 3),
            (&f.d2, 3),
            (&f.u, 1),
            (&f.v, 1),
            (&f.w, 2),
        ];
        for (p, d) in expected {
            assert!(p.is_homogeneous(d));
            assert_eq!(p.degree(), Some(d));
        }
        let ones = vec![BigInt::from(1); 24];
        assert_eq!(f.l1.eval(&ones), BigInt::from(24));
        assert_eq!(f.d1.eval(&point(&[(0, 1)])), BigInt::from(1));
        // a2 = a5 = a9 = 1, b3 = b5 = 1
        let p = point(&[(1, 1), (4, 1), (8, 1), (14, 1), (16, 1)]);
        assert_eq!(f.q1.eval(&p), BigInt::from(-1));
    }

    #[test]
    fn evaluation_matches_numeric_profile() {
        let f = symbolic();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let c: Vec<i64> = (0..24).map(|_| rng.gen_range(-6..=6)).collect();
            let pt: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            let prof = s4_factors(&RingElement::from_i64s(s4(), &c).unwrap()).unwrap();
            assert_eq!(f.l1.eval(&pt), prof.l1);
            assert_eq!(f.l2.eval(&pt), prof.l2);
            assert_eq!(f.q1.eval(&pt), prof.q1);
            assert_eq!(f.d1.eval(&pt), prof.d1);
            assert_eq!(f.d2.eval(&pt), prof.d2);
            assert_eq!(f.u.eval(&pt), prof.u);
            assert_eq!(f.v.eval(&pt), prof.v);
            assert_eq!(f.w.eval(&pt), prof.w);
            for i in 0..3 {
                assert_eq!(f.a_sums[i].eval(&pt), prof.a_sums[i]);
                assert_eq!(f.b_sums[i].eval(&pt), prof.b_sums[i]);
            }
        }
    }

    #[test]
    fn cheap_identities_hold() {
        for id in [
            IdentityId::LMod2,
            IdentityId::DMod2,
            IdentityId::QMod3,
            IdentityId::SumMod4,
        ] {
            let r = check_identity(id);
            assert!(r.holds, "{id}: {:?}", r.residual_sample);
        }
    }

    #[test]
    fn expansion_quotient_is_a_cubic() {
        let r = check_identity(IdentityId::D1Expansion);
        assert!(r.holds, "{:?}", r.residual_sample);
        let c = r.quotient.unwrap();
        assert!(c.is_homogeneous(3));
    }

    #[test]
    fn perturbation_is_detected() {
        let mut f = symbolic().clone();
        f.d2 = f.d1.clone();
        let r = check_identity_with(&f, IdentityId::ProdMod4);
        assert!(!r.holds);
        assert!(r.residual_term_count > 0);

        let mut f = symbolic().clone();
        f.w = &f.w + &SparsePoly::var(0).scale(3);
        assert!(!check_identity_with(&f, IdentityId::D1Expansion).holds);
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!(
            "prod-mod4".parse::<IdentityId>().unwrap(),
            IdentityId::ProdMod4
        );
        assert!("NOPE".parse::<IdentityId>().is_err());
    }
}
