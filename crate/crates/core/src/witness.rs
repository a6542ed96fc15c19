//! Witness families for S4 and synthesis of a witness for any attainable
//! target.
//!
//! Each family fixes a set of slots at `1+k` (or a constant) and the rest at
//! `k` (or zero), so its determinant is a closed form in `k`. Products in the
//! group ring multiply determinants, which lets a target be assembled from
//! its 2-part, its 3-part and a residue factor.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors_u64, residue, split_prime};
use crate::classify::{is_member, GroupRule};
use crate::det::det_exact;
use crate::error::{Error, Result};
use crate::ring::{s4, RingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    #[serde(rename = "res1")]
    Res1,
    #[serde(rename = "res5")]
    Res5,
    #[serde(rename = "res13")]
    Res13,
    #[serde(rename = "res17")]
    Res17,
    #[serde(rename = "neg27")]
    Neg27,
    #[serde(rename = "pos81")]
    Pos81,
    #[serde(rename = "pow2_8")]
    Pow2e8,
    #[serde(rename = "neg2_10")]
    Neg2e10,
    #[serde(rename = "pos2_12")]
    Pos2e12,
    #[serde(rename = "neg2_12")]
    Neg2e12,
    #[serde(rename = "pos2_13")]
    Pos2e13,
    #[serde(rename = "neg2_13")]
    Neg2e13,
}

enum Pattern {
    /// Listed slots are `1+k`, all others `k`.
    Shifted(&'static [usize]),
    /// Listed slots carry the given constant, all others zero.
    Fixed(&'static [(usize, i64)]),
}

const fn a(i: usize) -> usize {
    i - 1
}

const fn b(i: usize) -> usize {
    11 + i
}

impl FamilyId {
    pub const ALL: [FamilyId; 12] = [
        FamilyId::Res1,
        FamilyId::Res5,
        FamilyId::Res13,
        FamilyId::Res17,
        FamilyId::Neg27,
        FamilyId::Pos81,
        FamilyId::Pow2e8,
        FamilyId::Neg2e10,
        FamilyId::Pos2e12,
        FamilyId::Neg2e12,
        FamilyId::Pos2e13,
        FamilyId::Neg2e13,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Res1 => "res1",
            FamilyId::Res5 => "res5",
            FamilyId::Res13 => "res13",
            FamilyId::Res17 => "res17",
            FamilyId::Neg27 => "neg27",
            FamilyId::Pos81 => "pos81",
            FamilyId::Pow2e8 => "pow2_8",
            FamilyId::Neg2e10 => "neg2_10",
            FamilyId::Pos2e12 => "pos2_12",
            FamilyId::Neg2e12 => "neg2_12",
            FamilyId::Pos2e13 => "pos2_13",
            FamilyId::Neg2e13 => "neg2_13",
        }
    }

    /// True for the four constructions that ignore `k`.
    pub fn is_constant(self) -> bool {
        matches!(self.pattern(), Pattern::Fixed(_))
    }

    fn pattern(self) -> Pattern {
        match self {
            FamilyId::Res1 => Pattern::Shifted(const { &[a(1)] }),
            FamilyId::Res5 => Pattern::Shifted(const { &[a(2), a(5), a(9), b(3), b(5)] }),
            FamilyId::Res13 => Pattern::Shifted(
                const {
                    &[
                        a(1),
                        a(3),
                        a(5),
                        a(6),
                        a(7),
                        a(9),
                        a(10),
                        b(1),
                        b(3),
                        b(5),
                        b(6),
                        b(11),
                        b(12),
                    ]
                },
            ),
            FamilyId::Res17 => Pattern::Shifted(
                const {
                    &[
                        a(1),
                        a(2),
                        a(3),
                        a(6),
                        a(7),
                        a(8),
                        a(9),
                        a(10),
                        a(11),
                        b(1),
                        b(3),
                        b(4),
                        b(5),
                        b(7),
                        b(8),
                        b(9),
                        b(10),
                    ]
                },
            ),
            FamilyId::Neg27 => Pattern::Shifted(const { &[a(1), a(3), b(3)] }),
            FamilyId::Pos81 => Pattern::Shifted(const { &[a(1), a(2), a(5)] }),
            FamilyId::Pow2e8 => Pattern::Fixed(const { &[(a(1), 1), (a(5), 1)] }),
            FamilyId::Neg2e10 => Pattern::Fixed(
                const { &[(a(1), -1), (a(5), 1), (a(6), 1), (b(5), 1), (b(10), -1)] },
            ),
            FamilyId::Pos2e12 => {
                Pattern::Fixed(const { &[(a(2), 1), (a(5), 1), (a(9), 1), (b(11), 1)] })
            }
            FamilyId::Neg2e12 => {
                Pattern::Fixed(const { &[(a(1), 1), (a(2), 1), (a(5), -1), (a(9), -1), (b(1), 1)] })
            }
            FamilyId::Pos2e13 => {
                Pattern::Shifted(const { &[a(1), a(2), a(6), a(10), a(11), b(4), b(6), b(10)] })
            }
            FamilyId::Neg2e13 => {
                Pattern::Shifted(const { &[a(2), a(3), a(4), a(5), a(9), b(4), b(5), b(6)] })
            }
        }
    }

    /// Trail position: 2-part first, then 3-part, then residue.
    fn stage(self) -> u8 {
        match self {
            FamilyId::Res1 | FamilyId::Res5 | FamilyId::Res13 | FamilyId::Res17 => 2,
            FamilyId::Neg27 | FamilyId::Pos81 => 1,
            _ => 0,
        }
    }

    /// The closed form is `c0 + c1·k`.
    fn linear_form(self) -> (i64, i64) {
        match self {
            FamilyId::Res1 => (1, 24),
            FamilyId::Res5 => (5, 24),
            FamilyId::Res13 => (13, 24),
            FamilyId::Res17 => (17, 24),
            FamilyId::Neg27 => (-27, -216),
            FamilyId::Pos81 => (81, 648),
            FamilyId::Pow2e8 => (256, 0),
            FamilyId::Neg2e10 => (-1024, 0),
            FamilyId::Pos2e12 => (4096, 0),
            FamilyId::Neg2e12 => (-4096, 0),
            FamilyId::Pos2e13 => (8192, 24576),
            FamilyId::Neg2e13 => (-8192, -24576),
        }
    }

    pub fn value(self, k: &BigInt) -> BigInt {
        let (c0, c1) = self.linear_form();
        BigInt::from(c0) + BigInt::from(c1) * k
    }

    /// Coefficients of the construction at parameter `k`.
    pub fn coefficients(self, k: &BigInt) -> Vec<BigInt> {
        match self.pattern() {
            Pattern::Shifted(slots) => {
                let mut c = vec![k.clone(); 24];
                for &s in slots {
                    c[s] += 1;
                }
                c
            }
            Pattern::Fixed(entries) => {
                let mut c = vec![BigInt::zero(); 24];
                for &(s, v) in entries {
                    c[s] = BigInt::from(v);
                }
                c
            }
        }
    }

    /// The `k` with `value(k) = v`, if any. Constant families answer `0`.
    pub fn solve(self, v: &BigInt) -> Option<BigInt> {
        let (c0, c1) = self.linear_form();
        let diff = v - BigInt::from(c0);
        if c1 == 0 {
            return diff.is_zero().then(BigInt::zero);
        }
        let (q, r) = diff.div_rem(&BigInt::from(c1));
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Input(format!("unknown witness family `{s}`")))
    }
}

/// Ring element and closed-form value of `id` at `k`.
pub fn family(id: FamilyId, k: &BigInt) -> (RingElement, BigInt) {
    let e = RingElement::new(s4(), id.coefficients(k)).expect("24 coefficients");
    (e, id.value(k))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrailStep {
    pub family: FamilyId,
    #[serde(with = "crate::json::bigint")]
    pub k: BigInt,
}

impl TrailStep {
    pub fn new(family: FamilyId, k: impl Into<BigInt>) -> Self {
        TrailStep {
            family,
            k: k.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub target: BigInt,
    pub coefficients: RingElement,
    pub trail: Vec<TrailStep>,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    #[serde(with = "crate::json::bigint")]
    target: BigInt,
    #[serde(with = "crate::json::bigints")]
    coefficients: Vec<BigInt>,
    trail: Vec<TrailStep>,
}

impl Serialize for WitnessCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateRepr {
            target: self.target.clone(),
            coefficients: self.coefficients.coeffs().to_vec(),
            trail: self.trail.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WitnessCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CertificateRepr::deserialize(d)?;
        let coefficients =
            RingElement::new(s4(), r.coefficients).map_err(serde::de::Error::custom)?;
        Ok(WitnessCertificate {
            target: r.target,
            coefficients,
            trail: r.trail,
        })
    }
}

/// Convolution of the trail's family elements, in trail order.
pub fn trail_element(trail: &[TrailStep]) -> RingElement {
    trail.iter().fold(RingElement::one(s4()), |acc, step| {
        acc.convolve(&family(step.family, &step.k).0)
            .expect("all families live in S4")
    })
}

/// Product of the closed-form values along the trail.
pub fn trail_value(trail: &[TrailStep]) -> BigInt {
    trail
        .iter()
        .fold(BigInt::one(), |acc, s| acc * s.family.value(&s.k))
}

/// Recomputes the determinant of the stored coefficients and the convolution
/// of the trail; both must agree with the certificate.
pub fn verify_certificate(c: &WitnessCertificate) -> bool {
    if c.coefficients.group().kind != s4().kind {
        return false;
    }
    det_exact(&c.coefficients) == c.target && trail_element(&c.trail) == c.coefficients
}

/// Targets up to this size also try every two-step trail.
const PAIR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Builds a certificate for `target`, preferring the shortest trail, then the
/// smallest `Σ|k|`.
pub fn synthesize(target: &BigInt) -> Result<WitnessCertificate> {
    if !is_member(GroupRule::S4, target) {
        return Err(Error::NotInSet(target.clone()));
    }
    let mut candidates: Vec<Vec<TrailStep>> = Vec::new();
    candidates.extend(single_steps(target).into_iter().map(|s| vec![s]));
    if candidates.is_empty() {
        candidates.extend(pair_steps(target));
    }
    if let Some(t) = constructive(target) {
        candidates.push(t);
    }
    for t in &mut candidates {
        t.sort_by_key(|s| (s.family.stage(), s.family, s.k.clone()));
    }
    let trail = candidates
        .into_iter()
        .filter(|t| trail_value(t) == *target)
        .min_by(|x, y| rank(x).cmp(&rank(y)).then_with(|| x.cmp(y)))
        .ok_or_else(|| Error::SynthesisExhausted(target.clone()))?;

    let cert = WitnessCertificate {
        target: target.clone(),
        coefficients: trail_element(&trail),
        trail,
    };
    if det_exact(&cert.coefficients) != cert.target {
        return Err(Error::SynthesisExhausted(target.clone()));
    }
    Ok(cert)
}

fn rank(t: &[TrailStep]) -> (usize, BigInt) {
    (t.len(), t.iter().map(|s| s.k.abs()).sum())
}

fn single_steps(v: &BigInt) -> Vec<TrailStep> {
    FamilyId::ALL
        .into_iter()
        .filter_map(|f| f.solve(v).map(|k| TrailStep::new(f, k)))
        .collect()
}

fn pair_steps(target: &BigInt) -> Vec<Vec<TrailStep>> {
    let Some(n) = target.abs().to_u64().filter(|&n| n <= PAIR_SEARCH_LIMIT) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for d in divisors_u64(n) {
        for d in [BigInt::from(d), -BigInt::from(d)] {
            let rest = target / &d;
            let left = single_steps(&d);
            if left.is_empty() {
                continue;
            }
            let right = single_steps(&rest);
            for l in &left {
                for r in &right {
                    if l.family <= r.family {
                        out.push(vec![l.clone(), r.clone()]);
                    }
                }
            }
        }
    }
    out
}

/// 2-part, then 3-part, then a residue factor.
fn constructive(target: &BigInt) -> Option<Vec<TrailStep>> {
    let mut trail = Vec::new();
    let (mut e2, _) = split_prime(target, 2);
    let mut rest = target.clone();

    let take = |trail: &mut Vec<TrailStep>, rest: &mut BigInt, f: FamilyId, k: BigInt| {
        let v = f.value(&k);
        debug_assert!((&*rest % &v).is_zero());
        *rest = &*rest / v;
        trail.push(TrailStep { family: f, k });
    };

    match e2 {
        0 => {}
        8 => take(&mut trail, &mut rest, FamilyId::Pow2e8, BigInt::zero()),
        10 => take(&mut trail, &mut rest, FamilyId::Neg2e10, BigInt::zero()),
        e if e >= 12 => {
            while e2 >= 25 {
                take(&mut trail, &mut rest, FamilyId::Pos2e12, BigInt::zero());
                e2 -= 12;
            }
            let odd = &rest >> e2;
            // sign chosen so the odd cofactor is 1 mod 4
            let positive = residue(&odd, 4) == 1;
            if e2 == 12 {
                let f = if positive {
                    FamilyId::Pos2e12
                } else {
                    FamilyId::Neg2e12
                };
                take(&mut trail, &mut rest, f, BigInt::zero());
            } else {
                let j = e2 - 13;
                // 1+3k = ±2^j with the sign making it 1 mod 3
                let s: BigInt = if j % 2 == 0 {
                    BigInt::one() << j
                } else {
                    -(BigInt::one() << j)
                };
                let k = (&s - 1) / 3;
                let same_sign = s.is_positive() == positive;
                let f = if same_sign {
                    FamilyId::Pos2e13
                } else {
                    FamilyId::Neg2e13
                };
                take(&mut trail, &mut rest, f, k);
            }
        }
        _ => return None,
    }

    let (mut e3, _) = split_prime(&rest, 3);
    while e3 >= 7 {
        take(&mut trail, &mut rest, FamilyId::Pos81, BigInt::zero());
        e3 -= 4;
    }
    match e3 {
        0 => {}
        3 => take(&mut trail, &mut rest, FamilyId::Neg27, BigInt::zero()),
        4 => take(&mut trail, &mut rest, FamilyId::Pos81, BigInt::zero()),
        5 => take(&mut trail, &mut rest, FamilyId::Neg27, BigInt::one()),
        6 => take(&mut trail, &mut rest, FamilyId::Pos81, BigInt::one()),
        _ => return None,
    }

    if !(rest.is_one() && !trail.is_empty()) {
        let f = match residue(&rest, 24) {
            1 => FamilyId::Res1,
            5 => FamilyId::Res5,
            13 => FamilyId::Res13,
            17 => FamilyId::Res17,
            _ => return None,
        };
        let k = f.solve(&rest)?;
        take(&mut trail, &mut rest, f, k);
    }
    Some(trail)
}
