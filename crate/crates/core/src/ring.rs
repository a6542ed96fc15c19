//! Integer group-ring elements and their convolution product.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{build_group, GroupKind, GroupTable};

/// Shared handle to the S4 table.
pub fn s4() -> Arc<GroupTable> {
    static S4: OnceLock<Arc<GroupTable>> = OnceLock::new();
    S4.get_or_init(|| Arc::new(build_group(GroupKind::Symmetric4).expect("S4 builds")))
        .clone()
}

/// `Σ coeffs[g]·g` in Z[G]. For S4 the first twelve slots are `a1..a12`
/// and the last twelve are `b1..b12`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    group: Arc<GroupTable>,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingElement")
            .field("group", &self.group.kind)
            .field(
                "coeffs",
                &self
                    .coeffs
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl RingElement {
    pub fn new(group: Arc<GroupTable>, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != group.order {
            return Err(Error::CoefficientCount {
                expected: group.order,
                got: coeffs.len(),
            });
        }
        Ok(RingElement { group, coeffs })
    }

    pub fn from_i64s(group: Arc<GroupTable>, coeffs: &[i64]) -> Result<Self> {
        Self::new(group, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(group: Arc<GroupTable>) -> Self {
        let n = group.order;
        RingElement {
            group,
            coeffs: vec![BigInt::zero(); n],
        }
    }

    /// `c·g` for a single group element.
    pub fn monomial(group: Arc<GroupTable>, g: usize, c: BigInt) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = c;
        e
    }

    /// The multiplicative identity (1 at the identity element).
    pub fn one(group: Arc<GroupTable>) -> Self {
        let id = group.identity;
        Self::monomial(group, id, BigInt::one())
    }

    /// S4 element from its even (`a`) and odd (`b`) coefficient halves.
    pub fn from_ab(a: &[BigInt], b: &[BigInt]) -> Result<Self> {
        if a.len() != 12 || b.len() != 12 {
            return Err(Error::CoefficientCount {
                expected: 12,
                got: if a.len() != 12 { a.len() } else { b.len() },
            });
        }
        Self::new(s4(), a.iter().chain(b).cloned().collect())
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff_mut(&mut self, g: usize) -> &mut BigInt {
        &mut self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns `(g, c)` when the element is `c·g`.
    pub fn as_monomial(&self) -> Option<(usize, &BigInt)> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nz.next(), nz.next()) {
            (Some((g, c)), None) => Some((g, c)),
            (None, _) => Some((self.group.identity, &self.coeffs[self.group.identity])),
            _ => None,
        }
    }

    fn same_group(&self, other: &RingElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group.kind == other.group.kind {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.kind.to_string(),
                right: other.group.kind.to_string(),
            })
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RingElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RingElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        RingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Group-ring product: `c_g = Σ_{uv = g} a_u b_v`.
    pub fn convolve(&self, other: &RingElement) -> Result<RingElement> {
        self.same_group(other)?;
        let g = &self.group;
        let mut out = vec![BigInt::zero(); g.order];
        for (u, au) in self.coeffs.iter().enumerate() {
            if au.is_zero() {
                continue;
            }
            for (v, bv) in other.coeffs.iter().enumerate() {
                if bv.is_zero() {
                    continue;
                }
                out[g.op(u, v)] += au * bv;
            }
        }
        Ok(RingElement {
            group: g.clone(),
            coeffs: out,
        })
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut base = self.clone();
        let mut acc = RingElement::one(self.group.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.convolve(&base).expect("same group");
            }
            e >>= 1;
            if e > 0 {
                base = base.convolve(&base).expect("same group");
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use proptest::prelude::*;

    fn elem(g: &Arc<GroupTable>, c: &[i64]) -> RingElement {
        RingElement::from_i64s(g.clone(), c).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let g = s4();
        let a = elem(&g, &(0..24).map(|i| i * 3 - 20).collect::<Vec<_>>());
        let e = RingElement::one(g.clone());
        assert_eq!(a.convolve(&e).unwrap(), a);
        assert_eq!(e.convolve(&a).unwrap(), a);
    }

    #[test]
    fn z2_product() {
        let g = Arc::new(build_group(GroupKind::Cyclic(2)).unwrap());
        let (a0, a1, b0, b1) = (3, -5, 7, 2);
        let c = elem(&g, &[a0, a1]).convolve(&elem(&g, &[b0, b1])).unwrap();
        assert_eq!(c, elem(&g, &[a0 * b0 + a1 * b1, a0 * b1 + a1 * b0]));
    }

    #[test]
    fn trivial_group_is_integer_multiplication() {
        let g = Arc::new(build_group(GroupKind::Cyclic(1)).unwrap());
        assert_eq!(
            elem(&g, &[-6]).convolve(&elem(&g, &[7])).unwrap(),
            elem(&g, &[-42])
        );
    }

    #[test]
    fn group_mismatch() {
        let z3 = Arc::new(build_group(GroupKind::Cyclic(3)).unwrap());
        let z3b = Arc::new(build_group(GroupKind::Cyclic(3)).unwrap());
        let a = RingElement::one(z3.clone());
        assert!(a.convolve(&RingElement::one(s4())).is_err());
        assert!(a.convolve(&RingElement::one(z3b)).is_ok());
        assert!(RingElement::from_i64s(z3, &[1, 2]).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let g = s4();
        let mut c = vec![0i64; 24];
        c[0] = 1;
        c[12] = 1;
        let a = elem(&g, &c);
        let cube = a.convolve(&a).unwrap().convolve(&a).unwrap();
        assert_eq!(a.pow(3), cube);
        assert_eq!(a.pow(0), RingElement::one(g));
    }

    fn s4_vec() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-5i64..=5, 24)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn convolution_is_associative(a in s4_vec(), b in s4_vec(), c in s4_vec()) {
            let g = s4();
            let (a, b, c) = (elem(&g, &a), elem(&g, &b), elem(&g, &c));
            let left = a.convolve(&b).unwrap().convolve(&c).unwrap();
            let right = a.convolve(&b.convolve(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn convolution_distributes(a in s4_vec(), b in s4_vec(), c in s4_vec()) {
            let g = s4();
            let (a, b, c) = (elem(&g, &a), elem(&g, &b), elem(&g, &c));
            let left = a.convolve(&b.add(&c).unwrap()).unwrap();
            let right = a.convolve(&b).unwrap().add(&a.convolve(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let left = b.add(&c).unwrap().convolve(&a).unwrap();
            let right = b.convolve(&a).unwrap().add(&c.convolve(&a).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
