use gdet_core::classify::{is_member, GroupRule};
use gdet_core::det::{det_exact, s4_det_fast};
use gdet_core::expr::parse_expr;
use gdet_core::harness::{scan, ScanConfig};
use gdet_core::ring::{s4, RingElement};
use gdet_core::witness::{family, synthesize, trail_value, verify_certificate, FamilyId};
use num_bigint::BigInt;
use proptest::prelude::*;

fn s4_element(c: &[i64]) -> RingElement {
    RingElement::from_i64s(s4(), c).unwrap()
}

#[test]
fn family_values_are_members() {
    for f in FamilyId::ALL {
        for k in -40i64..=40 {
            let v = family(f, &BigInt::from(k)).1;
            if v != BigInt::from(0) {
                assert!(is_member(GroupRule::S4, &v), "{f} at {k} gives {v}");
            }
        }
    }
}

#[test]
fn z9_scan_agrees_with_the_decider() {
    let r = scan(&ScanConfig::exhaustive("Z9", -1, 1)).unwrap();
    assert_eq!(r.total, 19_683);
    assert_eq!(r.violation_count, 0);
}

#[test]
fn klein_scan_values_are_exactly_small_members() {
    let r = scan(&ScanConfig::exhaustive("K4", -2, 2)).unwrap();
    assert_eq!(r.violation_count, 0);
    assert!(r.distinct.contains_key(&BigInt::from(-3)));
    assert!(r.distinct.contains_key(&BigInt::from(16)));
}

#[test]
fn expression_products_are_convolutions() {
    let g = s4();
    let a = parse_expr("1 + x - 2*y", &g).unwrap();
    let b = parse_expr("x^2*y + 3", &g).unwrap();
    let ab = parse_expr("(1 + x - 2*y)*(x^2*y + 3)", &g).unwrap();
    assert_eq!(a.convolve(&b).unwrap(), ab);
    assert_eq!(det_exact(&ab), det_exact(&a) * det_exact(&b));
}

fn small_members() -> Vec<BigInt> {
    (-5000i64..=5000)
        .map(BigInt::from)
        .filter(|m| is_member(GroupRule::S4, m))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec(-2i64..=2, 24),
        b in prop::collection::vec(-2i64..=2, 24),
    ) {
        let (a, b) = (s4_element(&a), s4_element(&b));
        let ab = a.convolve(&b).unwrap();
        prop_assert_eq!(
            s4_det_fast(&ab).unwrap(),
            s4_det_fast(&a).unwrap() * s4_det_fast(&b).unwrap()
        );
    }

    #[test]
    fn determinants_are_members(c in prop::collection::vec(-4i64..=4, 24)) {
        let d = s4_det_fast(&s4_element(&c)).unwrap();
        prop_assert!(d == BigInt::from(0) || is_member(GroupRule::S4, &d));
    }

    #[test]
    fn synthesis_agrees_with_the_decider(m in -3_000_000i64..=3_000_000) {
        let m = BigInt::from(m);
        match synthesize(&m) {
            Ok(c) => {
                prop_assert!(is_member(GroupRule::S4, &m));
                prop_assert_eq!(trail_value(&c.trail), m);
                prop_assert!(verify_certificate(&c));
            }
            Err(_) => prop_assert!(!is_member(GroupRule::S4, &m)),
        }
    }

    #[test]
    fn products_of_members_synthesize(i in 0usize..10_000, j in 0usize..10_000) {
        let members = small_members();
        let x = &members[i % members.len()];
        let y = &members[j % members.len()];
        let c = synthesize(&(x * y)).unwrap();
        prop_assert!(verify_certificate(&c));
    }
}
