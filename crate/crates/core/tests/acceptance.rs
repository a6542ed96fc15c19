//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use gdet_core::arith::{residue, split_prime};
use gdet_core::classify::{is_member, lambda_of, GroupRule};
use gdet_core::det::{det_exact, rep_factor_check, s4_det_fast, s4_factors, RepTable};
use gdet_core::group::GroupKind;
use gdet_core::harness::{lambda_scan, scan, ScanConfig};
use gdet_core::ring::{s4, RingElement};
use gdet_core::sympoly::{check_identity, IdentityId};
use gdet_core::witness::{family, synthesize, verify_certificate, FamilyId};
use gdet_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const LIMIT_FAMILIES: Duration = Duration::from_secs(10);
const LIMIT_FACTORIZATION: Duration = Duration::from_secs(60);
const LIMIT_IDENTITIES: Duration = Duration::from_secs(300);
const LIMIT_SYNTHESIS: Duration = Duration::from_secs(120);

const FACTORIZATION_SAMPLES: usize = 10_000;
const FACTORIZATION_RANGE: i64 = 9;
const SCAN_SAMPLES: u64 = 100_000;
const SCAN_SEED: u64 = 42;
const SYNTHESIS_TARGETS: usize = 50;
const SYNTHESIS_BOUND: i64 = 1_000_000;
const PRODUCT_PAIRS: usize = 500;
const IDENTITY_POINTS: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn random_s4(rng: &mut ChaCha8Rng, r: i64) -> RingElement {
    let c: Vec<i64> = (0..24).map(|_| rng.gen_range(-r..=r)).collect();
    RingElement::from_i64s(s4(), &c).unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(t)
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn witness_families() -> Outcome {
    // closed forms written out independently of the library
    let forms: [(&str, i64, i64); 12] = [
        ("res1", 1, 24),
        ("res5", 5, 24),
        ("res13", 13, 24),
        ("res17", 17, 24),
        ("neg27", -27, -27 * 8),
        ("pos81", 81, 81 * 8),
        ("pow2_8", 256, 0),
        ("neg2_10", -1024, 0),
        ("pos2_12", 4096, 0),
        ("neg2_12", -4096, 0),
        ("pos2_13", 8192, 8192 * 3),
        ("neg2_13", -8192, -8192 * 3),
    ];
    let start = Instant::now();
    let mut checks = 0;
    for (name, c0, c1) in forms {
        let id: FamilyId = name.parse().map_err(|e| format!("{e}"))?;
        for k in -3i64..=3 {
            let (e, _) = family(id, &BigInt::from(k));
            let got = det_exact(&e);
            let want = BigInt::from(c0 + c1 * k);
            if got != want {
                return Err(format!("{name} at k={k}: det {got}, expected {want}"));
            }
            checks += 1;
        }
    }
    let t = within(start, LIMIT_FAMILIES)?;
    Ok(format!("{checks} exact matches in {t:.2?}"))
}

fn factorization() -> Outcome {
    let start = Instant::now();
    let bad: Vec<String> = (0..FACTORIZATION_SAMPLES)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
            let e = random_s4(&mut rng, FACTORIZATION_RANGE);
            let fast = s4_det_fast(&e).unwrap();
            let slow = det_exact(&e);
            (fast != slow).then(|| format!("{:?}: {fast} vs {slow}", e.coeffs()))
        })
        .collect();
    if let Some(b) = bad.first() {
        return Err(format!("{} mismatches, first {b}", bad.len()));
    }
    let t = within(start, LIMIT_FACTORIZATION)?;
    Ok(format!("{FACTORIZATION_SAMPLES} vectors agree in {t:.2?}"))
}

fn identities() -> Outcome {
    let start = Instant::now();
    let mut quotient = None;
    for id in IdentityId::ALL {
        let r = check_identity(id);
        if !r.holds {
            return Err(format!("{} fails: {:?}", id.name(), r.residual_sample));
        }
        if id == IdentityId::D1Expansion {
            quotient = r.quotient;
        }
    }
    let c = quotient.ok_or("D1_EXPANSION returned no quotient")?;
    if !c.is_homogeneous(3) {
        return Err("C(a,b) is not a homogeneous cubic".into());
    }

    // numeric cross-check through the factor profile
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let four = BigInt::from(4);
    for _ in 0..IDENTITY_POINTS {
        let e = random_s4(&mut rng, 5);
        let p = s4_factors(&e).unwrap();
        let inner = &p.q1 + BigInt::from(2) * &p.u * &p.v + BigInt::from(2) * &p.w;
        let rest = &p.d1 - &p.l1 * inner;
        if !rest.is_multiple_of(&four) {
            return Err(format!(
                "d1 expansion not divisible by 4 at {:?}",
                e.coeffs()
            ));
        }
        let point: Vec<BigInt> = e.coeffs().to_vec();
        let mirror: Vec<BigInt> = point
            .iter()
            .enumerate()
            .map(|(i, x)| if i >= 12 { -x } else { x.clone() })
            .collect();
        if rest / &four != c.eval(&point) {
            return Err(format!("quotient disagrees at {:?}", e.coeffs()));
        }
        if (c.eval(&point) + c.eval(&mirror)).is_odd() {
            return Err(format!("C(a,b)+C(a,-b) odd at {:?}", e.coeffs()));
        }
    }
    let t = within(start, LIMIT_IDENTITIES)?;
    Ok(format!(
        "8 identities hold, C has {} terms, {t:.2?}",
        c.len()
    ))
}

fn representations() -> Outcome {
    let reps = RepTable::s4();
    let fails = reps.homomorphism_failures(&s4());
    if fails != [0, 0, 0] {
        return Err(format!(
            "homomorphism failures per table {fails:?} of 576 pairs"
        ));
    }
    if !rep_factor_check(&reps) {
        return Err("representation determinants differ from q1/d1/d2".into());
    }
    Ok("576/576 pairs for each table, determinants equal q1, d1, d2".into())
}

fn s4_scan() -> Outcome {
    let start = Instant::now();
    let r = scan(&ScanConfig::random("S4", -3, 3, SCAN_SAMPLES, SCAN_SEED))
        .map_err(|e| e.to_string())?;
    if r.total != SCAN_SAMPLES {
        return Err(format!("evaluated {} vectors", r.total));
    }
    if r.violation_count > 0 {
        let v = &r.violations[0];
        return Err(format!(
            "{} violations, first {} at {:?}",
            r.violation_count, v.value, v.coeffs
        ));
    }
    for (v, _) in r.distinct.iter().filter(|(v, _)| !v.is_zero()) {
        let (e2, odd) = split_prime(v, 2);
        if e2 == 0 && residue(v, 4) != 1 {
            return Err(format!("odd value {v} is not 1 mod 4"));
        }
        if e2 > 0 && !(e2 == 8 || e2 == 10 || e2 >= 12) {
            return Err(format!(
                "even value {v} has 2-adic valuation {e2} (odd part {odd})"
            ));
        }
    }
    Ok(format!(
        "{} vectors, 0 violations, {} distinct values, {:.2?}",
        r.total,
        r.distinct.len(),
        start.elapsed()
    ))
}

fn small_groups() -> Outcome {
    let mut parts = Vec::new();
    for (g, lo, hi, n) in [("Z4", -2, 2, 625), ("K4", -2, 2, 625), ("Z3", -3, 3, 343)] {
        let r = scan(&ScanConfig::exhaustive(g, lo, hi)).map_err(|e| e.to_string())?;
        if r.total != n {
            return Err(format!("{g}: {} vectors, expected {n}", r.total));
        }
        if r.violation_count > 0 {
            let v = &r.violations[0];
            return Err(format!("{g}: violation {} at {:?}", v.value, v.coeffs));
        }
        parts.push(format!("{g} {n}"));
    }
    Ok(format!("{} vectors, 0 violations", parts.join(", ")))
}

fn lambdas() -> Outcome {
    let l = lambda_of(GroupRule::S4).map_err(|e| e.to_string())?;
    if l != 5 {
        return Err(format!("lambda_of(S4) = {l}"));
    }
    let cert = synthesize(&BigInt::from(5)).map_err(|e| e.to_string())?;
    if !verify_certificate(&cert) || det_exact(&cert.coefficients) != BigInt::from(5) {
        return Err("certificate for 5 does not verify".into());
    }
    let k = lambda_scan(GroupKind::Klein, -2, 2, None).map_err(|e| e.to_string())?;
    if k != Some(BigInt::from(3)) {
        return Err(format!("lambda_scan(K4, [-2,2]) = {k:?}"));
    }
    Ok("lambda(S4) = 5 with certificate, lambda_scan(K4) = 3".into())
}

/// Member of S4 class `class` (odd, 2^8, 2^10, 2^12+) built by
/// construction, `|m| ≤ SYNTHESIS_BOUND`.
fn build_member(rng: &mut ChaCha8Rng, class: usize) -> BigInt {
    loop {
        let (shift, odd_mod4): (u32, i64) = match class {
            0 => (0, 1),
            1 => (8, 1),
            2 => (10, 3),
            _ => (rng.gen_range(12..=19), rng.gen_range(0..2) * 2 + 1),
        };
        let cap = SYNTHESIS_BOUND >> shift;
        let odd = if rng.gen_bool(0.25) && cap >= 27 {
            27 * rng.gen_range(-cap / 27..=cap / 27)
        } else {
            rng.gen_range(-cap..=cap)
        };
        let three_ok = odd % 3 != 0 || odd % 27 == 0;
        if odd % 2 != 0 && odd.rem_euclid(4) == odd_mod4 && three_ok {
            return BigInt::from(odd) << shift;
        }
    }
}

/// Non-member by construction, cycling through the ways to fail.
fn build_non_member(rng: &mut ChaCha8Rng, i: usize) -> BigInt {
    loop {
        let x: i64 = rng.gen_range(-SYNTHESIS_BOUND / 2048..=SYNTHESIS_BOUND / 2048);
        if x % 2 == 0 {
            continue;
        }
        let m = match i % 5 {
            // odd, 3 mod 4
            0 if x.rem_euclid(4) == 3 => x,
            // 1 mod 4 but exactly one factor 3
            1 if x % 3 != 0 && (3 * x).rem_euclid(4) == 1 => 3 * x,
            // 2-adic valuation 1..7
            2 => x << rng.gen_range(1..=7),
            // 2^8 times an odd part that is 3 mod 4
            3 if x.rem_euclid(4) == 3 => x << 8,
            // 2-adic valuation 9 or 11
            4 => x << (9 + 2 * rng.gen_range(0..2)),
            _ => continue,
        };
        return BigInt::from(m);
    }
}

fn synthesis() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let targets: Vec<BigInt> = (0..SYNTHESIS_TARGETS)
        .map(|i| build_member(&mut rng, i % 4))
        .collect();
    let mut classes = [0usize; 4];
    for t in &targets {
        if !is_member(GroupRule::S4, t) {
            return Err(format!("constructed member {t} rejected by the decider"));
        }
        let cert = synthesize(t).map_err(|e| format!("{t}: {e}"))?;
        if !verify_certificate(&cert) || det_exact(&cert.coefficients) != *t {
            return Err(format!("certificate for {t} does not verify"));
        }
        let e2 = split_prime(t, 2).0;
        classes[match e2 {
            0 => 0,
            8 => 1,
            10 => 2,
            _ => 3,
        }] += 1;
    }
    if classes.contains(&0) {
        return Err(format!("class coverage {classes:?}"));
    }
    for i in 0..SYNTHESIS_TARGETS {
        let m = build_non_member(&mut rng, i);
        match synthesize(&m) {
            Err(Error::NotInSet(_)) => {}
            other => return Err(format!("non-member {m} gave {other:?}")),
        }
    }
    let t = within(start, LIMIT_SYNTHESIS)?;
    Ok(format!(
        "{SYNTHESIS_TARGETS} members certified (classes {classes:?}), {SYNTHESIS_TARGETS} non-members rejected, {t:.2?}"
    ))
}

fn multiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..PRODUCT_PAIRS {
        let a = random_s4(&mut rng, 3);
        let b = random_s4(&mut rng, 3);
        let ab = a.convolve(&b).unwrap();
        let lhs = det_exact(&ab);
        let rhs = det_exact(&a) * det_exact(&b);
        if lhs != rhs {
            return Err(format!("D(a*b) = {lhs}, D(a)D(b) = {rhs}"));
        }
    }
    Ok(format!("{PRODUCT_PAIRS} pairs"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("witness families", witness_families),
        ("factorization", factorization),
        ("symbolic identities", identities),
        ("representations", representations),
        ("S4 random scan", s4_scan),
        ("small-group scans", small_groups),
        ("lambda values", lambdas),
        ("synthesis round-trip", synthesis),
        ("multiplicativity", multiplicativity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {}  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
