//! Exhaustive and seeded random determinant scans checked against the
//! membership deciders.
//!
//! Work is split into fixed-size index blocks evaluated in parallel; block
//! reports are merged in block order, so results do not depend on thread
//! count. Random mode seeds one ChaCha stream per block.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::{ChaCha12Rng, ChaCha20Rng, ChaCha8Rng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::{residue, split_prime};
use crate::classify::{is_member, rule_for_group, GroupRule};
use crate::det::{det_exact, s4_det_fast};
use crate::error::{Error, Result};
use crate::group::{build_group, GroupKind, GroupTable, MAX_ORDER};
use crate::ring::RingElement;

/// Largest vector count accepted in exhaustive mode.
pub const MAX_EXHAUSTIVE: u64 = 10_000_000;
const BLOCK: u64 = 4096;
/// Violations kept in the report; the count is always exact.
pub const VIOLATION_CAP: usize = 1000;

/// One evaluated vector and its determinant.
type Row = (Vec<i64>, BigInt);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ScanMode {
    Exhaustive,
    Random { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub group: String,
    pub lo: i64,
    pub hi: i64,
    pub mode: ScanMode,
    /// `chacha8`, `chacha12` or `chacha20`.
    #[serde(default = "default_rng")]
    pub rng: String,
    /// Slots that vary; the rest stay zero. `None` means every slot.
    #[serde(default)]
    pub support: Option<Vec<usize>>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Write one JSON line per evaluated vector.
    #[serde(default)]
    pub full: bool,
}

fn default_rng() -> String {
    "chacha8".into()
}

impl ScanConfig {
    pub fn exhaustive(group: &str, lo: i64, hi: i64) -> Self {
        ScanConfig {
            group: group.into(),
            lo,
            hi,
            mode: ScanMode::Exhaustive,
            rng: default_rng(),
            support: None,
            output: None,
            full: false,
        }
    }

    pub fn random(group: &str, lo: i64, hi: i64, count: u64, seed: u64) -> Self {
        ScanConfig {
            mode: ScanMode::Random { count, seed },
            ..Self::exhaustive(group, lo, hi)
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_reader(File::open(path)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: u64,
    pub coeffs: Vec<i64>,
    #[serde(with = "crate::json::bigint")]
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScanReport {
    pub total: u64,
    /// Vectors with determinant 0; never counted as violations.
    pub zero_count: u64,
    pub distinct: BTreeMap<BigInt, u64>,
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    /// Nonzero values only.
    pub residue_mod24: [u64; 24],
    pub val2_hist: BTreeMap<u32, u64>,
    pub val3_hist: BTreeMap<u32, u64>,
}

impl ScanReport {
    fn record(&mut self, index: u64, coeffs: &[i64], value: &BigInt, rule: GroupRule) {
        self.total += 1;
        *self.distinct.entry(value.clone()).or_default() += 1;
        if value.is_zero() {
            self.zero_count += 1;
            return;
        }
        self.residue_mod24[residue(value, 24) as usize] += 1;
        *self.val2_hist.entry(split_prime(value, 2).0).or_default() += 1;
        *self.val3_hist.entry(split_prime(value, 3).0).or_default() += 1;
        if !is_member(rule, value) {
            self.violation_count += 1;
            if self.violations.len() < VIOLATION_CAP {
                self.violations.push(Violation {
                    index,
                    coeffs: coeffs.to_vec(),
                    value: value.clone(),
                });
            }
        }
    }

    /// Associative merge; `other` must cover later indices than `self`.
    pub fn merge(mut self, other: ScanReport) -> ScanReport {
        self.total += other.total;
        self.zero_count += other.zero_count;
        for (v, n) in other.distinct {
            *self.distinct.entry(v).or_default() += n;
        }
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort_by_key(|v| v.index);
        self.violations.truncate(VIOLATION_CAP);
        for (a, b) in self.residue_mod24.iter_mut().zip(other.residue_mod24) {
            *a += b;
        }
        for (e, n) in other.val2_hist {
            *self.val2_hist.entry(e).or_default() += n;
        }
        for (e, n) in other.val3_hist {
            *self.val3_hist.entry(e).or_default() += n;
        }
        self
    }

    /// Smallest `|value| ≥ 2` seen.
    pub fn min_abs_nontrivial(&self) -> Option<BigInt> {
        self.distinct
            .keys()
            .map(|v| v.abs())
            .filter(|v| *v >= BigInt::from(2))
            .min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let distinct: Vec<serde_json::Value> = self
            .distinct
            .iter()
            .map(|(v, n)| json!([crate::json::number(v), n]))
            .collect();
        json!({
            "total": self.total,
            "zero_count": self.zero_count,
            "distinct_count": self.distinct.len(),
            "distinct": distinct,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "residue_mod24": self.residue_mod24,
            "val2_hist": self.val2_hist,
            "val3_hist": self.val3_hist,
            "min_abs_nontrivial": self.min_abs_nontrivial().map(|v| crate::json::number(&v)),
        })
    }
}

struct Plan {
    table: Arc<GroupTable>,
    rule: Option<GroupRule>,
    support: Vec<usize>,
    lo: i64,
    width: u64,
    count: u64,
}

fn plan(cfg: &ScanConfig, need_rule: bool) -> Result<Plan> {
    let kind: GroupKind = cfg.group.parse()?;
    let table = Arc::new(build_group(kind)?);
    if table.order > MAX_ORDER {
        return Err(Error::ScanConfig(format!(
            "order {} exceeds {MAX_ORDER}",
            table.order
        )));
    }
    let rule = rule_for_group(kind);
    if need_rule && rule.is_none() {
        return Err(Error::ScanConfig(format!(
            "no membership decider for {kind}"
        )));
    }
    if cfg.lo > cfg.hi {
        return Err(Error::ScanConfig(format!(
            "empty range {}:{}",
            cfg.lo, cfg.hi
        )));
    }
    if !matches!(cfg.rng.as_str(), "chacha8" | "chacha12" | "chacha20") {
        return Err(Error::ScanConfig(format!("unknown rng `{}`", cfg.rng)));
    }
    let support = match &cfg.support {
        None => (0..table.order).collect(),
        Some(s) => {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() || sorted.last().is_some_and(|&i| i >= table.order) {
                return Err(Error::ScanConfig(format!("bad support {s:?}")));
            }
            s.clone()
        }
    };
    let width = cfg
        .hi
        .checked_sub(cfg.lo)
        .and_then(|w| w.checked_add(1))
        .ok_or_else(|| Error::ScanConfig("range too wide".into()))? as u64;
    let count = match cfg.mode {
        ScanMode::Exhaustive => (0..support.len())
            .try_fold(1u64, |acc, _| {
                acc.checked_mul(width).filter(|&n| n <= MAX_EXHAUSTIVE)
            })
            .ok_or_else(|| {
                Error::ScanConfig(format!(
                    "{width}^{} vectors exceeds {MAX_EXHAUSTIVE}",
                    support.len()
                ))
            })?,
        ScanMode::Random { count, .. } => count,
    };
    Ok(Plan {
        table,
        rule,
        support,
        lo: cfg.lo,
        width,
        count,
    })
}

enum BlockRng {
    C8(ChaCha8Rng),
    C12(ChaCha12Rng),
    C20(ChaCha20Rng),
}

impl BlockRng {
    fn new(name: &str, seed: u64, block: u64) -> Self {
        match name {
            "chacha12" => {
                let mut r = ChaCha12Rng::seed_from_u64(seed);
                r.set_stream(block);
                BlockRng::C12(r)
            }
            "chacha20" => {
                let mut r = ChaCha20Rng::seed_from_u64(seed);
                r.set_stream(block);
                BlockRng::C20(r)
            }
            _ => {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                r.set_stream(block);
                BlockRng::C8(r)
            }
        }
    }

    fn draw(&mut self, lo: i64, hi: i64) -> i64 {
        match self {
            BlockRng::C8(r) => r.gen_range(lo..=hi),
            BlockRng::C12(r) => r.gen_range(lo..=hi),
            BlockRng::C20(r) => r.gen_range(lo..=hi),
        }
    }
}

fn evaluate(table: &Arc<GroupTable>, coeffs: &[i64]) -> BigInt {
    let e = RingElement::from_i64s(table.clone(), coeffs).expect("length matches order");
    if table.kind == GroupKind::Symmetric4 {
        s4_det_fast(&e).expect("S4 element")
    } else {
        det_exact(&e)
    }
}

/// Evaluates block `b`, calling `visit` with each vector and its value.
fn run_block(cfg: &ScanConfig, p: &Plan, b: u64, mut visit: impl FnMut(u64, &[i64], &BigInt)) {
    let start = b * BLOCK;
    let end = (start + BLOCK).min(p.count);
    let mut coeffs = vec![0i64; p.table.order];
    let mut rng = match cfg.mode {
        ScanMode::Random { seed, .. } => Some(BlockRng::new(&cfg.rng, seed, b)),
        ScanMode::Exhaustive => None,
    };
    for index in start..end {
        match rng.as_mut() {
            Some(r) => {
                for &s in &p.support {
                    coeffs[s] = r.draw(cfg.lo, cfg.hi);
                }
            }
            None => {
                let mut rem = index;
                for &s in p.support.iter().rev() {
                    coeffs[s] = p.lo + (rem % p.width) as i64;
                    rem /= p.width;
                }
            }
        }
        let value = evaluate(&p.table, &coeffs);
        visit(index, &coeffs, &value);
    }
}

fn blocks(p: &Plan) -> u64 {
    p.count.div_ceil(BLOCK)
}

/// Runs the scan and, if `cfg.output` is set, persists the results.
pub fn scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let p = plan(cfg, true)?;
    let rule = p.rule.expect("checked in plan");
    let parts: Vec<(ScanReport, Vec<Row>)> = (0..blocks(&p))
        .into_par_iter()
        .map(|b| {
            let mut rep = ScanReport::default();
            let mut rows = Vec::new();
            run_block(cfg, &p, b, |i, c, v| {
                rep.record(i, c, v, rule);
                if cfg.full {
                    rows.push((c.to_vec(), v.clone()));
                }
            });
            (rep, rows)
        })
        .collect();

    let mut report = ScanReport::default();
    let mut rows = Vec::new();
    for (r, mut rs) in parts {
        report = report.merge(r);
        rows.append(&mut rs);
    }
    if let Some(path) = &cfg.output {
        persist(cfg, &report, &rows, path)?;
    }
    Ok(report)
}

/// Path of the CSV summary written next to a JSON-lines output.
pub fn summary_path(output: &Path) -> PathBuf {
    if output.extension().is_some_and(|e| e == "csv") {
        output.with_extension("summary.csv")
    } else {
        output.with_extension("csv")
    }
}

fn persist(cfg: &ScanConfig, report: &ScanReport, rows: &[Row], path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    let header = json!({"format": "gdet-scan", "version": 1, "config": cfg});
    writeln!(out, "{header}")?;
    for (c, v) in rows {
        writeln!(
            out,
            "{}",
            json!({"coeffs": c, "value": crate::json::number(v)})
        )?;
    }
    let mut summary = report.to_json();
    summary["summary"] = json!(true);
    writeln!(out, "{summary}")?;
    out.flush()?;

    let mut file = File::create(summary_path(path))?;
    writeln!(file, "# gdet-scan-summary v1")?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["value", "multiplicity"])?;
    for (v, n) in &report.distinct {
        w.write_record([v.to_string(), n.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Smallest `|det| ≥ 2` over all vectors with entries in `[lo, hi]` on the
/// given support (all slots if `None`). `None` if nothing qualifies.
pub fn lambda_scan(
    kind: GroupKind,
    lo: i64,
    hi: i64,
    support: Option<Vec<usize>>,
) -> Result<Option<BigInt>> {
    let cfg = ScanConfig {
        support,
        ..ScanConfig::exhaustive(&kind.to_string(), lo, hi)
    };
    let p = plan(&cfg, false)?;
    let two = BigInt::from(2);
    let best = (0..blocks(&p))
        .into_par_iter()
        .filter_map(|b| {
            let mut best: Option<BigInt> = None;
            run_block(&cfg, &p, b, |_, _, v| {
                let a = v.abs();
                if a >= two && best.as_ref().is_none_or(|m| a < *m) {
                    best = Some(a);
                }
            });
            best
        })
        .min();
    Ok(best)
}

/// `lambda_scan` result as `u64`, for small answers.
pub fn lambda_scan_u64(kind: GroupKind, lo: i64, hi: i64) -> Result<Option<u64>> {
    Ok(lambda_scan(kind, lo, hi, None)?.and_then(|v| v.to_u64()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_exhaustive_has_no_violations() {
        let r = scan(&ScanConfig::exhaustive("Z4", -2, 2)).unwrap();
        assert_eq!(r.total, 625);
        assert_eq!(r.violation_count, 0);
        assert_eq!(r.distinct.values().sum::<u64>(), 625);
    }

    #[test]
    fn zero_range_is_one_zero_vector() {
        let r = scan(&ScanConfig::exhaustive("S4", 0, 0)).unwrap();
        assert_eq!(r.total, 1);
        assert_eq!(r.zero_count, 1);
        assert_eq!(r.violation_count, 0);
        assert_eq!(r.min_abs_nontrivial(), None);
    }

    #[test]
    fn equal_seeds_give_equal_reports() {
        let cfg = ScanConfig::random("S4", -2, 2, 5000, 7);
        let a = scan(&cfg).unwrap();
        let b = scan(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        let c = scan(&ScanConfig::random("S4", -2, 2, 5000, 8)).unwrap();
        assert_ne!(a.distinct, c.distinct);
    }

    #[test]
    fn persisting_does_not_change_the_report() {
        let small = scan(&ScanConfig::random("Z3", -5, 5, 100, 3)).unwrap();
        let mut cfg = ScanConfig::random("Z3", -5, 5, 100, 3);
        cfg.full = true;
        let dir = tempfile::tempdir().unwrap();
        cfg.output = Some(dir.path().join("s.jsonl"));
        let again = scan(&cfg).unwrap();
        assert_eq!(small, again);
    }

    #[test]
    fn exhaustive_sets_grow_with_the_range() {
        let inner = scan(&ScanConfig::exhaustive("K4", -1, 1)).unwrap();
        let outer = scan(&ScanConfig::exhaustive("K4", -2, 2)).unwrap();
        assert!(inner
            .distinct
            .keys()
            .all(|v| outer.distinct.contains_key(v)));
    }

    #[test]
    fn config_bounds_are_enforced() {
        assert!(matches!(
            scan(&ScanConfig::exhaustive("S4", -1, 1)),
            Err(Error::ScanConfig(_))
        ));
        assert!(scan(&ScanConfig::exhaustive("Z4", 1, 0)).is_err());
        let mut cfg = ScanConfig::random("Z4", 0, 1, 10, 1);
        cfg.rng = "mt19937".into();
        assert!(scan(&cfg).is_err());
        assert!(scan(&ScanConfig::exhaustive("Z8", 0, 1)).is_err());
    }

    #[test]
    fn lambda_scans() {
        assert_eq!(lambda_scan_u64(GroupKind::Klein, -2, 2).unwrap(), Some(3));
        assert_eq!(
            lambda_scan_u64(GroupKind::Cyclic(3), -2, 2).unwrap(),
            Some(2)
        );
        // slots of the 5 + 24k witness
        let support = vec![1, 4, 8, 14, 16];
        let v = lambda_scan(GroupKind::Symmetric4, 0, 1, Some(support.clone())).unwrap();
        assert_eq!(v, Some(BigInt::from(5)));
        let v = lambda_scan(GroupKind::Symmetric4, -1, 1, Some(support)).unwrap();
        assert!(v.unwrap() >= BigInt::from(5));
    }

    #[test]
    fn output_files_have_headers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.jsonl");
        let mut cfg = ScanConfig::exhaustive("Z3", -1, 1);
        cfg.output = Some(path.clone());
        cfg.full = true;
        let r = scan(&cfg).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 27 + 2);
        assert!(lines[0].contains("\"format\":\"gdet-scan\""));
        assert!(lines[28].contains("\"summary\":true"));
        let csv = std::fs::read_to_string(summary_path(&path)).unwrap();
        assert!(csv.starts_with("# gdet-scan-summary v1\nvalue,multiplicity\n"));
        assert_eq!(csv.lines().count(), 2 + r.distinct.len());
    }

    #[test]
    fn config_round_trips_through_json() {
        let mut cfg = ScanConfig::random("S4", -3, 3, 10, 42);
        cfg.support = Some(vec![0, 5]);
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<ScanConfig>(&text).unwrap(), cfg);
        let minimal: ScanConfig =
            serde_json::from_str(r#"{"group":"Z4","lo":-1,"hi":1,"mode":{"kind":"exhaustive"}}"#)
                .unwrap();
        assert_eq!(minimal.rng, "chacha8");
    }
}
