//! `gdet`: integer group determinants from the command line.
//!
//! Exit codes: 0 success or "yes", 1 a domain "no" (non-member, failed
//! identity, scan violations), 2 any error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gdet_core::classify::{lambda_of, member, GroupRule};
use gdet_core::det::{det_exact, s4_factors};
use gdet_core::expr::parse_expr;
use gdet_core::group::{build_group, GroupKind, GroupTable};
use gdet_core::harness::{scan, ScanConfig, ScanMode};
use gdet_core::json::{number, numbers, parse_value};
use gdet_core::ring::RingElement;
use gdet_core::sympoly::{check_identity, IdentityId};
use gdet_core::witness::{synthesize, verify_certificate, WitnessCertificate};
use gdet_core::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Version of the `--json` output layout.
const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "gdet", version, about = "Exact integer group determinants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonFlag {
    /// Print one machine-readable JSON line.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of a group-ring element.
    Det {
        /// Group; defaults to the input's own group, else S4.
        #[arg(long)]
        group: Option<String>,
        /// File path, inline JSON, or an expression.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        coeffs: Option<String>,
        #[arg(long)]
        expr: Option<String>,
        /// Also print the S4 factor profile.
        #[arg(long)]
        factors: bool,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Membership verdict for an integer.
    Member {
        #[arg(long, default_value = "S4")]
        group: String,
        #[arg(allow_hyphen_values = true)]
        m: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Smallest nontrivial attainable absolute value.
    Lambda {
        #[arg(long, default_value = "S4")]
        group: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Witness certificate for an S4 target.
    Witness {
        #[arg(allow_hyphen_values = true, required_unless_present = "verify")]
        m: Option<String>,
        /// Check an existing certificate file instead.
        #[arg(long, conflicts_with = "m")]
        verify: Option<PathBuf>,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Check the symbolic factor congruences.
    VerifyIdentities {
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Exhaustive or random determinant scan.
    Scan {
        #[arg(long, default_value = "S4", conflicts_with = "config")]
        group: String,
        /// Entry range `lo:hi`.
        #[arg(long, allow_hyphen_values = true, default_value = "-1:1")]
        range: String,
        #[arg(long, conflicts_with = "exhaustive")]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value = "chacha8")]
        rng: String,
        /// Comma-separated slot indices that vary.
        #[arg(long)]
        support: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record every evaluated vector in the output.
        #[arg(long)]
        full: bool,
        /// Read the scan configuration from a JSON file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Parse an expression and print its coefficients.
    Parse {
        #[arg(long, default_value = "S4")]
        group: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        out: JsonFlag,
    },
}

type CliResult = Result<u8, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("GDET_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Det {
            group,
            coeffs,
            expr,
            factors,
            out,
        } => cmd_det(
            group.as_deref(),
            coeffs.as_deref(),
            expr.as_deref(),
            factors,
            out.json,
        ),
        Command::Member { group, m, out } => cmd_member(&group, &m, out.json),
        Command::Lambda { group, out } => cmd_lambda(&group, out.json),
        Command::Witness { m, verify, out } => {
            cmd_witness(m.as_deref(), verify.as_deref(), out.json)
        }
        Command::VerifyIdentities { id, out } => cmd_identities(id.as_deref(), out.json),
        Command::Scan {
            group,
            range,
            random,
            seed,
            exhaustive,
            rng,
            support,
            out,
            full,
            config,
            json,
        } => {
            let cfg = match config {
                Some(path) => {
                    let mut cfg = ScanConfig::load(&path)?;
                    if out.is_some() {
                        cfg.output = out;
                    }
                    cfg.full |= full;
                    cfg
                }
                None => {
                    let (lo, hi) = parse_range(&range)?;
                    let mode = match (random, exhaustive) {
                        (Some(count), false) => ScanMode::Random { count, seed },
                        (None, true) => ScanMode::Exhaustive,
                        _ => {
                            return Err(Error::Input(
                                "choose one of --random <count> or --exhaustive".into(),
                            ))
                        }
                    };
                    ScanConfig {
                        group,
                        lo,
                        hi,
                        mode,
                        rng,
                        support: support.as_deref().map(parse_support).transpose()?,
                        output: out,
                        full,
                    }
                }
            };
            cmd_scan(&cfg, json.json)
        }
        Command::Parse { group, expr, out } => {
            let table = table_for(&group)?;
            let e = parse_expr(&expr, &table)?;
            if out.json {
                emit(json!({"group": table.kind.to_string(), "coeffs": numbers(e.coeffs())}));
            } else {
                println!("{}", numbers(e.coeffs()));
            }
            Ok(0)
        }
    }
}

fn emit(mut v: Value) {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    println!("{v}");
}

fn table_for(group: &str) -> Result<Arc<GroupTable>, Error> {
    let kind: GroupKind = group.parse()?;
    if kind == GroupKind::Symmetric4 {
        return Ok(gdet_core::ring::s4());
    }
    Ok(Arc::new(build_group(kind)?))
}

fn parse_int(s: &str) -> Result<BigInt, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::Input(format!("not an integer: `{s}`")))
}

fn parse_range(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Input(format!("range must be lo:hi, got `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_support(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad support index `{t}`")))
        })
        .collect()
}

fn int_list(v: &Value, what: &str) -> Result<Vec<BigInt>, Error> {
    v.as_array()
        .ok_or_else(|| Error::Input(format!("`{what}` must be an array")))?
        .iter()
        .map(|x| parse_value(x).ok_or_else(|| Error::Input(format!("non-integer in `{what}`"))))
        .collect()
}

/// Reads an element from a file path, inline JSON or an expression.
fn load_element(group: Option<&str>, source: &str) -> Result<RingElement, Error> {
    let text = if Path::new(source).is_file() {
        std::fs::read_to_string(source)?
    } else {
        source.to_string()
    };
    let t = text.trim();
    if !(t.starts_with('[') || t.starts_with('{')) {
        return parse_expr(t, &table_for(group.unwrap_or("S4"))?);
    }
    let v: Value = serde_json::from_str(t)?;
    let group_name = match v.get("group") {
        Some(g) => g
            .as_str()
            .ok_or_else(|| Error::Input("`group` must be a string".into()))?,
        None => group.unwrap_or("S4"),
    };
    let table = table_for(group_name)?;
    if let Some(g) = group {
        if table.kind != g.parse::<GroupKind>()? {
            return Err(Error::Input(format!(
                "input is for {group_name} but --group is {g}"
            )));
        }
    }
    let coeffs = if v.is_array() {
        int_list(&v, "coefficients")?
    } else if let Some(c) = v.get("coeffs").or_else(|| v.get("coefficients")) {
        int_list(c, "coeffs")?
    } else if let (Some(a), Some(b)) = (v.get("a"), v.get("b")) {
        if table.kind != GroupKind::Symmetric4 {
            return Err(Error::Input("`a`/`b` form is only for S4".into()));
        }
        let (a, b) = (int_list(a, "a")?, int_list(b, "b")?);
        if a.len() != 12 || b.len() != 12 {
            return Err(Error::Input("`a` and `b` need 12 entries each".into()));
        }
        return RingElement::from_ab(&a, &b);
    } else {
        return Err(Error::Input("expected `coeffs`, or `a` and `b`".into()));
    };
    RingElement::new(table, coeffs)
}

fn cmd_det(
    group: Option<&str>,
    coeffs: Option<&str>,
    expr: Option<&str>,
    factors: bool,
    json_out: bool,
) -> CliResult {
    let e = match (coeffs, expr) {
        (Some(c), None) => load_element(group, c)?,
        (None, Some(x)) => parse_expr(x, &table_for(group.unwrap_or("S4"))?)?,
        _ => {
            return Err(Error::Input(
                "give exactly one of --coeffs or --expr".into(),
            ))
        }
    };
    let det = det_exact(&e);
    let profile = if factors { Some(s4_factors(&e)?) } else { None };
    if json_out {
        let mut v = json!({
            "group": e.group().kind.to_string(),
            "coeffs": numbers(e.coeffs()),
            "det": number(&det),
        });
        if let Some(p) = &profile {
            v["factors"] = serde_json::to_value(p)?;
        }
        emit(v);
    } else {
        println!("{det}");
        if let Some(p) = &profile {
            println!("{}", serde_json::to_string_pretty(p)?);
        }
    }
    Ok(0)
}

fn cmd_member(group: &str, m: &str, json_out: bool) -> CliResult {
    let rule: GroupRule = group.parse()?;
    let verdict = member(rule, &parse_int(m)?)?;
    let v = serde_json::to_value(&verdict)?;
    if json_out {
        emit(v);
    } else {
        println!("{}", serde_json::to_string_pretty(&v)?);
    }
    Ok(if verdict.member { 0 } else { 1 })
}

fn cmd_lambda(group: &str, json_out: bool) -> CliResult {
    let rule: GroupRule = group.parse()?;
    let l = lambda_of(rule)?;
    if json_out {
        emit(json!({"rule": rule.to_string(), "lambda": l}));
    } else {
        println!("{l}");
    }
    Ok(0)
}

fn cmd_witness(m: Option<&str>, verify: Option<&Path>, json_out: bool) -> CliResult {
    let cert: WitnessCertificate = match (m, verify) {
        (_, Some(path)) => serde_json::from_reader(std::fs::File::open(path)?)?,
        (Some(m), None) => match synthesize(&parse_int(m)?) {
            Ok(c) => c,
            Err(e @ Error::NotInSet(_)) => {
                eprintln!("{e}");
                return Ok(1);
            }
            Err(e) => return Err(e),
        },
        (None, None) => return Err(Error::Input("give a target or --verify <file>".into())),
    };
    let verified = verify_certificate(&cert);
    let mut v = serde_json::to_value(&cert)?;
    v["verified"] = json!(verified);
    if json_out {
        emit(v);
    } else {
        println!("{}", serde_json::to_string_pretty(&v)?);
    }
    Ok(if verified { 0 } else { 1 })
}

fn cmd_identities(id: Option<&str>, json_out: bool) -> CliResult {
    let ids: Vec<IdentityId> = match id {
        Some(s) => vec![s.parse()?],
        None => IdentityId::ALL.to_vec(),
    };
    let mut all = true;
    let mut rows = Vec::new();
    for id in ids {
        let start = Instant::now();
        let report = check_identity(id);
        let secs = start.elapsed().as_secs_f64();
        all &= report.holds;
        if json_out {
            let mut v = serde_json::to_value(&report)?;
            v["seconds"] = json!(secs);
            rows.push(v);
        } else {
            let status = if report.holds { "pass" } else { "FAIL" };
            println!("{:<14} {status}  {secs:.2}s", id.name());
            for t in &report.residual_sample {
                println!("    residual {t}");
            }
        }
    }
    if json_out {
        emit(json!({"all_hold": all, "identities": rows}));
    }
    Ok(if all { 0 } else { 1 })
}

fn cmd_scan(cfg: &ScanConfig, json_out: bool) -> CliResult {
    let start = Instant::now();
    let report = scan(cfg)?;
    let secs = start.elapsed().as_secs_f64();
    if json_out {
        let mut v = report.to_json();
        v["config"] = serde_json::to_value(cfg)?;
        v["seconds"] = json!(secs);
        emit(v);
    } else {
        println!(
            "{} vectors, {} zero, {} distinct values, {} violations ({secs:.2}s)",
            report.total,
            report.zero_count,
            report.distinct.len(),
            report.violation_count
        );
        if let Some(m) = report.min_abs_nontrivial() {
            println!("smallest |det| >= 2: {m}");
        }
        for v in &report.violations {
            println!("violation: {} at {:?}", v.value, v.coeffs);
        }
    }
    Ok(if report.violation_count == 0 { 0 } else { 1 })
}
