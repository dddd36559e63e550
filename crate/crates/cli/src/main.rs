use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harbourne_core::ballquotient::{feasibility, scan, ScanGrid};
use harbourne_core::bounds::evaluate;
use harbourne_core::covering::{all_integral, canonical_positivity_hint, cover_invariants};
use harbourne_core::num::{ser_int, ser_rational};
use harbourne_core::pullback::{gallery, generic_lines, lookup, pullback, LineArrangement};
use harbourne_core::{ArrangementProfile, Error, IncidenceStructure, NumClass, Rational, RuledSurface};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

mod render;

use render::{render, Format};

#[derive(Parser)]
#[command(name = "harbourne", version, about = "Harbourne constants, cover invariants and ball-quotient scans for curve arrangements on ruled surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Digits after the point in `pretty` output.
    #[arg(long, default_value_t = 6, global = true)]
    decimals: usize,
}

#[derive(Args)]
struct Input {
    /// JSON input file, `-` for stdin.
    path: Option<PathBuf>,
    /// Inline JSON instead of a file.
    #[arg(long, conflicts_with = "path")]
    json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check an arrangement profile against the standing assumptions.
    Validate(Input),
    /// Exact Harbourne constant of a profile.
    Hconst(Input),
    /// Chern numbers of the associated abelian cover.
    Cover(Input),
    /// Lower bounds and Hirzebruch-type inequalities.
    Bounds(Input),
    /// Ball-quotient feasibility over a parameter grid.
    BqScan(ScanArgs),
    /// Pull a line arrangement back to a Hirzebruch surface X_e.
    Pullback(PullbackArgs),
    /// Built-in line arrangements and their pull-backs.
    Gallery {
        #[arg(long, default_value_t = 4)]
        e: i64,
    },
    /// Audit an explicit incidence structure.
    IncidenceCheck(Input),
}

#[derive(Args)]
struct ScanArgs {
    /// JSON grid `{"g":[lo,hi],"e":[..],"a":[..],"b_offset":[..],"d":[..]}`.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    g: Option<Vec<u32>>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    e: Option<Vec<i64>>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    a: Option<Vec<i64>>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    b_offset: Option<Vec<i64>>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    d: Option<Vec<u32>>,
    /// Full verdict at a single point instead of a scan.
    #[arg(long, num_args = 5, value_names = ["G", "E", "A", "B", "D"], allow_negative_numbers = true, conflicts_with_all = ["config", "g", "e", "a", "b_offset", "d"])]
    point: Option<Vec<i64>>,
}

#[derive(Args)]
struct PullbackArgs {
    /// `klein`, `wiman` or `generic-<d>`; otherwise a line arrangement is read
    /// from the input.
    #[arg(long)]
    arrangement: Option<String>,
    #[arg(long)]
    e: i64,
    #[command(flatten)]
    input: Input,
}

enum Failure {
    /// Malformed input or unusable parameters.
    Input(String),
    /// Well-formed input that fails validation; the report is still printed.
    Invalid(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ValidationFailed(_) | Error::EmptySingularLocus | Error::AuditFailed(_) => {
                Failure::Invalid(json!({ "error": e.to_string() }))
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_input(input: &Input) -> std::result::Result<String, Failure> {
    if let Some(s) = &input.json {
        return Ok(s.clone());
    }
    match &input.path {
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Err(Failure::Input("no input: give a path, `-`, or --json".into())),
    }
}

fn parse<T: DeserializeOwned>(input: &Input) -> std::result::Result<T, Failure> {
    let text = read_input(input)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed input: {e}")))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports always serialize")
}

fn validation_gate(p: &ArrangementProfile) -> std::result::Result<(), Failure> {
    let report = p.validate_star();
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Invalid(json!({ "valid": false, "validation": to_value(&report) })))
    }
}

fn validate(input: &Input) -> Outcome {
    let p: ArrangementProfile = parse(input)?;
    let report = p.validate_extra();
    let v = json!({ "valid": report.passed(), "fully_verified": report.fully_verified(), "validation": to_value(&report) });
    if report.passed() {
        Ok(v)
    } else {
        Err(Failure::Invalid(v))
    }
}

#[derive(Serialize)]
struct HconstReport {
    #[serde(serialize_with = "ser_rational")]
    harbourne_constant: Rational,
    #[serde(serialize_with = "ser_int")]
    h: BigInt,
    d: u32,
    #[serde(serialize_with = "ser_int")]
    f0: BigInt,
    #[serde(serialize_with = "ser_int")]
    f1: BigInt,
    #[serde(serialize_with = "ser_int")]
    f2: BigInt,
}

fn hconst(input: &Input) -> Outcome {
    let p: ArrangementProfile = parse(input)?;
    validation_gate(&p)?;
    let st = p.stats();
    Ok(to_value(&HconstReport {
        harbourne_constant: p.harbourne_constant()?,
        h: st.h,
        d: p.d,
        f0: st.f0,
        f1: st.f1,
        f2: st.f2,
    }))
}

fn cover(input: &Input) -> Outcome {
    let p: ArrangementProfile = parse(input)?;
    validation_gate(&p)?;
    let inv = cover_invariants(&p)?;
    let hint = canonical_positivity_hint(&p)?;
    #[derive(Serialize)]
    struct Totals {
        #[serde(serialize_with = "ser_rational")]
        euler_characteristic: Rational,
        #[serde(serialize_with = "ser_rational")]
        c1_sq: Rational,
        #[serde(serialize_with = "ser_int")]
        scale: BigInt,
    }
    let totals = Totals { euler_characteristic: inv.euler_characteristic(), c1_sq: inv.c1_sq(), scale: inv.scale() };
    Ok(json!({
        "normalized": to_value(&inv),
        "totals": to_value(&totals),
        "all_integral": all_integral(&inv),
        "canonical": to_value(&hint),
    }))
}

fn bounds(input: &Input) -> Outcome {
    let p: ArrangementProfile = parse(input)?;
    validation_gate(&p)?;
    let report = evaluate(&p)?;
    let mut v = to_value(&report);
    v["falsifies_hypotheses"] = json!(report.falsifies_hypotheses());
    Ok(v)
}

fn range<T: Copy>(flag: &Option<Vec<T>>, fallback: [T; 2]) -> [T; 2] {
    flag.as_ref().map(|r| [r[0], r[1]]).unwrap_or(fallback)
}

fn bq_scan(args: &ScanArgs) -> Outcome {
    if let Some(pt) = &args.point {
        let g = u32::try_from(pt[0]).map_err(|_| Failure::Input(format!("g must be non-negative, got {}", pt[0])))?;
        let d = u32::try_from(pt[4]).map_err(|_| Failure::Input(format!("d must be non-negative, got {}", pt[4])))?;
        let v = feasibility(RuledSurface::new(g, pt[1]), pt[2], pt[3], d)?;
        return Ok(to_value(&v));
    }
    let base = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed grid: {e}")))?
        }
        None => ScanGrid::default(),
    };
    let grid = ScanGrid {
        g: range(&args.g, base.g),
        e: range(&args.e, base.e),
        a: range(&args.a, base.a),
        b_offset: range(&args.b_offset, base.b_offset),
        d: range(&args.d, base.d),
    };
    let report = scan(&grid)?;
    let mut v = to_value(&report);
    v["shortcuts_agree"] = json!(report.shortcuts_agree());
    Ok(v)
}

fn named_arrangement(name: &str) -> std::result::Result<LineArrangement, Failure> {
    if let Some(l) = lookup(name) {
        return Ok(l);
    }
    if let Some(d) = name.strip_prefix("generic-") {
        let d = d.parse().map_err(|_| Failure::Input(format!("bad line count in `{name}`")))?;
        return Ok(generic_lines(d)?);
    }
    Err(Failure::Input(format!("unknown arrangement `{name}`")))
}

fn pullback_cmd(args: &PullbackArgs) -> Outcome {
    let l = match &args.arrangement {
        Some(name) => named_arrangement(name)?,
        None => parse(&args.input)?,
    };
    Ok(to_value(&pullback(&l, args.e)?))
}

fn gallery_cmd(e: i64) -> Outcome {
    let mut out = Vec::new();
    for entry in gallery() {
        #[derive(Serialize)]
        struct Row<'a> {
            name: &'a str,
            arrangement: &'a LineArrangement,
            #[serde(serialize_with = "ser_rational")]
            plane_harbourne_constant: Rational,
            pullback: ArrangementProfile,
        }
        let row = Row {
            name: entry.name,
            arrangement: &entry.arrangement,
            plane_harbourne_constant: entry.arrangement.harbourne_constant()?,
            pullback: pullback(&entry.arrangement, e)?,
        };
        out.push(to_value(&row));
    }
    Ok(json!({ "e": e, "arrangements": out }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IncidenceInput {
    surface: RuledSurface,
    class: NumClass,
    incidence: IncidenceStructure,
}

fn incidence_check(input: &Input) -> Outcome {
    let inp: IncidenceInput = parse(input)?;
    let h = inp.surface.pairwise_intersection(inp.class);
    let audit = inp.incidence.audit(&h);
    let mut v = json!({
        "audit": to_value(&audit),
        "audit_passed": audit.passed(),
        "global_t": to_value(&inp.incidence.global_t()),
        "curve_stats": to_value(&inp.incidence.curve_stats()),
        "incidence_rank": inp.incidence.incidence_rank(),
        "point_count": inp.incidence.point_count(),
    });
    if !audit.passed() {
        return Err(Failure::Invalid(v));
    }
    v["four_curve_condition"] = json!(inp.incidence.check_four_curve()?);
    let p = inp.incidence.profile_of(inp.surface, inp.class)?;
    let validation = p.validate_star();
    v["profile"] = to_value(&p);
    v["validation"] = to_value(&validation);
    if validation.passed() {
        Ok(v)
    } else {
        Err(Failure::Invalid(v))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate(i) => validate(i),
        Command::Hconst(i) => hconst(i),
        Command::Cover(i) => cover(i),
        Command::Bounds(i) => bounds(i),
        Command::BqScan(a) => bq_scan(a),
        Command::Pullback(a) => pullback_cmd(a),
        Command::Gallery { e } => gallery_cmd(*e),
        Command::IncidenceCheck(i) => incidence_check(i),
    };
    match outcome {
        Ok(v) => {
            print!("{}", render(&v, cli.format, cli.decimals));
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(v)) => {
            print!("{}", render(&v, cli.format, cli.decimals));
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
