//! Command-line front end. Reports are JSON (CSV for tables and dumps) and
//! byte-identical across runs with the same inputs.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::bounds::{self, ExplicitConstants};
use crate::boxenum::{self, BoxKind};
use crate::construct;
use crate::error::{Error, Result};
use crate::funcfield::{self, SectionSpace};
use crate::gf::FiniteField;
use crate::linrel::{self, SolutionQuery};
use crate::numberfield::{bigint_json, AlgInt, FieldContext, FieldSpec};
use crate::rational::{format_rational, parse_rational, round_sig, to_f64};
use crate::residue;
use crate::setcalc::{growth_report, ElementSet, GrowthReport, PrimeField};

#[derive(Parser, Debug)]
#[command(name = "sumprod", version, about = "Exact sum-product counterexample laboratory")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Append growth rows to the plot-data CSV.
    #[arg(long, global = true)]
    pub emit_plot_data: bool,
    /// Plot-data CSV path.
    #[arg(long, global = true, default_value = "plot_data.csv")]
    pub plot_file: PathBuf,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field data: discriminant, root intervals, regulator.
    Field(FieldArgs),
    /// Enumerate an additive or unit box and check its counting bounds.
    Box(BoxArgs),
    /// Build A = G·P (or A = B×(Y)) and verify its envelopes.
    Construct(ConstructArgs),
    /// Growth report of a set file.
    Report(ReportArgs),
    /// Reduce a set modulo a split prime.
    Residue(ResidueArgs),
    /// The function-field construction over F_q.
    Ff(FfArgs),
    /// Explicit constants and exponent conditions.
    Bounds(BoundsArgs),
    /// Count solutions of x_1 + ... + x_k = 1 in a unit box.
    Linrel(LinrelArgs),
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Built-in name (sqrt2, sqrt3, golden, zeta7plus), inline JSON, or JSON file.
    #[arg(long)]
    pub field: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Additive,
    Unit,
}

#[derive(Args, Debug)]
pub struct BoxArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub radius: String,
    /// Rational-integer center (additive boxes only).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub center: String,
    /// Include the elements in the report.
    #[arg(long)]
    pub elements: bool,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long = "X", default_value = "10")]
    pub x: i64,
    #[arg(long, default_value = "0")]
    pub r: String,
    #[arg(long = "Y")]
    pub y: String,
    #[arg(long)]
    pub mult_only: bool,
    /// Fold count for the multiplicative-only envelopes.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Write A as a set file.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct ResidueArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub set: PathBuf,
    /// Smallest prime to try; defaults to just above the stability threshold when the set carries X and Y.
    #[arg(long)]
    pub pmin: Option<u64>,
    /// 0-based index of the root used for reduction.
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Number of split primes to report.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Args, Debug)]
pub struct FfArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long = "dP")]
    pub dp: usize,
    #[arg(long = "dG")]
    pub dg: usize,
    /// Write A as CSV coefficient rows.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Identify A with rational functions by dividing by this element of P (comma-separated coefficients).
    #[arg(long)]
    pub pivot: Option<String>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[command(subcommand)]
    pub command: BoundsCommand,
}

#[derive(Args, Debug, Clone)]
pub struct ConstantArgs {
    #[arg(long)]
    pub c1: Option<String>,
    #[arg(long = "C2")]
    pub c2: Option<String>,
    #[arg(long)]
    pub c3: Option<String>,
    #[arg(long = "C4")]
    pub c4: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Derived coefficients K1a, K1b, K2a, K2b, s.
    Coeffs(ConstantArgs),
    /// Maximize the guaranteed saving.
    Optimize(ConstantArgs),
    /// Savings at a given (Y, ln X).
    Saving {
        #[command(flatten)]
        constants: ConstantArgs,
        #[arg(long = "Y")]
        y: f64,
        #[arg(long = "lnX")]
        ln_x: f64,
    },
    /// Exponent conditions for the function-field construction.
    Ff {
        #[arg(long, required_unless_present = "table")]
        q: Option<u64>,
        #[arg(long, required_unless_present = "table")]
        alpha: Option<f64>,
        #[arg(long, required_unless_present = "table")]
        beta: Option<f64>,
        /// CSV of the four published parameter rows.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Args, Debug)]
pub struct LinrelArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long = "Y")]
    pub y: String,
    #[arg(long)]
    pub k: usize,
    /// Require positivity in this 1-based embedding (ascending roots); bare flag picks the largest root.
    #[arg(long, num_args = 0..=1, default_missing_value = "0")]
    pub positive: Option<usize>,
    #[arg(long)]
    pub nondegenerate: bool,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub target: String,
    #[arg(long, default_value_t = linrel::DEFAULT_BUDGET)]
    pub budget: u128,
}

/// Failure modes of a run: bad configuration (exit 2) or a module error (exit 1).
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn config<T>(r: Result<T>) -> Run<T> {
    r.map_err(|e| Failure::Config(e.to_string()))
}

/// Resolves a field given as a built-in name, inline JSON, or a JSON file path.
pub fn load_field_spec(s: &str) -> Result<FieldSpec> {
    if let Some(spec) = FieldSpec::builtin(s) {
        return Ok(spec);
    }
    if s.trim_start().starts_with('{') {
        return FieldSpec::from_json(s);
    }
    let text = fs::read_to_string(s).map_err(|e| Error::Parse(format!("cannot read field {s:?}: {e}")))?;
    FieldSpec::from_json(&text)
}

fn load_field(s: &str) -> Run<FieldContext> {
    let spec = config(load_field_spec(s))?;
    Ok(FieldContext::new(&spec)?)
}

fn rational_arg(s: &str) -> Run<BigRational> {
    config(parse_rational(s))
}

/// Rounds every float to 12 significant digits.
fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap(), 12);
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

struct Output {
    body: String,
}

impl Output {
    fn json(v: Value) -> Self {
        Output { body: serde_json::to_string_pretty(&round_floats(v)).expect("json") + "\n" }
    }

    fn text(s: String) -> Self {
        Output { body: s }
    }
}

struct Context<'a> {
    cli: &'a Cli,
}

impl Context<'_> {
    fn plot(&self, set_id: &str, r: &GrowthReport) -> Run<()> {
        if !self.cli.emit_plot_data {
            return Ok(());
        }
        let path = &self.cli.plot_file;
        let fresh = !path.exists() || fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Failure::Config(format!("cannot open {}: {e}", path.display())))?;
        let mut line = String::new();
        if fresh {
            line.push_str("setId,n,sumSize,prodSize,deltaPlus,deltaTimes,solymosi\n");
        }
        line.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            set_id,
            r.n,
            r.sum_size,
            r.prod_size,
            round_sig(r.delta_plus, 12),
            round_sig(r.delta_times, 12),
            round_sig(r.solymosi, 12)
        ));
        f.write_all(line.as_bytes()).map_err(|e| Failure::Config(e.to_string()))
    }
}

fn write_file(path: &Path, body: &str) -> Run<()> {
    fs::write(path, body).map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))
}

fn set_file_json<A: crate::setcalc::Ambient>(set: &ElementSet<A>, meta: Option<Value>) -> String {
    let mut v = set.to_json();
    if let Some(m) = meta {
        v["meta"] = m;
    }
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn cmd_field(a: &FieldArgs) -> Run<Output> {
    let ctx = load_field(&a.field)?;
    let roots: Vec<Value> = (0..ctx.degree())
        .map(|i| {
            let iv = ctx.root_interval(i, 40);
            json!({
                "index": i,
                "lo": format_rational(&iv.lo),
                "hi": format_rational(&iv.hi),
                "approx": ctx.embed_f64(&ctx.theta(), i),
            })
        })
        .collect();
    let regulator = match ctx.regulator_rank1() {
        Ok(r) => json!({
            "unit": r.unit,
            "value": r.value(),
            "lo": to_f64(&r.log.lo),
            "hi": to_f64(&r.log.hi),
        }),
        Err(_) => Value::Null,
    };
    Ok(Output::json(json!({
        "field": ctx.spec(),
        "degree": ctx.degree(),
        "disc": bigint_json(ctx.disc()),
        "roots": roots,
        "regulator": regulator,
    })))
}

fn cmd_box(a: &BoxArgs) -> Run<Output> {
    let ctx = load_field(&a.field)?;
    let radius = rational_arg(&a.radius)?;
    if radius <= BigRational::from_integer(BigInt::from(0)) {
        return Err(Failure::Config("radius must be positive".into()));
    }
    let center: BigInt = a.center.parse().map_err(|_| Failure::Config(format!("bad center {:?}", a.center)))?;
    let (kind, set) = match a.kind {
        KindArg::Additive => {
            let c = AlgInt::constant(center.clone(), ctx.degree());
            (BoxKind::Additive, boxenum::enum_additive_box(&ctx, &c, &radius))
        }
        KindArg::Unit => (BoxKind::Unit, boxenum::enum_unit_box(&ctx, &radius)),
    };
    let mut report = if center == BigInt::from(0) || matches!(kind, BoxKind::Unit) {
        to_value(&boxenum::check_ball_bounds(&ctx, kind, &radius)?)
    } else {
        json!({"kind": kind, "radius": format_rational(&radius), "count": set.len(), "center": center.to_string()})
    };
    if matches!(kind, BoxKind::Unit) {
        let sep = boxenum::separation_check(&ctx, &set)?;
        report["separation"] = json!({"checked": sep.checked, "trivial": sep.trivial, "witnesses": sep.witnesses.len()});
    }
    if a.elements {
        report["elements"] = Value::Array(set.iter().map(to_value).collect());
    }
    Ok(Output::json(report))
}

fn cmd_construct(ctx_cli: &Context, a: &ConstructArgs) -> Run<Output> {
    let ctx = load_field(&a.field)?;
    let y = rational_arg(&a.y)?;
    let field_label = ctx.spec().label();
    if a.mult_only {
        let m = construct::build_mult_only(&ctx, &y)?;
        let env = construct::verify_mult_envelopes(&m, a.k)?;
        let mut out = json!({
            "sizes": {"A": m.a.len()},
            "Y": format_rational(&y),
            "envelopes": to_value(&env),
        });
        if m.a.len() >= 2 {
            let g = growth_report(&m.a)?;
            ctx_cli.plot(&format!("mult:{field_label}:Y{}", format_rational(&y)), &g)?;
            out["growth"] = to_value(&g);
        }
        if let Some(p) = &a.dump {
            write_file(p, &set_file_json(&m.a, Some(json!({"Y": format_rational(&y), "scale": "1"}))))?;
        }
        return Ok(Output::json(out));
    }
    let r = rational_arg(&a.r)?;
    let c = construct::build_gp(&ctx, a.x, &r, &y)?;
    let env = construct::verify_gp_envelopes(&c)?;
    let g = GrowthReport::from_sizes(c.a.len(), env.sum_size, env.prod_size).ok();
    if let Some(g) = &g {
        ctx_cli.plot(&format!("gp:{field_label}:X{}:r{}:Y{}", a.x, format_rational(&r), format_rational(&y)), g)?;
    }
    if let Some(p) = &a.dump {
        let meta = json!({"X": a.x.to_string(), "Y": format_rational(&y), "r": format_rational(&r)});
        write_file(p, &set_file_json(&c.a, Some(meta)))?;
    }
    let summary = construct::gp_summary(&c);
    Ok(Output::json(json!({
        "sizes": {"G": c.g.len(), "P": c.p.len(), "A": c.a.len()},
        "directProduct": c.direct_product,
        "construction": summary,
        "envelopes": to_value(&env),
        "growth": g.map(|g| to_value(&g)),
        "stabilityThreshold": residue::stability_threshold(&c).to_string(),
    })))
}

/// A set file read back into one of the three ambients.
enum LoadedSet {
    Ring(ElementSet<FieldContext>, Option<construct::Envelope>),
    Prime(ElementSet<PrimeField>),
    Sections(ElementSet<SectionSpace>),
}

fn json_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

fn json_row(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array().ok_or_else(|| Error::Parse("element must be an array".into()))?.iter().map(json_bigint).collect()
}

fn load_set(path: &Path) -> Run<LoadedSet> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Config(format!("bad set file: {e}")))?;
    let amb = &v["ambient"];
    let elements = v["elements"].as_array().ok_or_else(|| Failure::Config("set file lacks elements".into()))?;
    let rows: Vec<Vec<BigInt>> = config(elements.iter().map(json_row).collect())?;
    match amb["kind"].as_str() {
        Some("number_ring") => {
            let spec: FieldSpec = serde_json::from_value(amb["field"].clone()).map_err(|e| Failure::Config(e.to_string()))?;
            let ctx = FieldContext::new(&spec)?;
            let mut set = ElementSet::new(ctx.clone());
            for row in rows {
                if row.len() != ctx.degree() {
                    return Err(Failure::Module(Error::MixedFields));
                }
                set.insert(AlgInt::new(row));
            }
            let meta = &v["meta"];
            let envelope = match (meta["X"].as_str(), meta["Y"].as_str()) {
                (Some(x), Some(y)) => Some(construct::Envelope {
                    scale: rational_arg(x)? * BigRational::from_integer(BigInt::from(2)),
                    log: rational_arg(y)?,
                }),
                (None, Some(y)) => Some(construct::Envelope { scale: BigRational::one(), log: rational_arg(y)? }),
                _ => None,
            };
            Ok(LoadedSet::Ring(set, envelope))
        }
        Some("prime_field") => {
            let p = amb["p"].as_u64().ok_or_else(|| Failure::Config("prime_field needs p".into()))?;
            let f = PrimeField::new(p);
            let elems = rows.iter().map(|r| r.first().map(|c| f.reduce(c)).unwrap_or(0));
            Ok(LoadedSet::Prime(ElementSet::from_elems(f, elems)))
        }
        Some("sections") => {
            let q = amb["q"].as_u64().ok_or_else(|| Failure::Config("sections need q".into()))?;
            let cap = amb["cap"].as_u64().ok_or_else(|| Failure::Config("sections need cap".into()))? as usize;
            let space = SectionSpace::new(Arc::new(FiniteField::new(q)?), cap);
            let mut set = ElementSet::new(space.clone());
            for r in rows {
                let codes: Vec<u8> = r
                    .iter()
                    .map(|c| c.to_u8().filter(|&v| (v as u32) < space.field.q()))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Failure::Config("section coefficient out of range".into()))?;
                set.insert(space.section(&codes)?);
            }
            Ok(LoadedSet::Sections(set))
        }
        _ => Err(Failure::Config("unknown ambient kind".into())),
    }
}

fn cmd_report(ctx_cli: &Context, a: &ReportArgs) -> Run<Output> {
    let report = match load_set(&a.input)? {
        LoadedSet::Ring(s, _) => growth_report(&s)?,
        LoadedSet::Prime(s) => growth_report(&s)?,
        LoadedSet::Sections(s) => funcfield::section_growth(&s)?,
    };
    let id = a.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    ctx_cli.plot(&id, &report)?;
    Ok(Output::json(to_value(&report)))
}

fn cmd_residue(ctx_cli: &Context, a: &ResidueArgs) -> Run<Output> {
    let ctx = load_field(&a.field)?;
    let LoadedSet::Ring(set, envelope) = load_set(&a.set)? else {
        return Err(Failure::Module(Error::MixedAmbient));
    };
    if set.ambient() != &ctx {
        return Err(Failure::Module(Error::MixedFields));
    }
    let threshold = envelope.as_ref().map(|e| residue::stability_threshold_for(e, ctx.degree()));
    let pmin = match (a.pmin, &threshold) {
        (Some(p), _) => p,
        (None, Some(t)) => (t + BigInt::one())
            .to_u64()
            .ok_or_else(|| Failure::Config("stability threshold exceeds 64 bits; pass --pmin".into()))?,
        (None, None) => return Err(Failure::Config("--pmin is required for sets without X/Y metadata".into())),
    };
    let scan = residue::find_split_primes(&ctx, pmin, a.count);
    let mut results = Vec::new();
    for w in &scan.witnesses {
        let red = residue::reduce_set(&set, w, a.root, envelope.as_ref())?;
        let over_ring = growth_report(&set).ok();
        let over_fp = growth_report(&red.image).ok();
        if let Some(g) = &over_fp {
            ctx_cli.plot(&format!("residue:{}:p{}", ctx.spec().label(), w.p), g)?;
        }
        results.push(json!({
            "p": w.p,
            "roots": w.roots,
            "root": red.root,
            "imageSize": red.image.len(),
            "injective": red.injective,
            "predictedInjective": red.predicted_injective,
            "realizedRatio": residue::realized_ratio(set.len(), w.p),
            "fpReport": over_fp.map(|g| to_value(&g)),
            "ringReport": over_ring.map(|g| to_value(&g)),
            "aboveThreshold": threshold.as_ref().map(|t| BigInt::from(w.p) > *t),
        }));
    }
    Ok(Output::json(json!({
        "setSize": set.len(),
        "stabilityThreshold": threshold.map(|t| t.to_string()),
        "scan": {"scannedTo": scan.scanned_to, "capped": scan.capped},
        "results": results,
    })))
}

fn cmd_ff(ctx_cli: &Context, a: &FfArgs) -> Run<Output> {
    let field = Arc::new(FiniteField::new(a.q)?);
    let c = funcfield::build_a_ff(&field, a.dp, a.dg)?;
    let mut out = json!({
        "q": a.q,
        "dP": a.dp,
        "dG": a.dg,
        "modulus": field.modulus(),
        "sizes": {
            "P": c.p.len(),
            "G": c.g.len(),
            "A": c.a.len(),
            "expectedP": funcfield::expected_p_size(a.q, a.dp).to_string(),
            "expectedG": funcfield::expected_g_size(a.q, a.dg).to_string(),
        },
        "identities": {
            "pCount": c.p.len() as u128 == funcfield::expected_p_size(a.q, a.dp),
            "gCount": c.g.len() as u128 == funcfield::expected_g_size(a.q, a.dg),
            "pgProduct": c.a.len() * (a.q as usize - 1) == c.p.len() * c.g.len(),
        },
    });
    match funcfield::ff_growth_report(&c) {
        Ok(g) => {
            ctx_cli.plot(&format!("ff:q{}:dP{}:dG{}", a.q, a.dp, a.dg), &g.report)?;
            out["envelopes"] = json!({
                "sumSize": g.report.sum_size,
                "sumBound": g.sum_bound.to_string(),
                "sumOk": g.sum_ok,
                "ggSplits": g.gg_splits,
            });
            out["growth"] = to_value(&g.report);
        }
        Err(Error::TooSmall(_)) => out["growth"] = Value::Null,
        Err(e) => return Err(e.into()),
    }
    if let Some(p) = &a.pivot {
        let coeffs: Vec<u8> = p
            .split(',')
            .map(|t| t.trim().parse::<u8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Failure::Config(format!("bad pivot {p:?}")))?;
        out["rational"] = to_value(&funcfield::ff_to_rational(&c, &coeffs)?);
    }
    if let Some(path) = &a.dump {
        let mut csv = String::new();
        for e in c.a.iter() {
            csv.push_str(&e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            csv.push('\n');
        }
        write_file(path, &csv)?;
    }
    Ok(Output::json(out))
}

fn constants(a: &ConstantArgs) -> Run<ExplicitConstants> {
    let d = ExplicitConstants::default();
    let pick = |s: &Option<String>, dflt: f64| -> Run<f64> {
        match s {
            Some(s) => Ok(to_f64(&rational_arg(s)?)),
            None => Ok(dflt),
        }
    };
    let k = ExplicitConstants { c1: pick(&a.c1, d.c1)?, c2: pick(&a.c2, d.c2)?, c3: pick(&a.c3, d.c3)?, c4: pick(&a.c4, d.c4)? };
    config(k.validate())?;
    Ok(k)
}

fn cmd_bounds(a: &BoundsArgs) -> Run<Output> {
    match &a.command {
        BoundsCommand::Coeffs(c) => {
            let k = constants(c)?;
            Ok(Output::json(json!({
                "constants": to_value(&k),
                "eps": bounds::derived_eps(&k),
                "coefficients": to_value(&bounds::coefficient_bundle(&k)),
            })))
        }
        BoundsCommand::Optimize(c) => {
            let k = constants(c)?;
            let r = bounds::optimize_c(&k)?;
            let s = bounds::saving_at(&k, r.y_star, r.ln_x_star)?;
            let mut v = to_value(&r);
            v["savings"] = to_value(&s);
            v["constants"] = to_value(&k);
            Ok(Output::json(v))
        }
        BoundsCommand::Saving { constants: c, y, ln_x } => {
            let k = constants(c)?;
            let s = bounds::saving_at(&k, *y, *ln_x)?;
            let mut v = to_value(&s);
            v["min"] = json!(s.min());
            Ok(Output::json(v))
        }
        BoundsCommand::Ff { q, alpha, beta, table } => {
            if *table {
                let mut csv = String::from("q,alpha,beta,aRHS,bRHS,bRHSchar2,bApplicable,a,b\n");
                for (q, alpha, beta, pa, pb) in bounds::PUBLISHED_ROWS {
                    let c = bounds::ff_exponent_conditions(q, alpha, beta)?;
                    csv.push_str(&format!(
                        "{q},{alpha},{beta},{},{},{},{},{pa},{pb}\n",
                        round_sig(c.a_rhs, 12),
                        round_sig(c.b_rhs, 12),
                        round_sig(c.b_rhs_char2, 12),
                        round_sig(c.b_applicable(), 12)
                    ));
                }
                return Ok(Output::text(csv));
            }
            let (q, alpha, beta) = (q.unwrap(), alpha.unwrap(), beta.unwrap());
            let c = bounds::ff_exponent_conditions(q, alpha, beta)?;
            let mut v = to_value(&c);
            v["bApplicable"] = json!(c.b_applicable());
            Ok(Output::json(v))
        }
    }
}

fn cmd_linrel(a: &LinrelArgs) -> Run<Output> {
    let ctx = load_field(&a.field)?;
    let y = rational_arg(&a.y)?;
    if a.k < 1 {
        return Err(Failure::Config("k must be at least 1".into()));
    }
    let target: BigInt = a.target.parse().map_err(|_| Failure::Config(format!("bad target {:?}", a.target)))?;
    let set = boxenum::enum_unit_box(&ctx, &y);
    let positive = match a.positive {
        None => None,
        Some(0) => Some(ctx.degree() - 1),
        Some(i) if i <= ctx.degree() => Some(i - 1),
        Some(i) => return Err(Failure::Module(Error::IndexOutOfRange { index: i, degree: ctx.degree() })),
    };
    let query = SolutionQuery {
        set: &set,
        k: a.k,
        target: AlgInt::constant(target, ctx.degree()),
        positive_embedding: positive,
        nondegenerate_only: a.nondegenerate,
        budget: a.budget,
    };
    let count = linrel::count_solutions(&query)?;
    let (ph, _) = linrel::pigeonhole_report(&set, a.k, a.budget)?;
    Ok(Output::json(json!({
        "setSize": set.len(),
        "k": a.k,
        "positiveEmbedding": positive.map(|i| i + 1),
        "nondegenerate": a.nondegenerate,
        "count": count.to_string(),
        "maxFiber": ph.max_fiber.to_string(),
        "bound": ph.bound,
        "fiberArgmax": ph.fiber_argmax,
        "sumsetSize": ph.sumset_size,
    })))
}

fn dispatch(cli: &Cli) -> Run<Output> {
    let ctx = Context { cli };
    match &cli.command {
        Command::Field(a) => cmd_field(a),
        Command::Box(a) => cmd_box(a),
        Command::Construct(a) => cmd_construct(&ctx, a),
        Command::Report(a) => cmd_report(&ctx, a),
        Command::Residue(a) => cmd_residue(&ctx, a),
        Command::Ff(a) => cmd_ff(&ctx, a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Linrel(a) => cmd_linrel(a),
    }
}

fn error_object(kind: &str, message: &str) -> String {
    serde_json::to_string_pretty(&json!({"error": {"kind": kind, "message": message}})).expect("json") + "\n"
}

/// Runs a parsed command line, returning the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Failure::Config(e.to_string())),
        },
        None => dispatch(cli),
    };
    match result {
        Ok(out) => match &cli.out {
            Some(path) => match fs::write(path, &out.body) {
                Ok(()) => 0,
                Err(e) => {
                    print!("{}", error_object("Config", &format!("cannot write {}: {e}", path.display())));
                    2
                }
            },
            None => {
                print!("{}", out.body);
                0
            }
        },
        Err(Failure::Module(e)) => {
            print!("{}", error_object(e.kind(), &e.to_string()));
            1
        }
        Err(Failure::Config(msg)) => {
            print!("{}", error_object("Config", &msg));
            2
        }
    }
}

/// Entry point for the binary: parses `std::env::args` and runs.
pub fn main_entry() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
