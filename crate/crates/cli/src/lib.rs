//! Command implementations for the `sigatlas` binary.
//!
//! Every command produces a [`ReportEnvelope`]. Nested objects serialize with
//! sorted keys, so identical inputs give byte-identical output.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sigatlas_core::affine::{self, GroupParams, LambdaMarker, LatticeRing};
use sigatlas_core::covering::{self, HurwitzTuple, MAX_EXHAUSTIVE_DEGREE};
use sigatlas_core::fpgroup::{self, Letter, OrbifoldPresentation, Word, DEFAULT_MAX_COSETS};
use sigatlas_core::numeric::{self, ComplexPolynomial, TrackConfig};
use sigatlas_core::perm::group_order_by_chain;
use sigatlas_core::signature::{enumerate_elliptic, enumerate_parabolic, Order};
use sigatlas_core::tiling::{self, SvgOptions, MAX_DEPTH};
use sigatlas_core::{Error, OrderSet, PermGroup, Result};

pub const SCHEMA_VERSION: &str = "1";
pub const LIMITS_ENV: &str = "SIGATLAS_LIMITS";

#[derive(Debug, Parser)]
#[command(name = "sigatlas", version, about = "Signatures of branched coverings of the sphere")]
pub struct Cli {
    /// Emit JSON (the only output format).
    #[arg(long, global = true, default_value_t = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic, class, family and group order of an order set.
    Classify { orders: String },
    /// List the elliptic and parabolic order sets.
    EnumerateSets {
        #[arg(long, value_enum, default_value_t = SetKind::All)]
        kind: SetKind,
        /// Largest order considered in the elliptic list.
        #[arg(long, default_value_t = 12)]
        max_param: u32,
    },
    /// Todd–Coxeter enumeration over the orbifold presentation.
    GroupOrder {
        orders: String,
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Subgroup generator such as `x1^3` or `x1*x2^-1`; repeatable.
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
    },
    /// Hurwitz classes of coverings of a given degree.
    Coverings {
        orders: String,
        #[arg(long)]
        degree: usize,
        /// Switch to seeded random search.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Quotient signature of one of the eight affine lattice group types.
    Affine {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=8))]
        type_id: u8,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum)]
        lambda: Option<LambdaArg>,
        #[arg(long, value_enum)]
        ring: Option<RingArg>,
    },
    /// Branch data of the metacyclic group of prime degree.
    Ritt { p: u32 },
    /// Numeric monodromy of a polynomial, coefficients in ascending degree.
    PolyMonodromy {
        coeffs: String,
        #[arg(long)]
        max_step: Option<f64>,
        #[arg(long)]
        base_angle: Option<f64>,
    },
    /// Reflection orbit of the polygon of an order set, optionally as SVG.
    Tiling {
        orders: String,
        #[arg(long, default_value_t = MAX_DEPTH)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        size: u32,
        #[arg(long, default_value_t = 3.0)]
        extent: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    Elliptic,
    Parabolic,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LambdaArg {
    Real,
    NonReal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    None,
    Z,
    Gauss,
    Eisenstein,
    General,
}

impl From<RingArg> for LatticeRing {
    fn from(r: RingArg) -> Self {
        match r {
            RingArg::None => LatticeRing::None,
            RingArg::Z => LatticeRing::Z,
            RingArg::Gauss => LatticeRing::Gauss,
            RingArg::Eisenstein => LatticeRing::Eisenstein,
            RingArg::General => LatticeRing::General,
        }
    }
}

/// Upper bounds on user-controlled work, read from `SIGATLAS_LIMITS` as
/// `key=value` pairs separated by commas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_cosets: usize,
    pub max_degree: usize,
    pub max_depth: usize,
    pub max_samples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cosets: 1_000_000,
            max_degree: MAX_EXHAUSTIVE_DEGREE,
            max_depth: MAX_DEPTH,
            max_samples: 1_000_000,
        }
    }
}

impl Limits {
    pub fn parse(s: &str) -> Result<Self> {
        let mut l = Limits::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("{LIMITS_ENV}: expected key=value, got {item:?}")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{LIMITS_ENV}: bad value for {k}")))?;
            match k.trim() {
                "max_cosets" => l.max_cosets = v,
                "max_degree" => l.max_degree = v,
                "max_depth" => l.max_depth = v,
                "max_samples" => l.max_samples = v,
                other => return Err(Error::Usage(format!("{LIMITS_ENV}: unknown key {other:?}"))),
            }
        }
        Ok(l)
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_ENV) {
            Ok(s) => Limits::parse(&s),
            Err(_) => Ok(Limits::default()),
        }
    }
}

fn check_limit(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::Resource { what: format!("{what} = {value}"), limit: limit as u64 });
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Versions {
    pub tool: String,
    pub schema: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
    pub versions: Versions,
}

impl ReportEnvelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }

    /// 0 on success, 2 for bad input, 3 for exhausted limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.error.as_ref().and_then(|e| e.get("kind")).and_then(Value::as_str) {
            None => 0,
            Some("validation" | "usage") => 2,
            Some("resource") => 3,
            Some(_) => 1,
        }
    }
}

pub fn error_payload(e: &Error) -> Value {
    let mut v = json!({ "kind": e.kind(), "message": e.to_string() });
    match e {
        Error::Validation(violations) => {
            v["violations"] = json!(violations.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        }
        Error::Resource { what, limit } => {
            v["what"] = json!(what);
            v["limit"] = json!(limit);
        }
        _ => {}
    }
    v
}

/// Runs one command. Never panics on bad input: failures become the error
/// payload of the envelope.
pub fn run(cmd: &Command, limits: Result<Limits>) -> ReportEnvelope {
    let (name, inputs) = describe(cmd);
    let outcome = limits.and_then(|l| execute(cmd, &l));
    let (result, error) = match outcome {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(error_payload(&e))),
    };
    ReportEnvelope {
        command: name.to_string(),
        inputs,
        result,
        error,
        versions: Versions { tool: env!("CARGO_PKG_VERSION").to_string(), schema: SCHEMA_VERSION.to_string() },
    }
}

/// Orders as `2,3,inf`, the form accepted on the command line.
pub fn orders_string(orders: &[Order]) -> String {
    orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical echo of an orders argument; the raw text when it does not parse.
fn echo_orders(s: &str) -> Value {
    match OrderSet::parse(s) {
        Ok(r) => json!(orders_string(r.orders())),
        Err(_) => json!(s),
    }
}

fn describe(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::Classify { orders } => ("classify", json!({ "orders": echo_orders(orders) })),
        Command::EnumerateSets { kind, max_param } => (
            "enumerate-sets",
            json!({ "kind": format!("{kind:?}").to_lowercase(), "max_param": max_param }),
        ),
        Command::GroupOrder { orders, max_cosets, subgroup } => (
            "group-order",
            json!({
                "orders": echo_orders(orders),
                "max_cosets": max_cosets.unwrap_or(DEFAULT_MAX_COSETS),
                "subgroup": subgroup,
            }),
        ),
        Command::Coverings { orders, degree, seed, samples } => (
            "coverings",
            json!({
                "orders": echo_orders(orders),
                "degree": degree,
                "mode": if seed.is_some() { "random" } else { "exhaustive" },
                "seed": seed,
                "samples": seed.map(|_| samples),
            }),
        ),
        Command::Affine { type_id, k, lambda, ring } => (
            "affine",
            json!({
                "type": type_id,
                "k": k,
                "lambda": lambda.map(|l| format!("{l:?}").to_lowercase()),
                "ring": ring.map(|r| format!("{r:?}").to_lowercase()),
            }),
        ),
        Command::Ritt { p } => ("ritt", json!({ "p": p })),
        Command::PolyMonodromy { coeffs, max_step, base_angle } => (
            "poly-monodromy",
            json!({ "coeffs": coeffs, "max_step": max_step, "base_angle": base_angle }),
        ),
        Command::Tiling { orders, depth, out, size, extent } => (
            "tiling",
            json!({
                "orders": echo_orders(orders),
                "depth": depth,
                "out": out.as_ref().map(|p| p.display().to_string()),
                "size": size,
                "extent": extent,
            }),
        ),
    }
}

fn execute(cmd: &Command, limits: &Limits) -> Result<Value> {
    match cmd {
        Command::Classify { orders } => classify(&OrderSet::parse(orders)?),
        Command::EnumerateSets { kind, max_param } => enumerate_sets(*kind, *max_param),
        Command::GroupOrder { orders, max_cosets, subgroup } => {
            let max = max_cosets.unwrap_or(DEFAULT_MAX_COSETS);
            check_limit("max_cosets", max, limits.max_cosets)?;
            group_order(&OrderSet::parse(orders)?, subgroup, max)
        }
        Command::Coverings { orders, degree, seed, samples } => {
            let r = OrderSet::parse(orders)?;
            match seed {
                None => {
                    check_limit("degree", *degree, limits.max_degree)?;
                    coverings(&r, *degree, covering::enumerate_coverings(&r, *degree)?, "exhaustive")
                }
                Some(seed) => {
                    check_limit("samples", *samples, limits.max_samples)?;
                    let found = covering::random_coverings(&r, *degree, *samples, *seed)?;
                    coverings(&r, *degree, found, "random")
                }
            }
        }
        Command::Affine { type_id, k, lambda, ring } => {
            let params = GroupParams {
                k: *k,
                lambda: lambda.map(|l| match l {
                    LambdaArg::Real => LambdaMarker::Real,
                    LambdaArg::NonReal => LambdaMarker::NonReal,
                }),
                ring: ring.map(LatticeRing::from),
            };
            affine_report(*type_id, params)
        }
        Command::Ritt { p } => ritt(*p),
        Command::PolyMonodromy { coeffs, max_step, base_angle } => {
            let mut cfg = TrackConfig::default();
            if let Some(s) = max_step {
                cfg.max_step = *s;
            }
            cfg.base_angle = *base_angle;
            poly_monodromy(&ComplexPolynomial::parse(coeffs)?, &cfg)
        }
        Command::Tiling { orders, depth, out, size, extent } => {
            check_limit("depth", *depth, limits.max_depth)?;
            let opts = SvgOptions { size_px: *size, extent: *extent, ..SvgOptions::default() };
            tiling_report(&OrderSet::parse(orders)?, *depth, out.as_ref(), &opts)
        }
    }
}

fn set_summary(r: &OrderSet) -> Value {
    let class = r.classify();
    json!({
        "orders": orders_string(r.orders()),
        "chi": r.characteristic().to_string(),
        "class": class.kind,
        "family": class.family,
        "order": r.expected_group_order().ok(),
    })
}

pub fn classify(r: &OrderSet) -> Result<Value> {
    Ok(set_summary(r))
}

pub fn enumerate_sets(kind: SetKind, max_param: u32) -> Result<Value> {
    let mut out = serde_json::Map::new();
    if kind != SetKind::Parabolic {
        let sets: Vec<Value> = enumerate_elliptic(max_param).iter().map(set_summary).collect();
        out.insert("elliptic".into(), json!(sets));
    }
    if kind != SetKind::Elliptic {
        let sets: Vec<Value> = enumerate_parabolic().iter().map(set_summary).collect();
        out.insert("parabolic".into(), json!(sets));
    }
    Ok(Value::Object(out))
}

/// Parses `x1^3*x2^-1` (generators numbered from 1; `*` or spaces between
/// factors) into a word.
pub fn parse_word(s: &str, generator_count: usize) -> Result<Word> {
    let bad = |msg: String| Error::Usage(format!("subgroup word {s:?}: {msg}"));
    let mut letters = Vec::new();
    for factor in s.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (gen, exp) = factor.split_once('^').unwrap_or((factor, "1"));
        let g: usize = gen
            .strip_prefix('x')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| bad(format!("bad generator {gen:?}")))?;
        if g == 0 || g > generator_count {
            return Err(bad(format!("generator x{g} out of range 1..={generator_count}")));
        }
        let e: i64 = exp.parse().map_err(|_| bad(format!("bad exponent {exp:?}")))?;
        let sign = if e < 0 { -1 } else { 1 };
        letters.extend(std::iter::repeat_n(Letter::new(g - 1, sign), e.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

pub fn group_order(r: &OrderSet, subgroup: &[String], max_cosets: usize) -> Result<Value> {
    let pres = OrbifoldPresentation::from_orders(r);
    let words = subgroup
        .iter()
        .map(|s| parse_word(s, pres.generator_count))
        .collect::<Result<Vec<_>>>()?;
    let table = fpgroup::todd_coxeter(&pres, &words, max_cosets);
    let mut v = json!({
        "presentation": pres.to_string(),
        "expected_group_order": r.expected_group_order().ok(),
        "completed": table.is_complete(),
        "cosets_defined": table.cosets_defined,
    });
    if !table.is_complete() {
        v["index"] = Value::Null;
        v["overflow_limit"] = json!(max_cosets);
        return Ok(v);
    }
    let n = table.coset_count();
    let gens = table.perm_rep()?;
    v["index"] = json!(n);
    v["image_order"] = json!(group_order_by_chain(n, &gens)?.to_string());
    if let Ok(g) = PermGroup::generate(n, gens.clone()) {
        let ds = g.derived_series();
        v["solvable"] = json!(ds.solvable);
        v["derived_series"] = json!(ds.orders);
    }
    if n <= 64 {
        v["permutations"] = json!(gens);
    }
    Ok(v)
}

pub fn coverings(r: &OrderSet, degree: usize, found: Vec<HurwitzTuple>, mode: &str) -> Result<Value> {
    let mut classes = Vec::with_capacity(found.len());
    let mut orders = Vec::with_capacity(found.len());
    for t in &found {
        let rep = covering::monodromy_report(t, Some(r))?;
        orders.push(rep.group_order);
        classes.push(json!({ "tuple": t.sigma(), "report": rep }));
    }
    let mut v = json!({
        "mode": mode,
        "degree": degree,
        "class_count": found.len(),
        "classes": classes,
    });
    if let Some(n) = r.expected_group_order().ok().and_then(|o| o.finite()) {
        v["determinism"] = json!({
            "expected_order": n,
            "holds": orders.iter().all(|&o| o == n),
        });
    }
    Ok(v)
}

pub fn affine_report(type_id: u8, params: GroupParams) -> Result<Value> {
    let spec = affine::group_spec(type_id, params)?;
    let q = affine::quotient_signature(&spec)?;
    let structure = affine::monodromy_structure(&spec)?;
    let classes = match &q {
        affine::QuotientSignature::Orders { classes, .. } => json!(classes),
        affine::QuotientSignature::GenusOne => json!([]),
    };
    Ok(json!({
        "type": spec.type_id,
        "k": spec.k,
        "ring": spec.ring,
        "lambda": spec.lambda,
        "generators": spec.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "quotient": q.to_string(),
        "orders": q.orders().map(orders_string),
        "torsion_classes": classes,
        "structure": structure,
        "note": spec.note(),
    }))
}

pub fn ritt(p: u32) -> Result<Value> {
    let rep = sigatlas_core::ritt::verify_nonhyperbolic(p)?;
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            json!({
                "datum": e.datum.to_string(),
                "riemann_hurwitz": e.datum.riemann_hurwitz(p).to_string(),
                "realized": orders_string(e.realized.orders()),
                "class": e.class,
            })
        })
        .collect();
    Ok(json!({
        "p": p,
        "datum_count": entries.len(),
        "branch_data": entries,
        "nonhyperbolic": rep.nonhyperbolic,
    }))
}

pub fn poly_monodromy(p: &ComplexPolynomial, cfg: &TrackConfig) -> Result<Value> {
    let res = numeric::monodromy(p, cfg)?;
    let mut v = serde_json::to_value(&res).map_err(|e| Error::Consistency(e.to_string()))?;
    v["polynomial"] = json!(p.to_string());
    v["signature"] = json!(res.signature.as_ref().map(|s| orders_string(s.orders())));
    Ok(v)
}

pub fn tiling_report(r: &OrderSet, depth: usize, out: Option<&PathBuf>, opts: &SvgOptions) -> Result<Value> {
    let poly = tiling::build_polygon(r)?;
    let orbit = tiling::reflect_orbit(&poly, depth)?;
    let report = tiling::check_tiling(&orbit);
    let mut v = json!({
        "orders": orders_string(r.orders()),
        "space": poly.space,
        "expected_tiles": r.expected_group_order().ok().and_then(|o| o.finite()).map(|n| 2 * n),
        "report": report,
        "svg": Value::Null,
    });
    if let Some(path) = out {
        std::fs::write(path, tiling::emit_svg(&orbit, opts))?;
        v["svg"] = json!(path.display().to_string());
    }
    Ok(v)
}
