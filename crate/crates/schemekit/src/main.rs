//! Command-line front end. Subcommands read and write scheme/labeling JSON
//! on stdin/stdout so they compose in pipelines:
//!
//! ```text
//! schemekit build dodecahedron | schemekit check-q --order grlex --labeling paper
//! ```
//!
//! Exit codes: 0 success / verdict true, 1 verdict false or empty search,
//! 2 usage error, 3 internal error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use schemekit::constructors::{self, AttenuatedGenerator, Built, GjGenerator};
use schemekit::orders::AbOrder;
use schemekit::polycheck::{
    check_p, check_q, essential_variate_p, essential_variate_q, search_p, search_q,
    Labeling, LabelingJson, SearchHit,
};
use schemekit::polystruct::{ideal_generators, recover_all_v, recover_v_star, verify_groebner};
use schemekit::scheme::{RelationScheme, SchemeJson};
use schemekit::spectrum::{univariate_p_check, univariate_q_check, Spectrum};
use schemekit::MonomialOrder;

#[derive(Parser)]
#[command(name = "schemekit", version, about = "Association schemes and their multivariate P/Q-polynomial structure")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Read the scheme JSON from a file instead of stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct NumericArgs {
    /// Relative tolerance for Krein-side zero tests.
    #[arg(long, default_value_t = schemekit::DEFAULT_TOL)]
    tol: f64,
    /// Seed for the randomized eigenvector combination.
    #[arg(long, default_value_t = 12345)]
    seed: u64,
}

#[derive(Args, Clone)]
struct LabelingArg {
    /// `paper` for the labeling embedded in the scheme JSON, or a path to a
    /// labeling JSON file.
    #[arg(long, default_value = "paper")]
    labeling: String,
}

#[derive(Args, Clone)]
struct OrderArg {
    /// Monomial order: `lex`, `grlex`, or `weights:[[...],...]`.
    #[arg(long, default_value = "grlex")]
    order: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a scheme family and emit its JSON (with canonical labelings).
    Build {
        /// Family: k<N>, c<N>, dodecahedron, complete, cycle, hamming,
        /// johnson, nonbinary-johnson, extension, direct-product,
        /// composition, generalized-johnson, attenuated.
        family: String,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        /// Wrap the result in an N-fold direct product.
        #[arg(long)]
        power: Option<usize>,
        /// Base family token for `extension` (e.g. k3, c5).
        #[arg(long)]
        base: Option<String>,
        /// Outer family token for `composition`.
        #[arg(long)]
        outer: Option<String>,
        /// Fiber family token for `composition` / `generalized-johnson`.
        #[arg(long)]
        fiber: Option<String>,
        /// Comma-separated factor tokens for `direct-product`.
        #[arg(long)]
        factors: Option<String>,
    },
    /// Summary report: intersection numbers, spectrum, univariate checks.
    Analyze {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        num: NumericArgs,
    },
    /// Eigenmatrices P and Q, multiplicities, Krein parameters.
    Spectrum {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        num: NumericArgs,
    },
    /// Check the multivariate P-polynomial property for a labeling.
    CheckP {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        labeling: LabelingArg,
        #[command(flatten)]
        order: OrderArg,
        /// Also test domain compatibility with the (a,b)-order family.
        #[arg(long)]
        ab: Option<String>,
    },
    /// Check the multivariate Q-polynomial property for a labeling.
    CheckQ {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        labeling: LabelingArg,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        num: NumericArgs,
        #[arg(long)]
        ab: Option<String>,
    },
    /// Search all generator tuples of length --ell for a P-structure.
    SearchP {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        ell: usize,
    },
    /// Krein-side generator search.
    SearchQ {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        num: NumericArgs,
        #[arg(long)]
        ell: usize,
    },
    /// Smallest ell admitting a P- (or Q-) structure.
    EssentialVariate {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        num: NumericArgs,
        /// `p` or `q`.
        #[arg(long, default_value = "p")]
        side: String,
    },
    /// Recover the defining polynomials v_alpha (or v*_alpha with --side q).
    Polys {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        labeling: LabelingArg,
        #[command(flatten)]
        num: NumericArgs,
        #[arg(long, default_value = "p")]
        side: String,
    },
    /// Recover the ideal generators w_gamma.
    Ideal {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        labeling: LabelingArg,
    },
    /// Verify the ideal generators form a Gröbner basis.
    GroebnerVerify {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        labeling: LabelingArg,
        #[command(flatten)]
        order: OrderArg,
        /// Skip the independent Buchberger S-pair check.
        #[arg(long)]
        no_buchberger: bool,
    },
    /// Compare a family's closed-form recurrence oracle with brute force.
    OracleCompare {
        /// `extension`, `attenuated`, or `generalized-johnson`.
        family: String,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        fiber: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

/// Bad user input (missing file, malformed flag value) — exit code 2, as
/// opposed to internal inconsistencies which exit 3.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> AnyError {
    Box::new(UsageError(msg.into()))
}

fn envelope(command: &str, config: Value, body: Value) -> Value {
    let mut out = json!({
        "schema": 1,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
    });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialize report"));
}

fn read_scheme_json(io: &IoArgs) -> Result<SchemeJson, AnyError> {
    let text = match &io.input {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("bad scheme JSON: {e}")))
}

fn resolve_labeling(
    spec: &str,
    json: &SchemeJson,
    q_side: bool,
) -> Result<Labeling, AnyError> {
    let labeling_json: LabelingJson = if spec == "paper" {
        let embedded = if q_side {
            json.canonical_q_labeling
                .as_ref()
                .or(json.canonical_labeling.as_ref())
        } else {
            json.canonical_labeling.as_ref()
        };
        embedded
            .cloned()
            .ok_or("scheme JSON carries no canonical labeling; pass --labeling <file>")?
    } else {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| usage(format!("cannot read {spec}: {e}")))?;
        serde_json::from_str(&text).map_err(|e| usage(format!("bad labeling JSON: {e}")))?
    };
    Ok(Labeling::from_json(&labeling_json)?)
}

fn parse_order(spec: &str, arity: usize) -> Result<MonomialOrder, AnyError> {
    match spec {
        "lex" => Ok(MonomialOrder::lex(arity)),
        "grlex" => Ok(MonomialOrder::grlex(arity)),
        s if s.starts_with("weights:") => {
            let rows: Vec<Vec<i64>> = serde_json::from_str(&s["weights:".len()..])
                .map_err(|e| usage(format!("bad weights matrix: {e}")))?;
            Ok(MonomialOrder::weights(rows, arity)?)
        }
        other => Err(usage(format!("unknown order {other:?} (use lex, grlex, weights:[[...]])"))),
    }
}

fn parse_ab(spec: &str) -> Result<AbOrder, AnyError> {
    let (a, b) = spec
        .split_once(',')
        .ok_or_else(|| usage("--ab expects two comma-separated numbers"))?;
    let a = a.trim().parse().map_err(|_| usage("--ab expects integers"))?;
    let b = b.trim().parse().map_err(|_| usage("--ab expects integers"))?;
    AbOrder::new(a, b).ok_or_else(|| usage("invalid (a,b) parameters"))
}

/// Compact nested-family tokens: k<N>, c<N>, dodecahedron,
/// hamming:<n>:<q>, johnson:<n>:<h>.
fn parse_family_token(token: &str) -> Result<Built, AnyError> {
    if let Some(rest) = token.strip_prefix('k') {
        if let Ok(q) = rest.parse() {
            return Ok(constructors::complete(q)?);
        }
    }
    if let Some(rest) = token.strip_prefix('c') {
        if let Ok(n) = rest.parse() {
            return Ok(constructors::cycle(n)?);
        }
    }
    if token == "dodecahedron" {
        return Ok(constructors::dodecahedron()?);
    }
    let parts: Vec<&str> = token.split(':').collect();
    match parts.as_slice() {
        ["hamming", n, q] => Ok(constructors::hamming(n.parse()?, q.parse()?)?),
        ["johnson", n, h] => Ok(constructors::johnson(n.parse()?, h.parse()?)?),
        _ => Err(usage(format!("unknown family token {token:?}"))),
    }
}

fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T, AnyError> {
    v.ok_or_else(|| usage(format!("missing required parameter --{name}")))
}

#[allow(clippy::too_many_arguments)]
fn build_family(
    family: &str,
    q: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    l: Option<usize>,
    h: Option<usize>,
    base: Option<&str>,
    outer: Option<&str>,
    fiber: Option<&str>,
    factors: Option<&str>,
) -> Result<Built, AnyError> {
    match family {
        "complete" => Ok(constructors::complete(require(q, "q")?)?),
        "cycle" => Ok(constructors::cycle(require(n, "n")?)?),
        "dodecahedron" => Ok(constructors::dodecahedron()?),
        "hamming" => Ok(constructors::hamming(require(n, "n")?, require(q, "q")?)?),
        "johnson" => Ok(constructors::johnson(require(n, "n")?, require(h, "h")?)?),
        "nonbinary-johnson" => Ok(constructors::nonbinary_johnson(
            require(q, "q")?,
            require(n, "n")?,
            require(h, "h")?,
        )?),
        "extension" => {
            let base = parse_family_token(base.ok_or_else(|| usage("extension needs --base"))?)?;
            Ok(constructors::extension(&base.scheme, require(n, "n")?)?)
        }
        "direct-product" => {
            let tokens = factors.ok_or_else(|| usage("direct-product needs --factors a,b,..."))?;
            let schemes: Vec<RelationScheme> = tokens
                .split(',')
                .map(|t| parse_family_token(t.trim()).map(|b| b.scheme))
                .collect::<Result<_, _>>()?;
            Ok(constructors::direct_product(&schemes)?)
        }
        "composition" => {
            let x = parse_family_token(outer.ok_or_else(|| usage("composition needs --outer"))?)?;
            let y = parse_family_token(fiber.ok_or_else(|| usage("composition needs --fiber"))?)?;
            Ok(constructors::composition(&x.scheme, &y.scheme)?)
        }
        "generalized-johnson" => {
            let y = parse_family_token(fiber.ok_or_else(|| usage("generalized-johnson needs --fiber"))?)?;
            Ok(constructors::generalized_johnson(
                &y.scheme,
                require(n, "n")?,
                require(h, "h")?,
            )?)
        }
        "attenuated" => Ok(constructors::attenuated(
            require(q, "q")?,
            require(n, "n")?,
            require(m, "m")?,
            require(l, "l")?,
        )?),
        token => parse_family_token(token),
    }
}

fn run(cli: Cli) -> Result<ExitCode, AnyError> {
    match cli.cmd {
        Cmd::Build { family, q, n, m, l, h, power, base, outer, fiber, factors } => {
            let mut built = build_family(
                &family,
                q,
                n,
                m,
                l,
                h,
                base.as_deref(),
                outer.as_deref(),
                fiber.as_deref(),
                factors.as_deref(),
            )?;
            if let Some(p) = power {
                let copies: Vec<RelationScheme> = vec![built.scheme.clone(); p];
                built = constructors::direct_product(&copies)?;
            }
            let mut json = built.scheme.to_json();
            json.canonical_labeling = built.labeling.as_ref().map(Labeling::to_json);
            json.canonical_q_labeling = built.q_labeling.as_ref().map(Labeling::to_json);
            println!("{}", serde_json::to_string(&json)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analyze { io, num } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let spectrum = Spectrum::compute(&tensor, num.tol, num.seed)?;
            let report = envelope(
                "analyze",
                json!({"tol": num.tol, "seed": num.seed}),
                json!({
                    "size": scheme.size(),
                    "classes": scheme.class_count(),
                    "valencies": tensor.valencies(),
                    "symmetric": tensor.is_symmetric(),
                    "multiplicities": spectrum.multiplicities(),
                    "spectrum_residual": spectrum.max_residual(),
                    "krein_min": spectrum.krein_min(),
                    "univariate_p": univariate_p_check(&tensor),
                    "univariate_q": univariate_q_check(&spectrum),
                }),
            );
            emit(&report);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Spectrum { io, num } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let sp = Spectrum::compute(&tensor, num.tol, num.seed)?;
            let c = sp.relation_count();
            let p: Vec<Vec<f64>> =
                (0..c).map(|j| (0..c).map(|i| sp.p_entry(j, i)).collect()).collect();
            let qm: Vec<Vec<f64>> =
                (0..c).map(|i| (0..c).map(|j| sp.q_entry(i, j)).collect()).collect();
            let report = envelope(
                "spectrum",
                json!({"tol": num.tol, "seed": num.seed}),
                json!({
                    "P": p,
                    "Q": qm,
                    "multiplicities": sp.multiplicities(),
                    "max_residual": sp.max_residual(),
                    "krein_min": sp.krein_min(),
                }),
            );
            emit(&report);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckP { io, labeling, order, ab } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let lab = resolve_labeling(&labeling.labeling, &json, false)?;
            let ord = parse_order(&order.order, lab.ell())?;
            let report = check_p(&tensor, &lab, &ord)?;
            let ab_compatible = match ab {
                Some(spec) => Some(parse_ab(&spec)?.compatible_domain(&lab.domain())?),
                None => None,
            };
            let verdict = report.verdict;
            let out = envelope(
                "check-p",
                json!({"order": order.order, "labeling": labeling.labeling}),
                json!({"report": report, "ab_compatible": ab_compatible}),
            );
            emit(&out);
            Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::CheckQ { io, labeling, order, num, ab } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let spectrum = Spectrum::compute(&tensor, num.tol, num.seed)?;
            let lab = resolve_labeling(&labeling.labeling, &json, true)?;
            let ord = parse_order(&order.order, lab.ell())?;
            let report = check_q(&spectrum, &lab, &ord)?;
            let ab_compatible = match ab {
                Some(spec) => Some(parse_ab(&spec)?.compatible_domain(&lab.domain())?),
                None => None,
            };
            let verdict = report.verdict;
            let out = envelope(
                "check-q",
                json!({
                    "order": order.order, "labeling": labeling.labeling,
                    "tol": num.tol, "seed": num.seed,
                    "spectrum_residual": spectrum.max_residual(),
                }),
                json!({"report": report, "ab_compatible": ab_compatible}),
            );
            emit(&out);
            Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::SearchP { io, order, ell } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let ord = parse_order(&order.order, ell)?;
            let hits = search_p(&tensor, ell, &ord);
            emit_search("search-p", &order.order, ell, &hits);
            Ok(if hits.is_empty() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Cmd::SearchQ { io, order, num, ell } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let spectrum = Spectrum::compute(&tensor, num.tol, num.seed)?;
            let ord = parse_order(&order.order, ell)?;
            let hits = search_q(&spectrum, ell, &ord);
            emit_search("search-q", &order.order, ell, &hits);
            Ok(if hits.is_empty() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Cmd::EssentialVariate { io, order, num, side } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let order_spec = order.order.clone();
            let order_for = move |ell: usize| {
                parse_order(&order_spec, ell).expect("order family")
            };
            let found = match side.as_str() {
                "p" => essential_variate_p(&tensor, order_for),
                "q" => {
                    let spectrum = Spectrum::compute(&tensor, num.tol, num.seed)?;
                    essential_variate_q(&spectrum, order_for)
                }
                other => return Err(usage(format!("unknown side {other:?}"))),
            };
            let body = match &found {
                Some((ell, hits)) => json!({
                    "ell": ell,
                    "witnesses": hits.iter().map(|h| &h.generators).collect::<Vec<_>>(),
                }),
                None => json!({"ell": Value::Null, "witnesses": []}),
            };
            let out = envelope(
                "essential-variate",
                json!({"order": order.order, "side": side}),
                body,
            );
            emit(&out);
            Ok(if found.is_some() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Polys { io, labeling, num, side } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            match side.as_str() {
                "p" => {
                    let lab = resolve_labeling(&labeling.labeling, &json, false)?;
                    let all = recover_all_v(&tensor, &lab)?;
                    let polys: Vec<Value> = all
                        .iter()
                        .map(|(alpha, poly)| {
                            let terms = poly
                                .to_json_terms()
                                .ok_or("coefficient too large for JSON terms")?;
                            Ok(json!({"alpha": alpha, "terms": terms}))
                        })
                        .collect::<Result<_, AnyError>>()?;
                    emit(&envelope("polys", json!({"side": "p"}), json!({"polys": polys})));
                }
                "q" => {
                    let spectrum = Spectrum::compute(&tensor, num.tol, num.seed)?;
                    let lab = resolve_labeling(&labeling.labeling, &json, true)?;
                    let mut polys = Vec::new();
                    for alpha in lab.domain() {
                        let (poly, residual) = recover_v_star(&spectrum, &lab, &alpha)?;
                        let terms: Vec<Value> = poly
                            .terms
                            .iter()
                            .map(|(deg, &c)| {
                                let snapped = schemekit::exact::snap_rational(c, 1_000_000, 1e-6);
                                match snapped {
                                    Some((num, den)) => {
                                        json!({"deg": deg, "num": num, "den": den, "value": c})
                                    }
                                    None => json!({"deg": deg, "value": c}),
                                }
                            })
                            .collect();
                        polys.push(json!({"alpha": alpha, "terms": terms, "residual": residual}));
                    }
                    emit(&envelope(
                        "polys",
                        json!({"side": "q", "tol": num.tol, "seed": num.seed}),
                        json!({"polys": polys}),
                    ));
                }
                other => return Err(usage(format!("unknown side {other:?}"))),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ideal { io, labeling } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let lab = resolve_labeling(&labeling.labeling, &json, false)?;
            let gens = ideal_generators(&tensor, &lab)?;
            let body: Vec<Value> = gens
                .iter()
                .map(|(corner, poly)| {
                    let terms = poly
                        .to_json_terms()
                        .ok_or("coefficient too large for JSON terms")?;
                    Ok(json!({"corner": corner, "terms": terms}))
                })
                .collect::<Result<_, AnyError>>()?;
            emit(&envelope("ideal", json!({}), json!({"generators": body})));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::GroebnerVerify { io, labeling, order, no_buchberger } => {
            let json = read_scheme_json(&io)?;
            let scheme = RelationScheme::from_json(&json)?;
            let tensor = scheme.intersection_tensor()?;
            let lab = resolve_labeling(&labeling.labeling, &json, false)?;
            let ord = parse_order(&order.order, lab.ell())?;
            let report = verify_groebner(&tensor, &lab, &ord, !no_buchberger)?;
            let verdict = report.verdict;
            emit(&envelope(
                "groebner-verify",
                json!({"order": order.order, "buchberger": !no_buchberger}),
                json!({"report": report}),
            ));
            Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::OracleCompare { family, q, n, m, l, h, base, fiber } => {
            let (verdict, body) = oracle_compare(
                &family,
                q,
                n,
                m,
                l,
                h,
                base.as_deref(),
                fiber.as_deref(),
            )?;
            emit(&envelope("oracle-compare", json!({"family": family}), body));
            Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn emit_search(command: &str, order: &str, ell: usize, hits: &[SearchHit]) {
    let body: Vec<Value> = hits
        .iter()
        .map(|hit| {
            json!({
                "generators": hit.generators,
                "labeling": hit.labeling.to_json(),
            })
        })
        .collect();
    emit(&envelope(
        command,
        json!({"order": order, "ell": ell}),
        json!({"count": hits.len(), "hits": body}),
    ));
}

/// Compare the family's closed-form coefficients against brute-force
/// intersection numbers over the whole domain.
#[allow(clippy::too_many_arguments)]
fn oracle_compare(
    family: &str,
    q: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    l: Option<usize>,
    h: Option<usize>,
    base: Option<&str>,
    fiber: Option<&str>,
) -> Result<(bool, Value), AnyError> {
    let mut mismatches = Vec::new();
    let mut compared = 0usize;
    match family {
        "extension" => {
            let base = parse_family_token(base.ok_or_else(|| usage("extension needs --base"))?)?;
            let n = require(n, "n")?;
            let base_tensor = base.scheme.intersection_tensor()?;
            let built = constructors::extension(&base.scheme, n)?;
            let tensor = built.scheme.intersection_tensor()?;
            let lab = built.labeling.as_ref().ok_or("missing labeling")?;
            let ell = base.scheme.class_count();
            for alpha in lab.domain() {
                for i in 1..=ell {
                    let oracle =
                        constructors::extension_recurrence_oracle(&base_tensor, n, i, &alpha)?;
                    let mut gen = vec![0usize; ell];
                    gen[i - 1] = 1;
                    let brute = constructors::product_coefficients(&tensor, lab, &gen, &alpha)
                        .ok_or("generator not in labeling")?;
                    compared += 1;
                    if oracle != brute {
                        mismatches.push(json!({"alpha": alpha, "i": i}));
                    }
                }
            }
        }
        "attenuated" => {
            let (q, n, m, l) =
                (require(q, "q")?, require(n, "n")?, require(m, "m")?, require(l, "l")?);
            let built = constructors::attenuated(q, n, m, l)?;
            let tensor = built.scheme.intersection_tensor()?;
            let lab = built.labeling.as_ref().ok_or("missing labeling")?;
            for alpha in lab.domain() {
                let ij = (alpha[0], alpha[1]);
                for (which, gen) in [
                    (AttenuatedGenerator::A10, vec![1, 0]),
                    (AttenuatedGenerator::A01, vec![0, 1]),
                ] {
                    let oracle =
                        constructors::attenuated_recurrence_oracle(q, n, m, l, which, ij)?;
                    let brute = constructors::product_coefficients(&tensor, lab, &gen, &alpha)
                        .ok_or("generator not in labeling")?;
                    compared += 1;
                    if oracle != brute {
                        mismatches.push(json!({"alpha": alpha, "which": format!("{which:?}")}));
                    }
                }
            }
        }
        "generalized-johnson" => {
            let y = parse_family_token(fiber.ok_or_else(|| usage("generalized-johnson needs --fiber"))?)?;
            let (n, h) = (require(n, "n")?, require(h, "h")?);
            let fiber_tensor = y.scheme.intersection_tensor()?;
            let built = constructors::generalized_johnson(&y.scheme, n, h)?;
            let tensor = built.scheme.intersection_tensor()?;
            let lab = built.labeling.as_ref().ok_or("missing labeling")?;
            let m_fiber = y.scheme.class_count();
            let mut generators = vec![(GjGenerator::T, {
                let mut g = vec![0; m_fiber + 1];
                g[0] = 1;
                g
            })];
            for i in 1..=m_fiber {
                let mut g = vec![0; m_fiber + 1];
                g[i] = 1;
                generators.push((GjGenerator::Value(i), g));
            }
            for alpha in lab.domain() {
                for (gj_gen, gen) in &generators {
                    let oracle = constructors::generalized_johnson_oracle(
                        &fiber_tensor,
                        n,
                        h,
                        gj_gen,
                        &alpha,
                    )?;
                    let brute = constructors::product_coefficients(&tensor, lab, gen, &alpha)
                        .ok_or("generator not in labeling")?;
                    compared += 1;
                    if oracle != brute {
                        mismatches.push(json!({
                            "alpha": alpha,
                            "generator": format!("{gj_gen:?}"),
                            "oracle": oracle,
                            "brute": brute,
                        }));
                    }
                }
            }
        }
        other => return Err(format!("no oracle for family {other:?}").into()),
    }
    let verdict = mismatches.is_empty();
    Ok((
        verdict,
        json!({"verdict": verdict, "compared": compared, "mismatches": mismatches}),
    ))
}
