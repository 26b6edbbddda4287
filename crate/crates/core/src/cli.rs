//! Command-line front end. Every subcommand parses its arguments exactly,
//! calls one library operation and serialises the result; there is no
//! arithmetic here beyond formatting.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::congruent::{self, CongruenceVerdict, RationalTriangle};
use crate::curve::{self, CAlphaPoint, CurvePoint, Valuation, WeierstrassCurve};
use crate::modp::{self, ReductionKind, TraceRecord};
use crate::series;

/// Largest prime bound accepted by the sweep commands.
pub const MAX_SWEEP_BOUND: u64 = 100_000_000;
/// Largest m accepted by `enumerate` (full scan, quadratic in m).
pub const MAX_ENUMERATE_M_BOUND: u64 = 20_000;
/// Largest m accepted by `enumerate --max-alpha` (a sieve of size 2m).
pub const MAX_PREFIX_M_BOUND: u64 = 50_000_000;
/// Largest truncation order accepted by `tunnell`.
pub const MAX_SERIES_ORDER: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "congruum", version, about = "Congruent numbers and elliptic curves, exactly")]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps and certificate searches.
    #[arg(long, global = true, env = "CONGRUUM_THREADS", default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tunnell coefficients c_j(1..n_max).
    Tunnell {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        j: u32,
        #[arg(long)]
        n_max: usize,
    },
    /// Tunnell verdict plus a triangle certificate search.
    Classify {
        #[arg(allow_hyphen_values = true)]
        alpha: i64,
        /// Largest m in the (m, n) scan.
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Squarefree parts of triangle areas with m <= m_bound.
    Enumerate {
        #[arg(long)]
        m_bound: u64,
        /// Only report areas up to this value (much faster for large m-bound).
        #[arg(long)]
        max_alpha: Option<u64>,
    },
    /// Convert between triangles, curve points and square progressions.
    #[command(subcommand)]
    Triangle(TriangleCommand),
    /// Check that d - alpha, d, d + alpha are all rational squares.
    VerifyAp {
        #[arg(value_parser = parse_rational, allow_hyphen_values = true)]
        alpha: BigRational,
        #[arg(long, allow_hyphen_values = true)]
        d_num: BigInt,
        #[arg(long, default_value = "1")]
        d_den: BigInt,
        /// Treat d_num/d_den as sqrt(d).
        #[arg(long)]
        root: bool,
    },
    /// Weierstrass invariants, doubling and tangent iteration.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Point counts and trace statistics modulo primes.
    #[command(subcommand)]
    Modp(ModpCommand),
    /// Exhaustive check for x^4 - y^4 = z^2 and square triangle areas.
    SearchNoUnitArea {
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Debug, Args)]
pub struct TriangleArgs {
    #[arg(long, value_parser = parse_rational)]
    pub a: BigRational,
    #[arg(long, value_parser = parse_rational)]
    pub b: BigRational,
    #[arg(long, value_parser = parse_rational)]
    pub c: BigRational,
}

#[derive(Debug, Args)]
pub struct CAlphaArgs {
    #[arg(long)]
    pub alpha: BigInt,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub x: BigRational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub y: BigRational,
}

#[derive(Debug, Subcommand)]
pub enum TriangleCommand {
    /// Triangle -> point on alpha y^2 = x^3 - x.
    ToPoint(TriangleArgs),
    /// Point on alpha y^2 = x^3 - x -> triangle of area alpha.
    FromPoint(CAlphaArgs),
    /// Triangle -> arithmetic progression of squares.
    Congruum(TriangleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// y^2 = x^3 - x
    Cm,
    /// y^2 + y = x^3 - x^2
    NonCm,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, value_enum, conflicts_with_all = ["congruent", "a1", "a2", "a3", "a4", "a6"])]
    pub preset: Option<Preset>,
    /// Y^2 = X^3 - alpha^2 X.
    #[arg(long, conflicts_with_all = ["a1", "a2", "a3", "a4", "a6"])]
    pub congruent: Option<BigInt>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a1: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a2: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a3: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a4: Option<BigRational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a6: Option<BigRational>,
}

impl CurveArgs {
    pub fn curve(&self) -> WeierstrassCurve {
        if let Some(p) = self.preset {
            return match p {
                Preset::Cm => WeierstrassCurve::from_integers(0, 0, 0, -1, 0),
                Preset::NonCm => WeierstrassCurve::default_non_cm(),
            };
        }
        if let Some(alpha) = &self.congruent {
            return WeierstrassCurve::congruent_curve(alpha);
        }
        let get = |a: &Option<BigRational>| a.clone().unwrap_or_else(BigRational::zero);
        WeierstrassCurve::new(get(&self.a1), get(&self.a2), get(&self.a3), get(&self.a4), get(&self.a6))
    }
}

#[derive(Debug, Subcommand)]
pub enum CurveCommand {
    /// b2, b4, b6, b8, c4, c6 and the discriminant.
    Invariants(CurveArgs),
    /// 2P under the group law.
    Double {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        x: BigRational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        y: BigRational,
    },
    /// Repeated tangent steps on alpha y^2 = x^3 - x.
    Iterate {
        #[command(flatten)]
        point: CAlphaArgs,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModpCommand {
    /// |E(F_p)|.
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        /// Count the plane cubic X^3 + Y^3 + Z^3 = 0 instead.
        #[arg(long)]
        fermat_cubic: bool,
    },
    /// a_p = p + 1 - |E(F_p)|.
    Ap {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        /// Use X^3 + Y^3 + Z^3 = 0 and report the Gauss prediction too.
        #[arg(long)]
        fermat_cubic: bool,
    },
    /// Trace records for every good prime 5 <= p <= bound.
    Sweep {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        bound: u64,
    },
    /// Histogram of a_p / (2 sqrt p) against the semicircle law.
    Satotate {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 20)]
        bins: usize,
    },
    /// prod p / |E(F_p)| over good primes 5 <= p <= bound.
    Lproduct {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        bound: u64,
    },
    /// Good, multiplicative or additive reduction at p.
    Redtype {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
    },
}

/// Integer or `num/den`; no decimals, no floats.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("malformed rational '{s}'"))?;
    let den: BigInt = den.parse().map_err(|_| format!("malformed rational '{s}'"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; nothing was computed.
    Usage(String),
    /// A mathematical precondition failed.
    Math(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn report(&self) -> String {
        let (kind, msg) = match self {
            CliError::Usage(m) => ("usage", m),
            CliError::Math(m) => ("contract", m),
            CliError::Io(m) => ("io", m),
        };
        json!({ "error": kind, "message": msg }).to_string()
    }
}

fn math<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Math(e.to_string())
}

/// A rendered report: a JSON document and, for tabular commands, a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

impl Report {
    fn object(json: Value) -> Self {
        Self { json, table: None }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.json)
                .map(|s| s + "\n")
                .map_err(|e| CliError::Io(e.to_string())),
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io(e.to_string());
                match &self.table {
                    Some((headers, rows)) => {
                        w.write_record(headers).map_err(io)?;
                        for r in rows {
                            w.write_record(r).map_err(io)?;
                        }
                    }
                    None => {
                        w.write_record(["key", "value"]).map_err(io)?;
                        if let Value::Object(map) = &self.json {
                            for (k, v) in map {
                                let v = match v {
                                    Value::String(s) => s.clone(),
                                    other => other.to_string(),
                                };
                                w.write_record([k.as_str(), v.as_str()]).map_err(io)?;
                            }
                        }
                    }
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

const MAX_SAFE_JSON_INT: u128 = 1 << 53;

/// Integers beyond 2^53 become strings.
fn int_json<T: Into<BigInt>>(n: T) -> Value {
    let n: BigInt = n.into();
    match n.to_i128() {
        Some(v) if v.unsigned_abs() <= MAX_SAFE_JSON_INT => json!(v as i64),
        _ => Value::String(n.to_string()),
    }
}

fn rational_json(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn triangle_json(t: &RationalTriangle) -> Value {
    json!({
        "a": rational_json(t.a()),
        "b": rational_json(t.b()),
        "c": rational_json(t.c()),
        "area": rational_json(t.area()),
    })
}

fn point_json(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Infinity => json!("infinity"),
        CurvePoint::Affine { x, y } => json!({ "x": rational_json(x), "y": rational_json(y) }),
    }
}

fn calpha_json(p: &CAlphaPoint) -> Value {
    json!({
        "alpha": int_json(p.alpha().clone()),
        "x": rational_json(p.x()),
        "y": rational_json(p.y()),
    })
}

fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(k) => json!(k),
        Valuation::Infinite => json!("inf"),
    }
}

fn record_row(r: &TraceRecord) -> Vec<String> {
    vec![r.p.to_string(), r.count.to_string(), r.a_p.to_string(), format!("{:.17}", r.gamma_p)]
}

fn record_json(r: &TraceRecord) -> Value {
    json!({ "p": r.p, "count": r.count, "a_p": r.a_p, "gamma_p": r.gamma_p })
}

fn check_sweep_bound(bound: u64) -> Result<(), CliError> {
    if bound > MAX_SWEEP_BOUND {
        return Err(CliError::Usage(format!("bound {bound} exceeds {MAX_SWEEP_BOUND}")));
    }
    Ok(())
}

/// Execute a parsed configuration and return the report.
pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    let threads = config.threads.max(1);
    match &config.command {
        Command::Tunnell { j, n_max } => {
            if *n_max < 1 || *n_max > MAX_SERIES_ORDER {
                return Err(CliError::Usage(format!("n-max must be in 1..={MAX_SERIES_ORDER}")));
            }
            let c = series::tunnell_coefficients(*j, *n_max).map_err(math)?;
            let rows: Vec<Vec<String>> =
                c.iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), v.to_string()]).collect();
            let coeffs: Vec<Value> = c.iter().map(|v| Value::String(v.to_string())).collect();
            Ok(Report {
                json: json!({ "j": j, "n_max": n_max, "coefficients": coeffs }),
                table: Some((vec!["n", "c"], rows)),
            })
        }
        Command::Classify { alpha, bound } => {
            let mut c = congruent::classify(*alpha, 0).map_err(math)?;
            if c.coefficient.is_zero() {
                let found = if threads > 1 {
                    congruent::certificate_search_par(c.target.alpha, *bound)
                } else {
                    congruent::certificate_search(c.target.alpha, *bound)
                };
                c.verdict = match found {
                    Some(certificate) => CongruenceVerdict::Congruent { certificate },
                    None => CongruenceVerdict::LikelyCongruent { bound: *bound },
                };
            }
            let mut obj = Map::new();
            obj.insert("alpha".into(), int_json(c.target.alpha));
            obj.insert("j".into(), json!(c.target.j));
            obj.insert("n".into(), int_json(c.target.n));
            obj.insert("c".into(), Value::String(c.coefficient.to_string()));
            obj.insert("verdict".into(), json!(c.verdict.label()));
            obj.insert("bound".into(), int_json(*bound));
            match &c.verdict {
                CongruenceVerdict::Congruent { certificate } => {
                    obj.insert("certificate".into(), triangle_json(certificate));
                }
                CongruenceVerdict::LikelyCongruent { .. } => {
                    obj.insert("caveat".into(), json!(congruent::CONDITIONAL_CAVEAT));
                }
                CongruenceVerdict::NotCongruent { .. } => {}
            }
            Ok(Report::object(Value::Object(obj)))
        }
        Command::Enumerate { m_bound, max_alpha } => {
            if *m_bound < 2 {
                return Err(CliError::Usage("m-bound must be at least 2".into()));
            }
            if let Some(max_alpha) = max_alpha {
                if *m_bound > MAX_PREFIX_M_BOUND {
                    return Err(CliError::Usage(format!("m-bound must be at most {MAX_PREFIX_M_BOUND}")));
                }
                let first = congruent::enumerate_congruent_up_to(*m_bound, *max_alpha);
                let rows = first
                    .iter()
                    .map(|(a, (m, n))| vec![a.to_string(), m.to_string(), n.to_string()])
                    .collect();
                let areas: Vec<Value> =
                    first.iter().map(|(a, (m, n))| json!({ "alpha": a, "m": m, "n": n })).collect();
                return Ok(Report {
                    json: json!({ "m_bound": m_bound, "max_alpha": max_alpha, "areas": areas }),
                    table: Some((vec!["alpha", "m", "n"], rows)),
                });
            }
            if *m_bound > MAX_ENUMERATE_M_BOUND {
                return Err(CliError::Usage(format!(
                    "m-bound must be at most {MAX_ENUMERATE_M_BOUND} without --max-alpha"
                )));
            }
            let set = congruent::enumerate_congruent(*m_bound);
            let rows = set.iter().map(|a| vec![a.to_string()]).collect();
            let values: Vec<Value> = set.iter().map(|&a| int_json(a)).collect();
            Ok(Report {
                json: json!({ "m_bound": m_bound, "areas": values }),
                table: Some((vec!["alpha"], rows)),
            })
        }
        Command::Triangle(t) => triangle(t),
        Command::VerifyAp { alpha, d_num, d_den, root } => {
            if d_den.is_zero() {
                return Err(CliError::Usage("zero denominator".into()));
            }
            let mut d = BigRational::new(d_num.clone(), d_den.clone());
            if *root {
                d = &d * &d;
            }
            let ok = congruent::verify_square_ap(alpha, &d);
            Ok(Report::object(json!({
                "alpha": rational_json(alpha),
                "d": rational_json(&d),
                "squares": ok,
            })))
        }
        Command::Curve(c) => curve_cmd(c),
        Command::Modp(m) => modp_cmd(m, threads),
        Command::SearchNoUnitArea { bound } => {
            if *bound > 100_000 {
                return Err(CliError::Usage("bound must be at most 100000".into()));
            }
            let r = congruent::no_unit_area_search(*bound);
            let sols: Vec<Value> = r
                .quartic_solutions
                .iter()
                .map(|(x, y, z)| json!([x, y, int_json(*z)]))
                .collect();
            Ok(Report::object(json!({
                "bound": r.bound,
                "quartic_pairs_scanned": r.quartic_pairs_scanned,
                "triple_pairs_scanned": r.triple_pairs_scanned,
                "quartic_solutions": sols,
                "unit_area_pairs": r.unit_area_pairs,
                "empty": r.is_empty(),
            })))
        }
    }
}

fn triangle(cmd: &TriangleCommand) -> Result<Report, CliError> {
    let build = |t: &TriangleArgs| RationalTriangle::new(t.a.clone(), t.b.clone(), t.c.clone()).map_err(math);
    match cmd {
        TriangleCommand::ToPoint(t) => {
            let p = congruent::triangle_to_point(&build(t)?).map_err(math)?;
            Ok(Report::object(calpha_json(&p)))
        }
        TriangleCommand::FromPoint(p) => {
            let pt = CAlphaPoint::new(p.alpha.clone(), p.x.clone(), p.y.clone()).map_err(math)?;
            let t = congruent::point_to_triangle(&pt).map_err(math)?;
            Ok(Report::object(triangle_json(&t)))
        }
        TriangleCommand::Congruum(t) => {
            let w = congruent::congruum_ap(&build(t)?);
            Ok(Report::object(json!({
                "d": rational_json(&w.d),
                "alpha": rational_json(&w.alpha),
            })))
        }
    }
}

fn curve_cmd(cmd: &CurveCommand) -> Result<Report, CliError> {
    match cmd {
        CurveCommand::Invariants(args) => {
            let e = args.curve();
            Ok(Report::object(json!({
                "a1": rational_json(&e.a1),
                "a2": rational_json(&e.a2),
                "a3": rational_json(&e.a3),
                "a4": rational_json(&e.a4),
                "a6": rational_json(&e.a6),
                "b2": rational_json(&e.b2),
                "b4": rational_json(&e.b4),
                "b6": rational_json(&e.b6),
                "b8": rational_json(&e.b8),
                "c4": rational_json(&e.c4),
                "c6": rational_json(&e.c6),
                "delta": rational_json(&e.delta),
                "nonsingular": e.is_nonsingular(),
            })))
        }
        CurveCommand::Double { curve, x, y } => {
            let e = curve.curve();
            let p = CurvePoint::affine(x.clone(), y.clone());
            let d = e.double(&p).map_err(math)?;
            Ok(Report::object(json!({ "point": point_json(&p), "double": point_json(&d) })))
        }
        CurveCommand::Iterate { point, steps } => {
            let mut p = CAlphaPoint::new(point.alpha.clone(), point.x.clone(), point.y.clone()).map_err(math)?;
            let mut chain = Vec::with_capacity(steps + 1);
            let mut rows = Vec::new();
            for i in 0..=*steps {
                let t = congruent::point_to_triangle(&p).map_err(math)?;
                let half_c = t.c() / BigRational::from_integer(2.into());
                rows.push(vec![
                    i.to_string(),
                    p.x().to_string(),
                    p.y().to_string(),
                    half_c.to_string(),
                ]);
                chain.push(json!({
                    "step": i,
                    "point": calpha_json(&p),
                    "triangle": triangle_json(&t),
                    "half_hypotenuse": rational_json(&half_c),
                }));
                if i < *steps {
                    p = curve::tangent_next(&p).map_err(math)?;
                }
            }
            Ok(Report {
                json: json!({ "chain": chain }),
                table: Some((vec!["step", "x", "y", "half_hypotenuse"], rows)),
            })
        }
    }
}

fn modp_cmd(cmd: &ModpCommand, threads: usize) -> Result<Report, CliError> {
    match cmd {
        ModpCommand::Count { curve, p, fermat_cubic } => {
            let count = if *fermat_cubic {
                modp::count_plane_cubic(*p).map_err(math)?
            } else {
                let rc = modp::ReducedCurve::new(&curve.curve(), *p).map_err(math)?;
                modp::count_points(&rc).map_err(math)?
            };
            Ok(Report::object(json!({ "p": p, "count": count })))
        }
        ModpCommand::Ap { curve, p, fermat_cubic } => {
            if *fermat_cubic {
                let count = modp::count_plane_cubic(*p).map_err(math)?;
                let gauss = modp::gauss_ap(*p).map_err(math)?;
                let a_p = *p as i64 + 1 - count as i64;
                return Ok(Report::object(json!({
                    "p": p, "count": count, "a_p": a_p, "gauss_a_p": gauss,
                })));
            }
            match modp::trace_at(&curve.curve(), *p).map_err(math)? {
                Some(r) => Ok(Report::object(record_json(&r))),
                None => Err(CliError::Math(modp::ModpError::BadReduction(*p).to_string())),
            }
        }
        ModpCommand::Sweep { curve, bound } => {
            check_sweep_bound(*bound)?;
            let s = modp::trace_sweep_threads(&curve.curve(), *bound, threads).map_err(math)?;
            let records: Vec<Value> = s.records.iter().map(record_json).collect();
            Ok(Report {
                json: json!({
                    "bound": bound,
                    "records": records,
                    "bad_primes": s.bad_primes,
                    "excluded_primes": s.excluded_primes,
                }),
                table: Some((vec!["p", "count", "a_p", "gamma_p"], s.records.iter().map(record_row).collect())),
            })
        }
        ModpCommand::Satotate { curve, bound, bins } => {
            check_sweep_bound(*bound)?;
            if *bins == 0 {
                return Err(CliError::Usage("bins must be at least 1".into()));
            }
            let s = modp::trace_sweep_threads(&curve.curve(), *bound, threads).map_err(math)?;
            let hist = modp::histogram_of(&s.records, *bins).map_err(math)?;
            let rows = hist
                .iter()
                .map(|b| {
                    vec![
                        format!("{:.17}", b.lo),
                        format!("{:.17}", b.hi),
                        format!("{:.17}", b.empirical),
                        format!("{:.17}", b.predicted),
                    ]
                })
                .collect();
            let bins_json: Vec<Value> = hist
                .iter()
                .map(|b| json!({ "bin_lo": b.lo, "bin_hi": b.hi, "empirical": b.empirical, "predicted": b.predicted }))
                .collect();
            Ok(Report {
                json: json!({
                    "bound": bound,
                    "primes": s.records.len(),
                    "sup_norm": modp::sup_norm(&hist),
                    "bins": bins_json,
                }),
                table: Some((vec!["bin_lo", "bin_hi", "empirical", "predicted"], rows)),
            })
        }
        ModpCommand::Lproduct { curve, bound } => {
            check_sweep_bound(*bound)?;
            let s = modp::trace_sweep_threads(&curve.curve(), *bound, threads).map_err(math)?;
            let l = modp::l_product_of(&s.records);
            Ok(Report::object(json!({
                "bound": bound,
                "primes_used": l.primes_used,
                "value": rational_json(&l.value),
                "approx": l.to_f64(),
            })))
        }
        ModpCommand::Redtype { curve, p } => {
            let r = modp::reduction_type(&curve.curve(), *p).map_err(math)?;
            let kind = match r.kind {
                ReductionKind::Good => "Good",
                ReductionKind::Multiplicative => "Multiplicative",
                ReductionKind::Additive => "Additive",
            };
            Ok(Report::object(json!({
                "p": p,
                "type": kind,
                "v_delta": valuation_json(r.v_delta),
                "v_c4": valuation_json(r.v_c4),
            })))
        }
    }
}

/// Execute, render and either return the text or write it to `--output`.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    let text = execute(config)?.render(config.format)?;
    if let Some(path) = &config.output {
        std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        return Ok(String::new());
    }
    Ok(text)
}
