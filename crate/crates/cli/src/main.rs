//! `hypermult`: multiplicities, tropical curves and sign bounds from the
//! command line. Every command builds a JSON value; the text output is
//! rendered from it.

mod examples;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypermult::multiplicity::{
    bmult, descartes_univariate, divides_once, mult, setmult_bound, PolySet, SetMultMode,
};
use hypermult::polyring::{grid_from_text, parse_poly_n, parse_ratpoly};
use hypermult::realcert::{real_linear_quotient_feasible, verify_certificate};
use hypermult::resultant::{
    canny_emiris_matrix, resultant_multiple, specialize_signs, SupportSystem,
};
use hypermult::systems::{epsilon_n, m_k, m_s, system_bound, transverse_case_n, transverse_intersections};
use hypermult::tropgeo::svg::{curve_svg, subdivision_svg};
use hypermult::tropgeo::{
    enriched_curve, gmult, initial_form, mult_tropext, newton_subdivision, pmult, LineFamily, PmultMode,
    PmultOptions,
};
use hypermult::{Error, HPoly, HyperValue, HyperfieldId, Q};

#[derive(Parser, Debug)]
#[command(name = "hypermult", version, about = "Linear-factor multiplicities over hyperfields")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// Coefficient hyperfield; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldArg>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write an SVG picture (subdivision, curve, pmult).
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Height bound for lift searches (pmult, epsilon-n).
    #[arg(long, global = true, value_name = "N")]
    pub height_bound: Option<u32>,
    /// Assert that no randomness is used. Every computation is
    /// deterministic, so this only records the assertion.
    #[arg(long, global = true)]
    pub seedless: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "UPPER")]
pub enum FieldArg {
    K,
    S,
    T,
    #[value(name = "TR")]
    Tr,
}

impl FieldArg {
    fn id(self) -> HyperfieldId {
        match self {
            FieldArg::K => HyperfieldId::K,
            FieldArg::S => HyperfieldId::S,
            FieldArg::T => HyperfieldId::T,
            FieldArg::Tr => HyperfieldId::TR,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hyperfield multiplicity of linear forms in f.
    Mult {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        #[arg(short, required = true, allow_hyphen_values = true)]
        l: Vec<String>,
    },
    /// Boundary multiplicity.
    Bmult {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        #[arg(short, allow_hyphen_values = true)]
        l: String,
    },
    /// Geometric multiplicity of lines in a tropical curve.
    Gmult {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        /// A fixed line.
        #[arg(short, allow_hyphen_values = true)]
        l: Vec<String>,
        /// Every line with these signs of (1, x, y), e.g. "+,+,-".
        #[arg(long, allow_hyphen_values = true)]
        pattern: Vec<String>,
        /// Require the sign enrichment to split off as well.
        #[arg(long)]
        enriched: bool,
    },
    /// Perturbation multiplicity of a sign polynomial.
    Pmult {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        #[arg(short, allow_hyphen_values = true)]
        l: String,
        /// Accept non-dense polynomials, lifting only their support.
        #[arg(long)]
        relaxed: bool,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
    /// Sign changes of a coefficient sequence, e.g. "+ - 0 +".
    Descartes {
        #[arg(allow_hyphen_values = true)]
        signs: String,
    },
    /// All quotients g with f in l·g.
    Divides {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        #[arg(short, allow_hyphen_values = true)]
        l: String,
    },
    /// Initial form at a point.
    Initial {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        /// Comma-separated rational coordinates.
        #[arg(short, allow_hyphen_values = true)]
        w: String,
    },
    /// Regular subdivision of the Newton polytope.
    Subdivision {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
    },
    /// Tropical curve with its sign labels.
    Curve {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
    },
    /// Multiplicity bound for a polynomial with sign-set coefficients.
    Setmult {
        /// Rows of sign sets (`+ - 0 *` or `{+,0}`), top row first.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(short, allow_hyphen_values = true)]
        l: String,
        /// Backtrack over undetermined coefficients up to this many members.
        #[arg(long)]
        full: Option<usize>,
    },
    /// Sparse resultant of a system with a generic linear form.
    Resultant {
        /// JSON file `{"vars": [...], "polys": [...]}`.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Polynomials with integer coefficients and symbolic parameters.
        #[arg(long, allow_hyphen_values = true)]
        poly: Vec<String>,
        #[arg(long, default_value = "x,y")]
        vars: String,
        /// Signs of the parameters, e.g. "a=+,b=-".
        #[arg(long)]
        signs: Option<String>,
        #[arg(long, value_enum, default_value = "poly")]
        out: OutArg,
        /// Orthant signs for the bound printed with `--out signgrid`.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Bounds on the number of solutions with given signs.
    SystemBound {
        #[arg(short, required = true, allow_hyphen_values = true)]
        f: Vec<String>,
        /// Comma-separated coordinates, e.g. "+,+" or "t^1,-t^(-2)".
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Lower bound from transverse lifts of a sign system.
    EpsilonN {
        #[arg(short, required = true, allow_hyphen_values = true)]
        f: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Intersection points of two tropical curves.
    Transverse {
        #[arg(short, required = true, allow_hyphen_values = true)]
        f: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Feasibility of a real quotient by 1 + s_1 x_1 + ... with given signs.
    RealQuotient {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        /// Signs s_i, e.g. "+,+".
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
    },
    /// Check that a product of rational polynomials has the signs of f.
    VerifyCert {
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        #[arg(long = "factor", required = true, allow_hyphen_values = true)]
        factors: Vec<String>,
    },
    /// The registry of worked examples.
    Examples {
        #[command(subcommand)]
        action: ExampleAction,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum ModeArg {
    Auto,
    Direct,
    Factor,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutArg {
    Poly,
    Signgrid,
}

#[derive(Subcommand, Debug)]
pub enum ExampleAction {
    List,
    Run {
        id: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

/// Failures of a command, mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Math(Error),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Math(_) | CliError::Io(_) => 1,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Parse(m) => json!({"error": "parse", "message": m}),
            CliError::Math(e) => json!({"error": e.kind(), "message": e.to_string()}),
            CliError::Io(m) => json!({"error": "io", "message": m}),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Parse(m),
            other => CliError::Math(other),
        }
    }
}

type Out = Result<Value, CliError>;

fn field_or(g: &Global, default: HyperfieldId) -> HyperfieldId {
    g.field.map_or(default, FieldArg::id)
}

/// A polynomial as an expression or as a grid; grid rows are separated by
/// newlines or `|`, top row first.
fn parse_one(text: &str, field: HyperfieldId, nvars: usize) -> Result<HPoly, CliError> {
    if text.contains('\n') || text.contains('|') {
        let grid = text.replace('|', "\n");
        let p = grid_from_text(&grid, field)?;
        if p.nvars() != nvars {
            return Err(CliError::Parse(format!("grid has {} variables, expected {nvars}", p.nvars())));
        }
        return Ok(p);
    }
    Ok(parse_poly_n(text, field, nvars)?)
}

/// Parse polynomials over a common set of variables.
fn parse_all(texts: &[&str], field: HyperfieldId) -> Result<Vec<HPoly>, CliError> {
    let mut n = 0;
    for t in texts {
        let p = if t.contains('\n') || t.contains('|') {
            grid_from_text(&t.replace('|', "\n"), field)?
        } else {
            hypermult::polyring::parse_poly(t, field)?
        };
        n = n.max(p.nvars());
    }
    texts.iter().map(|t| parse_one(t, field, n)).collect()
}

fn parse_sign(tok: &str) -> Result<i8, CliError> {
    match tok.trim() {
        "+" | "1" | "+1" => Ok(1),
        "-" | "-1" => Ok(-1),
        "0" => Ok(0),
        other => Err(CliError::Parse(format!("not a sign: {other:?}"))),
    }
}

fn parse_signs(text: &str) -> Result<Vec<i8>, CliError> {
    let toks: Vec<String> = if text.contains(',') || text.contains(' ') {
        text.split([',', ' ']).filter(|s| !s.is_empty()).map(String::from).collect()
    } else {
        text.chars().map(String::from).collect()
    };
    toks.iter().map(|t| parse_sign(t)).collect()
}

fn parse_point(text: &str) -> Result<Vec<Q>, CliError> {
    text.split(',')
        .map(|s| hypermult::hyperfield::parse_rational(s.trim()).map_err(CliError::from))
        .collect()
}

fn parse_h(text: &str, field: HyperfieldId) -> Result<Vec<HyperValue>, CliError> {
    text.split(',').map(|s| Ok(HyperValue::parse(s.trim(), field)?)).collect()
}

fn write_svg(g: &Global, svg: impl FnOnce() -> Result<String, CliError>) -> Result<Option<String>, CliError> {
    match &g.svg {
        None => Ok(None),
        Some(path) => {
            let text = svg()?;
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Some(path.display().to_string()))
        }
    }
}

fn poly_list(ps: &[HPoly]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect())
}

pub fn run(cli: &Cli) -> Out {
    let g = &cli.global;
    let mut out = dispatch(g, &cli.command)?;
    if g.seedless {
        if let Value::Object(m) = &mut out {
            m.insert("seedless".into(), Value::Bool(true));
        }
    }
    Ok(out)
}

fn dispatch(g: &Global, cmd: &Command) -> Out {
    match cmd {
        Command::Mult { f, l } => {
            let field = field_or(g, HyperfieldId::S);
            let mut texts = vec![f.as_str()];
            texts.extend(l.iter().map(String::as_str));
            let ps = parse_all(&texts, field)?;
            if field.is_ext() {
                if ps.len() != 2 {
                    return Err(CliError::Parse("over T or TR give exactly one -l".into()));
                }
                let r = mult_tropext(&ps[0], &ps[1])?;
                return Ok(json!({"value": r.value, "lower": r.lower, "upper": r.upper}));
            }
            let r = mult(&PolySet::single(ps[0].clone()), &ps[1..])?;
            let chain: Vec<Value> = r
                .witness_chain
                .iter()
                .map(|s| json!({"divisor": s.divisor.to_string(), "quotient": s.quotient.to_string()}))
                .collect();
            Ok(json!({"value": r.value, "witness": chain}))
        }
        Command::Bmult { f, l } => {
            let ps = parse_all(&[f, l], field_or(g, HyperfieldId::S))?;
            Ok(json!({"value": bmult(&ps[0], &ps[1])?}))
        }
        Command::Gmult { f, l, pattern, enriched } => {
            let field = field_or(g, HyperfieldId::T);
            let mut texts = vec![f.as_str()];
            texts.extend(l.iter().map(String::as_str));
            let ps = parse_all(&texts, field)?;
            let family = if !pattern.is_empty() {
                let pats = pattern
                    .iter()
                    .map(|p| {
                        let s = parse_signs(p)?;
                        <[i8; 3]>::try_from(s).map_err(|_| CliError::Parse(format!("pattern {p:?} needs 3 signs")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                LineFamily::SignPattern(pats)
            } else if ps.len() > 1 {
                LineFamily::Fixed(ps[1..].to_vec())
            } else {
                LineFamily::SignPattern(vec![[1, 1, 1]])
            };
            let v = enriched_curve(&ps[0])?;
            let r = gmult(&v, &family, *enriched)?;
            let svg = write_svg(g, || Ok(curve_svg(&v)))?;
            Ok(json!({
                "value": r.value,
                "summands": r.summands.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "candidates": r.candidates,
                "svg": svg,
            }))
        }
        Command::Pmult { f, l, relaxed, mode } => {
            let ps = parse_all(&[f, l], field_or(g, HyperfieldId::S))?;
            let opts = PmultOptions {
                height_bound: g.height_bound,
                mode: match mode {
                    ModeArg::Auto => PmultMode::Auto,
                    ModeArg::Direct => PmultMode::Direct,
                    ModeArg::Factor => PmultMode::Factor,
                },
                relaxed: *relaxed,
            };
            let r = pmult(&ps[0], &ps[1], opts)?;
            let svg = write_svg(g, || {
                let lift = r
                    .lift
                    .as_ref()
                    .ok_or_else(|| CliError::Math(Error::Invalid("no lift was found to draw".into())))?;
                let v = enriched_curve(lift)?;
                Ok(subdivision_svg(&v.subdivision, Some(&v.labels)))
            })?;
            Ok(json!({
                "value": r.value,
                "exact": r.exact,
                "mode": format!("{:?}", r.mode),
                "height_bound": r.height_bound,
                "subdivisions_visited": r.subdivisions_visited,
                "lift": r.lift.as_ref().map(ToString::to_string),
                "svg": svg,
            }))
        }
        Command::Descartes { signs } => {
            let s = parse_signs(signs)?;
            Ok(json!({"value": descartes_univariate(&s)?}))
        }
        Command::Divides { f, l } => {
            let ps = parse_all(&[f, l], field_or(g, HyperfieldId::S))?;
            let qs = divides_once(&ps[0], &ps[1])?;
            Ok(json!({"count": qs.len(), "quotients": poly_list(&qs)}))
        }
        Command::Initial { f, w } => {
            let p = parse_all(&[f], field_or(g, HyperfieldId::T))?;
            let pt = parse_point(w)?;
            let i = initial_form(&p[0], &pt)?;
            Ok(json!({"initial": i.to_string(), "field": i.field().to_string()}))
        }
        Command::Subdivision { f } => {
            let p = parse_all(&[f], field_or(g, HyperfieldId::T))?;
            let sd = newton_subdivision(&p[0])?;
            let labels: Option<Vec<i8>> = p[0]
                .field()
                .is_signed()
                .then(|| sd.points.iter().map(|e| p[0].coeff(e).angular()).collect());
            let svg = write_svg(g, || Ok(subdivision_svg(&sd, labels.as_deref())))?;
            Ok(json!({
                "text": sd.to_string(),
                "strictly_convex": sd.is_strictly_convex(),
                "subdivision": serde_json::to_value(&sd).unwrap_or(Value::Null),
                "svg": svg,
            }))
        }
        Command::Curve { f } => {
            let p = parse_all(&[f], field_or(g, HyperfieldId::T))?;
            let v = enriched_curve(&p[0])?;
            let svg = write_svg(g, || Ok(curve_svg(&v)))?;
            Ok(json!({
                "text": v.curve.to_string(),
                "balanced": v.curve.is_balanced(),
                "curve": serde_json::to_value(&v.curve).unwrap_or(Value::Null),
                "labels": v.labels,
                "svg": svg,
            }))
        }
        Command::Setmult { grid, l, full } => {
            let r = hypermult::SignSetPoly::from_grid_text(&grid.replace('|', "\n"))?;
            let lp = parse_one(l, HyperfieldId::S, r.nvars)?;
            let mode = match full {
                Some(cap) => SetMultMode::Full { cap: *cap },
                None => SetMultMode::Boundary,
            };
            Ok(json!({"bound": setmult_bound(&r, &lp, mode)?, "grid": r.to_grid_text()}))
        }
        Command::Resultant { system, poly, vars, signs, out, h } => {
            let (polys, vars) = match system {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    let v: SystemFile = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
                    (v.polys, v.vars)
                }
                None => (poly.clone(), vars.split(',').map(|s| s.trim().to_string()).collect()),
            };
            let p: Vec<&str> = polys.iter().map(String::as_str).collect();
            let v: Vec<&str> = vars.iter().map(String::as_str).collect();
            let sys = SupportSystem::from_text(&p, &v)?;
            let m = canny_emiris_matrix(&sys)?;
            let r = resultant_multiple(&sys)?;
            let y: Vec<&str> = sys.y.iter().map(String::as_str).collect();
            match out {
                OutArg::Poly => Ok(json!({
                    "resultant": r.to_string(),
                    "matrix_size": m.size(),
                    "row_counts": m.row_counts(),
                    "degree": r.degree_in_set(&y),
                })),
                OutArg::Signgrid => {
                    let text = signs.as_deref().ok_or_else(|| CliError::Parse("--out signgrid needs --signs".into()))?;
                    let s = parse_assignments(text)?;
                    let grid = specialize_signs(&r, &y, &s)?;
                    let hs = match h {
                        Some(t) => parse_signs(t)?,
                        None => vec![1; y.len()],
                    };
                    if hs.len() != y.len() || hs.contains(&0) {
                        return Err(CliError::Parse(format!("--h needs {} nonzero signs", y.len())));
                    }
                    let mut l = HPoly::zero(HyperfieldId::S, y.len());
                    l.set(vec![0; y.len()], HyperValue::sign(HyperfieldId::S, 1));
                    for (i, sg) in hs.iter().enumerate() {
                        let mut e = vec![0; y.len()];
                        e[i] = 1;
                        l.set(e, HyperValue::sign(HyperfieldId::S, *sg));
                    }
                    Ok(json!({
                        "grid": grid.to_grid_text(),
                        "matrix_size": m.size(),
                        "bound": setmult_bound(&grid, &l, SetMultMode::Boundary)?,
                    }))
                }
            }
        }
        Command::SystemBound { f, h } => {
            let field = field_or(g, HyperfieldId::S);
            let texts: Vec<&str> = f.iter().map(String::as_str).collect();
            let ps = parse_all(&texts, field)?;
            let r = system_bound(&ps, &parse_h(h, field)?)?;
            Ok(serde_json::to_value(r).unwrap_or(Value::Null))
        }
        Command::EpsilonN { f, h } => {
            let texts: Vec<&str> = f.iter().map(String::as_str).collect();
            let ps = parse_all(&texts, field_or(g, HyperfieldId::S))?;
            let r = epsilon_n(&ps, &parse_signs(h)?, g.height_bound.unwrap_or(8))?;
            Ok(json!({
                "value": r.value,
                "height_bound": r.height_bound,
                "lifts_visited": r.lifts_visited,
                "lifts_transverse": r.lifts_transverse,
                "witness": r.witness.as_ref().map(|w| poly_list(w)),
            }))
        }
        Command::Transverse { f, h } => {
            let field = field_or(g, HyperfieldId::T);
            let texts: Vec<&str> = f.iter().map(String::as_str).collect();
            let ps = parse_all(&texts, field)?;
            let pts = transverse_intersections(&ps)?;
            let hv = h.as_deref().map(|t| parse_h(t, field)).transpose()?;
            let points = pts
                .iter()
                .map(|p| {
                    let mut o = json!({
                        "location": p.location.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "m_k": m_k(p)?,
                    });
                    if let (Some(hv), true) = (&hv, field == HyperfieldId::TR) {
                        let s: Vec<i8> = hv.iter().map(HyperValue::angular).collect();
                        o["m_s"] = json!(m_s(p, &s));
                    }
                    Ok(o)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let n = match &hv {
                Some(hv) => Some(transverse_case_n(&ps, hv)?),
                None => None,
            };
            Ok(json!({"points": points, "count": n}))
        }
        Command::RealQuotient { f, signs } => {
            let s = parse_signs(signs)?;
            let p = parse_one(f, HyperfieldId::S, s.len())?;
            let r = real_linear_quotient_feasible(&p, &s)?;
            Ok(json!({"outcome": r.label(), "detail": r.to_string()}))
        }
        Command::VerifyCert { f, factors } => {
            let p = parse_all(&[f], HyperfieldId::S)?;
            let fs = factors.iter().map(|t| parse_ratpoly(t)).collect::<Result<Vec<_>, _>>()?;
            Ok(json!({"verified": verify_certificate(&fs, &p[0])?}))
        }
        Command::Examples { action } => examples::run_examples(action),
    }
}

#[derive(serde::Deserialize)]
struct SystemFile {
    vars: Vec<String>,
    polys: Vec<String>,
}

fn parse_assignments(text: &str) -> Result<BTreeMap<String, i8>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("expected name=sign, got {item:?}")))?;
            Ok((k.trim().to_string(), parse_sign(v)?))
        })
        .collect()
}

/// Text rendering of a JSON result.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Null => {}
                    Value::String(s) if s.contains('\n') => out.push_str(&format!("{k}:\n{s}\n")),
                    Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                    Value::Array(a) if a.iter().all(|y| y.is_string()) => {
                        out.push_str(&format!("{k}:\n"));
                        for y in a {
                            out.push_str(&format!("  {}\n", y.as_str().unwrap_or_default()));
                        }
                    }
                    other => out.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(v) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            } else {
                print!("{}", render(&v));
            }
            let failed = v.get("failed").and_then(Value::as_u64).unwrap_or(0);
            if failed > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.global.json {
                println!("{}", e.to_json());
            } else {
                eprintln!("error: {}", e.to_json()["message"].as_str().unwrap_or_default());
            }
            ExitCode::from(e.code())
        }
    }
}
