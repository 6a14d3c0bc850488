//! Exact feasibility of strict/non-strict linear systems over the rationals
//! by Fourier–Motzkin elimination, one-step real quotient feasibility for
//! sign polynomials, and verification of explicit rational factorizations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperfield::{fmt_exponent, q, sign_of_q, HyperfieldId, Q};
use crate::polyring::{default_var_names, Exp, HPoly, RatPoly};
use crate::polytope::lattice_points;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Gt,
    Lt,
    Eq,
    Ge,
    Le,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Gt => ">",
            Relation::Lt => "<",
            Relation::Eq => "=",
            Relation::Ge => "≥",
            Relation::Le => "≤",
        }
    }
}

/// `Σ coeffs[i]·x_i + constant  REL  0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    #[serde(serialize_with = "ser_qs")]
    pub coeffs: Vec<Q>,
    #[serde(serialize_with = "ser_q")]
    pub constant: Q,
    pub rel: Relation,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_qs<S: serde::Serializer>(x: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

impl Constraint {
    pub fn new(coeffs: Vec<Q>, constant: Q, rel: Relation) -> Self {
        Constraint {
            coeffs,
            constant,
            rel,
        }
    }

    /// Evaluate the left-hand side at `x`.
    pub fn lhs(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<Q>() + &self.constant
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        let v = self.lhs(x);
        match self.rel {
            Relation::Gt => v.is_positive(),
            Relation::Lt => v.is_negative(),
            Relation::Eq => v.is_zero(),
            Relation::Ge => !v.is_negative(),
            Relation::Le => !v.is_positive(),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        let lhs = linear_text(&self.coeffs, &Q::zero(), names);
        let rhs = -self.constant.clone();
        format!("{lhs} {} {}", self.rel.symbol(), fmt_exponent(&rhs))
    }
}

fn linear_text(coeffs: &[Q], constant: &Q, names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&fmt_exponent(&mag));
            out.push('*');
        }
        out.push_str(name);
    }
    if !constant.is_zero() || out.is_empty() {
        if out.is_empty() {
            out.push_str(&fmt_exponent(constant));
        } else {
            out.push_str(if constant.is_negative() { " - " } else { " + " });
            out.push_str(&fmt_exponent(&constant.abs()));
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new<S: AsRef<str>>(variables: &[S]) -> Self {
        LinearSystem {
            variables: variables.iter().map(|s| s.as_ref().to_string()).collect(),
            constraints: vec![],
        }
    }

    pub fn push(&mut self, coeffs: Vec<Q>, constant: Q, rel: Relation) {
        assert_eq!(coeffs.len(), self.variables.len());
        self.constraints.push(Constraint::new(coeffs, constant, rel));
    }

    /// Add `lhs REL rhs` written over variable indices: `lhs` and `rhs` are
    /// lists of `(coefficient, variable)` plus a constant.
    pub fn push_terms(
        &mut self,
        lhs: &[(i64, usize)],
        lhs_const: i64,
        rel: Relation,
        rhs: &[(i64, usize)],
        rhs_const: i64,
    ) {
        let mut c = vec![Q::zero(); self.variables.len()];
        for &(a, v) in lhs {
            c[v] += q(a);
        }
        for &(a, v) in rhs {
            c[v] -= q(a);
        }
        self.push(c, q(lhs_const - rhs_const), rel);
    }

    /// Parse constraints like `a + b > 0`, `1 < a`, `2*x - y <= 3`, one per
    /// item; variables are collected in order of first appearance.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<LinearSystem> {
        let mut vars: Vec<String> = Vec::new();
        let mut parsed = Vec::new();
        for item in items {
            let s = item.as_ref();
            let (pos, rel, len) = find_relation(s)
                .ok_or_else(|| Error::Parse(format!("no relation in `{s}`")))?;
            let lhs = parse_linear(&s[..pos], &mut vars)?;
            let rhs = parse_linear(&s[pos + len..], &mut vars)?;
            parsed.push((lhs, rel, rhs));
        }
        let mut sys = LinearSystem::new(&vars);
        for ((lc, lk), rel, (rc, rk)) in parsed {
            let mut c = vec![Q::zero(); vars.len()];
            for (v, a) in lc {
                c[v] += a;
            }
            for (v, a) in rc {
                c[v] -= a;
            }
            sys.push(c, lk - rk, rel);
        }
        Ok(sys)
    }
}

fn find_relation(s: &str) -> Option<(usize, Relation, usize)> {
    for (tok, rel) in [
        (">=", Relation::Ge),
        ("<=", Relation::Le),
        ("≥", Relation::Ge),
        ("≤", Relation::Le),
        (">", Relation::Gt),
        ("<", Relation::Lt),
        ("=", Relation::Eq),
    ] {
        if let Some(p) = s.find(tok) {
            return Some((p, rel, tok.len()));
        }
    }
    None
}

type Linear = (Vec<(usize, Q)>, Q);

fn parse_linear(s: &str, vars: &mut Vec<String>) -> Result<Linear> {
    let mut terms = Vec::new();
    let mut constant = Q::zero();
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse(format!("empty side in `{s}`")));
    }
    let mut chunks: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with(['*', '/']) {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(rest) => (-1, rest.to_string()),
            None => (1, chunk.trim_start_matches('+').to_string()),
        };
        let split = body.find(|c: char| c.is_ascii_alphabetic() || c == '_');
        match split {
            None => {
                let v = crate::hyperfield::parse_rational(&body)?;
                constant += q(sign) * v;
            }
            Some(i) => {
                let num = body[..i].trim_end_matches('*');
                let name = &body[i..];
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(Error::Parse(format!("bad variable `{name}`")));
                }
                let coef = if num.is_empty() {
                    q(1)
                } else {
                    crate::hyperfield::parse_rational(num)?
                };
                let idx = match vars.iter().position(|v| v == name) {
                    Some(p) => p,
                    None => {
                        vars.push(name.to_string());
                        vars.len() - 1
                    }
                };
                terms.push((idx, q(sign) * coef));
            }
        }
    }
    Ok((terms, constant))
}

/// Nonnegative combination of the input constraints whose variable part
/// vanishes and whose constant contradicts the combined relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `(constraint index, multiplier)`; multipliers of equalities may be
    /// negative.
    #[serde(serialize_with = "ser_mults")]
    pub multipliers: Vec<(usize, Q)>,
    pub chain: String,
}

fn ser_mults<S: serde::Serializer>(
    x: &[(usize, Q)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|(i, m)| (i, m.to_string())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum FeasibilityOutcome {
    Feasible {
        #[serde(serialize_with = "ser_qs")]
        sample: Vec<Q>,
    },
    Infeasible {
        certificate: Certificate,
    },
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Feasible { .. })
    }

    pub fn label(&self) -> &'static str {
        if self.is_feasible() {
            "FEASIBLE"
        } else {
            "INFEASIBLE"
        }
    }
}

impl fmt::Display for FeasibilityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeasibilityOutcome::Feasible { sample } => {
                let vals: Vec<String> = sample.iter().map(fmt_exponent).collect();
                write!(f, "FEASIBLE ({})", vals.join(", "))
            }
            FeasibilityOutcome::Infeasible { certificate } => {
                write!(f, "INFEASIBLE: {}", certificate.chain)
            }
        }
    }
}

/// Internal row: `a·x + c > 0` (strict) or `≥ 0`, with the multipliers that
/// derive it from the inputs.
#[derive(Clone, Debug)]
struct Row {
    a: Vec<Q>,
    c: Q,
    strict: bool,
    mult: BTreeMap<usize, Q>,
}

impl Row {
    fn combine(&self, s: &Q, other: &Row, t: &Q) -> Row {
        let a = self.a.iter().zip(&other.a).map(|(x, y)| x * s + y * t).collect();
        let mut mult = BTreeMap::new();
        for (k, v) in &self.mult {
            *mult.entry(*k).or_insert_with(Q::zero) += v * s;
        }
        for (k, v) in &other.mult {
            *mult.entry(*k).or_insert_with(Q::zero) += v * t;
        }
        mult.retain(|_, v| !v.is_zero());
        Row {
            a,
            c: &self.c * s + &other.c * t,
            strict: self.strict || other.strict,
            mult,
        }
    }

    fn contradiction(&self) -> bool {
        self.a.iter().all(Q::is_zero)
            && (self.c.is_negative() || (self.strict && self.c.is_zero()))
    }

    /// Scale so the first nonzero variable coefficient has magnitude one.
    fn key(&self) -> (Vec<Q>, Q, bool) {
        let s = self
            .a
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.abs())
            .unwrap_or_else(|| if self.c.is_zero() { q(1) } else { self.c.abs() });
        (
            self.a.iter().map(|x| x / &s).collect(),
            &self.c / &s,
            self.strict,
        )
    }
}

fn rows_of(sys: &LinearSystem) -> Vec<Row> {
    let mut rows = Vec::new();
    for (i, c) in sys.constraints.iter().enumerate() {
        let eq = matches!(c.rel, Relation::Eq);
        let pos = |strict: bool, sign: i64| Row {
            a: c.coeffs.iter().map(|x| x * q(sign)).collect(),
            c: &c.constant * q(sign),
            strict,
            mult: BTreeMap::from([(i, if eq { q(sign) } else { q(1) })]),
        };
        match c.rel {
            Relation::Gt => rows.push(pos(true, 1)),
            Relation::Ge => rows.push(pos(false, 1)),
            Relation::Lt => rows.push(pos(true, -1)),
            Relation::Le => rows.push(pos(false, -1)),
            Relation::Eq => {
                rows.push(pos(false, 1));
                rows.push(pos(false, -1));
            }
        }
    }
    rows
}

fn dedup_rows(rows: Vec<Row>) -> Vec<Row> {
    let mut seen: BTreeMap<(Vec<Q>, Q, bool), ()> = BTreeMap::new();
    let mut out = Vec::new();
    for r in rows {
        if r.a.iter().all(Q::is_zero) && !r.contradiction() {
            continue;
        }
        if seen.insert(r.key(), ()).is_none() {
            out.push(r);
        }
    }
    out
}

/// Decide feasibility exactly. Feasible systems come with a rational sample,
/// infeasible ones with a Farkas-style combination of the inputs.
pub fn fm_solve(sys: &LinearSystem) -> FeasibilityOutcome {
    let n = sys.variables.len();
    let mut rows = dedup_rows(rows_of(sys));
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    loop {
        if let Some(bad) = rows.iter().find(|r| r.contradiction()) {
            return FeasibilityOutcome::Infeasible {
                certificate: certificate_of(sys, bad),
            };
        }
        if remaining.is_empty() {
            break;
        }
        let var = *remaining
            .iter()
            .min_by_key(|&&v| {
                let cnt = rows.iter().filter(|r| !r.a[v].is_zero()).count();
                (cnt, v)
            })
            .unwrap();
        remaining.retain(|&v| v != var);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for r in &rows {
            if r.a[var].is_positive() {
                pos.push(r);
            } else if r.a[var].is_negative() {
                neg.push(r);
            } else {
                next.push(r.clone());
            }
        }
        for p in &pos {
            for m in &neg {
                let s = -m.a[var].clone();
                let t = p.a[var].clone();
                next.push(p.combine(&s, m, &t));
            }
        }
        stages.push((var, rows));
        rows = dedup_rows(next);
    }
    let mut x = vec![Q::zero(); n];
    for (var, rows) in stages.iter().rev() {
        x[*var] = pick_value(*var, rows, &x);
    }
    debug_assert!(sys.constraints.iter().all(|c| c.holds(&x)));
    FeasibilityOutcome::Feasible { sample: x }
}

/// A value for `var` inside the interval cut out by `rows`, given values for
/// every variable eliminated later.
fn pick_value(var: usize, rows: &[Row], x: &[Q]) -> Q {
    let mut lo: Option<(Q, bool)> = None;
    let mut hi: Option<(Q, bool)> = None;
    for r in rows {
        let a = &r.a[var];
        if a.is_zero() {
            continue;
        }
        let rest: Q = r
            .a
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(i, c)| c * &x[i])
            .sum::<Q>()
            + &r.c;
        let bound = -rest / a;
        if a.is_positive() {
            if lo.as_ref().is_none_or(|(b, s)| bound > *b || (bound == *b && r.strict && !s)) {
                lo = Some((bound, r.strict));
            }
        } else if hi.as_ref().is_none_or(|(b, s)| bound < *b || (bound == *b && r.strict && !s)) {
            hi = Some((bound, r.strict));
        }
    }
    let ok = |v: &Q| {
        lo.as_ref().is_none_or(|(b, s)| if *s { v > b } else { v >= b })
            && hi.as_ref().is_none_or(|(b, s)| if *s { v < b } else { v <= b })
    };
    let zero = Q::zero();
    if ok(&zero) {
        return zero;
    }
    // The integer closest to zero in the interval, else the midpoint.
    let cand = match (&lo, &hi) {
        (Some((b, _)), _) if b.is_positive() || b.is_zero() => b.floor() + q(1),
        (_, Some((b, _))) => b.ceil() - q(1),
        (Some((b, _)), None) => b.floor() + q(1),
        (None, None) => zero.clone(),
    };
    if ok(&cand) {
        return cand;
    }
    if let (Some((b, s)), _) = (&lo, &hi) {
        if !s && ok(b) && hi.is_none() {
            return b.clone();
        }
    }
    match (lo, hi) {
        (Some((a, _)), Some((b, _))) => {
            if a == b {
                a
            } else {
                (a + b) / q(2)
            }
        }
        (Some((a, _)), None) => a + q(1),
        (None, Some((b, _))) => b - q(1),
        (None, None) => zero,
    }
}

fn certificate_of(sys: &LinearSystem, bad: &Row) -> Certificate {
    let multipliers: Vec<(usize, Q)> = bad.mult.iter().map(|(k, v)| (*k, v.clone())).collect();
    let chain = chain_text(sys, &multipliers, bad);
    Certificate { multipliers, chain }
}

/// When every used constraint compares two single terms, print the ordered
/// chain they form (`a > -b > c > a`); otherwise print the combination.
fn chain_text(sys: &LinearSystem, mults: &[(usize, Q)], bad: &Row) -> String {
    if let Some(s) = try_chain(sys, mults) {
        return s;
    }
    let parts: Vec<String> = mults
        .iter()
        .map(|(i, m)| {
            let c = sys.constraints[*i].display(&sys.variables);
            if m.is_one() {
                format!("({c})")
            } else {
                format!("{}·({c})", fmt_exponent(m))
            }
        })
        .collect();
    let rel = if bad.strict { ">" } else { "≥" };
    format!("{} ⇒ {} {rel} 0", parts.join(" + "), fmt_exponent(&bad.c))
}

/// A term of a two-term constraint: a signed variable or a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    Var(usize, i8),
    Const(Q),
}

fn try_chain(sys: &LinearSystem, mults: &[(usize, Q)]) -> Option<String> {
    // Each constraint `big > small` with unit coefficients.
    let mut edges: Vec<(Atom, Atom, bool)> = Vec::new();
    for (i, m) in mults {
        if !m.is_positive() {
            return None;
        }
        let c = &sys.constraints[*i];
        let nz: Vec<(usize, &Q)> = c
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let flip = matches!(c.rel, Relation::Lt | Relation::Le);
        let strict = matches!(c.rel, Relation::Lt | Relation::Gt);
        if matches!(c.rel, Relation::Eq) {
            return None;
        }
        let sg = |v: &Q| if v.is_positive() { 1i8 } else { -1 };
        let (mut big, mut small) = match nz.as_slice() {
            [(v, a)] if a.abs().is_one() => {
                (Atom::Var(*v, sg(a)), Atom::Const(-c.constant.clone()))
            }
            [(v, a), (w, b)] if a.abs().is_one() && b.abs().is_one() && c.constant.is_zero() => {
                (Atom::Var(*v, sg(a)), Atom::Var(*w, -sg(b)))
            }
            _ => return None,
        };
        if flip {
            std::mem::swap(&mut big, &mut small);
        }
        edges.push((big, small, strict));
    }
    // Follow `big > small` links; pairs with both sides negated match too.
    let negate = |a: &Atom| match a {
        Atom::Var(v, s) => Atom::Var(*v, -s),
        Atom::Const(c) => Atom::Const(-c.clone()),
    };
    let mut used = vec![false; edges.len()];
    let mut order: Vec<Atom> = vec![edges[0].0.clone(), edges[0].1.clone()];
    used[0] = true;
    let mut rels = vec![edges[0].2];
    for _ in 1..edges.len() {
        let last = order.last().unwrap().clone();
        let mut found = false;
        for (k, (b, s, st)) in edges.iter().enumerate() {
            if used[k] {
                continue;
            }
            let next = if *b == last {
                Some(s.clone())
            } else if negate(s) == last {
                Some(negate(b))
            } else {
                None
            };
            if let Some(nx) = next {
                used[k] = true;
                order.push(nx);
                rels.push(*st);
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    let first = order.first().unwrap();
    let last = order.last().unwrap();
    let closes = first == last
        || matches!((first, last), (Atom::Const(a), Atom::Const(b)) if a <= b);
    if !closes {
        return None;
    }
    let text = |a: &Atom| match a {
        Atom::Var(v, 1) => sys.variables[*v].clone(),
        Atom::Var(v, _) => format!("-{}", sys.variables[*v]),
        Atom::Const(c) => c.to_string(),
    };
    // Ascending chain: reverse the `>` links, or negate every atom when that
    // leaves fewer minus signs.
    let negs = order.iter().filter(|a| matches!(a, Atom::Var(_, -1))).count();
    let (atoms, rels): (Vec<Atom>, Vec<bool>) = if 2 * negs > order.len() {
        (order.iter().map(negate).collect(), rels)
    } else {
        (
            order.iter().rev().cloned().collect(),
            rels.iter().rev().copied().collect(),
        )
    };
    let mut out = text(&atoms[0]);
    for (atom, strict) in atoms.iter().skip(1).zip(&rels) {
        out.push_str(if *strict { " < " } else { " ≤ " });
        out.push_str(&text(atom));
    }
    Some(out)
}

/// Whether `cert` really combines `sys` into a contradiction.
pub fn replay_certificate(sys: &LinearSystem, cert: &Certificate) -> bool {
    let n = sys.variables.len();
    let mut a = vec![Q::zero(); n];
    let mut c = Q::zero();
    let mut strict = false;
    for (i, m) in &cert.multipliers {
        let Some(con) = sys.constraints.get(*i) else {
            return false;
        };
        let (sign, st) = match con.rel {
            Relation::Gt => (1, true),
            Relation::Ge => (1, false),
            Relation::Lt => (-1, true),
            Relation::Le => (-1, false),
            Relation::Eq => (0, false),
        };
        if sign != 0 && m.is_negative() {
            return false;
        }
        if sign == 0 && m.is_zero() {
            continue;
        }
        let f = if sign == 0 { m.clone() } else { m * q(sign) };
        strict |= st;
        for (x, y) in a.iter_mut().zip(&con.coeffs) {
            *x += y * &f;
        }
        c += &con.constant * &f;
    }
    a.iter().all(Q::is_zero) && (c.is_negative() || (strict && c.is_zero()))
}

/// Variable name of a quotient coefficient, e.g. `g_1`, `g_xy`, `g_x^2`.
fn coef_name(e: &Exp, names: &[String]) -> String {
    let mut s = String::from("g_");
    let mut any = false;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        any = true;
        s.push_str(&names[i]);
        if k > 1 {
            s.push_str(&format!("^{k}"));
        }
    }
    if !any {
        s.push('1');
    }
    s
}

/// The linear system for a real `g` with `sgn((1 + Σ s_i x_i)·g) = f`, its
/// constant coefficient fixed to `sgn f(0)`. Coefficients of `l` may be
/// taken to be `±1` after rescaling the variables.
pub fn real_linear_quotient_system(f: &HPoly, l_signs: &[i8]) -> Result<(LinearSystem, Vec<Exp>)> {
    if f.field() != HyperfieldId::S {
        return Err(Error::UnsupportedField(format!(
            "real quotient needs a polynomial over S, got {}",
            f.field()
        )));
    }
    let n = f.nvars();
    if l_signs.len() != n || l_signs.iter().any(|s| *s != 1 && *s != -1) {
        return Err(Error::Shape(format!(
            "need {n} nonzero signs for the linear form"
        )));
    }
    let zero: Exp = vec![0; n];
    let c0 = f.sign_at(&zero);
    if c0 == 0 {
        return Err(Error::Domain(
            "constant coefficient is zero; cannot normalize the quotient".into(),
        ));
    }
    let mut l_pts = vec![vec![0i64; n]];
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        l_pts.push(e);
    }
    let f_pts: Vec<Vec<i64>> = f.support_i64();
    let g_supp: Vec<Exp> = crate::polytope::minkowski_difference_points(&f_pts, &l_pts)
        .into_iter()
        .map(|p| p.into_iter().map(|x| x as u32).collect())
        .collect();
    let names = default_var_names(n);
    let free: Vec<&Exp> = g_supp.iter().filter(|e| **e != zero).collect();
    let vars: Vec<String> = free.iter().map(|e| coef_name(e, &names)).collect();
    let mut sys = LinearSystem::new(&vars);
    let index = |e: &Exp| free.iter().position(|x| *x == e);
    if !g_supp.contains(&zero) {
        return Err(Error::Domain("quotient support misses the constant term".into()));
    }
    let mut prod_pts: Vec<Vec<i64>> = Vec::new();
    for g in &g_supp {
        for lp in &l_pts {
            prod_pts.push(g.iter().zip(lp).map(|(a, b)| *a as i64 + b).collect());
        }
    }
    let prod_hull = lattice_points(&prod_pts);
    if f.support_i64().iter().any(|p| !prod_hull.contains(p)) {
        // Some monomial of f can never be produced: record `0 > 0`.
        sys.push(vec![Q::zero(); vars.len()], Q::zero(), Relation::Gt);
        return Ok((sys, g_supp));
    }
    for m in prod_hull {
        let m: Exp = m.into_iter().map(|x| x as u32).collect();
        let mut coeffs = vec![Q::zero(); vars.len()];
        let mut constant = Q::zero();
        let mut touched = false;
        for (j, lp) in l_pts.iter().enumerate() {
            let k: Option<Exp> = m
                .iter()
                .zip(lp)
                .map(|(a, b)| u32::try_from(*a as i64 - b).ok())
                .collect();
            let Some(k) = k else { continue };
            if !g_supp.contains(&k) {
                continue;
            }
            touched = true;
            let s = if j == 0 { 1 } else { l_signs[j - 1] as i64 };
            if k == zero {
                constant += q(s * c0 as i64);
            } else {
                coeffs[index(&k).unwrap()] += q(s);
            }
        }
        if !touched {
            continue;
        }
        let rel = match f.sign_at(&m) {
            1 => Relation::Gt,
            -1 => Relation::Lt,
            _ => Relation::Eq,
        };
        sys.push(coeffs, constant, rel);
    }
    Ok((sys, g_supp))
}

/// Decide whether some real `g` has `sgn((1 + Σ s_i x_i)·g) = f`.
pub fn real_linear_quotient_feasible(f: &HPoly, l_signs: &[i8]) -> Result<FeasibilityOutcome> {
    let (sys, _) = real_linear_quotient_system(f, l_signs)?;
    Ok(fm_solve(&sys))
}

/// Multiply the rational factors exactly and compare coefficient signs with
/// `target`. Factor variables are matched to the target's variable names
/// (`x, y, z` or `x1, …`).
pub fn verify_certificate(factors: &[RatPoly], target: &HPoly) -> Result<bool> {
    if target.field() != HyperfieldId::S {
        return Err(Error::UnsupportedField(format!(
            "certificate target must be over S, got {}",
            target.field()
        )));
    }
    let names = default_var_names(target.nvars());
    let mut prod = RatPoly::one();
    for f in factors {
        prod = &prod * f;
    }
    let syms = prod.symbols().to_vec();
    let mut pos = Vec::new();
    for s in &syms {
        match names.iter().position(|n| n == s) {
            Some(p) => pos.push(p),
            None => {
                return Err(Error::Invalid(format!(
                    "factor uses `{s}`, not a variable of the target"
                )))
            }
        }
    }
    let mut seen: BTreeMap<Exp, i8> = BTreeMap::new();
    for (e, c) in prod.terms() {
        let mut ex = vec![0u32; target.nvars()];
        for (k, &p) in e.iter().zip(&pos) {
            ex[p] = *k;
        }
        seen.insert(ex, sign_of_q(c));
    }
    for (e, s) in &seen {
        if target.sign_at(e) != *s {
            return Ok(false);
        }
    }
    Ok(target.support().iter().all(|e| seen.contains_key(e)))
}
