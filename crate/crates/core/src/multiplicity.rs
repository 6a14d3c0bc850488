//! Hyperfield multiplicity of linear factors over `K` and `S`, boundary
//! multiplicity, Descartes counts, and multiplicities of sign-set
//! polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperfield::{HyperValue, HyperfieldId};
use crate::polyring::{homogenize, is_homogeneous, product_membership, substitute_zero, Exp, HPoly};

/// A multiplicity: a natural number or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultValue {
    Finite(u32),
    Infinite,
}

impl MultValue {
    pub fn finite(self) -> Option<u32> {
        match self {
            MultValue::Finite(n) => Some(n),
            MultValue::Infinite => None,
        }
    }
}

impl fmt::Display for MultValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultValue::Finite(n) => write!(f, "{n}"),
            MultValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for MultValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MultValue::Finite(n) => s.serialize_u32(*n),
            MultValue::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for MultValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) if s == "inf" => Ok(MultValue::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .map(MultValue::Finite)
                .ok_or_else(|| serde::de::Error::custom("bad multiplicity")),
            _ => Err(serde::de::Error::custom("bad multiplicity")),
        }
    }
}

/// One step `f ∈ quotient · divisor` of a factorization chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStep {
    pub quotient: HPoly,
    pub divisor: HPoly,
}

/// Multiplicity with a chain of quotients realizing it. The chain starts at
/// the input: the first step divides the input, each later step divides the
/// previous quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityResult {
    pub value: MultValue,
    pub witness_chain: Vec<WitnessStep>,
}

impl MultiplicityResult {
    pub fn finite(n: u32) -> Self {
        MultiplicityResult {
            value: MultValue::Finite(n),
            witness_chain: vec![],
        }
    }

    /// Check every step of the chain against `f` with `product_membership`.
    pub fn replay(&self, f: &HPoly) -> Result<bool> {
        let mut cur = f.clone();
        for step in &self.witness_chain {
            if !product_membership(&cur, &step.quotient, &step.divisor)? {
                return Ok(false);
            }
            cur = step.quotient.clone();
        }
        Ok(true)
    }
}

/// Subset of `S` (or `K`) allowed for one coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSet(u8);

impl SignSet {
    pub const MINUS: SignSet = SignSet(1);
    pub const ZERO: SignSet = SignSet(2);
    pub const PLUS: SignSet = SignSet(4);
    pub const ANY: SignSet = SignSet(7);

    pub fn single(s: i8) -> SignSet {
        match s.signum() {
            -1 => SignSet::MINUS,
            0 => SignSet::ZERO,
            _ => SignSet::PLUS,
        }
    }

    pub fn contains(self, s: i8) -> bool {
        self.0 & SignSet::single(s).0 != 0
    }

    pub fn members(self) -> Vec<i8> {
        [-1i8, 0, 1].into_iter().filter(|&s| self.contains(s)).collect()
    }

    /// The determined sign, if there is exactly one choice.
    pub fn determined(self) -> Option<i8> {
        let m = self.members();
        (m.len() == 1).then(|| m[0])
    }

    pub fn union(self, other: SignSet) -> SignSet {
        SignSet(self.0 | other.0)
    }

    /// Grid token: `+`, `-`, `0`, `*`, or a brace list for other subsets.
    pub fn token(self) -> String {
        match self {
            SignSet::PLUS => "+".into(),
            SignSet::MINUS => "-".into(),
            SignSet::ZERO => "0".into(),
            SignSet::ANY => "*".into(),
            _ => {
                let m: Vec<&str> = self
                    .members()
                    .iter()
                    .map(|s| match s {
                        -1 => "-",
                        0 => "0",
                        _ => "+",
                    })
                    .collect();
                format!("{{{}}}", m.join(","))
            }
        }
    }

    pub fn parse(tok: &str) -> Result<SignSet> {
        match tok.trim() {
            "+" | "1" | "+1" => Ok(SignSet::PLUS),
            "-" | "-1" => Ok(SignSet::MINUS),
            "0" | "." | "_" => Ok(SignSet::ZERO),
            "*" => Ok(SignSet::ANY),
            t => {
                let inner = t
                    .strip_prefix('{')
                    .and_then(|x| x.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("bad sign-set token `{t}`")))?;
                let mut s = SignSet(0);
                for part in inner.split(',') {
                    s = s.union(SignSet::parse(part)?);
                }
                if s.0 == 0 {
                    return Err(Error::Parse("empty sign set".into()));
                }
                Ok(s)
            }
        }
    }
}

/// Polynomial whose coefficients are subsets of `S`; it stands for the set
/// of all sign polynomials choosing one element per coefficient. Absent
/// exponents are `{0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignSetPoly {
    pub nvars: usize,
    pub coeffs: BTreeMap<Exp, SignSet>,
}

impl SignSetPoly {
    pub fn new(nvars: usize) -> Self {
        SignSetPoly {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    /// Set a coefficient; `{0}` entries are not stored.
    pub fn set(&mut self, e: Exp, s: SignSet) {
        assert_eq!(e.len(), self.nvars);
        if s == SignSet::ZERO {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, s);
        }
    }

    pub fn get(&self, e: &[u32]) -> SignSet {
        self.coeffs.get(e).copied().unwrap_or(SignSet::ZERO)
    }

    pub fn from_poly(f: &HPoly) -> Self {
        let mut out = SignSetPoly::new(f.nvars());
        for (e, v) in f.terms() {
            out.set(e.clone(), SignSet::single(v.angular()));
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Exponents with more than one admissible sign.
    pub fn undetermined(&self) -> Vec<Exp> {
        self.coeffs
            .iter()
            .filter(|(_, s)| s.determined().is_none())
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Every member, in a fixed order. Fails beyond `cap` members.
    pub fn members(&self, cap: usize) -> Result<Vec<HPoly>> {
        let entries: Vec<(&Exp, Vec<i8>)> =
            self.coeffs.iter().map(|(e, s)| (e, s.members())).collect();
        let count = entries
            .iter()
            .try_fold(1usize, |acc, (_, m)| acc.checked_mul(m.len()));
        match count {
            Some(c) if c <= cap => {}
            _ => {
                return Err(Error::CapExceeded {
                    count: count.unwrap_or(usize::MAX),
                    cap,
                })
            }
        }
        let mut out = vec![HPoly::zero(HyperfieldId::S, self.nvars)];
        for (e, m) in entries {
            let mut next = Vec::with_capacity(out.len() * m.len());
            for p in &out {
                for &s in &m {
                    let mut q = p.clone();
                    q.set(e.clone(), HyperValue::sign(HyperfieldId::S, s));
                    next.push(q);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Rows of tokens, highest power of the second variable first.
    pub fn to_grid_text(&self) -> String {
        let pt = |e: &Exp| (e.first().copied().unwrap_or(0), e.get(1).copied().unwrap_or(0));
        let maxy = self.coeffs.keys().map(|e| pt(e).1).max().unwrap_or(0);
        let mut lines = Vec::new();
        for j in (0..=maxy).rev() {
            let width = self
                .coeffs
                .keys()
                .filter(|e| pt(e).1 == j)
                .map(|e| pt(e).0 + 1)
                .max()
                .unwrap_or(1);
            let row: Vec<String> = (0..width)
                .map(|i| {
                    let e: Exp = if self.nvars == 1 { vec![i] } else { vec![i, j] };
                    self.get(&e).token()
                })
                .collect();
            lines.push(row.join(" "));
        }
        lines.join("\n")
    }

    /// Parse grid text (highest power of the second variable first).
    pub fn from_grid_text(text: &str) -> Result<SignSetPoly> {
        let mut rows: Vec<Vec<&str>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().collect())
            .collect();
        rows.reverse();
        if rows.is_empty() {
            return Err(Error::Parse("empty grid".into()));
        }
        let nvars = if rows.len() == 1 { 1 } else { 2 };
        let mut out = SignSetPoly::new(nvars);
        for (j, row) in rows.iter().enumerate() {
            for (i, tok) in row.iter().enumerate() {
                let e = if nvars == 1 { vec![i as u32] } else { vec![i as u32, j as u32] };
                out.set(e, SignSet::parse(tok)?);
            }
        }
        Ok(out)
    }
}

/// Sets of polynomials accepted by [`mult`].
#[derive(Clone, Debug)]
pub enum PolySet {
    Explicit(Vec<HPoly>),
    SignSet(SignSetPoly),
}

impl PolySet {
    pub fn single(f: HPoly) -> Self {
        PolySet::Explicit(vec![f])
    }

    /// Largest number of members expanded from a sign set.
    pub const EXPAND_CAP: usize = 59_049;

    fn members(&self) -> Result<Vec<HPoly>> {
        match self {
            PolySet::Explicit(v) => Ok(v.clone()),
            PolySet::SignSet(s) => s.members(Self::EXPAND_CAP),
        }
    }
}

fn check_search_field(field: HyperfieldId) -> Result<()> {
    match field {
        HyperfieldId::K | HyperfieldId::S => Ok(()),
        _ => Err(Error::UnsupportedField(format!(
            "coefficient search needs K or S, got {field}; use gmult for tropical extensions"
        ))),
    }
}

fn check_pair(f: &HPoly, l: &HPoly) -> Result<()> {
    if f.field() != l.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", f.field(), l.field())));
    }
    if f.nvars() != l.nvars() {
        return Err(Error::Shape(format!(
            "{} vs {} variables",
            f.nvars(),
            l.nvars()
        )));
    }
    Ok(())
}

struct QuotientSearch<'a> {
    field: HyperfieldId,
    points: Vec<Exp>,
    /// For each constraint: target sign, contributing (point index, l sign).
    constraints: Vec<(i8, Vec<(usize, i8)>)>,
    /// Constraints to check once the given point index is assigned.
    check_at: Vec<Vec<usize>>,
    values: Vec<i8>,
    l: &'a HPoly,
}

fn admissible(field: HyperfieldId, target: i8, terms: impl Iterator<Item = i8>) -> bool {
    let mut pos = 0usize;
    let mut neg = 0usize;
    for t in terms {
        match t {
            1 => pos += 1,
            -1 => neg += 1,
            _ => {}
        }
    }
    match field {
        HyperfieldId::K => {
            if target == 0 {
                pos + neg != 1
            } else {
                pos + neg >= 1
            }
        }
        _ => match target {
            1 => pos > 0,
            -1 => neg > 0,
            _ => (pos == 0) == (neg == 0),
        },
    }
}

impl<'a> QuotientSearch<'a> {
    fn new(f: &HPoly, l: &'a HPoly) -> Option<Self> {
        let mut points = f.minkowski_quotient_support(l);
        if points.is_empty() {
            return None;
        }
        points.sort_by_key(|e| crate::polyring::grlex_key(e));
        let mut by_m: BTreeMap<Exp, Vec<(usize, i8)>> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            for (e, v) in l.terms() {
                let m: Exp = p.iter().zip(e).map(|(a, b)| a + b).collect();
                by_m.entry(m).or_default().push((i, v.angular()));
            }
        }
        if f.terms().any(|(e, _)| !by_m.contains_key(e)) {
            return None;
        }
        let mut constraints = Vec::new();
        let mut check_at = vec![Vec::new(); points.len()];
        for (m, terms) in by_m {
            let last = terms.iter().map(|t| t.0).max().unwrap();
            check_at[last].push(constraints.len());
            constraints.push((f.sign_at(&m), terms));
        }
        Some(QuotientSearch {
            field: f.field(),
            values: vec![0; points.len()],
            points,
            constraints,
            check_at,
            l,
        })
    }

    fn alphabet(&self) -> &'static [i8] {
        match self.field {
            HyperfieldId::K => &[1, 0],
            _ => &[1, -1, 0],
        }
    }

    fn ok_at(&self, i: usize) -> bool {
        self.check_at[i].iter().all(|&c| {
            let (target, terms) = &self.constraints[c];
            admissible(
                self.field,
                *target,
                terms.iter().map(|&(j, s)| self.values[j] * s),
            )
        })
    }

    fn current(&self) -> HPoly {
        HPoly::from_signs(
            self.field,
            self.l.nvars(),
            self.points.iter().cloned().zip(self.values.iter().copied()),
        )
    }

    /// Depth-first enumeration; `visit` returns `false` to stop.
    fn run(&mut self, i: usize, visit: &mut dyn FnMut(HPoly) -> bool) -> bool {
        if i == self.points.len() {
            return visit(self.current());
        }
        for &v in self.alphabet() {
            self.values[i] = v;
            if self.ok_at(i) && !self.run(i + 1, visit) {
                self.values[i] = 0;
                return false;
            }
        }
        self.values[i] = 0;
        true
    }
}

/// Every `g` with `f ∈ g·l`, with support in the lattice points of
/// `Newt(f) ⊖ Newt(l)`.
pub fn divides_once(f: &HPoly, l: &HPoly) -> Result<Vec<HPoly>> {
    check_pair(f, l)?;
    check_search_field(f.field())?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if l.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if let Some(mut s) = QuotientSearch::new(f, l) {
        s.run(0, &mut |g| {
            if !g.is_zero() {
                out.push(g);
            }
            true
        });
    }
    Ok(out)
}

fn coordinate_bounds(p: &HPoly) -> Vec<(u32, u32)> {
    let mut out = vec![(u32::MAX, 0); p.nvars() + 1];
    for e in p.coeff_map().keys() {
        let tot: u32 = e.iter().sum();
        for (i, &x) in e.iter().chain(std::iter::once(&tot)).enumerate() {
            out[i].0 = out[i].0.min(x);
            out[i].1 = out[i].1.max(x);
        }
    }
    out
}

/// Upper bound on how many factors from `ls` can split off `f`, from the
/// additivity of support maxima and widths under products.
fn degree_cap(f: &HPoly, ls: &[HPoly]) -> u32 {
    let fb = coordinate_bounds(f);
    let lbs: Vec<Vec<(u32, u32)>> = ls.iter().map(coordinate_bounds).collect();
    let mut cap = u32::MAX;
    for k in 0..fb.len() {
        let min_max = lbs.iter().map(|b| b[k].1).min().unwrap();
        if min_max > 0 {
            cap = cap.min(fb[k].1 / min_max);
        }
        let min_width = lbs.iter().map(|b| b[k].1 - b[k].0).min().unwrap();
        if min_width > 0 {
            cap = cap.min((fb[k].1 - fb[k].0) / min_width);
        }
    }
    cap
}

/// A unit `±x^a` with `f = u · canonical(f)`.
struct Normalization {
    sign: i8,
    shift: Exp,
}

impl Normalization {
    fn apply(&self, g: &HPoly) -> HPoly {
        let g = g.shift(&self.shift);
        if self.sign < 0 {
            g.scale(&HyperValue::sign(g.field(), -1)).unwrap()
        } else {
            g
        }
    }
}

/// Representative up to a global sign and, when no divisor has a monomial
/// factor, up to monomial shifts; both leave the multiplicity unchanged.
fn canonical(f: &HPoly, shift_invariant: bool) -> (HPoly, Normalization) {
    let (g, shift) = if shift_invariant {
        f.strip_monomial()
    } else {
        (f.clone(), vec![0; f.nvars()])
    };
    let first = g
        .terms()
        .min_by_key(|(e, _)| crate::polyring::grlex_key(e))
        .map(|(_, v)| v.angular())
        .unwrap_or(1);
    let g = if first < 0 {
        g.scale(&HyperValue::sign(g.field(), -1)).unwrap()
    } else {
        g
    };
    (g, Normalization { sign: first, shift })
}

struct MemoEntry {
    value: u32,
    /// Whether `value` is the multiplicity, rather than a lower bound that
    /// reached the cap of the search.
    exact: bool,
    chain: Vec<WitnessStep>,
}

struct MultSearch<'a> {
    ls: &'a [HPoly],
    shift_invariant: bool,
    memo: HashMap<HPoly, MemoEntry>,
}

impl MultSearch<'_> {
    /// Multiplicity of `f`, or any value `≥ cap` once `cap` is reached.
    fn solve(&mut self, f: &HPoly, cap: u32) -> (u32, Vec<WitnessStep>) {
        let (c, norm) = canonical(f, self.shift_invariant);
        let (v, chain) = self.solve_canonical(&c, cap);
        let chain = chain
            .into_iter()
            .map(|st| WitnessStep {
                quotient: norm.apply(&st.quotient),
                divisor: st.divisor,
            })
            .collect();
        (v, chain)
    }

    fn solve_canonical(&mut self, f: &HPoly, cap: u32) -> (u32, Vec<WitnessStep>) {
        if let Some(e) = self.memo.get(f) {
            if e.exact || e.value >= cap {
                return (e.value, e.chain.clone());
            }
        }
        let own_cap = degree_cap(f, self.ls);
        let cap = cap.min(own_cap);
        let mut best = 0u32;
        let mut best_chain: Vec<WitnessStep> = vec![];
        'outer: for l in self.ls {
            if best >= cap {
                break;
            }
            let Some(mut search) = QuotientSearch::new(f, l) else {
                continue;
            };
            let mut quotients = Vec::new();
            search.run(0, &mut |g| {
                if !g.is_zero() {
                    quotients.push(g);
                }
                true
            });
            for g in quotients {
                let (v, chain) = self.solve(&g, cap - 1);
                if v + 1 > best {
                    best = v + 1;
                    best_chain = std::iter::once(WitnessStep {
                        quotient: g,
                        divisor: l.clone(),
                    })
                    .chain(chain)
                    .collect();
                }
                if best >= cap {
                    break 'outer;
                }
            }
        }
        let exact = best < cap || cap == own_cap;
        self.memo.insert(
            f.clone(),
            MemoEntry {
                value: best,
                exact,
                chain: best_chain.clone(),
            },
        );
        (best, best_chain)
    }
}

/// `mult^H_L(F)` over `K` or `S` by exhaustive quotient search.
pub fn mult(fs: &PolySet, ls: &[HPoly]) -> Result<MultiplicityResult> {
    let members = fs.members()?;
    if members.is_empty() || ls.is_empty() {
        return Err(Error::Invalid("empty polynomial set".into()));
    }
    for f in &members {
        check_search_field(f.field())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        for l in ls {
            check_pair(f, l)?;
        }
    }
    if ls.iter().any(|l| l.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    if ls.iter().any(|l| l.is_unit()) {
        return Ok(MultiplicityResult {
            value: MultValue::Infinite,
            witness_chain: vec![],
        });
    }
    let mut search = MultSearch {
        ls,
        shift_invariant: ls.iter().all(|l| l.order().iter().all(|&k| k == 0)),
        memo: HashMap::new(),
    };
    let mut best: Option<MultiplicityResult> = None;
    for f in &members {
        let (v, chain) = search.solve(f, u32::MAX);
        if best.as_ref().map_or(true, |b| MultValue::Finite(v) > b.value) {
            best = Some(MultiplicityResult {
                value: MultValue::Finite(v),
                witness_chain: chain,
            });
        }
    }
    Ok(best.unwrap())
}

/// `mult^H_l(f)` for a single polynomial and factor.
pub fn mult_single(f: &HPoly, l: &HPoly) -> Result<MultiplicityResult> {
    mult(&PolySet::single(f.clone()), std::slice::from_ref(l))
}

/// Boundary multiplicity: the minimum over `i` of the multiplicity after
/// homogenizing and setting `x_i = 0`. Homogeneous pairs are taken as
/// they are. Indices where either restriction vanishes impose no condition.
pub fn bmult(f: &HPoly, l: &HPoly) -> Result<MultValue> {
    check_pair(f, l)?;
    check_search_field(f.field())?;
    if f.is_zero() || l.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if l.is_unit() {
        return Ok(MultValue::Infinite);
    }
    let (fh, lh) = if is_homogeneous(f) && is_homogeneous(l) {
        (f.clone(), l.clone())
    } else {
        (homogenize(f), homogenize(l))
    };
    let mut best = MultValue::Infinite;
    for i in 0..fh.nvars() {
        let fi = substitute_zero(&fh, i)?;
        let li = substitute_zero(&lh, i)?;
        if fi.is_zero() || li.is_zero() {
            continue;
        }
        let v = mult_single(&fi, &li)?.value;
        best = best.min(v);
    }
    Ok(best)
}

/// Number of sign changes in a sequence, ignoring zeros.
pub fn descartes_univariate(signs: &[i8]) -> Result<u32> {
    match signs.iter().rev().find(|&&s| s != 0) {
        None => return Err(Error::ZeroPolynomial),
        Some(_) if *signs.last().unwrap() == 0 => {
            return Err(Error::Invalid("leading sign is zero".into()))
        }
        _ => {}
    }
    Ok(sign_changes(signs.iter().copied()))
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> u32 {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// `mult^K` of a univariate polynomial at `1 + x`: the width of its support.
pub fn krasner_univariate(f: &HPoly) -> Result<u32> {
    if f.nvars() != 1 {
        return Err(Error::Dimension("univariate input expected".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lo = f.coeff_map().keys().next().unwrap()[0];
    let hi = f.coeff_map().keys().next_back().unwrap()[0];
    Ok(hi - lo)
}

/// How [`setmult_bound`] evaluates the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetMultMode {
    /// Maximal boundary multiplicity of the members.
    Boundary,
    /// Maximal multiplicity of the members by backtracking over the
    /// undetermined coefficients.
    Full { cap: usize },
}

impl SetMultMode {
    pub const DEFAULT_CAP: usize = 10;
}

/// Normalize a linear sign polynomial `c + Σ c_i x_i` to the signs `h_i`
/// of `1 + Σ h_i x_i`.
fn linear_signs(l: &HPoly, n: usize) -> Result<Vec<i8>> {
    if l.nvars() != n || l.field() != HyperfieldId::S {
        return Err(Error::Invalid("linear sign polynomial expected".into()));
    }
    if l.degree() != 1 {
        return Err(Error::Invalid("factor must have degree 1".into()));
    }
    let c0 = l.sign_at(&vec![0; n]);
    if c0 == 0 {
        return Err(Error::Invalid("factor must have a nonzero constant term".into()));
    }
    Ok((0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            l.sign_at(&e) * c0
        })
        .collect())
}

/// Outcome of maximizing sign changes along one boundary line.
struct LineBest {
    /// Best count over choices with some nonzero entry.
    nonzero: Option<u32>,
    /// Whether every entry can vanish at once.
    can_vanish: bool,
}

/// Maximal number of sign changes of `c_k (-s)^k` when each `c_k` ranges
/// over `sets[k]`; this is the multiplicity at `1 + s x` of the univariate
/// sign polynomial with those coefficients.
fn line_best(sets: &[SignSet], s: i8) -> LineBest {
    // State: last nonzero adjusted sign (0 when none yet).
    let mut states: BTreeMap<i8, u32> = BTreeMap::from([(0, 0)]);
    for (k, set) in sets.iter().enumerate() {
        let mut next: BTreeMap<i8, u32> = BTreeMap::new();
        for (&prev, &v) in &states {
            for c in set.members() {
                let a = if k % 2 == 1 { -c * s } else { c };
                let (np, nv) = match (prev, a) {
                    (p, 0) => (p, v),
                    (0, a) => (a, v),
                    (p, a) if p != a => (a, v + 1),
                    (_, a) => (a, v),
                };
                let e = next.entry(np).or_insert(0);
                *e = (*e).max(nv);
            }
        }
        states = next;
    }
    LineBest {
        nonzero: states.iter().filter(|(p, _)| **p != 0).map(|(_, v)| *v).max(),
        can_vanish: states.contains_key(&0),
    }
}

fn boundary_setmult_2(r: &SignSetPoly, h: &[i8]) -> Result<u32> {
    let d = r.degree();
    let mut best: Option<u32> = None;
    for dp in 0..=d {
        // Members of degree `dp`: everything above must be allowed to vanish.
        if r
            .coeffs
            .iter()
            .any(|(e, s)| e.iter().sum::<u32>() > dp && !s.contains(0))
        {
            continue;
        }
        let corner = |e: [u32; 2]| r.get(&e).members();
        for c00 in corner([0, 0]) {
            for cd0 in corner([dp, 0]) {
                for c0d in corner([0, dp]) {
                    if dp == 0 && (cd0 != c00 || c0d != c00) {
                        continue;
                    }
                    let line = |first: i8, pt: &dyn Fn(u32) -> [u32; 2], last: i8| {
                        let mut sets = vec![SignSet::single(first)];
                        sets.extend((1..dp).map(|k| r.get(&pt(k))));
                        if dp > 0 {
                            sets.push(SignSet::single(last));
                        }
                        sets
                    };
                    // Top-degree part at `h1 u + h2 v`, read from v^dp to u^dp.
                    let diag = line_best(&line(c0d, &|k| [k, dp - k], cd0), h[0] * h[1]);
                    let Some(diag) = diag.nonzero else {
                        continue;
                    };
                    let mut value = diag;
                    // Bottom edge at `1 + h1 u`, left edge at `1 + h2 v`; a
                    // vanishing edge imposes no condition.
                    for (sets, s) in [
                        (line(c00, &|k| [k, 0], cd0), h[0]),
                        (line(c00, &|k| [0, k], c0d), h[1]),
                    ] {
                        let lb = line_best(&sets, s);
                        if !lb.can_vanish {
                            value = value.min(lb.nonzero.unwrap());
                        }
                    }
                    best = Some(best.map_or(value, |b| b.max(value)));
                }
            }
        }
    }
    best.ok_or(Error::ZeroPolynomial)
}

/// Maximal boundary multiplicity (or multiplicity, in full mode) over the
/// members of a sign set, at a linear factor `l` with nonzero constant term.
/// In one variable the boundary mode returns the Descartes count, which is
/// the multiplicity itself.
pub fn setmult_bound(r: &SignSetPoly, l: &HPoly, mode: SetMultMode) -> Result<u32> {
    let h = linear_signs(l, r.nvars)?;
    match mode {
        SetMultMode::Full { cap } => {
            let und = r.undetermined().len();
            if und > cap {
                return Err(Error::CapExceeded { count: und, cap });
            }
            let members: Vec<HPoly> = r
                .members(usize::MAX)?
                .into_iter()
                .filter(|m| !m.is_zero())
                .collect();
            if members.is_empty() {
                return Err(Error::ZeroPolynomial);
            }
            let res = mult(&PolySet::Explicit(members), std::slice::from_ref(l))?;
            Ok(res.value.finite().unwrap_or(u32::MAX))
        }
        SetMultMode::Boundary => match r.nvars {
            1 => {
                let sets: Vec<SignSet> = (0..=r.degree()).map(|k| r.get(&[k])).collect();
                line_best(&sets, h[0]).nonzero.ok_or(Error::ZeroPolynomial)
            }
            2 => boundary_setmult_2(r, &h),
            n => Err(Error::Dimension(format!(
                "boundary set multiplicity in {n} variables"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{grid_from_text, parse_poly};

    fn sp(t: &str) -> HPoly {
        parse_poly(t, HyperfieldId::S).unwrap()
    }

    #[test]
    fn intro_descartes() {
        let f = sp("x^4 - x^3 + x^2 - x + 1");
        let r = mult_single(&f, &sp("x - 1")).unwrap();
        assert_eq!(r.value, MultValue::Finite(4));
        assert_eq!(r.witness_chain.len(), 4);
        assert!(r.replay(&f).unwrap());
        assert_eq!(descartes_univariate(&[1, -1, 1, -1, 1]).unwrap(), 4);
        assert_eq!(descartes_univariate(&[1, 1, 1]).unwrap(), 0);
        assert_eq!(descartes_univariate(&[1, 0, -1]).unwrap(), 1);
    }

    #[test]
    fn divides_once_examples() {
        assert!(divides_once(&sp("1 + x"), &sp("1 - x")).unwrap().is_empty());
        let l = sp("1 + x + y");
        assert!(divides_once(&l, &l)
            .unwrap()
            .contains(&crate::polyring::parse_poly_n("1", HyperfieldId::S, 2).unwrap()));
    }

    #[test]
    fn boundary_example() {
        let f = grid_from_text("+\n- +\n+ + -\n+ + - +", HyperfieldId::S).unwrap();
        let l = sp("1 + x + y");
        assert_eq!(mult_single(&f, &l).unwrap().value, MultValue::Finite(0));
        assert_eq!(bmult(&f, &l).unwrap(), MultValue::Finite(1));
    }

    #[test]
    fn units_and_errors() {
        let f = sp("1 + x");
        let r = mult_single(&f, &sp("-1")).unwrap();
        assert_eq!(r.value, MultValue::Infinite);
        let t = parse_poly("0 + x", HyperfieldId::T).unwrap();
        assert!(matches!(mult_single(&t, &t), Err(Error::UnsupportedField(_))));
        assert!(matches!(
            mult_single(&HPoly::zero(HyperfieldId::S, 1), &f),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn setmult_univariate_row() {
        let r = SignSetPoly::from_grid_text("+ - + * + - *").unwrap();
        let l = sp("1 + x");
        assert_eq!(setmult_bound(&r, &l, SetMultMode::Boundary).unwrap(), 3);
        assert_eq!(setmult_bound(&r, &l, SetMultMode::Full { cap: 10 }).unwrap(), 3);
    }
}
