//! Text, grid and JSON formats for [`HPoly`].
//!
//! Polynomial grammar (whitespace is ignored):
//!
//! ```text
//! poly     := term (("+" | "-") term)*        leading sign optional
//! term     := coef? monomial? | "inf"
//! coef     := number | "t^" exponent          number := digits ("/" digits)?
//! exponent := number | "(" "-"? number ")"
//! monomial := factor ("*"? factor)*
//! factor   := letter digits* ("^" digits)?
//! ```
//!
//! Over `K` and `S` a numeric coefficient contributes its sign. Over `T`
//! and `TR` a number is the exponent of `t`, so `0 + x + 2x^2` has constant
//! coefficient `t^0`; the sign of a term is its angular part over `TR`.
//!
//! Grids put the coefficient of `x^i y^j` in column `i` of row `j`. Rows
//! passed to [`parse_grid`] are indexed bottom-up by the power of `y`; grid
//! text lists the highest power of `y` first, as grids are usually drawn.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Exp, HPoly};
use crate::error::{Error, Result};
use crate::hyperfield::{fmt_exponent, parse_rational, Base, HyperValue, HyperfieldId, Q};

/// Variable names used when printing: `x, y, z`, or `x1, …, xn` beyond three.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

struct RawTerm {
    sign: i8,
    coef: Option<RawCoef>,
    factors: Vec<(String, u32)>,
}

enum RawCoef {
    Number(Q),
    TPow(Q),
    Inf,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.text))
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
        }
    }

    fn number(&mut self) -> Result<Option<Q>> {
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        if self.peek() == Some(b'/') && matches!(self.s.get(self.pos + 1), Some(b'0'..=b'9')) {
            self.pos += 1;
            let d = self.digits().unwrap();
            return parse_rational(&format!("{n}/{d}")).map(Some);
        }
        parse_rational(n).map(Some)
    }

    fn exponent(&mut self) -> Result<Q> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let v = self.number()?.ok_or_else(|| self.err("expected exponent"))?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            Ok(if neg { -v } else { v })
        } else {
            self.number()?.ok_or_else(|| self.err("expected exponent"))
        }
    }
}

fn lex_terms(text: &str) -> Result<Vec<RawTerm>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut c = Cursor {
        s: cleaned.as_bytes(),
        pos: 0,
        text,
    };
    let mut out = Vec::new();
    let mut first = true;
    while c.peek().is_some() {
        let sign = if c.eat(b'+') {
            1
        } else if c.eat(b'-') {
            -1
        } else if first {
            1
        } else {
            return Err(c.err("expected `+` or `-`"));
        };
        first = false;
        let mut coef = None;
        if c.s[c.pos..].starts_with(b"inf") {
            c.pos += 3;
            coef = Some(RawCoef::Inf);
        } else if c.s[c.pos..].starts_with(b"t^") {
            c.pos += 2;
            coef = Some(RawCoef::TPow(c.exponent()?));
        } else if let Some(n) = c.number()? {
            coef = Some(RawCoef::Number(n));
        }
        let mut factors = Vec::new();
        loop {
            let save = c.pos;
            let star = c.eat(b'*');
            match c.peek() {
                Some(ch) if ch.is_ascii_alphabetic() => {
                    c.pos += 1;
                    let mut name = String::from(ch as char);
                    while let Some(d @ b'0'..=b'9') = c.peek() {
                        name.push(d as char);
                        c.pos += 1;
                    }
                    let pow = if c.eat(b'^') {
                        let d = c.digits().ok_or_else(|| c.err("expected power"))?;
                        d.parse::<u32>().map_err(|_| c.err("power too large"))?
                    } else {
                        1
                    };
                    factors.push((name, pow));
                }
                _ => {
                    if star {
                        c.pos = save;
                        return Err(c.err("dangling `*`"));
                    }
                    break;
                }
            }
        }
        if coef.is_none() && factors.is_empty() {
            return Err(c.err("empty term"));
        }
        out.push(RawTerm { sign, coef, factors });
    }
    Ok(out)
}

fn var_index_auto(names: &[String]) -> Result<(usize, BTreeMap<String, usize>)> {
    let mut map = BTreeMap::new();
    if names.is_empty() {
        return Ok((1, map));
    }
    let xyz = ["x", "y", "z"];
    let uv = ["u", "v"];
    if names.iter().all(|n| xyz.contains(&n.as_str())) {
        for (i, n) in xyz.iter().enumerate() {
            map.insert(n.to_string(), i);
        }
        let nv = names
            .iter()
            .map(|n| xyz.iter().position(|x| x == n).unwrap() + 1)
            .max()
            .unwrap();
        return Ok((nv, map));
    }
    if names.iter().all(|n| uv.contains(&n.as_str())) {
        for (i, n) in uv.iter().enumerate() {
            map.insert(n.to_string(), i);
        }
        let nv = names
            .iter()
            .map(|n| uv.iter().position(|x| x == n).unwrap() + 1)
            .max()
            .unwrap();
        return Ok((nv, map));
    }
    let idx: Option<Vec<usize>> = names
        .iter()
        .map(|n| n.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()))
        .collect();
    if let Some(idx) = idx {
        let zero_based = idx.contains(&0);
        let nv = idx.iter().max().unwrap() + usize::from(zero_based);
        for (n, i) in names.iter().zip(&idx) {
            map.insert(n.clone(), if zero_based { *i } else { i - 1 });
        }
        return Ok((nv, map));
    }
    Err(Error::Parse(format!(
        "cannot infer variable order from {names:?}; name the variables explicitly"
    )))
}

fn coef_value(sign: i8, coef: &Option<RawCoef>, field: HyperfieldId) -> Result<HyperValue> {
    match coef {
        Some(RawCoef::Inf) => Ok(HyperValue::zero(field)),
        _ if !field.is_ext() => {
            let s = match coef {
                None => sign,
                Some(RawCoef::Number(n)) => {
                    if n.is_zero() {
                        0
                    } else if n.is_negative() {
                        -sign
                    } else {
                        sign
                    }
                }
                Some(RawCoef::TPow(_)) => {
                    return Err(Error::Parse(format!("`t^` coefficient over {field}")))
                }
                Some(RawCoef::Inf) => unreachable!(),
            };
            Ok(HyperValue::sign(field, s))
        }
        _ => {
            if sign < 0 && field.base() == Base::K {
                return Err(Error::Parse("negative sign over T".into()));
            }
            let exp = match coef {
                None => Q::zero(),
                Some(RawCoef::Number(n)) | Some(RawCoef::TPow(n)) => n.clone(),
                Some(RawCoef::Inf) => unreachable!(),
            };
            Ok(HyperValue::unit_unchecked(field, sign, exp))
        }
    }
}

fn build(
    terms: Vec<RawTerm>,
    field: HyperfieldId,
    nvars: usize,
    map: &BTreeMap<String, usize>,
) -> Result<HPoly> {
    let mut coeffs: BTreeMap<Exp, HyperValue> = BTreeMap::new();
    for t in terms {
        let mut e = vec![0u32; nvars];
        for (name, pow) in &t.factors {
            let i = *map
                .get(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
            if i >= nvars {
                return Err(Error::Parse(format!("variable `{name}` out of range")));
            }
            e[i] += pow;
        }
        let v = coef_value(t.sign, &t.coef, field)?;
        if v.is_zero() {
            continue;
        }
        if coeffs.insert(e.clone(), v).is_some() {
            return Err(Error::Parse(format!("repeated monomial {e:?}")));
        }
    }
    HPoly::from_terms(field, nvars, coeffs)
}

fn names_of(terms: &[RawTerm]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for t in terms {
        for (n, _) in &t.factors {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    names
}

/// Parse a polynomial, inferring variables from `x, y, z`, `u, v`, or
/// indexed names `x1, x2, …` (`x0, x1, …` when `x0` occurs).
pub fn parse_poly(text: &str, field: HyperfieldId) -> Result<HPoly> {
    let terms = lex_terms(text)?;
    let (nvars, map) = var_index_auto(&names_of(&terms))?;
    build(terms, field, nvars, &map)
}

/// Parse with at least `nvars` variables, using the same inference.
pub fn parse_poly_n(text: &str, field: HyperfieldId, nvars: usize) -> Result<HPoly> {
    let terms = lex_terms(text)?;
    let (nv, map) = var_index_auto(&names_of(&terms))?;
    if nv > nvars {
        return Err(Error::Parse(format!(
            "`{text}` uses {nv} variables, expected {nvars}"
        )));
    }
    build(terms, field, nvars, &map)
}

/// Parse with explicitly ordered variable names.
pub fn parse_poly_vars(text: &str, field: HyperfieldId, names: &[&str]) -> Result<HPoly> {
    let terms = lex_terms(text)?;
    let map: BTreeMap<String, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.to_string(), i))
        .collect();
    build(terms, field, names.len(), &map)
}

fn fmt_monomial(e: &[u32], names: &[String]) -> String {
    let compact = names.iter().all(|n| n.len() == 1);
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    parts.join(if compact { "" } else { "*" })
}

impl HPoly {
    /// Text form with the given variable names.
    pub fn to_text_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return if self.field().is_ext() { "inf".into() } else { "0".into() };
        }
        let mut keys: Vec<&Exp> = self.coeff_map().keys().collect();
        keys.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(*e)));
        let mut out = String::new();
        for (i, e) in keys.iter().enumerate() {
            let v = &self.coeff_map()[*e];
            let u = v.as_unit().unwrap();
            let mono = fmt_monomial(e, names);
            let negative = self.field().is_signed() && u.ang < 0;
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coef = if self.field().is_ext() {
                if u.exp.is_zero() && !mono.is_empty() {
                    String::new()
                } else if u.exp.is_negative() {
                    format!("t^{}", fmt_exponent(&u.exp))
                } else {
                    u.exp.to_string()
                }
            } else if mono.is_empty() {
                "1".into()
            } else {
                String::new()
            };
            out.push_str(&coef);
            out.push_str(&mono);
        }
        out
    }

    /// Rows of grid tokens, highest power of `y` first (`nvars ≤ 2`).
    pub fn to_grid_text(&self) -> Result<String> {
        if self.nvars() > 2 {
            return Err(Error::Dimension("grids need at most two variables".into()));
        }
        let pt = |e: &Exp| -> (u32, u32) {
            (e.first().copied().unwrap_or(0), e.get(1).copied().unwrap_or(0))
        };
        let maxy = self.coeff_map().keys().map(|e| pt(e).1).max().unwrap_or(0);
        let zero_tok = if self.field().is_ext() { "." } else { "0" };
        let mut lines = Vec::new();
        for j in (0..=maxy).rev() {
            let width = self
                .coeff_map()
                .keys()
                .filter(|e| pt(e).1 == j)
                .map(|e| pt(e).0 + 1)
                .max()
                .unwrap_or(0);
            let row: Vec<String> = (0..width)
                .map(|i| {
                    let e: Exp = if self.nvars() == 1 { vec![i] } else { vec![i, j] };
                    let v = self.coeff(&e);
                    if v.is_zero() {
                        zero_tok.to_string()
                    } else {
                        grid_token(&v)
                    }
                })
                .collect();
            lines.push(if row.is_empty() { ".".into() } else { row.join(" ") });
        }
        Ok(lines.join("\n"))
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            field: self.field().name().to_string(),
            nvars: self.nvars(),
            terms: self
                .coeff_map()
                .iter()
                .map(|(e, v)| TermJson {
                    exp: e.clone(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<HPoly> {
        let field: HyperfieldId = j.field.parse()?;
        let terms: Result<Vec<(Exp, HyperValue)>> = j
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), HyperValue::parse(&t.value, field)?)))
            .collect();
        HPoly::from_terms(field, j.nvars, terms?)
    }

    pub fn from_json_str(s: &str) -> Result<HPoly> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        HPoly::from_json(&j)
    }
}

fn grid_token(v: &HyperValue) -> String {
    let u = v.as_unit().unwrap();
    match v.field() {
        HyperfieldId::K => "1".into(),
        HyperfieldId::S => (if u.ang > 0 { "+" } else { "-" }).into(),
        HyperfieldId::Ext(b) => {
            let sign = match b {
                Base::K => "",
                Base::S => {
                    if u.ang > 0 {
                        "+"
                    } else {
                        "-"
                    }
                }
            };
            if u.exp.is_negative() {
                format!("{sign}t^{}", fmt_exponent(&u.exp))
            } else {
                format!("{sign}{}", u.exp)
            }
        }
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with(&default_var_names(self.nvars())))
    }
}

/// Parse one grid cell.
pub fn parse_grid_token(tok: &str, field: HyperfieldId) -> Result<HyperValue> {
    let t = tok.trim();
    if t == "." || t == "_" || t.is_empty() {
        return Ok(HyperValue::zero(field));
    }
    if !field.is_ext() {
        return match t {
            "0" => Ok(HyperValue::zero(field)),
            "+" | "1" | "+1" => Ok(HyperValue::one(field)),
            "-" | "-1" if field == HyperfieldId::S => Ok(HyperValue::sign(field, -1)),
            _ => Err(Error::Parse(format!("bad {field} grid token `{t}`"))),
        };
    }
    let terms = lex_terms(t)?;
    if terms.len() != 1 || !terms[0].factors.is_empty() {
        return Err(Error::Parse(format!("bad {field} grid token `{t}`")));
    }
    coef_value(terms[0].sign, &terms[0].coef, field)
}

/// Grid with `rows[j][i]` the coefficient of `x^i y^j`. Rows may have
/// different lengths; missing cells are zero.
pub fn parse_grid<S: AsRef<str>>(rows: &[Vec<S>], field: HyperfieldId) -> Result<HPoly> {
    if rows.is_empty() {
        return Err(Error::Parse("empty grid".into()));
    }
    let nvars = if rows.len() == 1 { 1 } else { 2 };
    let mut out = HPoly::zero(field, nvars);
    for (j, row) in rows.iter().enumerate() {
        for (i, tok) in row.iter().enumerate() {
            let v = parse_grid_token(tok.as_ref(), field)?;
            let e = if nvars == 1 { vec![i as u32] } else { vec![i as u32, j as u32] };
            out.set(e, v);
        }
    }
    if out.is_zero() {
        return Err(Error::Parse("grid has no nonzero entry".into()));
    }
    Ok(out)
}

/// Grid text, one row per line, highest power of `y` first. Lines starting
/// with `#` are ignored.
pub fn grid_from_text(text: &str, field: HyperfieldId) -> Result<HPoly> {
    let mut rows: Vec<Vec<String>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    rows.reverse();
    parse_grid(&rows, field)
}

/// JSON exchange format for [`HPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub field: String,
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub value: String,
}
