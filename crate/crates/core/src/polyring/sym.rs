//! Exact multivariate polynomials in named symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient rings for [`SymPoly`].
pub trait Coeff: Num + Signed + Clone + fmt::Debug + fmt::Display + Eq + Hash {
    /// `self / d` when the quotient exists in the ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl Coeff for BigRational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
}

/// Polynomial with coefficients in `C` over a sorted list of symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymPoly<C: Coeff> {
    symbols: Vec<String>,
    terms: BTreeMap<Vec<u32>, C>,
}

pub type IntPoly = SymPoly<BigInt>;
pub type RatPoly = SymPoly<BigRational>;

fn merge_symbols(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl<C: Coeff> SymPoly<C> {
    pub fn zero() -> Self {
        SymPoly {
            symbols: vec![],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = SymPoly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![], c);
        }
        p
    }

    pub fn one() -> Self {
        SymPoly::constant(C::one())
    }

    pub fn var(name: &str) -> Self {
        SymPoly::monomial(C::one(), &[(name, 1)])
    }

    /// `c · Π name^k`.
    pub fn monomial(c: C, powers: &[(&str, u32)]) -> Self {
        let mut symbols: Vec<String> = powers.iter().map(|(n, _)| n.to_string()).collect();
        symbols.sort();
        symbols.dedup();
        let mut e = vec![0u32; symbols.len()];
        for (n, k) in powers {
            let i = symbols.iter().position(|s| s == n).unwrap();
            e[i] += k;
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        SymPoly { symbols, terms }.trimmed()
    }

    /// Build from terms over `symbols` (any order; repeated exponents add up).
    pub fn from_terms<I>(symbols: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut sorted: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), symbols.len(), "repeated symbol");
        let perm: Vec<usize> = symbols
            .iter()
            .map(|s| sorted.iter().position(|t| t == s).unwrap())
            .collect();
        let mut map: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), symbols.len());
            let mut ne = vec![0u32; sorted.len()];
            for (k, &p) in e.iter().zip(&perm) {
                ne[p] = *k;
            }
            add_term(&mut map, ne, c);
        }
        SymPoly {
            symbols: sorted,
            terms: map,
        }
        .trimmed()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&vec![0; self.symbols.len()]).cloned(),
            _ => None,
        }
    }

    /// Drop symbols that do not occur.
    fn trimmed(mut self) -> Self {
        let used: Vec<bool> = (0..self.symbols.len())
            .map(|i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let symbols = self
            .symbols
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(s, _)| s.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| {
                let ne = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, u)| **u)
                    .map(|(k, _)| *k)
                    .collect();
                (ne, c)
            })
            .collect();
        SymPoly { symbols, terms }
    }

    /// Re-express over a superset of the current symbols.
    fn lifted(&self, symbols: &[String]) -> BTreeMap<Vec<u32>, C> {
        if self.symbols == symbols {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .symbols
            .iter()
            .map(|s| symbols.iter().position(|t| t == s).unwrap())
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; symbols.len()];
                for (k, &p) in e.iter().zip(&pos) {
                    ne[p] = *k;
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn binary_symbols(&self, other: &Self) -> Vec<String> {
        if self.symbols == other.symbols {
            self.symbols.clone()
        } else {
            merge_symbols(&self.symbols, &other.symbols)
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = SymPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn degree_in(&self, sym: &str) -> u32 {
        match self.symbols.iter().position(|s| s == sym) {
            None => 0,
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Total degree in the given symbols.
    pub fn degree_in_set(&self, syms: &[&str]) -> u32 {
        let idx: Vec<usize> = syms
            .iter()
            .filter_map(|s| self.symbols.iter().position(|t| t == s))
            .collect();
        self.terms
            .keys()
            .map(|e| idx.iter().map(|&i| e[i]).sum())
            .max()
            .unwrap_or(0)
    }

    /// Collect by monomials in `vars`: the result maps each exponent over
    /// `vars` to its coefficient, a polynomial in the remaining symbols.
    pub fn coefficients_in(&self, vars: &[&str]) -> BTreeMap<Vec<u32>, SymPoly<C>> {
        let idx: Vec<Option<usize>> = vars
            .iter()
            .map(|v| self.symbols.iter().position(|s| s == v))
            .collect();
        let rest: Vec<usize> = (0..self.symbols.len())
            .filter(|i| !idx.contains(&Some(*i)))
            .collect();
        let rest_syms: Vec<String> = rest.iter().map(|&i| self.symbols[i].clone()).collect();
        let mut out: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u32> = idx.iter().map(|i| i.map_or(0, |i| e[i])).collect();
            let re: Vec<u32> = rest.iter().map(|&i| e[i]).collect();
            out.entry(key).or_default().insert(re, c.clone());
        }
        out.into_iter()
            .map(|(k, t)| {
                (
                    k,
                    SymPoly {
                        symbols: rest_syms.clone(),
                        terms: t,
                    }
                    .trimmed(),
                )
            })
            .collect()
    }

    /// Substitute a polynomial for a symbol.
    pub fn substitute(&self, sym: &str, value: &SymPoly<C>) -> SymPoly<C> {
        let Some(i) = self.symbols.iter().position(|s| s == sym) else {
            return self.clone();
        };
        let mut powers: Vec<SymPoly<C>> = vec![SymPoly::one()];
        let mut out = SymPoly::zero();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let mono = SymPoly {
                symbols: self.symbols.clone(),
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            out = &out + &(&mono * &powers[k]);
        }
        out.trimmed()
    }

    /// Substitute constants for some symbols.
    pub fn eval_partial(&self, values: &BTreeMap<String, C>) -> SymPoly<C> {
        let keep: Vec<usize> = (0..self.symbols.len())
            .filter(|&i| !values.contains_key(&self.symbols[i]))
            .collect();
        let symbols: Vec<String> = keep.iter().map(|&i| self.symbols[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut c = c.clone();
            for (i, s) in self.symbols.iter().enumerate() {
                if let Some(v) = values.get(s) {
                    c = c * pow_coeff(v, e[i]);
                }
            }
            let ne = keep.iter().map(|&i| e[i]).collect();
            add_term(&mut terms, ne, c);
        }
        SymPoly { symbols, terms }.trimmed()
    }

    /// Value at a full assignment.
    pub fn eval(&self, values: &BTreeMap<String, C>) -> Result<C> {
        if let Some(s) = self.symbols.iter().find(|s| !values.contains_key(*s)) {
            return Err(Error::UnassignedSymbol(s.clone()));
        }
        Ok(self.eval_partial(values).as_constant().unwrap())
    }

    /// Leading term in lex order with the symbols in sorted order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &C)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`.
    pub fn exact_divide(&self, d: &SymPoly<C>) -> Result<SymPoly<C>> {
        if d.is_zero() {
            return Err(Error::Arithmetic("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(SymPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            let mut terms = BTreeMap::new();
            for (e, x) in &self.terms {
                terms.insert(e.clone(), x.div_exact(&c).ok_or(Error::NonExactDivision)?);
            }
            return Ok(SymPoly {
                symbols: self.symbols.clone(),
                terms,
            });
        }
        let symbols = self.binary_symbols(d);
        let mut r = self.lifted(&symbols);
        let dt = d.lifted(&symbols);
        let (de, dc) = dt.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quo: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        while let Some((re, rc)) = r.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return Err(Error::NonExactDivision);
            }
            let qc = rc.div_exact(&dc).ok_or(Error::NonExactDivision)?;
            let qe: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            for (e, c) in &dt {
                let ne: Vec<u32> = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                add_term(&mut r, ne, -(c.clone() * qc.clone()));
            }
            quo.insert(qe, qc);
        }
        Ok(SymPoly {
            symbols,
            terms: quo,
        }
        .trimmed())
    }

    /// Largest monomial dividing every term, as an exponent map.
    pub fn monomial_content(&self) -> BTreeMap<String, u32> {
        let mut out = BTreeMap::new();
        for (i, s) in self.symbols.iter().enumerate() {
            let m = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
            if m > 0 {
                out.insert(s.clone(), m);
            }
        }
        out
    }

    /// Divide by the monomial `Π s^k`, which must divide every term.
    pub fn divide_monomial(&self, mono: &BTreeMap<String, u32>) -> Result<SymPoly<C>> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for (s, k) in mono {
                let i = self
                    .symbols
                    .iter()
                    .position(|t| t == s)
                    .ok_or(Error::NonExactDivision)?;
                ne[i] = ne[i].checked_sub(*k).ok_or(Error::NonExactDivision)?;
            }
            terms.insert(ne, c.clone());
        }
        Ok(SymPoly {
            symbols: self.symbols.clone(),
            terms,
        }
        .trimmed())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SymPoly<D> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(e.clone(), d);
            }
        }
        SymPoly {
            symbols: self.symbols.clone(),
            terms,
        }
        .trimmed()
    }

    /// Render with `*` between factors and `^` for powers.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.symbols)
                .filter(|(k, _)| **k > 0)
                .map(|(k, s)| if *k == 1 { s.clone() } else { format!("{s}^{k}") })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

fn pow_coeff<C: Coeff>(v: &C, k: u32) -> C {
    let mut out = C::one();
    for _ in 0..k {
        out = out * v.clone();
    }
    out
}

fn add_term<C: Coeff>(map: &mut BTreeMap<Vec<u32>, C>, e: Vec<u32>, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<C: Coeff> fmt::Display for SymPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<C: Coeff> Add for &SymPoly<C> {
    type Output = SymPoly<C>;
    fn add(self, other: &SymPoly<C>) -> SymPoly<C> {
        let symbols = self.binary_symbols(other);
        let mut terms = self.lifted(&symbols);
        let rhs = if other.symbols == symbols {
            std::borrow::Cow::Borrowed(&other.terms)
        } else {
            std::borrow::Cow::Owned(other.lifted(&symbols))
        };
        for (e, c) in rhs.iter() {
            add_term(&mut terms, e.clone(), c.clone());
        }
        SymPoly { symbols, terms }.trimmed()
    }
}

impl<C: Coeff> Sub for &SymPoly<C> {
    type Output = SymPoly<C>;
    fn sub(self, other: &SymPoly<C>) -> SymPoly<C> {
        self + &(-other)
    }
}

impl<C: Coeff> Neg for &SymPoly<C> {
    type Output = SymPoly<C>;
    fn neg(self) -> SymPoly<C> {
        SymPoly {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Mul for &SymPoly<C> {
    type Output = SymPoly<C>;
    fn mul(self, other: &SymPoly<C>) -> SymPoly<C> {
        if self.is_zero() || other.is_zero() {
            return SymPoly::zero();
        }
        let symbols = self.binary_symbols(other);
        let a = self.lifted(&symbols);
        let b = other.lifted(&symbols);
        let mut terms: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (e1, c1) in &a {
            for (e2, c2) in &b {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                add_term(&mut terms, e, c1.clone() * c2.clone());
            }
        }
        SymPoly { symbols, terms }.trimmed()
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for SymPoly<C> {
            type Output = SymPoly<C>;
            fn $m(self, other: SymPoly<C>) -> SymPoly<C> {
                (&self).$m(&other)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Coeff> Neg for SymPoly<C> {
    type Output = SymPoly<C>;
    fn neg(self) -> SymPoly<C> {
        -&self
    }
}

impl IntPoly {
    /// `(content, primitive)` with `content` a positive integer times the
    /// largest common monomial, so `self = content · primitive` and the
    /// primitive part has coprime coefficients.
    pub fn content_strip(&self) -> (IntPoly, IntPoly) {
        if self.is_zero() {
            return (IntPoly::one(), IntPoly::zero());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        let mono = self.monomial_content();
        let prim = self
            .divide_monomial(&mono)
            .unwrap()
            .exact_divide(&IntPoly::constant(g.clone()))
            .unwrap();
        let powers: Vec<(&str, u32)> = mono.iter().map(|(s, k)| (s.as_str(), *k)).collect();
        let content = IntPoly::monomial(g, &powers);
        (content, prim)
    }

    pub fn to_rat(&self) -> RatPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

impl RatPoly {
    /// `(d, p)` with `self = p / d`, `d > 0` the least common denominator.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let mut d = BigInt::one();
        for c in self.terms.values() {
            d = d.lcm(c.denom());
        }
        let dq = BigRational::from_integer(d.clone());
        let p = self.map_coeffs(|c| (c * &dq).to_integer());
        (d, p)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.s.get(self.pos), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.text))
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while matches!(self.s.get(self.pos), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            let k: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected power"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.s.get(self.pos), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
                let num: BigInt = std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                let mut v = BigRational::from_integer(num);
                if self.s.get(self.pos) == Some(&b'/')
                    && matches!(self.s.get(self.pos + 1), Some(b'0'..=b'9'))
                {
                    self.pos += 1;
                    let start = self.pos;
                    while matches!(self.s.get(self.pos), Some(b'0'..=b'9')) {
                        self.pos += 1;
                    }
                    let d: BigInt = std::str::from_utf8(&self.s[start..self.pos])
                        .unwrap()
                        .parse()
                        .unwrap();
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    v /= BigRational::from_integer(d);
                } else if self.s.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    let start = self.pos;
                    while matches!(self.s.get(self.pos), Some(b'0'..=b'9')) {
                        self.pos += 1;
                    }
                    let frac = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                    if !frac.is_empty() {
                        let n: BigInt = frac.parse().unwrap();
                        let d = num_traits::pow(BigInt::from(10), frac.len());
                        v += BigRational::new(n, d);
                    }
                }
                Ok(RatPoly::constant(v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut name = String::from(c as char);
                self.pos += 1;
                while let Some(d @ b'0'..=b'9') = self.s.get(self.pos).copied() {
                    name.push(d as char);
                    self.pos += 1;
                }
                Ok(RatPoly::var(&name))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parse a rational polynomial. Symbols are a letter followed by optional
/// digits; juxtaposition multiplies, so `3ab^2` is `3·a·b²`. Decimals such as
/// `.5` must be written `0.5`.
pub fn parse_ratpoly(text: &str) -> Result<RatPoly> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        text,
    };
    if p.peek().is_none() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parse a polynomial with integer coefficients.
pub fn parse_intpoly(text: &str) -> Result<IntPoly> {
    let r = parse_ratpoly(text)?;
    if r.terms().values().any(|c| !c.is_integer()) {
        return Err(Error::Parse(format!("`{text}` has non-integer coefficients")));
    }
    Ok(r.map_coeffs(|c| c.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPoly {
        parse_intpoly(s).unwrap()
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&ip("u+v") * &ip("u-v"), ip("u^2-v^2"));
        assert_eq!(ip("u^2-v^2").exact_divide(&ip("u+v")).unwrap(), ip("u-v"));
        assert_eq!(
            ip("u^2+v").exact_divide(&ip("u+v")),
            Err(Error::NonExactDivision)
        );
        assert_eq!(ip("(a+b)^3").len(), 4);
        assert!((&ip("a*b") - &ip("b*a")).is_zero());
    }

    #[test]
    fn content() {
        let (c, p) = ip("6u^2v + 9uv^2").content_strip();
        assert_eq!(c, ip("3uv"));
        assert_eq!(p, ip("2u+3v"));
        let (c, p) = ip("-4x^2").content_strip();
        assert_eq!(c, ip("4x^2"));
        assert_eq!(p, ip("-1"));
    }

    #[test]
    fn substitution_and_collection() {
        let f = ip("1 + a*x - b*y");
        let g = f.substitute("x", &ip("2"));
        assert_eq!(g, ip("1 + 2a - b*y"));
        let coeffs = ip("3u^2*a - u*b + a").coefficients_in(&["u", "v"]);
        assert_eq!(coeffs[&vec![2, 0]], ip("3a"));
        assert_eq!(coeffs[&vec![0, 0]], ip("a"));
        let r = parse_ratpoly("(1 + 0.5x - 3/10y)").unwrap();
        let (d, p) = r.clear_denominators();
        assert_eq!(d, BigInt::from(10));
        assert_eq!(p, ip("10 + 5x - 3y"));
        assert_eq!(p.to_string(), "5*x - 3*y + 10");
        assert_eq!(ip(&p.to_string()), p);
    }
}
