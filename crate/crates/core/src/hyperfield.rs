//! The Krasner hyperfield `K`, the sign hyperfield `S`, their tropical
//! extensions `T = K ⋊ Q` and `TR = S ⋊ Q`, and the maps between them.
//!
//! Tropical extensions use the min convention: the hypersum of several
//! elements only sees the terms of smallest exponent.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rationals, used for exponents and heights throughout.
pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// `2`, `(3/2)`, `(-1)`: the exponent part of `t^...`.
pub(crate) fn fmt_exponent(e: &Q) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

/// Base hyperfield of a tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    K,
    S,
}

impl Base {
    /// The nonzero elements.
    pub fn units(self) -> &'static [i8] {
        match self {
            Base::K => &[1],
            Base::S => &[-1, 1],
        }
    }

    /// Hypersum of a multiset of base elements (zeros allowed), returned as a
    /// set of base elements where `0` stands for the zero element.
    pub fn sum<I: IntoIterator<Item = i8>>(self, items: I) -> BTreeSet<i8> {
        let mut pos = 0usize;
        let mut neg = 0usize;
        for a in items {
            match a.signum() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => {}
            }
        }
        let mut out = BTreeSet::new();
        match self {
            Base::K => match pos + neg {
                0 => {
                    out.insert(0);
                }
                1 => {
                    out.insert(1);
                }
                _ => {
                    out.insert(0);
                    out.insert(1);
                }
            },
            Base::S => match (pos > 0, neg > 0) {
                (false, false) => {
                    out.insert(0);
                }
                (true, false) => {
                    out.insert(1);
                }
                (false, true) => {
                    out.insert(-1);
                }
                (true, true) => {
                    out.extend([-1, 0, 1]);
                }
            },
        }
        out
    }
}

/// Identifies one of the supported hyperfields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HyperfieldId {
    K,
    S,
    /// Tropical extension `base ⋊ Q`.
    Ext(Base),
}

impl HyperfieldId {
    pub const T: HyperfieldId = HyperfieldId::Ext(Base::K);
    pub const TR: HyperfieldId = HyperfieldId::Ext(Base::S);

    pub fn base(self) -> Base {
        match self {
            HyperfieldId::K => Base::K,
            HyperfieldId::S => Base::S,
            HyperfieldId::Ext(b) => b,
        }
    }

    pub fn is_ext(self) -> bool {
        matches!(self, HyperfieldId::Ext(_))
    }

    pub fn is_signed(self) -> bool {
        self.base() == Base::S
    }

    /// The non-extended hyperfield with the same base.
    pub fn base_field(self) -> HyperfieldId {
        match self.base() {
            Base::K => HyperfieldId::K,
            Base::S => HyperfieldId::S,
        }
    }

    pub fn ext(self) -> HyperfieldId {
        HyperfieldId::Ext(self.base())
    }

    pub fn name(self) -> &'static str {
        match self {
            HyperfieldId::K => "K",
            HyperfieldId::S => "S",
            HyperfieldId::Ext(Base::K) => "T",
            HyperfieldId::Ext(Base::S) => "TR",
        }
    }

    /// Every element, for the finite hyperfields.
    pub fn elements(self) -> Result<Vec<HyperValue>> {
        if self.is_ext() {
            return Err(Error::UnsupportedField(format!(
                "{} is infinite",
                self.name()
            )));
        }
        let mut out = vec![HyperValue::zero(self)];
        for &a in self.base().units() {
            out.push(HyperValue::sign(self, a));
        }
        Ok(out)
    }
}

impl fmt::Display for HyperfieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HyperfieldId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "K" | "k" => Ok(HyperfieldId::K),
            "S" | "s" => Ok(HyperfieldId::S),
            "T" | "t" => Ok(HyperfieldId::T),
            "TR" | "tr" | "Tr" => Ok(HyperfieldId::TR),
            other => Err(Error::Parse(format!("unknown field `{other}`"))),
        }
    }
}

/// Nonzero element: angular part and exponent (always 0 outside `Ext`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit {
    pub ang: i8,
    pub exp: Q,
}

/// An element of a hyperfield.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperValue {
    field: HyperfieldId,
    unit: Option<Unit>,
}

impl HyperValue {
    pub fn zero(field: HyperfieldId) -> Self {
        HyperValue { field, unit: None }
    }

    pub fn one(field: HyperfieldId) -> Self {
        HyperValue::sign(field, 1)
    }

    /// The base element `s` (embedded at exponent 0). `s = 0` gives zero;
    /// over a `K` base any nonzero `s` gives the unit.
    pub fn sign(field: HyperfieldId, s: i8) -> Self {
        if s == 0 {
            return HyperValue::zero(field);
        }
        let ang = if field.base() == Base::K { 1 } else { s.signum() };
        HyperValue {
            field,
            unit: Some(Unit { ang, exp: Q::zero() }),
        }
    }

    /// `ang · t^exp`. Fails on a zero angular part or on a nonzero exponent
    /// outside a tropical extension.
    pub fn unit(field: HyperfieldId, ang: i8, exp: Q) -> Result<Self> {
        if ang == 0 {
            return Err(Error::Invalid("angular part of a unit is zero".into()));
        }
        if !field.is_ext() && !exp.is_zero() {
            return Err(Error::FieldMismatch(format!(
                "{} has no exponents",
                field.name()
            )));
        }
        if field.base() == Base::K && ang != 1 {
            return Err(Error::Invalid("K has no negative units".into()));
        }
        Ok(HyperValue {
            field,
            unit: Some(Unit { ang: ang.signum(), exp }),
        })
    }

    pub(crate) fn unit_unchecked(field: HyperfieldId, ang: i8, exp: Q) -> Self {
        let ang = if field.base() == Base::K { 1 } else { ang };
        HyperValue {
            field,
            unit: Some(Unit { ang, exp }),
        }
    }

    /// Element of `T` with the given exponent.
    pub fn trop(exp: Q) -> Self {
        HyperValue::unit_unchecked(HyperfieldId::T, 1, exp)
    }

    pub fn field(&self) -> HyperfieldId {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_none()
    }

    pub fn as_unit(&self) -> Option<&Unit> {
        self.unit.as_ref()
    }

    /// Angular part, `0` for zero.
    pub fn angular(&self) -> i8 {
        self.unit.as_ref().map_or(0, |u| u.ang)
    }

    /// Exponent (valuation) of a unit; `None` stands for `∞`.
    pub fn exponent(&self) -> Option<&Q> {
        self.unit.as_ref().map(|u| &u.exp)
    }

    pub fn neg(&self) -> Self {
        match &self.unit {
            None => self.clone(),
            Some(u) => {
                let ang = if self.field.base() == Base::K { 1 } else { -u.ang };
                HyperValue::unit_unchecked(self.field, ang, u.exp.clone())
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.unit {
            None => Err(Error::Arithmetic("zero has no inverse".into())),
            Some(u) => Ok(HyperValue::unit_unchecked(self.field, u.ang, -u.exp.clone())),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return HyperValue::one(self.field);
        }
        match &self.unit {
            None => self.clone(),
            Some(u) => {
                let ang = if k % 2 == 0 { 1 } else { u.ang };
                HyperValue::unit_unchecked(self.field, ang, &u.exp * q(k as i64))
            }
        }
    }

    /// Same element with a different field tag, for embeddings that keep
    /// the representation.
    pub(crate) fn retag(&self, field: HyperfieldId) -> Self {
        match &self.unit {
            None => HyperValue::zero(field),
            Some(u) => HyperValue::unit_unchecked(field, u.ang, u.exp.clone()),
        }
    }

    /// Parse the value text syntax: `0`, `+`, `-`, `1`, `+t^(3/2)`, `-t^0`,
    /// `t^2`. The zero of a tropical extension may also be written `inf`.
    pub fn parse(text: &str, field: HyperfieldId) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad {} value `{text}`", field.name()));
        if s == "0" || s == "inf" || s == "∞" {
            return Ok(HyperValue::zero(field));
        }
        let (sign, rest) = match s.strip_prefix('+') {
            Some(r) => (1i8, r),
            None => match s.strip_prefix('-') {
                Some(r) => (-1i8, r),
                None => (1i8, s.as_str()),
            },
        };
        if sign < 0 && field.base() == Base::K {
            return Err(bad());
        }
        if !field.is_ext() {
            return match rest {
                "" | "1" => Ok(HyperValue::sign(field, sign)),
                _ => Err(bad()),
            };
        }
        if rest.is_empty() {
            return Ok(HyperValue::sign(field, sign));
        }
        let e = rest.strip_prefix("t^").ok_or_else(bad)?;
        let e = e
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(e);
        let exp = parse_rational(e).map_err(|_| bad())?;
        Ok(HyperValue::unit_unchecked(field, sign, exp))
    }
}

impl fmt::Display for HyperValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.unit, self.field) {
            (None, HyperfieldId::Ext(_)) => f.write_str("inf"),
            (None, _) => f.write_str("0"),
            (Some(_), HyperfieldId::K) => f.write_str("1"),
            (Some(u), HyperfieldId::S) => f.write_str(if u.ang > 0 { "+" } else { "-" }),
            (Some(u), HyperfieldId::Ext(Base::K)) => write!(f, "t^{}", fmt_exponent(&u.exp)),
            (Some(u), HyperfieldId::Ext(Base::S)) => write!(
                f,
                "{}t^{}",
                if u.ang > 0 { "+" } else { "-" },
                fmt_exponent(&u.exp)
            ),
        }
    }
}

fn check_field(field: HyperfieldId, a: &HyperValue) -> Result<()> {
    if a.field != field {
        return Err(Error::FieldMismatch(format!(
            "expected {}, got {}",
            field.name(),
            a.field.name()
        )));
    }
    Ok(())
}

/// Product of two elements of the same hyperfield.
pub fn hyper_mul(a: &HyperValue, b: &HyperValue) -> Result<HyperValue> {
    check_field(a.field, b)?;
    Ok(mul_unchecked(a, b))
}

pub(crate) fn mul_unchecked(a: &HyperValue, b: &HyperValue) -> HyperValue {
    match (&a.unit, &b.unit) {
        (Some(x), Some(y)) => {
            HyperValue::unit_unchecked(a.field, x.ang * y.ang, &x.exp + &y.exp)
        }
        _ => HyperValue::zero(a.field),
    }
}

/// Normal form of a subset produced by hyperaddition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubsetForm {
    Finite(BTreeSet<HyperValue>),
    /// `{a t^level : a ∈ angulars}`, together with every element of
    /// valuation `> level` and zero when `includes_tail` holds.
    LevelTail {
        level: Q,
        angulars: BTreeSet<i8>,
        includes_tail: bool,
    },
}

/// A subset of a hyperfield in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperSubset {
    field: HyperfieldId,
    form: SubsetForm,
}

impl HyperSubset {
    pub fn finite<I: IntoIterator<Item = HyperValue>>(field: HyperfieldId, items: I) -> Self {
        HyperSubset {
            field,
            form: SubsetForm::Finite(items.into_iter().collect()),
        }
    }

    pub fn level_tail(
        field: HyperfieldId,
        level: Q,
        angulars: BTreeSet<i8>,
        includes_tail: bool,
    ) -> Self {
        let angulars: BTreeSet<i8> = angulars.into_iter().filter(|&a| a != 0).collect();
        if !includes_tail || !field.is_ext() {
            let items = angulars
                .iter()
                .map(|&a| HyperValue::unit_unchecked(field, a, level.clone()))
                .collect();
            return HyperSubset {
                field,
                form: SubsetForm::Finite(items),
            };
        }
        HyperSubset {
            field,
            form: SubsetForm::LevelTail {
                level,
                angulars,
                includes_tail,
            },
        }
    }

    pub fn field(&self) -> HyperfieldId {
        self.field
    }

    pub fn form(&self) -> &SubsetForm {
        &self.form
    }

    pub fn contains(&self, a: &HyperValue) -> bool {
        if a.field != self.field {
            return false;
        }
        match &self.form {
            SubsetForm::Finite(s) => s.contains(a),
            SubsetForm::LevelTail {
                level,
                angulars,
                includes_tail,
            } => match &a.unit {
                None => *includes_tail,
                Some(u) => {
                    (u.exp > *level && *includes_tail)
                        || (u.exp == *level && angulars.contains(&u.ang))
                }
            },
        }
    }

    /// The unique element, if the subset is a singleton.
    pub fn singleton(&self) -> Option<&HyperValue> {
        match &self.form {
            SubsetForm::Finite(s) if s.len() == 1 => s.iter().next(),
            _ => None,
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&HyperValue::zero(self.field))
    }

    /// Subset inclusion on normal forms.
    pub fn is_subset_of(&self, other: &HyperSubset) -> bool {
        if self.field != other.field {
            return false;
        }
        match &self.form {
            SubsetForm::Finite(s) => s.iter().all(|a| other.contains(a)),
            SubsetForm::LevelTail {
                level, angulars, ..
            } => match &other.form {
                SubsetForm::Finite(_) => false,
                SubsetForm::LevelTail {
                    level: l2,
                    angulars: a2,
                    includes_tail: t2,
                } => *t2 && (level > l2 || (level == l2 && angulars.is_subset(a2))),
            },
        }
    }

    /// Union of two subsets, when the result has a normal form.
    pub fn union(&self, other: &HyperSubset) -> Option<HyperSubset> {
        if self.field != other.field {
            return None;
        }
        use SubsetForm::*;
        match (&self.form, &other.form) {
            (Finite(a), Finite(b)) => Some(HyperSubset::finite(
                self.field,
                a.iter().chain(b.iter()).cloned(),
            )),
            (Finite(_), LevelTail { .. }) => other.union(self),
            (
                LevelTail {
                    level, angulars, ..
                },
                Finite(b),
            ) => {
                let mut angs = angulars.clone();
                for x in b {
                    if self.contains(x) {
                        continue;
                    }
                    let u = x.as_unit()?;
                    if u.exp != *level {
                        return None;
                    }
                    angs.insert(u.ang);
                }
                Some(HyperSubset::level_tail(self.field, level.clone(), angs, true))
            }
            (
                LevelTail {
                    level: l1,
                    angulars: a1,
                    ..
                },
                LevelTail {
                    level: l2,
                    angulars: a2,
                    ..
                },
            ) => {
                if l1 == l2 {
                    let angs = a1.union(a2).cloned().collect();
                    Some(HyperSubset::level_tail(self.field, l1.clone(), angs, true))
                } else if l1 < l2 {
                    Some(self.clone())
                } else {
                    Some(other.clone())
                }
            }
        }
    }
}

impl fmt::Display for HyperSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            SubsetForm::Finite(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            SubsetForm::LevelTail {
                level, angulars, ..
            } => {
                let e = fmt_exponent(level);
                if self.field.base() == Base::K {
                    if angulars.is_empty() {
                        write!(f, "(t^{e}, inf]")
                    } else {
                        write!(f, "[t^{e}, inf]")
                    }
                } else {
                    let parts: Vec<&str> = angulars
                        .iter()
                        .map(|&a| if a > 0 { "+" } else { "-" })
                        .collect();
                    write!(f, "{{{}}}t^{e} | (t^{e}, inf]", parts.join(","))
                }
            }
        }
    }
}

/// Hypersum of a finite multiset, by the closed form: only the terms of
/// minimal exponent matter, and a vanishing base sum opens the tail.
pub fn hyper_sum(field: HyperfieldId, values: &[HyperValue]) -> Result<HyperSubset> {
    for v in values {
        check_field(field, v)?;
    }
    Ok(sum_unchecked(field, values.iter()))
}

pub(crate) fn sum_unchecked<'a, I>(field: HyperfieldId, values: I) -> HyperSubset
where
    I: Iterator<Item = &'a HyperValue>,
{
    let units: Vec<&Unit> = values.filter_map(|v| v.unit.as_ref()).collect();
    if units.is_empty() {
        return HyperSubset::finite(field, [HyperValue::zero(field)]);
    }
    let base = field.base();
    if !field.is_ext() {
        let set = base.sum(units.iter().map(|u| u.ang));
        return HyperSubset::finite(field, set.into_iter().map(|a| HyperValue::sign(field, a)));
    }
    let level = units.iter().map(|u| &u.exp).min().unwrap().clone();
    let set = base.sum(units.iter().filter(|u| u.exp == level).map(|u| u.ang));
    let with_zero = set.contains(&0);
    HyperSubset::level_tail(field, level, set, with_zero)
}

/// Membership `a ∈ s`; errors on mismatched fields.
pub fn subset_contains(s: &HyperSubset, a: &HyperValue) -> Result<bool> {
    check_field(s.field, a)?;
    Ok(s.contains(a))
}

/// `s ⊞ a`, the union of `x ⊞ a` over `x ∈ s`. Used to fold sums pairwise.
pub fn subset_add(s: &HyperSubset, a: &HyperValue) -> Result<HyperSubset> {
    check_field(s.field, a)?;
    let field = s.field;
    match &s.form {
        SubsetForm::Finite(items) => {
            let mut acc: Option<HyperSubset> = None;
            for x in items {
                let part = sum_unchecked(field, [x, a].into_iter());
                acc = Some(match acc {
                    None => part,
                    Some(prev) => prev.union(&part).ok_or_else(|| {
                        Error::Invalid("union has no normal form".into())
                    })?,
                });
            }
            Ok(acc.unwrap_or_else(|| HyperSubset::finite(field, [])))
        }
        SubsetForm::LevelTail {
            level, angulars, ..
        } => match &a.unit {
            None => Ok(s.clone()),
            Some(u) if u.exp < *level => Ok(HyperSubset::finite(field, [a.clone()])),
            Some(u) if u.exp > *level => Ok(s.clone()),
            Some(u) => {
                let mut angs: BTreeSet<i8> = BTreeSet::new();
                angs.insert(u.ang);
                for &h in angulars {
                    angs.extend(field.base().sum([h, u.ang]));
                }
                Ok(HyperSubset::level_tail(field, level.clone(), angs, true))
            }
        },
    }
}

/// Hypersum computed by folding one element at a time: a reference for the
/// closed form in [`hyper_sum`].
pub fn fold_sum(field: HyperfieldId, values: &[HyperValue]) -> Result<HyperSubset> {
    let mut it = values.iter();
    let first = match it.next() {
        None => return Ok(HyperSubset::finite(field, [HyperValue::zero(field)])),
        Some(v) => {
            check_field(field, v)?;
            HyperSubset::finite(field, [v.clone()])
        }
    };
    it.try_fold(first, |acc, v| subset_add(&acc, v))
}

/// The maps between hyperfields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Morphism {
    /// `TR → T`, forgetting the sign.
    Nu,
    /// `H ⋊ Q → H`, the angular component.
    Ac,
    /// `H → H ⋊ Q` at exponent 0.
    Embed,
    /// `H → K`, the trivial valuation.
    Nu0,
}

impl Morphism {
    pub const ALL: [Morphism; 4] = [Morphism::Nu, Morphism::Ac, Morphism::Embed, Morphism::Nu0];

    pub fn name(self) -> &'static str {
        match self {
            Morphism::Nu => "nu",
            Morphism::Ac => "ac",
            Morphism::Embed => "embed",
            Morphism::Nu0 => "nu0",
        }
    }

    /// Codomain for a given domain, or a domain error.
    pub fn codomain(self, domain: HyperfieldId) -> Result<HyperfieldId> {
        let err = || {
            Error::Domain(format!("{} is not defined on {}", self.name(), domain.name()))
        };
        match (self, domain) {
            (Morphism::Nu, HyperfieldId::Ext(_)) => Ok(HyperfieldId::T),
            (Morphism::Ac, HyperfieldId::Ext(b)) => Ok(HyperfieldId::Ext(b).base_field()),
            (Morphism::Embed, d) if !d.is_ext() => Ok(d.ext()),
            (Morphism::Nu0, _) => Ok(HyperfieldId::K),
            _ => Err(err()),
        }
    }

    /// Whether the map is a morphism of hyperfields on the given domain.
    /// The angular component is one for the bases `K` and `S`, which are the
    /// only bases here, so every defined map qualifies.
    pub fn is_morphism(self, domain: HyperfieldId) -> bool {
        self.codomain(domain).is_ok()
    }
}

/// Image of an element.
pub fn apply_morphism(m: Morphism, a: &HyperValue) -> Result<HyperValue> {
    let cod = m.codomain(a.field)?;
    Ok(match (m, &a.unit) {
        (_, None) => HyperValue::zero(cod),
        (Morphism::Nu, Some(u)) => HyperValue::unit_unchecked(cod, 1, u.exp.clone()),
        (Morphism::Ac, Some(u)) => HyperValue::sign(cod, u.ang),
        (Morphism::Embed, Some(u)) => HyperValue::unit_unchecked(cod, u.ang, Q::zero()),
        (Morphism::Nu0, Some(_)) => HyperValue::one(cod),
    })
}

/// Image of a subset in normal form.
pub fn image_subset(m: Morphism, s: &HyperSubset) -> Result<HyperSubset> {
    let cod = m.codomain(s.field)?;
    match &s.form {
        SubsetForm::Finite(items) => {
            let out: Result<Vec<_>> = items.iter().map(|x| apply_morphism(m, x)).collect();
            Ok(HyperSubset::finite(cod, out?))
        }
        SubsetForm::LevelTail {
            level, angulars, ..
        } => match m {
            Morphism::Nu => {
                let angs = if angulars.is_empty() {
                    BTreeSet::new()
                } else {
                    [1].into_iter().collect()
                };
                Ok(HyperSubset::level_tail(cod, level.clone(), angs, true))
            }
            Morphism::Ac | Morphism::Nu0 => Ok(HyperSubset::finite(cod, cod.elements()?)),
            Morphism::Embed => unreachable!("embed is only defined on finite hyperfields"),
        },
    }
}

/// Sign of a rational as an element of `S`.
pub fn sgn_rational(x: &Q) -> HyperValue {
    let s = if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    };
    HyperValue::sign(HyperfieldId::S, s)
}

pub(crate) fn sign_of_int(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn sign_of_q(x: &Q) -> i8 {
    sign_of_int(x.numer())
}

#[allow(dead_code)]
pub(crate) fn q_one() -> Q {
    Q::one()
}
