use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{
    dot_exp, enriched_curve, gmult, initial_form, line_data, EnrichedCurve, GmultResult,
    LineFamily,
};
use crate::error::{Error, Result};
use crate::hyperfield::{q, Base, HyperValue, Q};
use crate::multiplicity::{mult_single, WitnessStep};
use crate::polyring::{product_membership, Exp, HPoly};
use crate::realcert::{fm_solve, Constraint, FeasibilityOutcome, LinearSystem, Relation};

fn check_ext_pair(f: &HPoly, l: &HPoly) -> Result<()> {
    if !f.field().is_ext() {
        return Err(Error::UnsupportedField(format!(
            "expected a tropical extension, got {}",
            f.field()
        )));
    }
    if f.field() != l.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", f.field(), l.field())));
    }
    if f.nvars() != l.nvars() {
        return Err(Error::Shape("variable counts differ".into()));
    }
    Ok(())
}

/// A member of `f·g`: at each exponent the minimal valuation, with the
/// angular part of the first minimizing product when several compete.
pub fn tropical_product(f: &HPoly, g: &HPoly) -> Result<HPoly> {
    check_ext_pair(f, g)?;
    let field = f.field();
    let mut best: BTreeMap<Exp, (Q, i8)> = BTreeMap::new();
    for (e1, v1) in f.terms() {
        for (e2, v2) in g.terms() {
            let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            let val = v1.exponent().unwrap() + v2.exponent().unwrap();
            let ang = v1.angular() * v2.angular();
            match best.get(&e) {
                Some((b, _)) if *b <= val => {}
                _ => {
                    best.insert(e, (val, ang));
                }
            }
        }
    }
    let mut out = HPoly::zero(field, f.nvars());
    for (e, (val, ang)) in best {
        out.set(e, HyperValue::unit(field, ang, val)?);
    }
    Ok(out)
}

/// One product `g_k · l_j` contributing to a coefficient of `f`: variable
/// index of `k`, valuation of `l_j`, and the angular part of the product.
#[derive(Clone)]
struct Term {
    var: usize,
    offset: Q,
    ang: i8,
}

/// Decide whether some `g` over the tropical extension has `f ∈ g·l`, and
/// return one. Exact: enumerates the support and signs of `g`, then for
/// each coefficient of `f` which products are minimal, solving the
/// resulting linear conditions on the valuations.
pub fn ext_quotient(f: &HPoly, l: &HPoly) -> Result<Option<HPoly>> {
    check_ext_pair(f, l)?;
    if f.is_zero() || l.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let g_supp = f.minkowski_quotient_support(l);
    if g_supp.is_empty() {
        return Ok(None);
    }
    let mut covered: BTreeMap<Exp, ()> = BTreeMap::new();
    for k in &g_supp {
        for (j, _) in l.terms() {
            covered.insert(k.iter().zip(j).map(|(a, b)| a + b).collect(), ());
        }
    }
    if f.support().iter().any(|e| !covered.contains_key(e)) {
        return Ok(None);
    }
    let options: Vec<i8> = match field.base() {
        Base::K => vec![1, 0],
        Base::S => vec![1, -1, 0],
    };
    let mut pattern = vec![0i8; g_supp.len()];
    let mut ctx = Ctx {
        f,
        l,
        g_supp: &g_supp,
        ms: covered.keys().cloned().collect(),
    };
    Ok(ctx.patterns(0, &options, &mut pattern))
}

struct Ctx<'a> {
    f: &'a HPoly,
    l: &'a HPoly,
    g_supp: &'a [Exp],
    ms: Vec<Exp>,
}

impl Ctx<'_> {
    fn patterns(&mut self, i: usize, options: &[i8], pattern: &mut Vec<i8>) -> Option<HPoly> {
        if i == pattern.len() {
            return self.with_pattern(pattern);
        }
        for &s in options {
            pattern[i] = s;
            if let Some(g) = self.patterns(i + 1, options, pattern) {
                return Some(g);
            }
        }
        None
    }

    fn with_pattern(&self, pattern: &[i8]) -> Option<HPoly> {
        let field = self.f.field();
        let mut per_m: Vec<(Exp, Vec<Term>)> = Vec::new();
        for m in &self.ms {
            let mut terms = Vec::new();
            for (var, k) in self.g_supp.iter().enumerate() {
                if pattern[var] == 0 {
                    continue;
                }
                let j: Option<Exp> = m.iter().zip(k).map(|(a, b)| a.checked_sub(*b)).collect();
                let Some(j) = j else { continue };
                let lj = self.l.coeff(&j);
                if lj.is_zero() {
                    continue;
                }
                terms.push(Term {
                    var,
                    offset: lj.exponent().unwrap().clone(),
                    ang: pattern[var] * lj.angular(),
                });
            }
            if terms.is_empty() && !self.f.coeff(m).is_zero() {
                return None;
            }
            if !terms.is_empty() {
                per_m.push((m.clone(), terms));
            }
        }
        per_m.sort_by_key(|(_, t)| t.len());
        let names: Vec<String> = (0..self.g_supp.len()).map(|i| format!("u{i}")).collect();
        let mut sys = LinearSystem::new(&names);
        let sample = self.dfs(&per_m, 0, &mut sys)?;
        let mut g = HPoly::zero(field, self.f.nvars());
        for (var, k) in self.g_supp.iter().enumerate() {
            if pattern[var] != 0 {
                g.set(k.clone(), HyperValue::unit(field, pattern[var], sample[var].clone()).ok()?);
            }
        }
        debug_assert!(product_membership(self.f, &g, self.l).unwrap_or(false));
        Some(g)
    }

    fn dfs(&self, per_m: &[(Exp, Vec<Term>)], i: usize, sys: &mut LinearSystem) -> Option<Vec<Q>> {
        match fm_solve(sys) {
            FeasibilityOutcome::Infeasible { .. } => return None,
            FeasibilityOutcome::Feasible { sample } => {
                if i == per_m.len() {
                    return Some(sample);
                }
            }
        }
        let (m, terms) = &per_m[i];
        let target = self.f.coeff(m);
        let signed = self.f.field().base() == Base::S;
        let n = terms.len();
        let nv = sys.variables.len();
        for mask in 1u32..(1 << n) {
            let chosen: Vec<&Term> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| &terms[b]).collect();
            let has_pos = chosen.iter().any(|t| t.ang > 0);
            let has_neg = chosen.iter().any(|t| t.ang < 0);
            let tail = if signed { has_pos && has_neg } else { chosen.len() >= 2 };
            // How the minimum relates to the target valuation.
            let level: Option<Relation> = match target.as_unit() {
                None => {
                    if !tail {
                        continue;
                    }
                    None
                }
                Some(u) => {
                    let exact = if signed {
                        chosen.iter().all(|t| t.ang == u.ang)
                    } else {
                        chosen.len() == 1
                    };
                    if exact {
                        Some(Relation::Eq)
                    } else if tail {
                        Some(Relation::Le)
                    } else {
                        continue;
                    }
                }
            };
            let base = sys.constraints.len();
            let term_expr = |t: &Term, sign: i64, c: &mut Vec<Q>, k: &mut Q| {
                c[t.var] += q(sign);
                *k += &t.offset * q(sign);
            };
            let first = chosen[0];
            for (b, t) in terms.iter().enumerate() {
                if std::ptr::eq(t, first) {
                    continue;
                }
                let mut c = vec![Q::zero(); nv];
                let mut k = Q::zero();
                term_expr(t, 1, &mut c, &mut k);
                term_expr(first, -1, &mut c, &mut k);
                let rel = if mask >> b & 1 == 1 { Relation::Eq } else { Relation::Gt };
                sys.constraints.push(Constraint::new(c, k, rel));
            }
            if let (Some(rel), Some(u)) = (level, target.as_unit()) {
                // first − a  REL  0, with Le meaning min ≤ a.
                let mut c = vec![Q::zero(); nv];
                let mut k = -u.exp.clone();
                term_expr(first, 1, &mut c, &mut k);
                sys.constraints.push(Constraint::new(c, k, rel));
            }
            if let Some(s) = self.dfs(per_m, i + 1, sys) {
                return Some(s);
            }
            sys.constraints.truncate(base);
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropMultReport {
    /// The multiplicity when it is determined.
    pub value: Option<u32>,
    pub lower: u32,
    pub upper: u32,
    /// Only the bracket `lower ≤ mult ≤ upper` is known.
    pub bound_only: bool,
    pub gmult: GmultResult,
    #[serde(skip)]
    pub witness_chain: Vec<WitnessStep>,
    pub diagnostics: Vec<String>,
}

/// A point inside the complement region of essential monomial `idx`.
fn region_point(v: &EnrichedCurve, idx: usize) -> Option<[Q; 2]> {
    let sd = &v.subdivision;
    let verts: Vec<&[Q; 2]> = sd
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.vertices.contains(&idx))
        .map(|(i, _)| &v.curve.vertices[i])
        .collect();
    if verts.is_empty() {
        return None;
    }
    let n = q(verts.len() as i64);
    let mut c = [Q::zero(), Q::zero()];
    for p in &verts {
        c[0] += &p[0];
        c[1] += &p[1];
    }
    c[0] = &c[0] / &n;
    c[1] = &c[1] / &n;
    let mut r = [Q::zero(), Q::zero()];
    for e in &v.curve.edges {
        if e.end.is_none() && e.dual.contains(&idx) {
            r[0] += q(e.direction[0]);
            r[1] += q(e.direction[1]);
        }
    }
    let val = |x: &[Q; 2], i: usize| &sd.heights[i] + dot_exp(&sd.points[i], x);
    for scale in [q(1), q(2), Q::new(1.into(), 2.into()), q(8)] {
        let x = [&c[0] + &r[0] * &scale, &c[1] + &r[1] * &scale];
        let mine = val(&x, idx);
        if (0..sd.points.len()).all(|j| j == idx || val(&x, j) > mine) {
            return Some(x);
        }
    }
    None
}

/// The unique quotient of a dense strictly convex `f` by `l`, read off the
/// complement regions of `V(f)`.
fn strictly_convex_quotient(f: &HPoly, l: &HPoly) -> Result<Option<HPoly>> {
    let v = enriched_curve(f)?;
    let field = f.field();
    let mut g: BTreeMap<Exp, HyperValue> = BTreeMap::new();
    for idx in 0..v.subdivision.points.len() {
        let Some(x) = region_point(&v, idx) else {
            return Ok(None);
        };
        let mut best: Option<(Q, Exp, HyperValue)> = None;
        let mut tie = false;
        for (j, c) in l.terms() {
            let val = c.exponent().unwrap() + dot_exp(j, &x);
            match &best {
                Some((b, _, _)) if *b < val => {}
                Some((b, _, _)) if *b == val => tie = true,
                _ => {
                    tie = false;
                    best = Some((val, j.clone(), c.clone()));
                }
            }
        }
        if tie {
            return Ok(None);
        }
        let (_, j, lj) = best.unwrap();
        let m = &v.subdivision.points[idx];
        let Some(k) = m.iter().zip(&j).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Exp>>()
        else {
            return Ok(None);
        };
        let fm = f.coeff(m);
        let val = fm.exponent().unwrap() - lj.exponent().unwrap();
        let gk = HyperValue::unit(field, fm.angular() * lj.angular(), val)?;
        if let Some(prev) = g.insert(k, gk.clone()) {
            if prev != gk {
                return Ok(None);
            }
        }
    }
    let g = HPoly::from_terms(field, f.nvars(), g)?;
    Ok(product_membership(f, &g, l)?.then_some(g))
}

/// Multiplicity of the line `l` in `f` over `T` or `T R`. Exact for dense
/// strictly convex `f` (the enriched geometric multiplicity), otherwise
/// bracketed between a chain of exact one-step quotients and the geometric
/// multiplicity.
pub fn mult_tropext(f: &HPoly, l: &HPoly) -> Result<TropMultReport> {
    check_ext_pair(f, l)?;
    if f.nvars() != 2 {
        return Err(Error::Dimension(format!(
            "needs 2 variables, got {}",
            f.nvars()
        )));
    }
    let (apex, _) = line_data(l)?;
    let v = enriched_curve(f)?;
    let enriched = f.field().base() == Base::S;
    let gm = gmult(&v, &LineFamily::Fixed(vec![l.clone()]), enriched)?;
    let upper = gm.value;
    let mut diagnostics = Vec::new();
    let convex = f.is_dense() && v.subdivision.is_strictly_convex();
    let mut chain = Vec::new();
    let (value, lower) = if convex {
        let mut cur = f.clone();
        for _ in 0..upper {
            match strictly_convex_quotient(&cur, l)? {
                Some(g) => {
                    chain.push(WitnessStep {
                        quotient: g.clone(),
                        divisor: l.clone(),
                    });
                    cur = g;
                }
                None => {
                    return Err(Error::Invalid(
                        "quotient reconstruction failed for a strictly convex input".into(),
                    ))
                }
            }
        }
        (Some(upper), upper)
    } else {
        diagnostics.push("not dense and strictly convex: one-step quotients searched exactly".into());
        let mut cur = f.clone();
        while (chain.len() as u32) < upper {
            match ext_quotient(&cur, l)? {
                Some(g) => {
                    chain.push(WitnessStep {
                        quotient: g.clone(),
                        divisor: l.clone(),
                    });
                    cur = g;
                }
                None => break,
            }
        }
        let lower = chain.len() as u32;
        if lower == 0 && upper > 0 {
            diagnostics.push("no quotient exists: the multiplicity is 0".into());
            (Some(0), 0)
        } else if lower == upper {
            (Some(lower), lower)
        } else {
            (None, lower)
        }
    };
    let inw_f = initial_form(f, &apex)?;
    let inw_l = initial_form(l, &apex)?;
    let local = mult_single(&inw_f, &inw_l)?.value;
    if local.finite().is_none_or(|k| Some(k) > value) {
        diagnostics.push(format!(
            "initial form at the apex {}: {} with multiplicity {}",
            super::fmt_point(&apex),
            inw_f,
            local
        ));
    }
    Ok(TropMultReport {
        value,
        lower,
        upper,
        bound_only: value.is_none(),
        gmult: gm,
        witness_chain: chain,
        diagnostics,
    })
}
