use serde::Serialize;

use super::{fmt_point, EnrichedCurve};
use crate::error::{Error, Result};
use crate::hyperfield::Q;
use crate::polyring::HPoly;

/// The three ray directions of a min-plus tropical line, and for each the
/// pair of line monomials (`0 = 1`, `1 = x`, `2 = y`) it separates.
const RAYS: [([i64; 2], [usize; 2]); 3] = [([1, 0], [0, 2]), ([0, 1], [0, 1]), ([-1, -1], [1, 2])];

/// Lines allowed as summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineFamily {
    /// These lines exactly (apex and signs read off the coefficients).
    Fixed(Vec<HPoly>),
    /// Every line with these coefficient signs `(1, x, y)`, at any apex.
    SignPattern(Vec<[i8; 3]>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineSummand {
    #[serde(serialize_with = "ser_point")]
    pub apex: [Q; 2],
    pub signs: [i8; 3],
    pub multiplicity: u32,
}

fn ser_point<S: serde::Serializer>(p: &[Q; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|v| v.to_string()))
}

impl std::fmt::Display for LineSummand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sg = |s: i8| if s < 0 { '-' } else { '+' };
        write!(
            f,
            "{} x line at {} with signs ({},{},{})",
            self.multiplicity,
            fmt_point(&self.apex),
            sg(self.signs[0]),
            sg(self.signs[1]),
            sg(self.signs[2])
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmultResult {
    pub value: u32,
    pub summands: Vec<LineSummand>,
    /// Apex/sign combinations whose three rays fit inside the curve.
    pub candidates: usize,
}

/// Apex and coefficient signs `(1, x, y)` of a line `a + bx + cy` over a
/// tropical extension. The apex of `0 + (−p₁)x + (−p₂)y` is `p`.
pub fn line_data(l: &HPoly) -> Result<([Q; 2], [i8; 3])> {
    if l.nvars() != 2 {
        return Err(Error::Dimension("lines live in 2 variables".into()));
    }
    if !l.field().is_ext() {
        return Err(Error::UnsupportedField(format!(
            "lines for geometric multiplicity need a tropical extension, got {}",
            l.field()
        )));
    }
    let (l, _) = l.strip_monomial();
    if l.newton_degree() != Some(1) || l.len() != 3 {
        return Err(Error::Invalid(format!(
            "`{l}` is not a linear form with all three terms"
        )));
    }
    let c0 = l.coeff(&[0, 0]);
    let cx = l.coeff(&[1, 0]);
    let cy = l.coeff(&[0, 1]);
    let v = |h: &crate::hyperfield::HyperValue| h.exponent().unwrap().clone();
    let apex = [v(&c0) - v(&cx), v(&c0) - v(&cy)];
    Ok((apex, [c0.angular(), cx.angular(), cy.angular()]))
}

struct Candidate {
    cell: usize,
    signs: [i8; 3],
    /// `(edge, ray index)` for every curve edge the line runs along.
    edges: Vec<(usize, usize)>,
    cap: u32,
}

/// Follow a ray from the vertex of `cell` in direction `d` to infinity,
/// collecting curve edges; `None` if the curve turns away.
fn walk(v: &EnrichedCurve, cell: usize, d: [i64; 2], out: &mut Vec<usize>) -> bool {
    let mut cur = cell;
    loop {
        let next = v
            .curve
            .outgoing(cur)
            .into_iter()
            .find(|(_, dir)| *dir == d);
        let Some((e, _)) = next else {
            return false;
        };
        out.push(e);
        let edge = &v.curve.edges[e];
        match edge.end {
            None => return true,
            Some(t) => cur = if edge.start == cur { t } else { edge.start },
        }
    }
}

fn line_edges(v: &EnrichedCurve, cell: usize) -> Option<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (r, (d, _)) in RAYS.iter().enumerate() {
        let mut es = Vec::new();
        if !walk(v, cell, *d, &mut es) {
            return None;
        }
        out.extend(es.into_iter().map(|e| (e, r)));
    }
    Some(out)
}

/// Largest total multiplicity of tropical lines from `family` that split off
/// `v` with nonnegative residual weights. In enriched mode the residual must
/// carry labels compatible with `v`'s and the lines' signs.
pub fn gmult(v: &EnrichedCurve, family: &LineFamily, enriched: bool) -> Result<GmultResult> {
    if v.subdivision.nvars != 2 {
        return Err(Error::Dimension("geometric multiplicity needs 2 variables".into()));
    }
    let mut cands: Vec<Candidate> = Vec::new();
    let fixed: Vec<([Q; 2], [i8; 3])> = match family {
        LineFamily::Fixed(ls) => ls.iter().map(line_data).collect::<Result<Vec<_>>>()?,
        LineFamily::SignPattern(ps) => {
            if ps.iter().flatten().any(|s| *s != 1 && *s != -1) {
                return Err(Error::Invalid("line sign patterns need nonzero signs".into()));
            }
            vec![]
        }
    };
    for cell in 0..v.curve.vertices.len() {
        let apex = &v.curve.vertices[cell];
        let mut patterns: Vec<[i8; 3]> = match family {
            LineFamily::Fixed(_) => fixed
                .iter()
                .filter(|(a, _)| a == apex)
                .map(|(_, s)| *s)
                .collect(),
            LineFamily::SignPattern(ps) => ps.clone(),
        };
        if !enriched {
            patterns.truncate(1);
        }
        patterns.sort();
        patterns.dedup();
        if patterns.is_empty() {
            continue;
        }
        let Some(edges) = line_edges(v, cell) else {
            continue;
        };
        let cap = edges
            .iter()
            .map(|(e, _)| v.curve.edges[*e].weight)
            .min()
            .unwrap_or(0);
        for signs in patterns {
            cands.push(Candidate {
                cell,
                signs,
                edges: edges.clone(),
                cap,
            });
        }
    }
    let mut search = Search {
        v,
        cands: &cands,
        enriched,
        residual: v.curve.edges.iter().map(|e| e.weight).collect(),
        assign: vec![0; cands.len()],
        best: 0,
        best_assign: vec![0; cands.len()],
    };
    let total_cap: u32 = cands.iter().map(|c| c.cap).sum();
    search.run(0, 0, total_cap);
    let summands = cands
        .iter()
        .zip(&search.best_assign)
        .filter(|(_, a)| **a > 0)
        .map(|(c, a)| LineSummand {
            apex: v.curve.vertices[c.cell].clone(),
            signs: c.signs,
            multiplicity: *a,
        })
        .collect();
    Ok(GmultResult {
        value: search.best,
        summands,
        candidates: cands.len(),
    })
}

struct Search<'a> {
    v: &'a EnrichedCurve,
    cands: &'a [Candidate],
    enriched: bool,
    residual: Vec<u32>,
    assign: Vec<u32>,
    best: u32,
    best_assign: Vec<u32>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, total: u32, remaining_cap: u32) {
        if total + remaining_cap <= self.best {
            return;
        }
        if i == self.cands.len() {
            if self.labels_consistent() {
                self.best = total;
                self.best_assign = self.assign.clone();
            }
            return;
        }
        let c = &self.cands[i];
        let room = c
            .edges
            .iter()
            .map(|(e, _)| self.residual[*e])
            .min()
            .unwrap_or(0);
        let rest = remaining_cap - c.cap;
        for a in (0..=room).rev() {
            for (e, _) in &c.edges {
                self.residual[*e] -= a;
            }
            self.assign[i] = a;
            self.run(i + 1, total + a, rest);
            for (e, _) in &c.edges {
                self.residual[*e] += a;
            }
        }
        self.assign[i] = 0;
    }

    /// Across every edge used up completely, the residual label must not
    /// change: `s(m)·s(m')·Π (t_i(m)·t_i(m'))^{a_i} = +`.
    fn labels_consistent(&self) -> bool {
        if !self.enriched {
            return true;
        }
        let mut flip = vec![1i8; self.residual.len()];
        for (c, &a) in self.cands.iter().zip(&self.assign) {
            if a % 2 == 0 {
                continue;
            }
            for (e, r) in &c.edges {
                let [p, q] = RAYS[*r].1;
                flip[*e] *= c.signs[p] * c.signs[q];
            }
        }
        self.v.curve.edges.iter().enumerate().all(|(i, e)| {
            self.residual[i] > 0
                || self.v.labels[e.dual[0]] * self.v.labels[e.dual[1]] * flip[i] == 1
        })
    }
}
