//! Transverse intersections of tropical plane curves and bounds on the
//! number of solutions of polynomial systems with prescribed signs or
//! valuations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperfield::{q, HyperValue, HyperfieldId, Q};
use crate::polyring::{Exp, HPoly};
use crate::resultant::resultant_sign_report;
use crate::tropgeo::{fmt_point, lift, newton_subdivision, tropical_curve};

/// The initial binomial `c_s x^s + c_t x^t` of one curve at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Binomial {
    pub s: Exp,
    pub t: Exp,
    /// Angular parts of `c_s` and `c_t`.
    pub signs: [i8; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversePoint {
    #[serde(serialize_with = "ser_point")]
    pub location: [Q; 2],
    pub binomials: Vec<Binomial>,
    pub transverse: bool,
}

fn ser_point<S: serde::Serializer>(p: &[Q; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|v| v.to_string()))
}

#[derive(Clone, Debug)]
enum Extent {
    Segment(Q),
    Ray,
    Line,
}

/// A maximal cell of a tropical curve: `base + λ·dir` over the extent.
#[derive(Clone, Debug)]
struct Piece {
    base: [Q; 2],
    dir: [i64; 2],
    extent: Extent,
    dual: [Exp; 2],
    signs: [i8; 2],
}

impl Piece {
    fn lo(&self) -> Option<Q> {
        match self.extent {
            Extent::Line => None,
            _ => Some(q(0)),
        }
    }

    fn hi(&self) -> Option<Q> {
        match &self.extent {
            Extent::Segment(l) => Some(l.clone()),
            _ => None,
        }
    }

    fn at(&self, lam: &Q) -> [Q; 2] {
        [
            &self.base[0] + lam * q(self.dir[0]),
            &self.base[1] + lam * q(self.dir[1]),
        ]
    }
}

fn check_curve_poly(f: &HPoly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::Dimension("intersections are computed in the plane".into()));
    }
    if !f.field().is_ext() {
        return Err(Error::UnsupportedField(format!(
            "tropical curves need T or TR, got {}",
            f.field()
        )));
    }
    Ok(())
}

fn pieces(f: &HPoly) -> Result<Vec<Piece>> {
    check_curve_poly(f)?;
    let sd = newton_subdivision(f)?;
    let sign = |e: &Exp| f.coeff(e).angular();
    let mut out = Vec::new();
    match sd.dim {
        2 => {
            let c = tropical_curve(f)?;
            for e in &c.edges {
                let base = c.vertices[e.start].clone();
                let dual = [sd.points[e.dual[0]].clone(), sd.points[e.dual[1]].clone()];
                let extent = match e.end {
                    None => Extent::Ray,
                    Some(t) => {
                        let d = e.direction;
                        let k = if d[0] != 0 { 0 } else { 1 };
                        Extent::Segment((&c.vertices[t][k] - &base[k]) / q(d[k]))
                    }
                };
                out.push(Piece {
                    base,
                    dir: e.direction,
                    extent,
                    signs: [sign(&dual[0]), sign(&dual[1])],
                    dual,
                });
            }
        }
        1 => {
            for cell in &sd.cells {
                let (a, b) = (cell.vertices[0], cell.vertices[1]);
                let (pa, pb) = (&sd.points[a], &sd.points[b]);
                let d = [pb[0] as i64 - pa[0] as i64, pb[1] as i64 - pa[1] as i64];
                let nn = q(d[0] * d[0] + d[1] * d[1]);
                let k = (&sd.heights[a] - &sd.heights[b]) / nn;
                let g = num_integer::Integer::gcd(&d[0], &d[1]);
                out.push(Piece {
                    base: [&k * q(d[0]), &k * q(d[1])],
                    dir: [-d[1] / g, d[0] / g],
                    extent: Extent::Line,
                    dual: [pa.clone(), pb.clone()],
                    signs: [sign(pa), sign(pb)],
                });
            }
        }
        _ => {}
    }
    Ok(out)
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn qcross(a: &[Q; 2], b: [i64; 2]) -> Q {
    &a[0] * q(b[1]) - &a[1] * q(b[0])
}

fn within(lam: &Q, lo: &Option<Q>, hi: &Option<Q>) -> bool {
    lo.as_ref().is_none_or(|l| lam >= l) && hi.as_ref().is_none_or(|h| lam <= h)
}

fn on_end(lam: &Q, lo: &Option<Q>, hi: &Option<Q>) -> bool {
    lo.as_ref() == Some(lam) || hi.as_ref() == Some(lam)
}

/// Interval `[lo, hi]` (either end may be infinite) of `r` measured along
/// `p`'s parametrization; the two pieces are collinear.
fn collinear_overlap(p: &Piece, r: &Piece) -> Option<(Option<Q>, Option<Q>)> {
    let off = [&r.base[0] - &p.base[0], &r.base[1] - &p.base[1]];
    let k = if p.dir[0] != 0 { 0 } else { 1 };
    let t0 = &off[k] / q(p.dir[k]);
    let same = r.dir == p.dir;
    let map = |v: Option<Q>| v.map(|x| if same { &t0 + x } else { &t0 - x });
    let (a, b) = (map(r.lo()), map(r.hi()));
    let (rlo, rhi) = if same { (a, b) } else { (b, a) };
    // Intersect with p's interval.
    let lo = match (p.lo(), rlo) {
        (Some(x), Some(y)) => Some(if x > y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    };
    let hi = match (p.hi(), rhi) {
        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    };
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

/// All intersection points of two plane tropical curves given by
/// polynomials over `T` or `TR`. Fails when the curves share a segment or
/// meet at a vertex of either curve.
pub fn transverse_intersections(f: &[HPoly]) -> Result<Vec<TransversePoint>> {
    if f.len() != 2 {
        return Err(Error::Dimension(format!(
            "transverse intersections are implemented for two curves, got {}",
            f.len()
        )));
    }
    let a = pieces(&f[0])?;
    let b = pieces(&f[1])?;
    intersect_pieces(&a, &b)
}

fn intersect_pieces(a: &[Piece], b: &[Piece]) -> Result<Vec<TransversePoint>> {
    let mut out: Vec<TransversePoint> = Vec::new();
    for p in a {
        for r in b {
            let c = cross(p.dir, r.dir);
            let off = [&r.base[0] - &p.base[0], &r.base[1] - &p.base[1]];
            if c == 0 {
                if !qcross(&off, p.dir).is_zero_q() {
                    continue;
                }
                let Some((lo, hi)) = collinear_overlap(p, r) else {
                    continue;
                };
                match (&lo, &hi) {
                    (Some(l), Some(h)) if l == h => {
                        return Err(Error::NotTransverse(fmt_point(&p.at(l))));
                    }
                    _ => {
                        let at = lo.or(hi).unwrap_or_else(|| q(0));
                        return Err(Error::InfiniteIntersection(format!(
                            "the curves share a segment through {}",
                            fmt_point(&p.at(&at))
                        )));
                    }
                }
            }
            let lam = qcross(&off, r.dir) / q(c);
            let mu = qcross(&off, p.dir) / q(c);
            if !within(&lam, &p.lo(), &p.hi()) || !within(&mu, &r.lo(), &r.hi()) {
                continue;
            }
            let pt = p.at(&lam);
            if on_end(&lam, &p.lo(), &p.hi()) || on_end(&mu, &r.lo(), &r.hi()) {
                return Err(Error::NotTransverse(fmt_point(&pt)));
            }
            out.push(TransversePoint {
                location: pt,
                binomials: [p, r]
                    .iter()
                    .map(|x| Binomial {
                        s: x.dual[0].clone(),
                        t: x.dual[1].clone(),
                        signs: x.signs,
                    })
                    .collect(),
                transverse: true,
            });
        }
    }
    out.sort_by(|x, y| x.location.cmp(&y.location));
    Ok(out)
}

trait ZeroQ {
    fn is_zero_q(&self) -> bool;
}

impl ZeroQ for Q {
    fn is_zero_q(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// `|det(s_i − t_i)|`, the number of solutions of the initial binomial
/// system over an algebraically closed field.
pub fn m_k(p: &TransversePoint) -> Result<u32> {
    let rows: Vec<[i64; 2]> = p
        .binomials
        .iter()
        .map(|b| [b.s[0] as i64 - b.t[0] as i64, b.s[1] as i64 - b.t[1] as i64])
        .collect();
    let [r0, r1] = rows[..] else {
        return Err(Error::Dimension("intersection multiplicities need two binomials".into()));
    };
    let d = cross(r0, r1).unsigned_abs() as u32;
    if d == 0 {
        return Err(Error::NotTransverse(format!(
            "{} (parallel binomials)",
            fmt_point(&p.location)
        )));
    }
    Ok(d)
}

/// 1 when every binomial has coefficients of opposite sign after
/// `x_i ↦ h_i x_i`, else 0.
pub fn m_s(p: &TransversePoint, h: &[i8]) -> u32 {
    let sgn = |e: &Exp, s: i8| -> i8 {
        e.iter().zip(h).fold(s, |acc, (k, hi)| if k % 2 == 1 { acc * hi } else { acc })
    };
    let alternating = p
        .binomials
        .iter()
        .all(|b| sgn(&b.s, b.signs[0]) * sgn(&b.t, b.signs[1]) < 0);
    alternating as u32
}

/// The count of solutions with valuation and sign `h` of a system whose
/// tropical curves meet transversally: `m^K` over `T`, `m^S` over `TR`,
/// and 0 when `ν(h)` is not an intersection point.
pub fn transverse_case_n(f: &[HPoly], h: &[HyperValue]) -> Result<u32> {
    let field = f.first().map(HPoly::field).ok_or(Error::ZeroPolynomial)?;
    if f.iter().any(|p| p.field() != field) || !field.is_ext() {
        return Err(Error::FieldMismatch("the system must be over one of T, TR".into()));
    }
    if h.len() != 2 || h.iter().any(|x| x.is_zero()) {
        return Err(Error::Shape("h must be a point with 2 nonzero coordinates".into()));
    }
    let loc = [h[0].exponent().unwrap().clone(), h[1].exponent().unwrap().clone()];
    let pts = transverse_intersections(f)?;
    let Some(p) = pts.iter().find(|p| p.location == loc) else {
        return Ok(0);
    };
    match field {
        HyperfieldId::T => m_k(p),
        _ => Ok(m_s(p, &[h[0].angular(), h[1].angular()])),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonReport {
    pub value: u32,
    pub height_bound: u32,
    pub lifts_visited: usize,
    pub lifts_transverse: usize,
    /// A lift attaining the value.
    #[serde(skip)]
    pub witness: Option<Vec<HPoly>>,
}

pub const EPSILON_CAP: usize = 4_000_000;

/// Height slots of a lift: the first polynomial has `n + 1` affinely
/// independent support points fixed at height 0 (using scaling and
/// translation), every other polynomial one point.
fn free_slots(f: &[HPoly]) -> Vec<Vec<bool>> {
    f.iter()
        .enumerate()
        .map(|(i, p)| {
            let supp = p.support();
            let mut pinned = vec![false; supp.len()];
            pinned[0] = true;
            if i == 0 {
                let mut chosen = vec![0usize];
                for (k, e) in supp.iter().enumerate().skip(1) {
                    if chosen.len() == 3 {
                        break;
                    }
                    let d = |j: usize| [supp[j][0] as i64 - supp[0][0] as i64, supp[j][1] as i64 - supp[0][1] as i64];
                    let dk = [e[0] as i64 - supp[0][0] as i64, e[1] as i64 - supp[0][1] as i64];
                    let independent = match chosen.len() {
                        1 => dk != [0, 0],
                        _ => cross(d(chosen[1]), dk) != 0,
                    };
                    if independent {
                        chosen.push(k);
                        pinned[k] = true;
                    }
                }
            }
            pinned.into_iter().map(|p| !p).collect()
        })
        .collect()
}

fn height_vectors(free: &[bool], bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &f in free {
        let range: Vec<i64> = if f { (-bound..=bound).collect() } else { vec![0] };
        out = out
            .into_iter()
            .flat_map(|v| {
                range.iter().map(move |&h| {
                    let mut w = v.clone();
                    w.push(h);
                    w
                })
            })
            .collect();
    }
    out
}

fn tr_lift(p: &HPoly, heights: &[i64]) -> Result<HPoly> {
    let terms: Vec<(Exp, i8, Q)> = p
        .support()
        .into_iter()
        .zip(heights)
        .map(|(e, &h)| {
            let s = p.sign_at(&e);
            (e, s, q(h))
        })
        .collect();
    lift(HyperfieldId::TR, p.nvars(), &terms)
}

/// Largest `Σ m^S` over lifts of `f` to `TR` with heights in `{-B..B}`
/// whose curves meet transversally, counting intersection points in the
/// orthant `h`. A lower bound for the number of solutions with signs `h`.
pub fn epsilon_n(f: &[HPoly], h: &[i8], height_bound: u32) -> Result<EpsilonReport> {
    if f.len() != 2 || f.iter().any(|p| p.nvars() != 2) {
        return Err(Error::Dimension("epsilon-N is implemented for 2 equations in 2 variables".into()));
    }
    if f.iter().any(|p| p.field() != HyperfieldId::S) {
        return Err(Error::UnsupportedField("epsilon-N takes sign polynomials".into()));
    }
    if f.iter().any(HPoly::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    if h.len() != 2 || h.iter().any(|s| *s != 1 && *s != -1) {
        return Err(Error::Shape("h must have 2 nonzero signs".into()));
    }
    let slots = free_slots(f);
    let side = 2 * height_bound as usize + 1;
    let free: u32 = slots.iter().flatten().filter(|f| **f).count() as u32;
    let count = side.checked_pow(free).unwrap_or(usize::MAX);
    if count > EPSILON_CAP {
        return Err(Error::CapExceeded { count, cap: EPSILON_CAP });
    }
    let b = height_bound as i64;
    let lifts: Vec<Vec<(HPoly, Vec<Piece>)>> = f
        .iter()
        .zip(&slots)
        .map(|(p, s)| {
            height_vectors(s, b)
                .into_iter()
                .map(|hv| {
                    let l = tr_lift(p, &hv)?;
                    let pc = pieces(&l)?;
                    Ok((l, pc))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = EpsilonReport {
        value: 0,
        height_bound,
        lifts_visited: 0,
        lifts_transverse: 0,
        witness: None,
    };
    for (l0, p0) in &lifts[0] {
        for (l1, p1) in &lifts[1] {
            report.lifts_visited += 1;
            let Ok(pts) = intersect_pieces(p0, p1) else {
                continue;
            };
            report.lifts_transverse += 1;
            let v: u32 = pts.iter().map(|p| m_s(p, h)).sum();
            if v > report.value || report.witness.is_none() {
                report.value = report.value.max(v);
                report.witness = Some(vec![l0.clone(), l1.clone()]);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemBoundReport {
    pub lower: Option<u32>,
    pub upper: Option<u32>,
    pub exact: Option<u32>,
    pub notes: Vec<String>,
}

/// Default height bound for the ε-N search inside [`system_bound`]; it is
/// lowered until the search fits [`EPSILON_CAP`].
pub const DEFAULT_HEIGHT_BOUND: u32 = 8;

/// Whether `f(h_1 x_1, …, h_n x_n)` has all coefficients of one sign.
fn sign_constant(f: &HPoly, h: &[i8]) -> bool {
    let signs: Vec<i8> = f
        .terms()
        .map(|(e, c)| e.iter().zip(h).fold(c.angular(), |acc, (k, s)| if k % 2 == 1 { acc * s } else { acc }))
        .collect();
    signs.iter().all(|s| *s == signs[0])
}

/// Bounds on the number of solutions of `f = 0` with sign (or signed
/// valuation) `h`.
pub fn system_bound(f: &[HPoly], h: &[HyperValue]) -> Result<SystemBoundReport> {
    let n = f.len();
    let field = f.first().map(HPoly::field).ok_or(Error::ZeroPolynomial)?;
    if f.iter().any(|p| p.field() != field || p.nvars() != n) {
        return Err(Error::Shape("need n polynomials in n variables over one field".into()));
    }
    if h.len() != n || h.iter().any(HyperValue::is_zero) {
        return Err(Error::Shape(format!("h must have {n} nonzero coordinates")));
    }
    let signs: Vec<i8> = h.iter().map(HyperValue::angular).collect();
    let mut rep = SystemBoundReport {
        lower: None,
        upper: None,
        exact: None,
        notes: vec![],
    };
    let signed = matches!(field, HyperfieldId::S | HyperfieldId::TR);
    if signed {
        if let Some(i) = f.iter().position(|p| sign_constant(p, &signs)) {
            rep.exact = Some(0);
            rep.lower = Some(0);
            rep.notes.push(format!(
                "equation {} has no sign change in this orthant, so no solutions exist and any larger bound is not tight",
                i + 1
            ));
        }
    }
    // Resultant bound on the angular parts.
    let base: Vec<HPoly> = f
        .iter()
        .map(|p| {
            if field.is_ext() {
                p.apply_morphism(crate::hyperfield::Morphism::Ac)
            } else {
                Ok(p.clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if n <= 2 {
        let r = resultant_sign_report(&base, &signs)?;
        rep.upper = Some(r.bound);
        rep.notes.push(
            "genericity of the coefficients is not checked; the resultant bound holds regardless".into(),
        );
    }
    match field {
        HyperfieldId::S if n == 2 => {
            let supp_free: u32 = free_slots(&base).iter().flatten().filter(|f| **f).count() as u32;
            let mut b = DEFAULT_HEIGHT_BOUND;
            while b > 1 && (2 * b as usize + 1).saturating_pow(supp_free) > EPSILON_CAP {
                b -= 1;
            }
            let e = epsilon_n(&base, &signs, b)?;
            rep.lower = Some(rep.lower.map_or(e.value, |l| l.max(e.value)));
            rep.notes.push(format!("epsilon-N searched heights up to {b}"));
        }
        HyperfieldId::T | HyperfieldId::TR if n == 2 => match transverse_case_n(f, h) {
            Ok(v) => {
                rep.exact = Some(v);
                rep.lower = Some(v);
                rep.upper = Some(v);
            }
            Err(Error::NotTransverse(p)) => rep.notes.push(format!("curves are not transverse at {p}")),
            Err(Error::InfiniteIntersection(p)) => rep.notes.push(format!("curves are not transverse: {p}")),
            Err(e) => return Err(e),
        },
        _ => {}
    }
    if let (Some(l), Some(u)) = (rep.lower, rep.upper) {
        if l > u {
            return Err(Error::Arithmetic(format!("lower bound {l} exceeds upper bound {u}")));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
