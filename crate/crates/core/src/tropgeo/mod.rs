//! Regular subdivisions of Newton polytopes, tropical plane curves with
//! sign enrichments, initial forms, and the geometric and perturbation
//! multiplicities built on them. Min-plus convention throughout.

mod gmult;
mod pmult;
mod quotient;
pub mod svg;

pub use gmult::{gmult, line_data, GmultResult, LineFamily, LineSummand};
pub use pmult::{pmult, strictly_convex_subdivisions, PmultMode, PmultOptions, PmultReport};
pub use quotient::{ext_quotient, mult_tropext, tropical_product, TropMultReport};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperfield::{fmt_exponent, Base, HyperValue, HyperfieldId, Q};
use crate::polyring::{Exp, HPoly};

/// A maximal cell of a regular subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Indices of the cell's vertices: counterclockwise in the plane,
    /// ascending along a line.
    pub vertices: Vec<usize>,
    /// Indices of every support point on the cell, sorted.
    pub points: Vec<usize>,
    /// The lower face is `height(m) = offset + slope·m` on the cell.
    #[serde(serialize_with = "ser_qs")]
    pub slope: Vec<Q>,
    #[serde(serialize_with = "ser_q")]
    pub offset: Q,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_qs<S: serde::Serializer>(x: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

/// The subdivision of a support set induced by heights (valuations).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonSubdivision {
    pub nvars: usize,
    pub points: Vec<Exp>,
    #[serde(serialize_with = "ser_qs")]
    pub heights: Vec<Q>,
    /// Affine dimension of the support.
    pub dim: usize,
    pub cells: Vec<Cell>,
}

impl NewtonSubdivision {
    /// Indices of points that are vertices of some cell.
    pub fn vertex_indices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .cells
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        set.into_iter().collect()
    }

    /// Every support point is a vertex of the subdivision.
    pub fn is_strictly_convex(&self) -> bool {
        self.vertex_indices().len() == self.points.len()
    }

    /// Combinatorial type: the vertex sets of the cells.
    pub fn cell_key(&self) -> Vec<Vec<Exp>> {
        let mut out: Vec<Vec<Exp>> = self
            .cells
            .iter()
            .map(|c| {
                let mut v: Vec<Exp> = c.vertices.iter().map(|&i| self.points[i].clone()).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.points.iter().position(|p| p.as_slice() == e)
    }
}

impl fmt::Display for NewtonSubdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cells.iter().enumerate() {
            let verts: Vec<String> = c.vertices.iter().map(|&v| exp_text(&self.points[v])).collect();
            let slope: Vec<String> = c.slope.iter().map(fmt_exponent).collect();
            write!(f, "cell {i}: {}  slope ({})", verts.join(" "), slope.join(", "))?;
            let extra: Vec<String> = c
                .points
                .iter()
                .filter(|p| !c.vertices.contains(p))
                .map(|&p| exp_text(&self.points[p]))
                .collect();
            if !extra.is_empty() {
                write!(f, "  also {}", extra.join(" "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) fn exp_text(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Valuation of each coefficient: the exponent over a tropical extension,
/// 0 over a base field.
fn heights_of(f: &HPoly) -> (Vec<Exp>, Vec<Q>) {
    let mut pts = Vec::new();
    let mut hs = Vec::new();
    for (e, v) in f.terms() {
        pts.push(e.clone());
        hs.push(v.exponent().cloned().unwrap_or_else(Q::zero));
    }
    (pts, hs)
}

/// Common-denominator integer heights, small enough for exact `i128`
/// orientation tests.
fn integer_heights(hs: &[Q]) -> Result<Vec<i128>> {
    let mut den = BigInt::one();
    for h in hs {
        den = den.lcm(h.denom());
    }
    let limit = BigInt::from(1u64 << 62);
    hs.iter()
        .map(|h| {
            let v = h.numer() * (&den / h.denom());
            if v.abs() > limit {
                return Err(Error::Arithmetic("heights too large for exact hull".into()));
            }
            Ok(v.to_i128().unwrap())
        })
        .collect()
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counterclockwise convex hull vertices of planar points (by index),
/// collinear points dropped.
/// Convex hull vertices, counterclockwise.
pub(crate) fn hull_points(pts: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let idx: Vec<usize> = (0..pts.len()).collect();
    hull_2d(pts, &idx).into_iter().map(|i| pts[i]).collect()
}

fn hull_2d(pts: &[[i64; 2]], idx: &[usize]) -> Vec<usize> {
    let mut ids: Vec<usize> = idx.to_vec();
    ids.sort_by_key(|&i| pts[i]);
    ids.dedup_by_key(|i| pts[*i]);
    if ids.len() < 3 {
        return ids;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &ids {
        while lower.len() >= 2
            && cross(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i]) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in ids.iter().rev() {
        while upper.len() >= 2
            && cross(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i]) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Lower faces of the lifted planar point set as sets of point indices.
pub(crate) fn lower_faces_2d(pts: &[[i64; 2]], hs: &[i128]) -> Vec<Vec<usize>> {
    let n = pts.len();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            'next: for k in j + 1..n {
                let c = cross(pts[i], pts[j], pts[k]);
                if c == 0 {
                    continue;
                }
                let (a, b, cc) = if c > 0 { (i, j, k) } else { (i, k, j) };
                let o = [pts[a][0] as i128, pts[a][1] as i128, hs[a]];
                let u = [
                    pts[b][0] as i128 - o[0],
                    pts[b][1] as i128 - o[1],
                    hs[b] - o[2],
                ];
                let v = [
                    pts[cc][0] as i128 - o[0],
                    pts[cc][1] as i128 - o[1],
                    hs[cc] - o[2],
                ];
                let nrm = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                let mut on = Vec::new();
                for p in 0..n {
                    let w = [
                        pts[p][0] as i128 - o[0],
                        pts[p][1] as i128 - o[1],
                        hs[p] - o[2],
                    ];
                    let d = nrm[0] * w[0] + nrm[1] * w[1] + nrm[2] * w[2];
                    if d < 0 {
                        continue 'next;
                    }
                    if d == 0 {
                        on.push(p);
                    }
                }
                faces.insert(on);
            }
        }
    }
    faces.into_iter().collect()
}

/// Plane `z = offset + slope·m` through three non-collinear lifted points.
fn plane_through(p: [[i64; 2]; 3], h: [&Q; 3]) -> (Vec<Q>, Q) {
    let q = |x: i64| Q::from_integer(BigInt::from(x));
    let (x1, y1) = (q(p[1][0] - p[0][0]), q(p[1][1] - p[0][1]));
    let (x2, y2) = (q(p[2][0] - p[0][0]), q(p[2][1] - p[0][1]));
    let (z1, z2) = (h[1] - h[0], h[2] - h[0]);
    let det = &x1 * &y2 - &x2 * &y1;
    let a = (&z1 * &y2 - &z2 * &y1) / &det;
    let b = (&x1 * &z2 - &x2 * &z1) / &det;
    let off = h[0] - &a * q(p[0][0]) - &b * q(p[0][1]);
    (vec![a, b], off)
}

/// Regular subdivision of `points` lifted by `heights` (any rationals).
pub fn subdivision_of(nvars: usize, points: Vec<Exp>, heights: Vec<Q>) -> Result<NewtonSubdivision> {
    if nvars > 2 {
        return Err(Error::Dimension(format!(
            "subdivisions need at most 2 variables, got {nvars}"
        )));
    }
    if points.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let planar: Vec<[i64; 2]> = points
        .iter()
        .map(|e| [e.first().copied().unwrap_or(0) as i64, e.get(1).copied().unwrap_or(0) as i64])
        .collect();
    let ih = integer_heights(&heights)?;
    let p0 = planar[0];
    let dir = planar.iter().find(|p| **p != p0).map(|p| [p[0] - p0[0], p[1] - p0[1]]);
    let dim = match dir {
        None => 0,
        Some(d) => {
            if planar.iter().all(|p| cross(p0, [p0[0] + d[0], p0[1] + d[1]], *p) == 0) {
                1
            } else {
                2
            }
        }
    };
    let mut cells = Vec::new();
    match dim {
        0 => cells.push(Cell {
            vertices: vec![0],
            points: vec![0],
            slope: vec![Q::zero(); nvars],
            offset: heights[0].clone(),
        }),
        1 => {
            let d = dir.unwrap();
            let g = d[0].gcd(&d[1]);
            let u = [d[0] / g, d[1] / g];
            let t: Vec<i64> = planar
                .iter()
                .map(|p| ((p[0] - p0[0]) * u[0] + (p[1] - p0[1]) * u[1]) / (u[0] * u[0] + u[1] * u[1]))
                .collect();
            let mut order: Vec<usize> = (0..points.len()).collect();
            order.sort_by_key(|&i| t[i]);
            // Lower convex chain of (t, h).
            let mut chain: Vec<usize> = Vec::new();
            for &i in &order {
                while chain.len() >= 2 {
                    let a = chain[chain.len() - 2];
                    let b = chain[chain.len() - 1];
                    let lhs = (ih[b] - ih[a]) * (t[i] - t[a]) as i128;
                    let rhs = (ih[i] - ih[a]) * (t[b] - t[a]) as i128;
                    if lhs >= rhs {
                        chain.pop();
                    } else {
                        break;
                    }
                }
                chain.push(i);
            }
            let uu = Q::from_integer(BigInt::from(u[0] * u[0] + u[1] * u[1]));
            for w in chain.windows(2) {
                let (a, b) = (w[0], w[1]);
                let dt = Q::from_integer(BigInt::from(t[b] - t[a]));
                let s = (&heights[b] - &heights[a]) / &dt / &uu;
                let mut slope = vec![
                    &s * Q::from_integer(BigInt::from(u[0])),
                    &s * Q::from_integer(BigInt::from(u[1])),
                ];
                slope.truncate(nvars);
                let dot: Q = slope
                    .iter()
                    .zip(&planar[a])
                    .map(|(x, y)| x * Q::from_integer(BigInt::from(*y)))
                    .sum();
                let offset = &heights[a] - dot;
                let mut on: Vec<usize> = (0..points.len())
                    .filter(|&p| {
                        t[p] >= t[a]
                            && t[p] <= t[b]
                            && (ih[p] - ih[a]) * (t[b] - t[a]) as i128
                                == (ih[b] - ih[a]) * (t[p] - t[a]) as i128
                    })
                    .collect();
                on.sort();
                cells.push(Cell {
                    vertices: vec![a, b],
                    points: on,
                    slope,
                    offset,
                });
            }
        }
        _ => {
            for face in lower_faces_2d(&planar, &ih) {
                let verts = hull_2d(&planar, &face);
                let (slope, offset) = plane_through(
                    [planar[verts[0]], planar[verts[1]], planar[verts[2]]],
                    [&heights[verts[0]], &heights[verts[1]], &heights[verts[2]]],
                );
                cells.push(Cell {
                    vertices: verts,
                    points: face,
                    slope,
                    offset,
                });
            }
        }
    }
    let key = |c: &Cell| {
        let mut v: Vec<&Exp> = c.vertices.iter().map(|&i| &points[i]).collect();
        v.sort();
        v.into_iter().cloned().collect::<Vec<Exp>>()
    };
    cells.sort_by_key(key);
    Ok(NewtonSubdivision {
        nvars,
        points,
        heights,
        dim,
        cells,
    })
}

/// Subdivision of the support of `f` induced by its valuations (all zero
/// over a base field).
pub fn newton_subdivision(f: &HPoly) -> Result<NewtonSubdivision> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (pts, hs) = heights_of(f);
    subdivision_of(f.nvars(), pts, hs)
}

/// Monomials that are vertices of the Newton subdivision.
pub fn essential_monomials(f: &HPoly) -> Result<Vec<Exp>> {
    let sd = newton_subdivision(f)?;
    Ok(sd.vertex_indices().into_iter().map(|i| sd.points[i].clone()).collect())
}

/// `min_m (val(c_m) + ⟨m, x⟩)`. Base-field coefficients count as
/// valuation 0.
pub fn pf_eval(f: &HPoly, x: &[Q]) -> Result<Q> {
    if x.len() != f.nvars() {
        return Err(Error::Shape(format!(
            "point has {} coordinates, polynomial has {} variables",
            x.len(),
            f.nvars()
        )));
    }
    let (pts, hs) = heights_of(f);
    pts.iter()
        .zip(hs)
        .map(|(e, h)| h + dot_exp(e, x))
        .min()
        .ok_or(Error::ZeroPolynomial)
}

pub(crate) fn dot_exp(e: &[u32], x: &[Q]) -> Q {
    e.iter()
        .zip(x)
        .map(|(a, b)| b * Q::from_integer(BigInt::from(*a)))
        .sum()
}

/// `in_w(f)`: the angular parts of the terms where `val + ⟨m, w⟩` is
/// minimal, as a polynomial over the base hyperfield.
pub fn initial_form(f: &HPoly, w: &[Q]) -> Result<HPoly> {
    let field = f.field();
    if !field.is_ext() {
        return Err(Error::UnsupportedField(format!(
            "initial forms need a tropical extension, got {field}"
        )));
    }
    let m = pf_eval(f, w)?;
    let base = field.base_field();
    let mut out = HPoly::zero(base, f.nvars());
    for (e, v) in f.terms() {
        let val = v.exponent().unwrap() + dot_exp(e, w);
        if val == m {
            out.set(e.clone(), HyperValue::sign(base, v.angular()));
        }
    }
    Ok(out)
}

/// An edge of a tropical curve: bounded between two vertices, or a ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveEdge {
    pub start: usize,
    pub end: Option<usize>,
    /// Primitive integer direction, pointing away from `start`.
    pub direction: [i64; 2],
    pub weight: u32,
    /// Subdivision point indices at the ends of the dual edge.
    pub dual: [usize; 2],
}

/// A weighted balanced polyhedral curve in the plane. Vertex `i` is dual
/// to cell `i` of the subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalCurve {
    #[serde(serialize_with = "ser_points")]
    pub vertices: Vec<[Q; 2]>,
    pub edges: Vec<CurveEdge>,
}

fn ser_points<S: serde::Serializer>(
    x: &[[Q; 2]],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|p| [p[0].to_string(), p[1].to_string()]))
}

impl TropicalCurve {
    /// Sum of weighted outgoing directions at each vertex is zero.
    pub fn is_balanced(&self) -> bool {
        let mut sums = vec![[0i64; 2]; self.vertices.len()];
        for e in &self.edges {
            let w = e.weight as i64;
            sums[e.start][0] += w * e.direction[0];
            sums[e.start][1] += w * e.direction[1];
            if let Some(t) = e.end {
                sums[t][0] -= w * e.direction[0];
                sums[t][1] -= w * e.direction[1];
            }
        }
        sums.iter().all(|s| *s == [0, 0])
    }

    /// Edges leaving vertex `v`, with their outgoing directions.
    pub fn outgoing(&self, v: usize) -> Vec<(usize, [i64; 2])> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.start == v {
                out.push((i, e.direction));
            } else if e.end == Some(v) {
                out.push((i, [-e.direction[0], -e.direction[1]]));
            }
        }
        out
    }
}

pub(crate) fn fmt_point(p: &[Q; 2]) -> String {
    format!("({}, {})", p[0], p[1])
}

impl fmt::Display for TropicalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(f, "vertex {i}: {}", fmt_point(v))?;
        }
        for e in &self.edges {
            let d = format!("({}, {})", e.direction[0], e.direction[1]);
            match e.end {
                Some(t) => writeln!(
                    f,
                    "edge {} -> {} direction {d} weight {}",
                    e.start, t, e.weight
                )?,
                None => writeln!(f, "ray {} direction {d} weight {}", e.start, e.weight)?,
            }
        }
        Ok(())
    }
}

fn primitive(v: [Q; 2]) -> [i64; 2] {
    // Scale a nonzero rational vector to a primitive integer vector.
    let den = v[0].denom().lcm(v[1].denom());
    let a = v[0].numer() * (&den / v[0].denom());
    let b = v[1].numer() * (&den / v[1].denom());
    let g = a.gcd(&b);
    [(a / &g).to_i64().unwrap(), (b / &g).to_i64().unwrap()]
}

/// The curve dual to a full-dimensional planar subdivision.
pub fn curve_of(sd: &NewtonSubdivision) -> Result<TropicalCurve> {
    if sd.nvars != 2 {
        return Err(Error::Dimension(format!(
            "tropical curves need 2 variables, got {}",
            sd.nvars
        )));
    }
    if sd.dim < 2 {
        return Ok(TropicalCurve {
            vertices: vec![],
            edges: vec![],
        });
    }
    let vertices: Vec<[Q; 2]> = sd
        .cells
        .iter()
        .map(|c| [-c.slope[0].clone(), -c.slope[1].clone()])
        .collect();
    let pt = |i: usize| [sd.points[i][0] as i64, sd.points[i][1] as i64];
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ci, c) in sd.cells.iter().enumerate() {
        let k = c.vertices.len();
        for t in 0..k {
            let (a, b) = (c.vertices[t], c.vertices[(t + 1) % k]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(ci);
        }
    }
    let mut edges = Vec::new();
    for ((a, b), cs) in by_edge {
        let (pa, pb) = (pt(a), pt(b));
        let d = [pb[0] - pa[0], pb[1] - pa[1]];
        let weight = d[0].gcd(&d[1]) as u32;
        match cs.as_slice() {
            [s, t] => {
                let dir = primitive([&vertices[*t][0] - &vertices[*s][0], &vertices[*t][1] - &vertices[*s][1]]);
                edges.push(CurveEdge {
                    start: *s,
                    end: Some(*t),
                    direction: dir,
                    weight,
                    dual: [a, b],
                });
            }
            [s] => {
                let g = weight as i64;
                let mut nrm = [-d[1] / g, d[0] / g];
                let cell = &sd.cells[*s];
                let inside = cell.vertices.iter().map(|&v| pt(v)).find(|p| cross(pa, pb, *p) != 0).unwrap();
                let side = nrm[0] * (inside[0] - pa[0]) + nrm[1] * (inside[1] - pa[1]);
                if side < 0 {
                    nrm = [-nrm[0], -nrm[1]];
                }
                edges.push(CurveEdge {
                    start: *s,
                    end: None,
                    direction: nrm,
                    weight,
                    dual: [a, b],
                });
            }
            _ => unreachable!("an edge lies in one or two cells"),
        }
    }
    Ok(TropicalCurve { vertices, edges })
}

pub fn tropical_curve(f: &HPoly) -> Result<TropicalCurve> {
    curve_of(&newton_subdivision(f)?)
}

/// A tropical curve with a label in `H*` on each complement region. Regions
/// correspond to essential monomials; `labels[i]` is the angular part of the
/// coefficient at subdivision point `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnrichedCurve {
    #[serde(skip)]
    pub poly: HPoly,
    pub subdivision: NewtonSubdivision,
    pub curve: TropicalCurve,
    pub labels: Vec<i8>,
    #[serde(skip)]
    pub base: Base,
}

impl EnrichedCurve {
    pub fn label_of(&self, e: &[u32]) -> Option<i8> {
        self.subdivision.index_of(e).map(|i| self.labels[i])
    }
}

pub fn enriched_curve(f: &HPoly) -> Result<EnrichedCurve> {
    if f.nvars() != 2 {
        return Err(Error::Dimension(format!(
            "tropical curves need 2 variables, got {}",
            f.nvars()
        )));
    }
    let sd = newton_subdivision(f)?;
    let curve = curve_of(&sd)?;
    let labels = sd.points.iter().map(|e| f.coeff(e).angular()).collect();
    Ok(EnrichedCurve {
        poly: f.clone(),
        subdivision: sd,
        curve,
        labels,
        base: f.field().base(),
    })
}

/// `A + B`: union of supports with added weights and multiplied labels,
/// realized as the curve of the tropical product of the defining
/// polynomials.
pub fn curve_sum(a: &EnrichedCurve, b: &EnrichedCurve) -> Result<EnrichedCurve> {
    enriched_curve(&tropical_product(&a.poly, &b.poly)?)
}

/// A polynomial over `field` with the given signs and valuations.
pub fn lift(field: HyperfieldId, nvars: usize, terms: &[(Exp, i8, Q)]) -> Result<HPoly> {
    HPoly::from_terms(
        field,
        nvars,
        terms
            .iter()
            .map(|(e, s, h)| HyperValue::unit(field, *s, h.clone()).map(|v| (e.clone(), v)))
            .collect::<Result<Vec<_>>>()?,
    )
}

#[cfg(test)]
mod tests;
