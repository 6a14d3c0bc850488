//! Sparse mixed resultants with symbolic coefficients.
//!
//! The resultant of `f_0 = 1 + Σ y_i x_i` and `f_1, …, f_n` is computed as
//! the determinant of a Canny–Emiris matrix built from a coherent mixed
//! subdivision of `A_0 + ⋯ + A_n`. The determinant is a multiple `R·E` of
//! the resultant where `E` does not involve the `y_i`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperfield::{q, HyperValue, HyperfieldId, Q};
use crate::multiplicity::{mult_single, setmult_bound, SetMultMode, SignSet, SignSetPoly};
use crate::polyring::{parse_intpoly, Exp, HPoly, IntPoly, RatPoly};

/// Names of the auxiliary variables `y_i` of `f_0`.
pub fn y_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["u".into()],
        2 => vec!["u".into(), "v".into()],
        _ => (1..=n).map(|i| format!("y{i}")).collect(),
    }
}

/// Supports `A_0, …, A_n` with one coefficient per support point.
/// `polys[0]` is always `1 + Σ y_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSystem {
    pub nvars: usize,
    pub y: Vec<String>,
    pub polys: Vec<Vec<(Exp, IntPoly)>>,
}

impl SupportSystem {
    /// `f_1, …, f_n` given as `(exponent, coefficient)` lists.
    pub fn new(nvars: usize, polys: Vec<Vec<(Exp, IntPoly)>>) -> Result<Self> {
        if polys.len() != nvars {
            return Err(Error::Shape(format!(
                "{} polynomials in {nvars} variables",
                polys.len()
            )));
        }
        let y = y_names(nvars);
        let mut f0 = vec![(vec![0; nvars], IntPoly::one())];
        for (i, name) in y.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            f0.push((e, IntPoly::var(name)));
        }
        let mut all = vec![f0];
        for p in polys {
            let mut p: Vec<(Exp, IntPoly)> = p.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            p.sort_by(|a, b| a.0.cmp(&b.0));
            if p.is_empty() {
                return Err(Error::ZeroPolynomial);
            }
            for (e, c) in &p {
                if e.len() != nvars {
                    return Err(Error::Shape("exponent length differs from nvars".into()));
                }
                if c.symbols().iter().any(|s| y.contains(s)) {
                    return Err(Error::Invalid(format!(
                        "coefficient `{c}` uses a reserved name from {y:?}"
                    )));
                }
            }
            all.push(p);
        }
        Ok(SupportSystem { nvars, y, polys: all })
    }

    /// Parse `f_1, …, f_n` as integer polynomials, splitting off `vars`.
    pub fn from_text(polys: &[&str], vars: &[&str]) -> Result<Self> {
        let mut out = Vec::new();
        for t in polys {
            let p = parse_intpoly(t)?;
            out.push(p.coefficients_in(vars).into_iter().collect());
        }
        SupportSystem::new(vars.len(), out)
    }

    /// One fresh symbol `c{i}_{a}` per support point; the first coefficient
    /// of each polynomial is set to 1.
    pub fn symbolic(supports: &[Vec<Exp>]) -> Result<Self> {
        let n = supports.first().map_or(0, |s| s.first().map_or(0, Vec::len));
        let polys = supports
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut s = s.clone();
                s.sort();
                s.dedup();
                s.iter()
                    .enumerate()
                    .map(|(k, e)| {
                        let c = if k == 0 { IntPoly::one() } else { IntPoly::var(&coeff_symbol(i + 1, e)) };
                        (e.clone(), c)
                    })
                    .collect()
            })
            .collect();
        SupportSystem::new(n, polys)
    }

    pub fn supports(&self) -> Vec<Vec<Exp>> {
        self.polys.iter().map(|p| p.iter().map(|(e, _)| e.clone()).collect()).collect()
    }
}

/// Symbol used by [`SupportSystem::symbolic`] for the coefficient of `x^a`
/// in `f_i`.
pub fn coeff_symbol(i: usize, a: &[u32]) -> String {
    let parts: Vec<String> = a.iter().map(u32::to_string).collect();
    format!("c{i}_{}", parts.join("_"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixRow {
    /// Index into `polys` (0 is the auxiliary linear form).
    pub poly: usize,
    /// The row is `x^shift · f_poly`.
    pub shift: Exp,
}

/// A square matrix whose rows are monomial multiples of the `f_i` and whose
/// columns are lattice points of the shifted Minkowski sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantMatrix {
    pub rows: Vec<MatrixRow>,
    pub columns: Vec<Exp>,
    pub entries: Vec<Vec<IntPoly>>,
    pub y: Vec<String>,
    /// Index of the lifting used in the fixed sequence of liftings.
    pub lifting: usize,
    /// Number of mixed cells of `A_1, …, A_n` meeting a vertex of `A_0`.
    pub mixed_cells: usize,
}

impl ResultantMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Rows contributed by each polynomial.
    pub fn row_counts(&self) -> Vec<usize> {
        let k = self.rows.iter().map(|r| r.poly).max().map_or(0, |m| m + 1);
        let mut out = vec![0; k];
        for r in &self.rows {
            out[r.poly] += 1;
        }
        out
    }
}

fn lifting_value(seed: usize, i: usize, a: &[u32]) -> i64 {
    // A fixed mixing function; liftings are tried in order until one is
    // generic for the supports at hand.
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ (seed as u64 + 1).wrapping_mul(0x2545_f491_4f6c_dd1d);
    h ^= (i as u64 + 1).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    for &x in a {
        h = (h ^ x as u64).wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 29;
    }
    (h % 1000) as i64 + 1
}

const SHIFTS: [(i64, i64); 4] = [(1, 1000), (1, 1731), (3, 2003), (7, 3001)];

fn shift_vector(k: usize, n: usize) -> Vec<Q> {
    (0..n)
        .map(|j| {
            let (a, b) = SHIFTS[(k + j) % SHIFTS.len()];
            Q::new(BigInt::from(a * (j as i64 + 1)), BigInt::from(b))
        })
        .collect()
}

/// Solve a square rational system; `None` when singular.
fn solve(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        rhs.swap(c, p);
        let inv = Q::one() / &m[c][c];
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..n {
                    let d = &f * &m[c][k];
                    m[r][k] -= d;
                }
                let d = &f * &rhs[c];
                rhs[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// A cell `F_0 + ⋯ + F_n` of the mixed subdivision (indices into `A_i`).
struct MixedCell {
    faces: Vec<Vec<usize>>,
}

fn rank_ok(pts: &[&Exp]) -> bool {
    // Affinely independent.
    if pts.len() <= 1 {
        return true;
    }
    let n = pts[0].len();
    let rows: Vec<Vec<Q>> = pts[1..]
        .iter()
        .map(|p| (0..n).map(|j| q(p[j] as i64 - pts[0][j] as i64)).collect())
        .collect();
    rank(rows) == pts.len() - 1
}

fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    go(0, len, k, &mut cur, &mut out);
    out
}

/// Fine mixed cells of the subdivision induced by the lifting, or `None`
/// when the lifting is not generic.
fn mixed_cells(supports: &[Vec<Exp>], seed: usize) -> Option<Vec<MixedCell>> {
    let n = supports[0][0].len();
    let k = supports.len();
    let lift: Vec<Vec<i64>> = supports
        .iter()
        .enumerate()
        .map(|(i, s)| s.iter().map(|a| lifting_value(seed, i, a)).collect())
        .collect();
    // Distribute the dimension `n` over the supports.
    let mut types: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &types {
            let used: usize = t.iter().sum();
            for d in 0..=(n - used) {
                let mut t2 = t.clone();
                t2.push(d);
                next.push(t2);
            }
        }
        types = next;
    }
    types.retain(|t| t.iter().sum::<usize>() == n);
    let mut cells = Vec::new();
    for t in types {
        let choices: Vec<Vec<Vec<usize>>> = t
            .iter()
            .zip(supports)
            .map(|(&d, s)| {
                subsets(s.len(), d + 1)
                    .into_iter()
                    .filter(|c| rank_ok(&c.iter().map(|&j| &s[j]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; k];
        'odometer: loop {
            let faces: Vec<Vec<usize>> = (0..k).map(|i| choices[i][idx[i]].clone()).collect();
            match cell_normal(supports, &lift, &faces, n) {
                Some(true) => cells.push(MixedCell { faces }),
                Some(false) => {}
                None => return None,
            }
            for i in 0..k {
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    continue 'odometer;
                }
                idx[i] = 0;
            }
            break;
        }
    }
    Some(cells)
}

/// Whether `faces` spans a lower cell; `None` when a tie shows the lifting
/// is not generic.
fn cell_normal(
    supports: &[Vec<Exp>],
    lift: &[Vec<i64>],
    faces: &[Vec<usize>],
    n: usize,
) -> Option<bool> {
    let k = supports.len();
    // Unknowns: w (n), c_i (k). Equations: ω(a) + <w,a> = c_i on F_i.
    let mut m = Vec::new();
    let mut rhs = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for &j in f {
            let a = &supports[i][j];
            let mut row: Vec<Q> = a.iter().map(|&x| q(x as i64)).collect();
            row.extend((0..k).map(|t| if t == i { q(-1) } else { q(0) }));
            m.push(row);
            rhs.push(q(-lift[i][j]));
        }
    }
    let Some(x) = solve(m, rhs) else {
        // The faces do not span a full-dimensional cell.
        return Some(false);
    };
    let w = &x[..n];
    for (i, s) in supports.iter().enumerate() {
        for (j, a) in s.iter().enumerate() {
            if faces[i].contains(&j) {
                continue;
            }
            let val = q(lift[i][j]) + a.iter().zip(w).map(|(&ai, wi)| q(ai as i64) * wi).sum::<Q>();
            let c = &x[n + i];
            if val < *c {
                return Some(false);
            }
            if val == *c {
                return None;
            }
        }
    }
    Some(true)
}

fn mixed_volume_2(a: &[Exp], b: &[Exp]) -> Q {
    let area = |pts: Vec<[i64; 2]>| -> Q {
        let h = crate::tropgeo::hull_points(&pts);
        if h.len() < 3 {
            return q(0);
        }
        let mut s = 0i64;
        for i in 0..h.len() {
            let (p, r) = (h[i], h[(i + 1) % h.len()]);
            s += p[0] * r[1] - p[1] * r[0];
        }
        Q::new(BigInt::from(s.abs()), BigInt::from(2))
    };
    let pa: Vec<[i64; 2]> = a.iter().map(|e| [e[0] as i64, e[1] as i64]).collect();
    let pb: Vec<[i64; 2]> = b.iter().map(|e| [e[0] as i64, e[1] as i64]).collect();
    let sum: Vec<[i64; 2]> = pa
        .iter()
        .flat_map(|p| pb.iter().map(move |r| [p[0] + r[0], p[1] + r[1]]))
        .collect();
    area(sum) - area(pa) - area(pb)
}

/// Mixed volume of the supports `A_1, …, A_n` for `n ≤ 2`.
pub fn mixed_volume(supports: &[Vec<Exp>]) -> Result<Q> {
    match supports {
        [a] => {
            let lo = a.iter().map(|e| e[0]).min().unwrap_or(0);
            let hi = a.iter().map(|e| e[0]).max().unwrap_or(0);
            Ok(q((hi - lo) as i64))
        }
        [a, b] => Ok(mixed_volume_2(a, b)),
        _ => Err(Error::Dimension("mixed volumes are implemented for n ≤ 2".into())),
    }
}

/// The Canny–Emiris matrix of `sys`. Fails with a domain error when the
/// mixed volume of `A_1, …, A_n` is zero, in which case the resultant is
/// constant.
pub fn canny_emiris_matrix(sys: &SupportSystem) -> Result<ResultantMatrix> {
    let n = sys.nvars;
    if !(1..=2).contains(&n) {
        return Err(Error::Dimension("sparse resultants need 1 or 2 variables".into()));
    }
    let supports = sys.supports();
    if mixed_volume(&supports[1..])?.is_zero() {
        return Err(Error::Domain(
            "the supports have mixed volume 0, so the resultant is constant".into(),
        ));
    }
    for seed in 0..16 {
        let Some(cells) = mixed_cells(&supports, seed) else {
            continue;
        };
        for k in 0..SHIFTS.len() {
            if let Some(m) = build_matrix(sys, &supports, &cells, seed, &shift_vector(k, n)) {
                return Ok(m);
            }
        }
    }
    Err(Error::Arithmetic("no generic lifting found for these supports".into()))
}

fn build_matrix(
    sys: &SupportSystem,
    supports: &[Vec<Exp>],
    cells: &[MixedCell],
    seed: usize,
    delta: &[Q],
) -> Option<ResultantMatrix> {
    let n = sys.nvars;
    let maxs: Vec<u32> = (0..n)
        .map(|j| supports.iter().map(|s| s.iter().map(|e| e[j]).max().unwrap()).sum())
        .collect();
    let mut points: Vec<Exp> = vec![vec![]];
    for &m in &maxs {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=m).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let mut rows = Vec::new();
    let mut columns = Vec::new();
    let mut mixed = BTreeSet::new();
    for p in points {
        let z: Vec<Q> = p.iter().zip(delta).map(|(&x, d)| q(x as i64) - d).collect();
        let mut found = None;
        for (ci, c) in cells.iter().enumerate() {
            match locate(supports, c, &z) {
                Some(true) => {
                    found = Some(ci);
                    break;
                }
                Some(false) => {}
                None => return None,
            }
        }
        let Some(ci) = found else {
            continue;
        };
        let c = &cells[ci];
        let i = (0..c.faces.len()).rev().find(|&i| c.faces[i].len() == 1)?;
        if i == 0 {
            mixed.insert(ci);
        }
        let a = &supports[i][c.faces[i][0]];
        let shift: Exp = p.iter().zip(a).map(|(x, y)| x - y).collect();
        rows.push(MatrixRow { poly: i, shift });
        columns.push(p);
    }
    let col_index: BTreeMap<&Exp, usize> = columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let size = columns.len();
    let mut entries = vec![vec![IntPoly::zero(); size]; size];
    for (r, row) in rows.iter().enumerate() {
        for (a, c) in &sys.polys[row.poly] {
            let col: Exp = a.iter().zip(&row.shift).map(|(x, y)| x + y).collect();
            let j = *col_index.get(&col)?;
            entries[r][j] = c.clone();
        }
    }
    // Auxiliary rows last so the `y_i` enter the elimination late.
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&r| (rows[r].poly == 0, r));
    let rows = order.iter().map(|&r| rows[r].clone()).collect();
    let entries = order.iter().map(|&r| entries[r].clone()).collect();
    Some(ResultantMatrix {
        rows,
        columns,
        entries,
        y: sys.y.clone(),
        lifting: seed,
        mixed_cells: mixed.len(),
    })
}

/// `Some(true)` when `z` is interior to the cell, `Some(false)` when it is
/// outside, `None` when it lies on the boundary.
fn locate(supports: &[Vec<Exp>], c: &MixedCell, z: &[Q]) -> Option<bool> {
    let n = z.len();
    let k = supports.len();
    let vars: Vec<(usize, usize)> = c
        .faces
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.iter().map(move |&j| (i, j)))
        .collect();
    let mut m = vec![vec![q(0); vars.len()]; n + k];
    for (col, &(i, j)) in vars.iter().enumerate() {
        for t in 0..n {
            m[t][col] = q(supports[i][j][t] as i64);
        }
        m[n + i][col] = q(1);
    }
    let mut rhs: Vec<Q> = z.to_vec();
    rhs.extend((0..k).map(|_| q(1)));
    let lam = solve(m, rhs)?;
    if lam.iter().any(|l| l.is_negative()) {
        return Some(false);
    }
    if lam.iter().any(Zero::is_zero) {
        return None;
    }
    Some(true)
}

/// Determinant by fraction-free elimination; pivots are the first nonzero
/// entry of each column.
pub fn symbolic_determinant(m: &ResultantMatrix) -> IntPoly {
    determinant(m.entries.clone())
}

pub fn determinant(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return IntPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        if k + 1 == n {
            break;
        }
        let pivot = a[k][k].clone();
        let same = pivot == prev;
        for i in k + 1..n {
            let lead = a[i][k].clone();
            for j in k + 1..n {
                let mut x = if lead.is_zero() || a[k][j].is_zero() {
                    if same {
                        continue;
                    }
                    &a[i][j] * &pivot
                } else {
                    &(&a[i][j] * &pivot) - &(&lead * &a[k][j])
                };
                if !prev.is_one_poly() {
                    x = x.exact_divide(&prev).expect("Bareiss division is exact");
                }
                a[i][j] = x;
            }
            a[i][k] = IntPoly::zero();
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl IsOne for IntPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

/// The determinant of the Canny–Emiris matrix with integer and monomial
/// content removed.
pub fn resultant_multiple(sys: &SupportSystem) -> Result<IntPoly> {
    let m = canny_emiris_matrix(sys)?;
    let d = symbolic_determinant(&m);
    if d.is_zero() {
        return Err(Error::Arithmetic("the resultant matrix is singular".into()));
    }
    Ok(d.content_strip().1)
}

fn univariate(f: &RatPoly, var: &str) -> Vec<Q> {
    let coeffs = f.coefficients_in(&[var]);
    let deg = coeffs.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    let mut out = vec![q(0); deg + 1];
    for (e, c) in coeffs {
        out[e[0] as usize] = c.as_constant().unwrap_or_default();
    }
    out
}

/// Determinant of the Sylvester matrix of two univariate polynomials.
pub fn sylvester_resultant(f: &RatPoly, g: &RatPoly) -> Result<Q> {
    let mut syms: Vec<String> = f.symbols().iter().chain(g.symbols()).cloned().collect();
    syms.sort();
    syms.dedup();
    if syms.len() > 1 {
        return Err(Error::Invalid(format!("univariate polynomials expected, got {syms:?}")));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let var = syms.first().cloned().unwrap_or_else(|| "x".into());
    let (a, b) = (univariate(f, &var), univariate(g, &var));
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Ok(q(1));
    }
    let mut rows = vec![vec![q(0); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    Ok(rational_det(rows))
}

fn rational_det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return q(0);
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                for k in c..n {
                    let d = &f * &m[c][k];
                    m[r][k] -= d;
                }
            }
        }
    }
    det
}

/// Replace each symbol by a sign and collect, per monomial in `y`, the
/// hypersum of the resulting term signs.
pub fn specialize_signs(r: &IntPoly, y: &[&str], signs: &BTreeMap<String, i8>) -> Result<SignSetPoly> {
    let mut out = SignSetPoly::new(y.len());
    for (e, c) in r.coefficients_in(y) {
        let mut set: Option<SignSet> = None;
        for (te, tc) in c.terms() {
            let mut s = if tc.is_negative() { -1i8 } else { 1 };
            for (sym, k) in c.symbols().iter().zip(te) {
                if *k == 0 {
                    continue;
                }
                let v = *signs
                    .get(sym)
                    .ok_or_else(|| Error::UnassignedSymbol(sym.clone()))?;
                if k % 2 == 1 {
                    s *= v.signum();
                } else if v == 0 {
                    s = 0;
                }
            }
            if s == 0 {
                continue;
            }
            let t = SignSet::single(s);
            set = Some(match set {
                None => t,
                Some(u) if u == t => u,
                Some(_) => SignSet::ANY,
            });
        }
        if let Some(s) = set {
            out.set(e, s);
        }
    }
    Ok(normalize_sign(out))
}

/// Flip all signs so the first determined coefficient is positive.
fn normalize_sign(p: SignSetPoly) -> SignSetPoly {
    let first = p.coeffs.values().find_map(|s| s.determined().filter(|d| *d != 0));
    if first != Some(-1) {
        return p;
    }
    let mut out = SignSetPoly::new(p.nvars);
    for (e, s) in p.coeffs {
        let m: Vec<i8> = s.members().into_iter().map(|x| -x).collect();
        let t = m.into_iter().map(SignSet::single).reduce(SignSet::union).unwrap();
        out.set(e, t);
    }
    out
}

/// The symbolic system of `f` (over `S` or `K`) and the sign of each symbol.
pub fn sign_system(f: &[HPoly]) -> Result<(SupportSystem, BTreeMap<String, i8>)> {
    let n = f.first().map_or(0, HPoly::nvars);
    let mut signs = BTreeMap::new();
    let mut supports = Vec::new();
    for (i, p) in f.iter().enumerate() {
        if p.nvars() != n {
            return Err(Error::Shape("polynomials in different numbers of variables".into()));
        }
        if !matches!(p.field(), HyperfieldId::S | HyperfieldId::K) {
            return Err(Error::UnsupportedField(format!(
                "sign resultants take polynomials over S or K, got {}",
                p.field()
            )));
        }
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let supp = p.support();
        let mut sorted = supp.clone();
        sorted.sort();
        // The first coefficient is set to 1; flip the rest when it is negative.
        let lead = p.sign_at(&sorted[0]);
        for e in &sorted[1..] {
            signs.insert(coeff_symbol(i + 1, e), p.sign_at(e) * lead);
        }
        supports.push(sorted);
    }
    Ok((SupportSystem::symbolic(&supports)?, signs))
}

/// Upper bound on the number of solutions of `f = 0` in the orthant `h`:
/// the maximal boundary multiplicity of `1 + Σ h_i y_i` over the signed
/// resultant set.
pub fn resultant_sign_bound(f: &[HPoly], h: &[i8]) -> Result<u32> {
    Ok(resultant_sign_report(f, h)?.bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultantSignReport {
    pub bound: u32,
    /// Sign grid text of the specialized resultant multiple.
    pub grid: String,
    pub rows: usize,
    /// `(u, v)`-degree of the stripped determinant.
    pub degree: u32,
}

pub fn resultant_sign_report(f: &[HPoly], h: &[i8]) -> Result<ResultantSignReport> {
    let n = f.len();
    if h.len() != n || h.iter().any(|s| *s != 1 && *s != -1) {
        return Err(Error::Shape(format!("need {n} nonzero signs for h")));
    }
    let (sys, signs) = sign_system(f)?;
    let m = match canny_emiris_matrix(&sys) {
        Ok(m) => m,
        Err(Error::Domain(_)) => {
            return Ok(ResultantSignReport {
                bound: 0,
                grid: "+".into(),
                rows: 0,
                degree: 0,
            })
        }
        Err(e) => return Err(e),
    };
    let d = symbolic_determinant(&m);
    if d.is_zero() {
        return Err(Error::Arithmetic("the resultant matrix is singular".into()));
    }
    let r = d.content_strip().1;
    let y: Vec<&str> = sys.y.iter().map(String::as_str).collect();
    let set = specialize_signs(&r, &y, &signs)?;
    let mut l = HPoly::zero(HyperfieldId::S, n);
    l.set(vec![0; n], HyperValue::sign(HyperfieldId::S, 1));
    for (i, s) in h.iter().enumerate() {
        let mut e = vec![0; n];
        e[i] = 1;
        l.set(e, HyperValue::sign(HyperfieldId::S, *s));
    }
    let bound = if f.iter().all(|p| p.field() == HyperfieldId::K) {
        k_set_bound(&set, &l)?
    } else {
        setmult_bound(&set, &l, SetMultMode::Boundary)?
    };
    Ok(ResultantSignReport {
        bound,
        grid: set.to_grid_text(),
        rows: m.size(),
        degree: r.degree_in_set(&y),
    })
}

/// Over `K` a coefficient is either nonzero or may vanish; the bound is the
/// largest Krasner multiplicity over the members.
fn k_set_bound(set: &SignSetPoly, l: &HPoly) -> Result<u32> {
    const CAP: usize = 12;
    let free: Vec<&Exp> = set
        .coeffs
        .iter()
        .filter(|(_, s)| s.determined().is_none())
        .map(|(e, _)| e)
        .collect();
    if free.len() > CAP {
        return Err(Error::CapExceeded { count: free.len(), cap: CAP });
    }
    let lk = l.retag(HyperfieldId::K);
    let one = HyperValue::one(HyperfieldId::K);
    let mut best = 0;
    for mask in 0u32..(1 << free.len()) {
        let mut p = HPoly::zero(HyperfieldId::K, set.nvars);
        for (e, s) in &set.coeffs {
            let on = match free.iter().position(|x| *x == e) {
                Some(k) => mask >> k & 1 == 1,
                None => s.determined() != Some(0),
            };
            if on {
                p.set(e.clone(), one.clone());
            }
        }
        if p.is_zero() {
            continue;
        }
        best = best.max(mult_single(&p, &lk)?.value.finite().unwrap_or(0));
    }
    Ok(best)
}
