//! Exact convex hulls of small lattice point sets in any dimension, as
//! equations plus facet inequalities.

use num_traits::{Signed, Zero};

use crate::hyperfield::{q, Q};

/// `conv(points)` in H-representation: `eq·x = b` for the affine hull and
/// `a·x ≥ b` for the facets.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub affine_dim: usize,
    pub eqs: Vec<(Vec<Q>, Q)>,
    pub ineqs: Vec<(Vec<Q>, Q)>,
    pub empty: bool,
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_q(p: &[i64]) -> Vec<Q> {
    p.iter().map(|&x| q(x)).collect()
}

/// Row-reduce; returns the reduced rows that are nonzero.
fn row_basis(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let p = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let v = &m[rank][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Basis of `{w : row·w = 0 for all rows}`.
fn null_space(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let red = row_basis(rows);
    let mut pivots = Vec::new();
    for r in &red {
        let c = r.iter().position(|x| !x.is_zero()).unwrap();
        pivots.push(c);
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut w = vec![Q::zero(); ncols];
        w[free] = q(1);
        for (r, &pc) in red.iter().zip(&pivots) {
            w[pc] = -r[free].clone();
        }
        out.push(w);
    }
    out
}

fn normalize(a: &mut [Q], b: &mut Q) {
    if let Some(first) = a.iter().find(|x| !x.is_zero()).cloned() {
        let s = first.abs();
        for x in a.iter_mut() {
            *x = &*x / &s;
        }
        *b = &*b / &s;
    }
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(0, n, k, &mut cur, f);
}

impl Polytope {
    pub fn from_points(points: &[Vec<i64>]) -> Polytope {
        let dim = points.first().map_or(0, |p| p.len());
        if points.is_empty() {
            return Polytope {
                dim,
                affine_dim: 0,
                eqs: vec![],
                ineqs: vec![],
                empty: true,
            };
        }
        let mut pts: Vec<Vec<i64>> = points.to_vec();
        pts.sort();
        pts.dedup();
        let p0 = to_q(&pts[0]);
        let diffs: Vec<Vec<Q>> = pts[1..]
            .iter()
            .map(|p| to_q(p).iter().zip(&p0).map(|(a, b)| a - b).collect())
            .collect();
        let basis = if diffs.is_empty() {
            vec![]
        } else {
            row_basis(&diffs)
        };
        let k = basis.len();
        let eqs: Vec<(Vec<Q>, Q)> = null_space(&basis, dim)
            .into_iter()
            .map(|w| {
                let b = dot(&w, &p0);
                (w, b)
            })
            .collect();
        let qpts: Vec<Vec<Q>> = pts.iter().map(|p| to_q(p)).collect();
        let mut ineqs: Vec<(Vec<Q>, Q)> = Vec::new();
        let push = |mut a: Vec<Q>, mut b: Q, ineqs: &mut Vec<(Vec<Q>, Q)>| {
            normalize(&mut a, &mut b);
            if !ineqs.iter().any(|(a2, b2)| *a2 == a && *b2 == b) {
                ineqs.push((a, b));
            }
        };
        if k == 1 {
            let d = basis[0].clone();
            let vals: Vec<Q> = qpts.iter().map(|p| dot(&d, p)).collect();
            let lo = vals.iter().min().unwrap().clone();
            let hi = vals.iter().max().unwrap().clone();
            push(d.clone(), lo, &mut ineqs);
            push(d.iter().map(|x| -x.clone()).collect(), -hi, &mut ineqs);
        } else if k >= 2 {
            combinations(qpts.len(), k, &mut |idx| {
                let base = &qpts[idx[0]];
                let rows: Vec<Vec<Q>> = idx[1..]
                    .iter()
                    .map(|&j| {
                        let diff: Vec<Q> =
                            qpts[j].iter().zip(base).map(|(a, b)| a - b).collect();
                        basis.iter().map(|bv| dot(bv, &diff)).collect()
                    })
                    .collect();
                let ns = null_space(&rows, k);
                if ns.len() != 1 {
                    return;
                }
                let lam = &ns[0];
                let mut c = vec![Q::zero(); dim];
                for (l, bv) in lam.iter().zip(&basis) {
                    for (ci, bi) in c.iter_mut().zip(bv) {
                        *ci += l * bi;
                    }
                }
                let b = dot(&c, base);
                let mut pos = false;
                let mut neg = false;
                for p in &qpts {
                    let v = dot(&c, p) - &b;
                    if v.is_positive() {
                        pos = true;
                    } else if v.is_negative() {
                        neg = true;
                    }
                    if pos && neg {
                        return;
                    }
                }
                if neg {
                    push(c.iter().map(|x| -x.clone()).collect(), -b, &mut ineqs);
                } else {
                    push(c, b, &mut ineqs);
                }
            });
        }
        Polytope {
            dim,
            affine_dim: k,
            eqs,
            ineqs,
            empty: false,
        }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        if self.empty {
            return false;
        }
        let x = to_q(p);
        self.eqs.iter().all(|(a, b)| dot(a, &x) == *b)
            && self.ineqs.iter().all(|(a, b)| dot(a, &x) >= *b)
    }

    /// Whether `p` lies in the relative interior.
    pub fn contains_relint(&self, p: &[i64]) -> bool {
        if self.empty {
            return false;
        }
        let x = to_q(p);
        self.eqs.iter().all(|(a, b)| dot(a, &x) == *b)
            && self.ineqs.iter().all(|(a, b)| dot(a, &x) > *b)
    }
}

/// Lattice points of the box `[lo, hi]`, in lexicographic order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in i + 1..n {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
}

fn bounds(points: &[Vec<i64>]) -> (Vec<i64>, Vec<i64>) {
    let n = points[0].len();
    let lo = (0..n).map(|i| points.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi = (0..n).map(|i| points.iter().map(|p| p[i]).max().unwrap()).collect();
    (lo, hi)
}

/// All lattice points of `conv(points)`.
pub fn lattice_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if points.is_empty() {
        return vec![];
    }
    let poly = Polytope::from_points(points);
    let (lo, hi) = bounds(points);
    box_points(&lo, &hi)
        .into_iter()
        .filter(|p| poly.contains(p))
        .collect()
}

/// Lattice points of the Minkowski difference `conv(p) ⊖ conv(q)`, that is
/// the `x` with `x + conv(q) ⊆ conv(p)`.
pub fn minkowski_difference_points(p: &[Vec<i64>], qs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if p.is_empty() || qs.is_empty() {
        return vec![];
    }
    let poly = Polytope::from_points(p);
    let (plo, phi) = bounds(p);
    let (qlo, qhi) = bounds(qs);
    let lo: Vec<i64> = plo.iter().zip(&qlo).map(|(a, b)| a - b).collect();
    let hi: Vec<i64> = phi.iter().zip(&qhi).map(|(a, b)| a - b).collect();
    box_points(&lo, &hi)
        .into_iter()
        .filter(|x| {
            qs.iter().all(|v| {
                let y: Vec<i64> = x.iter().zip(v).map(|(a, b)| a + b).collect();
                poly.contains(&y)
            })
        })
        .collect()
}
