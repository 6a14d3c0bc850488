use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::{
    enriched_curve, gmult, hull_2d, lift, lower_faces_2d, LineFamily, NewtonSubdivision,
};
use crate::error::{Error, Result};
use crate::hyperfield::{q, HyperfieldId};
use crate::multiplicity::{divides_once, mult_single};
use crate::polyring::{Exp, HPoly};

/// How lifts are searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PmultMode {
    /// `Direct` when at most three heights are free, `Factor` otherwise.
    Auto,
    /// Heights on the support of `f`; the geometric multiplicity of every
    /// strictly convex lift.
    Direct,
    /// Heights on a sign quotient `g` and on `k` lines; a lift is accepted
    /// when the tropical product is strictly convex with the signs of `f`.
    Factor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PmultOptions {
    /// Height range `{-B..B}` after fixing the corners at 0. `None` picks
    /// `4·d²`, lowered until the search fits the budget.
    pub height_bound: Option<u32>,
    pub mode: PmultMode,
    /// Accept non-dense `f`, lifting only its support.
    pub relaxed: bool,
}

impl Default for PmultOptions {
    fn default() -> Self {
        PmultOptions {
            height_bound: None,
            mode: PmultMode::Auto,
            relaxed: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PmultReport {
    pub value: u32,
    pub mode: PmultMode,
    pub height_bound: u32,
    /// Distinct strictly convex subdivisions examined.
    pub subdivisions_visited: usize,
    /// The value is the true perturbation multiplicity (dense quadratics);
    /// otherwise it is a certified lower bound.
    pub exact: bool,
    #[serde(skip)]
    pub lift: Option<HPoly>,
}

const DIRECT_BUDGET: u64 = 2_000_000;
const FACTOR_BUDGET: u64 = 200_000;

fn combos(bound: u32, free: usize) -> u64 {
    (2 * bound as u64 + 1).saturating_pow(free as u32)
}

fn pick_bound(requested: Option<u32>, d: u32, free: usize, budget: u64) -> Result<u32> {
    match requested {
        Some(b) => {
            let c = combos(b, free);
            if c > budget {
                return Err(Error::CapExceeded {
                    count: c.min(usize::MAX as u64) as usize,
                    cap: budget as usize,
                });
            }
            Ok(b)
        }
        None => {
            let mut b = (4 * d * d).max(1);
            while b > 1 && combos(b, free) > budget {
                b -= 1;
            }
            Ok(b)
        }
    }
}

fn planar(e: &Exp) -> [i64; 2] {
    [e[0] as i64, e[1] as i64]
}

fn cell_key_of(pts: &[[i64; 2]], faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut key: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| {
            let mut v = hull_2d(pts, f);
            v.sort();
            v
        })
        .collect();
    key.sort();
    key
}

fn all_vertices(n: usize, key: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    for c in key {
        for &v in c {
            seen[v] = true;
        }
    }
    seen.iter().all(|&b| b)
}

type SubdivisionList = Arc<Vec<(Vec<i64>, NewtonSubdivision)>>;

fn cache() -> &'static Mutex<HashMap<(Vec<Exp>, u32), SubdivisionList>> {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<Exp>, u32), SubdivisionList>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Strictly convex regular subdivisions of a planar support reachable with
/// integer heights in `{-B..B}`, corners of the Newton triangle fixed at 0.
/// One representative height vector per combinatorial type.
pub fn strictly_convex_subdivisions(support: &[Exp], bound: u32) -> Result<SubdivisionList> {
    let mut support = support.to_vec();
    support.sort();
    let key = (support.clone(), bound);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    if support.iter().any(|e| e.len() != 2) {
        return Err(Error::Dimension("subdivisions here need 2 variables".into()));
    }
    let pts: Vec<[i64; 2]> = support.iter().map(planar).collect();
    let d = pts.iter().map(|p| p[0] + p[1]).max().unwrap_or(0);
    let fixed: Vec<bool> = pts
        .iter()
        .map(|p| *p == [0, 0] || *p == [d, 0] || *p == [0, d])
        .collect();
    let free: Vec<usize> = (0..pts.len()).filter(|&i| !fixed[i]).collect();
    let b = bound as i64;
    let mut hs = vec![0i64; pts.len()];
    let mut found: BTreeMap<Vec<Vec<usize>>, Vec<i64>> = BTreeMap::new();
    let total = combos(bound, free.len());
    for mut idx in 0..total {
        for &i in &free {
            hs[i] = (idx % (2 * b as u64 + 1)) as i64 - b;
            idx /= 2 * b as u64 + 1;
        }
        let h128: Vec<i128> = hs.iter().map(|&h| h as i128).collect();
        let faces = lower_faces_2d(&pts, &h128);
        let key = cell_key_of(&pts, &faces);
        if all_vertices(pts.len(), &key) {
            found.entry(key).or_insert_with(|| hs.clone());
        }
    }
    let mut out = Vec::new();
    for (_, h) in found {
        let sd = super::subdivision_of(2, support.clone(), h.iter().map(|&x| q(x)).collect())?;
        out.push((h, sd));
    }
    let out = Arc::new(out);
    cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

fn line_signs(l: &HPoly) -> Result<[i8; 3]> {
    if l.field() != HyperfieldId::S || l.nvars() != 2 {
        return Err(Error::UnsupportedField(
            "pmult needs a linear form over S in 2 variables".into(),
        ));
    }
    let (l, _) = l.strip_monomial();
    if l.newton_degree() != Some(1) || l.len() != 3 {
        return Err(Error::Invalid(format!("`{l}` is not a linear form with three terms")));
    }
    Ok([l.sign_at(&[0, 0]), l.sign_at(&[1, 0]), l.sign_at(&[0, 1])])
}

/// Perturbation multiplicity of `l` in `f ∈ S[x, y]`: the best geometric
/// multiplicity over strictly convex lifts of `f` to `T R`.
pub fn pmult(f: &HPoly, l: &HPoly, opts: PmultOptions) -> Result<PmultReport> {
    if f.field() != HyperfieldId::S || f.nvars() != 2 {
        return Err(Error::UnsupportedField(
            "pmult needs a polynomial over S in 2 variables".into(),
        ));
    }
    let signs = line_signs(l)?;
    let d = f
        .newton_degree()
        .ok_or_else(|| Error::Invalid("pmult needs a polynomial of some Newton-degree".into()))?;
    let dense = f.is_dense();
    if !dense && !opts.relaxed {
        return Err(Error::Invalid(
            "pmult lifts the full support and needs a dense polynomial".into(),
        ));
    }
    let free = f.len().saturating_sub(3);
    let mode = match opts.mode {
        PmultMode::Auto if free <= 3 || !dense => PmultMode::Direct,
        PmultMode::Auto => PmultMode::Factor,
        m => m,
    };
    match mode {
        PmultMode::Direct => direct(f, signs, d, dense, free, opts.height_bound),
        _ => {
            if !dense {
                return Err(Error::Invalid("factor search needs a dense polynomial".into()));
            }
            factor(f, l, d, opts.height_bound)
        }
    }
}

fn direct(
    f: &HPoly,
    signs: [i8; 3],
    d: u32,
    dense: bool,
    free: usize,
    requested: Option<u32>,
) -> Result<PmultReport> {
    let bound = pick_bound(requested, d, free, DIRECT_BUDGET)?;
    let subs = strictly_convex_subdivisions(&f.support(), bound)?;
    let mut best = 0;
    let mut best_lift = None;
    for (hs, sd) in subs.iter() {
        let terms: Vec<(Exp, i8, crate::hyperfield::Q)> = sd
            .points
            .iter()
            .zip(hs)
            .map(|(e, h)| (e.clone(), f.sign_at(e), q(*h)))
            .collect();
        let lifted = lift(HyperfieldId::TR, 2, &terms)?;
        let v = enriched_curve(&lifted)?;
        let g = gmult(&v, &LineFamily::SignPattern(vec![signs]), true)?;
        if g.value > best || best_lift.is_none() {
            if g.value > best {
                best = g.value;
            }
            best_lift = Some(lifted);
        }
    }
    Ok(PmultReport {
        value: best,
        mode: PmultMode::Direct,
        height_bound: bound,
        subdivisions_visited: subs.len(),
        exact: dense && d == 2,
        lift: best_lift,
    })
}

/// Dense integer-height signed polynomial for the factor search.
type Lifted = BTreeMap<[i64; 2], (i64, i8)>;

/// Tropical product, or `None` when some coefficient is not a single value
/// (minimal products of both signs).
fn lifted_product(a: &Lifted, b: &Lifted) -> Option<Lifted> {
    let mut out: BTreeMap<[i64; 2], (i64, i8, bool)> = BTreeMap::new();
    for (ea, (ha, sa)) in a {
        for (eb, (hb, sb)) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1]];
            let h = ha + hb;
            let s = sa * sb;
            match out.get_mut(&e) {
                None => {
                    out.insert(e, (h, s, false));
                }
                Some(cur) => {
                    if h < cur.0 {
                        *cur = (h, s, false);
                    } else if h == cur.0 && s != cur.1 {
                        cur.2 = true;
                    }
                }
            }
        }
    }
    if out.values().any(|v| v.2) {
        return None;
    }
    Some(out.into_iter().map(|(e, (h, s, _))| (e, (h, s))).collect())
}

fn factor(f: &HPoly, l: &HPoly, d: u32, requested: Option<u32>) -> Result<PmultReport> {
    let kmax = mult_single(f, l)?.value.finite().unwrap_or(0);
    let target: BTreeMap<[i64; 2], i8> =
        f.terms().map(|(e, v)| (planar(e), v.angular())).collect();
    let lsg = line_signs(l)?;
    let mut visited: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut used_bound = None;
    // Sign quotients by l^k, for k = 1..kmax.
    let mut levels: Vec<Vec<HPoly>> = vec![vec![f.clone()]];
    for _ in 0..kmax {
        let mut next: Vec<HPoly> = Vec::new();
        for g in levels.last().unwrap() {
            for h in divides_once(g, l)? {
                if !next.contains(&h) {
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    for k in (1..=kmax as usize).rev() {
        for g in &levels[k] {
            let gpts: Vec<[i64; 2]> = g.support().iter().map(planar).collect();
            let dg = d as i64 - k as i64;
            let corner = |p: &[i64; 2]| *p == [0, 0] || *p == [dg, 0] || *p == [0, dg];
            let g_free: Vec<usize> = (0..gpts.len()).filter(|&i| dg > 0 && !corner(&gpts[i])).collect();
            // With a constant quotient the first line is pinned at the origin.
            let line_free = if dg == 0 { 2 * (k - 1) } else { 2 * k };
            let nfree = g_free.len() + line_free;
            let bound = pick_bound(requested, d, nfree, FACTOR_BUDGET)?;
            used_bound = Some(used_bound.map_or(bound, |b: u32| b.min(bound)));
            let b = bound as i64;
            let radix = 2 * b as u64 + 1;
            let total = combos(bound, nfree);
            for mut idx in 0..total {
                let mut digits = Vec::with_capacity(nfree);
                for _ in 0..nfree {
                    digits.push((idx % radix) as i64 - b);
                    idx /= radix;
                }
                let (gd, ld) = digits.split_at(g_free.len());
                let mut lines: Vec<[i64; 2]> = Vec::new();
                if dg == 0 {
                    lines.push([0, 0]);
                }
                for c in ld.chunks(2) {
                    lines.push([c[0], c[1]]);
                }
                if lines.windows(2).any(|w| w[0] > w[1]) {
                    continue;
                }
                let mut cur: Lifted = gpts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let h = g_free.iter().position(|&j| j == i).map_or(0, |t| gd[t]);
                        (*p, (h, g.sign_at(&[p[0] as u32, p[1] as u32])))
                    })
                    .collect();
                let mut ok = true;
                for ln in &lines {
                    let lt: Lifted = BTreeMap::from([
                        ([0, 0], (0, lsg[0])),
                        ([1, 0], (ln[0], lsg[1])),
                        ([0, 1], (ln[1], lsg[2])),
                    ]);
                    match lifted_product(&cur, &lt) {
                        Some(p) => cur = p,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok || cur.len() != target.len() {
                    continue;
                }
                let pts: Vec<[i64; 2]> = cur.keys().copied().collect();
                let hs: Vec<i128> = cur.values().map(|(h, _)| *h as i128).collect();
                let key = cell_key_of(&pts, &lower_faces_2d(&pts, &hs));
                if !all_vertices(pts.len(), &key) {
                    continue;
                }
                visited.insert(key);
                if cur.iter().any(|(e, (_, s))| target.get(e) != Some(s)) {
                    continue;
                }
                let terms: Vec<(Exp, i8, crate::hyperfield::Q)> = cur
                    .iter()
                    .map(|(e, (h, s))| (vec![e[0] as u32, e[1] as u32], *s, q(*h)))
                    .collect();
                return Ok(PmultReport {
                    value: k as u32,
                    mode: PmultMode::Factor,
                    height_bound: bound,
                    subdivisions_visited: visited.len(),
                    exact: d == 2,
                    lift: Some(lift(HyperfieldId::TR, 2, &terms)?),
                });
            }
        }
    }
    Ok(PmultReport {
        value: 0,
        mode: PmultMode::Factor,
        height_bound: used_bound.unwrap_or_else(|| requested.unwrap_or(4 * d * d)),
        subdivisions_visited: visited.len(),
        exact: false,
        lift: None,
    })
}
