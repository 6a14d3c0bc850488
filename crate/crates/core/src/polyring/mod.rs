//! Polynomials over hyperfields, and exact symbolic polynomials over the
//! integers and rationals.

mod sym;
mod text;

pub use sym::{parse_intpoly, parse_ratpoly, Coeff, IntPoly, RatPoly, SymPoly};
pub use text::{
    default_var_names, grid_from_text, parse_grid, parse_grid_token, parse_poly, parse_poly_n,
    parse_poly_vars, PolyJson, TermJson,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hyperfield::{
    apply_morphism, mul_unchecked, sum_unchecked, HyperValue, HyperfieldId, Morphism,
};
use crate::polytope::{lattice_points, minkowski_difference_points, Polytope};

/// Dense exponent vector.
pub type Exp = Vec<u32>;

/// Polynomial over a hyperfield: a finite map from exponents to nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPoly {
    field: HyperfieldId,
    nvars: usize,
    coeffs: BTreeMap<Exp, HyperValue>,
}

pub(crate) fn exp_i64(e: &Exp) -> Vec<i64> {
    e.iter().map(|&x| x as i64).collect()
}

pub(crate) fn exp_from_i64(e: &[i64]) -> Option<Exp> {
    e.iter().map(|&x| u32::try_from(x).ok()).collect()
}

/// Graded lexicographic key: total degree first.
pub fn grlex_key(e: &Exp) -> (u32, Exp) {
    (e.iter().sum(), e.clone())
}

impl HPoly {
    pub fn zero(field: HyperfieldId, nvars: usize) -> Self {
        HPoly {
            field,
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    /// Build from terms; zero coefficients are dropped and repeated exponents
    /// rejected.
    pub fn from_terms<I>(field: HyperfieldId, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exp, HyperValue)>,
    {
        let mut p = HPoly::zero(field, nvars);
        for (e, v) in terms {
            if e.len() != nvars {
                return Err(Error::Shape(format!(
                    "exponent of length {} in {nvars} variables",
                    e.len()
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "coefficient in {} for a polynomial over {}",
                    v.field(),
                    field
                )));
            }
            if v.is_zero() {
                continue;
            }
            if p.coeffs.insert(e.clone(), v).is_some() {
                return Err(Error::Invalid(format!("repeated exponent {e:?}")));
            }
        }
        Ok(p)
    }

    /// Polynomial over a finite base from base signs.
    pub fn from_signs<I>(field: HyperfieldId, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, i8)>,
    {
        let mut p = HPoly::zero(field, nvars);
        for (e, s) in terms {
            assert_eq!(e.len(), nvars);
            if s != 0 {
                p.coeffs.insert(e, HyperValue::sign(field, s));
            }
        }
        p
    }

    pub fn field(&self) -> HyperfieldId {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &HyperValue)> {
        self.coeffs.iter()
    }

    pub fn coeff_map(&self) -> &BTreeMap<Exp, HyperValue> {
        &self.coeffs
    }

    /// Coefficient at `e` (zero when absent).
    pub fn coeff(&self, e: &[u32]) -> HyperValue {
        self.coeffs
            .get(e)
            .cloned()
            .unwrap_or_else(|| HyperValue::zero(self.field))
    }

    pub fn set(&mut self, e: Exp, v: HyperValue) {
        assert_eq!(e.len(), self.nvars);
        if v.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, v);
        }
    }

    pub fn support(&self) -> Vec<Exp> {
        self.coeffs.keys().cloned().collect()
    }

    pub(crate) fn support_i64(&self) -> Vec<Vec<i64>> {
        self.coeffs.keys().map(exp_i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Minimal exponent per variable.
    pub fn order(&self) -> Exp {
        (0..self.nvars)
            .map(|i| self.coeffs.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// A nonzero constant: the units of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// `d` such that the Newton polytope is `d` times the standard simplex.
    pub fn newton_degree(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let d = self.degree();
        let zero = vec![0; self.nvars];
        if !self.coeffs.contains_key(&zero) {
            return None;
        }
        for i in 0..self.nvars {
            let mut e = zero.clone();
            e[i] = d;
            if !self.coeffs.contains_key(&e) {
                return None;
            }
        }
        Some(d)
    }

    /// Whether the support is every lattice point of the Newton polytope.
    pub fn is_dense(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        lattice_points(&self.support_i64()).len() == self.coeffs.len()
    }

    pub fn newton_polytope(&self) -> Polytope {
        Polytope::from_points(&self.support_i64())
    }

    /// Lattice points of `Newt(self) ⊖ Newt(other)`.
    pub fn minkowski_quotient_support(&self, other: &HPoly) -> Vec<Exp> {
        minkowski_difference_points(&self.support_i64(), &other.support_i64())
            .iter()
            .filter_map(|p| exp_from_i64(p))
            .collect()
    }

    /// Coefficientwise image under a morphism.
    pub fn apply_morphism(&self, m: Morphism) -> Result<HPoly> {
        let cod = m.codomain(self.field)?;
        let mut out = HPoly::zero(cod, self.nvars);
        for (e, v) in &self.coeffs {
            out.set(e.clone(), apply_morphism(m, v)?);
        }
        Ok(out)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &HyperValue) -> Result<HPoly> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch("scale".into()));
        }
        let mut out = HPoly::zero(self.field, self.nvars);
        for (e, v) in &self.coeffs {
            out.set(e.clone(), mul_unchecked(v, c));
        }
        Ok(out)
    }

    /// Multiply by `x^shift`.
    pub fn shift(&self, shift: &[u32]) -> HPoly {
        let mut out = HPoly::zero(self.field, self.nvars);
        for (e, v) in &self.coeffs {
            let ne: Exp = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.coeffs.insert(ne, v.clone());
        }
        out
    }

    /// Divide by the largest monomial dividing every term; returns the shift.
    pub fn strip_monomial(&self) -> (HPoly, Exp) {
        let ord = self.order();
        let mut out = HPoly::zero(self.field, self.nvars);
        for (e, v) in &self.coeffs {
            let ne: Exp = e.iter().zip(&ord).map(|(a, b)| a - b).collect();
            out.coeffs.insert(ne, v.clone());
        }
        (out, ord)
    }

    /// Same coefficients in another hyperfield with the same representation
    /// (for instance `S` data read as `T R` at exponent 0).
    pub fn retag(&self, field: HyperfieldId) -> HPoly {
        let mut out = HPoly::zero(field, self.nvars);
        for (e, v) in &self.coeffs {
            out.set(e.clone(), v.retag(field));
        }
        out
    }

    /// Base signs of the coefficients, for polynomials over `K` or `S`.
    pub fn sign_at(&self, e: &[u32]) -> i8 {
        self.coeffs.get(e).map_or(0, |v| v.angular())
    }
}

fn check_compatible(a: &HPoly, b: &HPoly) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)));
    }
    if a.nvars != b.nvars {
        return Err(Error::Shape(format!("{} vs {} variables", a.nvars, b.nvars)));
    }
    Ok(())
}

/// All products `b_n c_p`, grouped by `n + p`.
pub fn product_terms(g: &HPoly, h: &HPoly) -> BTreeMap<Exp, Vec<HyperValue>> {
    let mut out: BTreeMap<Exp, Vec<HyperValue>> = BTreeMap::new();
    for (e1, v1) in &g.coeffs {
        for (e2, v2) in &h.coeffs {
            let e: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            out.entry(e).or_default().push(mul_unchecked(v1, v2));
        }
    }
    out
}

/// Whether `f ∈ g·h`: every coefficient of `f` lies in the hypersum of the
/// corresponding products, absent coefficients counting as zero.
pub fn product_membership(f: &HPoly, g: &HPoly, h: &HPoly) -> Result<bool> {
    check_compatible(f, g)?;
    check_compatible(f, h)?;
    let prods = product_terms(g, h);
    if f.coeffs.keys().any(|e| !prods.contains_key(e)) {
        return Ok(false);
    }
    for (e, terms) in &prods {
        let s = sum_unchecked(f.field, terms.iter());
        if !s.contains(&f.coeff(e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The substitution `x_i ↦ a_i x_i^{k_i}`.
pub fn diagonal_transform(f: &HPoly, a: &[HyperValue], k: &[u32]) -> Result<HPoly> {
    if a.len() != f.nvars || k.len() != f.nvars {
        return Err(Error::Shape("diagonal transform arity".into()));
    }
    if a.iter().any(|x| x.is_zero() || x.field() != f.field) {
        return Err(Error::Invalid("diagonal scale must be a unit of the field".into()));
    }
    if k.iter().any(|&x| x == 0) {
        return Err(Error::Invalid("diagonal powers must be positive".into()));
    }
    let mut out = HPoly::zero(f.field, f.nvars);
    for (e, v) in &f.coeffs {
        let mut c = v.clone();
        for (ai, &ei) in a.iter().zip(e) {
            c = mul_unchecked(&c, &ai.pow(ei));
        }
        let ne: Exp = e.iter().zip(k).map(|(x, y)| x * y).collect();
        out.set(ne, c);
    }
    Ok(out)
}

/// `π_i`: substitute `x_i ↦ 0`, dropping that variable.
pub fn substitute_zero(f: &HPoly, i: usize) -> Result<HPoly> {
    if i >= f.nvars {
        return Err(Error::Shape(format!("variable {i} out of range")));
    }
    let mut out = HPoly::zero(f.field, f.nvars - 1);
    for (e, v) in &f.coeffs {
        if e[i] == 0 {
            let mut ne = e.clone();
            ne.remove(i);
            out.coeffs.insert(ne, v.clone());
        }
    }
    Ok(out)
}

/// Homogenize with a new variable in position 0.
pub fn homogenize(f: &HPoly) -> HPoly {
    let d = f.degree();
    let mut out = HPoly::zero(f.field, f.nvars + 1);
    for (e, v) in &f.coeffs {
        let s: u32 = e.iter().sum();
        let mut ne = Vec::with_capacity(f.nvars + 1);
        ne.push(d - s);
        ne.extend_from_slice(e);
        out.coeffs.insert(ne, v.clone());
    }
    out
}

/// Set the variable in position 0 to 1.
pub fn dehomogenize(f: &HPoly) -> Result<HPoly> {
    if f.nvars == 0 {
        return Err(Error::Shape("no variable to dehomogenize".into()));
    }
    let mut out = HPoly::zero(f.field, f.nvars - 1);
    for (e, v) in &f.coeffs {
        let ne: Exp = e[1..].to_vec();
        if out.coeffs.insert(ne, v.clone()).is_some() {
            return Err(Error::Invalid("not homogeneous".into()));
        }
    }
    Ok(out)
}

/// Whether every term has the same total degree.
pub fn is_homogeneous(f: &HPoly) -> bool {
    let mut it = f.coeffs.keys().map(|e| e.iter().sum::<u32>());
    match it.next() {
        None => true,
        Some(d) => it.all(|x| x == d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(t: &str) -> HPoly {
        parse_poly(t, HyperfieldId::S).unwrap()
    }

    #[test]
    fn product_membership_basic() {
        // x^4 - x^3 + x^2 - x + 1 against (x - 1)(x^3 + x^2): the x^2
        // coefficient would need to lie in the sum {+, -} = S, fine, but the
        // x^1 and constant coefficients have no products.
        let f = sp("x^4 - x^3 + x^2 - x + 1");
        let l = sp("x - 1");
        let g = sp("x^3 + x^2");
        assert!(!product_membership(&f, &g, &l).unwrap());
        let one = sp("1");
        assert!(product_membership(&f, &one, &f).unwrap());
    }

    #[test]
    fn transforms() {
        let f = sp("1 + x");
        let m = diagonal_transform(&f, &[HyperValue::sign(HyperfieldId::S, -1)], &[1]).unwrap();
        assert_eq!(m, sp("1 - x"));
        let t = parse_poly("0 + x", HyperfieldId::T).unwrap();
        let a = HyperValue::trop(crate::hyperfield::q(2));
        let m = diagonal_transform(&t, &[a], &[1]).unwrap();
        assert_eq!(m, parse_poly("0 + 2x", HyperfieldId::T).unwrap());
        assert!(diagonal_transform(&f, &[HyperValue::zero(HyperfieldId::S)], &[1]).is_err());
    }

    #[test]
    fn boundary_operations() {
        let f = sp("1 + x + y + x*y");
        assert_eq!(substitute_zero(&f, 1).unwrap(), sp("1 + x"));
        let y2 = sp("y^2");
        assert!(substitute_zero(&y2, 1).unwrap().is_zero());
        let h = homogenize(&sp("1 + x"));
        assert_eq!(h, parse_poly_vars("x0 + x", HyperfieldId::S, &["x0", "x"]).unwrap());
        let h2 = homogenize(&sp("1 + x + y + x^2"));
        assert_eq!(
            h2,
            parse_poly_vars("x0^2 + x0*x + x0*y + x^2", HyperfieldId::S, &["x0", "x", "y"])
                .unwrap()
        );
        assert_eq!(dehomogenize(&h2).unwrap(), sp("1 + x + y + x^2"));
    }

    #[test]
    fn newton_data() {
        assert_eq!(sp("1 + x + y + x^2 + x*y + y^2").newton_degree(), Some(2));
        assert!(sp("1 + x + y + x^2 + x*y + y^2").is_dense());
        assert!(!sp("1 + x^2").is_dense());
        assert_eq!(sp("1 + x*y").newton_degree(), None);
    }
}
