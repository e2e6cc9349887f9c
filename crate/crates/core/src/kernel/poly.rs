//! Sparse multivariate polynomials over the rationals in the support
//! variables `k1..kN`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Maximal number of variables a polynomial may have.
pub const MAX_VARS: usize = 32;

/// Exponent vector, one byte per variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    /// Builds a monomial from an exponent list.
    ///
    /// # Panics
    ///
    /// Panics if there are more than [`MAX_VARS`] exponents or one exceeds 255.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u8::try_from(x).expect("exponent exceeds 255");
        }
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        u32::from(self.0[i])
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&x| u32::from(x)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| u32::from(x)).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Monomial(e)
    }

    fn used_vars(&self) -> usize {
        self.0.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(self.used_vars()))
    }
}

/// Exact polynomial in `nvars` variables with rational coefficients.
///
/// Terms are kept in a sorted map without zero coefficients, so two
/// polynomials are equal exactly when their representations are.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

fn check_vars(nvars: usize) {
    assert!(nvars <= MAX_VARS, "polynomials support at most {MAX_VARS} variables");
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        check_vars(nvars);
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::var(i), Rational::one());
        p
    }

    /// The linear form `sum coeffs[i] * k_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut p = MultiPoly::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert!(m.used_vars() <= nvars, "monomial uses too many variables");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True if every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn same_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.nvars, right: other.nvars })
        }
    }

    /// # Errors
    ///
    /// Fails if the variable counts differ.
    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_vars(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        Ok(p)
    }

    /// # Errors
    ///
    /// Fails if the variable counts differ.
    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_vars(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, -c);
        }
        Ok(p)
    }

    /// # Errors
    ///
    /// Fails if the variable counts differ.
    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_vars(other)?;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(MultiPoly::from_terms(self.nvars, acc))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Rational::one())
    }

    /// Exact partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars, "variable index out of range");
        let mut p = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            p.add_term(dm, c * Rational::from(u32::from(e)));
        }
        p
    }

    /// Evaluates at a rational point.
    ///
    /// # Errors
    ///
    /// Fails if the point has the wrong length.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: point.len() });
        }
        let maxdeg = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(usize::from(maxdeg) + 1);
                v.push(Rational::one());
                for d in 1..=usize::from(maxdeg) {
                    let next = &v[d - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = usize::from(m.0[i]);
                if e > 0 {
                    t *= &pw[e];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Renames variables: variable `i` becomes variable `map[i]` of a
    /// polynomial in `nvars` variables.
    ///
    /// # Panics
    ///
    /// Panics if `map` is shorter than the variable count or maps outside `nvars`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert!(map.len() >= self.nvars, "variable map too short");
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = [0u8; MAX_VARS];
            for i in 0..self.nvars {
                if m.0[i] > 0 {
                    assert!(map[i] < nvars, "variable map out of range");
                    e[map[i]] += m.0[i];
                }
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Substitutes an affine form in the variables for each variable:
    /// `k_i -> sum subs[i][j] k_j + shift[i]`. Used for translations.
    pub fn compose_affine(&self, subs: &[Vec<Rational>], shift: &[Rational]) -> MultiPoly {
        let n = self.nvars;
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| {
                let mut p = MultiPoly::linear(&subs[i]);
                p.add_term(Monomial::ONE, shift[i].clone());
                p
            })
            .collect();
        let mut out = MultiPoly::zero(n);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(n, c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.0[i] {
                    t = t.mul(img).expect("same variable count");
                }
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Coefficients of a polynomial of degree at most one: the linear part and
    /// the constant term. `None` if the degree is higher.
    pub fn as_affine(&self) -> Option<(Vec<Rational>, Rational)> {
        if self.degree().unwrap_or(0) > 1 {
            return None;
        }
        let mut lin = vec![Rational::zero(); self.nvars];
        for (i, x) in lin.iter_mut().enumerate() {
            *x = self.coefficient(&Monomial::var(i));
        }
        Some((lin, self.coefficient(&Monomial::ONE)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut vars = Vec::new();
            for i in 0..self.nvars {
                match m.0[i] {
                    0 => {}
                    1 => vars.push(format!("k{}", i + 1)),
                    e => vars.push(format!("k{}^{e}", i + 1)),
                }
            }
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Free-function forms of the basic operations.
pub fn poly_is_zero(p: &MultiPoly) -> bool {
    p.is_zero()
}

/// # Errors
///
/// Fails if the variable counts differ.
pub fn poly_add(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.add(b)
}

/// # Errors
///
/// Fails if the variable counts differ.
pub fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.mul(b)
}

/// # Errors
///
/// Fails if the point has the wrong length.
pub fn poly_eval(p: &MultiPoly, point: &[Rational]) -> Result<Rational> {
    p.eval(point)
}

/// Coefficient arithmetic for the integer fast path of the symbolic
/// integrals. Operations return `None` on overflow.
pub(crate) trait Coeff: Clone + Sized {
    fn from_rational(r: &Rational) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i128 {
    fn from_rational(r: &Rational) -> Option<Self> {
        r.to_integer()?.to_i128()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_rational(r: &Rational) -> Option<Self> {
        r.to_integer()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Unordered integer polynomial used while accumulating large sums.
#[derive(Clone, Debug)]
pub(crate) struct IntPoly<C: Coeff> {
    nvars: usize,
    terms: HashMap<Monomial, C>,
}

impl<C: Coeff> IntPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        check_vars(nvars);
        IntPoly { nvars, terms: HashMap::new() }
    }

    /// Sparse integral linear form; `None` if a coefficient is not an integer
    /// or does not fit.
    pub fn linear(nvars: usize, terms: &[(usize, Rational)]) -> Option<Self> {
        let mut p = IntPoly::zero(nvars);
        for (i, c) in terms {
            p.add_term(Monomial::var(*i), C::from_rational(c)?)?;
        }
        Some(p)
    }

    pub fn from_multipoly(p: &MultiPoly) -> Option<Self> {
        let mut out = IntPoly::zero(p.nvars);
        for (m, c) in p.terms() {
            out.add_term(*m, C::from_rational(c)?)?;
        }
        Some(out)
    }

    fn add_term(&mut self, m: Monomial, c: C) -> Option<()> {
        if c.is_zero() {
            return Some(());
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(&c)?;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
        Some(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `self += sign * a * b`.
    pub fn add_product(&mut self, a: &Self, b: &Self, sign: &C) -> Option<()> {
        for (ma, ca) in &a.terms {
            let ca = ca.mul(sign)?;
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca.mul(cb)?)?;
            }
        }
        Some(())
    }

    pub fn add_scaled(&mut self, a: &Self, sign: &C) -> Option<()> {
        for (m, c) in &a.terms {
            self.add_term(*m, c.mul(sign)?)?;
        }
        Some(())
    }

    pub fn partial(&self, i: usize) -> Option<Self> {
        let mut p = IntPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            let f = C::from_rational(&Rational::from(u32::from(e)))?;
            p.add_term(dm, c.mul(&f)?)?;
        }
        Some(p)
    }

    /// Converts to a canonical rational polynomial divided by `den`.
    pub fn to_multipoly(&self, den: &Rational) -> MultiPoly {
        let inv = den.recip().expect("nonzero scale");
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, Rational::from(c.to_bigint()) * &inv)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qi};

    fn k(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn cancellation_gives_zero() {
        let a = k(1, 0).mul(&k(1, 0)).unwrap();
        assert!(poly_is_zero(&a.sub(&a).unwrap()));
    }

    #[test]
    fn simplex_area_value() {
        let s = k(3, 0).add(&k(3, 1)).unwrap().add(&k(3, 2)).unwrap();
        let p = s.mul(&s).unwrap().scale(&q(1, 2));
        assert_eq!(p.eval(&[qi(0), qi(0), qi(1)]).unwrap(), q(1, 2));
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous());
    }

    #[test]
    fn mismatched_variables_rejected() {
        assert!(k(2, 0).add(&k(3, 0)).is_err());
        assert!(k(2, 0).mul(&k(3, 0)).is_err());
        assert!(k(2, 0).eval(&[qi(1)]).is_err());
    }

    #[test]
    fn derivative_and_display() {
        let p = k(2, 0).mul(&k(2, 0)).unwrap().mul(&k(2, 1)).unwrap().scale(&q(3, 2));
        assert_eq!(p.partial(0).to_string(), "3*k1*k2");
        assert_eq!(p.partial(1).to_string(), "3/2*k1^2");
        let l = MultiPoly::linear(&[qi(1), qi(-1)]);
        assert_eq!(l.to_string(), "k1 - k2");
        assert_eq!(l.as_affine().unwrap().0, vec![qi(1), qi(-1)]);
    }

    #[test]
    fn embedding_and_affine_composition() {
        let p = k(2, 0).mul(&k(2, 1)).unwrap();
        let e = p.embed(3, &[2, 0]);
        assert_eq!(e, k(3, 2).mul(&k(3, 0)).unwrap());
        // k1 -> k1 + 1, k2 -> k2
        let id = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        let c = p.compose_affine(&id, &[qi(1), qi(0)]);
        assert_eq!(c, p.add(&k(2, 1)).unwrap());
    }

    #[test]
    fn integer_fast_path_matches() {
        let a = IntPoly::<i128>::linear(2, &[(0, qi(2)), (1, qi(-1))]).unwrap();
        let mut acc = IntPoly::<i128>::zero(2);
        acc.add_product(&a, &a, &1).unwrap();
        let m = acc.to_multipoly(&qi(2));
        let l = MultiPoly::linear(&[qi(2), qi(-1)]);
        assert_eq!(m, l.mul(&l).unwrap().scale(&q(1, 2)));
        assert!(IntPoly::<i128>::linear(1, &[(0, q(1, 2))]).is_none());
    }
}
