//! Exact multivariate Laurent polynomials over the integers and matrices of them.
//!
//! A [`LaurentPoly`] in `r` variables is an element of `Z[t_1^±, ..., t_r^±]`, the
//! group ring of the free abelian group `Z^r`. Terms are kept in a `BTreeMap`
//! keyed by exponent vector, so equality and printing are canonical and the last
//! key is the lexicographically leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::modp;

pub type Exponent = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

/// Binary operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Exact `a op b`; fails on rank mismatch or exponent overflow.
pub fn poly_arith(a: &LaurentPoly, b: &LaurentPoly, op: PolyOp) -> Result<LaurentPoly, AlgebraError> {
    match op {
        PolyOp::Add => a.checked_add(b),
        PolyOp::Sub => a.checked_sub(b),
        PolyOp::Mul => a.checked_mul(b),
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        let nvars = exp.len();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `t_i` (0-based) in a ring of `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::monomial(exp, 1)
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    ///
    /// Panics if an exponent vector does not have `nvars` entries.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c.into());
        }
        p
    }

    /// Univariate convenience: `coeffs[k]` is the coefficient of `t^(low + k)`.
    pub fn univariate(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (vec![low + k as i64], c)))
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.last_key_value()
    }

    /// Lexicographically smallest term.
    pub fn trailing_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.first_key_value()
    }

    pub fn max_degree(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn min_degree(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// Sum over variables of `max_degree - min_degree`; zero for monomials.
    pub fn degree_span(&self) -> i64 {
        (0..self.nvars)
            .map(|v| match (self.min_degree(v), self.max_degree(v)) {
                (Some(lo), Some(hi)) => hi - lo,
                _ => 0,
            })
            .sum()
    }

    /// gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn check_rank(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::RankMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exponents(e1, e2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Result<Self, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(add_exponents(e, shift)?, c.clone());
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// The ring automorphism `t_i -> t_i^{-1}` for every variable.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Leading-term division in lex order, which is a group order on `Z^r`.
    /// Every quotient term must lie in the box cut out by the per-variable
    /// degree bounds, which makes the loop finite even when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars, "rank mismatch in division");
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let n = self.nvars;
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for v in 0..n {
            lo.push(self.min_degree(v)? - d.min_degree(v)?);
            hi.push(self.max_degree(v)? - d.max_degree(v)?);
            if lo[v] > hi[v] {
                return None;
            }
        }
        let (dlead_e, dlead_c) = d.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(n);
        while let Some((re, rc)) = rem.leading_term() {
            let (q, r) = rc.div_rem(dlead_c);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponent = re.iter().zip(dlead_e).map(|(a, b)| a - b).collect();
            if qe.iter().enumerate().any(|(v, &x)| x < lo[v] || x > hi[v]) {
                return None;
            }
            let term = Self::monomial(qe.clone(), q.clone());
            rem = rem.checked_sub(&term.checked_mul(d).ok()?).ok()?;
            quot.add_term(qe, q);
        }
        Some(quot)
    }

    /// Value at a point of `(F_p^*)^r`; coordinates must be nonzero mod `p`.
    pub fn eval_mod(&self, p: u64, point: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut v = modp::bigint_mod(c, p);
            for (x, &k) in point.iter().zip(e) {
                v = modp::mul(v, modp::pow_signed(*x, k, p), p);
            }
            acc = modp::add(acc, v, p);
        }
        acc
    }

    /// Exact value at a point of `(Q^*)^r`.
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                let k32 = i32::try_from(k).expect("exponent too large for rational evaluation");
                v *= x.pow(k32);
            }
            acc += v;
        }
        acc
    }

    /// Formats with the given variable names.
    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        DisplayWith { p: self, vars }
    }

    pub(crate) fn default_var_names(nvars: usize) -> Vec<String> {
        match nvars {
            1 => vec!["t".to_string()],
            n => (1..=n).map(|i| format!("t{i}")).collect(),
        }
    }
}

fn add_exponents(a: &[i64], b: &[i64]) -> Result<Exponent, AlgebraError> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(AlgebraError::ExponentOverflow))
        .collect()
}

struct DisplayWith<'a> {
    p: &'a LaurentPoly,
    vars: &'a [String],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        // descending order reads naturally for univariate polynomials
        for (k, (e, c)) in self.p.terms.iter().rev().enumerate() {
            let is_const = e.iter().all(|&x| x == 0);
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if is_const {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (name, &x) in self.vars.iter().zip(e) {
                if x == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if x == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = Self::default_var_names(self.nvars);
        let shown = write!(f, "{}", self.display_with(&vars));
        shown
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs)
                    .expect(concat!("LaurentPoly::", stringify!($method)))
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Dense row-major matrix of Laurent polynomials sharing one ring rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            nvars,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(nvars); rows * cols],
        }
    }

    /// Builds from rows; every entry must have `nvars` variables and rows equal length.
    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            for e in row {
                if e.nvars() != nvars {
                    return Err(AlgebraError::RankMismatch {
                        left: nvars,
                        right: e.nvars(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(LaurentMatrix {
            nvars,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Column vector.
    pub fn column(nvars: usize, col: Vec<LaurentPoly>) -> Result<Self, AlgebraError> {
        let n = col.len();
        let mut m = Self::zeros(nvars, n, 1);
        for (i, e) in col.into_iter().enumerate() {
            if e.nvars() != nvars {
                return Err(AlgebraError::RankMismatch {
                    left: nvars,
                    right: e.nvars(),
                });
            }
            m.set(i, 0, e);
        }
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert_eq!(v.nvars(), self.nvars);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.entries.iter()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        LaurentMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn reflect(&self) -> Self {
        self.map(LaurentPoly::reflect)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.nvars, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::RankMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&a.checked_mul(b)?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix of values at a point of `(F_p^*)^r`.
    pub fn eval_mod(&self, p: u64, point: &[u64]) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_mod(p, point)).collect())
            .collect()
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_rational(point)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> LaurentPoly {
        LaurentPoly::var(1, 0)
    }

    fn c(x: i64) -> LaurentPoly {
        LaurentPoly::constant(1, x)
    }

    #[test]
    fn arithmetic_examples() {
        let a = &t() - &c(2);
        assert_eq!(poly_arith(&a, &c(2), PolyOp::Add).unwrap(), t());
        let sq = (&t() - &c(1)) * (&t() + &c(1));
        assert_eq!(sq, LaurentPoly::univariate(0, &[-1, 0, 1]));
        let tinv = LaurentPoly::monomial(vec![-1], 1);
        assert_eq!(&a * &tinv, LaurentPoly::univariate(-1, &[-2, 1]));
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert_eq!(
            poly_arith(&a, &b, PolyOp::Mul),
            Err(AlgebraError::RankMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn exponent_overflow_is_an_error() {
        let a = LaurentPoly::monomial(vec![i64::MAX], 1);
        assert_eq!(a.checked_mul(&t()), Err(AlgebraError::ExponentOverflow));
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::univariate(0, &[-1, 0, 1]);
        let d = &t() - &c(1);
        assert_eq!(a.div_exact(&d).unwrap(), &t() + &c(1));
        assert!(a.div_exact(&(&t() - &c(2))).is_none());
        assert!(c(3).div_exact(&c(2)).is_none());
        // multivariate with negative exponents
        let x = LaurentPoly::var(2, 0);
        let y = LaurentPoly::var(2, 1);
        let yi = LaurentPoly::monomial(vec![0, -1], 1);
        let f = &(&x - &yi) * &(&(&x * &y) + &LaurentPoly::constant(2, 3));
        assert_eq!(
            f.div_exact(&(&x - &yi)).unwrap(),
            &(&x * &y) + &LaurentPoly::constant(2, 3)
        );
    }

    #[test]
    fn display() {
        let p = LaurentPoly::univariate(-1, &[-2, 0, 3]);
        assert_eq!(p.to_string(), "3*t - 2*t^-1");
        assert_eq!(LaurentPoly::univariate(0, &[1, 0, -1]).to_string(), "-t^2 + 1");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let p = LaurentPoly::univariate(-1, &[1, 0, 1]); // t^-1 + t
        assert_eq!(p.eval_mod(7, &[2]), 6); // 4 + 2
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval_rational(&[half]), BigRational::new(5.into(), 2.into()));
    }
}
