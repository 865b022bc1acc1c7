//! Univariate tools over `Z[s]` and `Q[s]`: content, primitive gcds, and
//! invariant factors. These feed the unit tests of the rank-1 Novikov ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::AlgebraError;
use crate::laurent::LaurentPoly;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    /// The polynomial `s^-k f` where `s^k` is the lowest power present in `f`.
    ///
    /// Panics unless `f` is univariate.
    pub fn stripped(f: &LaurentPoly) -> Self {
        assert_eq!(f.nvars(), 1, "univariate polynomial expected");
        let Some(low) = f.min_degree(0) else {
            return IntPoly(Vec::new());
        };
        let high = f.max_degree(0).unwrap_or(low);
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize + 1];
        for (e, c) in f.terms() {
            coeffs[(e[0] - low) as usize] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.0.first().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        IntPoly(self.0.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by zero");
        let lc = d.leading().expect("nonzero").clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let lr = r.last().expect("nonempty").clone();
            for x in r.iter_mut() {
                *x *= &lc;
            }
            for (k, c) in d.0.iter().enumerate() {
                r[k + shift] -= &lr * c;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly(r)
    }

    /// Primitive gcd over `Q[s]` (positive leading coefficient), by the
    /// primitive polynomial remainder sequence.
    pub fn primitive_gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(1, self.0.iter().enumerate().map(|(k, c)| (vec![k as i64], c.clone())))
    }
}

/// Content and primitive-gcd data of a family of rank-1 Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdData {
    /// gcd of every integer coefficient of every input.
    #[serde(serialize_with = "bigint_string")]
    pub content: BigInt,
    /// Primitive `Q[s]`-gcd of the power-stripped inputs, positive leading coefficient.
    #[serde(serialize_with = "laurent_string")]
    pub gcd: LaurentPoly,
    /// `|g(0)|`, never zero.
    #[serde(serialize_with = "bigint_string")]
    pub g0: BigInt,
}

fn bigint_string<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

fn laurent_string<S: serde::Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
    let vars = vec!["s".to_string()];
    let shown = s.collect_str(&p.display_with(&vars));
    shown
}

/// Strips `s`-powers (units of `Z((s))`), then takes the integer content and the
/// primitive `Q[s]`-gcd. Zero inputs are ignored.
pub fn univariate_gcd_data(fs: &[LaurentPoly]) -> Result<GcdData, AlgebraError> {
    let mut content = BigInt::zero();
    let mut g: Option<IntPoly> = None;
    for f in fs {
        if f.nvars() != 1 {
            return Err(AlgebraError::RankMismatch {
                left: 1,
                right: f.nvars(),
            });
        }
        if f.is_zero() {
            continue;
        }
        let p = IntPoly::stripped(f);
        content = content.gcd(&p.content());
        g = Some(match g {
            None => p.primitive_part(),
            Some(acc) => acc.primitive_gcd(&p),
        });
    }
    let g = g.ok_or(AlgebraError::AllZero)?;
    let g0 = g.constant_term().abs();
    debug_assert!(!g0.is_zero(), "stripped gcd vanishes at 0");
    Ok(GcdData {
        content,
        gcd: g.to_laurent(),
        g0,
    })
}

/// Dense rational polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly(p.0.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn scale_shift(&self, c: &BigRational, shift: usize) -> Self {
        let mut v = vec![BigRational::zero(); shift];
        v.extend(self.0.iter().map(|x| x * c));
        RatPoly::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let zero = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&zero) - o.0.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let zero = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&zero) + o.0.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = BigRational::one() / &d.0[dd];
        let mut q = RatPoly(Vec::new());
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = &r.0[rd] * &lead_inv;
            let term = RatPoly::new(
                std::iter::repeat_n(BigRational::zero(), rd - dd)
                    .chain(std::iter::once(c))
                    .collect(),
            );
            r = r.sub(&term.mul(d));
            q = q.add(&term);
        }
        (q, r)
    }

    pub fn monic(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(l) => {
                let inv = BigRational::one() / l;
                self.scale_shift(&inv, 0)
            }
        }
    }

    /// Clears denominators and content; positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            self.0
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Divides out the largest power of `s`.
    pub fn strip_s(&self) -> Self {
        let low = self.0.iter().take_while(|c| c.is_zero()).count();
        RatPoly(self.0[low..].to_vec())
    }
}

/// Invariant factors (monic, nonzero, each dividing the next) of a matrix over
/// the Euclidean domain `Q[s]`, by elementary row and column operations.
pub(crate) fn invariant_factors(mut m: Vec<Vec<RatPoly>>) -> Vec<RatPoly> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        // smallest-degree nonzero entry as pivot
        let best = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by_key(|&(i, j)| (m[i][j].degree(), j, i));
        let Some((pi, pj)) = best else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut restart = false;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].div_rem(&m[k][k]);
                for j in k..cols {
                    let v = m[i][j].sub(&q.mul(&m[k][j]));
                    m[i][j] = v;
                }
                if !r.is_zero() {
                    m.swap(k, i);
                    restart = true;
                    break;
                }
            }
            if restart {
                continue;
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].div_rem(&m[k][k]);
                for row in m.iter_mut().skip(k) {
                    let v = row[j].sub(&q.mul(&row[k]));
                    row[j] = v;
                }
                if !r.is_zero() {
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                    restart = true;
                    break;
                }
            }
            if restart {
                continue;
            }
            // the pivot must divide every remaining entry
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !m[i][j].div_rem(&m[k][k]).1.is_zero()));
            match offender {
                Some(i) => {
                    for j in k..cols {
                        let v = m[k][j].add(&m[i][j]);
                        m[k][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(m[k][k].monic());
    }
    out
}
