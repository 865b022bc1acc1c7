//! Free differential calculus and the push-forward `Z[F] -> Z[H]`, where
//! `H = pi / Ker xi` is free abelian of rank `r`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::laurent::LaurentPoly;
use crate::presentation::{CharacterClass, FreeWord};

/// Element of the integral group ring of a free group; keys are reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    /// The group element `w` (reduced first).
    pub fn from_word(w: FreeWord) -> Self {
        Self::from_terms([(w, BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FreeWord, BigInt)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(crate::presentation::free_reduce(&w), c);
        }
        e
    }

    fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, w: &FreeWord) -> Self {
        Self::from_terms(self.terms.iter().map(|(u, c)| (w.concat(u), c.clone())))
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

/// Fox derivative `d w / d x_gen`.
///
/// Built from `d(uv) = du + u dv` over the syllables of `w`, with
/// `d(x^k)/dx = 1 + x + ... + x^(k-1)` and `d(x^-k)/dx = -(x^-1 + ... + x^-k)`.
pub fn fox_derivative(w: &FreeWord, gen: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &(g, e) in w.letters() {
        if g == gen {
            if e > 0 {
                for j in 0..e {
                    out.add_term(prefix.mul(&FreeWord::raw([(g, j)])), BigInt::one());
                }
            } else {
                for j in 1..=-e {
                    out.add_term(prefix.mul(&FreeWord::raw([(g, -j)])), -BigInt::one());
                }
            }
        }
        prefix = prefix.mul(&FreeWord::raw([(g, e)]));
    }
    out
}

/// The map `pi -> H = Z^r` on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    rank: usize,
    /// `images[g]` is the exponent vector of generator `g` in the basis of `H`.
    images: Vec<Vec<i64>>,
    /// For rank 1: `xi(g) = direction_sign * images[g][0] * scale` with `scale > 0`.
    direction_sign: i8,
}

impl AbelianizationMap {
    /// Image lattice of the integer-scaled character rows, re-expressed in its
    /// Hermite-normal-form basis so that `H` is exactly `Z^r`.
    pub fn from_class(xi: &CharacterClass) -> Result<Self, AlgebraError> {
        let r = xi.rank();
        let g = xi.num_generators();
        let prim = xi.primitive_rows();
        let vectors: Vec<Vec<BigInt>> = (0..g).map(|j| (0..r).map(|i| prim[i][j].clone()).collect()).collect();
        let basis = hermite_basis(vectors.clone(), r);
        assert_eq!(basis.len(), r, "independent rows span a rank-r lattice");
        let mut images = Vec::with_capacity(g);
        for v in &vectors {
            let coords = solve_upper(&basis, v);
            images.push(
                coords
                    .iter()
                    .map(|c| c.to_i64().ok_or(AlgebraError::ExponentOverflow))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        // the Hermite basis has positive pivots, so the rank-1 generator t has xi(t) > 0
        let direction_sign = if r == 1 && basis[0][0].is_negative() { -1 } else { 1 };
        Ok(AbelianizationMap {
            rank: r,
            images,
            direction_sign,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn direction_sign(&self) -> i8 {
        self.direction_sign
    }

    pub fn word_image(&self, w: &FreeWord) -> Result<Vec<i64>, AlgebraError> {
        let mut v = vec![0i64; self.rank];
        for &(g, e) in w.letters() {
            for (x, img) in v.iter_mut().zip(&self.images[g]) {
                let step = img.checked_mul(e).ok_or(AlgebraError::ExponentOverflow)?;
                *x = x.checked_add(step).ok_or(AlgebraError::ExponentOverflow)?;
            }
        }
        Ok(v)
    }
}

/// Row-style Hermite normal form of the lattice spanned by `vectors` in `Z^dim`:
/// returns the nonzero rows (upper triangular, positive pivots).
fn hermite_basis(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut start = 0;
    for col in 0..dim {
        // gcd-combine the column into row `start`
        loop {
            let nonzero: Vec<usize> = (start..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).expect("nonempty");
            rows.swap(start, piv);
            let mut done = true;
            for i in start + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[start][col]);
                for j in 0..dim {
                    let v = &q * &rows[start][j];
                    rows[i][j] -= v;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if start < rows.len() && !rows[start][col].is_zero() {
            if rows[start][col].is_negative() {
                for x in rows[start].iter_mut() {
                    *x = -x.clone();
                }
            }
            start += 1;
        }
    }
    for row in rows.into_iter().take(start) {
        out.push(row);
    }
    // reduce entries above pivots
    let pivots: Vec<usize> = out
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    for k in 0..out.len() {
        let pc = pivots[k];
        for i in 0..k {
            let q = out[i][pc].div_floor(&out[k][pc]);
            if q.is_zero() {
                continue;
            }
            for j in 0..dim {
                let v = &q * &out[k][j];
                out[i][j] -= v;
            }
        }
    }
    out
}

/// Integer coordinates of `v` in a square upper-triangular basis (rows).
fn solve_upper(basis: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let r = basis.len();
    let mut coords = vec![BigInt::zero(); r];
    for col in 0..r {
        let mut acc = v[col].clone();
        for k in 0..col {
            acc -= &coords[k] * &basis[k][col];
        }
        let (q, rem) = acc.div_rem(&basis[col][col]);
        assert!(rem.is_zero(), "vector outside the image lattice");
        coords[col] = q;
    }
    coords
}

/// The ring map `Z[F] -> Z[H]`: each word goes to the monomial of its image.
pub fn abelianize(e: &GroupRingElement, m: &AbelianizationMap) -> Result<LaurentPoly, AlgebraError> {
    let mut terms = Vec::new();
    for (w, c) in e.terms() {
        terms.push((m.word_image(w)?, c.clone()));
    }
    Ok(LaurentPoly::from_terms(m.rank(), terms))
}
