//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use novikov_core::laurent::{LaurentMatrix, LaurentPoly};
use novikov_core::presentation::{FreeWord, Presentation};
use novikov_core::rank::rational_rank;
use novikov_core::univariate::IntPoly;

pub const BEZOUT_DEPTH: usize = 25;

/// Whether `sum u_i f_i = s^N` has a solution with `u_i` in `Z[[s]]` and
/// `N <= depth`, decided on the truncation mod `s^{depth+1}`.
///
/// The span `L` of `s^j f_i` mod `s^{depth+1}` is closed under multiplication
/// by `s`, so `s^N` is in `L` iff the Hermite pivot of `L` at position `N`
/// is ±1. Inputs are in the normal form variable `s`.
pub fn truncated_bezout(fs: &[LaurentPoly], depth: usize) -> bool {
    let width = depth + 1;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for f in fs.iter().filter(|f| !f.is_zero()) {
        let c = IntPoly::stripped(f);
        for j in 0..width {
            let mut row = vec![BigInt::zero(); width];
            for (k, a) in c.coeffs().iter().enumerate() {
                if j + k < width {
                    row[j + k] = a.clone();
                }
            }
            rows.push(row);
        }
    }
    hermite_pivots(rows, width).iter().any(|p| p.abs().is_one())
}

/// Pivots of the row-style Hermite form, scanning columns left to right.
pub fn hermite_pivots(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<BigInt> {
    let mut pivots = Vec::new();
    for col in 0..width {
        let mut active: Vec<Vec<BigInt>> = Vec::new();
        let mut rest = Vec::new();
        for r in rows {
            if r[col].is_zero() {
                rest.push(r);
            } else {
                active.push(r);
            }
        }
        while active.len() > 1 {
            active.sort_by(|a, b| a[col].abs().cmp(&b[col].abs()));
            let (head, tail) = active.split_at_mut(1);
            let p = &head[0];
            for r in tail.iter_mut() {
                let q = r[col].div_floor(&p[col]);
                for k in col..width {
                    let v = &q * &p[k];
                    r[k] -= v;
                }
            }
            let (keep, zeroed): (Vec<_>, Vec<_>) = active.into_iter().partition(|r| !r[col].is_zero());
            rest.extend(zeroed);
            active = keep;
        }
        if let Some(p) = active.pop() {
            pivots.push(p[col].clone());
        }
        rows = rest;
    }
    pivots
}

/// Rank over `Q(t)` of a univariate matrix by evaluating at more integer points
/// than any nonzero minor (times a power of `t`) can vanish at.
pub fn rank_by_interpolation(m: &LaurentMatrix) -> usize {
    assert_eq!(m.nvars(), 1);
    let k = m.rows().min(m.cols()) as i64;
    let nonzero = || m.entries().filter(|e| !e.is_zero());
    let span = match (
        nonzero().filter_map(|e| e.max_degree(0)).max(),
        nonzero().filter_map(|e| e.min_degree(0)).min(),
    ) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0,
    };
    let bound = k * span + 1;
    (1..=bound)
        .map(|x| rational_rank(m.eval_rational(&[BigRational::from_integer(x.into())])))
        .max()
        .unwrap_or(0)
}

pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_terms: usize, deg: i64, coeff: i64) -> LaurentPoly {
    let n = rng.gen_range(0..=max_terms);
    LaurentPoly::from_terms(
        nvars,
        (0..n).map(|_| {
            let e: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-deg..=deg)).collect();
            (e, BigInt::from(rng.gen_range(-coeff..=coeff)))
        }),
    )
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, nvars: usize) -> LaurentMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| random_poly(rng, nvars, 3, 2, 4)).collect())
        .collect();
    LaurentMatrix::from_rows(nvars, entries).unwrap()
}

/// Rank-deficient matrices from products `A (cols' x k) B`.
pub fn random_low_rank<R: Rng>(rng: &mut R, rows: usize, cols: usize, nvars: usize) -> LaurentMatrix {
    let k = rng.gen_range(0..=rows.min(cols));
    let a = random_matrix(rng, rows, k, nvars);
    let b = random_matrix(rng, k, cols, nvars);
    if k == 0 {
        return LaurentMatrix::zeros(nvars, rows, cols);
    }
    a.checked_mul(&b).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, gens: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(1..=max_len);
    FreeWord::raw((0..len).map(|_| (rng.gen_range(0..gens), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

/// Random presentation with at least one nonzero class, or `None` if the
/// drawn relators kill the abelianization rank.
pub fn random_presentation<R: Rng>(
    rng: &mut R,
    max_gens: usize,
    max_rels: usize,
    max_len: usize,
) -> Option<Presentation> {
    let g = rng.gen_range(1..=max_gens);
    let m = rng.gen_range(0..=max_rels);
    let names: Vec<String> = (0..g).map(|i| format!("x{i}")).collect();
    let rels: Vec<FreeWord> = (0..m)
        .map(|_| random_word(rng, g, max_len))
        .filter(|w| !novikov_core::free_reduce(w).is_identity())
        .collect();
    let p = Presentation::new(names, rels).ok()?;
    (p.first_betti_number() > 0).then_some(p)
}

/// Random nonzero integer combination of the character basis.
pub fn random_class_row<R: Rng>(rng: &mut R, p: &Presentation) -> Vec<BigRational> {
    let basis = p.character_basis();
    loop {
        let mut v = vec![BigInt::zero(); p.num_generators()];
        for b in &basis {
            let c: i64 = rng.gen_range(-3..=3);
            for (x, y) in v.iter_mut().zip(b) {
                *x += y * c;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v.into_iter().map(BigRational::from_integer).collect();
        }
    }
}

pub fn random_univariate_set<R: Rng>(rng: &mut R) -> Vec<LaurentPoly> {
    let n = rng.gen_range(1..=3);
    loop {
        let fs: Vec<LaurentPoly> = (0..n)
            .map(|_| {
                let deg = rng.gen_range(0..=6usize);
                let low = rng.gen_range(-3..=3);
                let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
                LaurentPoly::univariate(low, &coeffs)
            })
            .collect();
        if fs.iter().any(|f| !f.is_zero()) {
            return fs;
        }
    }
}
