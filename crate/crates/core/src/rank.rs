//! Rank over the fraction field of `Z[t_1^±..t_r^±]`, determinants and minors.
//!
//! The exact route is fraction-free (Bareiss) elimination with full pivoting;
//! the modular route specializes at random points of `(F_p^*)^r`. Specialization
//! can only lose rank, so the modular value is a lower bound for the exact one.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::grid;
pub use crate::grid::DEFAULT_GRID_BUDGET;
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::modp::{self, FpPoly, SAMPLE_PRIMES};

/// Points sampled per prime by the modular method.
pub const POINTS_PER_PRIME: usize = 5;

/// Default cap on the number of minors enumerated by [`minors`].
pub const DEFAULT_MINOR_CAP: u128 = 1_000_000;

/// Default bound on `rows * cols` under which `auto` confirms exactly.
pub const DEFAULT_EXACT_SIZE_BOUND: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Exact,
    Modular,
    #[default]
    Auto,
}

impl std::str::FromStr for RankMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(RankMethod::Exact),
            "modular" => Ok(RankMethod::Modular),
            "auto" => Ok(RankMethod::Auto),
            other => Err(format!("unknown rank method `{other}` (exact|modular|auto)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOptions {
    pub method: RankMethod,
    /// `auto` runs exact elimination when `rows * cols` is at most this.
    pub exact_size_bound: usize,
    pub seed: u64,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            method: RankMethod::Auto,
            exact_size_bound: DEFAULT_EXACT_SIZE_BOUND,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankProvenance {
    Exact,
    ModularSampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularWitness {
    pub prime: u64,
    pub point: Vec<u64>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub value: usize,
    pub method: RankProvenance,
    /// Present whenever modular sampling ran.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<ModularWitness>,
}

impl RankResult {
    /// Whether every modular sample returned the same rank.
    pub fn unanimous(&self) -> bool {
        self.witnesses.iter().map(|w| w.rank).all_equal()
    }
}

/// Integral domain with exact division, as needed by fraction-free elimination.
pub(crate) trait ExactDomain: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Option<Self>;
    /// Smaller is a better pivot: (term count, degree).
    fn pivot_key(&self) -> (usize, i64);
}

impl ExactDomain for LaurentPoly {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, d)
    }
    fn pivot_key(&self) -> (usize, i64) {
        (self.num_terms(), self.degree_span())
    }
}

impl ExactDomain for FpPoly {
    fn is_zero(&self) -> bool {
        FpPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        FpPoly::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FpPoly::sub(self, o)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        FpPoly::div_exact(self, d)
    }
    fn pivot_key(&self) -> (usize, i64) {
        (self.nonzero_terms(), self.degree().map_or(0, |d| d as i64))
    }
}

pub(crate) struct Elimination<T> {
    pub rank: usize,
    /// Original indices of the pivot rows and columns, in pivot order.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    /// The last pivot: up to `sign` the minor on `pivot_rows x pivot_cols`.
    pub last_pivot: Option<T>,
    pub sign: i8,
}

/// Fraction-free elimination with full pivoting.
///
/// Pivot choice: fewest terms, then lowest degree, then lowest column, then
/// lowest row. Every division by the previous pivot is exact (Sylvester's
/// identity); a failed division is a bug and panics.
/// Pivot preference: fewer terms, lower degree, then position.
type PivotRank = (usize, i64, usize, usize);

pub(crate) fn bareiss<T: ExactDomain>(mut a: Vec<Vec<T>>, one: T) -> Elimination<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut row_ids: Vec<usize> = (0..rows).collect();
    let mut col_ids: Vec<usize> = (0..cols).collect();
    let mut prev = one;
    let mut sign = 1i8;
    let mut rank = 0;
    let mut last_pivot = None;
    for k in 0..rows.min(cols) {
        // (pivot key, row, column)
        let mut best: Option<(PivotRank, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if e.is_zero() {
                    continue;
                }
                let (terms, deg) = e.pivot_key();
                let key = (terms, deg, j, i);
                if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                    best = Some((key, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        if pi != k {
            a.swap(pi, k);
            row_ids.swap(pi, k);
            sign = -sign;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            col_ids.swap(pj, k);
            sign = -sign;
        }
        let pivot = a[k][k].clone();
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        bottom.par_iter_mut().for_each(|row| {
            let lead = row[k].clone();
            for j in k + 1..cols {
                let num = pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination left the coefficient ring");
            }
            row[k] = lead.sub(&lead);
        });
        prev = pivot.clone();
        last_pivot = Some(pivot);
        rank += 1;
    }
    Elimination {
        rank,
        pivot_rows: row_ids[..rank].to_vec(),
        pivot_cols: col_ids[..rank].to_vec(),
        last_pivot,
        sign,
    }
}

fn laurent_rows(m: &LaurentMatrix) -> Vec<Vec<LaurentPoly>> {
    m.to_rows()
}

/// Exact rank over `Q(t_1..t_r)`.
///
/// Univariate matrices go straight to Bareiss. With two or more variables the
/// modular lower bound is certified on an evaluation grid when the grid is
/// small enough, since multivariate elimination swells badly on
/// rank-deficient input.
pub fn exact_rank(m: &LaurentMatrix) -> usize {
    if m.nvars() >= 2 && !m.is_zero() {
        if let Some(r) = grid_rank(m, DEFAULT_GRID_BUDGET) {
            return r;
        }
    }
    bareiss_rank(m)
}

/// Exact rank by fraction-free elimination over the Laurent ring.
pub fn bareiss_rank(m: &LaurentMatrix) -> usize {
    bareiss(laurent_rows(m), LaurentPoly::one(m.nvars())).rank
}

/// Exact rank by grid certification, or `None` when the grid would need more
/// than `budget` point evaluations (or `m` has no variables).
pub fn grid_rank(m: &LaurentMatrix, budget: u128) -> Option<usize> {
    if m.nvars() == 0 {
        return None;
    }
    let lower = modular_rank(m, 0).value;
    grid::certified_rank(m, lower, budget)
}

/// Determinant of a square Laurent matrix (1 for the empty matrix).
pub fn determinant(m: &LaurentMatrix) -> LaurentPoly {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return LaurentPoly::one(m.nvars());
    }
    let e = bareiss(laurent_rows(m), LaurentPoly::one(m.nvars()));
    if e.rank < n {
        return LaurentPoly::zero(m.nvars());
    }
    let d = e.last_pivot.expect("full-rank elimination has a pivot");
    if e.sign < 0 {
        -d
    } else {
        d
    }
}

/// A nonzero maximal minor `(rows, cols, value)`, or `None` for rank 0.
pub(crate) fn nonzero_maximal_minor(m: &LaurentMatrix) -> Option<(Vec<usize>, Vec<usize>, LaurentPoly)> {
    let e = bareiss(laurent_rows(m), LaurentPoly::one(m.nvars()));
    if e.rank == 0 {
        return None;
    }
    let mut rows = e.pivot_rows.clone();
    let mut cols = e.pivot_cols.clone();
    rows.sort_unstable();
    cols.sort_unstable();
    let minor = determinant(&m.submatrix(&rows, &cols));
    debug_assert!(!minor.is_zero());
    Some((rows, cols, minor))
}

/// Rank over `F_p(s)` of a matrix of polynomials over `F_p`.
pub(crate) fn fp_poly_rank(rows: Vec<Vec<FpPoly>>, p: u64) -> usize {
    bareiss(rows, FpPoly::new(p, vec![1])).rank
}

/// Random points of `(F_p^*)^r` for the modular method, deterministic in `seed`.
pub fn sample_points(nvars: usize, seed: u64) -> Vec<(u64, Vec<u64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(SAMPLE_PRIMES.len() * POINTS_PER_PRIME);
    for &p in &SAMPLE_PRIMES {
        for _ in 0..POINTS_PER_PRIME {
            out.push((p, (0..nvars).map(|_| rng.gen_range(1..p)).collect()));
        }
    }
    out
}

/// Maximum specialized rank over [`SAMPLE_PRIMES`] x [`POINTS_PER_PRIME`] points.
pub fn modular_rank(m: &LaurentMatrix, seed: u64) -> RankResult {
    let witnesses: Vec<ModularWitness> = sample_points(m.nvars(), seed)
        .into_par_iter()
        .map(|(prime, point)| {
            let rank = modp::rank_mod(m.eval_mod(prime, &point), prime);
            ModularWitness { prime, point, rank }
        })
        .collect();
    RankResult {
        value: witnesses.iter().map(|w| w.rank).max().unwrap_or(0),
        method: RankProvenance::ModularSampled,
        witnesses,
    }
}

/// Rank of `m` over the fraction field of the Laurent ring.
pub fn rank_fraction_field(m: &LaurentMatrix, opts: &RankOptions) -> RankResult {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return RankResult {
            value: 0,
            method: RankProvenance::Exact,
            witnesses: Vec::new(),
        };
    }
    match opts.method {
        RankMethod::Exact => RankResult {
            value: exact_rank(m),
            method: RankProvenance::Exact,
            witnesses: Vec::new(),
        },
        RankMethod::Modular => modular_rank(m, opts.seed),
        RankMethod::Auto => {
            let modular = modular_rank(m, opts.seed);
            if m.rows() * m.cols() > opts.exact_size_bound {
                return modular;
            }
            let exact = exact_rank(m);
            assert!(
                modular.value <= exact,
                "specialized rank {} exceeds generic rank {exact}",
                modular.value
            );
            RankResult {
                value: exact,
                method: RankProvenance::Exact,
                witnesses: modular.witnesses,
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// All nonzero `k x k` minors, rows-major order over index subsets.
pub fn minors(m: &LaurentMatrix, k: usize, cap: u128) -> Result<Vec<LaurentPoly>, AlgebraError> {
    if k > m.rows().min(m.cols()) {
        return Ok(Vec::new());
    }
    if k == 0 {
        return Ok(vec![LaurentPoly::one(m.nvars())]);
    }
    let count = binomial(m.rows(), k).saturating_mul(binomial(m.cols(), k));
    if count > cap {
        return Err(AlgebraError::SizeExceeded { k, count, cap });
    }
    let row_sets: Vec<Vec<usize>> = (0..m.rows()).combinations(k).collect();
    let col_sets: Vec<Vec<usize>> = (0..m.cols()).combinations(k).collect();
    let out: Vec<Vec<LaurentPoly>> = row_sets
        .par_iter()
        .map(|rs| {
            col_sets
                .iter()
                .map(|cs| determinant(&m.submatrix(rs, cs)))
                .filter(|d| !d.is_zero())
                .collect()
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = BigRational::one() / &m[rank][col];
        for i in rank + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..cols {
                let v = &f * &m[rank][j];
                m[i][j] -= v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
