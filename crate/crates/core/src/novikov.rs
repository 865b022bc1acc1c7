//! Novikov-Betti numbers, rank-1 Novikov torsion counts and the flat line
//! bundle sampler.
//!
//! Betti numbers are ranks over the fraction field of `Z[H]`, which sits inside
//! the fraction field of the Novikov ring, so no infinite series is ever built.
//!
//! Direction convention for rank 1: boundary matrices are written in `t` with
//! `xi(t) > 0`. The Novikov ring of `+xi` is `Z((s))` with `s = t^{-1}`, series
//! finite below in `s`; the ring of `-xi` is `Z((s))` with `s = t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::BoundaryComplex;
use crate::error::{AlgebraError, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::modp::{self, FpPoly, SAMPLE_PRIMES};
use crate::rank::{
    self, fp_poly_rank, minors, rank_fraction_field, rational_rank, RankOptions, RankProvenance, RankResult,
};
use crate::univariate::{invariant_factors, univariate_gcd_data, IntPoly, RatPoly};

/// Which of `+xi`, `-xi` the Novikov completion is taken along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    /// Rewrites a polynomial in `t` into the `s` normal form of this direction.
    pub fn to_normal_form(self, f: &LaurentPoly) -> LaurentPoly {
        match self {
            Direction::Plus => f.reflect(),
            Direction::Minus => f.clone(),
        }
    }
}

/// `b_i = n_i - rank d_i - rank d_{i+1}` for `i = 0..=top_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiComputation {
    pub betti: Vec<usize>,
    /// `rank d_k` for `k = 1..=d`.
    pub boundary_ranks: Vec<RankResult>,
}

impl BettiComputation {
    /// True if some rank was only sampled modularly.
    pub fn probabilistic(&self) -> bool {
        self.boundary_ranks
            .iter()
            .any(|r| r.method == RankProvenance::ModularSampled)
    }
}

fn dims_from_ranks(dims: &[usize], ranks: &[usize], top: usize) -> Vec<usize> {
    (0..=top)
        .map(|i| {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            let above = ranks.get(i).copied().unwrap_or(0);
            dims[i] - below - above
        })
        .collect()
}

/// Novikov-Betti numbers of a complex coming from a nonzero class.
pub fn novikov_betti(c: &BoundaryComplex, opts: &RankOptions) -> BettiComputation {
    let boundary_ranks: Vec<RankResult> = c.boundaries().iter().map(|d| rank_fraction_field(d, opts)).collect();
    let ranks: Vec<usize> = boundary_ranks.iter().map(|r| r.value).collect();
    BettiComputation {
        betti: dims_from_ranks(c.dims(), &ranks, c.top_dim()),
        boundary_ranks,
    }
}

/// Whether a nonzero rank-1 polynomial in `t` is a unit of the Novikov ring of
/// the given direction: its extreme term in that direction has coefficient ±1.
pub fn unit_in_novikov(f: &LaurentPoly, direction: Direction) -> Result<bool, AlgebraError> {
    if f.nvars() != 1 {
        return Err(AlgebraError::RankTooHigh(f.nvars()));
    }
    let term = match direction {
        Direction::Plus => f.leading_term(),
        Direction::Minus => f.trailing_term(),
    };
    let (_, c) = term.ok_or(AlgebraError::ZeroElement)?;
    Ok(c.abs().is_one())
}

/// Whether the ideal generated by `fs` in the Novikov ring is the unit ideal,
/// i.e. whether their gcd is a unit.
///
/// In `Z((s))` the gcd is a nonunit iff a rational prime divides every
/// coefficient of every input, or the primitive `Q[s]`-gcd `g` of the
/// power-stripped inputs has `|g(0)| > 1`.
pub fn gcd_is_unit(fs: &[LaurentPoly], direction: Direction) -> Result<bool, AlgebraError> {
    let normal: Vec<LaurentPoly> = fs.iter().map(|f| direction.to_normal_form(f)).collect();
    let data = univariate_gcd_data(&normal)?;
    Ok(data.content.is_one() && data.g0.is_one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorsionMethod {
    /// Gcds of `k x k` minors.
    Minors,
    /// Invariant factors over `Q[s]` plus ranks mod the content primes.
    Diagonalization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCount {
    pub value: usize,
    pub method: TorsionMethod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionOptions {
    pub minor_cap: u128,
    /// Use the diagonalization route instead of enumerating minors.
    pub diagonalize: bool,
}

impl Default for TorsionOptions {
    fn default() -> Self {
        TorsionOptions {
            minor_cap: rank::DEFAULT_MINOR_CAP,
            diagonalize: false,
        }
    }
}

/// `q_i` for the given direction: the number of nonunit elementary divisors of
/// `d_{i+1}` over the Novikov ring.
///
/// Over a PID the cycles `Ker d_i` are a direct summand of `C_i`, so the torsion
/// of `H_i` is the torsion of `coker d_{i+1}`. With `D_k` the gcd of the `k x k`
/// minors, `q_i = rank d_{i+1} - max{k : D_k is a unit}`.
pub fn torsion_count(
    c: &BoundaryComplex,
    i: usize,
    direction: Direction,
    opts: &TorsionOptions,
) -> Result<TorsionCount> {
    if c.ring_rank() != 1 {
        return Err(AlgebraError::RankTooHigh(c.ring_rank()).into());
    }
    let method = if opts.diagonalize {
        TorsionMethod::Diagonalization
    } else {
        TorsionMethod::Minors
    };
    let Some(d) = c.boundary(i + 1) else {
        return Ok(TorsionCount { value: 0, method });
    };
    let m = d.map(|f| direction.to_normal_form(f));
    let rank = rank::exact_rank(&m);
    if rank == 0 {
        return Ok(TorsionCount { value: 0, method });
    }
    let k = match method {
        TorsionMethod::Minors => largest_unit_minor_order(&m, rank, opts.minor_cap)?,
        TorsionMethod::Diagonalization => largest_unit_order_by_diagonalization(&m, rank)?,
    };
    Ok(TorsionCount {
        value: rank - k,
        method,
    })
}

/// Binary search for `max{k <= rank : D_k unit}`, using `D_k unit => D_{k-1} unit`.
fn largest_unit_minor_order(m: &LaurentMatrix, rank: usize, cap: u128) -> Result<usize, AlgebraError> {
    // normal form is s; D_k is computed over Z((s)) via `Direction::Minus`, the identity
    let is_unit = |k: usize| -> Result<bool, AlgebraError> {
        let ms = minors(m, k, cap)?;
        gcd_is_unit(&ms, Direction::Minus)
    };
    let mut visited: Vec<(usize, bool)> = vec![(0, true)];
    let (mut lo, mut hi) = (0usize, rank);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        let unit = is_unit(mid)?;
        visited.push((mid, unit));
        if unit {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    for &(k, unit) in &visited {
        if unit {
            assert!(
                visited.iter().all(|&(j, u)| j > k || u),
                "determinantal divisors violate the divisibility chain"
            );
        }
    }
    Ok(lo)
}

/// The same maximum without enumerating minors: `D_k` is a unit iff no content
/// prime `p` drops the rank of `m mod p` below `k` and the primitive part of
/// the `k`-th `Q[s]` determinantal divisor has constant term ±1.
fn largest_unit_order_by_diagonalization(m: &LaurentMatrix, rank: usize) -> Result<usize, AlgebraError> {
    // multiply through by a power of s so every entry is a polynomial
    let low = m.entries().filter_map(|e| e.min_degree(0)).min().unwrap_or(0);
    let poly = m.map(|e| e.shift(&[-low]).expect("shift stays in range"));
    let as_int = |e: &LaurentPoly| -> IntPoly {
        // dense from degree 0
        let high = e.max_degree(0).unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); high.max(0) as usize + 1];
        for (x, c) in e.terms() {
            coeffs[x[0] as usize] = c.clone();
        }
        IntPoly::new(coeffs)
    };
    let int_rows: Vec<Vec<IntPoly>> = (0..poly.rows())
        .map(|i| (0..poly.cols()).map(|j| as_int(poly.get(i, j))).collect())
        .collect();

    let factors = invariant_factors(
        int_rows
            .iter()
            .map(|r| r.iter().map(RatPoly::from_int).collect())
            .collect(),
    );
    assert_eq!(factors.len(), rank, "Q[s] rank disagrees with Bareiss rank");
    let rational_bound = factors
        .iter()
        .take_while(|e| e.strip_s().to_primitive_int().constant_term().abs().is_one())
        .count();

    let (_, _, minor) = rank::nonzero_maximal_minor(&poly).expect("rank is positive");
    let primes = modp::prime_divisors(&minor.content())
        .ok_or_else(|| AlgebraError::Unfactorable(minor.content().to_string()))?;
    let mut content_bound = rank;
    for p in primes {
        let rows: Vec<Vec<FpPoly>> = int_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|f| FpPoly::new(p, f.coeffs().iter().map(|c| modp::bigint_mod(c, p)).collect()))
                    .collect()
            })
            .collect();
        content_bound = content_bound.min(fp_poly_rank(rows, p));
    }
    Ok(rational_bound.min(content_bound))
}

/// A point of `V_xi = (C^*)^r`, exact rational or a residue point mod a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "lowercase")]
pub enum BundlePoint {
    Rational {
        #[serde(with = "rational_strings")]
        coords: Vec<BigRational>,
    },
    Modular {
        prime: u64,
        coords: Vec<u64>,
    },
}

mod rational_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSample {
    pub point: BundlePoint,
    /// `h_0..h_d` at the point.
    pub dims: Vec<usize>,
    /// Set once compared against the Betti numbers: some `h_i > b_i`.
    #[serde(default)]
    pub non_generic: bool,
}

/// Homology dimensions with coefficients in the flat line bundle at `point`.
pub fn sample_bundle(c: &BoundaryComplex, point: &BundlePoint) -> Result<BundleSample, AlgebraError> {
    let r = c.ring_rank();
    let ranks: Vec<usize> = match point {
        BundlePoint::Rational { coords } => {
            check_point(r, coords.len(), coords.iter().map(Zero::is_zero))?;
            c.boundaries()
                .iter()
                .map(|d| rational_rank(d.eval_rational(coords)))
                .collect()
        }
        BundlePoint::Modular { prime, coords } => {
            check_point(r, coords.len(), coords.iter().map(|x| x % prime == 0))?;
            c.boundaries()
                .iter()
                .map(|d| modp::rank_mod(d.eval_mod(*prime, coords), *prime))
                .collect()
        }
    };
    Ok(BundleSample {
        point: point.clone(),
        dims: dims_from_ranks(c.dims(), &ranks, c.top_dim()),
        non_generic: false,
    })
}

fn check_point(r: usize, len: usize, mut zeros: impl Iterator<Item = bool>) -> Result<(), AlgebraError> {
    if len != r {
        return Err(AlgebraError::PointDimension { expected: r, got: len });
    }
    match zeros.position(|z| z) {
        Some(i) => Err(AlgebraError::ZeroCoordinate(i)),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericDims {
    /// Componentwise minimum over all samples.
    pub min_dims: Vec<usize>,
    pub samples: Vec<BundleSample>,
}

/// Samples `count` random points of `(F_p^*)^r`, cycling through
/// [`SAMPLE_PRIMES`], and takes the componentwise minimum.
pub fn generic_dims(c: &BoundaryComplex, count: usize, seed: u64) -> Result<GenericDims, AlgebraError> {
    assert!(count >= 1, "at least one sample is required");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<BundlePoint> = (0..count)
        .map(|k| {
            let prime = SAMPLE_PRIMES[k % SAMPLE_PRIMES.len()];
            BundlePoint::Modular {
                prime,
                coords: (0..c.ring_rank()).map(|_| rng.gen_range(1..prime)).collect(),
            }
        })
        .collect();
    let samples = points
        .par_iter()
        .map(|pt| sample_bundle(c, pt))
        .collect::<Result<Vec<_>, _>>()?;
    let len = samples[0].dims.len();
    let min_dims = (0..len)
        .map(|i| samples.iter().map(|s| s.dims[i]).min().expect("nonempty"))
        .collect();
    Ok(GenericDims { min_dims, samples })
}

/// Flags every sample whose dimensions exceed `betti` somewhere.
pub fn flag_jumps(samples: &mut [BundleSample], betti: &[usize]) {
    for s in samples {
        s.non_generic = s.dims.iter().zip(betti).any(|(h, b)| h > b);
    }
}

/// Everything computed for one complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NovikovNumbers {
    pub betti: Vec<usize>,
    pub torsion_plus: Option<Vec<usize>>,
    pub torsion_minus: Option<Vec<usize>>,
    pub euler: i64,
}

impl NovikovNumbers {
    /// Betti numbers, and torsion in both directions when `torsion` is set.
    pub fn compute(
        c: &BoundaryComplex,
        rank_opts: &RankOptions,
        torsion: Option<&TorsionOptions>,
    ) -> Result<(Self, BettiComputation)> {
        let comp = novikov_betti(c, rank_opts);
        let (torsion_plus, torsion_minus) = match torsion {
            Some(topts) => {
                let q = |dir| {
                    (0..=c.top_dim())
                        .map(|i| torsion_count(c, i, dir, topts).map(|t| t.value))
                        .collect::<Result<Vec<_>>>()
                };
                (Some(q(Direction::Plus)?), Some(q(Direction::Minus)?))
            }
            None => (None, None),
        };
        let numbers = NovikovNumbers {
            betti: comp.betti.clone(),
            torsion_plus,
            torsion_minus,
            euler: c.euler_characteristic(),
        };
        debug_assert_eq!(numbers.alternating_sum(), numbers.euler);
        Ok((numbers, comp))
    }

    pub fn b1(&self) -> usize {
        self.betti.get(1).copied().unwrap_or(0)
    }

    pub fn alternating_sum(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}
