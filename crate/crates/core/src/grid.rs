//! Exact rank over `Q(t_1..t_r)` by specialization.
//!
//! Lower bound: a nonzero `k x k` minor of `M(x) mod p` at any point `x` of
//! `(F_p^*)^r` means that minor is a nonzero Laurent polynomial, so the generic
//! rank is at least `k`.
//!
//! Upper bound: every `rho x rho` minor, times a monomial, is a polynomial of
//! degree at most `D_i` in `t_i`, where `D_i` sums the `rho` largest row (or
//! column) spans in `t_i`. A nonzero polynomial over `F_p` with these degree
//! bounds cannot vanish on a grid `S_1 x .. x S_r` with `|S_i| > D_i`. If no
//! grid point reaches rank `rho` modulo each of several primes whose product
//! exceeds a bound on the minors' coefficients, every `rho x rho` minor is zero.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::laurent::LaurentMatrix;
use crate::modp::{self, is_prime_u64};

/// Point-prime evaluations allowed before falling back to elimination.
pub const DEFAULT_GRID_BUDGET: u128 = 4_000_000;

/// First prime used for grids; the rest are the next primes below it.
const GRID_PRIME_START: u64 = (1 << 31) - 1;

#[derive(Clone, Debug)]
pub(crate) struct GridPlan {
    pub rho: usize,
    /// Grid side lengths `D_i + 1`.
    pub sides: Vec<u64>,
    pub primes: Vec<u64>,
}

impl GridPlan {
    pub fn cost(&self) -> u128 {
        self.sides.iter().map(|&s| s as u128).product::<u128>() * self.primes.len() as u128
    }
}

fn sum_of_largest(mut v: Vec<i64>, k: usize) -> i64 {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.iter().take(k).sum()
}

fn product_of_largest(mut v: Vec<BigInt>, k: usize) -> BigInt {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.iter().take(k).product()
}

/// Spans per variable of each line (row or column), and its l1 norm.
fn line_stats<'a>(
    nvars: usize,
    lines: impl Iterator<Item = Vec<&'a crate::laurent::LaurentPoly>>,
) -> (Vec<Vec<i64>>, Vec<BigInt>) {
    let mut spans = vec![Vec::new(); nvars];
    let mut norms = Vec::new();
    for line in lines {
        let mut norm = BigInt::from(0);
        for v in 0..nvars {
            let lo = line.iter().filter_map(|e| e.min_degree(v)).min();
            let hi = line.iter().filter_map(|e| e.max_degree(v)).max();
            spans[v].push(match (lo, hi) {
                (Some(lo), Some(hi)) => hi.saturating_sub(lo),
                _ => 0,
            });
        }
        for e in &line {
            for (_, c) in e.terms() {
                norm += c.abs();
            }
        }
        norms.push(norm);
    }
    (spans, norms)
}

pub(crate) fn plan(m: &LaurentMatrix, rho: usize) -> Option<GridPlan> {
    let r = m.nvars();
    let rows = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect());
    let cols = (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j)).collect());
    let (row_spans, row_norms) = line_stats(r, rows);
    let (col_spans, col_norms) = line_stats(r, cols);
    let mut sides = Vec::with_capacity(r);
    for v in 0..r {
        let d = sum_of_largest(row_spans[v].clone(), rho).min(sum_of_largest(col_spans[v].clone(), rho));
        sides.push(u64::try_from(d).ok()?.checked_add(1)?);
    }
    let bound = product_of_largest(row_norms, rho).min(product_of_largest(col_norms, rho));
    let mut primes = Vec::new();
    let mut modulus = BigInt::one();
    let mut candidate = GRID_PRIME_START;
    while modulus <= bound {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        primes.push(candidate);
        modulus *= candidate;
        candidate -= 2;
    }
    if sides.iter().any(|&s| s >= GRID_PRIME_START / 2) {
        return None;
    }
    Some(GridPlan { rho, sides, primes })
}

/// Rank mod `p` without inverses: rows are combined fraction-free.
fn rank_mod_small(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pv = m[rank][col];
        for i in rank + 1..rows {
            let lead = m[i][col];
            if lead == 0 {
                continue;
            }
            for j in col..cols {
                let a = modp::mul(pv, m[i][j], p);
                let b = modp::mul(lead, m[rank][j], p);
                m[i][j] = modp::sub(a, b, p);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Entry terms with exponents relative to the per-variable minimum and
/// coefficients reduced mod `p`.
struct Reduced {
    low: Vec<i64>,
    /// Per entry: `(exponents - low, coefficient mod p)`.
    entries: Vec<Vec<(Vec<usize>, u64)>>,
    high: Vec<usize>,
}

fn reduce(m: &LaurentMatrix, p: u64) -> Reduced {
    let r = m.nvars();
    let low: Vec<i64> = (0..r)
        .map(|v| m.entries().filter_map(|e| e.min_degree(v)).min().unwrap_or(0))
        .collect();
    let mut high = vec![0usize; r];
    let entries = m
        .entries()
        .map(|e| {
            e.terms()
                .map(|(x, c)| {
                    let rel: Vec<usize> = x.iter().zip(&low).map(|(a, b)| (a - b) as usize).collect();
                    for (h, &d) in high.iter_mut().zip(&rel) {
                        *h = (*h).max(d);
                    }
                    (rel, modp::bigint_mod(c, p))
                })
                .filter(|(_, c)| *c != 0)
                .collect()
        })
        .collect();
    Reduced { low, entries, high }
}

/// Scans the grid mod `p`; returns the first rank above `rho - 1`, if any.
fn scan_prime(m: &LaurentMatrix, plan: &GridPlan, p: u64) -> Option<usize> {
    let r = m.nvars();
    let red = reduce(m, p);
    let (rows, cols) = m.shape();
    // powers[v][x][d] = x^(d + low_v) for grid coordinate x = 1..=side
    let powers: Vec<Vec<Vec<u64>>> = (0..r)
        .map(|v| {
            (1..=plan.sides[v])
                .map(|x| {
                    let base = modp::pow_signed(x, red.low[v], p);
                    let mut row = Vec::with_capacity(red.high[v] + 1);
                    let mut acc = base;
                    for _ in 0..=red.high[v] {
                        row.push(acc);
                        acc = modp::mul(acc, x, p);
                    }
                    row
                })
                .collect()
        })
        .collect();
    let last = r - 1;
    let prefix_count: u128 = plan.sides[..last].iter().map(|&s| s as u128).product();
    let mut idx = vec![0usize; last];
    let mut matrix = vec![vec![0u64; cols]; rows];
    for _ in 0..prefix_count {
        // partial evaluation in t_1..t_{r-1}: univariate in t_r per entry
        let partial: Vec<Vec<u64>> = red
            .entries
            .iter()
            .map(|terms| {
                let mut coeffs = vec![0u64; red.high[last] + 1];
                for (x, c) in terms {
                    let mut v = *c;
                    for (k, &i) in idx.iter().enumerate() {
                        v = modp::mul(v, powers[k][i][x[k]], p);
                    }
                    coeffs[x[last]] = modp::add(coeffs[x[last]], v, p);
                }
                coeffs
            })
            .collect();
        for xr in 0..plan.sides[last] as usize {
            let pw = &powers[last][xr];
            for (e, coeffs) in partial.iter().enumerate() {
                let mut v = 0u64;
                for (d, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        v = modp::add(v, modp::mul(c, pw[d], p), p);
                    }
                }
                matrix[e / cols][e % cols] = v;
            }
            let rank = rank_mod_small(&mut matrix, p);
            if rank >= plan.rho {
                return Some(rank);
            }
        }
        for k in (0..last).rev() {
            idx[k] += 1;
            if (idx[k] as u64) < plan.sides[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    None
}

/// Exact rank from a proven lower bound, or `None` if a grid would exceed
/// `budget` evaluations.
/// Needs at least one variable.
pub(crate) fn certified_rank(m: &LaurentMatrix, lower: usize, budget: u128) -> Option<usize> {
    assert!(m.nvars() > 0, "grid rank needs a variable");
    let max = m.rows().min(m.cols());
    let mut r0 = lower;
    while r0 < max {
        let plan = plan(m, r0 + 1)?;
        if plan.cost() > budget {
            return None;
        }
        match plan.primes.iter().find_map(|&p| scan_prime(m, &plan, p)) {
            Some(higher) => r0 = higher,
            None => return Some(r0),
        }
    }
    Some(r0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn outer_product_has_rank_one() {
        let x = poly(2, &[(&[1, 0], 1), (&[0, 0], -2)]);
        let y = poly(2, &[(&[0, 1], 3), (&[0, -1], 1)]);
        let z = poly(2, &[(&[1, 1], 1)]);
        let m = LaurentMatrix::from_rows(
            2,
            vec![vec![&x * &x, &x * &y, &x * &z], vec![&y * &x, &y * &y, &y * &z]],
        )
        .unwrap();
        assert_eq!(certified_rank(&m, 0, DEFAULT_GRID_BUDGET), Some(1));
        assert_eq!(certified_rank(&m, 1, DEFAULT_GRID_BUDGET), Some(1));
    }

    #[test]
    fn full_rank_is_found_from_zero() {
        let t = poly(2, &[(&[1, 0], 1)]);
        let s = poly(2, &[(&[0, 1], 1)]);
        let m = LaurentMatrix::from_rows(2, vec![vec![t.clone(), s.clone()], vec![s, t]]).unwrap();
        assert_eq!(certified_rank(&m, 0, DEFAULT_GRID_BUDGET), Some(2));
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        let big = BigInt::from(10).pow(30);
        let a = LaurentPoly::constant(2, big.clone());
        let m = LaurentMatrix::from_rows(2, vec![vec![a.clone(), a.clone()], vec![a.clone(), a]]).unwrap();
        assert!(plan(&m, 2).unwrap().primes.len() >= 4);
        assert_eq!(certified_rank(&m, 0, DEFAULT_GRID_BUDGET), Some(1));
    }

    #[test]
    fn huge_exponents_are_refused() {
        let e = poly(2, &[(&[1 << 40, 0], 1), (&[0, 0], 1)]);
        let m = LaurentMatrix::from_rows(2, vec![vec![e.clone()], vec![e]]).unwrap();
        assert_eq!(certified_rank(&m, 0, DEFAULT_GRID_BUDGET), None);
    }
}
