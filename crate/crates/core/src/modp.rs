//! Prime-field helpers: scalar arithmetic, elimination over `F_p`, and
//! univariate polynomials over `F_p` for exact rank computations mod `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Three primes just below `2^31` used for modular rank sampling.
pub const SAMPLE_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `a^-1` for `a != 0 mod p`, `p` prime.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a, p - 2, p)
}

/// `x^k` for a possibly negative exponent; `x` must be a unit mod `p`.
pub fn pow_signed(x: u64, k: i64, p: u64) -> u64 {
    if k >= 0 {
        pow(x, k as u64, p)
    } else {
        pow(inv(x, p), k.unsigned_abs(), p)
    }
}

pub fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Rank of a dense matrix over `F_p` by Gaussian elimination.
pub fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for x in m.iter_mut().flatten() {
        *x %= p;
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv_p = inv(m[rank][col], p);
        for i in rank + 1..rows {
            if m[i][col] == 0 {
                continue;
            }
            let f = mul(m[i][col], inv_p, p);
            for j in col..cols {
                let v = mul(f, m[rank][j], p);
                m[i][j] = sub(m[i][j], v, p);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Distinct prime divisors of `|n|`, `n != 0`.
///
/// Trial division up to 10^6; a cofactor left over must be a 64-bit prime,
/// otherwise `None` is returned.
pub fn prime_divisors(n: &BigInt) -> Option<Vec<u64>> {
    assert!(!n.is_zero(), "prime divisors of zero");
    let mut m = n.magnitude().clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        if let Some(small) = m.to_u64() {
            if small == 1 {
                return Some(out);
            }
            if d.saturating_mul(d) > small {
                out.push(small);
                return Some(out);
            }
        }
        if (&m % d).is_zero() {
            out.push(d);
            while (&m % d).is_zero() {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    match m.to_u64() {
        Some(1) => Some(out),
        Some(rest) if is_prime_u64(rest) => {
            out.push(rest);
            Some(out)
        }
        _ => None,
    }
}

/// Univariate polynomial over `F_p`, dense, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = add(out[i + j], mul(a, b, p), p);
            }
        }
        Self::new(p, out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        let out = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0);
                let b = o.coeffs.get(k).copied().unwrap_or(0);
                sub(a, b, p)
            })
            .collect();
        Self::new(p, out)
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero(self.p));
        }
        let p = self.p;
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let lead_inv = inv(d.coeffs[dd], p);
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u64; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = mul(rem[k + dd], lead_inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = sub(rem[k + j], mul(c, dc, p), p);
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self::new(p, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn sample_primes_are_prime() {
        for p in SAMPLE_PRIMES {
            assert!(trial_is_prime(p), "{p}");
            assert!(is_prime_u64(p));
        }
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), trial_is_prime(n), "{n}");
        }
    }

    #[test]
    fn prime_divisor_extraction() {
        assert_eq!(prime_divisors(&BigInt::from(-360)), Some(vec![2, 3, 5]));
        assert_eq!(prime_divisors(&BigInt::from(1)), Some(vec![]));
        let big = BigInt::from(999_983u64) * BigInt::from(2_147_483_647u64);
        assert_eq!(prime_divisors(&big), Some(vec![999_983, 2_147_483_647]));
        let hard = BigInt::from(1_000_003u64) * BigInt::from(2_147_483_647u64);
        assert_eq!(prime_divisors(&hard), None);
    }

    #[test]
    fn rank_over_small_field() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank_mod(m.clone(), 7), 2);
        assert_eq!(rank_mod(vec![vec![2, 4], vec![1, 2]], 2), 1);
        assert_eq!(rank_mod(Vec::new(), 5), 0);
    }

    #[test]
    fn fp_poly_division() {
        let p = 5;
        let a = FpPoly::new(p, vec![4, 0, 1]); // s^2 - 1
        let d = FpPoly::new(p, vec![1, 1]); // s + 1
        assert_eq!(a.div_exact(&d), Some(FpPoly::new(p, vec![4, 1])));
        assert_eq!(a.div_exact(&FpPoly::new(p, vec![2, 1])), None);
    }
}
