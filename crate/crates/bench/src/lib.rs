//! Fixtures shared by the benchmarks.

use novikov_core::{assemble_presentation_complex, corpus_entry, BoundaryComplex, LaurentMatrix, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> LaurentPoly {
    let n = rng.gen_range(1..=3);
    LaurentPoly::from_terms(
        nvars,
        (0..n).map(|_| {
            let e: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-2..=2)).collect();
            (e, rng.gen_range(-4i64..=4))
        }),
    )
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, nvars: usize) -> LaurentMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| random_poly(rng, nvars)).collect())
        .collect();
    LaurentMatrix::from_rows(nvars, entries).expect("rectangular")
}

/// `n x n` product of an `n x k` and a `k x n` random matrix, so rank at most `k`.
pub fn low_rank(seed: u64, n: usize, k: usize, nvars: usize) -> LaurentMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_matrix(&mut rng, n, k, nvars);
    let b = random_matrix(&mut rng, k, n, nvars);
    a.checked_mul(&b).expect("shapes agree")
}

/// Presentation complex of a bundled example at its default class.
pub fn corpus_complex(name: &str) -> BoundaryComplex {
    let entry = corpus_entry(name).expect("known corpus entry");
    let xi = entry.default_class().expect("valid class");
    assemble_presentation_complex(&entry.presentation(), &xi).expect("complex assembles")
}

/// Univariate complex `0 -> Z[t^±]^n -> Z[t^±]^n -> 0` whose boundary is
/// `diag((t - 2)^1, .., (t - 2)^n)` twisted by a random unimodular change of rows.
pub fn torsion_complex(seed: u64, n: usize) -> BoundaryComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t_minus_2 = LaurentPoly::univariate(0, &[-2, 1]);
    let mut d = LaurentMatrix::zeros(1, n, n);
    let mut power = LaurentPoly::one(1);
    for i in 0..n {
        power = power.checked_mul(&t_minus_2).expect("small degree");
        d.set(i, i, power.clone());
    }
    // add random multiples of each row to the next one
    for i in 1..n {
        let c = LaurentPoly::univariate(rng.gen_range(-1..=1), &[rng.gen_range(-2..=2)]);
        for j in 0..n {
            let v = d
                .get(i, j)
                .checked_add(&d.get(i - 1, j).checked_mul(&c).expect("mul"))
                .expect("add");
            d.set(i, j, v);
        }
    }
    BoundaryComplex::new(
        1,
        vec!["t".into()],
        vec![0, n, n],
        vec![LaurentMatrix::zeros(1, 0, n), d],
    )
    .expect("consistent shapes")
}
