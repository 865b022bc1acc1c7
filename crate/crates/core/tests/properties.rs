mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use novikov_core::fox::{fox_derivative, GroupRingElement};
use novikov_core::laurent::{LaurentMatrix, LaurentPoly};
use novikov_core::presentation::{free_reduce, parse_presentation, FreeWord, Presentation};
use novikov_core::rank::{bareiss_rank, exact_rank, grid_rank, modular_rank, DEFAULT_GRID_BUDGET};
use novikov_core::{
    assemble_presentation_complex, gcd_is_unit, novikov_betti, torsion_count, unit_in_novikov, validate_character,
    AbelianizationMap, BoundaryComplex, Direction, RankOptions, TorsionOptions,
};

use common::*;

fn word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0usize..3, prop_oneof![Just(-1i64), Just(1), Just(2), Just(-2)]), 0..10)
        .prop_map(FreeWord::raw)
}

fn gen_minus_one(i: usize) -> GroupRingElement {
    &GroupRingElement::from_word(FreeWord::generator(i)) - &GroupRingElement::one()
}

proptest! {
    #[test]
    fn free_reduction_is_a_homomorphism(u in word(), v in word()) {
        let lhs = free_reduce(&u.concat(&v));
        let rhs = free_reduce(&free_reduce(&u).concat(&free_reduce(&v)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(free_reduce(&u.concat(&u.inverse())).is_identity());
    }

    #[test]
    fn fox_product_rule(u in word(), v in word(), x in 0usize..3) {
        let lhs = fox_derivative(&u.concat(&v), x);
        let rhs = &fox_derivative(&u, x)
            + &(&GroupRingElement::from_word(u.clone()) * &fox_derivative(&v, x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fox_fundamental_formula(w in word()) {
        let mut sum = GroupRingElement::zero();
        for i in 0..3 {
            sum = &sum + &(&fox_derivative(&w, i) * &gen_minus_one(i));
        }
        let expected = &GroupRingElement::from_word(w.clone()) - &GroupRingElement::one();
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn abelianization_is_a_ring_map(u in word(), v in word(), a in -3i64..=3, b in -3i64..=3) {
        prop_assume!(a != 0 || b != 0);
        let p = Presentation::new(vec!["a".into(), "b".into(), "c".into()], Vec::new()).unwrap();
        let q = |x: i64| BigRational::from_integer(x.into());
        let xi = validate_character(&p, vec![vec![q(a), q(b), q(1)]]).unwrap();
        let map = AbelianizationMap::from_class(&xi).unwrap();
        let ab = |e: &GroupRingElement| novikov_core::abelianize(e, &map).unwrap();
        let (eu, ev) = (fox_derivative(&u, 0), fox_derivative(&v, 1));
        prop_assert_eq!(ab(&(&eu * &ev)), &ab(&eu) * &ab(&ev));
        prop_assert_eq!(ab(&(&eu + &ev)), &ab(&eu) + &ab(&ev));
    }

    #[test]
    fn presentation_print_parse_is_idempotent(rels in prop::collection::vec(word(), 0..3)) {
        let rels: Vec<_> = rels.into_iter().filter(|w| !free_reduce(w).is_identity()).collect();
        let p = Presentation::new(vec!["a".into(), "b".into(), "c".into()], rels).unwrap();
        let printed = p.to_string();
        let reparsed = parse_presentation(&printed).unwrap();
        prop_assert_eq!(&reparsed, &p);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn gcd_criterion_ignores_units(seed in any::<u64>(), k in -5i64..=5, sign in prop::bool::ANY) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = random_univariate_set(&mut rng);
        let c = if sign { -1 } else { 1 };
        let u = LaurentPoly::monomial(vec![k], c);
        let moved: Vec<_> = fs.iter().map(|f| f * &u).collect();
        for d in [Direction::Plus, Direction::Minus] {
            prop_assert_eq!(gcd_is_unit(&fs, d).unwrap(), gcd_is_unit(&moved, d).unwrap());
        }
    }

    #[test]
    fn singleton_gcd_matches_unit_test(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_univariate_set(&mut rng).into_iter().find(|f| !f.is_zero()).unwrap();
        for d in [Direction::Plus, Direction::Minus] {
            let extreme_unit = unit_in_novikov(&f, d).unwrap();
            if f.content() == BigInt::from(1) || extreme_unit {
                prop_assert_eq!(gcd_is_unit(std::slice::from_ref(&f), d).unwrap(), extreme_unit);
            }
        }
    }
}

#[test]
fn gcd_criterion_matches_truncated_bezout() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..300 {
        let fs = random_univariate_set(&mut rng);
        for d in [Direction::Plus, Direction::Minus] {
            let normal: Vec<_> = fs.iter().map(|f| d.to_normal_form(f)).collect();
            assert_eq!(
                gcd_is_unit(&fs, d).unwrap(),
                truncated_bezout(&normal, BEZOUT_DEPTH),
                "{fs:?} {d:?}"
            );
        }
    }
}

#[test]
fn gcd_criterion_on_hand_examples() {
    let s = |low, c: &[i64]| LaurentPoly::univariate(low, c);
    // 2 and s + 2 differ by the unit s
    assert!(truncated_bezout(&[s(0, &[2]), s(0, &[2, 1])], BEZOUT_DEPTH));
    assert!(!truncated_bezout(&[s(0, &[-2, 1])], BEZOUT_DEPTH));
    // s + 3 and s + 5 generate (2, s + 1), and s + 1 is a unit
    let pair = [s(0, &[3, 1]), s(0, &[5, 1])];
    assert!(truncated_bezout(&pair, BEZOUT_DEPTH));
    assert!(gcd_is_unit(&pair, Direction::Minus).unwrap());
    // common factor s - 2
    let pair = [s(0, &[-2, -1, 1]), s(0, &[-6, 1, 1])];
    assert!(!truncated_bezout(&pair, BEZOUT_DEPTH));
    assert!(!gcd_is_unit(&pair, Direction::Minus).unwrap());
}

#[test]
fn exact_rank_matches_interpolation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let r = rand::Rng::gen_range(&mut rng, 1..=4);
        let c = rand::Rng::gen_range(&mut rng, 1..=4);
        let m = if rand::Rng::gen_bool(&mut rng, 0.5) {
            random_matrix(&mut rng, r, c, 1)
        } else {
            random_low_rank(&mut rng, r, c, 1)
        };
        let oracle = rank_by_interpolation(&m);
        assert_eq!(exact_rank(&m), oracle, "{m:?}");
        assert_eq!(grid_rank(&m, DEFAULT_GRID_BUDGET), Some(oracle), "{m:?}");
    }
}

#[test]
fn grid_and_elimination_ranks_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..60 {
        let nvars = 2 + trial % 2;
        let r = rand::Rng::gen_range(&mut rng, 1..=4);
        let c = rand::Rng::gen_range(&mut rng, 1..=4);
        let m = if trial % 3 == 0 {
            random_matrix(&mut rng, r, c, nvars)
        } else {
            random_low_rank(&mut rng, r, c, nvars)
        };
        let grid = grid_rank(&m, DEFAULT_GRID_BUDGET).expect("small grid");
        assert_eq!(grid, bareiss_rank(&m), "{m:?}");
    }
}

#[test]
fn modular_rank_never_exceeds_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..100 {
        let nvars = 1 + trial % 3;
        let m = random_low_rank(&mut rng, 4, 5, nvars);
        let exact = exact_rank(&m);
        let modular = modular_rank(&m, trial as u64);
        assert!(modular.value <= exact);
        assert!(modular.witnesses.iter().all(|w| w.rank <= exact));
    }
}

fn column_complex(d2: LaurentMatrix) -> BoundaryComplex {
    let (n1, n2) = d2.shape();
    BoundaryComplex::new(
        1,
        vec!["t".into()],
        vec![0, n1, n2],
        vec![LaurentMatrix::zeros(1, 0, n1), d2],
    )
    .unwrap()
}

#[test]
fn torsion_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let diag = TorsionOptions {
        diagonalize: true,
        ..TorsionOptions::default()
    };
    for _ in 0..120 {
        let r = rand::Rng::gen_range(&mut rng, 1..=3);
        let c = rand::Rng::gen_range(&mut rng, 1..=3);
        let m = if rand::Rng::gen_bool(&mut rng, 0.5) {
            random_matrix(&mut rng, r, c, 1)
        } else {
            random_low_rank(&mut rng, r, c, 1)
        };
        let cx = column_complex(m);
        for d in [Direction::Plus, Direction::Minus] {
            let a = torsion_count(&cx, 1, d, &TorsionOptions::default()).unwrap();
            let b = torsion_count(&cx, 1, d, &diag).unwrap();
            assert_eq!(a.value, b.value, "{cx:?} {d:?}");
        }
    }
}

#[test]
fn torsion_of_diagonal_matrices() {
    let s = |low, c: &[i64]| LaurentPoly::univariate(low, c);
    let z = || LaurentPoly::zero(1);
    // diag(t - 2, 3, 2t + 1): two nonunit entries in each direction, but they
    // are coprime (3 and s + 2 along +xi, 3 and s - 2 along -xi), so one
    // nonunit elementary divisor
    let m = LaurentMatrix::from_rows(
        1,
        vec![
            vec![s(0, &[-2, 1]), z(), z()],
            vec![z(), s(0, &[3]), z()],
            vec![z(), z(), s(0, &[1, 2])],
        ],
    )
    .unwrap();
    let cx = column_complex(m);
    let o = TorsionOptions::default();
    assert_eq!(torsion_count(&cx, 1, Direction::Plus, &o).unwrap().value, 1);
    assert_eq!(torsion_count(&cx, 1, Direction::Minus, &o).unwrap().value, 1);
    let m = LaurentMatrix::from_rows(1, vec![vec![s(0, &[-2, 1]), z()], vec![z(), s(0, &[-2, 1])]]).unwrap();
    let cx = column_complex(m);
    assert_eq!(torsion_count(&cx, 1, Direction::Plus, &o).unwrap().value, 0);
    assert_eq!(torsion_count(&cx, 1, Direction::Minus, &o).unwrap().value, 2);
}

#[test]
fn betti_symmetry_and_euler_on_random_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let opts = RankOptions::default();
    let mut checked = 0;
    while checked < 60 {
        let Some(p) = random_presentation(&mut rng, 4, 3, 12) else {
            continue;
        };
        let row = random_class_row(&mut rng, &p);
        let xi = validate_character(&p, vec![row]).unwrap();
        let c = assemble_presentation_complex(&p, &xi).unwrap();
        let plus = novikov_betti(&c, &opts).betti;
        let minus = novikov_betti(&assemble_presentation_complex(&p, &xi.negate()).unwrap(), &opts).betti;
        assert_eq!(plus, minus);
        assert_eq!(plus[0], 0);
        let alt: i64 = plus
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        assert_eq!(alt, c.euler_characteristic());
        checked += 1;
    }
}
