//! Exact Novikov-Betti numbers, rank-1 Novikov torsion and free-subgroup
//! certificates for finite presentations and Laurent chain complexes.
//!
//! ```
//! use novikov_core::{assemble_presentation_complex, parse_presentation, NovikovNumbers};
//! use novikov_core::{parse_character_row, validate_character, RankOptions, TorsionOptions};
//!
//! let p = parse_presentation("<a, b | a b a^-1 = b^2>").unwrap();
//! let xi = validate_character(&p, vec![parse_character_row(&p, "a=1").unwrap()]).unwrap();
//! let c = assemble_presentation_complex(&p, &xi).unwrap();
//! let (n, _) = NovikovNumbers::compute(&c, &RankOptions::default(), Some(&TorsionOptions::default())).unwrap();
//! assert_eq!(n.betti, [0, 0, 0]);
//! assert_eq!(n.torsion_minus.unwrap()[1], 1);
//! ```

// elimination loops index several rows at once
#![allow(clippy::needless_range_loop)]

pub mod certify;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod fox;
mod grid;
pub mod laurent;
pub mod modp;
pub mod novikov;
pub mod presentation;
pub mod rank;
pub mod univariate;

pub use certify::{
    amenability_consistency, certify, certify_scan, certify_without_class, evaluate_classes, exact_b1, scan_candidates,
    scan_classes, verify_certificate, AmenabilityCheck, AmenabilityStatus, BnsImplication, Certificate, ClassWitness,
    Route, ScanEntry, Verdict,
};
pub use complex::{assemble_presentation_complex, load_complex, load_complex_str, BoundaryComplex};
pub use corpus::{corpus_entry, CorpusEntry, CORPUS};
pub use error::{AlgebraError, ComplexError, Error, PresentationError, Result};
pub use fox::{abelianize, fox_derivative, AbelianizationMap, GroupRingElement};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use novikov::{
    flag_jumps, gcd_is_unit, generic_dims, novikov_betti, sample_bundle, torsion_count, unit_in_novikov,
    BettiComputation, BundlePoint, BundleSample, Direction, GenericDims, NovikovNumbers, TorsionCount, TorsionMethod,
    TorsionOptions,
};
pub use presentation::{
    class_from_integer_rows, free_reduce, parse_character_row, parse_presentation, validate_character, CharacterClass,
    FreeWord, Presentation,
};
pub use rank::{
    bareiss_rank, determinant, exact_rank, grid_rank, minors, modular_rank, rank_fraction_field, RankMethod,
    RankOptions, RankProvenance, RankResult, DEFAULT_GRID_BUDGET, DEFAULT_MINOR_CAP,
};
pub use univariate::{univariate_gcd_data, GcdData};
