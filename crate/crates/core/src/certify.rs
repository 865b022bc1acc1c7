//! Free-subgroup certificates, class scans and the amenability consistency check.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::assemble_presentation_complex;
use crate::error::{Error, PresentationError, Result};
use crate::novikov::{NovikovNumbers, TorsionOptions};
use crate::presentation::{class_from_integer_rows, validate_character, CharacterClass, Presentation};
use crate::rank::{RankMethod, RankOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    FreeSubgroupPresent,
    Inconclusive,
}

/// A reason the fundamental group contains a nonabelian free subgroup, with an
/// exact witness that can be recomputed from the presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum Route {
    /// `b_1(xi) > 0`.
    NovikovB1 { class: Vec<Vec<String>>, b1: usize },
    /// `chi(X) < 0` for the presentation 2-complex.
    #[serde(rename = "euler-2complex")]
    Euler2Complex { euler: i64 },
    /// `generators - relators >= 2`.
    Deficiency {
        generators: usize,
        relators: usize,
        deficiency: i64,
    },
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::NovikovB1 { .. } => "novikov-b1",
            Route::Euler2Complex { .. } => "euler-2complex",
            Route::Deficiency { .. } => "deficiency",
        }
    }
}

/// `b_1(xi) != 0` implies neither `xi` nor `-xi` lies in the BNS invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnsImplication {
    pub class: Vec<Vec<String>>,
    pub statement: String,
}

impl BnsImplication {
    fn for_class(p: &Presentation, xi: &CharacterClass, b1: usize) -> Self {
        let shown = xi.display(p.generators()).to_string();
        BnsImplication {
            class: xi.row_strings(),
            statement: format!(
                "b_1 = {b1} != 0 for [{shown}], hence [{shown}] is not in Sigma and its negative is not in Sigma"
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AmenabilityStatus {
    Pass,
    Fail,
}

/// Result of checking that `b_1` vanishes on every class of a group the user
/// asserts to be amenable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmenabilityCheck {
    pub status: AmenabilityStatus,
    pub classes_checked: usize,
    /// First class with `b_1 > 0`, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ClassWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    pub class: Vec<Vec<String>>,
    pub b1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub routes: Vec<Route>,
    pub bns_implications: Vec<BnsImplication>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amenability: Option<AmenabilityCheck>,
}

impl Certificate {
    fn from_routes(routes: Vec<Route>, bns_implications: Vec<BnsImplication>) -> Self {
        let verdict = if routes.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::FreeSubgroupPresent
        };
        Certificate {
            verdict,
            routes,
            bns_implications,
            amenability: None,
        }
    }

    pub fn route_names(&self) -> Vec<&'static str> {
        self.routes.iter().map(Route::name).collect()
    }
}

/// Routes that depend only on the presentation.
fn presentation_routes(p: &Presentation) -> Vec<Route> {
    let mut routes = Vec::new();
    let euler = p.euler_characteristic();
    let deficiency = p.deficiency();
    if euler < 0 {
        routes.push(Route::Euler2Complex { euler });
    }
    if deficiency >= 2 {
        assert!(euler < 0, "deficiency >= 2 forces a negative Euler characteristic");
        routes.push(Route::Deficiency {
            generators: p.num_generators(),
            relators: p.num_relators(),
            deficiency,
        });
    }
    routes
}

/// Certificate for one class whose numbers are already computed.
pub fn certify(p: &Presentation, xi: &CharacterClass, numbers: &NovikovNumbers) -> Certificate {
    certify_scan(
        p,
        &[ScanEntry {
            class: xi.clone(),
            numbers: numbers.clone(),
            probabilistic: false,
        }],
    )
}

/// Certificate from a list of evaluated classes. The first class with
/// `b_1 > 0` becomes the `novikov-b1` witness; every such class contributes a
/// BNS implication.
pub fn certify_scan(p: &Presentation, entries: &[ScanEntry]) -> Certificate {
    let firing: Vec<&ScanEntry> = entries.iter().filter(|e| e.numbers.b1() > 0).collect();
    let mut routes = Vec::new();
    if let Some(e) = firing.first() {
        routes.push(Route::NovikovB1 {
            class: e.class.row_strings(),
            b1: e.numbers.b1(),
        });
    }
    routes.extend(presentation_routes(p));
    let bns = firing
        .iter()
        .filter(|e| e.class.rank() == 1)
        .map(|e| BnsImplication::for_class(p, &e.class, e.numbers.b1()))
        .collect();
    Certificate::from_routes(routes, bns)
}

/// Certificate when the presentation has no nonzero class at all.
pub fn certify_without_class(p: &Presentation) -> Certificate {
    Certificate::from_routes(presentation_routes(p), Vec::new())
}

fn class_from_strings(p: &Presentation, rows: &[Vec<String>]) -> Result<CharacterClass> {
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    s.parse::<BigRational>()
                        .map_err(|_| PresentationError::MalformedValue(s.clone()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(validate_character(p, parsed)?)
}

/// `b_1` of a class with exact ranks throughout.
pub fn exact_b1(p: &Presentation, xi: &CharacterClass) -> Result<usize> {
    let c = assemble_presentation_complex(p, xi)?;
    let opts = RankOptions {
        method: RankMethod::Exact,
        ..RankOptions::default()
    };
    Ok(NovikovNumbers::compute(&c, &opts, None)?.0.b1())
}

/// Recomputes every route witness from the presentation with exact ranks.
/// True iff each witness holds and the verdict matches the routes.
pub fn verify_certificate(p: &Presentation, cert: &Certificate) -> Result<bool> {
    for route in &cert.routes {
        let holds = match route {
            Route::NovikovB1 { class, b1 } => {
                let xi = class_from_strings(p, class)?;
                *b1 > 0 && exact_b1(p, &xi)? == *b1
            }
            Route::Euler2Complex { euler } => *euler < 0 && p.euler_characteristic() == *euler,
            Route::Deficiency {
                generators,
                relators,
                deficiency,
            } => {
                *deficiency >= 2
                    && *generators == p.num_generators()
                    && *relators == p.num_relators()
                    && p.deficiency() == *deficiency
            }
        };
        if !holds {
            return Ok(false);
        }
    }
    let expected = if cert.routes.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::FreeSubgroupPresent
    };
    Ok(cert.verdict == expected)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub class: CharacterClass,
    pub numbers: NovikovNumbers,
    /// Some rank came from modular sampling only.
    pub probabilistic: bool,
}

/// Candidate classes for a scan: the basis directions of the character lattice
/// first, then random primitive integer combinations of the basis with
/// coefficients in `-3..=3`. `budget` is the total count; duplicates are
/// dropped, so a one-dimensional class space yields at most `xi` and `-xi`.
pub fn scan_candidates(p: &Presentation, budget: usize, seed: u64) -> Result<Vec<CharacterClass>> {
    let basis = p.character_basis();
    if basis.is_empty() {
        return Err(Error::NoClass);
    }
    let g = p.num_generators();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |v: Vec<BigInt>, out: &mut Vec<Vec<BigInt>>| {
        if out.len() < budget && seen.insert(v.clone()) {
            out.push(v);
        }
    };
    let mut vectors = Vec::new();
    for b in &basis {
        push(b.clone(), &mut vectors);
    }
    let space = if basis.len() == 1 { 2 } else { usize::MAX };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    while vectors.len() < budget.min(space) && attempts < 1000 + 100 * budget {
        attempts += 1;
        let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-3..=3)).collect();
        let mut v = vec![BigInt::zero(); g];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += y * c;
            }
        }
        let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if content.is_zero() {
            continue;
        }
        let v: Vec<BigInt> = v.iter().map(|x| x / &content).collect();
        push(v, &mut vectors);
    }
    for v in &vectors {
        out.push(class_from_integer_rows(p, std::slice::from_ref(v))?);
    }
    Ok(out)
}

/// Evaluates the Novikov numbers of each scanned class, in parallel.
pub fn scan_classes(
    p: &Presentation,
    budget: usize,
    seed: u64,
    rank_opts: &RankOptions,
    torsion: Option<&TorsionOptions>,
) -> Result<Vec<ScanEntry>> {
    let classes = scan_candidates(p, budget, seed)?;
    evaluate_classes(p, classes, rank_opts, torsion)
}

pub fn evaluate_classes(
    p: &Presentation,
    classes: Vec<CharacterClass>,
    rank_opts: &RankOptions,
    torsion: Option<&TorsionOptions>,
) -> Result<Vec<ScanEntry>> {
    classes
        .into_par_iter()
        .map(|class| {
            let c = assemble_presentation_complex(p, &class)?;
            let (numbers, comp) = NovikovNumbers::compute(&c, rank_opts, torsion)?;
            Ok(ScanEntry {
                class,
                numbers,
                probabilistic: comp.probabilistic(),
            })
        })
        .collect()
}

/// Recomputes `b_1` exactly on every class; PASS iff all vanish.
pub fn amenability_consistency(p: &Presentation, classes: &[CharacterClass]) -> Result<AmenabilityCheck> {
    let b1s = classes
        .par_iter()
        .map(|xi| exact_b1(p, xi))
        .collect::<Result<Vec<_>>>()?;
    let witness = classes
        .iter()
        .zip(&b1s)
        .find(|(_, &b)| b > 0)
        .map(|(xi, &b1)| ClassWitness {
            class: xi.row_strings(),
            b1,
        });
    Ok(AmenabilityCheck {
        status: if witness.is_some() {
            AmenabilityStatus::Fail
        } else {
            AmenabilityStatus::Pass
        },
        classes_checked: classes.len(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_character_row, parse_presentation};

    fn class(p: &Presentation, text: &str) -> CharacterClass {
        validate_character(p, vec![parse_character_row(p, text).unwrap()]).unwrap()
    }

    fn numbers(p: &Presentation, xi: &CharacterClass) -> NovikovNumbers {
        let c = assemble_presentation_complex(p, xi).unwrap();
        NovikovNumbers::compute(&c, &RankOptions::default(), None).unwrap().0
    }

    #[test]
    fn free_group_fires_all_routes() {
        let p = parse_presentation("<a,b|>").unwrap();
        let xi = class(&p, "a=1");
        let cert = certify(&p, &xi, &numbers(&p, &xi));
        assert_eq!(cert.verdict, Verdict::FreeSubgroupPresent);
        assert_eq!(cert.route_names(), ["novikov-b1", "euler-2complex", "deficiency"]);
        assert_eq!(cert.routes[1], Route::Euler2Complex { euler: -1 });
        assert_eq!(cert.bns_implications.len(), 1);
        assert!(verify_certificate(&p, &cert).unwrap());
    }

    #[test]
    fn baumslag_solitar_is_inconclusive() {
        let p = parse_presentation("<a,b | a b a^-1 = b^2>").unwrap();
        for text in ["a=1", "a=-1"] {
            let xi = class(&p, text);
            let cert = certify(&p, &xi, &numbers(&p, &xi));
            assert_eq!(cert.verdict, Verdict::Inconclusive);
            assert!(cert.routes.is_empty() && cert.bns_implications.is_empty());
            assert!(verify_certificate(&p, &cert).unwrap());
        }
    }

    #[test]
    fn genus_two_fires_with_bns_implication() {
        let p = parse_presentation("<a1,b1,a2,b2 | a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1>").unwrap();
        let xi = class(&p, "a1=1");
        let n = numbers(&p, &xi);
        assert_eq!(n.betti, [0, 2, 0]);
        let cert = certify(&p, &xi, &n);
        assert_eq!(cert.route_names(), ["novikov-b1", "euler-2complex", "deficiency"]);
        assert!(cert.bns_implications[0].statement.contains("a1=1,b1=0,a2=0,b2=0"));
    }

    #[test]
    fn forged_witness_is_rejected() {
        let p = parse_presentation("<a,b | a b a^-1 b^-1>").unwrap();
        let forged = Certificate::from_routes(
            vec![Route::NovikovB1 {
                class: vec![vec!["1".into(), "0".into()]],
                b1: 1,
            }],
            Vec::new(),
        );
        assert!(!verify_certificate(&p, &forged).unwrap());
        let euler = Certificate::from_routes(vec![Route::Euler2Complex { euler: -1 }], Vec::new());
        assert!(!verify_certificate(&p, &euler).unwrap());
    }

    #[test]
    fn scan_sizes_and_determinism() {
        let z2 = parse_presentation("<a,b | a b a^-1 b^-1>").unwrap();
        let a = scan_candidates(&z2, 10, 7).unwrap();
        assert_eq!(a.len(), 10);
        assert_eq!(a, scan_candidates(&z2, 10, 7).unwrap());
        assert_eq!(a[0].primitive_rows()[0], [BigInt::from(1), BigInt::from(0)]);
        let bs = parse_presentation("<a,b | a b a^-1 = b^2>").unwrap();
        assert_eq!(scan_candidates(&bs, 10, 7).unwrap().len(), 2);
        let finite = parse_presentation("<a,b | a^2 b^-3, a b>").unwrap();
        assert_eq!(scan_candidates(&finite, 10, 7), Err(Error::NoClass));
    }

    #[test]
    fn scans_and_amenability() {
        let opts = RankOptions::default();
        let z2 = parse_presentation("<a,b | a b a^-1 b^-1>").unwrap();
        let entries = scan_classes(&z2, 10, 1, &opts, None).unwrap();
        assert!(entries.iter().all(|e| e.numbers.b1() == 0));
        assert_eq!(certify_scan(&z2, &entries).verdict, Verdict::Inconclusive);
        let classes: Vec<_> = entries.into_iter().map(|e| e.class).collect();
        let check = amenability_consistency(&z2, &classes).unwrap();
        assert_eq!((check.status, check.classes_checked), (AmenabilityStatus::Pass, 10));

        let f2 = parse_presentation("<a,b|>").unwrap();
        let check = amenability_consistency(&f2, &[class(&f2, "a=1")]).unwrap();
        assert_eq!(check.status, AmenabilityStatus::Fail);
        assert_eq!(
            check.witness,
            Some(ClassWitness {
                class: vec![vec!["1".into(), "0".into()]],
                b1: 1
            })
        );
    }
}
