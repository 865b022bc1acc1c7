use novikov_core::{
    assemble_presentation_complex, certify, generic_dims, load_complex, verify_certificate, NovikovNumbers, RankMethod,
    RankOptions, TorsionOptions, Verdict, CORPUS,
};

fn expected_betti(name: &str) -> &'static [usize] {
    match name {
        "free2" => &[0, 1],
        "genus2" => &[0, 2, 0],
        _ => &[0, 0, 0],
    }
}

#[test]
fn corpus_numbers() {
    for e in CORPUS {
        let p = e.presentation();
        let xi = e.default_class().unwrap();
        let c = assemble_presentation_complex(&p, &xi).unwrap();
        for method in [RankMethod::Exact, RankMethod::Modular, RankMethod::Auto] {
            let opts = RankOptions {
                method,
                ..RankOptions::default()
            };
            let (n, _) = NovikovNumbers::compute(&c, &opts, Some(&TorsionOptions::default())).unwrap();
            assert_eq!(n.betti, expected_betti(e.name), "{}", e.name);
            assert_eq!(n.alternating_sum(), p.euler_characteristic(), "{}", e.name);
            let (plus, minus) = (n.torsion_plus.unwrap(), n.torsion_minus.unwrap());
            if e.name == "bs12" {
                assert_eq!((plus[1], minus[1]), (0, 1));
            } else {
                assert!(plus.iter().chain(&minus).all(|&q| q == 0), "{}", e.name);
            }
        }
    }
}

#[test]
fn sampler_agrees_with_betti() {
    for e in CORPUS {
        let c = assemble_presentation_complex(&e.presentation(), &e.default_class().unwrap()).unwrap();
        let g = generic_dims(&c, 20, 3).unwrap();
        assert_eq!(g.min_dims, expected_betti(e.name), "{}", e.name);
        for s in &g.samples {
            assert!(s.dims.iter().zip(expected_betti(e.name)).all(|(h, b)| h >= b));
        }
    }
}

#[test]
fn certificates_are_recomputable() {
    for e in CORPUS {
        let p = e.presentation();
        let xi = e.default_class().unwrap();
        let c = assemble_presentation_complex(&p, &xi).unwrap();
        let (n, _) = NovikovNumbers::compute(&c, &RankOptions::default(), None).unwrap();
        let cert = certify(&p, &xi, &n);
        assert_eq!(
            cert.verdict == Verdict::FreeSubgroupPresent,
            !e.amenable && e.name != "trefoil",
            "{}",
            e.name
        );
        if e.amenable {
            assert_eq!(cert.verdict, Verdict::Inconclusive);
        }
        let json = serde_json::to_string(&cert).unwrap();
        let back = serde_json::from_str(&json).unwrap();
        assert!(verify_certificate(&p, &back).unwrap(), "{}", e.name);
    }
}

#[test]
fn complexes_round_trip_through_json() {
    for e in CORPUS {
        let c = assemble_presentation_complex(&e.presentation(), &e.default_class().unwrap()).unwrap();
        assert_eq!(load_complex(&c.to_json()).unwrap(), c);
    }
}
