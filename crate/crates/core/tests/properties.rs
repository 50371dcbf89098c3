//! Property tests over seeded random instances.

use anglevec::anglevec::{analyze, Analysis, AnalysisReport, AnalyzeOptions, Side};
use anglevec::arrangement::SignVector;
use anglevec::geometry::{format_rational, parse_rational, rat, Rational, Sign};
use anglevec::polytope::Polytope;
use anglevec::search::{random_exact_weights, random_simplicial_polytope};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(d: usize, extra: usize, seed: u64) -> Analysis {
    Analysis::new(random_simplicial_polytope(d, d + 1 + extra, seed).unwrap()).unwrap()
}

/// `Σ (-1)^i f_i` over `i = -1..d-1`.
fn euler(f: &[i64]) -> i64 {
    f.iter().enumerate().map(|(i, x)| if i % 2 == 0 { -x } else { *x }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn sign_strings_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..20)) {
        let s: String = bits.iter().map(|b| if *b { '+' } else { '-' }).collect();
        let v: SignVector = s.parse().unwrap();
        prop_assert_eq!(v.to_string(), s);
        prop_assert_eq!(v.negated().negated(), v);
    }

    #[test]
    fn hull_is_valid(d in 2usize..=4, extra in 0usize..4, seed in any::<u64>()) {
        let v = random_simplicial_polytope(d, d + 1 + extra, seed).unwrap();
        let p = Polytope::new(v.clone()).unwrap();
        for f in p.facets() {
            for (i, x) in v.vertices().iter().enumerate() {
                let val = f.functional.value(x).unwrap();
                prop_assert!(val <= Rational::zero());
                prop_assert_eq!(val.is_zero(), f.vertices.contains(i));
            }
        }
        // Euler's relation with f_{-1}: the alternating sum is (-1)^{d-1}.
        let f = p.f_vector();
        let expected = if d % 2 == 0 { -1 } else { 1 };
        prop_assert_eq!(euler(f.entries()), expected);
        prop_assert!(p.lattice().validate().is_ok());
    }

    #[test]
    fn region_witnesses_have_their_signs(d in 2usize..=4, extra in 0usize..3, seed in any::<u64>()) {
        let a = instance(d, extra, seed);
        for r in a.regions() {
            let raw = a.arrangement().raw_signs(&r.witness).unwrap();
            prop_assert_eq!(raw.as_slice(), r.signs.signs());
        }
        if d == 2 {
            prop_assert_eq!(a.regions().len(), 2 * a.arrangement().len());
        }
    }

    #[test]
    fn gamma_identities(d in 2usize..=4, extra in 0usize..3, seed in any::<u64>(), even in any::<bool>()) {
        let a = instance(d, extra, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_exact_weights(a.regions(), even, &mut rng).unwrap();
        let g = a.gamma_hat(&w, Side::Original).unwrap();
        let gr = a.gamma_hat(&w, Side::Reflected).unwrap();
        let h = a.h_boundary();
        let di = d as i32;
        for i in 0..=di {
            prop_assert_eq!(g.at(i) + gr.at(di - i), rat(h.at(i)));
            prop_assert!(g.at(i) >= Rational::zero());
        }
        prop_assert_eq!(g.at(0), Rational::zero());
        prop_assert_eq!(g.at(di), rat(1));
        for i in 1..=(d as i32 + 1) / 2 {
            prop_assert!(g.at(i - 1) <= g.at(i));
        }
        for i in 0..=di / 2 {
            prop_assert!(g.at(i) <= g.at(di - i));
        }
    }

    #[test]
    fn region_decompositions(d in 2usize..=4, extra in 0usize..3, seed in any::<u64>()) {
        let a = instance(d, extra, seed);
        let f = a.f_boundary();
        for r in a.regions() {
            let dec = a.decomposition(&r.signs, Side::Original);
            let neg = a.decomposition(&r.signs.negated(), Side::Original);
            let lhs = dec.dark.f_vector().checked_add(dec.bright.f_vector()).unwrap();
            prop_assert_eq!(lhs, f.checked_sub(dec.shadow.f_vector()).unwrap());
            prop_assert_eq!(dec.bright.f_vector(), neg.dark.f_vector());
            let h = dec.dark.h_vector();
            let hc = dec.dark_closure.h_vector();
            for i in 0..=d as i32 {
                prop_assert_eq!(h.at(i), hc.at(d as i32 - i));
            }
        }
    }

    #[test]
    fn report_json_round_trip(d in 2usize..=3, seed in any::<u64>()) {
        let a = instance(d, 1, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_exact_weights(a.regions(), false, &mut rng).unwrap();
        let rep = analyze(&a, &w, AnalyzeOptions::default()).unwrap();
        prop_assert!(rep.failures().next().is_none());
        let text = serde_json::to_string(&rep).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, rep);
    }
}

#[test]
fn dark_facets_of_antipodal_regions_complement() {
    let a = instance(3, 2, 5);
    for r in a.regions() {
        let s = a.arrangement().facet_signs(&r.signs);
        let t = a.arrangement().facet_signs(&r.signs.negated());
        assert!(s.iter().zip(&t).all(|(x, y)| *x == y.flip() && *x != Sign::Zero));
        let dot: Vec<Sign> = a
            .polytope(Side::Original)
            .facets()
            .iter()
            .map(|f| Sign::of(&f.functional.normal().dot(&r.witness).unwrap()))
            .collect();
        assert_eq!(s, dot);
    }
}
