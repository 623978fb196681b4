use proptest::prelude::*;

use h2lab::characterize::{cross_validate, Mode, Outcome};
use h2lab::operators::{apply_toeplitz_pluri, block_assemble, matrix_of, OperatorKind, Truncation};
use h2lab::random::{self, PairClass};
use h2lab::spaces::{is_pluriharmonic, project_p, project_pminus, project_q, project_q_minus_p};
use h2lab::{parse_symbol, LaurentPoly, MonomialIndex, Rational, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4, -3i64..=3).prop_map(|(p, q, im)| {
        Scalar::new(Rational::new(p, q), Rational::from_integer(im))
    })
}

fn laurent(max: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-max..=max), (-max..=max), scalar()), 0..7).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(i, j, c)| (MonomialIndex::new(i, j), c)))
    })
}

fn pluriharmonic(max: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0..=max, 0..=max, any::<bool>(), scalar()), 0..6).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(i, j, neg, c)| {
            let m = if neg { MonomialIndex::new(-i, -j) } else { MonomialIndex::new(i, j) };
            (m, c)
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projection_algebra(f in laurent(6), g in laurent(6)) {
        let p = project_p(&f);
        let c = LaurentPoly::constant(p.constant_term());
        prop_assert_eq!(project_q(&f), p.add(&project_pminus(&f)).sub(&c));
        prop_assert_eq!(project_p(&p), p.clone());
        prop_assert_eq!(project_q_minus_p(&project_q_minus_p(&f)), project_q_minus_p(&f));
        prop_assert_eq!(f.inner_product(&project_q(&g)), project_q(&f).inner_product(&g));
        prop_assert_eq!(f.inner_product(&project_pminus(&g)), project_pminus(&f).inner_product(&g));
        prop_assert!(is_pluriharmonic(&project_q(&f)));
    }

    #[test]
    fn inner_product_is_hermitian(f in laurent(4), g in laurent(4)) {
        prop_assert_eq!(f.inner_product(&g), g.inner_product(&f).conj());
        prop_assert_eq!(f.inner_product(&f).is_zero(), f.is_zero());
    }

    #[test]
    fn ring_laws(f in laurent(3), g in laurent(3), h in laurent(3)) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).conjugate(), f.conjugate().mul(&g.conjugate()));
        prop_assert_eq!(f.conjugate().conjugate(), f);
    }

    #[test]
    fn canonical_text_reparses(f in laurent(5)) {
        let text = f.to_string();
        prop_assert_eq!(parse_symbol(&text).map_err(|e| format!("{text}: {e}")), Ok(f));
    }

    #[test]
    fn toeplitz_is_linear_and_adjoint_is_conjugate_symbol(
        f in pluriharmonic(3), h1 in pluriharmonic(4), h2 in pluriharmonic(4)
    ) {
        let sum = apply_toeplitz_pluri(&f, &h1.add(&h2)).unwrap();
        let parts = apply_toeplitz_pluri(&f, &h1).unwrap().add(&apply_toeplitz_pluri(&f, &h2).unwrap());
        prop_assert_eq!(sum, parts);
        let lhs = apply_toeplitz_pluri(&f, &h1).unwrap().inner_product(&h2);
        let rhs = h1.inner_product(&apply_toeplitz_pluri(&f.conjugate(), &h2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_assembly_matches_direct_matrix(f in pluriharmonic(3), n in 0u32..4) {
        let t = Truncation::new(n);
        prop_assert_eq!(t.size(), Truncation::expected_size(n));
        let direct = matrix_of(&OperatorKind::toeplitz(f.clone()), &t).unwrap();
        prop_assert_eq!(&direct, &block_assemble(&f, &t).unwrap());
        let adj = matrix_of(&OperatorKind::toeplitz(f.conjugate()), &t).unwrap();
        let star = direct.conjugate_transpose();
        for r in 0..t.size() {
            for c in 0..t.size() {
                prop_assert_eq!(star.entry(r, c), adj.entry(r, c));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classifier_agrees_with_sweep(seed in any::<u64>(), k in 0usize..8) {
        let class = PairClass::ALL[k];
        let mut rng = random::stream(seed, "invariants");
        let (f, g) = random::pair(&mut rng, class);
        let cv = cross_validate(&f, &g, 6, class.mode()).unwrap();
        prop_assert_eq!(cv.classification.predicts_zero(), class.predicts_zero());
        prop_assert!(!matches!(cv.outcome, Outcome::Bug(_)), "{:?}", cv);
        if class.mode() == Mode::Commute {
            // commutator is antisymmetric in the pair
            let swapped = cross_validate(&g, &f, 6, Mode::Commute).unwrap();
            prop_assert_eq!(swapped.sweep.is_all_zero(), cv.sweep.is_all_zero());
        }
    }
}
