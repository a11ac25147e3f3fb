mod common;

use common::*;
use logcy_core::classifier::{
    self, classify, definiteness_shortcut, exact_on_boundary, i2_criterion, ContactType, Prediction, RigidPattern,
    Rigidity,
};
use logcy_core::linalg::{self, Rational};
use logcy_core::moves::SearchBounds;
use logcy_core::Divisor;
use num_bigint::BigInt;
use proptest::prelude::*;
use rayon::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn classify_ignores_dihedral_symmetry(s in seq_strategy(2, 8, -6, 6), shift in 0usize..8) {
        let c = cycle(&s);
        let base = classify(&Divisor::Cycle(c.clone()));
        prop_assert_eq!(&classify(&Divisor::Cycle(c.canonical_form())), &base);
        prop_assert_eq!(&classify(&Divisor::Cycle(c.rotated(shift % s.len()))), &base);
        prop_assert_eq!(&classify(&Divisor::Cycle(c.reversed())), &base);
    }

    #[test]
    fn contact_follows_inertia_oracle(s in seq_strategy(2, 7, -6, 6)) {
        let c = classify(&divisor(&s));
        let rows = cycle(&s).intersection_matrix().to_rows();
        let (bp, b0, bm) = inertia_oracle(&rows);
        prop_assert_eq!(c.inertia.as_array(), [bp, b0, bm]);
        let expected = match (bp, b0) {
            (0, 0) => ContactType::Convex,
            (1, _) => ContactType::Concave,
            (0, _) => ContactType::NoContactBoundary,
            _ => ContactType::InvalidForLogCY,
        };
        prop_assert_eq!(c.contact, expected);
        prop_assert_eq!(c.det, BigInt::from(det_laplace(&q_matrix(&s))));
    }
}

#[test]
fn shortcuts_agree_with_classification_on_exhaustive_sweep() {
    // canonical representatives suffice: classification ignores dihedral symmetry
    let mismatches: Vec<Vec<i64>> = (2..=6)
        .into_par_iter()
        .flat_map_iter(|k| all_sequences(k, -5, 5))
        .filter(|s| is_canonical_i64(s))
        .filter_map(|s| {
            let c = cycle(&s);
            let p = definiteness_shortcut(&c)?;
            let i = classify(&Divisor::Cycle(c)).inertia;
            (!p.agrees_with(&i)).then_some(s)
        })
        .collect();
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn shortcut_examples() {
    assert_eq!(definiteness_shortcut(&cycle(&[-3, -3])), Some(Prediction::NegativeDefinite));
    assert_eq!(definiteness_shortcut(&cycle(&[-2, -2, -2])), Some(Prediction::NegativeSemiDefinite));
    assert_eq!(
        definiteness_shortcut(&cycle(&[0, 0, -3])),
        Some(Prediction::PositiveBPlus {
            certified_nondegenerate: true
        })
    );
    assert_eq!(definiteness_shortcut(&cycle(&[-1, -3])), None);
}

#[test]
fn i2_criterion_implies_exactness_for_adjunction_areas() {
    let walk = catalog_walk(-3..=3, 4, true);
    let mut checked = 0;
    for w in &walk {
        if !i2_criterion(&w.pair) {
            continue;
        }
        checked += 1;
        let areas: Vec<Rational> = classifier::adjunction_areas(&w.pair)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let solvable = if areas.iter().all(|a| *a > Rational::from_integer(0.into())) {
            exact_on_boundary(&w.pair.divisor, &areas).unwrap().is_exact()
        } else {
            // non-positive areas are outside the symplectic setting; check the
            // linear system itself
            linalg::solve(&w.pair.divisor.intersection_matrix(), &areas).unwrap().is_solvable()
        };
        assert!(solvable, "{:?} via {:?}", w.pair.divisor, w.word);
    }
    assert!(checked > 0);
}

#[test]
fn positive_area_search_finds_grid_witnesses() {
    for k in 2..=4 {
        for s in all_sequences(k, -3, 3).filter(|s| is_canonical_i64(s)) {
            let q = q_matrix(&s);
            let grid_hit = all_sequences(k, 1, 3).any(|a| {
                let augmented: Vec<Vec<num_rational::BigRational>> = q
                    .iter()
                    .zip(&a)
                    .map(|(row, x)| rationals(&[row.as_slice(), &[*x]].concat()))
                    .collect();
                let plain: Vec<Vec<num_rational::BigRational>> = q.iter().map(|r| rationals(r)).collect();
                rank_oracle(&plain) == rank_oracle(&augmented)
            });
            let (exists, _) = classifier::positive_area_exists(&divisor(&s));
            if grid_hit {
                assert!(exists, "{s:?}");
            }
        }
    }
}

#[test]
fn exactness_examples_and_errors() {
    let q = |x: i64| Rational::from_integer(x.into());
    let d = divisor(&[-3, -3]);
    assert!(exact_on_boundary(&d, &[q(1), q(1)]).unwrap().is_exact());
    assert!(exact_on_boundary(&d, &[q(0), q(1)]).is_err());
    assert!(exact_on_boundary(&d, &[q(1)]).is_err());
    // (-2,-2,-2) is degenerate with kernel (1,1,1); equal areas are not in the image
    let d = divisor(&[-2, -2, -2]);
    assert!(!exact_on_boundary(&d, &[q(1), q(1), q(1)]).unwrap().is_exact());
    assert!(!classifier::positive_area_exists(&d).0);
}

#[test]
fn rigidity_examples() {
    let bounds = SearchBounds::new(6, -6, 4);
    let Rigidity::Rigid { pattern, .. } = classifier::rigidity_witness(&cycle(&[1, 1, 1]), &bounds) else {
        panic!("(1,1,1) is rigid");
    };
    assert_eq!(pattern, RigidPattern::AllAtLeastMinusOne);
    let Rigidity::Rigid {
        representative, word, ..
    } = classifier::rigidity_witness(&cycle(&[2, -1, 0]), &bounds)
    else {
        panic!("(2,-1,0) is rigid");
    };
    assert_eq!(word.replay().unwrap().canonical_form(), Divisor::Cycle(representative.canonical_form()));
    assert!(RigidPattern::find(&representative).is_some());
}

#[test]
fn profile_examples() {
    let v = classifier::filling_profile_check(0, 1, 1, 3);
    assert!(v.valid);
    assert_eq!((v.b_plus_closed, v.euler), (3, 6));
    let v = classifier::filling_profile_check(1, 2, 0, 0);
    assert!(v.valid);
    assert_eq!((v.b_plus_closed, v.euler), (3, 2));
    assert!(!classifier::filling_profile_check(0, 1, 0, 5).valid);
}
