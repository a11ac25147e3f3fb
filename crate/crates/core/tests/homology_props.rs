mod common;

use common::*;
use logcy_core::enumeration::{catalog, CaseTag, MinimalModelSpec};
use logcy_core::homology::{self, transport, validate_pair, AmbientBasis, HClass, LogCYPair, RuleStatus};
use logcy_core::moves::{Move, MoveWord};
use logcy_core::Divisor;
use num_bigint::BigInt;
use proptest::prelude::*;

fn assert_pair_invariants(p: &LogCYPair, word: &[Move]) {
    let report = validate_pair(p);
    assert!(report.is_valid(), "{:?} after {:?}: {:?}", p.divisor, word, report.violations);
    assert_eq!(p.sum_of_classes(), p.c1, "{:?}", word);
    assert_eq!(p.divisor.descriptors().s_total, p.divisor_class_square(), "{:?}", word);
}

#[test]
fn transport_is_closed_on_short_words() {
    // Pairs are deduplicated, and the outcome of a move depends only on the
    // pair it acts on, so this covers every word of length <= 4.
    let walk = catalog_walk(-2..=2, 4, false);
    assert!(walk.len() > 1000, "walk too small: {}", walk.len());
    for w in &walk {
        assert_pair_invariants(&w.pair, &w.word);
        let replayed = MoveWord {
            start: w.start.clone(),
            moves: w.word.clone(),
        }
        .replay()
        .unwrap();
        assert_eq!(replayed, w.pair.divisor);
    }
}

#[test]
fn blow_down_undoes_toric_blow_up_on_pairs() {
    for m in catalog(-2..=2) {
        let Some(p) = m.pair else { continue };
        let Divisor::Cycle(c) = &p.divisor else { continue };
        let k = c.len();
        for edge in 0..k {
            let up = transport(&p, &Move::ToricBlowUp { edge }).unwrap();
            let down = transport(
                &up,
                &Move::ToricBlowDown {
                    component: logcy_core::moves::inserted_index(k, edge),
                },
            )
            .unwrap();
            assert_eq!(down, p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_long_words_keep_sum_equal_c1(
        seed in 0usize..64,
        picks in prop::collection::vec(0usize..64, 1..=10),
    ) {
        let models: Vec<LogCYPair> = catalog(-3..=3).into_iter().filter_map(|m| m.pair).collect();
        let mut p = models[seed % models.len()].clone();
        let mut word = Vec::new();
        for pick in picks {
            let options = all_moves(&p.divisor);
            let mv = options[pick % options.len()];
            if let Ok(q) = transport(&p, &mv) {
                p = q;
                word.push(mv);
            }
        }
        prop_assert_eq!(p.sum_of_classes(), p.c1.clone());
        prop_assert_eq!(p.divisor.descriptors().s_total, p.divisor_class_square());
        prop_assert!(validate_pair(&p).is_valid());
    }
}

#[test]
fn broken_pairs_are_reported() {
    let good = MinimalModelSpec::new(CaseTag::B2, None).instantiate().pair.unwrap();
    assert!(validate_pair(&good).is_valid());

    let mut wrong_c1 = good.clone();
    wrong_c1.c1 = wrong_c1.c1.scale(2);
    assert!(validate_pair(&wrong_c1).has("sum_equals_c1"));

    let mut wrong_count = good.clone();
    wrong_count.classes.pop();
    assert!(validate_pair(&wrong_count).has("class_count"));

    let mut wrong_dim = good.clone();
    wrong_dim.classes[0] = HClass::from_i64s(&[1, 0, 0]);
    assert!(validate_pair(&wrong_dim).has("class_dimension"));
}

#[test]
fn complement_betti_examples() {
    assert_eq!(homology::complement_betti(10, 3).unwrap(), 6);
    assert_eq!(homology::complement_betti(4, 3).unwrap(), 0);
    assert!(homology::complement_betti(2, 3).is_err());
}

#[test]
fn constraint_report_on_catalog_is_clean() {
    for m in catalog(-3..=3) {
        let Some(p) = m.pair else { continue };
        let report = homology::check_constraints(&p);
        assert!(report.is_clean(), "{:?}: {:?}", m.spec, report.to_json());
        assert_eq!(report.findings.len(), homology::CONSTRAINT_RULES.len());
    }
}

#[test]
fn case_table_sequence_clauses() {
    let status = |s: &[i64]| homology::case_table(&cycle(s), None, Some(1)).status;
    // r >= 5: at most two non-negative entries, adjacent, one of them 0
    assert_eq!(status(&[-3, 2, 0, -2, -2]), RuleStatus::Satisfied);
    assert_eq!(status(&[0, -3, 2, -2, -2]), RuleStatus::Violated);
    assert_eq!(status(&[1, 1, 1, -2, -2]), RuleStatus::Violated);
    assert_eq!(status(&[-2, -2, -2, -2, -2]), RuleStatus::Satisfied);
    let b = AmbientBasis::Rational { n: 0 };
    assert_eq!(b.pair(&HClass::from_i64s(&[1]), &HClass::from_i64s(&[1])), BigInt::from(1));
}
