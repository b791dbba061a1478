//! Randomised property suites, shared by the property tests and the
//! acceptance report.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use subrev::analysis::{analyze, verify_certificate, AnalysisConfig};
use subrev::decision::{DecisionContext, Sign, WordProblem};
use subrev::reversing::{compare_divisibility, right_reverse_with, Divisibility, Strategy as Order};
use subrev::{Budget, Letter, PositiveWord, Presentation, ReversingOutcome, SignedWord};

use super::oracle::{equal_bfs, KleinElement};
use super::table;

pub const CASES: u32 = 500;

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("invert and mirror involutions", involutions),
    ("common multiple identity", common_multiple_identity),
    ("one side empty", one_side_empty),
    ("strategy independence", strategy_independence),
    ("left cancellation", left_cancellation),
    ("sign antisymmetry", sign_antisymmetry),
    ("sign trichotomy and consistency", sign_trichotomy),
    ("sign left invariance", sign_left_invariance),
    ("positive cone", positive_cone),
    ("fraction validity", fraction_validity),
    ("word problem against a faithful action", klein_action),
    ("certificate replay", certificate_replay),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn signed_word(n: u16, max: usize) -> impl Strategy<Value = SignedWord> {
    prop::collection::vec((0..n, any::<bool>()), 0..=max).prop_map(|v| {
        SignedWord::new(
            v.into_iter().map(|(l, pos)| if pos { Letter::new(l).pos() } else { Letter::new(l).neg() }).collect(),
        )
    })
}

pub fn positive_word(n: u16, min: usize, max: usize) -> impl Strategy<Value = PositiveWord> {
    prop::collection::vec(0..n, min..=max).prop_map(|v| v.into_iter().map(Letter::new).collect())
}

/// `(a, b; a = b w)`.
pub fn two_generator(w: &PositiveWord) -> Presentation {
    let ab = subrev::Alphabet::standard(2);
    Presentation::from_strs(&["a", "b"], &[&format!("a = b{}", ab.show_positive(w).replace("eps", ""))]).unwrap()
}

fn pres(rel: &str) -> Presentation {
    Presentation::from_strs(&["a", "b"], &[rel]).unwrap()
}

/// Presentations of O-type used by the ordering suites.
pub fn ordered() -> Vec<Presentation> {
    vec![pres("a = baab"), pres("a = bab")]
}

fn outcome_pair(o: &ReversingOutcome) -> Option<(PositiveWord, PositiveWord)> {
    match o {
        ReversingOutcome::Terminated { numerator, denominator, .. } => Some((numerator.clone(), denominator.clone())),
        _ => None,
    }
}

fn involutions(cases: u32) -> Result<(), String> {
    check(cases, (signed_word(3, 12), signed_word(3, 12)), |(w, x)| {
        prop_assert_eq!(w.invert().invert(), w.clone());
        prop_assert_eq!(w.mirror().mirror(), w.clone());
        prop_assert_eq!(w.concat(&x).invert(), x.invert().concat(&w.invert()));
        prop_assert_eq!(w.invert().mirror(), w.mirror().invert());
        Ok(())
    })
}

fn common_multiple_identity(cases: u32) -> Result<(), String> {
    let ps = ordered();
    let tables: Vec<_> = ps.iter().map(table).collect();
    check(cases, (0..ps.len(), positive_word(2, 0, 3), positive_word(2, 0, 3)), |(k, u, v)| {
        let out = subrev::reversing::right_reverse(&SignedWord::fraction(&u, &v), &tables[k], &Budget::default());
        let (v2, u2) = outcome_pair(&out).ok_or_else(|| TestCaseError::fail("no termination"))?;
        let (left, right) = (u.concat(&v2), v.concat(&u2));
        let same = if k == 1 {
            KleinElement::of(&left.to_signed()) == KleinElement::of(&right.to_signed())
        } else {
            equal_bfs(&ps[k], &left, &right, 4, 400_000)
        };
        prop_assert!(same, "u v' and v u' differ");
        Ok(())
    })
}

fn random_two_generator() -> impl Strategy<Value = Presentation> {
    positive_word(2, 0, 7).prop_map(|w| two_generator(&w))
}

fn one_side_empty(cases: u32) -> Result<(), String> {
    let budget = Budget { max_steps: 2_000, max_length: 2_000, history_window: 64 };
    check(cases, (random_two_generator(), positive_word(2, 0, 5), positive_word(2, 0, 5)), |(p, u, v)| {
        let out = subrev::reversing::right_reverse(&SignedWord::fraction(&u, &v), &table(&p), &budget);
        if let Some((n, d)) = outcome_pair(&out) {
            prop_assert!(n.is_empty() || d.is_empty());
        }
        Ok(())
    })
}

fn strategy_independence(cases: u32) -> Result<(), String> {
    let budget = Budget { max_steps: 4_000, max_length: 4_000, history_window: 0 };
    let partial = Presentation::from_strs(&["a", "b", "c"], &["a = bab"]).unwrap();
    let pick = prop_oneof![random_two_generator(), Just(partial)];
    check(cases, (pick, signed_word(3, 8)), |(p, w)| {
        let n = p.alphabet().len() as u16;
        let w = SignedWord::new(w.entries().iter().copied().filter(|e| (e.letter().index() as u16) < n).collect());
        let t = table(&p);
        let l = right_reverse_with(&w, &t, &budget, Order::Leftmost);
        let r = right_reverse_with(&w, &t, &budget, Order::Rightmost);
        match (&l, &r) {
            (ReversingOutcome::Terminated { .. }, ReversingOutcome::Terminated { .. }) => {
                prop_assert_eq!(outcome_pair(&l), outcome_pair(&r));
            }
            (ReversingOutcome::Terminated { .. }, ReversingOutcome::Stuck { .. })
            | (ReversingOutcome::Stuck { .. }, ReversingOutcome::Terminated { .. }) => {
                prop_assert!(false, "one order terminates, the other is stuck");
            }
            _ => {}
        }
        Ok(())
    })
}

fn kind(d: &Divisibility) -> u8 {
    match d {
        Divisibility::Equal => 0,
        Divisibility::UDividesV { .. } => 1,
        Divisibility::VDividesU { .. } => 2,
        Divisibility::NoCommonMultiple { .. } => 3,
        Divisibility::Unknown { .. } => 4,
    }
}

fn left_cancellation(cases: u32) -> Result<(), String> {
    let budget = Budget { max_steps: 3_000, max_length: 3_000, history_window: 256 };
    let words = (positive_word(2, 0, 4), positive_word(2, 0, 4), positive_word(2, 1, 3));
    check(cases, (random_two_generator(), words), |(p, (u, v, s))| {
        let t = table(&p);
        let plain = compare_divisibility(&u, &v, &t, &budget).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let shifted = compare_divisibility(&s.concat(&u), &s.concat(&v), &t, &budget)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        if kind(&plain) != 4 && kind(&shifted) != 4 {
            prop_assert_eq!(kind(&plain), kind(&shifted));
        }
        Ok(())
    })
}

fn contexts() -> Vec<DecisionContext> {
    ordered()
        .iter()
        .map(|p| {
            let c = DecisionContext::certified(p, &AnalysisConfig::default()).unwrap();
            assert!(c.is_otype_certified());
            c
        })
        .collect()
}

fn sign_of(c: &DecisionContext, w: &SignedWord) -> Result<Sign, TestCaseError> {
    c.order_sign(w, &Budget::default()).map(|s| s.sign).map_err(|e| TestCaseError::fail(e.to_string()))
}

fn sign_antisymmetry(cases: u32) -> Result<(), String> {
    let cs = contexts();
    check(cases, (0..cs.len(), signed_word(2, 10)), |(k, w)| {
        prop_assert_eq!(sign_of(&cs[k], &w.invert())?, -sign_of(&cs[k], &w)?);
        Ok(())
    })
}

fn sign_trichotomy(cases: u32) -> Result<(), String> {
    let cs = contexts();
    check(cases, (0..cs.len(), signed_word(2, 10)), |(k, w)| {
        let s = sign_of(&cs[k], &w)?;
        let wp = cs[k].word_problem(&w, &Budget::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(s == Sign::Zero, wp == WordProblem::Equal1);
        Ok(())
    })
}

fn sign_left_invariance(cases: u32) -> Result<(), String> {
    let cs = contexts();
    let words = (positive_word(2, 0, 5), positive_word(2, 0, 5), positive_word(2, 1, 4));
    check(cases, (0..cs.len(), words), |(k, (u, v, g))| {
        let before = sign_of(&cs[k], &SignedWord::fraction(&u, &v))?;
        let after = sign_of(&cs[k], &SignedWord::fraction(&g.concat(&u), &g.concat(&v)))?;
        prop_assert_eq!(before, after);
        Ok(())
    })
}

fn positive_cone(cases: u32) -> Result<(), String> {
    let cs = contexts();
    check(cases, (0..cs.len(), positive_word(2, 1, 10)), |(k, p)| {
        prop_assert_eq!(sign_of(&cs[k], &p.to_signed())?, Sign::Positive);
        prop_assert_eq!(sign_of(&cs[k], &p.inverse())?, Sign::Negative);
        Ok(())
    })
}

fn fraction_validity(cases: u32) -> Result<(), String> {
    let cs = contexts();
    check(cases, (0..cs.len(), signed_word(2, 10)), |(k, w)| {
        let b = Budget::default();
        let f = cs[k].fraction_normal_form(&w, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let back = w.concat(&f.to_signed().invert());
        prop_assert_eq!(cs[k].word_problem(&back, &b), Ok(WordProblem::Equal1));
        Ok(())
    })
}

fn klein_action(cases: u32) -> Result<(), String> {
    let c = DecisionContext::certified(&pres("a = bab"), &AnalysisConfig::default()).unwrap();
    check(cases, signed_word(2, 14), |w| {
        let wp = c.word_problem(&w, &Budget::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(wp == WordProblem::Equal1, KleinElement::of(&w) == KleinElement::ONE);
        Ok(())
    })
}

fn certificate_replay(cases: u32) -> Result<(), String> {
    let cfg = AnalysisConfig::census();
    let three = (positive_word(3, 0, 3), positive_word(3, 0, 3)).prop_map(|(u, v)| {
        let ab = subrev::Alphabet::standard(3);
        let show = |w: &PositiveWord| ab.show_positive(w).replace("eps", "");
        Presentation::from_strs(&["a", "b", "c"], &[&format!("a = b{}", show(&u)), &format!("b = c{}", show(&v))])
            .unwrap()
    });
    let pick = prop_oneof![3 => positive_word(2, 0, 9).prop_map(|w| two_generator(&w)), 1 => three];
    check(cases, pick, |p| {
        for q in [p.clone(), p.opposite()] {
            let v = analyze(&q, &cfg);
            if let Some(c) = v.certificate.as_ref().filter(|c| c.is_proof()) {
                prop_assert!(
                    verify_certificate(&q, c, &Budget::default()).is_ok(),
                    "{} for {} does not replay",
                    c.kind(),
                    q.display()
                );
            }
        }
        Ok(())
    })
}
