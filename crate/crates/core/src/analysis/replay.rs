//! Independent re-checking of certificates.
//!
//! Cycle witnesses are replayed step by step without the recurrence
//! detector; discards are re-derived from the completed relations.

use thiserror::Error;

use crate::analysis::discard::{decompose, pattern_power, pattern_probe};
use crate::analysis::{
    check_domination_bounded, BudgetsUsed, Certificate, DominationCheck, DominationMode, RightForm, VCheck,
};
use crate::presentation::Presentation;
use crate::reversing::{left_reverse_steps, right_reverse, right_reverse_steps, Budget, Direction, ReversingOutcome};
use crate::words::{PositiveWord, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("presentation is not right-triangular")]
    NotTriangular,
    #[error("certificate refers to a relation that does not exist")]
    NoSuchRelation,
    #[error("relation word does not have the claimed shape")]
    WrongShape,
    #[error("the v check does not hold")]
    VCheckFails,
    #[error("replayed reversing does not reproduce the claimed word")]
    ReplayMismatch,
    #[error("cycle flanks are both empty")]
    EmptyFlanks,
    #[error("letters are in the same chain")]
    SameChain,
    #[error("conjugate of generator {0} does not reverse to the claimed image")]
    ImageMismatch(usize),
    #[error("top generator does not left-divide w")]
    NotAboveTop,
    #[error("bounded domination claim does not replay")]
    DominationMismatch,
}

/// Re-checks `cert` against `p` read in right form. Left-side certificates
/// are checked against the opposite presentation.
pub fn verify_certificate(p: &Presentation, cert: &Certificate, budget: &Budget) -> Result<(), ReplayError> {
    let form = RightForm::new(p).ok_or(ReplayError::NotTriangular)?;
    let mut meter = BudgetsUsed::default();
    match cert {
        Certificate::TailDiscard { relation_index, top, word } => {
            let rel = relation(&form, *relation_index)?;
            if rel.top != *top || rel.word() != *word || word.len() < 2 || word.last() != Some(*top) {
                return Err(ReplayError::WrongShape);
            }
            Ok(())
        }
        Certificate::PatternDiscard { relation_index, top, word, u, v, r, v_check } => {
            let rel = relation(&form, *relation_index)?;
            if rel.top != *top || rel.word() != *word || u.is_empty() {
                return Err(ReplayError::WrongShape);
            }
            let w = word.letters();
            let expected: PositiveWord = u.concat(v).pow(*r).concat(u).concat(&PositiveWord::letter(*top));
            if !word.starts_with(expected.letters()) || !word.starts_with(u.concat(v).letters()) {
                return Err(ReplayError::WrongShape);
            }
            if pattern_power(w, *top, u.len(), v.len()).is_none() {
                return Err(ReplayError::WrongShape);
            }
            match v_check {
                VCheck::Empty if v.is_empty() => {}
                VCheck::Decomposition(parts) => {
                    let joined = parts.iter().fold(PositiveWord::empty(), |acc, x| acc.concat(x));
                    let each_ok = parts
                        .iter()
                        .all(|x| !x.is_empty() && word.starts_with(x.concat(&PositiveWord::letter(*top)).letters()));
                    if joined != *v || !each_ok || decompose(word, *top, v).is_none() {
                        return Err(ReplayError::VCheckFails);
                    }
                }
                VCheck::Reversal(res) => {
                    let start = v.inverse().concat(&PositiveWord::letter(*top).to_signed());
                    let out = form.reverse(&start, budget, &mut meter);
                    if out.positive_result() != Some(res) || res.first() != Some(*top) {
                        return Err(ReplayError::VCheckFails);
                    }
                }
                _ => return Err(ReplayError::VCheckFails),
            }
            // The probe `s^-1 u s` must not terminate.
            match right_reverse(&pattern_probe(*top, u), form.table(), budget) {
                ReversingOutcome::Terminated { .. } => Err(ReplayError::ReplayMismatch),
                _ => Ok(()),
            }
        }
        Certificate::CycleWitness { start, prefix_steps, cycle } => {
            if cycle.flank_left.is_empty() && cycle.flank_right.is_empty() {
                return Err(ReplayError::EmptyFlanks);
            }
            let run = |w: &SignedWord, n: usize| -> Result<SignedWord, ReplayError> {
                match cycle.direction {
                    Direction::Right => right_reverse_steps(w, form.table(), n),
                    Direction::Left => left_reverse_steps(w, form.table(), n),
                }
                .map_err(|_| ReplayError::ReplayMismatch)
            };
            let framed = cycle.outer_left.concat(&cycle.recurring).concat(&cycle.outer_right);
            if run(start, *prefix_steps)? != framed {
                return Err(ReplayError::ReplayMismatch);
            }
            if cycle.period_steps == 0 || run(&cycle.recurring, cycle.period_steps)? != cycle.expanded() {
                return Err(ReplayError::ReplayMismatch);
            }
            Ok(())
        }
        Certificate::MultiChain { s, t } => {
            let chains = form.structure().chains();
            let chain_of = |x| chains.iter().position(|c| c.contains(&x));
            if chain_of(*s) == chain_of(*t) || form.table().get(*s, *t).is_some() {
                return Err(ReplayError::SameChain);
            }
            Ok(())
        }
        Certificate::QuasiCentral { w, images } => {
            let top = form.structure().top().ok_or(ReplayError::NotTriangular)?;
            if w.first() != Some(top) {
                let out = form.reverse(&SignedWord::fraction(&PositiveWord::letter(top), w), budget, &mut meter);
                if out.positive_result().is_none() {
                    return Err(ReplayError::NotAboveTop);
                }
            }
            if images.len() != form.alphabet().len() {
                return Err(ReplayError::ImageMismatch(images.len()));
            }
            for (g, img) in form.alphabet().letters().zip(images) {
                let start = w.inverse().concat(&PositiveWord::letter(g).to_signed()).concat(&w.to_signed());
                let out = form.reverse(&start, budget, &mut meter);
                let trivial = g == top && img == &PositiveWord::letter(top) && w.letters().iter().all(|&l| l == top);
                let ok = trivial || out.positive_result() == Some(img);
                if !ok {
                    return Err(ReplayError::ImageMismatch(g.index()));
                }
            }
            Ok(())
        }
        Certificate::DominationBounded { delta, checks } => {
            for (g, claim) in checks {
                let n = match claim {
                    DominationCheck::HoldsUpTo(n) | DominationCheck::FailsAt(n) | DominationCheck::UnknownAt(n) => *n,
                };
                let again = check_domination_bounded(&form, delta, *g, n, DominationMode::Every, budget, &mut meter);
                let same = match (claim, &again) {
                    (DominationCheck::HoldsUpTo(_), DominationCheck::HoldsUpTo(_)) => true,
                    (DominationCheck::FailsAt(a), DominationCheck::FailsAt(b)) => a == b,
                    (DominationCheck::UnknownAt(_), _) => true,
                    _ => false,
                };
                if !same {
                    return Err(ReplayError::DominationMismatch);
                }
            }
            Ok(())
        }
        Certificate::DominationCertified { delta, m, g, quasi_central } => {
            match quasi_central.as_ref() {
                Certificate::QuasiCentral { w, .. } if *w == delta.pow(*m) => {}
                _ => return Err(ReplayError::WrongShape),
            }
            verify_certificate(p, quasi_central, budget)?;
            let lhs = PositiveWord::letter(*g).concat(&delta.pow(m.saturating_sub(1)));
            let out = form.reverse(&SignedWord::fraction(&lhs, delta), budget, &mut meter);
            if out.positive_result().is_none() {
                return Err(ReplayError::DominationMismatch);
            }
            Ok(())
        }
    }
}

fn relation(form: &RightForm, index: usize) -> Result<crate::presentation::CompletedRelation, ReplayError> {
    form.structure().completed_relations().into_iter().nth(index).ok_or(ReplayError::NoSuchRelation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze, AnalysisConfig};

    #[test]
    fn verdict_certificates_replay() {
        for rel in ["a = bab", "a = ba", "a = bbabb", "a = baab", "a = bababab"] {
            let p = Presentation::from_strs(&["a", "b"], &[rel]).unwrap();
            let v = analyze(&p, &AnalysisConfig::default());
            let cert = v.certificate.expect("certificate");
            assert_eq!(verify_certificate(&p, &cert, &Budget::default()), Ok(()), "{rel}");
        }
    }

    #[test]
    fn tampered_image_is_rejected() {
        let p = Presentation::from_strs(&["a", "b"], &["a = baab"]).unwrap();
        let v = analyze(&p, &AnalysisConfig::default());
        let Some(Certificate::QuasiCentral { w, mut images }) = v.certificate else { panic!() };
        images[1] = PositiveWord::letter(crate::words::Letter::new(1)).pow(2);
        assert!(matches!(
            verify_certificate(&p, &Certificate::QuasiCentral { w, images }, &Budget::default()),
            Err(ReplayError::ImageMismatch(1))
        ));
    }
}
