//! Final fragments of the right ceiling.
//!
//! Starting from `s_1 = a_1`, each new letter `s_n` is the generator `x`
//! maximising `x s_(n-1) ... s_1` for left divisibility. Candidates are
//! compared pairwise by reversing.

use thiserror::Error;

use crate::analysis::{BudgetsUsed, Certificate, RightForm};
use crate::reversing::{Budget, ReversingOutcome};
use crate::words::{Letter, PositiveWord, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CeilingError {
    #[error("the presentation has more than one chain")]
    NotSingleChain,
    #[error("at length {length} two candidates give equal elements")]
    AmbiguousCandidate { length: usize, letters: (Letter, Letter) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CeilingStop {
    /// The requested length was reached.
    Reached,
    /// Some comparison does not terminate; the certificate proves it.
    Refuted(Certificate),
    /// A comparison ran out of budget.
    Budget(ReversingOutcome),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ceiling {
    /// `s_1, s_2, ...`
    pub letters: Vec<Letter>,
    pub stop: CeilingStop,
}

impl Ceiling {
    /// The word `s_n ... s_1`.
    pub fn word(&self) -> PositiveWord {
        self.letters.iter().rev().copied().collect()
    }

    /// Smallest `p <= max_len` such that the prefix has period `p` and
    /// contains at least `min_repeats` full periods. Returned as `s_p ... s_1`.
    pub fn period(&self, max_len: usize, min_repeats: usize) -> Option<PositiveWord> {
        let s = &self.letters;
        (1..=max_len)
            .find(|&p| s.len() >= p * min_repeats.max(1) && (p..s.len()).all(|k| s[k] == s[k - p]))
            .map(|p| s[..p].iter().rev().copied().collect())
    }
}

/// Computes up to `target` letters of the ceiling.
pub fn ceiling_prefix(
    form: &RightForm,
    target: usize,
    budget: &Budget,
    meter: &mut BudgetsUsed,
) -> Result<Ceiling, CeilingError> {
    let order = form.structure().chain_order().ok_or(CeilingError::NotSingleChain)?;
    let mut letters = vec![order[0]];
    while letters.len() < target {
        let tail: PositiveWord = letters.iter().rev().copied().collect();
        let mut best = order[0];
        for &cand in &order[1..] {
            let lhs = PositiveWord::letter(best).concat(&tail);
            let rhs = PositiveWord::letter(cand).concat(&tail);
            let start = SignedWord::fraction(&lhs, &rhs);
            match form.reverse(&start, budget, meter) {
                ReversingOutcome::Terminated { numerator, denominator, .. } => {
                    if numerator.is_empty() && denominator.is_empty() {
                        return Err(CeilingError::AmbiguousCandidate {
                            length: letters.len() + 1,
                            letters: (best, cand),
                        });
                    }
                    if denominator.is_empty() {
                        best = cand;
                    }
                }
                ReversingOutcome::Cycle(c) => {
                    return Ok(Ceiling { letters, stop: CeilingStop::Refuted(Certificate::cycle(start, c)) });
                }
                stuck @ ReversingOutcome::Stuck { .. } => {
                    // Unreachable on a single chain.
                    return Ok(Ceiling { letters, stop: CeilingStop::Budget(stuck) });
                }
                out @ ReversingOutcome::BudgetExceeded { .. } => {
                    return Ok(Ceiling { letters, stop: CeilingStop::Budget(out) });
                }
            }
        }
        letters.push(best);
    }
    Ok(Ceiling { letters, stop: CeilingStop::Reached })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;
    use crate::words::Alphabet;

    fn ceiling(names: &[&str], rels: &[&str], n: usize) -> Result<Ceiling, CeilingError> {
        let p = Presentation::from_strs(names, rels).unwrap();
        let form = RightForm::new(&p).unwrap();
        ceiling_prefix(&form, n, &Budget::default(), &mut BudgetsUsed::default())
    }

    #[test]
    fn klein_bottle_ceiling_is_constant() {
        let c = ceiling(&["a", "b"], &["a = bab"], 10).unwrap();
        assert_eq!(c.stop, CeilingStop::Reached);
        assert_eq!(Alphabet::standard(2).show_positive(&c.word()), "aaaaaaaaaa");
        assert_eq!(c.period(8, 3).unwrap().len(), 1);
    }

    #[test]
    fn equal_generators_are_ambiguous() {
        assert!(matches!(ceiling(&["a", "b"], &["a = b"], 4), Err(CeilingError::AmbiguousCandidate { length: 2, .. })));
    }

    #[test]
    fn multi_chain_is_rejected() {
        assert_eq!(ceiling(&["a", "b", "c"], &["a = bab"], 4), Err(CeilingError::NotSingleChain));
    }
}
