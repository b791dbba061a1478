//! Subword reversing.
//!
//! Right reversing rewrites a junction `s^-1 t` into `u v^-1` using the table
//! entry `s u = t v`, and deletes `s^-1 s`. A run ends in one of four ways:
//! the word becomes positive-negative, no relation matches a junction, an
//! earlier word comes back with negative material on its left and positive
//! material on its right, or a budget runs out.
//!
//! Left reversing is right reversing of the mirrored word over the table of
//! the opposite presentation, mirrored back.

mod divisibility;
mod engine;

pub use divisibility::{common_right_multiple, compare_divisibility, CommonMultiple, Divisibility, DivisibilityError};

use serde::Serialize;
use thiserror::Error;

use crate::presentation::RelationTable;
use crate::words::{Alphabet, Letter, PositiveWord, SignedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_steps: usize,
    pub max_length: usize,
    /// Steps during which every earlier word is compared for recurrence.
    /// Later steps compare against one checkpoint moved at doubling steps.
    /// 0 disables recurrence detection.
    pub history_window: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 100_000, max_length: 100_000, history_window: 1024 }
    }
}

impl Budget {
    pub fn with_steps(max_steps: usize) -> Self {
        Budget { max_steps, ..Budget::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

/// A recurrence found during reversing.
///
/// The word at `earlier_step` is `outer_left · recurring · outer_right`, and
/// reversing `recurring` on its own for `period_steps` steps gives
/// [`Cycle::expanded`]: `flank_left^-1 · recurring · flank_right` for right
/// reversing, `flank_left · recurring · flank_right^-1` for left reversing.
/// The outer words are not touched in between. At least one flank is
/// non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub direction: Direction,
    pub earlier_step: usize,
    pub detected_step: usize,
    pub period_steps: usize,
    pub recurring: SignedWord,
    pub flank_left: PositiveWord,
    pub flank_right: PositiveWord,
    pub outer_left: SignedWord,
    pub outer_right: SignedWord,
}

impl Cycle {
    /// The word the recurring word turns into after one period.
    pub fn expanded(&self) -> SignedWord {
        match self.direction {
            Direction::Right => self.flank_left.inverse().concat(&self.recurring).concat(&self.flank_right.to_signed()),
            Direction::Left => self.flank_left.to_signed().concat(&self.recurring).concat(&self.flank_right.inverse()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReversingOutcome {
    /// Right reversing ends in `numerator · denominator^-1`, left reversing in
    /// `denominator^-1 · numerator`.
    Terminated {
        numerator: PositiveWord,
        denominator: PositiveWord,
        steps: usize,
    },
    /// No relation for the junction made of `pair.0` and `pair.1` at
    /// `position` in `word`; `pair.0` is the inverted letter.
    Stuck {
        position: usize,
        pair: (Letter, Letter),
        steps: usize,
        word: SignedWord,
    },
    Cycle(Cycle),
    BudgetExceeded {
        steps: usize,
        length: usize,
        last_word: SignedWord,
    },
}

impl ReversingOutcome {
    pub fn steps(&self) -> usize {
        match self {
            ReversingOutcome::Terminated { steps, .. }
            | ReversingOutcome::Stuck { steps, .. }
            | ReversingOutcome::BudgetExceeded { steps, .. } => *steps,
            ReversingOutcome::Cycle(c) => c.detected_step,
        }
    }

    /// `Some(v)` when the run terminated with an empty denominator.
    pub fn positive_result(&self) -> Option<&PositiveWord> {
        match self {
            ReversingOutcome::Terminated { numerator, denominator, .. } if denominator.is_empty() => Some(numerator),
            _ => None,
        }
    }

    pub fn is_terminated(&self) -> bool {
        matches!(self, ReversingOutcome::Terminated { .. })
    }

    /// True for outcomes that certify a non-terminating or blocked run.
    pub fn is_obstruction(&self) -> bool {
        matches!(self, ReversingOutcome::Stuck { .. } | ReversingOutcome::Cycle(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Cancel { letter: Letter },
    Relation { pair: (Letter, Letter), source: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: usize,
    /// Index of the first letter of the rewritten junction, in the word before the step.
    pub position: usize,
    pub rule: Rule,
    pub word: SignedWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversingTrace {
    pub direction: Direction,
    pub initial: SignedWord,
    pub steps: Vec<TraceStep>,
}

impl ReversingTrace {
    /// All words of the run, starting with the initial one.
    pub fn words(&self) -> impl Iterator<Item = &SignedWord> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.word))
    }

    /// One JSON object per line: `{step, word, rule, position}`.
    pub fn to_jsonl(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let head = serde_json::json!({
            "step": 0,
            "word": alphabet.show_signed(&self.initial),
            "rule": "start",
            "position": serde_json::Value::Null,
        });
        out.push_str(&head.to_string());
        out.push('\n');
        for s in &self.steps {
            let rule = match s.rule {
                Rule::Cancel { letter } => format!("cancel {}", alphabet.name(letter)),
                Rule::Relation { pair, source } => {
                    format!("{}^-1 {} (relation {})", alphabet.name(pair.0), alphabet.name(pair.1), source)
                }
            };
            let line = serde_json::json!({
                "step": s.step,
                "word": alphabet.show_signed(&s.word),
                "rule": rule,
                "position": s.position,
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReversingError {
    #[error("no junction at position {0}")]
    NoJunction(usize),
    #[error("no relation for the junction at position {0}")]
    NoRelation(usize),
}

pub fn right_reverse(word: &SignedWord, table: &RelationTable, budget: &Budget) -> ReversingOutcome {
    engine::run(word, table, budget, Strategy::Leftmost, None)
}

pub fn right_reverse_with(
    word: &SignedWord,
    table: &RelationTable,
    budget: &Budget,
    strategy: Strategy,
) -> ReversingOutcome {
    engine::run(word, table, budget, strategy, None)
}

pub fn right_reverse_traced(
    word: &SignedWord,
    table: &RelationTable,
    budget: &Budget,
) -> (ReversingOutcome, ReversingTrace) {
    let mut steps = Vec::new();
    let outcome = engine::run(word, table, budget, Strategy::Leftmost, Some(&mut steps));
    (outcome, ReversingTrace { direction: Direction::Right, initial: word.clone(), steps })
}

/// Left reversing over `opposite_table`, the table of the opposite presentation.
pub fn left_reverse(word: &SignedWord, opposite_table: &RelationTable, budget: &Budget) -> ReversingOutcome {
    let outcome = engine::run(&word.mirror(), opposite_table, budget, Strategy::Leftmost, None);
    mirror_outcome(outcome)
}

pub fn left_reverse_traced(
    word: &SignedWord,
    opposite_table: &RelationTable,
    budget: &Budget,
) -> (ReversingOutcome, ReversingTrace) {
    let mut steps = Vec::new();
    let outcome = engine::run(&word.mirror(), opposite_table, budget, Strategy::Leftmost, Some(&mut steps));
    let mut prev_len = word.len();
    let steps = steps
        .into_iter()
        .map(|s| {
            let position = prev_len - 2 - s.position;
            prev_len = s.word.len();
            TraceStep { step: s.step, position, rule: s.rule, word: s.word.mirror() }
        })
        .collect();
    (mirror_outcome(outcome), ReversingTrace { direction: Direction::Left, initial: word.clone(), steps })
}

fn mirror_outcome(outcome: ReversingOutcome) -> ReversingOutcome {
    match outcome {
        ReversingOutcome::Terminated { numerator, denominator, steps } => {
            ReversingOutcome::Terminated { numerator: numerator.mirror(), denominator: denominator.mirror(), steps }
        }
        ReversingOutcome::Stuck { position, pair, steps, word } => {
            ReversingOutcome::Stuck { position: word.len() - 2 - position, pair, steps, word: word.mirror() }
        }
        ReversingOutcome::Cycle(c) => ReversingOutcome::Cycle(Cycle {
            direction: Direction::Left,
            earlier_step: c.earlier_step,
            detected_step: c.detected_step,
            period_steps: c.period_steps,
            recurring: c.recurring.mirror(),
            flank_left: c.flank_right.mirror(),
            flank_right: c.flank_left.mirror(),
            outer_left: c.outer_right.mirror(),
            outer_right: c.outer_left.mirror(),
        }),
        ReversingOutcome::BudgetExceeded { steps, length, last_word } => {
            ReversingOutcome::BudgetExceeded { steps, length, last_word: last_word.mirror() }
        }
    }
}

/// One right-reversing step at the junction starting at `position`.
pub fn reverse_step(word: &SignedWord, table: &RelationTable, position: usize) -> Result<SignedWord, ReversingError> {
    let entries = word.entries();
    if position + 1 >= entries.len() || !(entries[position].is_negative() && entries[position + 1].is_positive()) {
        return Err(ReversingError::NoJunction(position));
    }
    let mut w = entries.to_vec();
    engine::apply(&mut w, position, table).map_err(|_| ReversingError::NoRelation(position))?;
    Ok(SignedWord::new(w))
}

/// Runs exactly `n` leftmost right-reversing steps, without recurrence detection.
pub fn right_reverse_steps(word: &SignedWord, table: &RelationTable, n: usize) -> Result<SignedWord, ReversingError> {
    let mut w = word.entries().to_vec();
    let mut hint = 0;
    for _ in 0..n {
        let pos = engine::find_junction(&w, Strategy::Leftmost, hint).ok_or(ReversingError::NoJunction(w.len()))?;
        engine::apply(&mut w, pos, table).map_err(|_| ReversingError::NoRelation(pos))?;
        hint = pos.saturating_sub(1);
    }
    Ok(SignedWord::new(w))
}

/// Runs exactly `n` leftmost left-reversing steps over the opposite table.
pub fn left_reverse_steps(
    word: &SignedWord,
    opposite_table: &RelationTable,
    n: usize,
) -> Result<SignedWord, ReversingError> {
    right_reverse_steps(&word.mirror(), opposite_table, n).map(|w| w.mirror())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;
    use crate::words::Alphabet;

    fn table(names: &[&str], rels: &[&str]) -> RelationTable {
        Presentation::from_strs(names, rels).unwrap().detect_right_triangular().unwrap().complete()
    }

    #[test]
    fn klein_bottle_terminates() {
        let t = table(&["a", "b"], &["a = bab"]);
        let ab = Alphabet::standard(2);
        let w = ab.parse_signed("b^-1a").unwrap();
        match right_reverse(&w, &t, &Budget::default()) {
            ReversingOutcome::Terminated { numerator, denominator, steps } => {
                assert_eq!(ab.show_positive(&numerator), "ab");
                assert!(denominator.is_empty());
                assert_eq!(steps, 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn three_letter_example_cycles_after_four_steps() {
        let t = table(&["a", "b", "c"], &["a = bab", "b = cbc"]);
        let ab = Alphabet::standard(3);
        let w = ab.parse_signed("a^-1c^-1a").unwrap();
        let (out, trace) = right_reverse_traced(&w, &t, &Budget::default());
        let shown: Vec<String> = trace.words().map(|w| ab.show_signed(w)).collect();
        assert_eq!(shown[1], "a^-1bcab");
        assert_eq!(shown[2], "b^-1a^-1cab");
        match out {
            ReversingOutcome::Cycle(c) => {
                assert_eq!((c.earlier_step, c.detected_step, c.period_steps), (0, 4, 4));
                assert_eq!(ab.show_positive(&c.flank_left), "bb");
                assert_eq!(ab.show_positive(&c.flank_right), "bb");
                assert_eq!(c.expanded(), trace.steps[3].word);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stuck_on_missing_pair() {
        let t = table(&["a", "b", "c"], &["a = bab"]);
        let ab = Alphabet::standard(3);
        let w = ab.parse_signed("a^-1c").unwrap();
        assert!(matches!(
            right_reverse(&w, &t, &Budget::default()),
            ReversingOutcome::Stuck { position: 0, steps: 0, .. }
        ));
    }

    #[test]
    fn budget_is_reported() {
        let t = table(&["a", "b"], &["a = babb"]);
        let ab = Alphabet::standard(2);
        let w = ab.parse_signed("a^-6ba^6").unwrap();
        let b = Budget { max_steps: 10, ..Budget::default() };
        assert!(matches!(right_reverse(&w, &t, &b), ReversingOutcome::BudgetExceeded { steps: 10, .. }));
    }

    #[test]
    fn left_reversing_mirrors() {
        let p = Presentation::from_strs(&["a", "b"], &["a = baab"]).unwrap();
        let opp = p.detect_left_triangular().unwrap().complete();
        let ab = p.alphabet();
        let w = ab.parse_signed("ab^-1").unwrap();
        match left_reverse(&w, &opp, &Budget::default()) {
            ReversingOutcome::Terminated { numerator, denominator, .. } => {
                assert_eq!(ab.show_positive(&numerator), "baa");
                assert!(denominator.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_steps() {
        let t = table(&["a", "b"], &["a = bab"]);
        let ab = Alphabet::standard(2);
        let w = ab.parse_signed("ab^-1a").unwrap();
        assert_eq!(reverse_step(&w, &t, 0), Err(ReversingError::NoJunction(0)));
        assert_eq!(ab.show_signed(&reverse_step(&w, &t, 1).unwrap()), "aab");
        assert_eq!(ab.show_signed(&right_reverse_steps(&w, &t, 1).unwrap()), "aab");
    }

    #[test]
    fn jsonl_trace_has_one_line_per_word() {
        let t = table(&["a", "b"], &["a = bab"]);
        let ab = Alphabet::standard(2);
        let w = ab.parse_signed("a^-1b^-1a").unwrap();
        let (_, trace) = right_reverse_traced(&w, &t, &Budget::default());
        let text = trace.to_jsonl(&ab);
        assert_eq!(text.lines().count(), trace.steps.len() + 1);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["word"], "a^-1b^-1a");
    }
}
