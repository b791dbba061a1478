//! Ordering sign, word problem and fraction normal forms in the group of
//! fractions of a monoid of O-type.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{analyze, AnalysisConfig, Status};
use crate::presentation::{Presentation, RelationTable};
use crate::reversing::{left_reverse, right_reverse, Budget, ReversingOutcome};
use crate::words::{PositiveWord, SignedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Sign {
    /// `"< 1"`, `"= 1"` or `"> 1"`.
    pub fn relation(self) -> &'static str {
        match self {
            Sign::Negative => "< 1",
            Sign::Zero => "= 1",
            Sign::Positive => "> 1",
        }
    }
}

/// The sign of `[w]`, with the positive word `p` such that `[w]` is `[p]`
/// (positive), `[p]^-1` (negative) or `1` (zero, `p` empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSign {
    pub sign: Sign,
    pub witness: PositiveWord,
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `numerator · denominator^-1`
    Right,
    /// `denominator^-1 · numerator`
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: PositiveWord,
    pub denominator: PositiveWord,
    pub orientation: Orientation,
}

impl Fraction {
    pub fn to_signed(&self) -> SignedWord {
        match self.orientation {
            Orientation::Right => self.numerator.to_signed().concat(&self.denominator.inverse()),
            Orientation::Left => SignedWord::fraction(&self.denominator, &self.numerator),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordProblem {
    Equal1,
    NotEqual1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("presentation is not right-triangular")]
    NotRightTriangular,
    #[error("presentation is not left-triangular")]
    NotLeftTriangular,
    #[error("precondition unverified: {0}")]
    PreconditionUnverified(String),
    #[error("budget exceeded in the {phase:?} reversing after {steps} steps")]
    BudgetExceeded { phase: Phase, steps: usize },
    #[error("the {phase:?} reversing does not terminate")]
    NonTerminating { phase: Phase },
    #[error("both sides of the final fraction are non-empty")]
    Incomparable { fraction: Fraction },
}

/// Completed tables for both directions, plus what is known about the
/// hypotheses that make the procedures total.
#[derive(Clone, Debug)]
pub struct DecisionContext {
    presentation: Presentation,
    right: RelationTable,
    left: Option<RelationTable>,
    right_certified: bool,
    left_certified: bool,
}

impl DecisionContext {
    /// Runs the analysis on both sides and records which side is certified.
    pub fn certified(p: &Presentation, cfg: &AnalysisConfig) -> Result<Self, DecisionError> {
        let mut ctx = DecisionContext::forced(p)?;
        ctx.right_certified = analyze(p, cfg).status == Status::RightOType;
        ctx.left_certified = ctx.left.is_some() && analyze(&p.opposite(), cfg).status == Status::RightOType;
        Ok(ctx)
    }

    /// Builds the tables without any analysis. Results are flagged uncertified.
    pub fn forced(p: &Presentation) -> Result<Self, DecisionError> {
        let right = p.detect_right_triangular().ok_or(DecisionError::NotRightTriangular)?.complete();
        let left = p.detect_left_triangular().map(|t| t.complete());
        Ok(DecisionContext { presentation: p.clone(), right, left, right_certified: false, left_certified: false })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_right_certified(&self) -> bool {
        self.right_certified
    }

    pub fn is_otype_certified(&self) -> bool {
        self.right_certified && self.left_certified
    }

    pub fn right_table(&self) -> &RelationTable {
        &self.right
    }

    /// The opposite presentation's table, used for left reversing.
    pub fn left_table(&self) -> Option<&RelationTable> {
        self.left.as_ref()
    }

    /// Left fraction `u'^-1 v'` equal to `w`, from right reversing followed
    /// by left reversing.
    pub fn fraction_normal_form(&self, w: &SignedWord, budget: &Budget) -> Result<Fraction, DecisionError> {
        let left = self.left.as_ref().ok_or(DecisionError::NotLeftTriangular)?;
        let (v, u) = terminated(right_reverse(w, &self.right, budget), Phase::First)?;
        let mid = v.to_signed().concat(&u.inverse());
        let (v2, u2) = terminated(left_reverse(&mid, left, budget), Phase::Second)?;
        Ok(Fraction { numerator: v2, denominator: u2, orientation: Orientation::Left })
    }

    pub fn order_sign(&self, w: &SignedWord, budget: &Budget) -> Result<OrderSign, DecisionError> {
        let f = self.fraction_normal_form(w, budget)?;
        let certified = self.is_otype_certified();
        match (f.numerator.is_empty(), f.denominator.is_empty()) {
            (true, true) => Ok(OrderSign { sign: Sign::Zero, witness: PositiveWord::empty(), certified }),
            (false, true) => Ok(OrderSign { sign: Sign::Positive, witness: f.numerator, certified }),
            (true, false) => Ok(OrderSign { sign: Sign::Negative, witness: f.denominator, certified }),
            (false, false) => Err(DecisionError::Incomparable { fraction: f }),
        }
    }

    /// Right reversing of `w` into `v u^-1`, then of `u^-1 v`.
    pub fn word_problem(&self, w: &SignedWord, budget: &Budget) -> Result<WordProblem, DecisionError> {
        let (v, u) = terminated(right_reverse(w, &self.right, budget), Phase::First)?;
        let (v2, u2) = terminated(right_reverse(&SignedWord::fraction(&u, &v), &self.right, budget), Phase::Second)?;
        Ok(if v2.is_empty() && u2.is_empty() { WordProblem::Equal1 } else { WordProblem::NotEqual1 })
    }

    /// As [`DecisionContext::order_sign`], refusing uncertified presentations.
    pub fn order_sign_checked(&self, w: &SignedWord, budget: &Budget) -> Result<OrderSign, DecisionError> {
        if !self.is_otype_certified() {
            return Err(DecisionError::PreconditionUnverified("both sides must be certified of right-O-type".into()));
        }
        self.order_sign(w, budget)
    }

    /// As [`DecisionContext::word_problem`], refusing uncertified presentations.
    pub fn word_problem_checked(&self, w: &SignedWord, budget: &Budget) -> Result<WordProblem, DecisionError> {
        if !self.right_certified {
            return Err(DecisionError::PreconditionUnverified(
                "the presentation must be certified of right-O-type".into(),
            ));
        }
        self.word_problem(w, budget)
    }
}

/// `(numerator, denominator)` of a terminated run.
fn terminated(out: ReversingOutcome, phase: Phase) -> Result<(PositiveWord, PositiveWord), DecisionError> {
    match out {
        ReversingOutcome::Terminated { numerator, denominator, .. } => Ok((numerator, denominator)),
        ReversingOutcome::BudgetExceeded { steps, .. } => Err(DecisionError::BudgetExceeded { phase, steps }),
        ReversingOutcome::Cycle(_) | ReversingOutcome::Stuck { .. } => Err(DecisionError::NonTerminating { phase }),
    }
}
