//! Left divisibility and common right multiples read off `u^-1 v`.

use thiserror::Error;

use crate::presentation::RelationTable;
use crate::reversing::{right_reverse, Budget, ReversingOutcome};
use crate::words::{PositiveWord, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisibilityError {
    #[error("reversing ended with two non-empty sides; the table is not triangular")]
    TableNotTriangular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisibility {
    Equal,
    /// `v = u · quotient`
    UDividesV {
        quotient: PositiveWord,
    },
    /// `u = v · quotient`
    VDividesU {
        quotient: PositiveWord,
    },
    /// Reversing is stuck or recurs, so there is no common right multiple.
    NoCommonMultiple {
        evidence: ReversingOutcome,
    },
    Unknown {
        evidence: ReversingOutcome,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonMultiple {
    /// `u · u_ext = v · v_ext`
    Found {
        u_ext: PositiveWord,
        v_ext: PositiveWord,
    },
    None {
        evidence: ReversingOutcome,
    },
    Unknown {
        evidence: ReversingOutcome,
    },
}

/// Compares `u` and `v` for left divisibility by reversing `u^-1 v`.
pub fn compare_divisibility(
    u: &PositiveWord,
    v: &PositiveWord,
    table: &RelationTable,
    budget: &Budget,
) -> Result<Divisibility, DivisibilityError> {
    let outcome = right_reverse(&SignedWord::fraction(u, v), table, budget);
    Ok(match outcome {
        ReversingOutcome::Terminated { numerator, denominator, .. } => {
            match (numerator.is_empty(), denominator.is_empty()) {
                (true, true) => Divisibility::Equal,
                (false, true) => Divisibility::UDividesV { quotient: numerator },
                (true, false) => Divisibility::VDividesU { quotient: denominator },
                (false, false) => return Err(DivisibilityError::TableNotTriangular),
            }
        }
        o @ (ReversingOutcome::Stuck { .. } | ReversingOutcome::Cycle(_)) => {
            Divisibility::NoCommonMultiple { evidence: o }
        }
        o @ ReversingOutcome::BudgetExceeded { .. } => Divisibility::Unknown { evidence: o },
    })
}

/// Works for any complete table, triangular or not.
pub fn common_right_multiple(
    u: &PositiveWord,
    v: &PositiveWord,
    table: &RelationTable,
    budget: &Budget,
) -> CommonMultiple {
    match right_reverse(&SignedWord::fraction(u, v), table, budget) {
        ReversingOutcome::Terminated { numerator, denominator, .. } => {
            CommonMultiple::Found { u_ext: numerator, v_ext: denominator }
        }
        o @ (ReversingOutcome::Stuck { .. } | ReversingOutcome::Cycle(_)) => CommonMultiple::None { evidence: o },
        o @ ReversingOutcome::BudgetExceeded { .. } => CommonMultiple::Unknown { evidence: o },
    }
}
