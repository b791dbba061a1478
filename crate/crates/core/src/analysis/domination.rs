//! Domination of a generator `g` by an element `delta`: `g delta^n`
//! left-divides `delta^(n+1)` for every `n`.

use thiserror::Error;

use crate::analysis::{verify_quasi_central, BudgetsUsed, Certificate, DominationCheck, RightForm};
use crate::reversing::{Budget, ReversingOutcome};
use crate::words::{Letter, PositiveWord, SignedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominationMode {
    /// Check every `n` from 0 to the bound.
    Every,
    /// Check `g delta^(km+m-1) <= delta^(km+1)` for `km+m-1` up to the bound.
    Progression { m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("delta^m is not certified quasi-central")]
    QuasiCentralMissing,
    #[error("g delta^(m-1) does not left-divide delta")]
    NotDominated,
    #[error("m must be at least 1")]
    ZeroPower,
}

enum Cmp {
    Divides,
    Fails,
    Unknown,
}

fn left_divides(form: &RightForm, x: &PositiveWord, y: &PositiveWord, budget: &Budget, meter: &mut BudgetsUsed) -> Cmp {
    match form.reverse(&SignedWord::fraction(x, y), budget, meter) {
        ReversingOutcome::Terminated { denominator, .. } if denominator.is_empty() => Cmp::Divides,
        ReversingOutcome::Terminated { .. } | ReversingOutcome::Cycle(_) | ReversingOutcome::Stuck { .. } => Cmp::Fails,
        ReversingOutcome::BudgetExceeded { .. } => Cmp::Unknown,
    }
}

/// Bounded, empirical check. Never a proof.
pub fn check_domination_bounded(
    form: &RightForm,
    delta: &PositiveWord,
    g: Letter,
    n_max: usize,
    mode: DominationMode,
    budget: &Budget,
    meter: &mut BudgetsUsed,
) -> DominationCheck {
    let gw = PositiveWord::letter(g);
    let pairs: Vec<(usize, usize)> = match mode {
        DominationMode::Every => (0..=n_max).map(|n| (n, n + 1)).collect(),
        DominationMode::Progression { m } => {
            let m = m.max(1);
            (0..).map(|k| (k * m + m - 1, k * m + 1)).take_while(|&(n, _)| n <= n_max).collect()
        }
    };
    for (n, e) in pairs {
        let lhs = gw.concat(&delta.pow(n));
        match left_divides(form, &lhs, &delta.pow(e), budget, meter) {
            Cmp::Divides => {}
            Cmp::Fails => return DominationCheck::FailsAt(n),
            Cmp::Unknown => return DominationCheck::UnknownAt(n),
        }
    }
    DominationCheck::HoldsUpTo(n_max)
}

/// Proof-grade domination: `delta^m` quasi-central and `g delta^(m-1) <= delta`.
pub fn verify_domination_certified(
    form: &RightForm,
    delta: &PositiveWord,
    m: usize,
    g: Letter,
    budget: &Budget,
    meter: &mut BudgetsUsed,
) -> Result<Certificate, DominationError> {
    if m == 0 {
        return Err(DominationError::ZeroPower);
    }
    let qc =
        verify_quasi_central(form, &delta.pow(m), budget, meter).map_err(|_| DominationError::QuasiCentralMissing)?;
    let lhs = PositiveWord::letter(g).concat(&delta.pow(m - 1));
    match left_divides(form, &lhs, delta, budget, meter) {
        Cmp::Divides => {
            Ok(Certificate::DominationCertified { delta: delta.clone(), m, g, quasi_central: Box::new(qc) })
        }
        _ => Err(DominationError::NotDominated),
    }
}
