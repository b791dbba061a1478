//! Quasi-central elements: `w` with `w` left-dividing `g w` for every generator `g`.

use std::collections::HashSet;

use crate::analysis::{AnalysisConfig, BudgetsUsed, Certificate, RightForm};
use crate::reversing::{Budget, ReversingOutcome};
use crate::words::{Letter, PositiveWord, SignedWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QcFailure {
    Empty,
    NotSingleChain,
    /// The top generator does not left-divide `w`.
    NotAboveTop,
    /// `w^-1 g w` reverses to a word that is not positive.
    NotPositive {
        generator: Letter,
    },
    /// A reversing run recurs, which refutes the ordering altogether.
    Obstruction(Box<Certificate>),
    Budget {
        generator: Option<Letter>,
    },
}

/// Checks that the top letter left-divides `w` and that every `w^-1 g w`
/// reverses to a positive word, whose value is then `phi(g)`.
pub fn verify_quasi_central(
    form: &RightForm,
    w: &PositiveWord,
    budget: &Budget,
    meter: &mut BudgetsUsed,
) -> Result<Certificate, QcFailure> {
    if w.is_empty() {
        return Err(QcFailure::Empty);
    }
    let top = form.structure().top().ok_or(QcFailure::NotSingleChain)?;
    if w.first() != Some(top) {
        let start = SignedWord::fraction(&PositiveWord::letter(top), w);
        match form.reverse(&start, budget, meter) {
            ReversingOutcome::Terminated { denominator, .. } if denominator.is_empty() => {}
            ReversingOutcome::Terminated { .. } => return Err(QcFailure::NotAboveTop),
            ReversingOutcome::Cycle(c) => return Err(QcFailure::Obstruction(Box::new(Certificate::cycle(start, c)))),
            _ => return Err(QcFailure::Budget { generator: None }),
        }
    }
    let power_of_top = w.letters().iter().all(|&l| l == top);
    let mut images = Vec::with_capacity(form.alphabet().len());
    for g in form.alphabet().letters() {
        if power_of_top && g == top {
            images.push(PositiveWord::letter(top));
            continue;
        }
        let start = w.inverse().concat(&PositiveWord::letter(g).to_signed()).concat(&w.to_signed());
        match form.reverse(&start, budget, meter) {
            ReversingOutcome::Terminated { numerator, denominator, .. } if denominator.is_empty() => {
                images.push(numerator)
            }
            ReversingOutcome::Terminated { .. } => return Err(QcFailure::NotPositive { generator: g }),
            ReversingOutcome::Cycle(c) => return Err(QcFailure::Obstruction(Box::new(Certificate::cycle(start, c)))),
            _ => return Err(QcFailure::Budget { generator: Some(g) }),
        }
    }
    Ok(Certificate::QuasiCentral { w: w.clone(), images })
}

fn is_primitive(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| (d..n).any(|k| w[k] != w[k - d]))
}

/// Candidates in the order they are tried: powers of the top letter, powers
/// of the ceiling period and its rotations, then powers of short primitive
/// words by increasing length.
pub fn qc_candidates(form: &RightForm, period: Option<&PositiveWord>, cfg: &AnalysisConfig) -> Vec<PositiveWord> {
    let Some(top) = form.structure().top() else { return Vec::new() };
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut add = |w: PositiveWord, out: &mut Vec<PositiveWord>| {
        if !w.is_empty() && w.len() <= cfg.qc_max_word_len && seen.insert(w.clone()) {
            out.push(w);
        }
    };
    let a = PositiveWord::letter(top);
    for k in 1..=cfg.qc_max_power {
        add(a.pow(k), &mut out);
    }
    if let Some(p) = period {
        for j in 1..=cfg.period_max_power {
            add(p.pow(j), &mut out);
        }
        for r in 1..p.len() {
            let q = p.rotate(r);
            for j in 1..=cfg.period_max_power {
                add(q.pow(j), &mut out);
            }
        }
    }
    let letters: Vec<Letter> = form.alphabet().letters().collect();
    let mut extra = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..cfg.qc_primitive_len {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |&l| [w.as_slice(), &[l]].concat())).collect();
        if layer.len() > cfg.qc_layer_cap {
            break;
        }
        for w in &layer {
            if w.len() >= 2 && is_primitive(w) {
                let base = PositiveWord::new(w.clone());
                for j in 1..=cfg.period_max_power {
                    extra.push(base.pow(j));
                }
            }
        }
    }
    extra.sort_by_key(|w| w.len());
    for w in extra {
        add(w, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;
    use crate::words::Alphabet;

    fn form(rel: &str) -> RightForm {
        RightForm::new(&Presentation::from_strs(&["a", "b"], &[rel]).unwrap()).unwrap()
    }

    #[test]
    fn powers_of_top() {
        let f = form("a = baab");
        let ab = Alphabet::standard(2);
        let w = |s: &str| ab.parse_positive(s).unwrap();
        let b = Budget::default();
        let mut m = BudgetsUsed::default();
        match verify_quasi_central(&f, &w("aaa"), &b, &mut m) {
            Ok(Certificate::QuasiCentral { images, .. }) => {
                assert_eq!(ab.show_positive(&images[0]), "a");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(verify_quasi_central(&f, &w("b"), &b, &mut m), Err(QcFailure::NotAboveTop));
        assert!(matches!(verify_quasi_central(&f, &w("a"), &b, &mut m), Err(QcFailure::NotPositive { .. })));
    }

    #[test]
    fn primitive_words() {
        assert!(is_primitive(&[Letter::new(0), Letter::new(1)]));
        assert!(!is_primitive(&[Letter::new(0), Letter::new(1), Letter::new(0), Letter::new(1)]));
    }

    #[test]
    fn candidate_order_starts_with_top_powers() {
        let f = form("a = bab");
        let c = qc_candidates(&f, None, &AnalysisConfig::default());
        assert_eq!(c[0].len(), 1);
        assert_eq!(c[11].len(), 12);
        assert!(c.len() > 12);
    }
}
