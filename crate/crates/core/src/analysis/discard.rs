//! Syntactic discards read off the completed relations.

use crate::analysis::{BudgetsUsed, Certificate, RightForm, VCheck};
use crate::reversing::Budget;
use crate::words::{Letter, PositiveWord, SignedWord};

/// Looks for a completed relation `s = w` with `w` ending in `s`, then for one
/// with `w` starting with `(uv)^r u s` where `v` passes one of the `v` checks.
pub fn discard_syntactic(form: &RightForm, v_budget: &Budget, meter: &mut BudgetsUsed) -> Option<Certificate> {
    let rels = form.structure().completed_relations();
    for (i, rel) in rels.iter().enumerate() {
        let w = rel.word();
        if w.len() > 1 && w.last() == Some(rel.top) {
            return Some(Certificate::TailDiscard { relation_index: i, top: rel.top, word: w });
        }
    }
    for (i, rel) in rels.iter().enumerate() {
        let w = rel.word();
        if let Some(cert) = pattern_in(form, i, rel.top, &w, v_budget, meter) {
            return Some(cert);
        }
    }
    None
}

/// Smallest `r >= 1` with `(uv)^r u s` a prefix of `w`, for `u = w[..ul]`, `v = w[ul..ul+vl]`.
pub(crate) fn pattern_power(w: &[Letter], s: Letter, ul: usize, vl: usize) -> Option<usize> {
    let period = ul + vl;
    let mut r = 1;
    while r * period + ul < w.len() {
        let end = r * period;
        if w[end - period..end] != w[..period] {
            return None;
        }
        if w[end..end + ul] == w[..ul] && w[end + ul] == s {
            return Some(r);
        }
        r += 1;
    }
    None
}

fn pattern_in(
    form: &RightForm,
    index: usize,
    s: Letter,
    word: &PositiveWord,
    v_budget: &Budget,
    meter: &mut BudgetsUsed,
) -> Option<Certificate> {
    let w = word.letters();
    let n = w.len();
    for vl in 0..n {
        for ul in 1..n {
            if 2 * ul + vl + 1 > n {
                break;
            }
            let Some(r) = pattern_power(w, s, ul, vl) else { continue };
            let v = word.slice(ul, ul + vl);
            let Some(v_check) = check_v(form, word, s, &v, v_budget, meter) else { continue };
            return Some(Certificate::PatternDiscard {
                relation_index: index,
                top: s,
                word: word.clone(),
                u: word.slice(0, ul),
                v,
                r,
                v_check,
            });
        }
    }
    None
}

pub(crate) fn check_v(
    form: &RightForm,
    word: &PositiveWord,
    s: Letter,
    v: &PositiveWord,
    budget: &Budget,
    meter: &mut BudgetsUsed,
) -> Option<VCheck> {
    if v.is_empty() {
        return Some(VCheck::Empty);
    }
    if let Some(parts) = decompose(word, s, v) {
        return Some(VCheck::Decomposition(parts));
    }
    let start = v.inverse().concat(&PositiveWord::letter(s).to_signed());
    let out = form.reverse(&start, budget, meter);
    match out.positive_result() {
        Some(res) if res.first() == Some(s) => Some(VCheck::Reversal(res.clone())),
        _ => None,
    }
}

/// Splits `v` into non-empty pieces `u_k` such that `u_k s` is a prefix of `word`.
pub(crate) fn decompose(word: &PositiveWord, s: Letter, v: &PositiveWord) -> Option<Vec<PositiveWord>> {
    let w = word.letters();
    let cuts: Vec<usize> = (1..w.len()).filter(|&j| w[j] == s).collect();
    let v = v.letters();
    let mut from: Vec<Option<usize>> = vec![None; v.len() + 1];
    let mut reached = vec![false; v.len() + 1];
    reached[0] = true;
    for i in 0..v.len() {
        if !reached[i] {
            continue;
        }
        for &j in &cuts {
            if i + j <= v.len() && !reached[i + j] && v[i..i + j] == w[..j] {
                reached[i + j] = true;
                from[i + j] = Some(i);
            }
        }
    }
    if !reached[v.len()] {
        return None;
    }
    let mut parts = Vec::new();
    let mut end = v.len();
    while end > 0 {
        let start = from[end].expect("reached position has a parent");
        parts.push(PositiveWord::new(v[start..end].to_vec()));
        end = start;
    }
    parts.reverse();
    Some(parts)
}

/// The word `s^-1 u s` whose reversing a pattern discard predicts to recur.
pub(crate) fn pattern_probe(s: Letter, u: &PositiveWord) -> SignedWord {
    let s_word = PositiveWord::letter(s);
    SignedWord::fraction(&s_word, &u.concat(&s_word))
}
