//! Certificates attached to verdicts, and their JSON form.

use serde_json::{json, Value};

use crate::reversing::{Cycle, Direction};
use crate::words::{Alphabet, Letter, PositiveWord, SignedWord};

/// How the `v` part of a pattern discard was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VCheck {
    Empty,
    /// `v` splits into pieces `u_k` with `u_k s` a prefix of the relation word.
    Decomposition(Vec<PositiveWord>),
    /// `v^-1 s` reverses to this positive word, which starts with `s`.
    Reversal(PositiveWord),
}

/// Result of a bounded domination check of `g` by `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DominationCheck {
    HoldsUpTo(usize),
    FailsAt(usize),
    UnknownAt(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A completed relation `top = word` whose word ends with `top`.
    TailDiscard { relation_index: usize, top: Letter, word: PositiveWord },
    /// A completed relation `top = word` with `word` starting with `(uv)^r u top`.
    PatternDiscard {
        relation_index: usize,
        top: Letter,
        word: PositiveWord,
        u: PositiveWord,
        v: PositiveWord,
        r: usize,
        v_check: VCheck,
    },
    /// Reversing `start` for `prefix_steps` steps reaches `cycle.recurring`,
    /// which then reproduces itself between flanks.
    CycleWitness { start: SignedWord, prefix_steps: usize, cycle: Cycle },
    /// Two letters in different chains.
    MultiChain { s: Letter, t: Letter },
    /// `w` with `w^-1 g w` reversing to `images[g]` for every generator `g`.
    QuasiCentral { w: PositiveWord, images: Vec<PositiveWord> },
    /// Empirical only; never a proof.
    DominationBounded { delta: PositiveWord, checks: Vec<(Letter, DominationCheck)> },
    /// `g delta^(m-1)` left-divides `delta`, and `delta^m` is quasi-central.
    DominationCertified { delta: PositiveWord, m: usize, g: Letter, quasi_central: Box<Certificate> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::TailDiscard { .. } => "TailDiscard",
            Certificate::PatternDiscard { .. } => "PatternDiscard",
            Certificate::CycleWitness { .. } => "CycleWitness",
            Certificate::MultiChain { .. } => "MultiChain",
            Certificate::QuasiCentral { .. } => "QuasiCentral",
            Certificate::DominationBounded { .. } => "DominationBounded",
            Certificate::DominationCertified { .. } => "DominationCertified",
        }
    }

    /// True for certificates that prove a verdict.
    pub fn is_proof(&self) -> bool {
        !matches!(self, Certificate::DominationBounded { .. })
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let w = |x: &PositiveWord| alphabet.show_positive(x);
        let l = |x: Letter| alphabet.name(x).to_string();
        let data = match self {
            Certificate::TailDiscard { relation_index, top, word } => json!({
                "relation_index": relation_index,
                "relation": format!("{} = {}", l(*top), w(word)),
            }),
            Certificate::PatternDiscard { relation_index, top, word, u, v, r, v_check } => {
                let check = match v_check {
                    VCheck::Empty => json!({"method": "empty"}),
                    VCheck::Decomposition(parts) => {
                        json!({"method": "decomposition", "parts": parts.iter().map(w).collect::<Vec<_>>()})
                    }
                    VCheck::Reversal(res) => json!({"method": "reversal", "result": w(res)}),
                };
                json!({
                    "relation_index": relation_index,
                    "relation": format!("{} = {}", l(*top), w(word)),
                    "u": w(u),
                    "v": w(v),
                    "r": r,
                    "v_check": check,
                })
            }
            Certificate::CycleWitness { start, prefix_steps, cycle } => json!({
                "direction": cycle.direction,
                "start_word": alphabet.show_signed(start),
                "prefix_steps": prefix_steps,
                "recurring_word": alphabet.show_signed(&cycle.recurring),
                "flanks": [w(&cycle.flank_left), w(&cycle.flank_right)],
                "context": [alphabet.show_signed(&cycle.outer_left), alphabet.show_signed(&cycle.outer_right)],
                "period": cycle.period_steps,
            }),
            Certificate::MultiChain { s, t } => json!({"letters": [l(*s), l(*t)]}),
            Certificate::QuasiCentral { w: q, images } => {
                let phi: serde_json::Map<String, Value> = images
                    .iter()
                    .enumerate()
                    .map(|(i, img)| (alphabet.names()[i].clone(), Value::String(w(img))))
                    .collect();
                json!({"w": w(q), "phi": phi})
            }
            Certificate::DominationBounded { delta, checks } => {
                let checks: Vec<Value> = checks
                    .iter()
                    .map(|(g, c)| {
                        let (state, n) = match c {
                            DominationCheck::HoldsUpTo(n) => ("holds", n),
                            DominationCheck::FailsAt(n) => ("fails", n),
                            DominationCheck::UnknownAt(n) => ("unknown", n),
                        };
                        json!({"g": l(*g), "state": state, "n": n})
                    })
                    .collect();
                json!({"delta": w(delta), "checks": checks, "proof": false})
            }
            Certificate::DominationCertified { delta, m, g, quasi_central } => json!({
                "delta": w(delta),
                "m": m,
                "g": l(*g),
                "quasi_central": quasi_central.to_json(alphabet),
            }),
        };
        let mut obj = json!({"kind": self.kind()});
        if let (Value::Object(o), Value::Object(d)) = (&mut obj, data) {
            o.extend(d);
        }
        obj
    }
}

impl Certificate {
    pub(crate) fn cycle(start: SignedWord, cycle: Cycle) -> Certificate {
        Certificate::CycleWitness { start, prefix_steps: cycle.earlier_step, cycle }
    }

    pub fn direction(&self) -> Option<Direction> {
        match self {
            Certificate::CycleWitness { cycle, .. } => Some(cycle.direction),
            _ => None,
        }
    }
}
