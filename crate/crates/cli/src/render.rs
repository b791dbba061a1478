//! Plain-text rendering of reversing traces.

use subrev::reversing::{Direction, ReversingTrace};
use subrev::{Alphabet, ReversingOutcome, SignedWord};

fn piece(alphabet: &Alphabet, w: &[subrev::SignedLetter]) -> String {
    if w.is_empty() {
        String::new()
    } else {
        alphabet.show_signed(&SignedWord::new(w.to_vec()))
    }
}

/// `w` with the two letters at `position` in brackets.
pub fn bracketed(alphabet: &Alphabet, w: &SignedWord, position: usize) -> String {
    let e = w.entries();
    let end = (position + 2).min(e.len());
    let sep = if alphabet.is_compact() { "" } else { " " };
    let parts = [
        piece(alphabet, &e[..position.min(e.len())]),
        format!("[{}]", piece(alphabet, &e[position.min(e.len())..end])),
        piece(alphabet, &e[end..]),
    ];
    parts.into_iter().filter(|p| !p.is_empty()).collect::<Vec<_>>().join(sep)
}

/// One header line, then one line per step showing the word before the step
/// with its reversed subword bracketed and the word after it. When
/// `outcome` is given a closing line describes how the run ended.
pub fn render_trace(trace: &ReversingTrace, alphabet: &Alphabet, outcome: Option<&ReversingOutcome>) -> String {
    let dir = match trace.direction {
        Direction::Right => "right",
        Direction::Left => "left",
    };
    let mut out = format!("{dir} reversing of {}\n", alphabet.show_signed(&trace.initial));
    let mut before = &trace.initial;
    for s in &trace.steps {
        out.push_str(&format!(
            "{:>5}  {}  ->  {}\n",
            s.step,
            bracketed(alphabet, before, s.position),
            alphabet.show_signed(&s.word)
        ));
        before = &s.word;
    }
    if let Some(o) = outcome {
        out.push_str(&describe(o, alphabet, trace.direction));
        out.push('\n');
    }
    out
}

/// One-line summary of an outcome.
pub fn describe(outcome: &ReversingOutcome, alphabet: &Alphabet, direction: Direction) -> String {
    let show = |w: &subrev::PositiveWord| alphabet.show_positive(w);
    match outcome {
        ReversingOutcome::Terminated { numerator, denominator, steps } => {
            let form = match direction {
                Direction::Right => format!("({}) ({})^-1", show(numerator), show(denominator)),
                Direction::Left => format!("({})^-1 ({})", show(denominator), show(numerator)),
            };
            format!("terminated after {steps} steps: {form}")
        }
        ReversingOutcome::Stuck { position, pair, steps, word } => format!(
            "stuck after {steps} steps at {}: no relation for {}^-1 {}",
            bracketed(alphabet, word, *position),
            alphabet.name(pair.0),
            alphabet.name(pair.1)
        ),
        ReversingOutcome::Cycle(c) => format!(
            "cycle: {} returns after {} steps with flanks ({}, {}), first seen at step {}",
            alphabet.show_signed(&c.recurring),
            c.period_steps,
            show(&c.flank_left),
            show(&c.flank_right),
            c.earlier_step
        ),
        ReversingOutcome::BudgetExceeded { steps, length, .. } => {
            format!("budget exceeded after {steps} steps (word length {length})")
        }
    }
}
