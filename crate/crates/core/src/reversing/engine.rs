//! The rewriting loop and the recurrence detector.
//!
//! Every word is split as `N K P`, with `N` the longest negative prefix and
//! `P` the longest positive suffix of the rest. An earlier word `W` recurs
//! inside the current word `X` as `x^-1 W y` exactly when both have the same
//! core `K`, `N_W` is a suffix of `N_X` and `P_W` is a prefix of `P_X`.
//!
//! The leftmost strategy keeps the word as two stacks: the part left of the
//! current junction, which contains no junction, and the rest stored
//! reversed. A step only touches the two stack tops. Polynomial prefix
//! hashes on both stacks give the hash of any segment in constant time, so
//! recurrence detection needs no copy of the word. Candidate matches are
//! confirmed by replaying the run before they are reported.

use std::collections::{HashMap, VecDeque};

use crate::presentation::RelationTable;
use crate::reversing::{Budget, Cycle, Direction, ReversingOutcome, Rule, Strategy, TraceStep};
use crate::words::{Letter, PositiveWord, SignedLetter, SignedWord};

pub(crate) struct StepError {
    pub pair: (Letter, Letter),
}

/// Applies one reversing step at the junction starting at `pos`.
pub(crate) fn apply(word: &mut Vec<SignedLetter>, pos: usize, table: &RelationTable) -> Result<Rule, StepError> {
    let s = word[pos].letter();
    let t = word[pos + 1].letter();
    if s == t {
        word.drain(pos..pos + 2);
        return Ok(Rule::Cancel { letter: s });
    }
    let Some(entry) = table.get(s, t) else {
        return Err(StepError { pair: (s, t) });
    };
    let replacement =
        entry.left.letters().iter().map(|l| l.pos()).chain(entry.right.letters().iter().rev().map(|l| l.neg()));
    word.splice(pos..pos + 2, replacement);
    Ok(Rule::Relation { pair: (s, t), source: entry.source })
}

fn is_junction(word: &[SignedLetter], i: usize) -> bool {
    word[i].is_negative() && word[i + 1].is_positive()
}

pub(crate) fn find_junction(word: &[SignedLetter], strategy: Strategy, from: usize) -> Option<usize> {
    if word.len() < 2 {
        return None;
    }
    match strategy {
        Strategy::Leftmost => (from..word.len() - 1).find(|&i| is_junction(word, i)),
        Strategy::Rightmost => (0..word.len() - 1).rev().find(|&i| is_junction(word, i)),
    }
}

const MODULUS: u64 = (1 << 61) - 1;
const BASE: u64 = 1_000_003;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % MODULUS
}

fn sub(a: u64, b: u64) -> u64 {
    (a + MODULUS - b) % MODULUS
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    r
}

/// Powers of the base and of its inverse, grown on demand.
struct Powers {
    up: Vec<u64>,
    down: Vec<u64>,
    inv: u64,
}

impl Powers {
    fn new() -> Self {
        Powers { up: vec![1], down: vec![1], inv: pow_mod(BASE, MODULUS - 2) }
    }

    fn ensure(&mut self, n: usize) {
        while self.up.len() <= n {
            let u = mul(*self.up.last().expect("seeded"), BASE);
            let d = mul(*self.down.last().expect("seeded"), self.inv);
            self.up.push(u);
            self.down.push(d);
        }
    }
}

fn code(s: SignedLetter) -> u64 {
    s.raw() as u64 + 1
}

/// Hashes of a word in word order: `sum code(w_i) B^i` over a segment, with
/// positions counted from the segment start.
struct Stacks {
    left: Vec<SignedLetter>,
    left_hash: Vec<u64>,
    left_positive: usize,
    /// The rest of the word, last letter at index 0.
    right: Vec<SignedLetter>,
    right_hash: Vec<u64>,
    right_positive_run: usize,
    /// Lowest stack heights since the last `reset_low`.
    left_low: usize,
    right_low: usize,
}

impl Stacks {
    fn new(word: &[SignedLetter], pw: &mut Powers) -> Self {
        let mut st = Stacks {
            left: Vec::with_capacity(word.len()),
            left_hash: vec![0],
            left_positive: 0,
            right: Vec::with_capacity(word.len()),
            right_hash: vec![0],
            right_positive_run: 0,
            left_low: 0,
            right_low: 0,
        };
        for &s in word.iter().rev() {
            st.push_right(s, pw);
        }
        st
    }

    fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    fn reset_low(&mut self) {
        self.left_low = self.left.len();
        self.right_low = self.right.len();
    }

    fn push_left(&mut self, s: SignedLetter, pw: &mut Powers) {
        let k = self.left.len();
        pw.ensure(k);
        let h = add(*self.left_hash.last().expect("seeded"), mul(code(s), pw.up[k]));
        self.left.push(s);
        self.left_hash.push(h);
        if s.is_positive() {
            self.left_positive += 1;
        }
    }

    fn pop_left(&mut self) -> SignedLetter {
        let s = self.left.pop().expect("left stack non-empty");
        self.left_hash.pop();
        self.left_low = self.left_low.min(self.left.len());
        if s.is_positive() {
            self.left_positive -= 1;
        }
        s
    }

    fn push_right(&mut self, s: SignedLetter, pw: &mut Powers) {
        let k = self.right.len();
        pw.ensure(k);
        let h = add(*self.right_hash.last().expect("seeded"), mul(code(s), pw.down[k]));
        if self.right_positive_run == k && s.is_positive() {
            self.right_positive_run += 1;
        }
        self.right.push(s);
        self.right_hash.push(h);
    }

    fn pop_right(&mut self) -> SignedLetter {
        let s = self.right.pop().expect("right stack non-empty");
        self.right_hash.pop();
        self.right_low = self.right_low.min(self.right.len());
        if self.right_positive_run > self.right.len() {
            self.right_positive_run = self.right.len();
        }
        s
    }

    /// Moves letters to the left stack until a junction sits at the boundary.
    fn advance(&mut self, pw: &mut Powers) -> bool {
        while let Some(&next) = self.right.last() {
            if next.is_positive() && self.left.last().is_some_and(|l| l.is_negative()) {
                return true;
            }
            let s = self.pop_right();
            self.push_left(s, pw);
        }
        false
    }

    fn word(&self) -> Vec<SignedLetter> {
        let mut w = self.left.clone();
        w.extend(self.right.iter().rev());
        w
    }

    /// Hash of `left[a..b]`.
    fn left_segment(&self, a: usize, b: usize, pw: &Powers) -> u64 {
        mul(sub(self.left_hash[b], self.left_hash[a]), pw.down[a])
    }

    /// Hash of the word-order segment stored at `right[lo..hi]`.
    fn right_segment(&self, lo: usize, hi: usize, pw: &Powers) -> u64 {
        if lo == hi {
            return 0;
        }
        mul(sub(self.right_hash[hi], self.right_hash[lo]), pw.up[hi - 1])
    }

    /// `(neg, pos, core hash, N hash, P hash)` at a junction.
    fn shape(&self, pw: &Powers) -> Shape {
        let neg = if self.left_positive == 0 { self.left.len() } else { 0 };
        let pos = self.right_positive_run;
        let l_part = self.left_segment(neg, self.left.len(), pw);
        let r_part = self.right_segment(pos, self.right.len(), pw);
        let core = add(l_part, mul(r_part, pw.up[self.left.len() - neg]));
        Shape {
            neg,
            pos,
            core_len: self.len() - neg - pos,
            core,
            n_hash: self.left_segment(0, neg, pw),
            p_hash: self.right_segment(0, pos, pw),
        }
    }
}

#[derive(Clone, Copy)]
struct Shape {
    neg: usize,
    pos: usize,
    core_len: usize,
    core: u64,
    n_hash: u64,
    p_hash: u64,
}

/// Suffix minima of the stack low-water marks, one entry per step.
#[derive(Default)]
struct Lows {
    left: Vec<(usize, usize)>,
    right: Vec<(usize, usize)>,
}

impl Lows {
    fn record(&mut self, step: usize, left: usize, right: usize) {
        for (stack, v) in [(&mut self.left, left), (&mut self.right, right)] {
            while stack.last().is_some_and(|&(_, w)| w >= v) {
                stack.pop();
            }
            stack.push((step, v));
        }
    }

    /// Lowest heights over the steps taken from step `m` on.
    fn since(&self, m: usize) -> (usize, usize) {
        let q = |stack: &[(usize, usize)]| {
            let i = stack.partition_point(|&(t, _)| t < m);
            stack[i].1
        };
        (q(&self.left), q(&self.right))
    }
}

/// A recurrence located by hashes: the word at `step` is `A u B` and the
/// current word is `A x^-1 u y B`, where `A` and `B` are untouched letters.
struct Match {
    step: usize,
    outer_left: usize,
    outer_right: usize,
    flank_left: usize,
    flank_right: usize,
}

/// Exact comparison against every earlier word for the first `window`
/// steps, then against a single checkpoint re-placed at doubling steps.
struct History {
    window: usize,
    shapes: Vec<(usize, Shape)>,
    by_core: HashMap<(u64, usize), Vec<usize>>,
    checkpoint: Option<(usize, Shape)>,
    next_checkpoint: usize,
}

impl History {
    fn new(window: usize) -> Self {
        History { window, shapes: Vec::new(), by_core: HashMap::new(), checkpoint: None, next_checkpoint: window }
    }

    fn push(&mut self, step: usize, shape: Shape) {
        if self.window == 0 {
            return;
        }
        if step < self.window {
            self.by_core.entry((shape.core, shape.core_len)).or_default().push(self.shapes.len());
            self.shapes.push((step, shape));
            return;
        }
        if step >= self.next_checkpoint {
            self.shapes.clear();
            self.by_core.clear();
            self.checkpoint = Some((step, shape));
            self.next_checkpoint = step * 2;
        }
    }

    fn matches(&self, cur: &Shape, st: &Stacks, lows: &Lows, pw: &Powers) -> Vec<Match> {
        let fits = |step: usize, w: &Shape| -> Option<Match> {
            if w.core != cur.core || w.core_len != cur.core_len || w.neg > cur.neg || w.pos > cur.pos {
                return None;
            }
            if (w.neg, w.pos) == (cur.neg, cur.pos) {
                return None;
            }
            let (low_l, low_r) = lows.since(step);
            let a = low_l.min(w.neg);
            let b = low_r.min(w.pos);
            let dn = cur.neg - w.neg;
            let dp = cur.pos - w.pos;
            let n_rest = mul(sub(w.n_hash, st.left_hash[a]), pw.down[a]);
            if st.left_segment(a + dn, cur.neg, pw) != n_rest {
                return None;
            }
            let p_head = sub(w.p_hash, mul(st.right_segment(0, b, pw), pw.up[w.pos - b]));
            if st.right_segment(cur.pos - (w.pos - b), cur.pos, pw) != p_head {
                return None;
            }
            Some(Match { step, outer_left: a, outer_right: b, flank_left: dn, flank_right: dp })
        };
        let mut out = Vec::new();
        if let Some(list) = self.by_core.get(&(cur.core, cur.core_len)) {
            out.extend(list.iter().filter_map(|&i| fits(self.shapes[i].0, &self.shapes[i].1)));
        }
        if let Some((step, w)) = &self.checkpoint {
            out.extend(fits(*step, w));
        }
        out
    }
}

/// The word after `n` leftmost steps from `start`.
fn replay(start: &[SignedLetter], table: &RelationTable, n: usize) -> Option<Vec<SignedLetter>> {
    let mut w = start.to_vec();
    let mut hint = 0;
    for _ in 0..n {
        let pos = find_junction(&w, Strategy::Leftmost, hint)?;
        apply(&mut w, pos, table).ok()?;
        hint = pos.saturating_sub(1);
    }
    Some(w)
}

fn terminated(word: Vec<SignedLetter>, steps: usize) -> ReversingOutcome {
    let (numerator, denominator) =
        SignedWord::new(word).split_positive_negative().expect("no junction left means the word is positive-negative");
    ReversingOutcome::Terminated { numerator, denominator, steps }
}

fn leftmost(
    start: &SignedWord,
    table: &RelationTable,
    budget: &Budget,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> ReversingOutcome {
    let mut pw = Powers::new();
    let mut st = Stacks::new(start.entries(), &mut pw);
    let mut history = History::new(budget.history_window);
    let mut lows = Lows::default();
    let mut steps = 0;
    if !st.advance(&mut pw) {
        return terminated(st.word(), 0);
    }
    pw.ensure(st.len() + 1);
    history.push(0, st.shape(&pw));
    loop {
        if steps >= budget.max_steps {
            return ReversingOutcome::BudgetExceeded { steps, length: st.len(), last_word: SignedWord::new(st.word()) };
        }
        let position = st.left.len() - 1;
        st.reset_low();
        let s = st.pop_left();
        let t = st.pop_right();
        let rule = if s.letter() == t.letter() {
            Rule::Cancel { letter: s.letter() }
        } else if let Some(entry) = table.get(s.letter(), t.letter()) {
            for l in entry.right.letters() {
                st.push_right(l.neg(), &mut pw);
            }
            for l in entry.left.letters().iter().rev() {
                st.push_right(l.pos(), &mut pw);
            }
            Rule::Relation { pair: (s.letter(), t.letter()), source: entry.source }
        } else {
            st.push_right(t, &mut pw);
            st.push_left(s, &mut pw);
            return ReversingOutcome::Stuck {
                position,
                pair: (s.letter(), t.letter()),
                steps,
                word: SignedWord::new(st.word()),
            };
        };
        steps += 1;
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(TraceStep { step: steps, position, rule, word: SignedWord::new(st.word()) });
        }
        if st.len() > budget.max_length {
            return ReversingOutcome::BudgetExceeded { steps, length: st.len(), last_word: SignedWord::new(st.word()) };
        }
        if !st.advance(&mut pw) {
            return terminated(st.word(), steps);
        }
        if budget.history_window > 0 {
            lows.record(steps - 1, st.left_low, st.right_low);
            pw.ensure(st.len() + 1);
            let shape = st.shape(&pw);
            for m in history.matches(&shape, &st, &lows, &pw) {
                if let Some(cycle) = confirm(start, table, &st.word(), &m, steps) {
                    return ReversingOutcome::Cycle(cycle);
                }
            }
            history.push(steps, shape);
        }
    }
}

/// Rebuilds a hashed match from actual words and checks that the middle
/// factor recurs when reversed on its own.
fn confirm(start: &SignedWord, table: &RelationTable, word: &[SignedLetter], m: &Match, steps: usize) -> Option<Cycle> {
    let earlier = replay(start.entries(), table, m.step)?;
    let (a, b) = (m.outer_left, m.outer_right);
    let recurring = earlier[a..earlier.len() - b].to_vec();
    let inner = &word[a..word.len() - b];
    let flank_left: PositiveWord = inner[..m.flank_left].iter().rev().map(|s| s.letter()).collect();
    let flank_right: PositiveWord = inner[inner.len() - m.flank_right..].iter().map(|s| s.letter()).collect();
    let cycle = Cycle {
        direction: Direction::Right,
        earlier_step: m.step,
        detected_step: steps,
        period_steps: steps - m.step,
        recurring: SignedWord::new(recurring.clone()),
        flank_left,
        flank_right,
        outer_left: SignedWord::new(earlier[..a].to_vec()),
        outer_right: SignedWord::new(earlier[earlier.len() - b..].to_vec()),
    };
    let expanded = cycle.expanded();
    let whole = cycle.outer_left.concat(&expanded).concat(&cycle.outer_right);
    if whole.entries() != word || expanded.entries() != inner {
        return None;
    }
    if (a, b) != (0, 0) && replay(&recurring, table, cycle.period_steps)?.as_slice() != inner {
        return None;
    }
    Some(cycle)
}

/// Plain vector engine, used for the rightmost strategy.
fn generic(
    start: &SignedWord,
    table: &RelationTable,
    budget: &Budget,
    strategy: Strategy,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> ReversingOutcome {
    let mut word: Vec<SignedLetter> = start.entries().to_vec();
    let mut seen: HashMap<Vec<SignedLetter>, usize> = HashMap::new();
    let mut order: VecDeque<Vec<SignedLetter>> = VecDeque::new();
    let mut steps = 0;
    loop {
        let Some(pos) = find_junction(&word, strategy, 0) else {
            return terminated(word, steps);
        };
        if budget.history_window > 0 {
            if let Some(c) = recurrence(&word, &seen, steps) {
                return ReversingOutcome::Cycle(c);
            }
            seen.insert(word.clone(), steps);
            order.push_back(word.clone());
            if order.len() > budget.history_window {
                if let Some(old) = order.pop_front() {
                    seen.remove(&old);
                }
            }
        }
        if steps >= budget.max_steps {
            return ReversingOutcome::BudgetExceeded { steps, length: word.len(), last_word: SignedWord::new(word) };
        }
        let rule = match apply(&mut word, pos, table) {
            Ok(rule) => rule,
            Err(e) => {
                return ReversingOutcome::Stuck { position: pos, pair: e.pair, steps, word: SignedWord::new(word) }
            }
        };
        steps += 1;
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceStep { step: steps, position: pos, rule, word: SignedWord::new(word.clone()) });
        }
        if word.len() > budget.max_length {
            return ReversingOutcome::BudgetExceeded { steps, length: word.len(), last_word: SignedWord::new(word) };
        }
    }
}

fn recurrence(word: &[SignedLetter], seen: &HashMap<Vec<SignedLetter>, usize>, steps: usize) -> Option<Cycle> {
    let neg = word.iter().take_while(|s| s.is_negative()).count();
    let pos = word[neg..].iter().rev().take_while(|s| s.is_positive()).count();
    let mut best: Option<Cycle> = None;
    for x in 0..=neg {
        for y in 0..=pos {
            if x == 0 && y == 0 {
                continue;
            }
            let inner = &word[x..word.len() - y];
            if let Some(&earlier) = seen.get(inner) {
                if best.as_ref().is_none_or(|b| earlier < b.earlier_step) {
                    best = Some(Cycle {
                        direction: Direction::Right,
                        earlier_step: earlier,
                        detected_step: steps,
                        period_steps: steps - earlier,
                        recurring: SignedWord::new(inner.to_vec()),
                        flank_left: word[..x].iter().rev().map(|s| s.letter()).collect(),
                        flank_right: word[word.len() - y..].iter().map(|s| s.letter()).collect(),
                        outer_left: SignedWord::empty(),
                        outer_right: SignedWord::empty(),
                    });
                }
            }
        }
    }
    best
}

pub(crate) fn run(
    start: &SignedWord,
    table: &RelationTable,
    budget: &Budget,
    strategy: Strategy,
    trace: Option<&mut Vec<TraceStep>>,
) -> ReversingOutcome {
    match strategy {
        Strategy::Leftmost => leftmost(start, table, budget, trace),
        Strategy::Rightmost => generic(start, table, budget, strategy, trace),
    }
}
