//! Reference answers computed without subword reversing.

use std::collections::{HashMap, HashSet, VecDeque};

use subrev::{Letter, PositiveWord, Presentation, SignedWord};

fn rules(p: &Presentation) -> Vec<(Vec<Letter>, Vec<Letter>)> {
    p.relations()
        .iter()
        .flat_map(|r| {
            let (l, h) = (r.lhs.letters().to_vec(), r.rhs.letters().to_vec());
            [(l.clone(), h.clone()), (h, l)]
        })
        .collect()
}

/// Words obtained from `w` by one relation application.
fn neighbours(w: &[Letter], rules: &[(Vec<Letter>, Vec<Letter>)], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for (from, to) in rules {
        if w.len() < from.len() || w.len() - from.len() + to.len() > max_len {
            continue;
        }
        for i in 0..=w.len() - from.len() {
            if w[i..i + from.len()] == from[..] {
                let mut x = w[..i].to_vec();
                x.extend_from_slice(to);
                x.extend_from_slice(&w[i + from.len()..]);
                out.push(x);
            }
        }
    }
    out
}

/// Congruence classes of all words of length at most `max_len`, merged
/// along single relation applications that stay within the bound.
pub struct Closure {
    index: HashMap<Vec<Letter>, usize>,
    parent: Vec<usize>,
}

impl Closure {
    pub fn new(p: &Presentation, max_len: usize) -> Self {
        let n = p.alphabet().len() as u16;
        let mut words: Vec<Vec<Letter>> = vec![vec![]];
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..n).map(move |l| {
                        let mut x = w.clone();
                        x.push(Letter::new(l));
                        x
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        let index: HashMap<Vec<Letter>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut c = Closure { parent: (0..words.len()).collect(), index };
        let rs = rules(p);
        for (i, w) in words.iter().enumerate() {
            for x in neighbours(w, &rs, max_len) {
                let j = c.index[&x];
                c.union(i, j);
            }
        }
        c
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    /// Class representative of `w`, which must be within the bound.
    pub fn class(&mut self, w: &PositiveWord) -> usize {
        let i = self.index[w.letters()];
        self.find(i)
    }

    /// Representatives for every word, in the enumeration order.
    pub fn classes(&mut self) -> Vec<(PositiveWord, usize)> {
        let mut ws: Vec<(Vec<Letter>, usize)> = self.index.iter().map(|(w, &i)| (w.clone(), i)).collect();
        ws.sort_by_key(|(_, i)| *i);
        ws.into_iter().map(|(w, i)| (PositiveWord::new(w), self.find(i))).collect()
    }
}

/// Searches for a chain of relation applications from `u` to `v` through
/// words no longer than the longer of the two plus `slack`.
pub fn equal_bfs(p: &Presentation, u: &PositiveWord, v: &PositiveWord, slack: usize, cap: usize) -> bool {
    let rs = rules(p);
    let max_len = u.len().max(v.len()) + slack;
    let target = v.letters().to_vec();
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(u.letters().to_vec());
    queue.push_back(u.letters().to_vec());
    while let Some(w) = queue.pop_front() {
        if w == target {
            return true;
        }
        if seen.len() > cap {
            return false;
        }
        for x in neighbours(&w, &rs, max_len) {
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    false
}

/// Faithful action of the Klein bottle group `<a, b | a = bab>` on the
/// plane: `a(x, y) = (-x, y + 1)`, `b(x, y) = (x + 1, y)`.
/// Elements are `(s, tx, ty)` acting by `(x, y) -> (s x + tx, y + ty)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KleinElement {
    s: i64,
    tx: i64,
    ty: i64,
}

impl KleinElement {
    pub const ONE: KleinElement = KleinElement { s: 1, tx: 0, ty: 0 };

    /// `self` applied after `other`.
    fn after(self, other: KleinElement) -> KleinElement {
        KleinElement { s: self.s * other.s, tx: self.s * other.tx + self.tx, ty: self.ty + other.ty }
    }

    fn inverse(self) -> KleinElement {
        KleinElement { s: self.s, tx: -self.s * self.tx, ty: -self.ty }
    }

    /// Image of a word; letter 0 is `a`, letter 1 is `b`.
    pub fn of(w: &SignedWord) -> KleinElement {
        w.entries().iter().fold(KleinElement::ONE, |acc, e| {
            let g = match e.letter().index() {
                0 => KleinElement { s: -1, tx: 0, ty: 1 },
                _ => KleinElement { s: 1, tx: 1, ty: 0 },
            };
            let g = if e.is_positive() { g } else { g.inverse() };
            acc.after(g)
        })
    }
}
