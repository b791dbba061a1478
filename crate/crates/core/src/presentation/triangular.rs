//! Detection of right-triangular structure.
//!
//! A relation is read as `N(s) = s C(s)`: one side is the single letter
//! `N(s)` and the other side starts with `s`. `N` must be injective, without
//! fixpoints and without cycles. The letters then split into chains
//! `s, N(s), N^2(s), ...`, listed here from the top (the letter outside the
//! domain of `N`) downwards.

use crate::presentation::table::{CompletedRelation, RelationTable};
use crate::presentation::Presentation;
use crate::words::{Letter, PositiveWord};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug)]
pub struct TriangularStructure {
    side: Side,
    next: Vec<Option<Letter>>,
    complement: Vec<Option<PositiveWord>>,
    relation_index: Vec<Option<usize>>,
    chains: Vec<Vec<Letter>>,
}

impl TriangularStructure {
    /// `p` is the presentation read in right form; for [`Side::Left`] the
    /// caller passes the opposite presentation.
    pub(crate) fn detect(p: &Presentation, side: Side) -> Option<TriangularStructure> {
        let n = p.alphabet().len();
        let mut next = vec![None; n];
        let mut complement = vec![None; n];
        let mut relation_index = vec![None; n];
        let mut prev: Vec<Option<Letter>> = vec![None; n];
        for (i, r) in p.relations().iter().enumerate() {
            let (top, word) = if r.lhs.len() == 1 && r.rhs.first() != r.lhs.first() {
                (r.lhs.first()?, &r.rhs)
            } else if r.rhs.len() == 1 && r.lhs.first() != r.rhs.first() {
                (r.rhs.first()?, &r.lhs)
            } else {
                return None;
            };
            let base = word.first()?;
            if next[base.index()].is_some() || prev[top.index()].is_some() {
                return None;
            }
            next[base.index()] = Some(top);
            prev[top.index()] = Some(base);
            complement[base.index()] = Some(word.slice(1, word.len()));
            relation_index[base.index()] = Some(i);
        }
        let mut chains = Vec::new();
        let mut seen = 0;
        for (t, up) in next.iter().enumerate() {
            if up.is_some() {
                continue;
            }
            let mut chain = vec![Letter::new(t as u16)];
            let mut cur = t;
            while let Some(b) = prev[cur] {
                chain.push(b);
                cur = b.index();
            }
            seen += chain.len();
            chains.push(chain);
        }
        if seen != n {
            // Letters not reached from any top lie on a cycle of N.
            return None;
        }
        Some(TriangularStructure { side, next, complement, relation_index, chains })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.next.len()
    }

    /// `N(s)`, or `None` outside the domain.
    pub fn next(&self, s: Letter) -> Option<Letter> {
        self.next[s.index()]
    }

    /// `C(s)` in the orientation of the original presentation: for a
    /// left-triangular structure this is the word with `N(s) = C(s) s`.
    pub fn complement(&self, s: Letter) -> Option<PositiveWord> {
        let c = self.complement[s.index()].as_ref()?;
        Some(match self.side {
            Side::Right => c.clone(),
            Side::Left => c.mirror(),
        })
    }

    pub fn relation_index(&self, s: Letter) -> Option<usize> {
        self.relation_index[s.index()]
    }

    pub fn domain(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.size()).filter(|&i| self.next[i].is_some()).map(|i| Letter::new(i as u16))
    }

    /// Chains listed top first.
    pub fn chains(&self) -> &[Vec<Letter>] {
        &self.chains
    }

    pub fn is_single_chain(&self) -> bool {
        self.chains.len() == 1
    }

    /// The letters from the top `a_1` down to the bottom, when there is one chain.
    pub fn chain_order(&self) -> Option<&[Letter]> {
        if self.is_single_chain() {
            Some(&self.chains[0])
        } else {
            None
        }
    }

    pub fn top(&self) -> Option<Letter> {
        self.chain_order().map(|c| c[0])
    }

    /// All relations `N^i(s) = s C^i(s)` with `i >= 1`, in right form.
    pub fn completed_relations(&self) -> Vec<CompletedRelation> {
        let mut out = Vec::new();
        for base in self.domain() {
            let mut top = base;
            let mut word = PositiveWord::empty();
            let mut exponent = 0;
            while let Some(t) = self.next(top) {
                let c = self.complement[top.index()].as_ref().expect("domain letter");
                word = word.concat(c);
                top = t;
                exponent += 1;
                out.push(CompletedRelation { top, base, exponent, complement: word.clone() });
            }
        }
        out
    }

    /// Table of the completed presentation. For a left-triangular structure
    /// this is the table of the opposite presentation, as used by left reversing.
    pub fn complete(&self) -> RelationTable {
        RelationTable::from_completed(self.size(), &self.completed_relations())
    }
}
