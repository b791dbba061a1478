//! Complement tables for right reversing.

use thiserror::Error;

use crate::words::{Letter, PositiveWord};

/// A relation `top = base · complement` of the completed presentation, where
/// `top = N^exponent(base)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedRelation {
    pub top: Letter,
    pub base: Letter,
    pub exponent: usize,
    pub complement: PositiveWord,
}

impl CompletedRelation {
    /// The long side `base · complement`.
    pub fn word(&self) -> PositiveWord {
        PositiveWord::letter(self.base).concat(&self.complement)
    }
}

/// For the ordered pair `(s, t)`: `s · left = t · right`. Reversing rewrites
/// `s^-1 t` into `left · right^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub left: PositiveWord,
    pub right: PositiveWord,
    /// Index of the relation this entry comes from.
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("two relations for the pair ({0}, {1})")]
    NonDeterministic(usize, usize),
    #[error("relation pairs a letter with itself")]
    Diagonal,
}

#[derive(Clone, Debug)]
pub struct RelationTable {
    size: usize,
    entries: Vec<Option<TableEntry>>,
}

impl RelationTable {
    /// Builds a table from relations `s · u = t · v`, given as `(s, u, t, v)`.
    pub fn from_relations(
        size: usize,
        relations: impl IntoIterator<Item = (Letter, PositiveWord, Letter, PositiveWord)>,
    ) -> Result<Self, TableError> {
        let mut entries = vec![None; size * size];
        for (source, (s, u, t, v)) in relations.into_iter().enumerate() {
            if s == t {
                return Err(TableError::Diagonal);
            }
            let k1 = s.index() * size + t.index();
            let k2 = t.index() * size + s.index();
            if entries[k1].is_some() || entries[k2].is_some() {
                return Err(TableError::NonDeterministic(s.index(), t.index()));
            }
            entries[k1] = Some(TableEntry { left: u.clone(), right: v.clone(), source });
            entries[k2] = Some(TableEntry { left: v, right: u, source });
        }
        Ok(RelationTable { size, entries })
    }

    pub(crate) fn from_completed(size: usize, rels: &[CompletedRelation]) -> Self {
        Self::from_relations(size, rels.iter().map(|r| (r.base, r.complement.clone(), r.top, PositiveWord::empty())))
            .expect("completion of a triangular structure is deterministic")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, s: Letter, t: Letter) -> Option<&TableEntry> {
        if s.index() >= self.size || t.index() >= self.size {
            return None;
        }
        self.entries[s.index() * self.size + t.index()].as_ref()
    }

    /// True when every entry has an empty side, which is what reversing over a
    /// triangular presentation relies on.
    pub fn is_triangular(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.left.is_empty() || e.right.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    #[test]
    fn entries_are_symmetric() {
        let p = Presentation::from_strs(&["a", "b"], &["a = bab"]).unwrap();
        let t = p.detect_right_triangular().unwrap().complete();
        let (a, b) = (Letter::new(0), Letter::new(1));
        let e = t.get(b, a).unwrap();
        assert_eq!(e.left, PositiveWord::new(vec![a, b]));
        assert!(e.right.is_empty());
        let e = t.get(a, b).unwrap();
        assert!(e.left.is_empty());
        assert_eq!(e.right, PositiveWord::new(vec![a, b]));
        assert!(t.get(a, a).is_none());
        assert!(t.is_triangular());
    }

    #[test]
    fn rejects_duplicates() {
        let (a, b) = (Letter::new(0), Letter::new(1));
        let w = PositiveWord::letter(a);
        let r =
            RelationTable::from_relations(2, [(a, w.clone(), b, w.clone()), (b, w.clone(), a, PositiveWord::empty())]);
        assert_eq!(r.unwrap_err(), TableError::NonDeterministic(1, 0));
    }
}
