//! Positive monoid presentations and their text format.
//!
//! ```text
//! # comment
//! gens: a b
//! rel: a = b a a b
//! ```
//!
//! Words inside `rel:` lines use the syntax of [`Alphabet::parse_positive`],
//! so `rel: a = b(a^2b)^2` is accepted too. Both sides must be non-empty.

mod table;
mod triangular;

pub use table::{CompletedRelation, RelationTable, TableEntry, TableError};
pub use triangular::{Side, TriangularStructure};

use thiserror::Error;

use crate::words::{Alphabet, AlphabetError, PositiveWord, WordError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: PositiveWord,
    pub rhs: PositiveWord,
}

impl Relation {
    pub fn new(lhs: PositiveWord, rhs: PositiveWord) -> Self {
        Relation { lhs, rhs }
    }

    pub fn mirror(&self) -> Relation {
        Relation::new(self.lhs.mirror(), self.rhs.mirror())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `gens:` line")]
    MissingGens,
    #[error("`gens:` declared twice")]
    DuplicateGens,
    #[error("relation before `gens:`")]
    RelationBeforeGens,
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("relation has no `=`")]
    MissingEquals,
    #[error("relation has more than one `=`")]
    ExtraEquals,
    #[error("empty side in relation")]
    EmptySide,
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relation {index} mentions a letter outside the alphabet")]
    LetterOutOfRange { index: usize },
    #[error("relation {index} has an empty side")]
    EmptySide { index: usize },
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<Relation>) -> Result<Self, PresentationError> {
        for (index, r) in relations.iter().enumerate() {
            if r.lhs.is_empty() || r.rhs.is_empty() {
                return Err(PresentationError::EmptySide { index });
            }
            let n = alphabet.len();
            if r.lhs.letters().iter().chain(r.rhs.letters()).any(|l| l.index() >= n) {
                return Err(PresentationError::LetterOutOfRange { index });
            }
        }
        Ok(Presentation { alphabet, relations })
    }

    /// Builds a presentation from relation strings such as `"a = b(ab)^2"`.
    pub fn from_strs(names: &[&str], relations: &[&str]) -> Result<Self, ParseError> {
        let mut text = format!("gens: {}\n", names.join(" "));
        for r in relations {
            text.push_str("rel: ");
            text.push_str(r);
            text.push('\n');
        }
        Presentation::parse(&text)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relations = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(k) => &raw[..k],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let err = |column: usize, kind: ParseErrorKind| ParseError { line: line_no, column, kind };
            let Some(colon) = line.find(':') else {
                return Err(err(indent + 1, ParseErrorKind::UnknownDirective(line.trim().to_string())));
            };
            let directive = line[..colon].trim();
            let body = &line[colon + 1..];
            let body_col = colon + 2;
            match directive {
                "gens" => {
                    if alphabet.is_some() {
                        return Err(err(indent + 1, ParseErrorKind::DuplicateGens));
                    }
                    let names: Vec<&str> = body.split_whitespace().collect();
                    alphabet = Some(Alphabet::new(names).map_err(|e| err(body_col, e.into()))?);
                }
                "rel" => {
                    let Some(alpha) = alphabet.as_ref() else {
                        return Err(err(indent + 1, ParseErrorKind::RelationBeforeGens));
                    };
                    let parts: Vec<&str> = body.split('=').collect();
                    if parts.len() < 2 {
                        return Err(err(body_col, ParseErrorKind::MissingEquals));
                    }
                    if parts.len() > 2 {
                        let second = body_col + parts[0].len() + 1 + parts[1].len();
                        return Err(err(second, ParseErrorKind::ExtraEquals));
                    }
                    let rhs_col = body_col + parts[0].len() + 1;
                    let side = |s: &str, col: usize| -> Result<PositiveWord, ParseError> {
                        let w = alpha.parse_positive(s).map_err(|e| err(col + e.column() - 1, e.into()))?;
                        if w.is_empty() {
                            return Err(err(col, ParseErrorKind::EmptySide));
                        }
                        Ok(w)
                    };
                    let lhs = side(parts[0], body_col)?;
                    let rhs = side(parts[1], rhs_col)?;
                    relations.push(Relation::new(lhs, rhs));
                }
                other => {
                    return Err(err(indent + 1, ParseErrorKind::UnknownDirective(other.to_string())));
                }
            }
        }
        let alphabet = alphabet.ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingGens })?;
        Ok(Presentation { alphabet, relations })
    }

    /// Canonical text: single spaces, no powers, one relation per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.alphabet.names().join(" "));
        for r in &self.relations {
            out.push_str(&format!("rel: {} = {}\n", self.alphabet.tokens(&r.lhs), self.alphabet.tokens(&r.rhs)));
        }
        out
    }

    /// One-line summary such as `(a, b; a = baab)`.
    pub fn display(&self) -> String {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} = {}", self.alphabet.show_positive(&r.lhs), self.alphabet.show_positive(&r.rhs)))
            .collect();
        format!("({}; {})", self.alphabet.names().join(", "), rels.join(", "))
    }

    /// The presentation with every relation side mirrored.
    pub fn opposite(&self) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            relations: self.relations.iter().map(Relation::mirror).collect(),
        }
    }

    pub fn detect_right_triangular(&self) -> Option<TriangularStructure> {
        TriangularStructure::detect(self, Side::Right)
    }

    /// Left-triangular structure, detected on the opposite presentation.
    pub fn detect_left_triangular(&self) -> Option<TriangularStructure> {
        TriangularStructure::detect(&self.opposite(), Side::Left)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_canonical() {
        let p = Presentation::parse("gens: a b\nrel: a = b a^2 b\n").unwrap();
        assert_eq!(p.to_text(), "gens: a b\nrel: a = b a a b\n");
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = Presentation::parse("# torus\n\ngens: a b  # two\nrel: a = bab # klein\n").unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.display(), "(a, b; a = bab)");
    }

    #[test]
    fn reports_positions() {
        let e = Presentation::parse("gens: a b\nrel: a = b c\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        assert!(matches!(e.kind, ParseErrorKind::Word(WordError::UnknownLetter { .. })));
        let e = Presentation::parse("gens: a b\nrel: a = eps\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptySide);
        let e = Presentation::parse("rel: a = b\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::RelationBeforeGens);
        let e = Presentation::parse("gens: a\ngens: b\n").unwrap_err();
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::DuplicateGens));
        let e = Presentation::parse("gens: a b\nrel: a b\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingEquals);
        assert_eq!(Presentation::parse("").unwrap_err().kind, ParseErrorKind::MissingGens);
    }

    #[test]
    fn opposite_mirrors_relations() {
        let p = Presentation::from_strs(&["a", "b", "c"], &["a = bac", "b = cba"]).unwrap();
        let q = p.opposite();
        assert_eq!(q.display(), "(a, b, c; a = cab, b = abc)");
        assert_eq!(q.opposite(), p);
    }
}
