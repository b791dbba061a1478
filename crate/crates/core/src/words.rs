//! Letters, alphabets, positive words and signed words.
//!
//! Words store letter indices only. Names live in an [`Alphabet`], which also
//! parses and renders words in the textual syntax used across the crate:
//! letters are tokens, `x^k` repeats, `x^-1` inverts, `(..)^k` groups, and
//! `eps` is the empty word. When every generator name is a single character
//! the tokens may be juxtaposed (`ba^2b`).

use thiserror::Error;

/// A generator, identified by its position in the alphabet.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub const fn new(index: u16) -> Self {
        Letter(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn pos(self) -> SignedLetter {
        SignedLetter(self.0 << 1)
    }

    pub const fn neg(self) -> SignedLetter {
        SignedLetter((self.0 << 1) | 1)
    }
}

/// A letter together with a sign, packed into one `u16`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter(u16);

impl SignedLetter {
    pub const fn letter(self) -> Letter {
        Letter(self.0 >> 1)
    }

    pub const fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub const fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn inverse(self) -> SignedLetter {
        SignedLetter(self.0 ^ 1)
    }

    pub(crate) const fn raw(self) -> u16 {
        self.0
    }
}

/// A word over the positive letters only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveWord(Vec<Letter>);

impl PositiveWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        PositiveWord(letters)
    }

    pub fn empty() -> Self {
        PositiveWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        PositiveWord(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &PositiveWord) -> PositiveWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        PositiveWord(v)
    }

    pub fn pow(&self, k: usize) -> PositiveWord {
        PositiveWord(self.0.repeat(k))
    }

    /// Reverses the letter order.
    pub fn mirror(&self) -> PositiveWord {
        PositiveWord(self.0.iter().rev().copied().collect())
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.0.starts_with(prefix)
    }

    pub fn ends_with(&self, suffix: &[Letter]) -> bool {
        self.0.ends_with(suffix)
    }

    pub fn slice(&self, from: usize, to: usize) -> PositiveWord {
        PositiveWord(self.0[from..to].to_vec())
    }

    pub fn to_signed(&self) -> SignedWord {
        SignedWord(self.0.iter().map(|l| l.pos()).collect())
    }

    /// The signed word `self^-1`.
    pub fn inverse(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|l| l.neg()).collect())
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> PositiveWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        PositiveWord(v)
    }
}

impl FromIterator<Letter> for PositiveWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        PositiveWord(iter.into_iter().collect())
    }
}

/// A word over letters and their formal inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedWord(Vec<SignedLetter>);

impl SignedWord {
    pub fn new(entries: Vec<SignedLetter>) -> Self {
        SignedWord(entries)
    }

    pub fn empty() -> Self {
        SignedWord(Vec::new())
    }

    /// The word `u^-1 v`.
    pub fn fraction(u: &PositiveWord, v: &PositiveWord) -> Self {
        let mut w = u.inverse().0;
        w.extend(v.letters().iter().map(|l| l.pos()));
        SignedWord(w)
    }

    pub fn entries(&self) -> &[SignedLetter] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<SignedLetter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        SignedWord(v)
    }

    /// Formal inverse: reverse the order and flip every sign.
    pub fn invert(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    /// Reverse the order and keep the signs.
    pub fn mirror(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().copied().collect())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|s| s.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|s| s.is_negative())
    }

    pub fn to_positive(&self) -> Option<PositiveWord> {
        if self.is_positive() {
            Some(self.0.iter().map(|s| s.letter()).collect())
        } else {
            None
        }
    }

    /// Splits `u^-1 v` into `(u, v)` when the word has that shape.
    pub fn split_negative_positive(&self) -> Option<(PositiveWord, PositiveWord)> {
        let k = self.0.iter().take_while(|s| s.is_negative()).count();
        if !self.0[k..].iter().all(|s| s.is_positive()) {
            return None;
        }
        let u = self.0[..k].iter().rev().map(|s| s.letter()).collect();
        let v = self.0[k..].iter().map(|s| s.letter()).collect();
        Some((u, v))
    }

    /// Splits `v u^-1` into `(v, u)` when the word has that shape.
    pub fn split_positive_negative(&self) -> Option<(PositiveWord, PositiveWord)> {
        let k = self.0.iter().take_while(|s| s.is_positive()).count();
        if !self.0[k..].iter().all(|s| s.is_negative()) {
            return None;
        }
        let v = self.0[..k].iter().map(|s| s.letter()).collect();
        let u = self.0[k..].iter().rev().map(|s| s.letter()).collect();
        Some((v, u))
    }
}

impl From<&PositiveWord> for SignedWord {
    fn from(w: &PositiveWord) -> Self {
        w.to_signed()
    }
}

impl FromIterator<SignedLetter> for SignedWord {
    fn from_iter<I: IntoIterator<Item = SignedLetter>>(iter: I) -> Self {
        SignedWord(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("generator `{0}` declared twice")]
    Duplicate(String),
    #[error("`{0}` is not a valid generator name")]
    InvalidName(String),
    #[error("too many generators")]
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown letter `{token}` at column {column}")]
    UnknownLetter { token: String, column: usize },
    #[error("malformed power at column {column}")]
    BadPower { column: usize },
    #[error("negative power at column {column} in a positive word")]
    NegativePower { column: usize },
    #[error("unbalanced parenthesis at column {column}")]
    Unbalanced { column: usize },
    #[error("unexpected character `{ch}` at column {column}")]
    Unexpected { ch: char, column: usize },
}

impl WordError {
    pub fn column(&self) -> usize {
        match self {
            WordError::UnknownLetter { column, .. }
            | WordError::BadPower { column }
            | WordError::NegativePower { column }
            | WordError::Unbalanced { column }
            | WordError::Unexpected { column, .. } => *column,
        }
    }
}

/// Ordered, named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    compact: bool,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "eps" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(AlphabetError::Empty);
        }
        if names.len() > (u16::MAX >> 1) as usize {
            return Err(AlphabetError::TooLarge);
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(AlphabetError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(AlphabetError::Duplicate(n.clone()));
            }
        }
        let compact = names.iter().all(|n| n.chars().count() == 1);
        Ok(Alphabet { names, compact })
    }

    /// `a, b, c, ...` for up to 26 letters, `a1, a2, ...` beyond.
    pub fn standard(n: usize) -> Self {
        let names: Vec<String> = if n <= 26 {
            (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (1..=n).map(|i| format!("a{i}")).collect()
        };
        Alphabet::new(names).expect("standard alphabet is valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter::new(i as u16))
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| Letter::new(i as u16))
    }

    /// True when every generator name is one character long.
    pub fn is_compact(&self) -> bool {
        self.compact
    }

    pub fn parse_positive(&self, text: &str) -> Result<PositiveWord, WordError> {
        let signed = Parser::new(self, text, false).parse()?;
        Ok(signed.iter().map(|s| s.letter()).collect())
    }

    pub fn parse_signed(&self, text: &str) -> Result<SignedWord, WordError> {
        Ok(SignedWord(Parser::new(self, text, true).parse()?))
    }

    /// Compact rendering: juxtaposed letters when possible, `eps` for the empty word.
    pub fn show_positive(&self, w: &PositiveWord) -> String {
        self.show_signed(&w.to_signed())
    }

    pub fn show_signed(&self, w: &SignedWord) -> String {
        if w.is_empty() {
            return "eps".to_string();
        }
        let parts = w.entries().iter().map(|s| {
            if s.is_positive() {
                self.name(s.letter()).to_string()
            } else {
                format!("{}^-1", self.name(s.letter()))
            }
        });
        if self.compact {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(" ")
        }
    }

    /// Canonical rendering: names separated by single spaces, no powers.
    pub fn tokens(&self, w: &PositiveWord) -> String {
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    chars: Vec<char>,
    pos: usize,
    column_offset: usize,
    signed: bool,
}

impl<'a> Parser<'a> {
    fn new(alphabet: &'a Alphabet, text: &str, signed: bool) -> Self {
        Parser { alphabet, chars: text.chars().collect(), pos: 0, column_offset: 1, signed }
    }

    fn column(&self) -> usize {
        self.pos + self.column_offset
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn parse(mut self) -> Result<Vec<SignedLetter>, WordError> {
        let out = self.sequence()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            let ch = self.chars[self.pos];
            return Err(if ch == ')' {
                WordError::Unbalanced { column: self.column() }
            } else {
                WordError::Unexpected { ch, column: self.column() }
            });
        }
        Ok(out)
    }

    fn sequence(&mut self) -> Result<Vec<SignedLetter>, WordError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let Some(&ch) = self.chars.get(self.pos) else { break };
            if ch == ')' {
                break;
            }
            let mut atom = if ch == '(' {
                let open = self.column();
                self.pos += 1;
                let inner = self.sequence()?;
                self.skip_ws();
                if self.chars.get(self.pos) != Some(&')') {
                    return Err(WordError::Unbalanced { column: open });
                }
                self.pos += 1;
                inner
            } else if ch == 'ε' {
                self.pos += 1;
                Vec::new()
            } else if ch.is_ascii_alphanumeric() || ch == '_' {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                let token: String = self.chars[start..self.pos].iter().collect();
                if token == "eps" {
                    Vec::new()
                } else if let Some(l) = self.alphabet.lookup(&token) {
                    vec![l.pos()]
                } else if self.alphabet.is_compact() {
                    // Split a run of single-character names; a trailing power
                    // then binds to the last letter only.
                    let mut run = Vec::new();
                    for (i, c) in token.chars().enumerate() {
                        match self.alphabet.lookup(&c.to_string()) {
                            Some(l) => run.push(l.pos()),
                            None => {
                                return Err(WordError::UnknownLetter {
                                    token: c.to_string(),
                                    column: start + i + self.column_offset,
                                })
                            }
                        }
                    }
                    let last = run.pop().expect("non-empty token");
                    out.extend(run);
                    vec![last]
                } else {
                    return Err(WordError::UnknownLetter { token, column: start + self.column_offset });
                }
            } else {
                return Err(WordError::Unexpected { ch, column: self.column() });
            };
            if self.chars.get(self.pos) == Some(&'^') {
                let col = self.column();
                self.pos += 1;
                let negative = self.chars.get(self.pos) == Some(&'-');
                if negative {
                    self.pos += 1;
                }
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let k: usize = digits.parse().map_err(|_| WordError::BadPower { column: col })?;
                if negative && !self.signed {
                    return Err(WordError::NegativePower { column: col });
                }
                if negative {
                    atom = SignedWord(atom).invert().0;
                }
                atom = atom.repeat(k);
            }
            out.extend(atom);
        }
        Ok(out)
    }
}
