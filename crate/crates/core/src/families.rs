//! Parametrised presentation families and the fixture catalog.
//!
//! Every instance carries the verdicts, distinguished elements and
//! non-termination witnesses it is expected to exhibit. The analyzer never
//! reads these expectations; tests compare the two.

use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::Status;
use crate::presentation::Presentation;
use crate::reversing::Direction;
use crate::words::{Alphabet, Letter, PositiveWord, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter {name} = {value} is out of range ({range})")]
    OutOfRange { name: &'static str, value: usize, range: &'static str },
    #[error("chain family needs {expected} exponents, got {got}")]
    ExponentCount { expected: usize, got: usize },
}

/// A reversing that comes back to a conjugate of its start.
///
/// `Right`: `u` reverses to `v^-1 u v`. `Left`: `u` left-reverses to
/// `v u v^-1`. With `opposite` set, the reversing is done in the opposite
/// presentation. A non-empty `held` is a prefix `held^-1` of `u` that the
/// reversing never touches; the conjugation then applies to the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleExpectation {
    pub direction: Direction,
    pub opposite: bool,
    pub u: SignedWord,
    pub v: PositiveWord,
    pub held: PositiveWord,
    pub period: usize,
}

impl CycleExpectation {
    pub fn target(&self) -> SignedWord {
        let rest = SignedWord::new(self.u.entries()[self.held.len()..].to_vec());
        let inner = match self.direction {
            Direction::Right => self.v.inverse().concat(&rest).concat(&self.v.to_signed()),
            Direction::Left => self.v.to_signed().concat(&rest).concat(&self.v.inverse()),
        };
        self.held.inverse().concat(&inner)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    /// `false` for presentations that must be rejected as not right-triangular.
    pub triangular: bool,
    /// `None` when nothing is claimed.
    pub right: Option<Status>,
    pub left: Option<Status>,
    /// Certificate kind backing a negative verdict.
    pub right_kind: Option<&'static str>,
    pub left_kind: Option<&'static str>,
    pub delta: Option<PositiveWord>,
    pub central: bool,
    /// `g Δ = Δ φ(g)`
    pub phi: Vec<(Letter, PositiveWord)>,
    pub left_delta: Option<PositiveWord>,
    /// `Δ g = φ~(g) Δ`
    pub left_phi: Vec<(Letter, PositiveWord)>,
    pub cycles: Vec<CycleExpectation>,
    /// `s_p ... s_1` of the periodic ceiling.
    pub ceiling_period: Option<PositiveWord>,
    /// Verdicts that rest on a domination argument only.
    pub domination_only: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: &'static str,
    pub params: Vec<usize>,
    pub presentation: Presentation,
    pub expected: Expected,
}

impl FamilyInstance {
    fn new(family: &'static str, params: Vec<usize>, presentation: Presentation) -> Self {
        FamilyInstance { family, params, presentation, expected: Expected { triangular: true, ..Expected::default() } }
    }

    /// `family(p1,p2,...)`, or the bare family name.
    pub fn id(&self) -> String {
        if self.params.is_empty() {
            self.family.to_string()
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            format!("{}({})", self.family, ps.join(","))
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    fn word(&self, text: &str) -> PositiveWord {
        self.alphabet().parse_positive(text).expect("fixture word")
    }

    fn signed(&self, text: &str) -> SignedWord {
        self.alphabet().parse_signed(text).expect("fixture word")
    }

    fn letter(&self, name: &str) -> Letter {
        self.alphabet().lookup(name).expect("fixture letter")
    }

    fn verdicts(mut self, right: Status, left: Option<Status>) -> Self {
        self.expected.right = Some(right);
        self.expected.left = left;
        self
    }

    fn otype(self) -> Self {
        self.verdicts(Status::RightOType, Some(Status::RightOType))
    }

    fn kinds(mut self, right: Option<&'static str>, left: Option<&'static str>) -> Self {
        self.expected.right_kind = right;
        self.expected.left_kind = left;
        self
    }

    fn delta(mut self, d: &str, central: bool) -> Self {
        self.expected.delta = Some(self.word(d));
        self.expected.central = central;
        self
    }

    fn phi(mut self, images: &[(&str, &str)]) -> Self {
        self.expected.phi = images.iter().map(|(g, w)| (self.letter(g), self.word(w))).collect();
        self
    }

    fn left_delta(mut self, d: &str, images: &[(&str, &str)]) -> Self {
        self.expected.left_delta = Some(self.word(d));
        self.expected.left_phi = images.iter().map(|(g, w)| (self.letter(g), self.word(w))).collect();
        self
    }

    fn cycle(self, direction: Direction, opposite: bool, u: &str, v: &str, period: usize) -> Self {
        self.held_cycle(direction, opposite, u, v, "", period)
    }

    fn held_cycle(mut self, direction: Direction, opposite: bool, u: &str, v: &str, held: &str, period: usize) -> Self {
        let held = self.word(held);
        let c = CycleExpectation { direction, opposite, u: self.signed(u), v: self.word(v), held, period };
        self.expected.cycles.push(c);
        self
    }

    fn ceiling(mut self, period: &str) -> Self {
        self.expected.ceiling_period = Some(self.word(period));
        self
    }

    fn note(mut self, text: &str) -> Self {
        self.expected.note = Some(text.to_string());
        self
    }

    pub fn expected_json(&self) -> Value {
        let ab = self.alphabet();
        let e = &self.expected;
        let images = |m: &[(Letter, PositiveWord)]| -> Value {
            m.iter().map(|(g, w)| (ab.name(*g).to_string(), Value::from(ab.show_positive(w)))).collect()
        };
        json!({
            "id": self.id(),
            "family": self.family,
            "params": self.params,
            "presentation": self.presentation.display(),
            "triangular": e.triangular,
            "right": e.right,
            "left": e.left,
            "right_kind": e.right_kind,
            "left_kind": e.left_kind,
            "delta": e.delta.as_ref().map(|d| ab.show_positive(d)),
            "central": e.central,
            "phi": images(&e.phi),
            "left_delta": e.left_delta.as_ref().map(|d| ab.show_positive(d)),
            "left_phi": images(&e.left_phi),
            "cycles": e.cycles.iter().map(|c| json!({
                "direction": c.direction,
                "opposite": c.opposite,
                "u": ab.show_signed(&c.u),
                "v": ab.show_positive(&c.v),
                "held": ab.show_positive(&c.held),
                "period": c.period,
            })).collect::<Vec<_>>(),
            "ceiling_period": e.ceiling_period.as_ref().map(|p| ab.show_positive(p)),
            "domination_only": e.domination_only,
            "note": e.note,
        })
    }
}

fn check(name: &'static str, value: usize, ok: bool, range: &'static str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::OutOfRange { name, value, range })
    }
}

fn pw(letter: usize, k: usize) -> PositiveWord {
    PositiveWord::letter(Letter::new(letter as u16)).pow(k)
}

fn cat(parts: &[&PositiveWord]) -> PositiveWord {
    parts.iter().fold(PositiveWord::empty(), |acc, w| acc.concat(w))
}

fn build(n: usize, relations: Vec<(usize, PositiveWord)>) -> Presentation {
    let rels = relations.into_iter().map(|(top, rhs)| crate::presentation::Relation::new(pw(top, 1), rhs)).collect();
    Presentation::new(Alphabet::standard(n), rels).expect("family presentation")
}

/// `(a, b; a = b (a^p b^r)^q)`.
pub fn torus_knot(p: usize, q: usize, r: usize) -> Result<FamilyInstance, FamilyError> {
    check("p", p, p >= 1, ">= 1")?;
    check("q", q, q >= 1, ">= 1")?;
    check("r", r, r >= 1, ">= 1")?;
    let rhs = pw(1, 1).concat(&pw(0, p).concat(&pw(1, r)).pow(q));
    let inst = FamilyInstance::new("torus_knot", vec![p, q, r], build(2, vec![(0, rhs)]));
    let a = inst.alphabet().show_positive(&pw(0, p + 1));
    Ok(if r == 1 {
        inst.otype().delta(&a, true)
    } else {
        let mut i = inst.verdicts(Status::RightOType, Some(Status::NotRightOType)).delta(&a, false);
        i.expected.left_kind = Some("PatternDiscard");
        if (p, q, r) == (2, 1, 2) {
            i = i.phi(&[("a", "a"), ("b", "bbabb")]);
        }
        i
    })
}

/// Least `k` such that `a_1^k` is central in [`chain_family`].
pub fn chain_delta_power(m: &[usize], n: &[usize]) -> usize {
    (1..)
        .find(|&k| {
            (0..m.len()).all(|i| {
                let num: usize = k * n[..i].iter().map(|x| x + 1).product::<usize>();
                let den: usize = m[..=i].iter().map(|x| x + 1).product();
                num.is_multiple_of(den)
            })
        })
        .expect("a common multiple exists")
}

/// The words `w_1, ..., w_l` of [`chain_family`].
pub fn chain_words(m: &[usize]) -> Vec<PositiveWord> {
    let mut w = vec![pw(0, 1)];
    for i in 1..=m.len() {
        let mut next = PositiveWord::empty();
        for k in (0..i).rev() {
            next = next.concat(&w[k].pow(m[k]));
        }
        w.push(next.concat(&pw(i, 1)));
    }
    w
}

/// `(a_1, ..., a_l; a_(i-1) = a_i w_i^(n_i))` with
/// `w_i = w_(i-1)^(m_i) ... w_1^(m_2) a_i`; `m` and `n` list `m_2..m_l`
/// and `n_2..n_l`.
pub fn chain_family(m: &[usize], n: &[usize]) -> Result<FamilyInstance, FamilyError> {
    let l = m.len() + 1;
    check("l", l, (2..=5).contains(&l), "2..=5")?;
    if n.len() != m.len() {
        return Err(FamilyError::ExponentCount { expected: m.len(), got: n.len() });
    }
    for &x in m.iter().chain(n) {
        check("exponent", x, x >= 1, ">= 1")?;
    }
    let w = chain_words(m);
    let rels = (1..l).map(|i| (i - 1, pw(i, 1).concat(&w[i].pow(n[i - 1])))).collect();
    let params = m.iter().chain(n).copied().collect();
    let inst = FamilyInstance::new("chain", params, build(l, rels));
    let k = chain_delta_power(m, n);
    let d = inst.alphabet().show_positive(&pw(0, k));
    let sufficient: usize = m.iter().map(|x| x + 1).product();
    Ok(inst
        .otype()
        .delta(&d, true)
        .note(&format!("least central power {k}; the product of the m_i + 1 gives {sufficient}")))
}

/// `(a, b, c; a = b (a^p b)^q, b = c (a^r c)^s)`.
pub fn three_gen(p: usize, q: usize, r: usize, s: usize) -> Result<FamilyInstance, FamilyError> {
    let a_rel = pw(1, 1).concat(&pw(0, p).concat(&pw(1, 1)).pow(q));
    let b_rel = pw(2, 1).concat(&pw(0, r).concat(&pw(2, 1)).pow(s));
    let inst = FamilyInstance::new("three_gen", vec![p, q, r, s], build(3, vec![(0, a_rel), (1, b_rel)]));
    let power = |i: &FamilyInstance, k: usize| i.alphabet().show_positive(&pw(0, k));
    Ok(if q == 0 || s == 0 {
        // One relation collapses and a torus knot remains.
        let k = match (q, s) {
            (0, 0) => 1,
            (0, _) => r + 1,
            _ => p + 1,
        };
        let d = power(&inst, k);
        inst.otype().delta(&d, true)
    } else if r < p {
        inst.verdicts(Status::NotRightOType, None).kinds(Some("PatternDiscard"), None)
    } else if (r + 1).is_multiple_of(p + 1) {
        let d = power(&inst, q * (r - p) + r + 1);
        inst.otype().delta(&d, true)
    } else {
        let mut i = inst.otype();
        i.expected.domination_only = true;
        i
    })
}

/// `(a, b, c; a = b a^(p+2) (b a^p b a^(p+2))^q c, b = c (b a^(p+2))^r b a)`.
pub fn split_family(p: usize, q: usize, r: usize) -> Result<FamilyInstance, FamilyError> {
    let (a, b, c) = (pw(0, 1), pw(1, 1), pw(2, 1));
    let a_rel = cat(&[&b, &pw(0, p + 2), &cat(&[&b, &pw(0, p), &b, &pw(0, p + 2)]).pow(q), &c]);
    let b_rel = cat(&[&c, &b.concat(&pw(0, p + 2)).pow(r), &b, &a]);
    let inst = FamilyInstance::new("split", vec![p, q, r], build(3, vec![(0, a_rel), (1, b_rel)]));
    Ok(if r <= 1 {
        let d = pw(0, p + 2).concat(&b).pow(2 * q + r + 3);
        let d = inst.alphabet().show_positive(&d);
        inst.otype().delta(&d, true)
    } else {
        inst.verdicts(Status::Unknown, Some(Status::Unknown)).note("no distinguished element is known")
    })
}

fn fixture(family: &'static str, params: Vec<usize>, names: &[&str], rels: &[&str]) -> FamilyInstance {
    FamilyInstance::new(family, params, Presentation::from_strs(names, rels).expect("fixture presentation"))
}

fn ab(family: &'static str, rel: &str) -> FamilyInstance {
    fixture(family, vec![], &["a", "b"], &[rel])
}

fn abc(family: &'static str, params: Vec<usize>, rels: &[&str]) -> FamilyInstance {
    fixture(family, params, &["a", "b", "c"], rels)
}

/// Two-generator presentations with their verdicts on both sides.
pub fn two_generator_rows() -> Vec<FamilyInstance> {
    use Direction::{Left, Right};
    use Status::{NotRightOType as No, RightOType as Yes};
    [
        ab("row", "a = bababab").otype().delta("aa", true).ceiling("a"),
        ab("row", "a = baababab")
            .verdicts(Yes, Some(No))
            .kinds(None, Some("PatternDiscard"))
            .delta("aaa", false)
            .phi(&[("a", "a"), ("b", "(babab)^3")])
            .ceiling("a"),
        ab("row", "a = babaabab").verdicts(No, Some(No)).kinds(Some("PatternDiscard"), Some("PatternDiscard")),
        ab("row", "a = baaababab")
            .verdicts(Yes, Some(No))
            .kinds(None, Some("PatternDiscard"))
            .delta("aaaa", false)
            .phi(&[("a", "a"), ("b", "b(ab)^8")])
            .ceiling("a"),
        ab("row", "a = babbbab").otype().delta("(ab)^3", true).ceiling("a"),
        ab("row", "a = baababaab")
            .otype()
            .delta("(aab)^2", false)
            .phi(&[("a", "a(baab)^2"), ("b", "b")])
            .left_delta("(baa)^2", &[("a", "(baab)^2a"), ("b", "b")]),
        ab("row", "a = baabbbaab")
            .verdicts(No, Some(No))
            .kinds(Some("CycleWitness"), Some("CycleWitness"))
            .cycle(Right, false, "a^-2 baaba", "bbbaab", 10)
            .note("the flank is printed in reverse order, as baabbb"),
        ab("row", "a = baababbaab")
            .verdicts(Yes, Some(No))
            .kinds(None, Some("CycleWitness"))
            .delta("(aab)^2", false)
            .phi(&[("a", "(abba)^2ab"), ("b", "(baabb)^2")])
            .cycle(Left, false, "aabbaababbbaab a^-1", "b", 26),
        ab("row", "a = baabbbbaab")
            .verdicts(No, Some(No))
            .kinds(Some("CycleWitness"), Some("CycleWitness"))
            .held_cycle(Right, false, "b^-1 a^-2 baaba", "bbbbaababbbbaab", "b", 12)
            .note("the leading b^-1 is not part of the conjugation"),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, mut row)| {
        row.params = vec![i + 1];
        row
    })
    .collect()
}

/// Further families of O-type at small parameters.
pub fn more_families() -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let rel = format!("a = b(ab^{p})^{q}ab");
        let d = format!("(ab^{})^2", p - 1);
        out.push(fixture("symmetric_central", vec![p, q], &["a", "b"], &[&rel]).otype().delta(&d, true));
    }
    for (p, r) in [(1, 2), (1, 4), (2, 3)] {
        let rel = format!("a = ba^{r}ba^{p}ba^{r}b");
        let i = fixture("symmetric_quasi_central", vec![p, r], &["a", "b"], &[&rel]).otype();
        let (d, fa) = (format!("(a^{r}b)^2"), format!("a^{p}(ba^{r}b)^2"));
        out.push(i.delta(&d, false).phi(&[("a", &fa), ("b", "b")]));
    }
    for (p, r) in [(1, 1), (1, 3), (2, 2)] {
        let rels = [format!("a = ba^{p}b"), format!("b = cba^{r}c")];
        let i = abc("three_gen_central", vec![p, r], &[&rels[0], &rels[1]]).otype();
        let d = format!("a^{}", p * (r - p.min(r)) + 1);
        out.push(i.delta(&d, true).note("exponent taken as printed"));
    }
    for (p, r) in [(1, 2), (2, 3)] {
        let rels = [format!("a = ba^{p}b"), format!("b = cba^{r}c")];
        let i = abc("three_gen_quasi_central", vec![p, r], &[&rels[0], &rels[1]]).otype();
        let fa = format!("a^{p}ba^{}b^3", p - 1);
        out.push(i.delta(&format!("a^{r}b^2"), false).phi(&[("a", &fa), ("b", "b"), ("c", "c")]));
    }
    for (p, r) in [(1, 1), (1, 3), (2, 1)] {
        let rels = [format!("a = b(ab)^{p}"), format!("b = cb(a^{r}b)^{p}c")];
        let i = abc("odd_power", vec![p, r], &[&rels[0], &rels[1]]).otype();
        let d = format!("a^{}", p * (p + 1) * (r - 1) + 2);
        out.push(i.delta(&d, true).note("relation and exponent taken as printed"));
    }
    for (p, q, r) in [(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0), (1, 1, 1)] {
        let rels = [format!("a = ba^{}(ba^{p}ba^{})^{q}c", p + 1, p + 1), format!("b = c(ba^{})^{r}ba", p + 1)];
        let i = abc("split_variant", vec![p, q, r], &[&rels[0], &rels[1]]).otype();
        let d = format!("(a^{}b)^{}", p + 1, r + 3);
        out.push(i.delta(&d, true));
    }
    out
}

/// Single presentations with a known behaviour.
pub fn named_examples() -> Vec<FamilyInstance> {
    use Direction::Right;
    use Status::{NotRightOType as No, RightOType as Yes};
    let mut out = vec![
        ab("klein_bottle", "a = bab").otype().delta("aa", true).ceiling("a"),
        ab("klein_bottle_squared", "a = bbabb")
            .verdicts(No, Some(No))
            .kinds(Some("PatternDiscard"), Some("PatternDiscard")),
        ab("dominated_pair", "a = bababbabbabab").otype(),
        abc("dominated_triple", vec![], &["a = bcacb", "b = cacac"]).otype(),
        abc("braid_triangle", vec![], &["a = bac", "b = cba"])
            .otype()
            .delta("bbaa", false)
            .phi(&[("a", "abaacaccc"), ("b", "baacc"), ("c", "c")])
            .ceiling("bbaa"),
        abc("hidden_central", vec![], &["a = bcb", "b = cbabc"]).otype().delta("bbb", true),
        ab("hidden_central_reduced", "a = baabaab").otype().delta("aaa", true),
        abc("duplicating", vec![], &["a = bacb", "b = cac"])
            .verdicts(Yes, Some(No))
            .kinds(None, Some("CycleWitness"))
            .delta("aa", false)
            .phi(&[("c", "(cb)^2")])
            .cycle(Right, true, "b^-1 ccab", "cc", 12),
    ];
    for n in 3..=5 {
        let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let rels: Vec<String> = (0..n - 1)
            .map(|i| {
                let rhs: Vec<&str> = (1..n).map(|k| refs[(i + k) % n]).collect();
                format!("{} = {}", refs[i], rhs.join(" "))
            })
            .collect();
        let rel_refs: Vec<&str> = rels.iter().map(String::as_str).collect();
        let i = fixture("cycling", vec![n], &refs, &rel_refs).otype().delta("a1 a1", true);
        let period: Vec<&str> = (1..n).rev().map(|k| refs[k - 1]).collect();
        out.push(i.ceiling(&period.join(" ")));
    }
    for r in 1..=3 {
        let rel = format!("a = bab^{}", r + 1);
        let i = fixture("baumslag_solitar", vec![r], &["a", "b"], &[&rel]);
        out.push(i.verdicts(Yes, Some(No)).kinds(None, Some("PatternDiscard")).delta("aa", false));
    }
    let mut nt = abc("non_triangular_braid", vec![], &["a = bbaababbbb", "b = cbbc", "abc = cab"]);
    nt.expected.triangular = false;
    out.push(nt);
    let mut fa = abc("free_abelian", vec![], &["c = ab", "c = ba"]);
    fa.expected.triangular = false;
    out.push(fa);
    out
}

/// Every fixture: table rows, named examples and small family instances.
pub fn fixture_catalog() -> Vec<FamilyInstance> {
    let mut out = two_generator_rows();
    out.extend(more_families());
    out.extend(named_examples());
    for p in 1..=3 {
        for q in 1..=3 {
            for r in 1..=3 {
                out.push(torus_knot(p, q, r).expect("in range"));
            }
        }
    }
    for m2 in 1..=2 {
        for n2 in 1..=2 {
            out.push(chain_family(&[m2], &[n2]).expect("in range"));
            for m3 in 1..=2 {
                for n3 in 1..=2 {
                    out.push(chain_family(&[m2, m3], &[n2, n3]).expect("in range"));
                }
            }
        }
    }
    for p in 0..=2 {
        for q in 0..=2 {
            for r in 0..=2 {
                for s in 0..=2 {
                    out.push(three_gen(p, q, r, s).expect("in range"));
                }
            }
        }
    }
    for p in 0..=1 {
        for q in 0..=1 {
            for r in 0..=1 {
                out.push(split_family(p, q, r).expect("in range"));
            }
        }
    }
    out
}

/// The catalog in the presentation text format, one block per instance.
pub fn catalog_text(instances: &[FamilyInstance]) -> String {
    instances.iter().map(|i| format!("# {}\n{}", i.id(), i.presentation.to_text())).collect::<Vec<_>>().join("\n")
}

/// Expectations as a JSON array, in catalog order.
pub fn catalog_json(instances: &[FamilyInstance]) -> Value {
    Value::Array(instances.iter().map(FamilyInstance::expected_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_knot_shapes() {
        let b3 = torus_knot(2, 1, 1).unwrap();
        assert_eq!(b3.presentation.display(), "(a, b; a = baab)");
        assert_eq!(b3.presentation.opposite(), b3.presentation);
        let k = torus_knot(1, 1, 1).unwrap();
        assert_eq!(k.presentation.display(), "(a, b; a = bab)");
        let t = torus_knot(2, 1, 2).unwrap();
        assert_eq!(t.presentation.display(), "(a, b; a = baabb)");
        assert_eq!(t.expected.left, Some(Status::NotRightOType));
        assert!(torus_knot(0, 1, 1).is_err());
    }

    #[test]
    fn chain_reduces_to_torus_knot() {
        for (p, q) in [(1, 1), (2, 1), (2, 3)] {
            let c = chain_family(&[p], &[q]).unwrap();
            assert_eq!(c.presentation, torus_knot(p, q, 1).unwrap().presentation);
        }
    }

    #[test]
    fn chain_three_letters() {
        let c = chain_family(&[2, 2], &[2, 2]).unwrap();
        let expect = Presentation::from_strs(&["a", "b", "c"], &["a = b(aab)^2", "b = c((aab)^2aac)^2"]).unwrap();
        assert_eq!(c.presentation, expect);
        assert_eq!(chain_delta_power(&[1, 1], &[1, 1]), 2);
        assert_eq!(chain_delta_power(&[2], &[5]), 3);
    }

    #[test]
    fn chain_word_lengths() {
        let m = [1, 2, 3, 1];
        let w = chain_words(&m);
        for i in 1..w.len() {
            let sum: usize = (0..i).map(|k| m[k] * w[k].len()).sum();
            assert_eq!(w[i].len(), 1 + sum);
        }
    }

    #[test]
    fn three_gen_cases() {
        assert_eq!(three_gen(2, 1, 1, 1).unwrap().expected.right, Some(Status::NotRightOType));
        assert_eq!(three_gen(1, 1, 2, 1).unwrap().expected.right, Some(Status::RightOType));
        let q0 = three_gen(2, 0, 1, 1).unwrap();
        assert_eq!(q0.presentation.display(), "(a, b, c; a = b, b = cac)");
        assert_eq!(three_gen(2, 1, 1, 0).unwrap().expected.right, Some(Status::RightOType));
    }

    #[test]
    fn split_at_zero() {
        let s = split_family(0, 0, 0).unwrap();
        assert_eq!(s.presentation.display(), "(a, b, c; a = baac, b = cba)");
        assert_eq!(split_family(0, 1, 1).unwrap().expected.delta.unwrap().len(), 6 * 3);
        assert_eq!(split_family(0, 0, 2).unwrap().expected.right, Some(Status::Unknown));
    }

    #[test]
    fn catalog_exports() {
        let cat = fixture_catalog();
        assert!(cat.len() > 150);
        let text = catalog_text(&cat[..3]);
        assert!(text.starts_with("# row(1)\ngens: a b\nrel: a = b a b a b a b\n"));
        let json = catalog_json(&cat);
        assert_eq!(json.as_array().unwrap().len(), cat.len());
        assert!(cat
            .iter()
            .filter(|i| i.expected.triangular)
            .all(|i| i.presentation.detect_right_triangular().is_some()));
    }
}
