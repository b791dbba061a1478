//! Exhaustive census of the presentations `(a, b; a = b w)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{analyze_otype, AnalysisConfig, Certificate, Status, Verdict};
use crate::presentation::{Presentation, Relation};
use crate::words::{Alphabet, Letter, PositiveWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CensusClass {
    SyntacticDiscard,
    CyclicReversing,
    QuasiCentralFound,
    Unknown,
    NotEligible,
}

impl CensusClass {
    pub fn of(v: &Verdict) -> CensusClass {
        match (&v.status, &v.certificate) {
            (Status::NotRightOType, Some(Certificate::TailDiscard { .. } | Certificate::PatternDiscard { .. })) => {
                CensusClass::SyntacticDiscard
            }
            (Status::NotRightOType, Some(Certificate::CycleWitness { .. })) => CensusClass::CyclicReversing,
            (Status::RightOType, _) => CensusClass::QuasiCentralFound,
            (Status::Unknown, None) => CensusClass::NotEligible,
            _ => CensusClass::Unknown,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CensusClass::SyntacticDiscard => "SyntacticDiscard",
            CensusClass::CyclicReversing => "CyclicReversing",
            CensusClass::QuasiCentralFound => "QuasiCentralFound",
            CensusClass::Unknown => "Unknown",
            CensusClass::NotEligible => "NotEligible",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub index: usize,
    pub w: PositiveWord,
    pub class: CensusClass,
    pub left_class: CensusClass,
    pub right: Verdict,
    pub left: Verdict,
}

impl CensusRecord {
    pub fn is_o_type(&self) -> bool {
        self.class == CensusClass::QuasiCentralFound && self.left_class == CensusClass::QuasiCentralFound
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ab = Alphabet::standard(2);
        json!({
            "w": ab.show_positive(&self.w),
            "class": self.class.name(),
            "left_class": self.left_class.name(),
            "delta": self.right.delta().map(|d| ab.show_positive(d)),
            "steps": self.right.budgets.steps,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub max_length: usize,
    pub records: Vec<CensusRecord>,
    pub config: AnalysisConfig,
}

impl CensusReport {
    pub fn counts(&self) -> BTreeMap<CensusClass, usize> {
        let mut m = BTreeMap::new();
        for r in &self.records {
            *m.entry(r.class).or_insert(0) += 1;
        }
        m
    }

    pub fn count(&self, class: CensusClass) -> usize {
        self.records.iter().filter(|r| r.class == class).count()
    }

    pub fn o_type(&self) -> usize {
        self.records.iter().filter(|r| r.is_o_type()).count()
    }

    /// `discards / cyclic / quasi-central (O-type: n)`
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "{} / {} / {} (O-type: {})",
            self.count(CensusClass::SyntacticDiscard),
            self.count(CensusClass::CyclicReversing),
            self.count(CensusClass::QuasiCentralFound),
            self.o_type()
        );
        let unknown = self.count(CensusClass::Unknown);
        if unknown > 0 {
            line.push_str(&format!(" [unknown: {unknown}]"));
        }
        line
    }

    pub fn to_jsonl(&self) -> String {
        self.records.iter().map(|r| r.to_json().to_string() + "\n").collect()
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> =
            self.counts().into_iter().map(|(k, v)| (k.name().to_string(), v.into())).collect();
        json!({
            "max_length": self.max_length,
            "total": self.records.len(),
            "counts": counts,
            "o_type": self.o_type(),
            "config": self.config,
        })
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("class,count\n");
        for class in [
            CensusClass::SyntacticDiscard,
            CensusClass::CyclicReversing,
            CensusClass::QuasiCentralFound,
            CensusClass::Unknown,
        ] {
            out.push_str(&format!("{},{}\n", class.name(), self.count(class)));
        }
        out.push_str(&format!("OType,{}\n", self.o_type()));
        out
    }
}

/// All words over `{a, b}` of length at most `max_length`, in shortlex order.
pub fn words_shortlex(max_length: usize) -> Vec<PositiveWord> {
    let mut out = vec![PositiveWord::empty()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_length {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| (0..2).map(move |l| [w.as_slice(), &[Letter::new(l)]].concat()))
            .collect();
        out.extend(layer.iter().cloned().map(PositiveWord::new));
    }
    out
}

/// The presentation `(a, b; a = b w)`.
pub fn presentation_for(w: &PositiveWord) -> Presentation {
    let (a, b) = (Letter::new(0), Letter::new(1));
    let rhs = PositiveWord::letter(b).concat(w);
    Presentation::new(Alphabet::standard(2), vec![Relation::new(PositiveWord::letter(a), rhs)])
        .expect("well-formed census presentation")
}

pub fn enumerate(max_length: usize) -> impl Iterator<Item = (PositiveWord, Presentation)> {
    words_shortlex(max_length).into_iter().map(|w| {
        let p = presentation_for(&w);
        (w, p)
    })
}

pub fn classify(index: usize, w: &PositiveWord, cfg: &AnalysisConfig) -> CensusRecord {
    let (right, left) = analyze_otype(&presentation_for(w), cfg);
    CensusRecord {
        index,
        w: w.clone(),
        class: CensusClass::of(&right),
        left_class: CensusClass::of(&left),
        right,
        left,
    }
}

/// Classifies every presentation with `|w| <= max_length` on `parallelism` threads.
pub fn run(max_length: usize, cfg: &AnalysisConfig, parallelism: usize) -> CensusReport {
    let words = words_shortlex(max_length);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(parallelism.max(1)).build().expect("thread pool");
    let mut records: Vec<CensusRecord> =
        pool.install(|| words.par_iter().enumerate().map(|(i, w)| classify(i, w, cfg)).collect());
    records.sort_by_key(|r| r.index);
    CensusReport { max_length, records, config: *cfg }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order_and_count() {
        let ws = words_shortlex(3);
        assert_eq!(ws.len(), 15);
        let ab = Alphabet::standard(2);
        let shown: Vec<String> = ws.iter().take(7).map(|w| ab.show_positive(w)).collect();
        assert_eq!(shown, ["eps", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn small_census() {
        let r = run(2, &AnalysisConfig::census(), 2);
        assert_eq!(r.records.len(), 7);
        assert_eq!(r.records[1].class, CensusClass::SyntacticDiscard);
        assert_eq!(r.records[0].class, CensusClass::QuasiCentralFound);
        let line: serde_json::Value = serde_json::from_str(r.to_jsonl().lines().next().unwrap()).unwrap();
        assert_eq!(line["w"], "eps");
        assert_eq!(line["delta"], "a");
    }
}
