//! Deciding whether a right-triangular presentation defines a monoid whose
//! left-divisibility is a linear order.
//!
//! [`analyze`] runs a fixed pipeline and stops at the first certificate:
//! chain structure, syntactic discards, the ceiling search, quasi-central
//! candidates. Without a certificate the verdict is `Unknown`, possibly with
//! bounded domination evidence attached.

mod ceiling;
mod certificate;
mod discard;
mod domination;
mod quasi_central;
mod replay;

pub use ceiling::{ceiling_prefix, Ceiling, CeilingError, CeilingStop};
pub use certificate::{Certificate, DominationCheck, VCheck};
pub use discard::discard_syntactic;
pub use domination::{check_domination_bounded, verify_domination_certified, DominationError, DominationMode};
pub use quasi_central::{qc_candidates, verify_quasi_central, QcFailure};
pub use replay::{verify_certificate, ReplayError};

use serde::Serialize;
use serde_json::{json, Value};

use crate::presentation::{Presentation, RelationTable, TriangularStructure};
use crate::reversing::{right_reverse, Budget, ReversingOutcome};
use crate::words::{Alphabet, Letter, PositiveWord, SignedWord};

/// A right-triangular presentation together with its completed table.
#[derive(Clone, Debug)]
pub struct RightForm {
    presentation: Presentation,
    structure: TriangularStructure,
    table: RelationTable,
}

impl RightForm {
    pub fn new(p: &Presentation) -> Option<Self> {
        let structure = p.detect_right_triangular()?;
        let table = structure.complete();
        Some(RightForm { presentation: p.clone(), structure, table })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn structure(&self) -> &TriangularStructure {
        &self.structure
    }

    pub fn table(&self) -> &RelationTable {
        &self.table
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    pub(crate) fn reverse(&self, w: &SignedWord, budget: &Budget, meter: &mut BudgetsUsed) -> ReversingOutcome {
        let out = right_reverse(w, &self.table, budget);
        meter.record(&out);
        out
    }
}

/// Reversing effort spent while producing a verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BudgetsUsed {
    pub reversings: usize,
    pub steps: usize,
    pub longest_run: usize,
    pub exhausted: usize,
}

impl BudgetsUsed {
    pub(crate) fn record(&mut self, out: &ReversingOutcome) {
        self.reversings += 1;
        self.steps += out.steps();
        self.longest_run = self.longest_run.max(out.steps());
        if matches!(out, ReversingOutcome::BudgetExceeded { .. }) {
            self.exhausted += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    /// Budget for each reversing run of the ceiling and quasi-central searches.
    pub budget: Budget,
    /// Budget for the `v^-1 s` check of pattern discards.
    pub discard_budget: Budget,
    pub ceiling_length: usize,
    /// Highest power of the top letter tried as a quasi-central candidate.
    pub qc_max_power: usize,
    pub period_max_len: usize,
    pub period_max_power: usize,
    /// The period must be seen this many times in the ceiling prefix.
    pub period_min_repeats: usize,
    /// Primitive words up to this length are also tried, with their powers.
    pub qc_primitive_len: usize,
    /// Word lengths with more words than this are not enumerated.
    pub qc_layer_cap: usize,
    pub qc_max_word_len: usize,
    /// Keep searching for a quasi-central element below the first one found,
    /// no longer than it.
    pub qc_minimize: bool,
    pub domination_n_max: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            budget: Budget::default(),
            discard_budget: Budget { max_steps: 2_000, max_length: 2_000, history_window: 256 },
            ceiling_length: 24,
            qc_max_power: 12,
            period_max_len: 8,
            period_max_power: 8,
            period_min_repeats: 3,
            qc_primitive_len: 8,
            qc_layer_cap: 256,
            qc_max_word_len: 32,
            qc_minimize: true,
            domination_n_max: 6,
        }
    }
}

impl AnalysisConfig {
    /// Settings used by the census.
    pub fn census() -> Self {
        AnalysisConfig {
            budget: Budget { max_steps: 50_000, max_length: 50_000, history_window: 512 },
            qc_minimize: false,
            ..AnalysisConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Status {
    RightOType,
    NotRightOType,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeilingSummary {
    /// `s_1, s_2, ...`; the ceiling word reads them from right to left.
    pub prefix: Vec<Letter>,
    pub period: Option<PositiveWord>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub ceiling: Option<CeilingSummary>,
    pub reason: Option<String>,
    pub budgets: BudgetsUsed,
}

impl Verdict {
    fn new(status: Status, certificate: Option<Certificate>, meter: BudgetsUsed) -> Self {
        Verdict { status, certificate, ceiling: None, reason: None, budgets: meter }
    }

    /// The quasi-central element, when the verdict rests on one.
    pub fn delta(&self) -> Option<&PositiveWord> {
        match &self.certificate {
            Some(Certificate::QuasiCentral { w, .. }) => Some(w),
            _ => None,
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let ceiling = self.ceiling.as_ref().map(|c| {
            let word: PositiveWord = c.prefix.iter().rev().copied().collect();
            json!({
                "word": alphabet.show_positive(&word),
                "length": c.prefix.len(),
                "period": c.period.as_ref().map(|p| alphabet.show_positive(p)),
                "complete": c.complete,
            })
        });
        json!({
            "status": self.status,
            "certificate": self.certificate.as_ref().map(|c| c.to_json(alphabet)),
            "ceiling_prefix": ceiling,
            "reason": self.reason,
            "budgets_used": self.budgets,
        })
    }
}

/// Runs the full pipeline on `p` read as a right-triangular presentation.
pub fn analyze(p: &Presentation, cfg: &AnalysisConfig) -> Verdict {
    let mut meter = BudgetsUsed::default();
    let Some(form) = RightForm::new(p) else {
        let mut v = Verdict::new(Status::Unknown, None, meter);
        v.reason = Some("presentation is not right-triangular".into());
        return v;
    };
    let chains = form.structure().chains();
    if chains.len() > 1 {
        let cert = Certificate::MultiChain { s: chains[0][0], t: chains[1][0] };
        return Verdict::new(Status::NotRightOType, Some(cert), meter);
    }
    if let Some(cert) = discard_syntactic(&form, &cfg.discard_budget, &mut meter) {
        return Verdict::new(Status::NotRightOType, Some(cert), meter);
    }

    let mut summary = None;
    let mut period = None;
    let mut note = None;
    match ceiling_prefix(&form, cfg.ceiling_length, &cfg.budget, &mut meter) {
        Ok(c) => {
            period = c.period(cfg.period_max_len, cfg.period_min_repeats);
            summary = Some(CeilingSummary {
                prefix: c.letters.clone(),
                period: period.clone(),
                complete: matches!(c.stop, CeilingStop::Reached),
            });
            if let CeilingStop::Refuted(cert) = c.stop {
                let mut v = Verdict::new(Status::NotRightOType, Some(cert), meter);
                v.ceiling = summary;
                return v;
            }
        }
        Err(e) => note = Some(e.to_string()),
    }

    let mut best: Option<(PositiveWord, Certificate)> = None;
    for w in qc_candidates(&form, period.as_ref(), cfg) {
        if let Some((b, _)) = &best {
            if w.len() > b.len() || !strictly_below(&form, &w, b, &cfg.discard_budget, &mut meter) {
                continue;
            }
        }
        match verify_quasi_central(&form, &w, &cfg.budget, &mut meter) {
            Ok(cert) => {
                best = Some((w, cert));
                if !cfg.qc_minimize {
                    break;
                }
            }
            Err(QcFailure::Obstruction(cert)) if best.is_none() => {
                let mut v = Verdict::new(Status::NotRightOType, Some(*cert), meter);
                v.ceiling = summary;
                return v;
            }
            Err(_) => {}
        }
    }
    if let Some((_, cert)) = best {
        let mut v = Verdict::new(Status::RightOType, Some(cert), meter);
        v.ceiling = summary;
        v.reason = note;
        return v;
    }

    let top = form.structure().top().expect("single chain");
    let delta = period.unwrap_or_else(|| PositiveWord::letter(top));
    let checks = form
        .alphabet()
        .letters()
        .filter(|&g| g != top)
        .map(|g| {
            let c = check_domination_bounded(
                &form,
                &delta,
                g,
                cfg.domination_n_max,
                DominationMode::Every,
                &cfg.budget,
                &mut meter,
            );
            (g, c)
        })
        .collect();
    let mut v = Verdict::new(Status::Unknown, Some(Certificate::DominationBounded { delta, checks }), meter);
    v.ceiling = summary;
    v.reason = Some(note.unwrap_or_else(|| "no certificate found within the budgets".into()));
    v
}

/// `u` is a proper left divisor of `v`.
fn strictly_below(
    form: &RightForm,
    u: &PositiveWord,
    v: &PositiveWord,
    budget: &Budget,
    meter: &mut BudgetsUsed,
) -> bool {
    match form.reverse(&SignedWord::fraction(u, v), budget, meter) {
        ReversingOutcome::Terminated { numerator, denominator, .. } => denominator.is_empty() && !numerator.is_empty(),
        _ => false,
    }
}

/// Verdicts for the presentation and for its opposite.
pub fn analyze_otype(p: &Presentation, cfg: &AnalysisConfig) -> (Verdict, Verdict) {
    (analyze(p, cfg), analyze(&p.opposite(), cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(rel: &str) -> Verdict {
        let p = Presentation::from_strs(&["a", "b"], &[rel]).unwrap();
        analyze(&p, &AnalysisConfig::default())
    }

    #[test]
    fn klein_bottle_is_ordered() {
        let v = run("a = bab");
        assert_eq!(v.status, Status::RightOType);
        let ab = Alphabet::standard(2);
        assert_eq!(ab.show_positive(v.delta().unwrap()), "aa");
    }

    #[test]
    fn tail_discard() {
        let v = run("a = ba");
        assert_eq!(v.status, Status::NotRightOType);
        assert!(matches!(v.certificate, Some(Certificate::TailDiscard { .. })));
    }

    #[test]
    fn non_triangular_is_unknown() {
        let p = Presentation::from_strs(&["a", "b", "c"], &["c = ab", "c = ba"]).unwrap();
        let v = analyze(&p, &AnalysisConfig::default());
        assert_eq!(v.status, Status::Unknown);
        assert!(v.reason.unwrap().contains("triangular"));
    }

    #[test]
    fn multi_chain_is_refuted() {
        let p = Presentation::from_strs(&["a", "b", "c"], &["a = bab"]).unwrap();
        let v = analyze(&p, &AnalysisConfig::default());
        assert_eq!(v.status, Status::NotRightOType);
        assert!(matches!(v.certificate, Some(Certificate::MultiChain { .. })));
    }

    #[test]
    fn verdict_json_shape() {
        let v = run("a = baab");
        let j = v.to_json(&Alphabet::standard(2));
        assert_eq!(j["status"], "RightOType");
        assert_eq!(j["certificate"]["kind"], "QuasiCentral");
        assert!(j["budgets_used"]["reversings"].as_u64().unwrap() > 0);
    }
}
