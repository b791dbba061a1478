#![allow(dead_code)]

pub mod oracle;
pub mod props;

use subrev::analysis::{
    analyze, ceiling_prefix, verify_certificate, verify_quasi_central, AnalysisConfig, BudgetsUsed, Certificate,
    DominationCheck, RightForm, Status, Verdict,
};
use subrev::families::FamilyInstance;
use subrev::reversing::{left_reverse_steps, right_reverse, right_reverse_steps, Direction};
use subrev::{Budget, Letter, PositiveWord, Presentation, RelationTable, ReversingOutcome, SignedWord};

pub fn table(p: &Presentation) -> RelationTable {
    p.detect_right_triangular().expect("right-triangular").complete()
}

/// `[u] = [v]` in the monoid, decided by reversing `u^-1 v`.
pub fn equal(t: &RelationTable, u: &PositiveWord, v: &PositiveWord) -> Option<bool> {
    match right_reverse(&SignedWord::fraction(u, v), t, &Budget::default()) {
        ReversingOutcome::Terminated { numerator, denominator, .. } => {
            Some(numerator.is_empty() && denominator.is_empty())
        }
        _ => None,
    }
}

/// `u` left-divides `v`.
pub fn divides(t: &RelationTable, u: &PositiveWord, v: &PositiveWord) -> bool {
    matches!(
        right_reverse(&SignedWord::fraction(u, v), t, &Budget::default()),
        ReversingOutcome::Terminated { ref denominator, .. } if denominator.is_empty()
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMatch {
    Same,
    /// The certified element is a proper left divisor of the expected one.
    Smaller,
    /// Both elements are quasi-central and neither divides the other.
    Alternative,
    /// The expected element is refuted by reversing.
    ExpectedRefuted,
    Mismatch,
}

#[derive(Debug, Default)]
pub struct InstanceReport {
    pub id: String,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub delta: Option<DeltaMatch>,
    pub certificates: usize,
    pub unknown: bool,
}

impl InstanceReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn images_of(form: &RightForm, d: &PositiveWord) -> Result<Vec<PositiveWord>, String> {
    match verify_quasi_central(form, d, &Budget::default(), &mut BudgetsUsed::default()) {
        Ok(Certificate::QuasiCentral { images, .. }) => Ok(images),
        Ok(other) => Err(format!("unexpected certificate {}", other.kind())),
        Err(e) => Err(format!("{e:?}")),
    }
}

fn check_images(
    rep: &mut InstanceReport,
    t: &RelationTable,
    side: &str,
    images: &[PositiveWord],
    expected: &[(Letter, PositiveWord)],
    mirror: bool,
) {
    for (g, w) in expected {
        let w = if mirror { w.mirror() } else { w.clone() };
        if equal(t, &images[g.index()], &w) != Some(true) {
            rep.failures.push(format!("{side} image of generator {} differs", g.index()));
        }
    }
}

fn status_of(side: &str, v: &Verdict, want: Option<Status>, kind: Option<&str>, rep: &mut InstanceReport) {
    if let Some(want) = want {
        if v.status != want {
            if v.status == Status::Unknown && want == Status::RightOType && dominated(v) {
                rep.unknown = true;
                rep.notes.push(format!("{side}: unresolved, bounded domination holds"));
            } else {
                rep.failures.push(format!("{side}: expected {want:?}, got {:?}", v.status));
            }
        }
    }
    if let (Some(k), Some(c)) = (kind, v.certificate.as_ref()) {
        if c.kind() != k {
            rep.failures.push(format!("{side}: expected {k}, got {}", c.kind()));
        }
    }
}

fn dominated(v: &Verdict) -> bool {
    match &v.certificate {
        Some(Certificate::DominationBounded { checks, .. }) => {
            checks.iter().all(|(_, c)| matches!(c, DominationCheck::HoldsUpTo(_)))
        }
        _ => false,
    }
}

/// Runs the analyzer on both sides of `inst` and compares with its expectations.
pub fn check_instance(inst: &FamilyInstance, cfg: &AnalysisConfig) -> InstanceReport {
    let mut rep = InstanceReport { id: inst.id(), ..InstanceReport::default() };
    let p = &inst.presentation;
    let e = &inst.expected;
    if p.detect_right_triangular().is_some() != e.triangular {
        rep.failures.push("triangularity".into());
        return rep;
    }
    if !e.triangular {
        if analyze(p, cfg).status != Status::Unknown {
            rep.failures.push("non-triangular presentation got a verdict".into());
        }
        return rep;
    }
    let opp = p.opposite();
    let right = analyze(p, cfg);
    let left = analyze(&opp, cfg);
    status_of("right", &right, e.right, e.right_kind, &mut rep);
    status_of("left", &left, e.left, e.left_kind, &mut rep);

    for (pres, v) in [(p, &right), (&opp, &left)] {
        if let Some(c) = v.certificate.as_ref().filter(|c| c.is_proof()) {
            rep.certificates += 1;
            if let Err(err) = verify_certificate(pres, c, &Budget::default()) {
                rep.failures.push(format!("certificate {} does not replay: {err}", c.kind()));
            }
        }
    }

    let form = RightForm::new(p).expect("triangular");
    let t = form.table().clone();
    if let Some(d) = &e.delta {
        let printed = images_of(&form, d);
        let found = right.delta();
        rep.delta = Some(match (found, &printed) {
            (Some(f), _) if equal(&t, f, d) == Some(true) => DeltaMatch::Same,
            (_, Err(_)) => DeltaMatch::ExpectedRefuted,
            (Some(f), Ok(_)) if divides(&t, f, d) => DeltaMatch::Smaller,
            (Some(f), Ok(_)) if f.len() <= d.len() => DeltaMatch::Alternative,
            (None, Ok(_)) if right.status != Status::RightOType => DeltaMatch::Same,
            _ => DeltaMatch::Mismatch,
        });
        match &printed {
            Ok(images) => {
                if e.central {
                    let central = images
                        .iter()
                        .enumerate()
                        .all(|(g, w)| equal(&t, w, &PositiveWord::letter(Letter::new(g as u16))) == Some(true));
                    if !central {
                        rep.failures.push("expected element is not central".into());
                    }
                }
                check_images(&mut rep, &t, "right", images, &e.phi, false);
            }
            Err(err) => rep.notes.push(format!("expected element refuted: {err}")),
        }
        if rep.delta == Some(DeltaMatch::Mismatch) {
            let shown = found.map(|f| p.alphabet().show_positive(f)).unwrap_or_default();
            rep.failures.push(format!("distinguished element differs: {shown}"));
        }
    }
    if let Some(d) = &e.left_delta {
        let oform = RightForm::new(&opp).expect("left-triangular");
        match images_of(&oform, &d.mirror()) {
            Ok(images) => check_images(&mut rep, oform.table(), "left", &images, &e.left_phi, true),
            Err(err) => rep.failures.push(format!("left element refuted: {err}")),
        }
    }
    for c in &e.cycles {
        let base = if c.opposite { opp.clone() } else { p.clone() };
        let got = match c.direction {
            Direction::Right => right_reverse_steps(&c.u, &table(&base), c.period),
            Direction::Left => left_reverse_steps(&c.u, &table(&base.opposite()), c.period),
        };
        if got.ok() != Some(c.target()) {
            rep.failures.push(format!("cycle witness of period {} does not close", c.period));
        }
    }
    if let Some(period) = &e.ceiling_period {
        let mut meter = BudgetsUsed::default();
        let got = ceiling_prefix(&form, cfg.ceiling_length, &cfg.budget, &mut meter)
            .ok()
            .and_then(|c| c.period(cfg.period_max_len, cfg.period_min_repeats));
        if got.as_ref() != Some(period) {
            rep.failures.push("ceiling period differs".into());
        }
    }
    rep
}
