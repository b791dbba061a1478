//! The `subrev` command line.
//!
//! Exit codes: 0 when the question was decided, 1 when the answer is
//! unknown or a budget ran out, 2 for usage and input errors.

pub mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subrev::analysis::{
    analyze, ceiling_prefix, AnalysisConfig, BudgetsUsed, CeilingStop, Certificate, RightForm, Status, Verdict,
};
use subrev::census::{self, CensusClass};
use subrev::decision::{DecisionContext, DecisionError, WordProblem};
use subrev::families::{self, FamilyInstance};
use subrev::reversing::{left_reverse, left_reverse_traced, right_reverse, right_reverse_traced, Direction};
use subrev::{Alphabet, Budget, PositiveWord, Presentation, ReversingOutcome, SignedWord};

use render::{describe, render_trace};

/// `println!` that ignores a closed standard output.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// `print!` that ignores a closed standard output.
macro_rules! put {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser, Debug)]
#[command(name = "subrev", version, about = "Subword reversing over triangular monoid presentations")]
struct Cli {
    #[command(flatten)]
    budgets: BudgetArgs,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Steps allowed in each reversing run.
    #[arg(long, global = true, env = "SUBREV_MAX_STEPS")]
    max_steps: Option<usize>,

    /// Longest word allowed during a reversing run.
    #[arg(long, global = true, env = "SUBREV_MAX_LENGTH")]
    max_length: Option<usize>,

    /// Letters of the right ceiling to compute.
    #[arg(long, global = true, env = "SUBREV_CEILING_LEN")]
    ceiling_len: Option<usize>,

    /// Highest power tried for quasi-central candidates.
    #[arg(long, global = true, env = "SUBREV_QC_MAX_POWER")]
    qc_max_power: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self, mut b: Budget) -> Budget {
        if let Some(s) = self.max_steps {
            b.max_steps = s;
        }
        if let Some(l) = self.max_length {
            b.max_length = l;
        }
        b
    }

    fn config(&self, mut cfg: AnalysisConfig) -> AnalysisConfig {
        cfg.budget = self.budget(cfg.budget);
        if let Some(n) = self.ceiling_len {
            cfg.ceiling_length = n;
        }
        if let Some(k) = self.qc_max_power {
            cfg.qc_max_power = k;
        }
        cfg
    }
}

#[derive(Args, Debug)]
struct Source {
    /// Presentation file, `-` for standard input.
    #[arg(short = 'f', long = "file")]
    file: PathBuf,
}

#[derive(Args, Debug)]
struct Query {
    #[command(flatten)]
    source: Source,

    /// Signed word such as "b^-1 a" or "a^-2 b a^2".
    #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
    word: String,

    /// Run even when the presentation is not certified.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Right,
    Left,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation and report its triangular structure.
    Parse {
        #[command(flatten)]
        source: Source,
    },
    /// Decide right-O-type and left-O-type, with certificates.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "both")]
        side: Side,
    },
    /// Reverse a signed word.
    Reverse {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
        word: String,
        /// Left reversing instead of right reversing.
        #[arg(long)]
        left: bool,
        /// Write one JSON line per step to this file, `-` for standard output.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Print the steps with the reversed subword in brackets.
        #[arg(long)]
        render: bool,
    },
    /// Sign of a word in the group ordering.
    Sign(Query),
    /// Whether a word represents 1.
    Wp(Query),
    /// Left fraction equal to a word.
    Fraction(Query),
    /// Final fragment of the right ceiling.
    Ceiling {
        #[command(flatten)]
        source: Source,
    },
    /// Instances of the built-in families, or the whole catalog.
    Family {
        /// Catalog id or constructor call, e.g. `klein_bottle`, `torus_knot(2,1,2)`, `chain(1,2,1,1)`.
        id: Option<String>,
        /// Write the text here and the expectations to the same path with `.json` appended.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every presentation (a, b; a = bw) with |w| up to a bound.
    Census {
        #[arg(long, default_value_t = 9)]
        max_len: usize,
        /// JSON-lines report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary as JSON.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Summary as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Undecided(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Undecided(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Undecided(m) => f.write_str(m),
        }
    }
}

type Exit = Result<i32, Failure>;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("subrev: {f}");
            f.code()
        }
    }
}

fn execute(cli: &Cli) -> Exit {
    let b = &cli.budgets;
    match &cli.command {
        Command::Parse { source } => parse_cmd(&load(source)?, cli.json),
        Command::Analyze { source, side } => {
            analyze_cmd(&load(source)?, *side, &b.config(AnalysisConfig::default()), cli.json)
        }
        Command::Reverse { source, word, left, trace, render } => {
            let p = load(source)?;
            let w = signed(&p, word)?;
            reverse_cmd(&p, &w, *left, trace.as_deref(), *render, &b.budget(Budget::default()), cli.json)
        }
        Command::Sign(q) => decide(q, Decision::Sign, b, cli.json),
        Command::Wp(q) => decide(q, Decision::Wp, b, cli.json),
        Command::Fraction(q) => decide(q, Decision::Fraction, b, cli.json),
        Command::Ceiling { source } => ceiling_cmd(&load(source)?, &b.config(AnalysisConfig::default()), cli.json),
        Command::Family { id, out } => family_cmd(id.as_deref(), out.as_deref(), cli.json),
        Command::Census { max_len, out, summary, csv, workers } => {
            let cfg = b.config(AnalysisConfig::census());
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            census_cmd(*max_len, &cfg, workers, [out, summary, csv], cli.json)
        }
    }
}

fn load(source: &Source) -> Result<Presentation, Failure> {
    let path = &source.file;
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    Presentation::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn signed(p: &Presentation, text: &str) -> Result<SignedWord, Failure> {
    p.alphabet().parse_signed(text).map_err(|e| Failure::Usage(format!("word {text:?}: {e}")))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn parse_cmd(p: &Presentation, as_json: bool) -> Exit {
    let ab = p.alphabet();
    let chains = |s: Option<subrev::TriangularStructure>| -> Option<Vec<Vec<String>>> {
        s.map(|s| s.chains().iter().map(|c| c.iter().map(|&l| ab.name(l).to_string()).collect()).collect())
    };
    let right = chains(p.detect_right_triangular());
    let left = chains(p.detect_left_triangular());
    if as_json {
        print_json(&json!({
            "presentation": p.display(),
            "generators": ab.names(),
            "relations": p.relations().len(),
            "right_triangular": right.as_ref().map(|c| json!({"chains": c})),
            "left_triangular": left.as_ref().map(|c| json!({"chains": c})),
        }));
    } else {
        say!("{}", p.display());
        let shape = |c: &Option<Vec<Vec<String>>>| match c {
            None => "no".to_string(),
            Some(c) => {
                let cs: Vec<String> = c.iter().map(|x| x.join(" > ")).collect();
                format!("chains {}", cs.join(", "))
            }
        };
        say!("right-triangular: {}", shape(&right));
        say!("left-triangular: {}", shape(&left));
    }
    Ok(0)
}

fn status_text(s: Status, left: bool) -> &'static str {
    match (s, left) {
        (Status::RightOType, false) => "right-O-type",
        (Status::RightOType, true) => "left-O-type",
        (Status::NotRightOType, false) => "not right-O-type",
        (Status::NotRightOType, true) => "not left-O-type",
        (Status::Unknown, _) => "unknown",
    }
}

/// Left verdicts are computed on the opposite presentation; positive words
/// that name elements are mirrored back.
fn verdict_text(v: &Verdict, ab: &Alphabet, left: bool) -> String {
    let show = |w: &PositiveWord| ab.show_positive(&if left { w.mirror() } else { w.clone() });
    let opp = if left { " (opposite presentation)" } else { "" };
    let detail = match &v.certificate {
        Some(Certificate::QuasiCentral { w, images }) => {
            let phi: Vec<String> =
                images.iter().enumerate().map(|(g, img)| format!("{} -> {}", ab.names()[g], show(img))).collect();
            format!("quasi-central delta = {}, phi: {}", show(w), phi.join(", "))
        }
        Some(c @ (Certificate::TailDiscard { .. } | Certificate::PatternDiscard { .. })) => {
            format!("{} on {}{opp}", c.kind(), c.to_json(ab)["relation"].as_str().unwrap_or(""))
        }
        Some(Certificate::CycleWitness { start, cycle, .. }) => {
            format!("reversing {} cycles with period {}{opp}", ab.show_signed(start), cycle.period_steps)
        }
        Some(Certificate::MultiChain { s, t }) => {
            format!("{} and {} lie in different chains", ab.name(*s), ab.name(*t))
        }
        Some(Certificate::DominationBounded { delta, .. }) => {
            format!("bounded domination evidence for {} only", show(delta))
        }
        Some(Certificate::DominationCertified { delta, m, .. }) => {
            format!("{} dominates, with power {m} quasi-central", show(delta))
        }
        None => String::new(),
    };
    let reason = match (&v.reason, v.status) {
        (Some(r), Status::Unknown) => format!(" ({r})"),
        _ => String::new(),
    };
    if detail.is_empty() {
        format!("{}{reason}", status_text(v.status, left))
    } else {
        format!("{}, {detail}{reason}", status_text(v.status, left))
    }
}

fn analyze_cmd(p: &Presentation, side: Side, cfg: &AnalysisConfig, as_json: bool) -> Exit {
    let ab = p.alphabet();
    let right = matches!(side, Side::Right | Side::Both).then(|| analyze(p, cfg));
    let left = matches!(side, Side::Left | Side::Both).then(|| analyze(&p.opposite(), cfg));
    let o_type = match (&right, &left) {
        (Some(r), Some(l)) => match (r.status, l.status) {
            (Status::RightOType, Status::RightOType) => Some(true),
            (Status::NotRightOType, _) | (_, Status::NotRightOType) => Some(false),
            _ => None,
        },
        _ => None,
    };
    if as_json {
        print_json(&json!({
            "presentation": p.display(),
            "right": right.as_ref().map(|v| v.to_json(ab)),
            "left": left.as_ref().map(|v| v.to_json(ab)),
            "o_type": o_type,
        }));
    } else {
        say!("{}", p.display());
        if let Some(v) = &right {
            say!("right: {}", verdict_text(v, ab, false));
        }
        if let Some(v) = &left {
            say!("left: {}", verdict_text(v, ab, true));
        }
        if matches!(side, Side::Both) {
            let o = match o_type {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unknown",
            };
            say!("O-type: {o}");
        }
    }
    let unknown = right.iter().chain(&left).any(|v| v.status == Status::Unknown);
    Ok(if unknown { 1 } else { 0 })
}

fn outcome_json(o: &ReversingOutcome, ab: &Alphabet) -> Value {
    let show = |w: &PositiveWord| ab.show_positive(w);
    match o {
        ReversingOutcome::Terminated { numerator, denominator, steps } => json!({
            "outcome": "terminated",
            "steps": steps,
            "numerator": show(numerator),
            "denominator": show(denominator),
        }),
        ReversingOutcome::Stuck { position, pair, steps, word } => json!({
            "outcome": "stuck",
            "steps": steps,
            "position": position,
            "pair": [ab.name(pair.0), ab.name(pair.1)],
            "word": ab.show_signed(word),
        }),
        ReversingOutcome::Cycle(c) => json!({
            "outcome": "cycle",
            "steps": c.detected_step,
            "first_step": c.earlier_step,
            "period": c.period_steps,
            "recurring": ab.show_signed(&c.recurring),
            "flanks": [show(&c.flank_left), show(&c.flank_right)],
            "context": [ab.show_signed(&c.outer_left), ab.show_signed(&c.outer_right)],
        }),
        ReversingOutcome::BudgetExceeded { steps, length, last_word } => json!({
            "outcome": "budget_exceeded",
            "steps": steps,
            "length": length,
            "last_word": ab.show_signed(last_word),
        }),
    }
}

fn reverse_cmd(
    p: &Presentation,
    w: &SignedWord,
    left: bool,
    trace_path: Option<&Path>,
    render: bool,
    budget: &Budget,
    as_json: bool,
) -> Exit {
    let ab = p.alphabet();
    let structure = if left { p.detect_left_triangular() } else { p.detect_right_triangular() };
    let side = if left { "left" } else { "right" };
    let table = structure.ok_or_else(|| Failure::Usage(format!("presentation is not {side}-triangular")))?.complete();
    let direction = if left { Direction::Left } else { Direction::Right };
    let (outcome, trace) = if trace_path.is_some() || render {
        let (o, t) =
            if left { left_reverse_traced(w, &table, budget) } else { right_reverse_traced(w, &table, budget) };
        (o, Some(t))
    } else if left {
        (left_reverse(w, &table, budget), None)
    } else {
        (right_reverse(w, &table, budget), None)
    };
    if let (Some(path), Some(t)) = (trace_path, &trace) {
        if path.as_os_str() == "-" {
            put!("{}", t.to_jsonl(ab));
        } else {
            write(path, &t.to_jsonl(ab))?;
        }
    }
    if as_json {
        print_json(&outcome_json(&outcome, ab));
    } else if let (true, Some(t)) = (render, &trace) {
        put!("{}", render_trace(t, ab, Some(&outcome)));
    } else {
        say!("{}", describe(&outcome, ab, direction));
    }
    Ok(if matches!(outcome, ReversingOutcome::BudgetExceeded { .. }) { 1 } else { 0 })
}

#[derive(Clone, Copy)]
enum Decision {
    Sign,
    Wp,
    Fraction,
}

fn decision_failure(e: DecisionError) -> Failure {
    match e {
        DecisionError::NotRightTriangular | DecisionError::NotLeftTriangular => Failure::Usage(e.to_string()),
        DecisionError::PreconditionUnverified(_) => Failure::Undecided(format!("{e} (use --force to query anyway)")),
        _ => Failure::Undecided(e.to_string()),
    }
}

fn decide(q: &Query, what: Decision, b: &BudgetArgs, as_json: bool) -> Exit {
    let p = load(&q.source)?;
    let w = signed(&p, &q.word)?;
    let ab = p.alphabet();
    let budget = b.budget(Budget::default());
    let ctx = if q.force {
        DecisionContext::forced(&p)
    } else {
        DecisionContext::certified(&p, &b.config(AnalysisConfig::default()))
    }
    .map_err(decision_failure)?;
    let checked = !q.force;
    let certified = match what {
        Decision::Wp => ctx.is_right_certified(),
        _ => ctx.is_otype_certified(),
    };
    if q.force && !certified {
        eprintln!("subrev: warning: presentation not certified, answer rests on termination only");
    }
    match what {
        Decision::Sign => {
            let s = if checked { ctx.order_sign_checked(&w, &budget) } else { ctx.order_sign(&w, &budget) }
                .map_err(decision_failure)?;
            if as_json {
                print_json(&json!({
                    "sign": s.sign,
                    "relation": s.sign.relation(),
                    "witness": ab.show_positive(&s.witness),
                    "certified": s.certified,
                }));
            } else {
                say!("{}", s.sign.relation());
            }
        }
        Decision::Wp => {
            let r = if checked { ctx.word_problem_checked(&w, &budget) } else { ctx.word_problem(&w, &budget) }
                .map_err(decision_failure)?;
            if as_json {
                print_json(&json!({"result": r, "certified": certified}));
            } else {
                say!("{}", if r == WordProblem::Equal1 { "= 1" } else { "!= 1" });
            }
        }
        Decision::Fraction => {
            if checked && !ctx.is_otype_certified() {
                return Err(decision_failure(DecisionError::PreconditionUnverified(
                    "both sides must be certified of right-O-type".into(),
                )));
            }
            let f = ctx.fraction_normal_form(&w, &budget).map_err(decision_failure)?;
            if as_json {
                print_json(&json!({
                    "numerator": ab.show_positive(&f.numerator),
                    "denominator": ab.show_positive(&f.denominator),
                    "orientation": f.orientation,
                    "certified": certified,
                }));
            } else {
                say!("({})^-1 ({})", ab.show_positive(&f.denominator), ab.show_positive(&f.numerator));
            }
        }
    }
    Ok(0)
}

fn ceiling_cmd(p: &Presentation, cfg: &AnalysisConfig, as_json: bool) -> Exit {
    let ab = p.alphabet();
    let form = RightForm::new(p).ok_or_else(|| Failure::Usage("presentation is not right-triangular".into()))?;
    let mut meter = BudgetsUsed::default();
    let c = ceiling_prefix(&form, cfg.ceiling_length, &cfg.budget, &mut meter)
        .map_err(|e| Failure::Undecided(e.to_string()))?;
    let period = c.period(cfg.period_max_len, cfg.period_min_repeats);
    let (stop, code) = match &c.stop {
        CeilingStop::Reached => ("reached".to_string(), 0),
        CeilingStop::Refuted(cert) => (format!("refuted by {}", cert.kind()), 0),
        CeilingStop::Budget(o) => (format!("stopped: {}", describe(o, ab, Direction::Right)), 1),
    };
    if as_json {
        print_json(&json!({
            "word": ab.show_positive(&c.word()),
            "length": c.letters.len(),
            "period": period.as_ref().map(|w| ab.show_positive(w)),
            "stop": stop,
            "certificate": match &c.stop {
                CeilingStop::Refuted(cert) => Some(cert.to_json(ab)),
                _ => None,
            },
        }));
    } else {
        say!("ceiling: ...{} ({} letters, {stop})", ab.show_positive(&c.word()), c.letters.len());
        match &period {
            Some(w) => say!("period: {}", ab.show_positive(w)),
            None => say!("period: none found"),
        }
    }
    Ok(code)
}

/// `name(p1,p2,...)` for the parametrised families.
fn construct(id: &str) -> Option<Result<FamilyInstance, Failure>> {
    let (name, rest) = id.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    let params: Result<Vec<usize>, _> =
        inner.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse::<usize>()).collect();
    let Ok(ps) = params else {
        return Some(Err(Failure::Usage(format!("bad parameters in {id:?}"))));
    };
    let arity = |n: usize| -> Result<(), Failure> {
        if ps.len() == n {
            Ok(())
        } else {
            Err(Failure::Usage(format!("{name} takes {n} parameters")))
        }
    };
    let built = match name.trim() {
        "torus_knot" => arity(3).and_then(|_| families::torus_knot(ps[0], ps[1], ps[2]).map_err(family_failure)),
        "three_gen" => arity(4).and_then(|_| families::three_gen(ps[0], ps[1], ps[2], ps[3]).map_err(family_failure)),
        "split" | "split_family" => {
            arity(3).and_then(|_| families::split_family(ps[0], ps[1], ps[2]).map_err(family_failure))
        }
        "chain" | "chain_family" => {
            if ps.len() % 2 == 1 {
                Err(Failure::Usage("chain takes the m exponents followed by as many n exponents".into()))
            } else {
                let (m, n) = ps.split_at(ps.len() / 2);
                families::chain_family(m, n).map_err(family_failure)
            }
        }
        _ => return None,
    };
    Some(built)
}

fn family_failure(e: families::FamilyError) -> Failure {
    Failure::Usage(e.to_string())
}

fn family_cmd(id: Option<&str>, out: Option<&Path>, as_json: bool) -> Exit {
    let instances = match id {
        None => families::fixture_catalog(),
        Some(id) => {
            let found = match construct(id) {
                Some(r) => r?,
                None => families::fixture_catalog()
                    .into_iter()
                    .find(|i| i.id() == id)
                    .ok_or_else(|| Failure::Usage(format!("no family instance {id:?}")))?,
            };
            vec![found]
        }
    };
    let text = families::catalog_text(&instances);
    let data = families::catalog_json(&instances);
    match out {
        Some(path) => {
            let mut sidecar = path.as_os_str().to_owned();
            sidecar.push(".json");
            let sidecar = PathBuf::from(sidecar);
            write(path, &text)?;
            write(&sidecar, &(serde_json::to_string_pretty(&data).expect("json") + "\n"))?;
            eprintln!("wrote {} instances to {} and {}", instances.len(), path.display(), sidecar.display());
        }
        None if as_json => print_json(&data),
        None => put!("{text}"),
    }
    Ok(0)
}

fn census_cmd(
    max_len: usize,
    cfg: &AnalysisConfig,
    workers: usize,
    outputs: [&Option<PathBuf>; 3],
    as_json: bool,
) -> Exit {
    let report = census::run(max_len, cfg, workers);
    let [out, summary, csv] = outputs;
    if let Some(path) = out {
        write(path, &report.to_jsonl())?;
    }
    if let Some(path) = summary {
        write(path, &(serde_json::to_string_pretty(&report.summary_json()).expect("json") + "\n"))?;
    }
    if let Some(path) = csv {
        write(path, &report.summary_csv())?;
    }
    if as_json {
        print_json(&report.summary_json());
    } else {
        say!("{}", report.summary_line());
    }
    Ok(if report.count(CensusClass::Unknown) > 0 { 1 } else { 0 })
}
