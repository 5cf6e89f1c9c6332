//! Run configuration, report assembly, and serialization to json/csv/text.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atpg::{BoundReport, Resolution, UnionSet, Verification};
use crate::circuit::{AndExorNetwork, PprmFunction, ReversibleCircuit};
use crate::fault::{out_of_model_pairs, BridgingFault, FaultCounts, FaultList, OutOfModel};
use crate::pattern::{DcPolicy, Origin, PatternError, TestPattern};
use crate::sim::{Coverage, CoverageSummary, StimulationMask, Verdict, DEFAULT_ORACLE_CAP};
use crate::worked_example::FixtureNotes;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Parse,
    Pprm,
    Faults,
    Atpg,
    Simulate,
    Verify,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("oracle cap must be at least 1")]
    OracleCap,
    #[error("no test sets selected")]
    EmptySelector,
    #[error("simulate needs a test-set file")]
    MissingTests,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    pub tests: Option<PathBuf>,
    pub sets: Vec<Origin>,
    pub dc_policy: DcPolicy,
    pub oracle_cap: usize,
    pub fallback: bool,
    pub dedup: bool,
    pub include_aux: bool,
    pub out_of_model: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Emit an ISO-8601 generation time in the report.
    pub timestamp: bool,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input: input.into(),
            tests: None,
            sets: Origin::GENERATED.to_vec(),
            dc_policy: DcPolicy::default(),
            oracle_cap: DEFAULT_ORACLE_CAP,
            fallback: true,
            dedup: false,
            include_aux: false,
            out_of_model: false,
            format: Format::Json,
            out: None,
            timestamp: true,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.oracle_cap == 0 {
            return Err(ConfigError::OracleCap);
        }
        if matches!(self.command, Command::Atpg | Command::Verify) && self.sets.is_empty() {
            return Err(ConfigError::EmptySelector);
        }
        if self.command == Command::Simulate && self.tests.is_none() {
            return Err(ConfigError::MissingTests);
        }
        Ok(())
    }

    pub fn atpg_options(&self) -> crate::atpg::AtpgOptions {
        crate::atpg::AtpgOptions {
            sets: self.sets.clone(),
            policy: self.dc_policy,
            include_aux: self.include_aux,
            fallback: self.fallback,
            dedup: self.dedup,
            oracle_cap: self.oracle_cap,
        }
    }
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    /// An in-model fault is Undetected or a stimulation mask is incomplete.
    CoverageFailure = 1,
    Usage = 2,
    Parse = 3,
    Io = 4,
    /// No fault is Undetected but some could not be decided.
    Unresolved = 5,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of(coverage: &Coverage) -> Self {
        let s = coverage.summary();
        if s.undetected > 0 || !coverage.masks_full() {
            ExitStatus::CoverageFailure
        } else if s.unresolved > 0 {
            ExitStatus::Unresolved
        } else {
            ExitStatus::Ok
        }
    }
}

// ---------------------------------------------------------------------------
// Report model

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub input: String,
    pub tests: Option<String>,
    pub sets: Vec<Origin>,
    pub dc_policy: DcPolicy,
    pub oracle_cap: usize,
    pub fallback: bool,
    pub dedup: bool,
    pub include_aux: bool,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        Self {
            input: c.input.display().to_string(),
            tests: c.tests.as_ref().map(|p| p.display().to_string()),
            sets: c.sets.clone(),
            dc_policy: c.dc_policy,
            oracle_cap: c.oracle_cap,
            fallback: c.fallback,
            dedup: c.dedup,
            include_aux: c.include_aux,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitSummary {
    pub name: String,
    pub n: usize,
    pub p: usize,
    pub d: usize,
    /// One-based index of the constant-one line, when normalization added one.
    pub aux: Option<String>,
}

impl From<&ReversibleCircuit> for CircuitSummary {
    fn from(c: &ReversibleCircuit) -> Self {
        Self {
            name: c.name.clone(),
            n: c.n(),
            p: c.p(),
            d: c.d(),
            aux: c.aux_line().map(|i| format!("x{}", i + 1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub index: usize,
    pub origin: Origin,
    pub c: String,
    pub x: String,
}

impl PatternRecord {
    fn of(index: usize, t: &TestPattern) -> Self {
        Self { index, origin: t.origin, c: t.c_string(), x: t.x_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetSummary {
    pub name: Origin,
    pub size: usize,
    pub patterns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionSummary {
    pub size: usize,
    pub construction_size: usize,
    pub fallback_size: usize,
    pub pre_dedup_size: usize,
    pub deduped: bool,
    pub patterns: Vec<PatternRecord>,
}

impl From<&UnionSet> for UnionSummary {
    fn from(u: &UnionSet) -> Self {
        Self {
            size: u.patterns.len(),
            construction_size: u.construction_size,
            fallback_size: u.fallback_size,
            pre_dedup_size: u.pre_dedup_size,
            deduped: u.deduped,
            patterns: u.patterns.iter().enumerate().map(|(k, t)| PatternRecord::of(k, t)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairResidual {
    pub set: Origin,
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaultRecord {
    pub index: usize,
    pub class: String,
    pub net1: String,
    pub net2: String,
    pub polarity: Option<String>,
    pub verdict: Option<&'static str>,
    pub pattern: Option<usize>,
    pub method: Option<&'static str>,
}

impl FaultRecord {
    fn of(index: usize, f: &BridgingFault, verdict: Option<&Verdict>) -> Self {
        let (net1, net2) = f.labels();
        let (pattern, method) = match verdict {
            Some(Verdict::Detected { pattern }) => (Some(*pattern), None),
            Some(Verdict::Redundant { .. }) => (None, Some("exhaustive")),
            _ => (None, None),
        };
        Self {
            index,
            class: f.class().to_string(),
            net1,
            net2,
            polarity: f.polarity().map(|p| p.to_string()),
            verdict: verdict.map(Verdict::name),
            pattern,
            method,
        }
    }

    /// Pattern index for Detected faults, proof method for Redundant ones.
    fn evidence(&self) -> String {
        match (self.pattern, self.method) {
            (Some(k), _) => k.to_string(),
            (None, Some(m)) => m.to_string(),
            _ => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskRecord {
    pub gate: String,
    /// Seen combinations, in `00 01 10 11` order.
    pub seen: String,
    pub completed_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StimulationSummary {
    pub gates: usize,
    pub full: usize,
    pub masks: Vec<MaskRecord>,
}

fn stimulation_summary(masks: &[StimulationMask]) -> StimulationSummary {
    let records = masks
        .iter()
        .enumerate()
        .map(|(g, m)| MaskRecord {
            gate: format!("g{}", g + 1),
            seen: [(false, false), (false, true), (true, false), (true, true)]
                .iter()
                .map(|&(l, r)| if m.has(l, r) { '1' } else { '0' })
                .collect(),
            completed_at: m.completed_at,
        })
        .collect();
    StimulationSummary { gates: masks.len(), full: masks.iter().filter(|m| m.is_full()).count(), masks: records }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FallbackSummary {
    pub patterns: usize,
    pub witnesses: usize,
    pub redundant: usize,
    pub unresolved: usize,
}

/// Report of a `simulate` or `verify` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub sets: Vec<SetSummary>,
    pub union: Option<UnionSummary>,
    pub bound: Option<BoundReport>,
    pub fallback: Option<FallbackSummary>,
    pub residual_pairs: Vec<PairResidual>,
    pub fault_counts: FaultCounts,
    pub summary: CoverageSummary,
    pub stimulation: StimulationSummary,
    /// Indices of Undetected and Unresolved faults.
    pub failing: Vec<usize>,
    pub faults: Vec<FaultRecord>,
    pub fixture_notes: Option<FixtureNotes>,
    pub out_of_model: Option<OutOfModel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GateRecord {
    pub gate: String,
    pub target: String,
    pub controls: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionRecord {
    pub output: String,
    pub expression: String,
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Body {
    Parse {
        gates: Vec<GateRecord>,
        text: String,
    },
    Pprm {
        functions: Vec<FunctionRecord>,
    },
    Faults {
        fault_counts: FaultCounts,
        faults: Vec<FaultRecord>,
        out_of_model: Option<OutOfModel>,
    },
    Atpg {
        sets: Vec<SetSummary>,
        union: UnionSummary,
        bound: BoundReport,
        fallback: FallbackSummary,
        residual_pairs: Vec<PairResidual>,
    },
    Coverage(Box<CoverageReport>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: Command,
    pub generated_at: Option<String>,
    pub config: ConfigEcho,
    pub circuit: CircuitSummary,
    #[serde(flatten)]
    pub body: Body,
}

impl Report {
    pub fn new(config: &RunConfig, circuit: &ReversibleCircuit, body: Body) -> Self {
        let generated_at = config
            .timestamp
            .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        Self {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: TOOL_NAME, version: TOOL_VERSION },
            command: config.command,
            generated_at,
            config: config.into(),
            circuit: circuit.into(),
            body,
        }
    }
}

// ---------------------------------------------------------------------------
// Body builders

fn var(i: usize) -> String {
    format!("x{}", i + 1)
}

pub fn parse_body(circuit: &ReversibleCircuit) -> Body {
    let gates = circuit
        .gates()
        .iter()
        .map(|g| GateRecord {
            gate: format!("g{}", g.id + 1),
            target: format!("c{}", g.target + 1),
            controls: g.controls.iter().map(|&i| var(i)).collect(),
        })
        .collect();
    Body::Parse { gates, text: circuit.to_string() }
}

pub fn pprm_body(pprms: &[PprmFunction]) -> Body {
    let functions = pprms
        .iter()
        .map(|f| FunctionRecord {
            output: format!("f{}", f.output + 1),
            expression: f.to_string(),
            terms: f.canonical.iter().map(|t| t.iter().map(|&i| var(i)).collect()).collect(),
        })
        .collect();
    Body::Pprm { functions }
}

pub fn faults_body(net: &AndExorNetwork, faults: &FaultList, out_of_model: bool) -> Body {
    Body::Faults {
        fault_counts: faults.counts(),
        faults: faults.faults.iter().enumerate().map(|(k, f)| FaultRecord::of(k, f, None)).collect(),
        out_of_model: out_of_model.then(|| out_of_model_pairs(net)),
    }
}

fn set_summaries(v: &Verification) -> Vec<SetSummary> {
    v.generated
        .sets
        .iter()
        .map(|s| SetSummary { name: s.origin, size: s.len(), patterns: s.patterns.iter().map(|t| t.to_string()).collect() })
        .collect()
}

fn residual_pairs(v: &Verification) -> Vec<PairResidual> {
    [(Origin::T2, &v.generated.t2), (Origin::T3, &v.generated.t3)]
        .into_iter()
        .filter_map(|(set, ps)| {
            let ps = ps.as_ref()?;
            Some(PairResidual { set, pairs: ps.uncovered.iter().map(|&(i, j)| (var(i), var(j))).collect() })
        })
        .collect()
}

fn fallback_summary(v: &Verification) -> FallbackSummary {
    let r = &v.fallback.resolutions;
    let count = |want: fn(&Resolution) -> bool| r.iter().filter(|(_, res)| want(res)).count();
    FallbackSummary {
        patterns: v.fallback.patterns.len(),
        witnesses: count(|r| matches!(r, Resolution::Witness(_))),
        redundant: count(|r| matches!(r, Resolution::Redundant)),
        unresolved: count(|r| matches!(r, Resolution::Unresolved)),
    }
}

pub fn atpg_body(v: &Verification) -> Body {
    Body::Atpg {
        sets: set_summaries(v),
        union: (&v.union).into(),
        bound: v.bound.clone(),
        fallback: fallback_summary(v),
        residual_pairs: residual_pairs(v),
    }
}

fn coverage_core(net: &AndExorNetwork, faults: &FaultList, coverage: &Coverage, out_of_model: bool) -> CoverageReport {
    let failing = coverage
        .verdicts
        .iter()
        .enumerate()
        .filter(|(_, v)| matches!(v, Verdict::Undetected | Verdict::Unresolved))
        .map(|(k, _)| k)
        .collect();
    CoverageReport {
        sets: Vec::new(),
        union: None,
        bound: None,
        fallback: None,
        residual_pairs: Vec::new(),
        fault_counts: faults.counts(),
        summary: coverage.summary(),
        stimulation: stimulation_summary(&coverage.masks),
        failing,
        faults: coverage.faults.iter().zip(&coverage.verdicts).enumerate().map(|(k, (f, v))| FaultRecord::of(k, f, Some(v))).collect(),
        fixture_notes: None,
        out_of_model: out_of_model.then(|| out_of_model_pairs(net)),
    }
}

pub fn verify_body(net: &AndExorNetwork, v: &Verification, notes: Option<FixtureNotes>, out_of_model: bool) -> Body {
    let mut r = coverage_core(net, &v.faults, &v.coverage, out_of_model);
    r.sets = set_summaries(v);
    r.union = Some((&v.union).into());
    r.bound = Some(v.bound.clone());
    r.fallback = Some(fallback_summary(v));
    r.residual_pairs = residual_pairs(v);
    r.fixture_notes = notes;
    Body::Coverage(Box::new(r))
}

pub fn simulate_body(net: &AndExorNetwork, faults: &FaultList, patterns: &[TestPattern], coverage: &Coverage, out_of_model: bool) -> Body {
    let mut r = coverage_core(net, faults, coverage, out_of_model);
    r.union = Some(UnionSummary {
        size: patterns.len(),
        construction_size: patterns.len(),
        fallback_size: 0,
        pre_dedup_size: patterns.len(),
        deduped: false,
        patterns: patterns.iter().enumerate().map(|(k, t)| PatternRecord::of(k, t)).collect(),
    });
    Body::Coverage(Box::new(r))
}

/// Reads the pattern list out of a json report produced by `atpg`, `verify`
/// or `simulate`.
pub fn patterns_from_json(text: &str, p: usize, inputs: usize) -> Result<Vec<TestPattern>, PatternError> {
    #[derive(Deserialize)]
    struct Doc {
        union: UnionDoc,
    }
    #[derive(Deserialize)]
    struct UnionDoc {
        patterns: Vec<PatternRecord>,
    }
    let doc: Doc = serde_json::from_str(text).map_err(|e| PatternError::Json(e.to_string()))?;
    doc.union
        .patterns
        .iter()
        .map(|r| {
            let t = TestPattern::parse(&format!("{}{}", r.c, r.x), p, r.origin)?;
            if t.x.len() != inputs {
                return Err(PatternError::Width { expected: p + inputs, found: p + t.x.len() });
            }
            Ok(t)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Emission

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => emit_csv(report),
        Format::Text => emit_text(report),
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().flexible(false).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let body = String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 csv");
    format!("# schema_version={SCHEMA_VERSION}\n{body}")
}

fn fault_rows(faults: &[FaultRecord]) -> String {
    let mut w = csv_writer();
    w.write_record(["class", "net1", "net2", "polarity", "verdict", "evidence"]).expect("csv");
    for f in faults {
        let evidence = f.evidence();
        w.write_record([
            f.class.as_str(),
            &f.net1,
            &f.net2,
            f.polarity.as_deref().unwrap_or(""),
            f.verdict.unwrap_or(""),
            &evidence,
        ])
        .expect("csv");
    }
    finish(w)
}

fn emit_csv(report: &Report) -> String {
    match &report.body {
        Body::Parse { gates, .. } => {
            let mut w = csv_writer();
            w.write_record(["gate", "target", "controls"]).expect("csv");
            for g in gates {
                w.write_record([g.gate.as_str(), &g.target, &g.controls.join(" ")]).expect("csv");
            }
            finish(w)
        }
        Body::Pprm { functions } => {
            let mut w = csv_writer();
            w.write_record(["output", "term"]).expect("csv");
            for f in functions {
                for t in &f.terms {
                    w.write_record([f.output.as_str(), t]).expect("csv");
                }
            }
            finish(w)
        }
        Body::Faults { faults, .. } => fault_rows(faults),
        Body::Atpg { union, .. } => {
            let mut w = csv_writer();
            w.write_record(["index", "origin", "c", "x"]).expect("csv");
            for r in &union.patterns {
                w.write_record([r.index.to_string(), r.origin.to_string(), r.c.clone(), r.x.clone()]).expect("csv");
            }
            finish(w)
        }
        Body::Coverage(c) => fault_rows(&c.faults),
    }
}

fn text_header(out: &mut String, r: &Report) {
    let c = &r.circuit;
    let _ = writeln!(out, "{} {} {:?}", r.tool.name, r.tool.version, r.command);
    if let Some(t) = &r.generated_at {
        let _ = writeln!(out, "generated: {t}");
    }
    let _ = write!(out, "circuit: n={} p={} d={}", c.n, c.p, c.d);
    if let Some(aux) = &c.aux {
        let _ = write!(out, " aux={aux}");
    }
    out.push('\n');
}

fn text_bound(out: &mut String, b: &BoundReport) {
    let rel = if b.size <= b.bound { '≤' } else { '>' };
    let verdict = if b.pass { "pass" } else { "fail" };
    let _ = writeln!(out, "bound: {} {rel} {} ({verdict})", b.size, b.bound);
    if b.fallback_patterns > 0 {
        let _ = writeln!(out, "fallback patterns: {}", b.fallback_patterns);
    }
}

fn text_sets(out: &mut String, sets: &[SetSummary]) {
    let line: Vec<String> = sets.iter().map(|s| format!("{}={}", s.name, s.size)).collect();
    let _ = writeln!(out, "sets: {}", line.join(" "));
}

fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    match &report.body {
        Body::Parse { text, .. } => out.push_str(text),
        Body::Pprm { functions } => {
            for f in functions {
                let _ = writeln!(out, "{}", f.expression);
            }
        }
        Body::Faults { fault_counts: n, faults, out_of_model } => {
            text_header(&mut out, report);
            let _ = writeln!(
                out,
                "faults: {} (ExorInternal={} XPair={} IntraLevel={} APair={})",
                n.total(),
                n.exor_internal,
                n.x_pair,
                n.intra_level,
                n.a_pair
            );
            if let Some(o) = out_of_model {
                let _ = writeln!(out, "out of model: x-a={} x-w={} a-w={}", o.x_a, o.x_w, o.a_w);
            }
            for f in faults {
                let _ = writeln!(out, "{:>5}  {}", f.index, fault_label(f));
            }
        }
        Body::Atpg { union, sets, bound, .. } => {
            let _ = writeln!(out, "# n={} p={} d={}", report.circuit.n, report.circuit.p, report.circuit.d);
            let _ = writeln!(out, "# {}", sets.iter().map(|s| format!("{}={}", s.name, s.size)).collect::<Vec<_>>().join(" "));
            let _ = writeln!(out, "# bound: {} / {} ({})", bound.size, bound.bound, if bound.pass { "pass" } else { "fail" });
            for r in &union.patterns {
                let _ = writeln!(out, "{} {}  # {}", r.c, r.x, r.origin);
            }
        }
        Body::Coverage(c) => {
            text_header(&mut out, report);
            if !c.sets.is_empty() {
                text_sets(&mut out, &c.sets);
            }
            if let Some(u) = &c.union {
                let _ = writeln!(out, "patterns: {}", u.size);
            }
            if let Some(b) = &c.bound {
                text_bound(&mut out, b);
            }
            let s = &c.summary;
            let _ = writeln!(
                out,
                "faults: {} detected={} redundant={} undetected={} unresolved={}",
                s.total, s.detected, s.redundant, s.undetected, s.unresolved
            );
            let _ = writeln!(out, "coverage: {:.4}", s.coverage);
            let _ = writeln!(out, "stimulation: {}/{} masks full", c.stimulation.full, c.stimulation.gates);
            for f in c.faults.iter().filter(|f| f.verdict == Some("Redundant")) {
                let _ = writeln!(out, "redundant: {} ({})", fault_label(f), f.method.unwrap_or("-"));
            }
            for &k in &c.failing {
                let f = &c.faults[k];
                let _ = writeln!(out, "{}: {}", f.verdict.unwrap_or("?").to_lowercase(), fault_label(f));
            }
            if let Some(n) = &c.fixture_notes {
                let _ = writeln!(
                    out,
                    "reference T2 match: {}  T3 match: {}",
                    yes_no(n.t2_matches_reference),
                    yes_no(n.t3_matches_reference)
                );
                for d in &n.discrepancies {
                    let _ = writeln!(out, "note: {d}");
                }
            }
        }
    }
    out
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn fault_label(f: &FaultRecord) -> String {
    match &f.polarity {
        Some(p) => format!("{} {} {} {}", f.class, f.net1, f.net2, p),
        None => format!("{} {}", f.class, f.net1),
    }
}
