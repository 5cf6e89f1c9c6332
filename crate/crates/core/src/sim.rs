//! Good and faulty simulation of AND-EXOR networks.
//!
//! The evaluator is written once over [`Word`], so the same code runs a
//! single pattern (`bool`) or 64 patterns per call (`u64` lanes). Bulk test
//! set evaluation and the exhaustive oracle use the packed form.

use std::ops::{BitAnd, BitOr, BitXor, Not};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::AndExorNetwork;
use crate::fault::{BridgingFault, FaultList, Polarity};
use crate::pattern::{DcPolicy, Origin, TestPattern};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("pattern has {c} c bits and {x} x bits, circuit expects {p} and {inputs}")]
    DimensionMismatch { c: usize, x: usize, p: usize, inputs: usize },
    #[error("EXOR-internal faults have no structural model; use exor_stimulation_mask")]
    ExorInternal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input width {width} exceeds exhaustive oracle cap {cap}")]
    WidthExceedsCap { width: usize, cap: usize },
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Bit container the evaluator runs on.
pub trait Word:
    Copy + Eq + BitAnd<Output = Self> + BitOr<Output = Self> + BitXor<Output = Self> + Not<Output = Self>
{
    const ZERO: Self;
    const ONES: Self;
}

impl Word for bool {
    const ZERO: Self = false;
    const ONES: Self = true;
}

impl Word for u64 {
    const ZERO: Self = 0;
    const ONES: Self = u64::MAX;
}

fn bridge<W: Word>(v: &mut [W], i: usize, j: usize, polarity: Polarity) {
    let z = match polarity {
        Polarity::WiredAnd => v[i] & v[j],
        Polarity::WiredOr => v[i] | v[j],
    };
    v[i] = z;
    v[j] = z;
}

/// All net values of one evaluation. `cascade[j][ℓ]` is wire `W(j,ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationResult {
    pub x: Vec<bool>,
    pub a: Vec<bool>,
    pub cascade: Vec<Vec<bool>>,
    pub outputs: Vec<bool>,
}

struct Trace<W> {
    x: Vec<W>,
    a: Vec<W>,
    levels: Vec<Vec<W>>,
}

/// Core evaluator. EXOR-internal faults are ignored here.
fn run<W: Word>(
    net: &AndExorNetwork,
    x_in: &[W],
    c_in: &[W],
    fault: Option<&BridgingFault>,
    mut trace: Option<&mut Trace<W>>,
) -> Vec<W> {
    let mut x = x_in.to_vec();
    if let Some(&BridgingFault::XPair { i, j, polarity }) = fault {
        bridge(&mut x, i, j, polarity);
    }
    let d = net.d();
    let mut a: Vec<W> = (0..d)
        .map(|g| net.and_inputs(g).iter().fold(W::ONES, |acc, &i| acc & x[i]))
        .collect();
    if let Some(&BridgingFault::APair { i, j, polarity }) = fault {
        bridge(&mut a, i, j, polarity);
    }
    let intra = match fault {
        Some(&BridgingFault::IntraLevel { level, j1, j2, polarity }) => Some((level, j1, j2, polarity)),
        _ => None,
    };
    let mut w = c_in.to_vec();
    let inject = |w: &mut Vec<W>, level: usize| {
        if let Some((l, j1, j2, pol)) = intra {
            if l == level {
                bridge(w, j1, j2, pol);
            }
        }
    };
    inject(&mut w, 0);
    if let Some(t) = trace.as_deref_mut() {
        t.levels.push(w.clone());
    }
    for g in 0..d {
        let t = net.target(g);
        w[t] = w[t] ^ a[g];
        inject(&mut w, g + 1);
        if let Some(t) = trace.as_deref_mut() {
            t.levels.push(w.clone());
        }
    }
    if let Some(t) = trace {
        t.x = x;
        t.a = a;
    }
    w
}

fn check_dims(net: &AndExorNetwork, pattern: &TestPattern) -> Result<(), SimError> {
    if pattern.c.len() != net.p() || pattern.x.len() != net.inputs() {
        return Err(SimError::DimensionMismatch {
            c: pattern.c.len(),
            x: pattern.x.len(),
            p: net.p(),
            inputs: net.inputs(),
        });
    }
    Ok(())
}

fn traced(net: &AndExorNetwork, pattern: &TestPattern, fault: Option<&BridgingFault>, policy: DcPolicy) -> SimulationResult {
    let (c, x) = pattern.resolve(policy);
    let mut trace = Trace { x: Vec::new(), a: Vec::new(), levels: Vec::new() };
    let outputs = run(net, &x, &c, fault, Some(&mut trace));
    let cascade = (0..net.p()).map(|j| trace.levels.iter().map(|lv| lv[j]).collect()).collect();
    SimulationResult { x: trace.x, a: trace.a, cascade, outputs }
}

pub fn eval_good(net: &AndExorNetwork, pattern: &TestPattern, policy: DcPolicy) -> Result<SimulationResult, SimError> {
    check_dims(net, pattern)?;
    Ok(traced(net, pattern, None, policy))
}

pub fn eval_faulty(
    net: &AndExorNetwork,
    fault: &BridgingFault,
    pattern: &TestPattern,
    policy: DcPolicy,
) -> Result<SimulationResult, SimError> {
    if matches!(fault, BridgingFault::ExorInternal { .. }) {
        return Err(SimError::ExorInternal);
    }
    check_dims(net, pattern)?;
    Ok(traced(net, pattern, Some(fault), policy))
}

pub fn detects(net: &AndExorNetwork, fault: &BridgingFault, pattern: &TestPattern, policy: DcPolicy) -> Result<bool, SimError> {
    if matches!(fault, BridgingFault::ExorInternal { .. }) {
        return Err(SimError::ExorInternal);
    }
    check_dims(net, pattern)?;
    let (c, x) = pattern.resolve(policy);
    Ok(run(net, &x, &c, None, None) != run(net, &x, &c, Some(fault), None))
}

// ---------------------------------------------------------------------------
// Packed evaluation

/// Up to 64 patterns, one per lane; pattern `base + l` sits in lane `l`.
#[derive(Debug, Clone)]
struct Block {
    base: usize,
    valid: u64,
    x: Vec<u64>,
    c: Vec<u64>,
}

fn pack(net: &AndExorNetwork, patterns: &[TestPattern], policy: DcPolicy) -> Result<Vec<Block>, SimError> {
    patterns
        .chunks(64)
        .enumerate()
        .map(|(k, chunk)| {
            let mut b = Block { base: k * 64, valid: 0, x: vec![0; net.inputs()], c: vec![0; net.p()] };
            for (lane, pat) in chunk.iter().enumerate() {
                check_dims(net, pat)?;
                let (c, x) = pat.resolve(policy);
                b.valid |= 1 << lane;
                for (w, v) in b.x.iter_mut().zip(x) {
                    *w |= u64::from(v) << lane;
                }
                for (w, v) in b.c.iter_mut().zip(c) {
                    *w |= u64::from(v) << lane;
                }
            }
            Ok(b)
        })
        .collect()
}

fn first_difference(good: &[u64], bad: &[u64], valid: u64) -> Option<u32> {
    let diff = good.iter().zip(bad).fold(0, |acc, (g, b)| acc | (g ^ b)) & valid;
    (diff != 0).then(|| diff.trailing_zeros())
}

/// Index of the first pattern that detects `fault`, if any.
pub fn first_detecting(
    net: &AndExorNetwork,
    fault: &BridgingFault,
    patterns: &[TestPattern],
    policy: DcPolicy,
) -> Result<Option<usize>, SimError> {
    if matches!(fault, BridgingFault::ExorInternal { .. }) {
        return Err(SimError::ExorInternal);
    }
    let blocks = pack(net, patterns, policy)?;
    let good: Vec<Vec<u64>> = blocks.iter().map(|b| run(net, &b.x, &b.c, None, None)).collect();
    Ok(first_in_blocks(net, fault, &blocks, &good))
}

fn first_in_blocks(net: &AndExorNetwork, fault: &BridgingFault, blocks: &[Block], good: &[Vec<u64>]) -> Option<usize> {
    blocks.iter().zip(good).find_map(|(b, g)| {
        let bad = run(net, &b.x, &b.c, Some(fault), None);
        first_difference(g, &bad, b.valid).map(|lane| b.base + lane as usize)
    })
}

/// Which `(left, right)` input combinations an EXOR gate has seen. Bit
/// `2*left + right` is set once that combination has been applied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StimulationMask {
    pub seen: u8,
    /// Pattern index at which the mask became full.
    pub completed_at: Option<usize>,
}

impl StimulationMask {
    pub const FULL: u8 = 0b1111;

    pub fn is_full(&self) -> bool {
        self.seen == Self::FULL
    }

    pub fn has(&self, left: bool, right: bool) -> bool {
        self.seen & (1 << (2 * usize::from(left) + usize::from(right))) != 0
    }
}

pub fn exor_stimulation_mask(
    net: &AndExorNetwork,
    patterns: &[TestPattern],
    policy: DcPolicy,
) -> Result<Vec<StimulationMask>, SimError> {
    let blocks = pack(net, patterns, policy)?;
    let d = net.d();
    let mut masks = vec![StimulationMask::default(); d];
    let mut first: Vec<[Option<usize>; 4]> = vec![[None; 4]; d];
    for b in &blocks {
        let a: Vec<u64> = (0..d).map(|g| net.and_inputs(g).iter().fold(u64::MAX, |acc, &i| acc & b.x[i])).collect();
        let mut w = b.c.clone();
        for g in 0..d {
            let t = net.target(g);
            let (l, r) = (w[t], a[g]);
            let combos = [!l & !r, !l & r, l & !r, l & r];
            for (k, word) in combos.into_iter().enumerate() {
                let word = word & b.valid;
                if word != 0 && first[g][k].is_none() {
                    first[g][k] = Some(b.base + word.trailing_zeros() as usize);
                    masks[g].seen |= 1 << k;
                }
            }
            w[t] = l ^ r;
        }
    }
    for (m, f) in masks.iter_mut().zip(&first) {
        if m.is_full() {
            m.completed_at = f.iter().flatten().max().copied();
        }
    }
    Ok(masks)
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

pub const DEFAULT_ORACLE_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detectability {
    Detectable(TestPattern),
    Redundant,
}

const LANE_BITS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Block `word` of the full assignment space. Assignment `m` reads the
/// string `c1..cp x1..xn` as a binary number with `c1` most significant.
fn exhaustive_block(net: &AndExorNetwork, word: usize, width: usize) -> Block {
    let inputs = net.inputs();
    let lane_word = |bit: usize| -> u64 {
        if bit < 6 {
            LANE_BITS[bit]
        } else if (word >> (bit - 6)) & 1 == 1 {
            u64::MAX
        } else {
            0
        }
    };
    let x = (0..inputs).map(|i| lane_word(inputs - 1 - i)).collect();
    let c = (0..net.p()).map(|j| lane_word(inputs + net.p() - 1 - j)).collect();
    let valid = if width < 6 { (1u64 << (1 << width)) - 1 } else { u64::MAX };
    Block { base: word * 64, valid, x, c }
}

/// Decodes assignment index `m` into a fully specified pattern.
pub fn assignment(net: &AndExorNetwork, m: usize, origin: Origin) -> TestPattern {
    let inputs = net.inputs();
    let p = net.p();
    let x: Vec<bool> = (0..inputs).map(|i| (m >> (inputs - 1 - i)) & 1 == 1).collect();
    let c: Vec<bool> = (0..p).map(|j| (m >> (inputs + p - 1 - j)) & 1 == 1).collect();
    TestPattern::from_bits(&c, &x, origin)
}

/// Tries all `2^(inputs+p)` assignments in lexicographic order and returns
/// the first detecting one as a witness.
pub fn exhaustive_detectability(net: &AndExorNetwork, fault: &BridgingFault, cap: usize) -> Result<Detectability, OracleError> {
    if matches!(fault, BridgingFault::ExorInternal { .. }) {
        return Err(SimError::ExorInternal.into());
    }
    let width = net.inputs() + net.p();
    if width > cap || width >= usize::BITS as usize - 1 {
        return Err(OracleError::WidthExceedsCap { width, cap });
    }
    let words = (1usize << width).div_ceil(64);
    for word in 0..words {
        let b = exhaustive_block(net, word, width);
        let good = run(net, &b.x, &b.c, None, None);
        let bad = run(net, &b.x, &b.c, Some(fault), None);
        if let Some(lane) = first_difference(&good, &bad, b.valid) {
            return Ok(Detectability::Detectable(assignment(net, b.base + lane as usize, Origin::Fallback)));
        }
    }
    Ok(Detectability::Redundant)
}

// ---------------------------------------------------------------------------
// Test-set evaluation

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProofMethod {
    #[serde(rename = "exhaustive")]
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Detected { pattern: usize },
    Redundant { method: ProofMethod },
    Undetected,
    Unresolved,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Detected { .. } => "Detected",
            Verdict::Redundant { .. } => "Redundant",
            Verdict::Undetected => "Undetected",
            Verdict::Unresolved => "Unresolved",
        }
    }

    pub fn is_detected(&self) -> bool {
        matches!(self, Verdict::Detected { .. })
    }
}

/// Per-fault verdicts in fault-list order plus the EXOR stimulation masks.
#[derive(Debug, Clone, PartialEq)]
pub struct Coverage {
    pub faults: Vec<BridgingFault>,
    pub verdicts: Vec<Verdict>,
    pub masks: Vec<StimulationMask>,
    pub policy: DcPolicy,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CoverageSummary {
    pub total: usize,
    pub detected: usize,
    pub redundant: usize,
    pub undetected: usize,
    pub unresolved: usize,
    /// detected / (total - redundant); 1.0 when nothing is testable.
    pub coverage: f64,
}

impl Coverage {
    pub fn summary(&self) -> CoverageSummary {
        let mut s = CoverageSummary { total: self.verdicts.len(), ..Default::default() };
        for v in &self.verdicts {
            match v {
                Verdict::Detected { .. } => s.detected += 1,
                Verdict::Redundant { .. } => s.redundant += 1,
                Verdict::Undetected => s.undetected += 1,
                Verdict::Unresolved => s.unresolved += 1,
            }
        }
        let testable = s.total - s.redundant;
        s.coverage = if testable == 0 { 1.0 } else { s.detected as f64 / testable as f64 };
        s
    }

    pub fn masks_full(&self) -> bool {
        self.masks.iter().all(StimulationMask::is_full)
    }

    pub fn undetected(&self) -> impl Iterator<Item = (usize, &BridgingFault)> {
        self.faults
            .iter()
            .enumerate()
            .filter(|&(k, _)| matches!(self.verdicts[k], Verdict::Undetected))
    }
}

/// Simulates every fault against the test set. Faults are evaluated in
/// parallel; verdicts come back in fault-list order.
pub fn evaluate_test_set(
    net: &AndExorNetwork,
    faults: &FaultList,
    patterns: &[TestPattern],
    policy: DcPolicy,
) -> Result<Coverage, SimError> {
    let blocks = pack(net, patterns, policy)?;
    let good: Vec<Vec<u64>> = blocks.iter().map(|b| run(net, &b.x, &b.c, None, None)).collect();
    let masks = exor_stimulation_mask(net, patterns, policy)?;
    let verdicts = faults
        .faults
        .par_iter()
        .map(|f| match *f {
            BridgingFault::ExorInternal { gate } => match masks[gate].completed_at {
                Some(pattern) => Verdict::Detected { pattern },
                None => Verdict::Undetected,
            },
            _ => match first_in_blocks(net, f, &blocks, &good) {
                Some(pattern) => Verdict::Detected { pattern },
                None => Verdict::Undetected,
            },
        })
        .collect();
    Ok(Coverage { faults: faults.faults.clone(), verdicts, masks, policy })
}
