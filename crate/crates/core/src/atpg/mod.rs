//! Construction of the five bridging-fault test sets and their union.
//!
//! | set | targets                              | size            |
//! |-----|--------------------------------------|-----------------|
//! | T1  | EXOR-internal faults                 | 4               |
//! | T2  | wired-AND x pairs                    | ≤ n − 1         |
//! | T3  | wired-OR x pairs                     | ≤ n − 1         |
//! | T4  | intra-level cascade pairs            | ⌈log₂ p⌉        |
//! | T5  | a pairs (both polarities)            | n               |
//!
//! The auxiliary constant-one line (present only after 0-CNOT
//! normalization) is held at 1 by T2, T3 and T5. T1 and T4 drive it with
//! the other x lines so that all-zero x keeps every AND output at 0.

pub mod fallback;
pub mod parity;
pub mod partition;

use std::collections::HashSet;

use serde::Serialize;

use crate::circuit::{AndExorNetwork, PprmFunction};
use crate::fault::{enumerate_faults, BridgingFault, FaultList};
use crate::pattern::{DcPolicy, Origin, Symbol, TestPattern};
use crate::sim::{self, Coverage, SimError, DEFAULT_ORACLE_CAP};

pub use fallback::{classify_residuals, fallback_search, FallbackResult, Resolution};
pub use parity::{build_parity_matrix, count_terms, count_union, ParityMatrix};
pub use partition::{gen_t2, gen_t3, PairSet, PartitionTree, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TestSet {
    pub origin: Origin,
    pub patterns: Vec<TestPattern>,
}

impl TestSet {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

fn fill(len: usize, s: Symbol) -> Vec<Symbol> {
    vec![s; len]
}

/// The four exhaustive EXOR stimuli: (c, x) over {all-0, all-1}².
pub fn gen_t1(p: usize, inputs: usize) -> TestSet {
    let patterns = [(false, false), (false, true), (true, false), (true, true)]
        .into_iter()
        .map(|(c, x)| TestPattern::new(fill(p, Symbol::bit(c)), fill(inputs, Symbol::bit(x)), Origin::T1))
        .collect();
    TestSet { origin: Origin::T1, patterns }
}

/// `⌈log₂ p⌉`, with `ceil_log2(1) == 0`.
pub fn ceil_log2(p: usize) -> usize {
    if p <= 1 {
        0
    } else {
        (usize::BITS - (p - 1).leading_zeros()) as usize
    }
}

/// Block-halving c-line patterns with x held at 0. The c lines are padded
/// to `2^k` positions; pattern `r` has ones in the first half of every
/// block of size `2^(k-r+1)`. Padding is dropped afterwards, and the column
/// code of line `q` is the complement of `q` in binary, so codes are distinct.
pub fn gen_t4(p: usize, inputs: usize) -> TestSet {
    let k = ceil_log2(p);
    let patterns = (1..=k)
        .map(|r| {
            let c = (0..p).map(|q| Symbol::bit((q >> (k - r)) & 1 == 0)).collect();
            TestPattern::new(c, fill(inputs, Symbol::Zero), Origin::T4)
        })
        .collect();
    TestSet { origin: Origin::T4, patterns }
}

/// Walking-zero patterns over the data inputs; c bits are don't-care.
pub fn gen_t5(net: &AndExorNetwork) -> TestSet {
    let patterns = net
        .data_inputs()
        .into_iter()
        .map(|zero| {
            let x = (0..net.inputs()).map(|i| Symbol::bit(i != zero)).collect();
            TestPattern::new(fill(net.p(), Symbol::DontCare), x, Origin::T5)
        })
        .collect();
    TestSet { origin: Origin::T5, patterns }
}

/// Concatenation T1..T5 then fallback patterns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionSet {
    pub patterns: Vec<TestPattern>,
    /// Patterns from the five constructive sets, before dedup.
    pub construction_size: usize,
    pub fallback_size: usize,
    /// Construction plus fallback, before dedup.
    pub pre_dedup_size: usize,
    pub deduped: bool,
}

pub fn assemble_union(sets: &[TestSet], fallback: &[TestPattern], dedup: bool, policy: DcPolicy) -> UnionSet {
    let mut ordered: Vec<&TestSet> = sets.iter().collect();
    ordered.sort_by_key(|s| s.origin);
    let construction: Vec<TestPattern> = ordered.iter().flat_map(|s| s.patterns.iter().cloned()).collect();
    let construction_size = construction.len();
    let mut patterns: Vec<TestPattern> = construction.into_iter().chain(fallback.iter().cloned()).collect();
    let pre_dedup_size = patterns.len();
    if dedup {
        let mut seen = HashSet::new();
        patterns.retain(|t| seen.insert(t.resolve(policy)));
    }
    UnionSet { patterns, construction_size, fallback_size: fallback.len(), pre_dedup_size, deduped: dedup }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// Size of the constructive union, before dedup.
    pub size: usize,
    /// `3n + ⌈log₂ p⌉ + 2`.
    pub bound: usize,
    pub pass: bool,
    pub fallback_patterns: usize,
    /// Fallback patterns were needed beyond the constructive sets.
    pub exceeds_construction: bool,
    /// Total size including fallback exceeds the bound.
    pub total_exceeds_bound: bool,
}

pub fn size_bound(n: usize, p: usize) -> usize {
    3 * n + ceil_log2(p) + 2
}

pub fn check_bound(union: &UnionSet, n: usize, p: usize) -> BoundReport {
    let bound = size_bound(n, p);
    BoundReport {
        size: union.construction_size,
        bound,
        pass: union.construction_size <= bound,
        fallback_patterns: union.fallback_size,
        exceeds_construction: union.fallback_size > 0,
        total_exceeds_bound: union.pre_dedup_size > bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtpgOptions {
    pub sets: Vec<Origin>,
    pub policy: DcPolicy,
    pub include_aux: bool,
    pub fallback: bool,
    pub dedup: bool,
    pub oracle_cap: usize,
}

impl Default for AtpgOptions {
    fn default() -> Self {
        Self {
            sets: Origin::GENERATED.to_vec(),
            policy: DcPolicy::FillZero,
            include_aux: false,
            fallback: true,
            dedup: false,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// The selected constructive sets plus the x-pair partition trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generated {
    pub sets: Vec<TestSet>,
    pub t2: Option<PairSet>,
    pub t3: Option<PairSet>,
}

impl Generated {
    pub fn set(&self, origin: Origin) -> Option<&TestSet> {
        self.sets.iter().find(|s| s.origin == origin)
    }
}

pub fn generate(net: &AndExorNetwork, pprms: &[PprmFunction], opts: &AtpgOptions) -> Generated {
    let want = |o| opts.sets.contains(&o);
    let mut sets = Vec::new();
    let (mut t2, mut t3) = (None, None);
    if want(Origin::T1) {
        sets.push(gen_t1(net.p(), net.inputs()));
    }
    if want(Origin::T2) {
        let g = gen_t2(net, opts.policy);
        sets.push(g.set.clone());
        t2 = Some(g);
    }
    if want(Origin::T3) {
        let g = gen_t3(pprms, net, opts.policy);
        sets.push(g.set.clone());
        t3 = Some(g);
    }
    if want(Origin::T4) {
        sets.push(gen_t4(net.p(), net.inputs()));
    }
    if want(Origin::T5) {
        sets.push(gen_t5(net));
    }
    Generated { sets, t2, t3 }
}

/// Full pipeline: generate, simulate, repair, classify.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub generated: Generated,
    pub faults: FaultList,
    pub union: UnionSet,
    pub bound: BoundReport,
    pub coverage: Coverage,
    pub fallback: FallbackResult,
}

pub fn verify(net: &AndExorNetwork, pprms: &[PprmFunction], opts: &AtpgOptions) -> Result<Verification, SimError> {
    let generated = generate(net, pprms, opts);
    let faults = enumerate_faults(net, opts.include_aux);
    let first = assemble_union(&generated.sets, &[], opts.dedup, opts.policy);
    let initial = sim::evaluate_test_set(net, &faults, &first.patterns, opts.policy)?;

    let fallback = if opts.fallback {
        let uncovered: Vec<BridgingFault> = initial.undetected().map(|(_, f)| *f).collect();
        fallback_search(net, &uncovered, opts.policy, opts.oracle_cap)
    } else {
        FallbackResult::default()
    };
    let union = assemble_union(&generated.sets, &fallback.patterns, opts.dedup, opts.policy);
    let mut coverage = if fallback.patterns.is_empty() {
        initial
    } else {
        sim::evaluate_test_set(net, &faults, &union.patterns, opts.policy)?
    };
    classify_residuals(net, &mut coverage, opts.oracle_cap);
    let bound = check_bound(&union, net.n(), net.p());
    Ok(Verification { generated, faults, union, bound, coverage, fallback })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{derive_pprm, expand_network, ReversibleCircuit};

    fn strings(set: &TestSet) -> Vec<String> {
        set.patterns.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn t1_single_line() {
        assert_eq!(strings(&gen_t1(1, 1)), vec!["0 0", "0 1", "1 0", "1 1"]);
    }

    #[test]
    fn t4_examples() {
        let c = |p| gen_t4(p, 0).patterns.iter().map(|t| t.c_string()).collect::<Vec<_>>();
        assert_eq!(c(3), vec!["110", "101"]);
        assert_eq!(c(4), vec!["1100", "1010"]);
        assert!(c(1).is_empty());
        assert_eq!(c(2), vec!["10"]);
        assert_eq!(c(5), vec!["11110", "11001", "10101"]);
    }

    #[test]
    fn log2_ceiling() {
        let want = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (64, 6), (65, 7)];
        for (p, k) in want {
            assert_eq!(ceil_log2(p), k, "p={p}");
        }
    }

    #[test]
    fn t5_single_input() {
        let net = expand_network(&ReversibleCircuit::new(1, 2, []).unwrap());
        assert_eq!(strings(&gen_t5(&net)), vec!["dd 0"]);
    }

    #[test]
    fn degenerate_bound() {
        let c = ReversibleCircuit::new(1, 1, [(vec![0], 0)]).unwrap();
        let net = expand_network(&c);
        let g = generate(&net, &derive_pprm(&c), &AtpgOptions::default());
        let sizes: Vec<usize> = g.sets.iter().map(TestSet::len).collect();
        assert_eq!(sizes, vec![4, 0, 0, 0, 1]);
        let u = assemble_union(&g.sets, &[], false, DcPolicy::FillZero);
        let b = check_bound(&u, 1, 1);
        assert_eq!((b.size, b.bound, b.pass), (5, 5, true));
    }

    #[test]
    fn union_dedup_keeps_bound_size() {
        let t1 = gen_t1(1, 1);
        let dup = TestSet { origin: Origin::T5, patterns: vec![t1.patterns[0].clone()] };
        let u = assemble_union(&[dup.clone(), t1.clone()], &[], true, DcPolicy::FillZero);
        assert_eq!(u.patterns.len(), 4);
        assert_eq!(u.construction_size, 5);
        assert_eq!(u.patterns[0].origin, Origin::T1);
        assert!(assemble_union(&[], &[], false, DcPolicy::FillZero).patterns.is_empty());
    }

    #[test]
    fn fallback_flagged_in_bound() {
        let extra = TestPattern::from_bits(&[true], &[true], Origin::Fallback);
        let u = assemble_union(&[gen_t1(1, 1)], &[extra], false, DcPolicy::FillZero);
        let b = check_bound(&u, 1, 1);
        assert!(b.pass && b.exceeds_construction && !b.total_exceeds_bound);
    }

    #[test]
    fn aux_line_in_t1_and_t4() {
        let c = ReversibleCircuit::with_zero_controls(1, 2, [(vec![], 0), (vec![0], 1)]).unwrap();
        let c = crate::circuit::normalize_zero_controls(c);
        let net = expand_network(&c);
        let v = verify(&net, &derive_pprm(&c), &AtpgOptions::default()).unwrap();
        assert!(v.coverage.masks_full());
        assert_eq!(strings(v.generated.set(Origin::T4).unwrap()), vec!["10 00"]);
        assert_eq!(strings(v.generated.set(Origin::T5).unwrap()), vec!["dd 01"]);
        let s = v.coverage.summary();
        assert_eq!(s.undetected + s.unresolved, 0, "{:?}", v.coverage.verdicts);
    }
}
