//! Repair loop for faults the constructive sets leave undetected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::AndExorNetwork;
use crate::fault::BridgingFault;
use crate::pattern::{DcPolicy, Origin, TestPattern};
use crate::sim::{self, Coverage, Detectability, OracleError, ProofMethod, Verdict};

/// Seed for the random search used above the oracle cap.
pub const RANDOM_SEED: u64 = 0x5eed_b41d_6e00_0001;
/// Random patterns tried per fault above the oracle cap.
pub const RANDOM_BUDGET: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Resolution {
    /// A new pattern (index into the fallback list) detects the fault.
    Witness(usize),
    Redundant,
    /// No oracle available and the random search found nothing.
    Unresolved,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FallbackResult {
    pub patterns: Vec<TestPattern>,
    pub resolutions: Vec<(BridgingFault, Resolution)>,
}

fn random_search(net: &AndExorNetwork, fault: &BridgingFault, rng: &mut ChaCha8Rng) -> Option<TestPattern> {
    let mut left = RANDOM_BUDGET;
    while left > 0 {
        let batch: Vec<TestPattern> = (0..left.min(256))
            .map(|_| {
                let c: Vec<bool> = (0..net.p()).map(|_| rng.gen()).collect();
                let x: Vec<bool> = (0..net.inputs()).map(|_| rng.gen()).collect();
                TestPattern::from_bits(&c, &x, Origin::Fallback)
            })
            .collect();
        left -= batch.len();
        if let Some(k) = sim::first_detecting(net, fault, &batch, DcPolicy::FillZero).ok().flatten() {
            return Some(batch[k].clone());
        }
    }
    None
}

/// For each uncovered fault, in order: reuse an earlier fallback pattern if
/// one already detects it, else ask the exhaustive oracle (width within
/// `cap`), else run a seeded random search.
///
/// EXOR-internal faults are skipped; they are repaired only by applying
/// the exhaustive stimulation set.
pub fn fallback_search(net: &AndExorNetwork, uncovered: &[BridgingFault], policy: DcPolicy, cap: usize) -> FallbackResult {
    let mut out = FallbackResult::default();
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for fault in uncovered.iter().filter(|f| !matches!(f, BridgingFault::ExorInternal { .. })) {
        if let Some(k) = sim::first_detecting(net, fault, &out.patterns, policy).expect("fallback patterns fit") {
            out.resolutions.push((*fault, Resolution::Witness(k)));
            continue;
        }
        let found = match sim::exhaustive_detectability(net, fault, cap) {
            Ok(Detectability::Redundant) => {
                out.resolutions.push((*fault, Resolution::Redundant));
                continue;
            }
            Ok(Detectability::Detectable(w)) => Some(w),
            Err(OracleError::WidthExceedsCap { .. }) => random_search(net, fault, &mut rng),
            Err(OracleError::Sim(e)) => unreachable!("oracle misuse: {e}"),
        };
        match found {
            Some(w) => {
                out.patterns.push(w);
                out.resolutions.push((*fault, Resolution::Witness(out.patterns.len() - 1)));
            }
            None => out.resolutions.push((*fault, Resolution::Unresolved)),
        }
    }
    out
}

/// Classifies the still-undetected bridging faults of `coverage` with the
/// oracle: provably untestable ones become `Redundant`, the rest stay
/// `Undetected`, and faults beyond the oracle cap become `Unresolved`.
pub fn classify_residuals(net: &AndExorNetwork, coverage: &mut Coverage, cap: usize) {
    let pending: Vec<usize> = coverage
        .undetected()
        .filter(|(_, f)| !matches!(f, BridgingFault::ExorInternal { .. }))
        .map(|(k, _)| k)
        .collect();
    for k in pending {
        coverage.verdicts[k] = match sim::exhaustive_detectability(net, &coverage.faults[k], cap) {
            Ok(Detectability::Redundant) => Verdict::Redundant { method: ProofMethod::Exhaustive },
            Ok(Detectability::Detectable(_)) => Verdict::Undetected,
            Err(_) => Verdict::Unresolved,
        };
    }
}
