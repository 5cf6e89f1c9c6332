//! Test-only helpers: random circuits and a scalar reference simulator that
//! works straight from the gate list, sharing no code with the library's
//! network evaluator.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use revbridge::{BridgingFault, Polarity, ReversibleCircuit};

pub fn wired(a: bool, b: bool, polarity: Polarity) -> bool {
    match polarity {
        Polarity::WiredAnd => a && b,
        Polarity::WiredOr => a || b,
    }
}

/// Output vector of `circuit` on `(c, x)` with `fault` injected.
/// `x` covers every input line, auxiliary included.
pub fn reference_outputs(circuit: &ReversibleCircuit, c: &[bool], x: &[bool], fault: Option<&BridgingFault>) -> Vec<bool> {
    let mut x = x.to_vec();
    if let Some(&BridgingFault::XPair { i, j, polarity }) = fault {
        let v = wired(x[i], x[j], polarity);
        x[i] = v;
        x[j] = v;
    }
    let gates = circuit.gates();
    let mut and_out: Vec<bool> = gates.iter().map(|g| g.controls.iter().all(|&i| x[i])).collect();
    if let Some(&BridgingFault::APair { i, j, polarity }) = fault {
        let v = wired(and_out[i], and_out[j], polarity);
        and_out[i] = v;
        and_out[j] = v;
    }
    let mut w = c.to_vec();
    let bridge_at = |w: &mut Vec<bool>, level: usize| {
        if let Some(&BridgingFault::IntraLevel { level: l, j1, j2, polarity }) = fault {
            if l == level {
                let v = wired(w[j1], w[j2], polarity);
                w[j1] = v;
                w[j2] = v;
            }
        }
    };
    bridge_at(&mut w, 0);
    for (level, g) in gates.iter().enumerate() {
        if and_out[level] {
            w[g.target] = !w[g.target];
        }
        bridge_at(&mut w, level + 1);
    }
    w
}

/// All `(c, x)` assignments, in no particular order.
pub fn assignments(inputs: usize, p: usize) -> impl Iterator<Item = (Vec<bool>, Vec<bool>)> {
    (0u64..1 << (inputs + p)).map(move |m| {
        let bit = |k: usize| (m >> k) & 1 == 1;
        let c = (0..p).map(bit).collect();
        let x = (0..inputs).map(|i| bit(p + i)).collect();
        (c, x)
    })
}

pub fn reference_detectable(circuit: &ReversibleCircuit, fault: &BridgingFault) -> bool {
    assignments(circuit.inputs(), circuit.p())
        .any(|(c, x)| reference_outputs(circuit, &c, &x, None) != reference_outputs(circuit, &c, &x, Some(fault)))
}

pub fn reference_detects(circuit: &ReversibleCircuit, fault: &BridgingFault, c: &[bool], x: &[bool]) -> bool {
    reference_outputs(circuit, c, x, None) != reference_outputs(circuit, c, x, Some(fault))
}

/// `(left, right)` combinations each EXOR gate receives over the given
/// fully specified patterns, as a 4-bit set indexed by `2*left + right`.
pub fn reference_masks(circuit: &ReversibleCircuit, patterns: &[(Vec<bool>, Vec<bool>)]) -> Vec<u8> {
    let mut masks = vec![0u8; circuit.d()];
    for (c, x) in patterns {
        let mut w = c.clone();
        for (k, g) in circuit.gates().iter().enumerate() {
            let right = g.controls.iter().all(|&i| x[i]);
            let left = w[g.target];
            masks[k] |= 1 << (2 * usize::from(left) + usize::from(right));
            w[g.target] = left ^ right;
        }
    }
    masks
}

/// Random circuit with `n ≤ max_n`, `p ≤ max_p`, `n + p ≤ max_width`,
/// `d ≤ max_d`. About one gate in twelve is a 0-CNOT.
pub fn random_circuit(rng: &mut ChaCha8Rng, max_n: usize, max_p: usize, max_d: usize, max_width: usize) -> ReversibleCircuit {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(1..=max_p.min(max_width - n).max(1));
    let d = rng.gen_range(0..=max_d);
    let gates: Vec<(Vec<usize>, usize)> = (0..d)
        .map(|_| {
            let target = rng.gen_range(0..p);
            if rng.gen_ratio(1, 12) {
                return (Vec::new(), target);
            }
            let mut controls: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            if controls.is_empty() {
                controls.push(rng.gen_range(0..n));
            }
            (controls, target)
        })
        .collect();
    ReversibleCircuit::with_zero_controls(n, p, gates).expect("random circuit is valid")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
