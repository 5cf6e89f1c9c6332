//! Single bridging faults over an AND-EXOR network.

use std::fmt;

use serde::Serialize;

use crate::circuit::{AndExorNetwork, Net};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Polarity {
    WiredAnd,
    WiredOr,
}

impl Polarity {
    pub const BOTH: [Polarity; 2] = [Polarity::WiredAnd, Polarity::WiredOr];
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::WiredAnd => "WiredAnd",
            Polarity::WiredOr => "WiredOr",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FaultClass {
    /// Any defect inside a 2-input EXOR gate.
    ExorInternal,
    /// Bridge between two pass-through inputs.
    XPair,
    /// Bridge between two cascade wires at the same level.
    IntraLevel,
    /// Bridge between two AND-gate outputs.
    APair,
}

impl FaultClass {
    pub const ALL: [FaultClass; 4] =
        [FaultClass::ExorInternal, FaultClass::XPair, FaultClass::IntraLevel, FaultClass::APair];
}

impl fmt::Display for FaultClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaultClass::ExorInternal => "ExorInternal",
            FaultClass::XPair => "XPair",
            FaultClass::IntraLevel => "IntraLevel",
            FaultClass::APair => "APair",
        })
    }
}

/// One fault of the model. Pair members are ordered (`i < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BridgingFault {
    ExorInternal { gate: usize },
    XPair { i: usize, j: usize, polarity: Polarity },
    IntraLevel { level: usize, j1: usize, j2: usize, polarity: Polarity },
    APair { i: usize, j: usize, polarity: Polarity },
}

impl BridgingFault {
    pub fn x_pair(a: usize, b: usize, polarity: Polarity) -> Self {
        assert_ne!(a, b, "bridge needs two distinct lines");
        BridgingFault::XPair { i: a.min(b), j: a.max(b), polarity }
    }

    pub fn a_pair(a: usize, b: usize, polarity: Polarity) -> Self {
        assert_ne!(a, b, "bridge needs two distinct lines");
        BridgingFault::APair { i: a.min(b), j: a.max(b), polarity }
    }

    pub fn intra_level(level: usize, a: usize, b: usize, polarity: Polarity) -> Self {
        assert_ne!(a, b, "bridge needs two distinct lines");
        BridgingFault::IntraLevel { level, j1: a.min(b), j2: a.max(b), polarity }
    }

    pub fn class(&self) -> FaultClass {
        match self {
            BridgingFault::ExorInternal { .. } => FaultClass::ExorInternal,
            BridgingFault::XPair { .. } => FaultClass::XPair,
            BridgingFault::IntraLevel { .. } => FaultClass::IntraLevel,
            BridgingFault::APair { .. } => FaultClass::APair,
        }
    }

    pub fn polarity(&self) -> Option<Polarity> {
        match *self {
            BridgingFault::ExorInternal { .. } => None,
            BridgingFault::XPair { polarity, .. }
            | BridgingFault::IntraLevel { polarity, .. }
            | BridgingFault::APair { polarity, .. } => Some(polarity),
        }
    }

    /// The two bridged nets; `None` for EXOR-internal faults.
    pub fn nets(&self) -> Option<(Net, Net)> {
        match *self {
            BridgingFault::ExorInternal { .. } => None,
            BridgingFault::XPair { i, j, .. } => Some((Net::X(i), Net::X(j))),
            BridgingFault::APair { i, j, .. } => Some((Net::A(i), Net::A(j))),
            BridgingFault::IntraLevel { level, j1, j2, .. } => {
                Some((Net::W { output: j1, level }, Net::W { output: j2, level }))
            }
        }
    }

    /// Short identifiers used in reports: `("x1","x2")`, `("c1@3","c2@3")`, `("g4","")`.
    pub fn labels(&self) -> (String, String) {
        match *self {
            BridgingFault::ExorInternal { gate } => (format!("g{}", gate + 1), String::new()),
            BridgingFault::XPair { i, j, .. } => (format!("x{}", i + 1), format!("x{}", j + 1)),
            BridgingFault::APair { i, j, .. } => (format!("a{}", i + 1), format!("a{}", j + 1)),
            BridgingFault::IntraLevel { level, j1, j2, .. } => {
                (format!("c{}@{}", j1 + 1, level), format!("c{}@{}", j2 + 1, level))
            }
        }
    }
}

impl fmt::Display for BridgingFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.labels();
        match self.polarity() {
            None => write!(f, "{} {}", self.class(), a),
            Some(pol) => write!(f, "{} ({} {}) {}", self.class(), a, b, pol),
        }
    }
}

/// Both bridged lines take the AND (or OR) of their driven values.
pub fn bridge_values(v1: bool, v2: bool, polarity: Polarity) -> (bool, bool) {
    let v = match polarity {
        Polarity::WiredAnd => v1 && v2,
        Polarity::WiredOr => v1 || v2,
    };
    (v, v)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FaultCounts {
    pub exor_internal: usize,
    pub x_pair: usize,
    pub intra_level: usize,
    pub a_pair: usize,
}

impl FaultCounts {
    pub fn total(&self) -> usize {
        self.exor_internal + self.x_pair + self.intra_level + self.a_pair
    }

    pub fn of(&self, class: FaultClass) -> usize {
        match class {
            FaultClass::ExorInternal => self.exor_internal,
            FaultClass::XPair => self.x_pair,
            FaultClass::IntraLevel => self.intra_level,
            FaultClass::APair => self.a_pair,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultList {
    pub faults: Vec<BridgingFault>,
}

impl FaultList {
    pub fn counts(&self) -> FaultCounts {
        let mut c = FaultCounts::default();
        for f in &self.faults {
            match f.class() {
                FaultClass::ExorInternal => c.exor_internal += 1,
                FaultClass::XPair => c.x_pair += 1,
                FaultClass::IntraLevel => c.intra_level += 1,
                FaultClass::APair => c.a_pair += 1,
            }
        }
        c
    }

    pub fn len(&self) -> usize {
        self.faults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faults.is_empty()
    }
}

/// Enumerates every in-model fault in report order: EXOR faults by gate,
/// then x pairs, intra-level pairs and a pairs, each lexicographic with
/// WiredAnd before WiredOr. The auxiliary constant line only takes part in
/// x pairs when `include_aux` is set.
pub fn enumerate_faults(network: &AndExorNetwork, include_aux: bool) -> FaultList {
    let mut faults = Vec::new();
    let d = network.d();
    faults.extend((0..d).map(|gate| BridgingFault::ExorInternal { gate }));

    let xs: Vec<usize> = if include_aux { (0..network.inputs()).collect() } else { network.data_inputs() };
    for (a, &i) in xs.iter().enumerate() {
        for &j in &xs[a + 1..] {
            for polarity in Polarity::BOTH {
                faults.push(BridgingFault::XPair { i, j, polarity });
            }
        }
    }
    let p = network.p();
    for level in 0..=d {
        for j1 in 0..p {
            for j2 in j1 + 1..p {
                for polarity in Polarity::BOTH {
                    faults.push(BridgingFault::IntraLevel { level, j1, j2, polarity });
                }
            }
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for polarity in Polarity::BOTH {
                faults.push(BridgingFault::APair { i, j, polarity });
            }
        }
    }
    FaultList { faults }
}

/// Pair counts for bridges between nets of different categories. These are
/// outside the fault model and only ever counted, never targeted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutOfModel {
    pub x_a: usize,
    pub x_w: usize,
    pub a_w: usize,
}

pub fn out_of_model_pairs(network: &AndExorNetwork) -> OutOfModel {
    let x = network.inputs();
    let a = network.d();
    let w = network.p() * (network.d() + 1);
    OutOfModel { x_a: x * a, x_w: x * w, a_w: a * w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{expand_network, ReversibleCircuit};

    #[test]
    fn table_one_rows() {
        use Polarity::*;
        let rows = [
            ((false, false), (false, false), (false, false)),
            ((false, true), (false, false), (true, true)),
            ((true, false), (false, false), (true, true)),
            ((true, true), (true, true), (true, true)),
        ];
        for ((x, y), and, or) in rows {
            assert_eq!(bridge_values(x, y, WiredAnd), and);
            assert_eq!(bridge_values(x, y, WiredOr), or);
        }
    }

    #[test]
    fn single_flip_lemma() {
        for pol in Polarity::BOTH {
            for v1 in [false, true] {
                for v2 in [false, true] {
                    let (z1, z2) = bridge_values(v1, v2, pol);
                    let flips = usize::from(z1 != v1) + usize::from(z2 != v2);
                    assert_eq!(flips, usize::from(v1 != v2));
                }
            }
        }
    }

    #[test]
    fn degenerate_counts() {
        let c = ReversibleCircuit::new(1, 1, [(vec![0], 0)]).unwrap();
        let counts = enumerate_faults(&expand_network(&c), false).counts();
        assert_eq!(counts, FaultCounts { exor_internal: 1, x_pair: 0, intra_level: 0, a_pair: 0 });

        let c = ReversibleCircuit::new(1, 2, []).unwrap();
        let list = enumerate_faults(&expand_network(&c), false);
        assert_eq!(list.counts().intra_level, 2);
        assert_eq!(list.faults[0], BridgingFault::intra_level(0, 0, 1, Polarity::WiredAnd));
    }

    #[test]
    fn aux_line_excluded_by_default() {
        let c = ReversibleCircuit::with_zero_controls(2, 1, [(vec![], 0)]).unwrap();
        let c = crate::circuit::normalize_zero_controls(c);
        let net = expand_network(&c);
        assert_eq!(enumerate_faults(&net, false).counts().x_pair, 2);
        assert_eq!(enumerate_faults(&net, true).counts().x_pair, 6);
    }

    #[test]
    fn constructors_order_pairs() {
        assert_eq!(
            BridgingFault::x_pair(4, 1, Polarity::WiredOr),
            BridgingFault::XPair { i: 1, j: 4, polarity: Polarity::WiredOr }
        );
        let f = BridgingFault::intra_level(3, 2, 0, Polarity::WiredAnd);
        assert_eq!(f.labels(), ("c1@3".to_string(), "c3@3".to_string()));
        assert_eq!(f.to_string(), "IntraLevel (c1@3 c3@3) WiredAnd");
    }
}
