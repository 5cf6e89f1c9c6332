//! Gate-membership counts and the GF(2) parity matrix that drives the
//! wired-OR test construction.

use std::fmt;

use serde::Serialize;

use crate::circuit::PprmFunction;

/// Number of AND gates of output `k` whose support contains every variable
/// in `vars` (one or two variables).
pub fn count_terms(pprms: &[PprmFunction], k: usize, vars: &[usize]) -> usize {
    debug_assert!(!vars.is_empty() && vars.len() <= 2);
    pprms[k].count_containing(vars)
}

/// Gates of output `k` fed by `x_i` or `x_j`, by inclusion-exclusion.
pub fn count_union(pprms: &[PprmFunction], k: usize, i: usize, j: usize) -> usize {
    debug_assert_ne!(i, j);
    count_terms(pprms, k, &[i]) + count_terms(pprms, k, &[j]) - count_terms(pprms, k, &[i, j])
}

/// Symmetric bit matrix over the active variables; entry `(i,j)` is set when
/// some output has an odd number of gates containing both `x_i` and `x_j`
/// (the diagonal uses `x_i` alone).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityMatrix {
    pub order: Vec<usize>,
    pub entries: Vec<Vec<bool>>,
}

impl ParityMatrix {
    fn pos(&self, var: usize) -> Option<usize> {
        self.order.iter().position(|&v| v == var)
    }

    /// Entry for variables `i`, `j`; `false` if either is not active.
    pub fn get(&self, i: usize, j: usize) -> bool {
        match (self.pos(i), self.pos(j)) {
            (Some(a), Some(b)) => self.entries[a][b],
            _ => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&b| !b)
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.order.len();
        (0..m).all(|a| (0..m).all(|b| self.entries[a][b] == self.entries[b][a]))
    }
}

impl fmt::Display for ParityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "    ")?;
        for v in &self.order {
            write!(f, " x{:<2}", v + 1)?;
        }
        writeln!(f)?;
        for (v, row) in self.order.iter().zip(&self.entries) {
            write!(f, "x{:<3}", v + 1)?;
            for &b in row {
                write!(f, " {:<3}", u8::from(b))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn build_parity_matrix(pprms: &[PprmFunction], active: &[usize]) -> ParityMatrix {
    let odd = |vars: &[usize]| (0..pprms.len()).any(|k| count_terms(pprms, k, vars) % 2 == 1);
    let entries = active
        .iter()
        .map(|&i| active.iter().map(|&j| if i == j { odd(&[i]) } else { odd(&[i, j]) }).collect())
        .collect();
    ParityMatrix { order: active.to_vec(), entries }
}
