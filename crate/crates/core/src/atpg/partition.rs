//! Partition-refinement generation of the x-pair test sets.
//!
//! Both wired-AND (T2) and wired-OR (T3) generation grow a tree over subsets
//! of the data inputs. The root is the full variable set. A candidate
//! pattern is fault-simulated against every still-unseparated pair; inside
//! each leaf, the pairs it fails to detect form a graph whose connected
//! components become the leaf's children. Every pair that straddles two
//! components is detected by that pattern, so once all leaves are
//! singletons every pair of the polarity is covered. A k-way split counts
//! as k-1 binary internal nodes, and each accepted pattern adds at least
//! one, which bounds the set size by `n - 1`.

use std::collections::HashMap;

use serde::Serialize;

use super::parity::build_parity_matrix;
use super::TestSet;
use crate::circuit::{AndExorNetwork, PprmFunction};
use crate::fault::{BridgingFault, Polarity};
use crate::pattern::{DcPolicy, Origin, Symbol, TestPattern};
use crate::sim;

/// Maximum number of restriction sets tried by the wired-OR case (c) search.
pub const RESTRICTION_BUDGET: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub vars: Vec<usize>,
    /// Index (within its test set) of the pattern that split this node.
    pub pattern: Option<usize>,
    /// Gate whose support produced the splitting pattern, for T2.
    pub gate: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionTree {
    pub nodes: Vec<TreeNode>,
}

impl PartitionTree {
    fn new(vars: Vec<usize>) -> Self {
        Self { nodes: vec![TreeNode { vars, pattern: None, gate: None, children: Vec::new() }] }
    }

    /// Leaf node ids ordered by their smallest variable.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.nodes.len()).filter(|&k| self.nodes[k].children.is_empty()).collect();
        out.sort_by_key(|&k| self.nodes[k].vars.first().copied());
        out
    }

    /// Internal nodes of the equivalent binary tree.
    pub fn internal_nodes(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len().saturating_sub(1)).sum()
    }

    /// Same-leaf pairs, i.e. pairs no accepted pattern separated.
    pub fn unseparated_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in self.leaves() {
            let vars = &self.nodes[k].vars;
            for (a, &i) in vars.iter().enumerate() {
                for &j in &vars[a + 1..] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.leaves().iter().all(|&k| self.nodes[k].vars.len() <= 1)
    }
}

fn components(vars: &[usize], undetected: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..vars.len()).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while parent[r] != r {
            r = parent[r];
        }
        parent[a] = r;
        r
    }
    for &(a, b) in undetected {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for a in 0..vars.len() {
        let r = find(&mut parent, a);
        let g = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(vars[a]);
    }
    groups
}

struct Refiner<'a> {
    net: &'a AndExorNetwork,
    policy: DcPolicy,
    polarity: Polarity,
    tree: PartitionTree,
    /// Bumped on every split; used to skip re-simulating stale candidates.
    generation: usize,
}

impl<'a> Refiner<'a> {
    fn new(net: &'a AndExorNetwork, policy: DcPolicy, polarity: Polarity) -> Self {
        Self { net, policy, polarity, tree: PartitionTree::new(net.data_inputs()), generation: 0 }
    }

    fn leaf_of(&self, var: usize) -> usize {
        self.tree
            .leaves()
            .into_iter()
            .find(|&k| self.tree.nodes[k].vars.contains(&var))
            .expect("every data input lives in one leaf")
    }

    /// Splits computed for `pattern` on every non-singleton leaf.
    fn splits(&self, pattern: &TestPattern) -> Vec<(usize, Vec<Vec<usize>>)> {
        let mut out = Vec::new();
        for leaf in self.tree.leaves() {
            let vars = &self.tree.nodes[leaf].vars;
            if vars.len() < 2 {
                continue;
            }
            let mut undetected = Vec::new();
            for a in 0..vars.len() {
                for b in a + 1..vars.len() {
                    let fault = BridgingFault::x_pair(vars[a], vars[b], self.polarity);
                    let hit = sim::detects(self.net, &fault, pattern, self.policy).expect("generated pattern fits network");
                    if !hit {
                        undetected.push((a, b));
                    }
                }
            }
            let comps = components(vars, &undetected);
            if comps.len() > 1 {
                out.push((leaf, comps));
            }
        }
        out
    }

    fn commit(&mut self, splits: Vec<(usize, Vec<Vec<usize>>)>, pattern: usize, gate: Option<usize>) {
        for (leaf, comps) in splits {
            let first = self.tree.nodes.len();
            for vars in comps {
                self.tree.nodes.push(TreeNode { vars, pattern: None, gate: None, children: Vec::new() });
            }
            let children = (first..self.tree.nodes.len()).collect();
            let node = &mut self.tree.nodes[leaf];
            node.pattern = Some(pattern);
            node.gate = gate;
            node.children = children;
        }
        self.generation += 1;
    }

    /// Accepts `pattern` if it splits `required` (or any leaf when `None`).
    fn offer(&mut self, pattern: &TestPattern, index: usize, gate: Option<usize>, required: Option<usize>) -> bool {
        let splits = self.splits(pattern);
        let ok = match required {
            Some(leaf) => splits.iter().any(|(l, _)| *l == leaf),
            None => !splits.is_empty(),
        };
        if ok {
            self.commit(splits, index, gate);
        }
        ok
    }

    /// Re-applies already accepted patterns to leaves created after them.
    fn settle(&mut self, accepted: &[TestPattern]) {
        loop {
            let mut changed = false;
            for (k, pat) in accepted.iter().enumerate() {
                let splits = self.splits(pat);
                if !splits.is_empty() {
                    self.commit(splits, k, None);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Result of one x-pair generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSet {
    pub set: TestSet,
    pub tree: PartitionTree,
    /// Data-input pairs no generated pattern provably covers.
    pub uncovered: Vec<(usize, usize)>,
}

fn x_pattern(net: &AndExorNetwork, ones: impl Fn(usize) -> bool, origin: Origin) -> TestPattern {
    let x = (0..net.inputs())
        .map(|i| Symbol::bit(Some(i) == net.aux_line() || ones(i)))
        .collect();
    TestPattern::new(vec![Symbol::DontCare; net.p()], x, origin)
}

/// Wired-AND x-pair tests: each pattern drives one gate's support to 1 and
/// every other data input to 0, so a bridge from a 1-input to a 0-input
/// pulls the gate low. For the first unsplit leaf, gates whose support
/// properly cuts it are tried by `(|A_i|, gate id)`.
pub fn gen_t2(net: &AndExorNetwork, policy: DcPolicy) -> PairSet {
    let mut r = Refiner::new(net, policy, Polarity::WiredAnd);
    let mut patterns: Vec<TestPattern> = Vec::new();
    let mut candidates: Vec<usize> = (0..net.d()).filter(|&g| !net.and_inputs(g).is_empty()).collect();
    candidates.sort_by_key(|&g| (net.and_inputs(g).len(), g));
    let mut stuck = Vec::new();

    loop {
        let leaves = r.tree.leaves();
        let Some(leaf) = leaves
            .into_iter()
            .find(|k| r.tree.nodes[*k].vars.len() > 1 && !stuck.contains(k))
        else {
            break;
        };
        let vars = r.tree.nodes[leaf].vars.clone();
        let mut accepted = false;
        for &g in &candidates {
            let support = net.and_inputs(g);
            let inside = vars.iter().filter(|v| support.contains(v)).count();
            if inside == 0 || inside == vars.len() {
                continue;
            }
            let pat = x_pattern(net, |i| support.contains(&i), Origin::T2);
            if patterns.contains(&pat) {
                continue;
            }
            if r.offer(&pat, patterns.len(), Some(g), Some(leaf)) {
                patterns.push(pat);
                r.settle(&patterns);
                accepted = true;
                break;
            }
        }
        if !accepted {
            stuck.push(leaf);
        }
    }
    let uncovered = r.tree.unseparated_pairs();
    PairSet { set: TestSet { origin: Origin::T2, patterns }, tree: r.tree, uncovered }
}

/// Lexicographic k-subsets of `items`.
fn combinations(items: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = items.len();
    let mut idx: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let cur = idx.take()?;
        let out = cur.iter().map(|&i| items[i]).collect();
        let mut next = cur;
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if next[pos] < n - k + pos {
                next[pos] += 1;
                for q in pos + 1..k {
                    next[q] = next[q - 1] + 1;
                }
                idx = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Wired-OR x-pair tests from the parity matrix.
///
/// Case (a): `p_ii = 1` gives the all-ones pattern with `x_i = 0`; raising
/// `x_i` enables an odd number of gates. Case (b): `p_ii = 0, p_ik = 1`
/// gives all-ones with `x_i = x_k = 0`. Case (c): when neither applies to
/// the remaining leaves, variables are held at 0 (one at a time, then
/// pairs, and so on), the matrix is rebuilt on the cofactor, and (a)/(b)
/// are retried with the held variables kept at 0.
pub fn gen_t3(pprms: &[PprmFunction], net: &AndExorNetwork, policy: DcPolicy) -> PairSet {
    let mut r = Refiner::new(net, policy, Polarity::WiredOr);
    let mut patterns: Vec<TestPattern> = Vec::new();
    let active = net.data_inputs();
    let mut tried: HashMap<Vec<Symbol>, usize> = HashMap::new();
    let mut budget = RESTRICTION_BUDGET;

    'search: for depth in 0..active.len() {
        for held in combinations(&active, depth) {
            if r.tree.is_complete() {
                break 'search;
            }
            if budget == 0 {
                break 'search;
            }
            budget -= 1;
            let restricted: Vec<PprmFunction> = pprms.iter().map(|f| f.restrict(&held)).collect();
            let vars: Vec<usize> = active.iter().copied().filter(|v| !held.contains(v)).collect();
            let pm = build_parity_matrix(&restricted, &vars);
            if pm.is_zero() {
                continue;
            }
            let mut try_zeros = |r: &mut Refiner<'_>, patterns: &mut Vec<TestPattern>, zeros: &[usize]| -> bool {
                let pat = x_pattern(net, |i| !held.contains(&i) && !zeros.contains(&i), Origin::T3);
                if patterns.contains(&pat) || tried.get(&pat.x) == Some(&r.generation) {
                    return false;
                }
                tried.insert(pat.x.clone(), r.generation);
                if r.offer(&pat, patterns.len(), None, None) {
                    patterns.push(pat);
                    r.settle(patterns);
                    true
                } else {
                    false
                }
            };
            loop {
                let mut progress = false;
                // case (a)
                for &i in &vars {
                    if pm.get(i, i) && r.tree.nodes[r.leaf_of(i)].vars.len() > 1 {
                        progress |= try_zeros(&mut r, &mut patterns, &[i]);
                    }
                }
                // case (b)
                for &i in &vars {
                    if pm.get(i, i) || r.tree.nodes[r.leaf_of(i)].vars.len() < 2 {
                        continue;
                    }
                    for &k in vars.iter().filter(|&&k| k != i && pm.get(i, k)) {
                        if try_zeros(&mut r, &mut patterns, &[i, k]) {
                            progress = true;
                            break;
                        }
                    }
                }
                if !progress || r.tree.is_complete() {
                    break;
                }
            }
        }
    }
    let uncovered = r.tree.unseparated_pairs();
    PairSet { set: TestSet { origin: Origin::T3, patterns }, tree: r.tree, uncovered }
}
