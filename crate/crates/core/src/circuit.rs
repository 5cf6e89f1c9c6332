//! Reversible k-CNOT circuits, their text format, and the AND-EXOR expansion.
//!
//! A circuit has `n` pass-through lines `x1..xn` that are never modified and
//! `p` target lines `c1..cp`. Every gate XORs the conjunction of a non-empty
//! set of x lines onto one target line, so after the whole cascade each
//! output `f_j` equals `c_j` XOR a positive-polarity Reed-Muller form in the
//! x lines.
//!
//! Indices are zero-based everywhere in the API; the text format and all
//! `Display` impls use one-based names (`x1`, `c1`, `a1`).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// One k-CNOT gate. `controls` is the support set `A_i` of its AND gate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Gate {
    /// Position in gate order; gate `id` sits at level `id + 1`.
    pub id: usize,
    /// Sorted, duplicate-free x-line indices.
    pub controls: Vec<usize>,
    pub target: usize,
}

impl Gate {
    pub fn k(&self) -> usize {
        self.controls.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit needs at least one pass-through line and one target line (n={n}, p={p})")]
    EmptyDimension { n: usize, p: usize },
    #[error("gate {gate}: control x{} out of range 1..={n}", .index + 1)]
    ControlOutOfRange { gate: usize, index: usize, n: usize },
    #[error("gate {gate}: target c{} out of range 1..={p}", .index + 1)]
    TargetOutOfRange { gate: usize, index: usize, p: usize },
    #[error("gate {gate}: duplicate control x{}", .index + 1)]
    DuplicateControl { gate: usize, index: usize },
    #[error("gate {gate}: empty control set (0-CNOT) requires normalization")]
    EmptyControls { gate: usize },
}

/// An ordered list of k-CNOT gates over `n` x lines and `p` c lines.
///
/// Gates with an empty control set (0-CNOT, i.e. NOT) are representable so
/// that they can be parsed and then removed by [`normalize_zero_controls`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleCircuit {
    pub name: String,
    n: usize,
    p: usize,
    gates: Vec<Gate>,
    aux: Option<usize>,
}

impl ReversibleCircuit {
    /// Builds a circuit from `(controls, target)` pairs in gate order. Controls
    /// are sorted; an empty control list is rejected.
    pub fn new(
        n: usize,
        p: usize,
        gates: impl IntoIterator<Item = (Vec<usize>, usize)>,
    ) -> Result<Self, CircuitError> {
        Self::build(n, p, gates, false)
    }

    /// Like [`ReversibleCircuit::new`] but accepts 0-CNOT gates.
    pub fn with_zero_controls(
        n: usize,
        p: usize,
        gates: impl IntoIterator<Item = (Vec<usize>, usize)>,
    ) -> Result<Self, CircuitError> {
        Self::build(n, p, gates, true)
    }

    fn build(
        n: usize,
        p: usize,
        gates: impl IntoIterator<Item = (Vec<usize>, usize)>,
        allow_empty: bool,
    ) -> Result<Self, CircuitError> {
        if n == 0 || p == 0 {
            return Err(CircuitError::EmptyDimension { n, p });
        }
        let mut out = Vec::new();
        for (id, (mut controls, target)) in gates.into_iter().enumerate() {
            if target >= p {
                return Err(CircuitError::TargetOutOfRange { gate: id + 1, index: target, p });
            }
            controls.sort_unstable();
            for w in controls.windows(2) {
                if w[0] == w[1] {
                    return Err(CircuitError::DuplicateControl { gate: id + 1, index: w[0] });
                }
            }
            if let Some(&index) = controls.iter().find(|&&i| i >= n) {
                return Err(CircuitError::ControlOutOfRange { gate: id + 1, index, n });
            }
            if controls.is_empty() && !allow_empty {
                return Err(CircuitError::EmptyControls { gate: id + 1 });
            }
            out.push(Gate { id, controls, target });
        }
        Ok(Self { name: String::new(), n, p, gates: out, aux: None })
    }

    /// Number of data x lines, excluding the constant-one auxiliary line.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of x lines including the auxiliary line when present.
    pub fn inputs(&self) -> usize {
        self.n + usize::from(self.aux.is_some())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Circuit depth; equal to the number of gates.
    pub fn d(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Index of the constant-one line introduced by normalization.
    pub fn aux_line(&self) -> Option<usize> {
        self.aux
    }

    pub fn has_zero_controls(&self) -> bool {
        self.gates.iter().any(|g| g.controls.is_empty())
    }

    /// Evaluates the cascade on one assignment. `x` must cover [`inputs`](Self::inputs).
    pub fn evaluate(&self, c: &[bool], x: &[bool]) -> Vec<bool> {
        let mut w = c.to_vec();
        for g in &self.gates {
            if g.controls.iter().all(|&i| x[i]) {
                w[g.target] ^= true;
            }
        }
        w
    }
}

/// Rewrites every 0-CNOT as a 1-CNOT controlled by a shared constant-one
/// line appended after the data inputs. Circuits without 0-CNOTs are
/// returned unchanged.
pub fn normalize_zero_controls(mut circuit: ReversibleCircuit) -> ReversibleCircuit {
    if !circuit.has_zero_controls() {
        return circuit;
    }
    let aux = *circuit.aux.get_or_insert(circuit.n);
    for g in circuit.gates.iter_mut().filter(|g| g.controls.is_empty()) {
        g.controls.push(aux);
    }
    circuit
}

/// Prints the circuit in the text format accepted by [`parse_circuit`].
/// Gates on the auxiliary line print as 0-CNOTs.
impl fmt::Display for ReversibleCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            writeln!(f, "# {}", self.name)?;
        }
        writeln!(f, ".n {}", self.n)?;
        writeln!(f, ".p {}", self.p)?;
        for g in &self.gates {
            write!(f, ".gate c{} :", g.target + 1)?;
            for &i in g.controls.iter().filter(|&&i| Some(i) != self.aux) {
                write!(f, " x{}", i + 1)?;
            }
            writeln!(f)?;
        }
        writeln!(f, ".end")
    }
}

// ---------------------------------------------------------------------------
// Text format

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: control on target line `{token}`")]
    ControlOnTargetLine { line: usize, col: usize, token: String },
    #[error("{line}:{col}: target on pass-through line `{token}`")]
    TargetOnPassThrough { line: usize, col: usize, token: String },
    #[error("{line}: {source}")]
    Invalid { line: usize, source: CircuitError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept `.gate c<j> :` with no controls.
    pub allow_zero_controls: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { allow_zero_controls: true }
    }
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut col = 0;
    for (byte, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() || ch == ':' {
            if let Some((b, c)) = start.take() {
                out.push(Token { text: &line[b..byte], col: c });
            }
            if ch == ':' {
                out.push(Token { text: &line[byte..byte + 1], col });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Token { text: &line[b..], col: c });
    }
    out
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, col, msg: msg.into() }
}

fn parse_count(line: usize, tok: Option<&Token<'_>>, what: &str, at: usize) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, at, format!("expected integer after {what}")))?;
    tok.text
        .parse()
        .map_err(|_| syntax(line, tok.col, format!("expected integer after {what}, found `{}`", tok.text)))
}

/// Parses `x<i>` / `c<j>` into a zero-based index.
fn line_index(tok: &Token<'_>, prefix: char) -> Option<usize> {
    let rest = tok.text.strip_prefix(prefix)?;
    let i: usize = rest.parse().ok()?;
    i.checked_sub(1)
}

/// Parses the line-oriented circuit format:
///
/// ```text
/// # comment
/// .n 2
/// .p 1
/// .gate c1 : x1 x2
/// .end
/// ```
pub fn parse_circuit(text: &str, opts: ParseOptions) -> Result<ReversibleCircuit, ParseError> {
    let mut n = None;
    let mut p = None;
    let mut gates = Vec::new();
    let mut gate_lines = Vec::new();
    let mut ended = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokenize(body);
        let Some(head) = toks.first() else { continue };
        if ended {
            return Err(syntax(line, head.col, "content after .end"));
        }
        match head.text {
            ".n" => {
                if n.is_some() {
                    return Err(syntax(line, head.col, "duplicate .n"));
                }
                n = Some(parse_count(line, toks.get(1), ".n", head.col + 2)?);
                if toks.len() > 2 {
                    return Err(syntax(line, toks[2].col, "unexpected token"));
                }
            }
            ".p" => {
                if n.is_none() {
                    return Err(syntax(line, head.col, ".p before .n"));
                }
                if p.is_some() {
                    return Err(syntax(line, head.col, "duplicate .p"));
                }
                p = Some(parse_count(line, toks.get(1), ".p", head.col + 2)?);
                if toks.len() > 2 {
                    return Err(syntax(line, toks[2].col, "unexpected token"));
                }
            }
            ".gate" => {
                let (Some(n), Some(p)) = (n, p) else {
                    return Err(syntax(line, head.col, ".gate before .n/.p"));
                };
                let target_tok = toks
                    .get(1)
                    .ok_or_else(|| syntax(line, head.col + 5, "expected target `c<j>`"))?;
                if target_tok.text.starts_with('x') && line_index(target_tok, 'x').is_some() {
                    return Err(ParseError::TargetOnPassThrough {
                        line,
                        col: target_tok.col,
                        token: target_tok.text.to_string(),
                    });
                }
                let target = line_index(target_tok, 'c').ok_or_else(|| {
                    syntax(line, target_tok.col, format!("expected target `c<j>`, found `{}`", target_tok.text))
                })?;
                match toks.get(2) {
                    Some(t) if t.text == ":" => {}
                    Some(t) => return Err(syntax(line, t.col, format!("expected `:`, found `{}`", t.text))),
                    None => return Err(syntax(line, target_tok.col + target_tok.text.len(), "expected `:`")),
                }
                let mut controls = Vec::new();
                for tok in &toks[3..] {
                    if let Some(i) = line_index(tok, 'x') {
                        controls.push(i);
                    } else if line_index(tok, 'c').is_some() {
                        return Err(ParseError::ControlOnTargetLine {
                            line,
                            col: tok.col,
                            token: tok.text.to_string(),
                        });
                    } else {
                        return Err(syntax(line, tok.col, format!("expected control `x<i>`, found `{}`", tok.text)));
                    }
                }
                if controls.is_empty() && !opts.allow_zero_controls {
                    return Err(ParseError::Invalid {
                        line,
                        source: CircuitError::EmptyControls { gate: gates.len() + 1 },
                    });
                }
                // Range checks are reported against the gate's own line.
                if target >= p {
                    return Err(ParseError::Invalid {
                        line,
                        source: CircuitError::TargetOutOfRange { gate: gates.len() + 1, index: target, p },
                    });
                }
                if let Some(&index) = controls.iter().find(|&&i| i >= n) {
                    return Err(ParseError::Invalid {
                        line,
                        source: CircuitError::ControlOutOfRange { gate: gates.len() + 1, index, n },
                    });
                }
                gates.push((controls, target));
                gate_lines.push(line);
            }
            ".end" => {
                if p.is_none() {
                    return Err(syntax(line, head.col, ".end before .n/.p"));
                }
                ended = true;
            }
            other => return Err(syntax(line, head.col, format!("unknown directive `{other}`"))),
        }
    }
    if !ended {
        return Err(syntax(last_line.max(1), 1, "missing .end"));
    }
    let (n, p) = (n.unwrap_or(0), p.unwrap_or(0));
    ReversibleCircuit::with_zero_controls(n, p, gates).map_err(|source| {
        let line = match &source {
            CircuitError::ControlOutOfRange { gate, .. }
            | CircuitError::TargetOutOfRange { gate, .. }
            | CircuitError::DuplicateControl { gate, .. }
            | CircuitError::EmptyControls { gate } => gate_lines[gate - 1],
            CircuitError::EmptyDimension { .. } => 1,
        };
        ParseError::Invalid { line, source }
    })
}

// ---------------------------------------------------------------------------
// PPRM

/// A positive product term: sorted set of x indices.
pub type Term = Vec<usize>;

/// `f_j = c_j XOR (XOR of terms)`, kept both as the physical multiset (one
/// term per AND gate, gate order) and its mod-2 reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PprmFunction {
    pub output: usize,
    pub terms: Vec<Term>,
    pub canonical: Vec<Term>,
}

impl PprmFunction {
    pub fn from_terms(output: usize, terms: Vec<Term>) -> Self {
        let canonical = canonicalize(&terms);
        Self { output, terms, canonical }
    }

    /// GF(2) sum of the canonical terms.
    pub fn eval(&self, x: &[bool]) -> bool {
        eval_terms(&self.canonical, x)
    }

    /// GF(2) sum of the physical term multiset.
    pub fn eval_multiset(&self, x: &[bool]) -> bool {
        eval_terms(&self.terms, x)
    }

    /// Cofactor with every variable in `zeroed` set to 0.
    pub fn restrict(&self, zeroed: &[usize]) -> PprmFunction {
        let terms = self
            .terms
            .iter()
            .filter(|t| !t.iter().any(|v| zeroed.contains(v)))
            .cloned()
            .collect();
        Self::from_terms(self.output, terms)
    }

    /// Number of terms in the multiset containing every variable in `vars`.
    pub fn count_containing(&self, vars: &[usize]) -> usize {
        self.terms.iter().filter(|t| vars.iter().all(|v| t.contains(v))).count()
    }
}

fn eval_terms(terms: &[Term], x: &[bool]) -> bool {
    terms.iter().filter(|t| t.iter().all(|&i| x[i])).count() % 2 == 1
}

fn canonicalize(terms: &[Term]) -> Vec<Term> {
    let mut parity: BTreeMap<(usize, &Term), bool> = BTreeMap::new();
    for t in terms {
        *parity.entry((t.len(), t)).or_default() ^= true;
    }
    parity.into_iter().filter(|&(_, odd)| odd).map(|((_, t), _)| t.clone()).collect()
}

pub fn derive_pprm(circuit: &ReversibleCircuit) -> Vec<PprmFunction> {
    (0..circuit.p())
        .map(|j| {
            let terms = circuit
                .gates()
                .iter()
                .filter(|g| g.target == j)
                .map(|g| g.controls.clone())
                .collect();
            PprmFunction::from_terms(j, terms)
        })
        .collect()
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    if t.is_empty() {
        return f.write_str("1");
    }
    for &i in t {
        write!(f, "x{}", i + 1)?;
    }
    Ok(())
}

impl fmt::Display for PprmFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{} = c{}", self.output + 1, self.output + 1)?;
        for t in &self.canonical {
            f.write_str(" ^ ")?;
            write_term(f, t)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// AND-EXOR network

/// Stable net identifiers of the expanded netlist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Net {
    /// Pass-through input `x_i` and all of its fanout.
    X(usize),
    /// Output of AND gate `i` and all of its fanout.
    A(usize),
    /// Cascade wire of output `j` at `level`; `W(j,0)` is `c_j`, `W(j,d)` is `f_j`.
    W { output: usize, level: usize },
}

impl fmt::Display for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Net::X(i) => write!(f, "x{}", i + 1),
            Net::A(i) => write!(f, "a{}", i + 1),
            Net::W { output, level } => write!(f, "w{}_{}", output + 1, level),
        }
    }
}

/// The 2-input EXOR of gate `id`: `output = left ^ right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExorGate {
    pub id: usize,
    pub left: Net,
    pub right: Net,
    pub output: Net,
}

/// Expanded AND-EXOR netlist. Each gate `ℓ` (1-based level) contributes an
/// AND gate `a_ℓ` and an EXOR on its target cascade; untouched cascades pass
/// their wire through unchanged to the next level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AndExorNetwork {
    n: usize,
    inputs: usize,
    p: usize,
    aux: Option<usize>,
    and_inputs: Vec<Vec<usize>>,
    targets: Vec<usize>,
    exor_gates: Vec<ExorGate>,
}

impl AndExorNetwork {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> usize {
        self.targets.len()
    }

    pub fn aux_line(&self) -> Option<usize> {
        self.aux
    }

    /// Control nets of AND gate `i`.
    pub fn and_inputs(&self, i: usize) -> &[usize] {
        &self.and_inputs[i]
    }

    pub fn target(&self, gate: usize) -> usize {
        self.targets[gate]
    }

    pub fn exor_gates(&self) -> &[ExorGate] {
        &self.exor_gates
    }

    pub fn x_nets(&self) -> Vec<Net> {
        (0..self.inputs).map(Net::X).collect()
    }

    pub fn a_nets(&self) -> Vec<Net> {
        (0..self.d()).map(Net::A).collect()
    }

    /// `W(j,0) .. W(j,d)` for output `j`.
    pub fn cascade_nets(&self, output: usize) -> Vec<Net> {
        (0..=self.d()).map(|level| Net::W { output, level }).collect()
    }

    /// Data x lines, i.e. every x except the auxiliary line.
    pub fn data_inputs(&self) -> Vec<usize> {
        (0..self.inputs).filter(|&i| Some(i) != self.aux).collect()
    }
}

pub fn expand_network(circuit: &ReversibleCircuit) -> AndExorNetwork {
    let exor_gates = circuit
        .gates()
        .iter()
        .map(|g| ExorGate {
            id: g.id,
            left: Net::W { output: g.target, level: g.id },
            right: Net::A(g.id),
            output: Net::W { output: g.target, level: g.id + 1 },
        })
        .collect();
    AndExorNetwork {
        n: circuit.n(),
        inputs: circuit.inputs(),
        p: circuit.p(),
        aux: circuit.aux_line(),
        and_inputs: circuit.gates().iter().map(|g| g.controls.clone()).collect(),
        targets: circuit.gates().iter().map(|g| g.target).collect(),
        exor_gates,
    }
}
