//! Test patterns over `(c1..cp, x1..xn)` with don't-care bits, and the
//! line-oriented test-set file format.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "d")]
    DontCare,
}

impl Symbol {
    pub fn bit(b: bool) -> Self {
        if b {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn resolve(self, policy: DcPolicy) -> bool {
        match self {
            Symbol::Zero => false,
            Symbol::One => true,
            Symbol::DontCare => policy == DcPolicy::FillOne,
        }
    }

    fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::DontCare => 'd',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            'd' | 'D' | '-' => Some(Symbol::DontCare),
            _ => None,
        }
    }
}

/// How don't-care bits are driven during simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum DcPolicy {
    #[default]
    #[serde(rename = "fill-zero")]
    FillZero,
    #[serde(rename = "fill-one")]
    FillOne,
}

impl FromStr for DcPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fill-zero" | "zero" => Ok(DcPolicy::FillZero),
            "fill-one" | "one" => Ok(DcPolicy::FillOne),
            _ => Err(format!("unknown don't-care policy `{s}` (expected fill-zero or fill-one)")),
        }
    }
}

impl fmt::Display for DcPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DcPolicy::FillZero => "fill-zero",
            DcPolicy::FillOne => "fill-one",
        })
    }
}

/// Which generator produced a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Origin {
    T1,
    T2,
    T3,
    T4,
    T5,
    Fallback,
    User,
}

impl Origin {
    pub const GENERATED: [Origin; 5] = [Origin::T1, Origin::T2, Origin::T3, Origin::T4, Origin::T5];
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Origin {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "T1" => Ok(Origin::T1),
            "T2" => Ok(Origin::T2),
            "T3" => Ok(Origin::T3),
            "T4" => Ok(Origin::T4),
            "T5" => Ok(Origin::T5),
            "Fallback" => Ok(Origin::Fallback),
            "User" => Ok(Origin::User),
            other => Err(format!("unknown test set `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TestPattern {
    pub c: Vec<Symbol>,
    pub x: Vec<Symbol>,
    pub origin: Origin,
}

impl TestPattern {
    pub fn new(c: Vec<Symbol>, x: Vec<Symbol>, origin: Origin) -> Self {
        Self { c, x, origin }
    }

    pub fn from_bits(c: &[bool], x: &[bool], origin: Origin) -> Self {
        Self::new(c.iter().map(|&b| Symbol::bit(b)).collect(), x.iter().map(|&b| Symbol::bit(b)).collect(), origin)
    }

    /// Parses `"110 0000000"`; whitespace is ignored, the first `p` symbols are c bits.
    pub fn parse(s: &str, p: usize, origin: Origin) -> Result<Self, PatternError> {
        let mut syms = Vec::new();
        for (col, ch) in s.chars().enumerate() {
            if ch.is_whitespace() {
                continue;
            }
            syms.push(Symbol::from_char(ch).ok_or(PatternError::BadSymbol { col: col + 1, ch })?);
        }
        if syms.len() < p {
            return Err(PatternError::Width { expected: p, found: syms.len() });
        }
        let x = syms.split_off(p);
        Ok(Self::new(syms, x, origin))
    }

    pub fn resolve(&self, policy: DcPolicy) -> (Vec<bool>, Vec<bool>) {
        (
            self.c.iter().map(|s| s.resolve(policy)).collect(),
            self.x.iter().map(|s| s.resolve(policy)).collect(),
        )
    }

    pub fn c_string(&self) -> String {
        self.c.iter().map(|s| s.as_char()).collect()
    }

    pub fn x_string(&self) -> String {
        self.x.iter().map(|s| s.as_char()).collect()
    }
}

impl fmt::Display for TestPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.c_string(), self.x_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("column {col}: invalid pattern symbol `{ch}`")]
    BadSymbol { col: usize, ch: char },
    #[error("pattern has {found} symbols, expected {expected}")]
    Width { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<PatternError> },
    #[error("test-set report: {0}")]
    Json(String),
}

/// Reads a test-set file: one pattern per line (c bits then x bits), `#`
/// comments. A trailing comment naming a set (`# T3`) sets the origin.
pub fn parse_test_set(text: &str, p: usize, inputs: usize) -> Result<Vec<TestPattern>, PatternError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if body.trim().is_empty() {
            continue;
        }
        let origin = comment.and_then(|c| c.trim().parse().ok()).unwrap_or(Origin::User);
        let wrap = |e| PatternError::Line { line: idx + 1, source: Box::new(e) };
        let pat = TestPattern::parse(body, p, origin).map_err(wrap)?;
        if pat.x.len() != inputs {
            return Err(wrap(PatternError::Width { expected: p + inputs, found: p + pat.x.len() }));
        }
        out.push(pat);
    }
    Ok(out)
}

/// Writes patterns in the format read by [`parse_test_set`].
pub fn write_test_set(patterns: &[TestPattern]) -> String {
    let mut s = String::new();
    for pat in patterns {
        s.push_str(&format!("{pat}  # {}\n", pat.origin));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t = TestPattern::parse("ddd 0111111", 3, Origin::T5).unwrap();
        assert_eq!(t.c, vec![Symbol::DontCare; 3]);
        assert_eq!(t.to_string(), "ddd 0111111");
        assert_eq!(t.resolve(DcPolicy::FillOne).0, vec![true; 3]);
        assert_eq!(t.resolve(DcPolicy::FillZero).0, vec![false; 3]);
    }

    #[test]
    fn file_round_trip_keeps_origin() {
        let pats = vec![
            TestPattern::parse("110 0000000", 3, Origin::T4).unwrap(),
            TestPattern::parse("ddd1011011", 3, Origin::T3).unwrap(),
        ];
        let text = write_test_set(&pats);
        assert_eq!(parse_test_set(&text, 3, 7).unwrap(), pats);
        let user = parse_test_set("# header\n110 0000000\n", 3, 7).unwrap();
        assert_eq!(user[0].origin, Origin::User);
    }

    #[test]
    fn bad_input() {
        assert_eq!(TestPattern::parse("10x", 1, Origin::User), Err(PatternError::BadSymbol { col: 3, ch: 'x' }));
        let err = parse_test_set("10\n101\n", 1, 1).unwrap_err();
        assert!(matches!(err, PatternError::Line { line: 2, .. }));
    }
}
