//! Tokens, sentences and depth-annotated sentences, plus the depths file
//! format (`{"tokens": [...], "depths": [...]}` per line).

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Wire literal of the internal-node flag.
pub const ITN_LITERAL: &str = "<ITN>";
/// Wire literal of the vacant-slot marker.
pub const VAC_LITERAL: &str = "<VAC>";

fn is_reserved(text: &str) -> bool {
    text == ITN_LITERAL || text == VAC_LITERAL
}

/// A non-empty opaque token that is not one of the reserved literals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Token(String);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TokenError {
    #[error("empty token")]
    Empty,
    #[error("token {0:?} collides with a reserved literal")]
    Reserved(String),
}

impl Token {
    pub fn new(text: impl Into<String>) -> Result<Self, TokenError> {
        let text = text.into();
        if text.is_empty() {
            Err(TokenError::Empty)
        } else if is_reserved(&text) {
            Err(TokenError::Reserved(text))
        } else {
            Ok(Token(text))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Token {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Token::new(text).map_err(serde::de::Error::custom)
    }
}

/// An ordered list of tokens. May be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sentence(Vec<Token>);

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence(tokens)
    }

    /// Splits a text line on runs of whitespace.
    pub fn from_whitespace(line: &str) -> Result<Self, Violation> {
        line.split_whitespace()
            .enumerate()
            .map(|(index, word)| {
                Token::new(word).map_err(|_| Violation::ReservedTokenCollision {
                    index,
                    token: word.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Sentence)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn into_tokens(self) -> Vec<Token> {
        self.0
    }

    /// Tokens joined by single spaces.
    pub fn join(&self) -> String {
        let mut out = String::new();
        for (i, token) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(token.as_str());
        }
        out
    }
}

impl Deref for Sentence {
    type Target = [Token];

    fn deref(&self) -> &[Token] {
        &self.0
    }
}

impl From<Vec<Token>> for Sentence {
    fn from(tokens: Vec<Token>) -> Self {
        Sentence(tokens)
    }
}

impl FromIterator<Token> for Sentence {
    fn from_iter<I: IntoIterator<Item = Token>>(iter: I) -> Self {
        Sentence(iter.into_iter().collect())
    }
}

/// One invariant violation found by [`validate_sentence`].
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    #[error("token {index} is empty")]
    EmptyToken { index: usize },
    #[error("token {index} ({token:?}) collides with a reserved literal")]
    ReservedTokenCollision { index: usize, token: String },
    #[error("{tokens} tokens but {depths} depths")]
    LengthMismatch { tokens: usize, depths: usize },
    #[error("depth {index} is not finite")]
    NonFiniteDepth { index: usize },
    #[error("depth {index} is negative")]
    NegativeDepth { index: usize },
}

/// Unvalidated form of a depths file line.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RawDepthedSentence {
    pub tokens: Vec<String>,
    pub depths: Vec<f64>,
}

/// Checks every token and depth invariant, returning all violations found.
pub fn validate_sentence(raw: &RawDepthedSentence) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    for (index, text) in raw.tokens.iter().enumerate() {
        if text.is_empty() {
            violations.push(Violation::EmptyToken { index });
        } else if is_reserved(text) {
            violations.push(Violation::ReservedTokenCollision {
                index,
                token: text.clone(),
            });
        }
    }
    if raw.tokens.len() != raw.depths.len() {
        violations.push(Violation::LengthMismatch {
            tokens: raw.tokens.len(),
            depths: raw.depths.len(),
        });
    }
    for (index, &depth) in raw.depths.iter().enumerate() {
        if !depth.is_finite() {
            violations.push(Violation::NonFiniteDepth { index });
        } else if depth < 0.0 {
            violations.push(Violation::NegativeDepth { index });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Tokens paired with one finite, non-negative depth each.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DepthedSentence {
    tokens: Vec<Token>,
    depths: Vec<f64>,
}

impl DepthedSentence {
    pub fn new(tokens: Vec<Token>, depths: Vec<f64>) -> Result<Self, Vec<Violation>> {
        let mut violations = Vec::new();
        if tokens.len() != depths.len() {
            violations.push(Violation::LengthMismatch {
                tokens: tokens.len(),
                depths: depths.len(),
            });
        }
        for (index, &depth) in depths.iter().enumerate() {
            if !depth.is_finite() {
                violations.push(Violation::NonFiniteDepth { index });
            } else if depth < 0.0 {
                violations.push(Violation::NegativeDepth { index });
            }
        }
        if violations.is_empty() {
            Ok(DepthedSentence { tokens, depths })
        } else {
            Err(violations)
        }
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(tokens: &[&str], depths: &[f64]) -> Result<Self, Vec<Violation>> {
        RawDepthedSentence {
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
            depths: depths.to_vec(),
        }
        .try_into()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn depths(&self) -> &[f64] {
        &self.depths
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn sentence(&self) -> Sentence {
        Sentence(self.tokens.clone())
    }

    pub fn into_parts(self) -> (Vec<Token>, Vec<f64>) {
        (self.tokens, self.depths)
    }

    /// Renders the sentence as one depths file line (no trailing newline).
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("tokens and finite depths always serialize")
    }
}

impl TryFrom<RawDepthedSentence> for DepthedSentence {
    type Error = Vec<Violation>;

    fn try_from(raw: RawDepthedSentence) -> Result<Self, Self::Error> {
        validate_sentence(&raw)?;
        Ok(DepthedSentence {
            tokens: raw.tokens.into_iter().map(Token).collect(),
            depths: raw.depths,
        })
    }
}

/// Error for one line of a depths file. `line` is 1-based.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum DepthFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {}", join_violations(.violations))]
    Invalid {
        line: usize,
        violations: Vec<Violation>,
    },
}

impl DepthFileError {
    pub fn line(&self) -> usize {
        match self {
            DepthFileError::Syntax { line, .. } | DepthFileError::Invalid { line, .. } => *line,
        }
    }
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Parses one depths file line. A whitespace-only line is the empty sentence.
pub fn parse_depth_line(text: &str, line: usize) -> Result<DepthedSentence, DepthFileError> {
    if text.trim().is_empty() {
        return Ok(DepthedSentence::default());
    }
    let raw: RawDepthedSentence =
        serde_json::from_str(text).map_err(|e| DepthFileError::Syntax {
            line,
            message: e.to_string(),
        })?;
    DepthedSentence::try_from(raw)
        .map_err(|violations| DepthFileError::Invalid { line, violations })
}
