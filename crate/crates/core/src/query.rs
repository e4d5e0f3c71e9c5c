//! Query types shared by the oracle state machine and the ground-truth
//! averagers.

use crate::error::{Error, Result};

/// The four query types: forward R(g), conjugate R(g)*, transpose R(g)^T and
/// inverse R(g)^-1 = R(g)^dagger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QueryType {
    Forward,
    Conjugate,
    Transpose,
    Inverse,
}

impl QueryType {
    pub fn parse(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'F' => Ok(Self::Forward),
            'C' => Ok(Self::Conjugate),
            'T' => Ok(Self::Transpose),
            'I' => Ok(Self::Inverse),
            other => Err(Error::UnsupportedQueryType(other.to_string())),
        }
    }

    pub fn tag(self) -> char {
        match self {
            Self::Forward => 'F',
            Self::Conjugate => 'C',
            Self::Transpose => 'T',
            Self::Inverse => 'I',
        }
    }

    /// Parses a script like "FI" or "FFCT".
    pub fn parse_script(s: &str) -> Result<Vec<Self>> {
        s.chars().map(Self::parse).collect()
    }
}
