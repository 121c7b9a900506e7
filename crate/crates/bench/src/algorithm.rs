use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Greedy,
    Celf,
    GreedyMis,
    Rega,
    Degree,
    Pagerank,
    Betweenness,
    /// A selection produced outside this tool and only scored here.
    External,
}

impl Algorithm {
    pub const SOLVERS: [Algorithm; 7] = [
        Self::Greedy,
        Self::Celf,
        Self::GreedyMis,
        Self::Rega,
        Self::Degree,
        Self::Pagerank,
        Self::Betweenness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Greedy => "greedy",
            Self::Celf => "celf",
            Self::GreedyMis => "greedy-mis",
            Self::Rega => "rega",
            Self::Degree => "degree",
            Self::Pagerank => "pagerank",
            Self::Betweenness => "betweenness",
            Self::External => "external",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        Self::SOLVERS
            .into_iter()
            .chain([Self::External])
            .find(|a| a.name() == s)
            .ok_or_else(|| BenchError::UnknownAlgorithm(s.to_string()))
    }
}

impl TryFrom<String> for Algorithm {
    type Error = BenchError;
    fn try_from(s: String) -> Result<Self, BenchError> {
        s.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> String {
        a.name().to_string()
    }
}
