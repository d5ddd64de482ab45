use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{ProblemError, Result};

/// How a tree is presented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeMode {
    /// The full (prefix-closed) word set is given.
    CharacteristicFunction,
    /// Words are listed in enumeration order; prefixes may be missing or late.
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alphabet {
    Binary,
    Naturals,
}

/// A tree truncated at depth `depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeInstance {
    pub mode: TreeMode,
    pub alphabet: Alphabet,
    pub words: Vec<Vec<u64>>,
    pub depth: usize,
}

impl TreeInstance {
    pub fn enumeration(words: Vec<Vec<u64>>, depth: usize) -> Self {
        Self { mode: TreeMode::Enumeration, alphabet: Alphabet::Naturals, words, depth }
    }

    pub fn validate(&self) -> Result<()> {
        for w in &self.words {
            if w.len() > self.depth {
                return Err(ProblemError::BadTree(format!("word {w:?} deeper than {}", self.depth)));
            }
            if self.alphabet == Alphabet::Binary && w.iter().any(|&s| s > 1) {
                return Err(ProblemError::BadTree(format!("non-binary word {w:?}")));
            }
        }
        if self.mode == TreeMode::CharacteristicFunction {
            let set: BTreeSet<&[u64]> = self.words.iter().map(|w| w.as_slice()).collect();
            for w in &self.words {
                if !w.is_empty() && !set.contains(&w[..w.len() - 1]) {
                    return Err(ProblemError::BadTree(format!("missing parent of {w:?}")));
                }
            }
        }
        Ok(())
    }

    /// The prefix closure of the listed words (the tree the listing describes).
    pub fn closure(&self) -> BTreeSet<Vec<u64>> {
        let mut out = BTreeSet::new();
        for w in &self.words {
            for l in 0..=w.len() {
                out.insert(w[..l].to_vec());
            }
        }
        out
    }

    /// Words of the closure with length exactly `d`.
    pub fn level(&self, d: usize) -> BTreeSet<Vec<u64>> {
        self.closure().into_iter().filter(|w| w.len() == d).collect()
    }

    /// Is `word` in the described tree?
    pub fn contains(&self, word: &[u64]) -> bool {
        match self.mode {
            TreeMode::CharacteristicFunction => self.words.iter().any(|w| w == word),
            TreeMode::Enumeration => self.words.iter().any(|w| w.starts_with(word)),
        }
    }
}
