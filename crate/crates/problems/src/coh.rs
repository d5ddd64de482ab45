use serde::{Deserialize, Serialize};
use wlab_encodings::is_strictly_increasing;

use crate::{ProblemError, Result};

/// Ground truth about a set beyond what the window shows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CohAnnotation {
    /// The set is finite and all its members lie in the window.
    FiniteWithin { window: u64 },
    /// The complement is finite: the set is everything except `exceptions`.
    CofiniteWithin { window: u64, exceptions: Vec<u64> },
    /// Membership of `r ≥ from` is `pattern[(r - from) % pattern.len()]`.
    EventuallyPeriodic { from: u64, pattern: Vec<bool> },
}

/// One set of a sequence `(R_i)`, materialised on the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohSet {
    pub bits: Vec<bool>,
    #[serde(default)]
    pub annotation: Option<CohAnnotation>,
}

impl CohSet {
    pub fn contains(&self, r: u64) -> bool {
        self.bits.get(r as usize).copied().unwrap_or(false)
    }

    /// Finite set with the given members.
    pub fn finite(window: u64, members: &[u64]) -> Self {
        let mut bits = vec![false; window as usize];
        for &m in members {
            bits[m as usize] = true;
        }
        Self { bits, annotation: Some(CohAnnotation::FiniteWithin { window }) }
    }

    /// Cofinite set missing exactly `exceptions`.
    pub fn cofinite(window: u64, exceptions: &[u64]) -> Self {
        let mut bits = vec![true; window as usize];
        for &e in exceptions {
            bits[e as usize] = false;
        }
        let mut ex = exceptions.to_vec();
        ex.sort_unstable();
        ex.dedup();
        Self { bits, annotation: Some(CohAnnotation::CofiniteWithin { window, exceptions: ex }) }
    }

    /// Eventually periodic set: `head` below `head.len()`, then `pattern` repeated.
    pub fn periodic(window: u64, head: &[bool], pattern: &[bool]) -> Self {
        let from = head.len() as u64;
        let bits = (0..window)
            .map(|r| if r < from { head[r as usize] } else { pattern[((r - from) % pattern.len() as u64) as usize] })
            .collect();
        Self { bits, annotation: Some(CohAnnotation::EventuallyPeriodic { from, pattern: pattern.to_vec() }) }
    }

    /// Check the annotation against the bit vector.
    pub fn validate(&self) -> Result<()> {
        let w = self.bits.len() as u64;
        let ok = match &self.annotation {
            None => true,
            Some(CohAnnotation::FiniteWithin { window }) => *window == w,
            Some(CohAnnotation::CofiniteWithin { window, exceptions }) => {
                *window == w && (0..w).all(|r| self.bits[r as usize] != exceptions.contains(&r))
            }
            Some(CohAnnotation::EventuallyPeriodic { from, pattern }) => {
                !pattern.is_empty()
                    && (*from..w).all(|r| self.bits[r as usize] == pattern[((r - from) % pattern.len() as u64) as usize])
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ProblemError::BadAnnotation(format!("cohesiveness annotation disagrees with bits: {:?}", self.annotation)))
        }
    }
}

/// A finite window of a sequence `(R_i)` for the cohesiveness problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohSequence {
    pub window: u64,
    pub sets: Vec<CohSet>,
}

impl CohSequence {
    pub fn new(window: u64, sets: Vec<CohSet>) -> Result<Self> {
        let s = Self { window, sets };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for set in &self.sets {
            if set.bits.len() as u64 != self.window {
                return Err(ProblemError::BadAnnotation(format!(
                    "set of length {} in a window of {}",
                    set.bits.len(),
                    self.window
                )));
            }
            set.validate()?;
        }
        Ok(())
    }
}

/// Result of a cohesiveness check at finite scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CohVerdict {
    Cohesive,
    /// `set` splits the candidate with at least `slack+1` elements on each side.
    NotCohesive { set: usize, inside: usize, outside: usize },
    /// Some set carries no annotation and no annotated set refutes the candidate.
    Inconclusive { unannotated: Vec<usize> },
}

/// For every annotated `R_i`, the candidate must lie inside `R_i` or inside its
/// complement up to at most `slack` elements.
pub fn check_cohesive_within(seq: &CohSequence, candidate: &[u64], slack: usize) -> Result<CohVerdict> {
    if !is_strictly_increasing(candidate) {
        return Err(ProblemError::NotIncreasing(candidate.to_vec()));
    }
    if let Some(&m) = candidate.last() {
        if m >= seq.window {
            return Err(ProblemError::OutOfWindow { element: m, window: seq.window });
        }
    }
    let mut unannotated = Vec::new();
    for (i, set) in seq.sets.iter().enumerate() {
        if set.annotation.is_none() {
            unannotated.push(i);
            continue;
        }
        let inside = candidate.iter().filter(|&&r| set.contains(r)).count();
        let outside = candidate.len() - inside;
        if inside.min(outside) > slack {
            return Ok(CohVerdict::NotCohesive { set: i, inside, outside });
        }
    }
    if unannotated.is_empty() {
        Ok(CohVerdict::Cohesive)
    } else {
        Ok(CohVerdict::Inconclusive { unannotated })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let full = CohSequence::new(10, vec![CohSet::cofinite(10, &[]), CohSet::cofinite(10, &[])]).unwrap();
        assert_eq!(check_cohesive_within(&full, &[0, 4, 9], 0).unwrap(), CohVerdict::Cohesive);
        let evens = CohSequence::new(10, vec![CohSet::periodic(10, &[], &[true, false])]).unwrap();
        assert_eq!(check_cohesive_within(&evens, &[1, 3, 5, 7], 0).unwrap(), CohVerdict::Cohesive);
        assert_eq!(
            check_cohesive_within(&evens, &[1, 2, 3, 4], 0).unwrap(),
            CohVerdict::NotCohesive { set: 0, inside: 2, outside: 2 }
        );
        assert_eq!(check_cohesive_within(&evens, &[1, 2, 3, 4], 2).unwrap(), CohVerdict::Cohesive);
        let raw = CohSequence::new(10, vec![CohSet { bits: vec![true; 10], annotation: None }]).unwrap();
        assert_eq!(
            check_cohesive_within(&raw, &[1, 2], 0).unwrap(),
            CohVerdict::Inconclusive { unannotated: vec![0] }
        );
    }

    #[test]
    fn annotation_mismatch_rejected() {
        let mut s = CohSet::cofinite(6, &[2]);
        s.bits[3] = false;
        assert!(s.validate().is_err());
    }
}
