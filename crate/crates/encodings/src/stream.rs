use serde::{Deserialize, Serialize};

use crate::{EncodingError, Result};

/// Ground-truth eventual behaviour of a stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Behavior {
    Unknown,
    /// `p(i) = value` for all `i ≥ from`.
    EventuallyConstant { value: u64, from: u64 },
    /// `p(i) = period[(i - from) % period.len()]` for all `i ≥ from`.
    EventuallyPeriodic { period: Vec<u64>, from: u64 },
}

/// A finite prefix of a point of Baire space with an eventual-behaviour annotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stream {
    pub prefix: Vec<u64>,
    pub behavior: Behavior,
}

impl Stream {
    /// Checked constructor; the annotation must agree with the prefix.
    pub fn new(prefix: Vec<u64>, behavior: Behavior) -> Result<Self> {
        let s = Self { prefix, behavior };
        s.validate()?;
        Ok(s)
    }

    pub fn unknown(prefix: Vec<u64>) -> Self {
        Self { prefix, behavior: Behavior::Unknown }
    }

    /// The constant stream `v,v,v,…` materialised to `len` entries.
    pub fn constant(value: u64, len: usize) -> Self {
        Self { prefix: vec![value; len], behavior: Behavior::EventuallyConstant { value, from: 0 } }
    }

    /// `prefix` followed by a constant tail `value`, materialised to `len` entries.
    pub fn with_constant_tail(head: &[u64], value: u64, len: usize) -> Self {
        let mut prefix = head.to_vec();
        prefix.truncate(len);
        prefix.resize(len, value);
        let from = head.len().min(len) as u64;
        Self { prefix, behavior: Behavior::EventuallyConstant { value, from } }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.behavior {
            Behavior::Unknown => Ok(()),
            Behavior::EventuallyConstant { value, from } => {
                for (i, v) in self.prefix.iter().enumerate().skip(*from as usize) {
                    if v != value {
                        return Err(EncodingError::BadAnnotation(format!(
                            "entry {i} is {v}, annotation claims constant {value} from {from}"
                        )));
                    }
                }
                Ok(())
            }
            Behavior::EventuallyPeriodic { period, from } => {
                if period.is_empty() {
                    return Err(EncodingError::BadAnnotation("empty period".into()));
                }
                for (i, v) in self.prefix.iter().enumerate().skip(*from as usize) {
                    let want = period[(i - *from as usize) % period.len()];
                    if *v != want {
                        return Err(EncodingError::BadAnnotation(format!(
                            "entry {i} is {v}, periodic annotation gives {want}"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Entry `i` of the prefix.
    pub fn get(&self, i: u64) -> Option<u64> {
        self.prefix.get(i as usize).copied()
    }

    /// Entry `i`, read from the prefix or, beyond it, from the annotation.
    pub fn value_at(&self, i: u64) -> Option<u64> {
        if let Some(v) = self.get(i) {
            return Some(v);
        }
        match &self.behavior {
            Behavior::Unknown => None,
            Behavior::EventuallyConstant { value, from } => (i >= *from).then_some(*value),
            Behavior::EventuallyPeriodic { period, from } => {
                (i >= *from).then(|| period[((i - from) % period.len() as u64) as usize])
            }
        }
    }

    /// `lim_i p(i)` when the annotation says it exists.
    pub fn limit(&self) -> Option<u64> {
        match &self.behavior {
            Behavior::EventuallyConstant { value, .. } => Some(*value),
            Behavior::EventuallyPeriodic { period, .. } if period.iter().all(|v| *v == period[0]) => {
                Some(period[0])
            }
            _ => None,
        }
    }

    /// Values occurring infinitely often, when the annotation determines them.
    pub fn cluster_points(&self) -> Option<Vec<u64>> {
        match &self.behavior {
            Behavior::Unknown => None,
            Behavior::EventuallyConstant { value, .. } => Some(vec![*value]),
            Behavior::EventuallyPeriodic { period, .. } => {
                let mut v = period.clone();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
        }
    }
}

/// `⟨p_0,p_1,…⟩⟨n,k⟩ := p_n(k)`, read from the prefix only.
pub fn interleave_project(streams: &[Stream], n: u64, k: u64) -> Result<u64> {
    let s = streams.get(n as usize).ok_or(EncodingError::NoSuchStream(n))?;
    s.get(k).ok_or(EncodingError::InsufficientPrefix { stream: n as usize, needed: k })
}
