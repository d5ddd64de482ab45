use std::collections::BTreeSet;

use wlab_encodings::{pair, unpair, Behavior, Stream};
use wlab_problems::{ClosedSetInstance, Instance, Problem, Solution};

use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, ConstructionError, Result};

/// Default bound below which every code is decided by the staged removal.
pub const DECIDED_CODES: u64 = 256;

/// Stages run: at least the prefix length and at least `decided`, so every
/// code `< decided` has both components decided.
fn stages(p: &Stream, decided: u64) -> u64 {
    (p.prefix.len() as u64).max(decided)
}

/// `K`: the closed set `A` given by its removed codes.
///
/// Stage `i` sets `k_i := min{n : p(j) ≠ n for all j ≤ i}` and removes every
/// `⟨n,m⟩` with `n, m ≤ i` and `m ≠ k_i`.
pub fn min_choice_instance(p: &Stream, decided: u64) -> Result<ClosedSetInstance> {
    if p.behavior == Behavior::Unknown {
        return Err(ConstructionError::MissingAnnotation("the stream's eventual behaviour".into()));
    }
    let last = stages(p, decided);
    let mut seen = BTreeSet::new();
    let mut ks = Vec::with_capacity(last as usize + 1);
    let mut k = 0u64;
    for i in 0..=last {
        let v = p.value_at(i).ok_or_else(|| ConstructionError::MissingAnnotation(format!("value at {i}")))?;
        seen.insert(v);
        while seen.contains(&k) {
            k += 1;
        }
        ks.push(k);
    }
    // k_i is nondecreasing, so ⟨n,m⟩ survives every stage from max(n,m) on
    // iff k_{max(n,m)} = m = k_last.
    let mut removed = Vec::with_capacity(((last + 1) * (last + 1)) as usize);
    for n in 0..=last {
        for m in 0..=last {
            if !(ks[n.max(m) as usize] == m && ks[last as usize] == m) {
                removed.push(pair(n, m)?);
            }
        }
    }
    removed.sort_unstable();
    Ok(ClosedSetInstance { complement: removed, bound: None })
}

/// `H`: the second component of a surviving code.
pub fn min_via_choice_decode(code: u64) -> u64 {
    unpair(code).1
}

/// The whole pipeline: the least surviving decided code, decoded.
pub fn min_via_choice(p: &Stream) -> Result<u64> {
    let a = min_choice_instance(p, DECIDED_CODES)?;
    let survivor = (0..DECIDED_CODES)
        .find(|&c| a.admits(c))
        .ok_or_else(|| ConstructionError::Starved(format!("no code below {DECIDED_CODES} survives")))?;
    Ok(min_via_choice_decode(survivor))
}

/// `min ≤sW C_ℕ` (an equivalence): `H` reads the second component.
pub struct MinViaChoice;

impl Reduction for MinViaChoice {
    fn info(&self) -> ReductionInfo {
        ReductionInfo { name: "prop7.1-min", source: "min", target: "C_N", strength: Strength::Strong, anchor: "Proposition 7.1" }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        match x {
            Instance::Stream(p) => Ok(Instance::Closed(min_choice_instance(p, DECIDED_CODES)?)),
            _ => Err(shape("expected a stream")),
        }
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        match s {
            Solution::Natural(c) => Ok(Solution::Natural(min_via_choice_decode(*c))),
            _ => Err(shape("expected a natural number")),
        }
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        match x {
            Instance::Stream(_) => Ok(Problem::Min),
            _ => Err(shape("expected a stream")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tail(head: &[u64], value: u64) -> Stream {
        Stream::with_constant_tail(head, value, head.len() + 1)
    }

    #[test]
    fn examples() {
        assert_eq!(min_via_choice(&tail(&[0, 1, 3, 4], 5)).unwrap(), 2);
        assert_eq!(min_via_choice(&tail(&[1, 2, 3], 4)).unwrap(), 0);
        assert_eq!(min_via_choice(&tail(&[5, 0, 1, 2], 4)).unwrap(), 3);
    }

    #[test]
    fn unannotated_rejected() {
        assert!(min_via_choice(&Stream::unknown(vec![0, 1])).is_err());
    }

    #[test]
    fn every_decided_survivor_decodes_to_the_minimum() {
        let p = tail(&[5, 0, 1, 2], 4);
        let a = min_choice_instance(&p, 64).unwrap();
        let survivors: Vec<u64> = (0..64).filter(|&c| a.admits(c)).collect();
        assert!(!survivors.is_empty());
        assert!(survivors.iter().all(|&c| min_via_choice_decode(c) == 3));
    }
}
