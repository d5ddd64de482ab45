use serde::{Deserialize, Serialize};

use crate::pairing::{tuple, untuple};
use crate::subsets::is_strictly_increasing;
use crate::{EncodingError, Result};

/// A `ϑ_n` rank together with its arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetCode {
    pub rank: u64,
    pub arity: usize,
}

impl SubsetCode {
    pub fn new(rank: u64, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(EncodingError::ZeroArity);
        }
        Ok(Self { rank, arity })
    }

    pub fn of_set(set: &[u64]) -> Result<Self> {
        Ok(Self { rank: theta_encode(set)?, arity: set.len() })
    }

    pub fn decode(&self) -> Result<Vec<u64>> {
        theta_decode(self.rank, self.arity)
    }
}

/// `ϑ_n(rank)`: unpair `rank` into `(i_0,…,i_{n-1})` and return
/// `{ k + Σ_{j≤k} i_j : k < n }`.
///
/// ```
/// assert_eq!(wlab_encodings::theta_decode(8, 2).unwrap(), vec![1, 4]);
/// ```
pub fn theta_decode(rank: u64, n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(EncodingError::ZeroArity);
    }
    let gaps = untuple(rank, n)?;
    let mut out = Vec::with_capacity(n);
    let mut acc = 0u64;
    for (k, g) in gaps.into_iter().enumerate() {
        acc = acc.checked_add(g).ok_or(EncodingError::Overflow { op: "theta_decode" })?;
        let v = acc.checked_add(k as u64).ok_or(EncodingError::Overflow { op: "theta_decode" })?;
        out.push(v);
    }
    Ok(out)
}

/// Inverse of [`theta_decode`]; the arity is the set's size.
pub fn theta_encode(set: &[u64]) -> Result<u64> {
    if set.is_empty() {
        return Err(EncodingError::ZeroArity);
    }
    if !is_strictly_increasing(set) {
        return Err(EncodingError::NotIncreasing(set.to_vec()));
    }
    let mut gaps = Vec::with_capacity(set.len());
    gaps.push(set[0]);
    for w in set.windows(2) {
        gaps.push(w[1] - w[0] - 1);
    }
    tuple(&gaps).map_err(|_| EncodingError::Overflow { op: "theta_encode" })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert_eq!(theta_decode(0, 2).unwrap(), vec![0, 1]);
        assert_eq!(theta_decode(8, 2).unwrap(), vec![1, 4]);
        assert_eq!(theta_decode(5, 1).unwrap(), vec![5]);
        assert_eq!(theta_encode(&[0, 1]).unwrap(), 0);
        assert_eq!(theta_encode(&[1, 4]).unwrap(), 8);
        assert_eq!(theta_encode(&[7]).unwrap(), 7);
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(matches!(theta_encode(&[3, 1]), Err(EncodingError::NotIncreasing(_))));
        assert!(matches!(theta_encode(&[2, 2]), Err(EncodingError::NotIncreasing(_))));
        assert_eq!(theta_encode(&[]), Err(EncodingError::ZeroArity));
        assert_eq!(theta_decode(3, 0), Err(EncodingError::ZeroArity));
    }

    #[test]
    fn ranks_of_pairs_cover_all_pairs_once() {
        // Independent oracle: the decoded pairs with ranks below a diagonal bound
        // are distinct, strictly increasing and re-encode to themselves.
        let mut seen = std::collections::HashSet::new();
        for r in 0..5000u64 {
            let s = theta_decode(r, 2).unwrap();
            assert!(s[0] < s[1]);
            assert!(seen.insert(s.clone()));
            assert_eq!(theta_encode(&s).unwrap(), r);
        }
    }
}
