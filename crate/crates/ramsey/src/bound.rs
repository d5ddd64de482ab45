use std::collections::HashMap;

use crate::{RamseyError, Result};

/// A window `W` such that every `k`-colouring of `[W]^n` has a homogeneous set
/// of `size` elements.
///
/// Upper bound from the stepping-up recursion
/// `R_n(s_1..s_k) ≤ R_{n-1}(R_n(s - e_1), …, R_n(s - e_k)) + 1`, with
/// `R_1(s_1..s_k) = Σ(s_i - 1) + 1` and `R_n(s) = min s_i` once some `s_i < n`.
/// Not exact in general. Inputs whose recursion would be too deep are refused
/// with [`RamseyError::TooLarge`].
pub fn ramsey_window_bound(n: usize, k: usize, size: u64) -> Result<u64> {
    if n == 0 || k == 0 || size == 0 {
        return Err(RamseyError::Invalid("n, k and size must be at least 1".into()));
    }
    let mut memo = HashMap::new();
    let v = bound(n, &vec![size as u128; k], &mut memo)?;
    u64::try_from(v).map_err(|_| RamseyError::Overflow)
}

/// Recursion depth is about `Σ s_i`; beyond this the computation is refused.
const MAX_SIZE_SUM: u128 = 4096;

fn bound(n: usize, sizes: &[u128], memo: &mut HashMap<(usize, Vec<u128>), u128>) -> Result<u128> {
    if let Some(small) = sizes.iter().copied().filter(|&s| s < n as u128).min() {
        return Ok(small);
    }
    // A colour asking for exactly n elements is met by any single n-set of that colour.
    if sizes.len() > 1 && sizes.iter().any(|&s| s == n as u128) {
        let pos = sizes.iter().position(|&s| s == n as u128).unwrap();
        let mut rest = sizes.to_vec();
        rest.remove(pos);
        return bound(n, &rest, memo);
    }
    if n >= 2 && sizes.iter().sum::<u128>() > MAX_SIZE_SUM {
        return Err(RamseyError::TooLarge);
    }
    if n == 1 {
        let total = sizes.iter().map(|s| s - 1).try_fold(0u128, |a, b| a.checked_add(b)).ok_or(RamseyError::Overflow)?;
        return Ok(total + 1);
    }
    let mut key_sizes = sizes.to_vec();
    key_sizes.sort_unstable();
    let key = (n, key_sizes);
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let mut inner = Vec::with_capacity(sizes.len());
    for i in 0..sizes.len() {
        let mut s = sizes.to_vec();
        s[i] -= 1;
        let v = bound(n, &s, memo)?;
        if v > u64::MAX as u128 {
            return Err(RamseyError::Overflow);
        }
        inner.push(v);
    }
    let v = bound(n - 1, &inner, memo)?.checked_add(1).ok_or(RamseyError::Overflow)?;
    if v > u64::MAX as u128 {
        return Err(RamseyError::Overflow);
    }
    memo.insert(key, v);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(ramsey_window_bound(1, 2, 3).unwrap(), 5);
        assert_eq!(ramsey_window_bound(2, 2, 3).unwrap(), 6);
        assert_eq!(ramsey_window_bound(2, 2, 2).unwrap(), 2);
        // Classical Erdős–Szekeres style bound R(4,4) ≤ 20.
        assert_eq!(ramsey_window_bound(2, 2, 4).unwrap(), 20);
        assert_eq!(ramsey_window_bound(2, 3, 3).unwrap(), 17);
    }

    #[test]
    fn overflow_reported() {
        assert_eq!(ramsey_window_bound(2, 2, 40), Err(RamseyError::Overflow));
        assert!(ramsey_window_bound(4, 3, 40).is_err());
    }
}
