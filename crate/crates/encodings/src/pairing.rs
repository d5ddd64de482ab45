use crate::{EncodingError, Result};

/// Cantor pairing `⟨n,k⟩ = ½(n+k+1)(n+k)+k`.
///
/// ```
/// assert_eq!(wlab_encodings::pair(0, 1).unwrap(), 2);
/// assert_eq!(wlab_encodings::pair(1, 2).unwrap(), 8);
/// ```
pub fn pair(n: u64, k: u64) -> Result<u64> {
    let s = n as u128 + k as u128;
    let overflow = EncodingError::Overflow { op: "pair" };
    let v = (s + 1).checked_mul(s).ok_or(overflow.clone())? / 2 + k as u128;
    u64::try_from(v).map_err(|_| overflow)
}

/// Inverse of [`pair`].
pub fn unpair(code: u64) -> (u64, u64) {
    // w is the largest integer with w(w+1)/2 <= code.
    let c = code as u128;
    let mut w = ((8 * c + 1).isqrt() - 1) / 2;
    while w * (w + 1) / 2 > c {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= c {
        w += 1;
    }
    let k = c - w * (w + 1) / 2;
    let n = w - k;
    (n as u64, k as u64)
}

/// Right-nested tupling `⟨v_0,…,v_m⟩ = ⟨v_0,⟨v_1,…,v_m⟩⟩`; a 1-tuple is its entry.
pub fn tuple(values: &[u64]) -> Result<u64> {
    let (last, init) = values.split_last().ok_or(EncodingError::EmptyTuple)?;
    init.iter().rev().try_fold(*last, |acc, &v| pair(v, acc))
}

/// Inverse of [`tuple`] for a known length `len ≥ 1`.
pub fn untuple(code: u64, len: usize) -> Result<Vec<u64>> {
    if len == 0 {
        return Err(EncodingError::EmptyTuple);
    }
    let mut out = Vec::with_capacity(len);
    let mut rest = code;
    for _ in 1..len {
        let (head, tail) = unpair(rest);
        out.push(head);
        rest = tail;
    }
    out.push(rest);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(pair(0, 0).unwrap(), 0);
        assert_eq!(pair(1, 0).unwrap(), 1);
        assert_eq!(pair(0, 1).unwrap(), 2);
        assert_eq!(unpair(0), (0, 0));
        assert_eq!(unpair(2), (0, 1));
        assert_eq!(unpair(8), (1, 2));
    }

    #[test]
    fn tuples() {
        assert_eq!(tuple(&[5]).unwrap(), 5);
        assert_eq!(tuple(&[1, 2]).unwrap(), 8);
        assert_eq!(tuple(&[1, 1, 2]).unwrap(), pair(1, 8).unwrap());
        assert_eq!(untuple(pair(1, 8).unwrap(), 3).unwrap(), vec![1, 1, 2]);
        assert_eq!(tuple(&[]), Err(EncodingError::EmptyTuple));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(pair(u64::MAX, 1).is_err());
        assert!(pair(1 << 32, 1 << 32).is_err());
        let top = unpair(u64::MAX);
        assert_eq!(pair(top.0, top.1).unwrap(), u64::MAX);
    }

    #[test]
    fn diagonal_walk_oracle() {
        // Walk the diagonals explicitly and compare against the closed form.
        let mut code = 0u64;
        for s in 0..200u64 {
            for k in 0..=s {
                let n = s - k;
                assert_eq!(pair(n, k).unwrap(), code);
                assert_eq!(unpair(code), (n, k));
                code += 1;
            }
        }
    }
}
