/// True iff `xs` is strictly increasing (vacuously for length ≤ 1).
pub fn is_strictly_increasing(xs: &[u64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// Binomial coefficient `C(n, k)`, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Colexicographic rank `Σ_j C(a_j, j+1)` of a strictly increasing set.
///
/// Dense over `[W]^n`: the ranks of all `n`-subsets of `{0..W-1}` are exactly
/// `0..C(W,n)`.
pub fn colex_rank(set: &[u64]) -> u64 {
    set.iter()
        .enumerate()
        .map(|(j, &a)| binomial(a, j as u64 + 1).expect("colex rank overflow"))
        .sum()
}

/// Inverse of [`colex_rank`] for sets of size `n`.
pub fn colex_unrank(mut rank: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for j in (0..n).rev() {
        let k = j as u64 + 1;
        // Largest a with C(a, k) <= rank.
        let mut a = j as u64;
        while binomial(a + 1, k).map_or(false, |b| b <= rank) {
            a += 1;
        }
        rank -= binomial(a, k).unwrap();
        out[j] = a;
    }
    out
}

/// Lexicographic iterator over all strictly increasing `size`-subsets of `{0..window-1}`.
#[derive(Debug, Clone)]
pub struct Subsets {
    window: u64,
    current: Option<Vec<u64>>,
}

impl Subsets {
    pub fn new(window: u64, size: usize) -> Self {
        let current = if size as u64 <= window { Some((0..size as u64).collect()) } else { None };
        Self { window, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let cur = self.current.take()?;
        let mut nxt = cur.clone();
        let size = nxt.len();
        let mut i = size;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.window - (size - i) as u64 {
                nxt[i] += 1;
                for j in i + 1..size {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.current = Some(nxt);
                return Some(cur);
            }
        }
        Some(cur)
    }
}

/// Keep each enumerated value that strictly exceeds every previously kept
/// value and return the characteristic vector of the kept set.
///
/// Values outside `{0..window-1}` are dropped and do not influence later
/// decisions.
///
/// ```
/// let bits = wlab_encodings::enumeration_to_char_subset(&[3, 1, 5, 2, 9], 10);
/// let kept: Vec<usize> = (0..10).filter(|&i| bits[i]).collect();
/// assert_eq!(kept, vec![3, 5, 9]);
/// ```
pub fn enumeration_to_char_subset(enumeration: &[u64], window: usize) -> Vec<bool> {
    let mut bits = vec![false; window];
    let mut last: Option<u64> = None;
    for &v in enumeration {
        if v as usize >= window {
            continue;
        }
        if last.map_or(true, |l| v > l) {
            bits[v as usize] = true;
            last = Some(v);
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(2, 5), Some(0));
        assert_eq!(binomial(64, 32), Some(1832624140942590534));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn subsets_lex_order() {
        let all: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Subsets::new(3, 0).count(), 1);
        assert_eq!(Subsets::new(2, 3).count(), 0);
        assert_eq!(Subsets::new(12, 4).count() as u64, binomial(12, 4).unwrap());
    }

    #[test]
    fn colex_is_dense() {
        for n in 1..=4usize {
            let w = 9u64;
            let mut ranks: Vec<u64> = Subsets::new(w, n).map(|s| colex_rank(&s)).collect();
            ranks.sort_unstable();
            assert_eq!(ranks, (0..binomial(w, n as u64).unwrap()).collect::<Vec<_>>());
            for s in Subsets::new(w, n) {
                assert_eq!(colex_unrank(colex_rank(&s), n), s);
            }
        }
    }

    #[test]
    fn char_subset_examples() {
        let kept = |e: &[u64], w: usize| -> Vec<usize> {
            let b = enumeration_to_char_subset(e, w);
            (0..w).filter(|&i| b[i]).collect()
        };
        assert_eq!(kept(&[3, 1, 5, 2, 9], 10), vec![3, 5, 9]);
        assert_eq!(kept(&[0, 2, 4], 6), vec![0, 2, 4]);
        assert_eq!(kept(&[], 5), Vec::<usize>::new());
        assert_eq!(enumeration_to_char_subset(&[], 5), vec![false; 5]);
    }
}
