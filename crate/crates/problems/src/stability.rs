use serde::{Deserialize, Serialize};
use wlab_encodings::Subsets;

use crate::coloring::{Colors, Coloring};

/// Outcome of a finite-window stability probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stability {
    /// The limit table, of arity `n-1` on the window `{0..horizon-1}`.
    Stable(Coloring),
    /// `c(A∪{first}) ≠ c(A∪{second})` with `horizon ≤ first < second`.
    Unstable { subset: Vec<u64>, first: u64, second: u64 },
    Inconclusive,
}

/// Is `c(A∪{i})` constant for `horizon ≤ i < W`, for every `(n-1)`-set `A`
/// with `max A < horizon`?
pub fn is_stable_up_to(c: &Coloring, horizon: u64) -> Stability {
    let w = c.window();
    if c.arity() == 0 || horizon >= w || w - horizon < 2 {
        return Stability::Inconclusive;
    }
    let n = c.arity();
    let mut limits = Vec::new();
    let mut buf = Vec::with_capacity(n);
    for base in Subsets::new(horizon, n - 1) {
        buf.clear();
        buf.extend_from_slice(&base);
        buf.push(horizon);
        let v0 = c.color_of(&buf);
        for i in horizon + 1..w {
            *buf.last_mut().unwrap() = i;
            if c.color_of(&buf) != v0 {
                return Stability::Unstable { subset: base, first: horizon, second: i };
            }
        }
        limits.push((base, v0));
    }
    let table: std::collections::HashMap<Vec<u64>, u32> = limits.into_iter().collect();
    let colors: Colors = c.colors();
    let lim = Coloring::from_fn(n - 1, colors, horizon, |s| table[s]).expect("sub-window of a valid colouring");
    Stability::Stable(lim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let min_parity = Coloring::from_fn(2, Colors::Finite(2), 16, |s| (s[0] % 2) as u32).unwrap();
        match is_stable_up_to(&min_parity, 4) {
            Stability::Stable(l) => {
                assert_eq!(l.window(), 4);
                for a in 0..4 {
                    assert_eq!(l.color(&[a]).unwrap(), (a % 2) as u32);
                }
            }
            other => panic!("{other:?}"),
        }
        let max_parity = Coloring::from_fn(2, Colors::Finite(2), 16, |s| (s[1] % 2) as u32).unwrap();
        assert_eq!(
            is_stable_up_to(&max_parity, 4),
            Stability::Unstable { subset: vec![0], first: 4, second: 5 }
        );
        assert_eq!(is_stable_up_to(&max_parity, 15), Stability::Inconclusive);
    }

    #[test]
    fn arity_one() {
        let c = Coloring::from_fn(1, Colors::Finite(3), 10, |s| if s[0] < 5 { 2 } else { 1 }).unwrap();
        match is_stable_up_to(&c, 5) {
            Stability::Stable(l) => assert_eq!(l.color(&[]).unwrap(), 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(is_stable_up_to(&c, 4), Stability::Unstable { .. }));
    }
}
