//! Limit chains of constructed colourings.
//!
//! A stable colouring with annotation chain `L_1, L_2, …` is evaluated on an
//! "extended set" `B ∪ {∞_1 < … < ∞_j}` as `L_j(B)`. Constructions defined
//! pointwise on sets extend to extended sets, which yields their own chains.

use wlab_encodings::Subsets;
use wlab_problems::{Colors, Coloring, StableAnnotation};

use crate::Result;

/// Number of annotated limit levels below `c`.
pub fn chain_depth(c: &Coloring) -> usize {
    let mut d = 0;
    let mut cur = c;
    while let Some(a) = cur.annotation() {
        d += 1;
        cur = &a.limit;
    }
    d
}

/// Largest horizon along the chain.
pub fn chain_horizon(c: &Coloring) -> u64 {
    let mut h = 0;
    let mut cur = c;
    while let Some(a) = cur.annotation() {
        h = h.max(a.horizon);
        cur = &a.limit;
    }
    h
}

/// The `j`-th iterated limit colouring, if annotated.
pub fn limit_level(c: &Coloring, j: usize) -> Option<&Coloring> {
    let mut cur = c;
    for _ in 0..j {
        cur = &cur.annotation()?.limit;
    }
    Some(cur)
}

/// `L_j(set)`, where `set` has `arity - j` elements.
pub fn iterated_limit(c: &Coloring, set: &[u64], j: usize) -> Option<u32> {
    limit_level(c, j).map(|l| l.color_of(set))
}

/// Colour of the extended set `finite ∪ {∞_1..∞_j}` if it is homogeneous for
/// `c`; `None` when it is not. Needs chain depth `min(j, arity)`.
pub fn ext_homogeneous(c: &Coloring, finite: &[u64], j: usize) -> Option<u32> {
    let n = c.arity();
    let mut color = None;
    for t in 0..=j.min(n) {
        let size = n - t;
        if size > finite.len() {
            continue;
        }
        let level = limit_level(c, t).expect("caller checked the chain depth");
        for idx in Subsets::new(finite.len() as u64, size) {
            let sub: Vec<u64> = idx.iter().map(|&i| finite[i as usize]).collect();
            let v = level.color_of(&sub);
            match color {
                None => color = Some(v),
                Some(x) if x != v => return None,
                _ => {}
            }
        }
    }
    color
}

/// Tabulate a colouring together with `depth` annotated limit levels, all
/// with the same horizon. `f(set, j)` is the value of level `j` at `set`.
pub fn build_chain(
    arity: usize,
    colors: Colors,
    window: u64,
    depth: usize,
    horizon: u64,
    mut f: impl FnMut(&[u64], usize) -> u32,
) -> Result<Coloring> {
    let depth = depth.min(arity);
    let mut below: Option<Coloring> = None;
    for j in (0..=depth).rev() {
        let mut c = Coloring::from_fn(arity - j, colors, window, |s| f(s, j))?;
        if let Some(limit) = below.take() {
            c = c.with_annotation(StableAnnotation { limit: Box::new(limit), horizon })?;
        }
        below = Some(c);
    }
    Ok(below.expect("level 0 is always built"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_of_min_parity() {
        // c{a<b} = a mod 2; limit a mod 2 (no further limit).
        let c = build_chain(2, Colors::Finite(2), 8, 1, 0, |s, _| (s[0] % 2) as u32).unwrap();
        assert_eq!(chain_depth(&c), 1);
        assert_eq!(iterated_limit(&c, &[3], 1), Some(1));
        assert_eq!(iterated_limit(&c, &[], 2), None);
        assert_eq!(ext_homogeneous(&c, &[2, 4], 1), Some(0));
        assert_eq!(ext_homogeneous(&c, &[2, 3], 1), None);
    }

    #[test]
    fn full_chain_of_constant() {
        let c = build_chain(3, Colors::Finite(2), 6, 3, 0, |_, _| 1).unwrap();
        assert_eq!(chain_depth(&c), 3);
        assert_eq!(ext_homogeneous(&c, &[], 3), Some(1));
        assert_eq!(ext_homogeneous(&c, &[0], 3), Some(1));
    }
}
