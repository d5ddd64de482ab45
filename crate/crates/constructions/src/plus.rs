use wlab_problems::{homogeneous_color, Colors, Coloring, HomSet, Instance, Problem, Solution};

use crate::chain::{build_chain, chain_depth, chain_horizon, ext_homogeneous, iterated_limit};
use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, Result};

/// `c⁺(A) := c2(A)` if the `(n+1)`-set `A` is homogeneous for `c1`, else `k`.
///
/// When both inputs carry limit chains the output carries the chain obtained
/// by evaluating the same rule on extended sets.
pub fn plus_coloring(c1: &Coloring, c2: &Coloring) -> Result<Coloring> {
    let n = c1.arity();
    if c2.arity() != n + 1 || c1.window() != c2.window() {
        return Err(shape("plus colouring needs arities n and n+1 on a shared window"));
    }
    let Colors::Finite(k) = c2.colors() else {
        return Err(shape("the second colouring must have finitely many colours"));
    };
    let (d1, d2) = (chain_depth(c1), chain_depth(c2));
    // Level j needs c2 at depth j and c1 at depth min(j, n).
    let depth = (0..=n + 1).take_while(|&j| d2 >= j && d1 >= j.min(n)).last().unwrap_or(0);
    let horizon = chain_horizon(c1).max(chain_horizon(c2));
    let c = build_chain(n + 1, Colors::Finite(k + 1), c1.window(), depth, horizon, |s, j| {
        if j == 0 {
            return match homogeneous_color(c1, s) {
                Some(_) => c2.color_of(s),
                None => k,
            };
        }
        match ext_homogeneous(c1, s, j) {
            Some(_) => iterated_limit(c2, s, j).expect("depth checked"),
            None => k,
        }
    })?;
    Ok(c)
}

/// `RT_{n,ℕ} × RT_{n+1,k} ≤sW RT_{n+1,k+1}`: `H` is the diagonal.
pub struct PlusColoring;

impl Reduction for PlusColoring {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "thm3.18-plus",
            source: "RT_{n,N} × RT_{n+1,k}",
            target: "RT_{n+1,k+1}",
            strength: Strength::Strong,
            anchor: "Theorem 3.18",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        match x {
            Instance::Pair(a, b) => match (&**a, &**b) {
                (Instance::Coloring(c1), Instance::Coloring(c2)) => Ok(Instance::Coloring(plus_coloring(c1, c2)?)),
                _ => Err(shape("expected a pair of colourings")),
            },
            _ => Err(shape("expected a pair of colourings")),
        }
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        match s {
            Solution::HomSet(m) => {
                let side = Solution::HomSet(HomSet::new(m.elements.clone(), m.color));
                Ok(Solution::Pair(Box::new(side.clone()), Box::new(side)))
            }
            _ => Err(shape("expected a homogeneous set")),
        }
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        match x {
            Instance::Pair(a, b) => match (&**a, &**b) {
                (Instance::Coloring(c1), Instance::Coloring(c2)) => Ok(Problem::Product(
                    Box::new(Problem::Rt { n: c1.arity(), colors: c1.colors() }),
                    Box::new(Problem::Rt { n: c2.arity(), colors: c2.colors() }),
                )),
                _ => Err(shape("expected a pair of colourings")),
            },
            _ => Err(shape("expected a pair of colourings")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wlab_encodings::Subsets;
    use wlab_problems::{is_stable_up_to, Stability, StableAnnotation};

    #[test]
    fn constant_c1_copies_c2() {
        let c1 = Coloring::constant(1, Colors::unbounded(3), 8, 2).unwrap();
        let c2 = Coloring::from_fn(2, Colors::Finite(2), 8, |s| ((s[0] + s[1]) % 2) as u32).unwrap();
        let p = plus_coloring(&c1, &c2).unwrap();
        assert_eq!(p.colors(), Colors::Finite(3));
        assert_eq!(p.table(), c2.table());
    }

    #[test]
    fn parity_example() {
        let c1 = Coloring::from_fn(1, Colors::unbounded(1), 8, |s| (s[0] % 2) as u32).unwrap();
        let c2 = Coloring::constant(2, Colors::Finite(2), 8, 0).unwrap();
        let p = plus_coloring(&c1, &c2).unwrap();
        assert_eq!(p.color(&[0, 2]).unwrap(), 0);
        assert_eq!(p.color(&[0, 1]).unwrap(), 2);
    }

    #[test]
    fn low_colour_sets_are_homogeneous_for_c1() {
        // Exhaustive at window 12 for a fixed pair of colourings.
        let w = 12;
        let c1 = Coloring::from_fn(1, Colors::unbounded(2), w, |s| ((s[0] * 7 + 3) % 3) as u32).unwrap();
        let c2 = Coloring::from_fn(2, Colors::Finite(2), w, |s| ((s[0] ^ s[1]) % 2) as u32).unwrap();
        let p = plus_coloring(&c1, &c2).unwrap();
        for size in 2..=5 {
            for s in Subsets::new(w, size) {
                if let Some(col) = homogeneous_color(&p, &s) {
                    if col < 2 {
                        assert!(homogeneous_color(&c1, &s).is_some(), "{s:?}");
                        assert_eq!(homogeneous_color(&c2, &s), Some(col));
                    }
                }
            }
        }
    }

    #[test]
    fn stability_preserved() {
        let w = 12;
        let h = 5;
        let bottom = Coloring::constant(0, Colors::unbounded(2), w, 1).unwrap();
        let c1 = Coloring::from_fn(1, Colors::unbounded(2), w, |s| if s[0] >= h { 1 } else { (s[0] % 3) as u32 })
            .unwrap()
            .with_annotation(StableAnnotation { limit: Box::new(bottom), horizon: h })
            .unwrap();
        let lim = Coloring::from_fn(1, Colors::Finite(2), w, |s| (s[0] % 2) as u32).unwrap();
        let c2 = Coloring::from_fn(2, Colors::Finite(2), w, |s| if s[1] >= h { (s[0] % 2) as u32 } else { 1 })
            .unwrap()
            .with_annotation(StableAnnotation { limit: Box::new(lim), horizon: h })
            .unwrap();
        let p = plus_coloring(&c1, &c2).unwrap();
        let ann = p.annotation().expect("stable output");
        match is_stable_up_to(&p, ann.horizon) {
            Stability::Stable(t) => assert_eq!(t.table(), ann.limit.restrict(ann.horizon).unwrap().table()),
            other => panic!("{other:?}"),
        }
    }
}
