use wlab_encodings::{pair, theta_decode, theta_encode, unpair, Subsets};
use wlab_problems::{
    homogeneous_color, CohSequence, CohSet, Coloring, HomSet, Instance, Problem, Solution,
};

use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, ConstructionError, Result};

/// Largest number of sets produced for one colouring.
const MAX_SETS: u64 = 1_000_000;

/// `R_⟨i,j⟩ := {r > max ϑ_{n-1}(i) : c(ϑ_{n-1}(i) ∪ {r}) = j}` on the window.
///
/// Indices run over every code whose `ϑ_{n-1}(i)` lies in the window. With a
/// stability annotation each set is annotated finite or cofinite by the
/// limit value; otherwise, and for sets whose base leaves the window, the
/// set is left unannotated.
pub fn coh_sets_from_coloring(c: &Coloring) -> Result<CohSequence> {
    let n = c.arity();
    if n < 2 || c.window() < 2 {
        return Err(shape("need arity at least 2 and a window of at least 2"));
    }
    let w = c.window();
    let k = c.colors().count() as u64;
    let mut max_rank = 0;
    for base in Subsets::new(w, n - 1) {
        max_rank = max_rank.max(theta_encode(&base)?);
    }
    let count = pair(max_rank, k.saturating_sub(1))? + 1;
    if count > MAX_SETS {
        return Err(ConstructionError::Overflow(format!("{count} sets")));
    }
    let mut sets = Vec::with_capacity(count as usize);
    let mut buf = Vec::with_capacity(n);
    for code in 0..count {
        let (i, j) = unpair(code);
        let base = theta_decode(i, n - 1)?;
        if base.last().map_or(false, |&m| m >= w) {
            sets.push(CohSet { bits: vec![false; w as usize], annotation: None });
            continue;
        }
        let start = base.last().map_or(0, |m| m + 1);
        let members: Vec<u64> = (start..w)
            .filter(|&r| {
                buf.clear();
                buf.extend_from_slice(&base);
                buf.push(r);
                c.color_of(&buf) as u64 == j
            })
            .collect();
        let set = match c.annotation() {
            Some(a) if a.limit.color_of(&base) as u64 == j => {
                let exceptions: Vec<u64> = (0..w).filter(|r| !members.contains(r)).collect();
                CohSet::cofinite(w, &exceptions)
            }
            Some(_) => CohSet::finite(w, &members),
            None => {
                let mut bits = vec![false; w as usize];
                for &m in &members {
                    bits[m as usize] = true;
                }
                CohSet { bits, annotation: None }
            }
        };
        sets.push(set);
    }
    Ok(CohSequence::new(w, sets)?)
}

/// `c_σ(A) := c(σ(A))`; the transported window is `|σ|`.
pub fn transport_coloring(c: &Coloring, sigma: &[u64]) -> Result<Coloring> {
    if !wlab_encodings::is_strictly_increasing(sigma) {
        return Err(shape("σ must be strictly increasing"));
    }
    if let Some(&m) = sigma.last() {
        if m >= c.window() {
            return Err(wlab_problems::ProblemError::OutOfWindow { element: m, window: c.window() }.into());
        }
    }
    let mut buf = Vec::with_capacity(c.arity());
    Ok(Coloring::from_fn(c.arity(), c.colors(), sigma.len() as u64, |a| {
        buf.clear();
        buf.extend(a.iter().map(|&x| sigma[x as usize]));
        c.color_of(&buf)
    })?)
}

/// `M := σ(M_σ)`.
pub fn transport_solution(sigma: &[u64], m: &HomSet) -> Result<HomSet> {
    let elements = m
        .elements
        .iter()
        .map(|&x| sigma.get(x as usize).copied().ok_or_else(|| shape(format!("{x} outside σ"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomSet::new(elements, m.color))
}

/// `RT_{n,k} ≤W SRT_{n,k} * COH`.
///
/// `K(c)` is the pair `(R, c)`: the first stage solves COH on `R` and yields
/// `Y`, the second solves SRT on `c_σ` for `σ` the principal function of `Y`.
/// A target solution is `(Y, M_σ)`; `H` returns `σ(M_σ)` coloured by `c`.
pub struct Transport;

impl Reduction for Transport {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "prop4.14-transport",
            source: "RT_{n,k}",
            target: "SRT_{n,k} * COH",
            strength: Strength::Weak,
            anchor: "Proposition 4.14",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        let Instance::Coloring(c) = x else {
            return Err(shape("expected a colouring"));
        };
        let r = coh_sets_from_coloring(c)?;
        Ok(Instance::Pair(Box::new(Instance::Coh(r)), Box::new(x.clone())))
    }

    fn backward(&self, original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        let Some(Instance::Coloring(c)) = original else {
            return Err(shape("the original colouring is required"));
        };
        let Solution::Pair(y, m) = s else {
            return Err(shape("expected a cohesive set and a homogeneous set"));
        };
        let (Solution::Set(sigma), Solution::HomSet(m)) = (&**y, &**m) else {
            return Err(shape("expected a cohesive set and a homogeneous set"));
        };
        let mut out = transport_solution(sigma, m)?;
        if let Some(col) = homogeneous_color(c, &out.elements) {
            out.color = col;
        }
        Ok(Solution::HomSet(out))
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        match x {
            Instance::Coloring(c) => Ok(Problem::Rt { n: c.arity(), colors: c.colors() }),
            _ => Err(shape("expected a colouring")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wlab_problems::{CohAnnotation, Colors, StableAnnotation};

    fn index(base: &[u64], j: u64) -> usize {
        pair(theta_encode(base).unwrap(), j).unwrap() as usize
    }

    #[test]
    fn constant_zero() {
        let c = Coloring::constant(2, Colors::Finite(2), 8, 0).unwrap();
        let lim = Coloring::constant(1, Colors::Finite(2), 8, 0).unwrap();
        let c = c.with_annotation(StableAnnotation { limit: Box::new(lim), horizon: 0 }).unwrap();
        let r = coh_sets_from_coloring(&c).unwrap();
        let s0 = &r.sets[index(&[3], 0)];
        assert!(matches!(s0.annotation, Some(CohAnnotation::CofiniteWithin { .. })));
        let s1 = &r.sets[index(&[3], 1)];
        assert!(s1.bits.iter().all(|b| !b));
        assert!(matches!(s1.annotation, Some(CohAnnotation::FiniteWithin { .. })));
    }

    #[test]
    fn parity_of_max() {
        let c = Coloring::from_fn(2, Colors::Finite(2), 12, |s| (s[1] % 2) as u32).unwrap();
        let r = coh_sets_from_coloring(&c).unwrap();
        let set = &r.sets[index(&[2], 0)];
        let members: Vec<u64> = (0..12).filter(|&x| set.contains(x)).collect();
        assert_eq!(members, vec![4, 6, 8, 10]);
        assert_eq!(set.annotation, None);
    }

    #[test]
    fn stable_min_parity_is_cofinite() {
        let w = 10;
        let lim = Coloring::from_fn(1, Colors::Finite(2), w, |s| (s[0] % 2) as u32).unwrap();
        let c = Coloring::from_fn(2, Colors::Finite(2), w, |s| (s[0] % 2) as u32)
            .unwrap()
            .with_annotation(StableAnnotation { limit: Box::new(lim), horizon: 0 })
            .unwrap();
        let r = coh_sets_from_coloring(&c).unwrap();
        let set = &r.sets[index(&[2], 0)];
        assert_eq!((0..w).filter(|&x| set.contains(x)).collect::<Vec<_>>(), (3..w).collect::<Vec<_>>());
        assert!(matches!(set.annotation, Some(CohAnnotation::CofiniteWithin { .. })));
    }

    #[test]
    fn transport_examples() {
        let c = Coloring::from_fn(2, Colors::Finite(2), 12, |s| (s[0] % 2) as u32).unwrap();
        let ident: Vec<u64> = (0..8).collect();
        assert_eq!(transport_coloring(&c, &ident).unwrap(), c.restrict(8).unwrap());
        let odds: Vec<u64> = (0..6).map(|i| 2 * i + 1).collect();
        let t = transport_coloring(&c, &odds).unwrap();
        assert!(t.table().iter().all(|&v| v == 1));
        let m = transport_solution(&odds, &HomSet::new(vec![0, 1, 2], 1)).unwrap();
        assert_eq!(m.elements, vec![1, 3, 5]);
        assert!(transport_coloring(&c, &[3, 40]).is_err());
    }

    #[test]
    fn end_to_end() {
        let c = Coloring::from_fn(2, Colors::Finite(2), 12, |s| ((s[0] + s[1]) % 2) as u32).unwrap();
        let x = Instance::Coloring(c.clone());
        let y: Vec<u64> = vec![0, 2, 4, 6, 8, 10];
        let cs = transport_coloring(&c, &y).unwrap();
        let ms = wlab_ramsey::solve_homogeneous(&cs, 4).unwrap();
        let s = Solution::Pair(Box::new(Solution::Set(y)), Box::new(Solution::HomSet(ms)));
        let h = Transport.backward(Some(&x), &s).unwrap();
        assert!(wlab_problems::check(&Transport.source_problem(&x).unwrap(), &x, &h).unwrap().is_accept());
    }
}
