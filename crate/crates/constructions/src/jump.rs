use wlab_encodings::Subsets;
use wlab_problems::{homogeneous_color, Coloring, HomSet, Instance, JumpInstance, Problem, Solution};

use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, ConstructionError, Result};

fn coloring_of(x: &Instance) -> Result<&Coloring> {
    match x {
        Instance::Coloring(c) => Ok(c),
        _ => Err(shape("expected a colouring")),
    }
}

/// `c(A∪{i}) := c_i(A)` for `i > max A`, with `c_i` read past the listed
/// approximations from the limit. Values outside the limit's colour range
/// become 0. The result is annotated stable with limit `c∞` and horizon
/// `stable_from`.
pub fn jump_coloring(j: &JumpInstance) -> Result<Coloring> {
    let limit = coloring_of(&j.limit)?;
    let (n, w, colors) = (limit.arity(), limit.window(), limit.colors());
    let approx = j.approximations.iter().map(coloring_of).collect::<Result<Vec<_>>>()?;
    if approx.iter().any(|c| c.arity() != n || c.window() != w) {
        return Err(shape("approximations differ from the limit in arity or window"));
    }
    let c = Coloring::from_fn(n + 1, colors, w, |s| {
        let (&i, a) = s.split_last().expect("arity at least 1");
        let ci = approx.get(i as usize).copied().unwrap_or(limit);
        let v = ci.color_of(a);
        if colors.admits(v) {
            v
        } else {
            0
        }
    })?;
    let ann = wlab_problems::StableAnnotation { limit: Box::new(limit.clone()), horizon: j.stable_from as u64 };
    c.with_annotation(ann).map_err(|e| match e {
        wlab_problems::ProblemError::BadAnnotation(m) => {
            ConstructionError::MissingAnnotation(format!("approximations do not settle from the annotated index: {m}"))
        }
        e => e.into(),
    })
}

/// `c_i(A) := c(A∪{i})` if `i > max A`, else 0, for `i` in the window; the
/// limit and stabilisation index come from the stability annotation.
pub fn stable_to_sequence(c: &Coloring) -> Result<JumpInstance> {
    let ann = c.annotation().ok_or_else(|| ConstructionError::MissingAnnotation("colouring is not annotated stable".into()))?;
    let n = c.arity() - 1;
    let w = c.window();
    let mut buf = Vec::with_capacity(n + 1);
    let approximations = (0..w)
        .map(|i| {
            Coloring::from_fn(n, c.colors(), w, |a| {
                if a.last().map_or(true, |&m| m < i) {
                    buf.clear();
                    buf.extend_from_slice(a);
                    buf.push(i);
                    c.color_of(&buf)
                } else {
                    0
                }
            })
            .map(Instance::Coloring)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(JumpInstance {
        approximations,
        limit: Box::new(Instance::Coloring((*ann.limit).clone())),
        stable_from: ann.horizon as usize,
    })
}

/// Grow a homogeneous set for `c` (arity `n+1`) out of one for its limit.
///
/// Starts from the least `n` elements of `m_inf` and repeatedly appends the
/// least `m ∈ m_inf` above the current maximum with `c(A∪{m}) = x` for every
/// `n`-subset `A` of the current set, where `x` is the colour of `m_inf`.
pub fn grow_homogeneous(c: &Coloring, m_inf: &HomSet, target_size: usize) -> Result<HomSet> {
    let n = c.arity().checked_sub(1).ok_or_else(|| shape("arity must be at least 1"))?;
    if m_inf.elements.len() < n {
        return Err(shape(format!("need at least {n} elements to start from")));
    }
    let x = m_inf.color;
    let mut m: Vec<u64> = m_inf.elements[..n].to_vec();
    let mut buf = Vec::with_capacity(n + 1);
    for &cand in &m_inf.elements[n..] {
        if m.len() >= target_size {
            break;
        }
        let fits = Subsets::new(m.len() as u64, n).all(|idx| {
            buf.clear();
            buf.extend(idx.iter().map(|&i| m[i as usize]));
            buf.push(cand);
            c.color_of(&buf) == x
        });
        if fits {
            m.push(cand);
        }
    }
    if m.len() < target_size {
        return Err(ConstructionError::WindowExhausted { reached: m.len(), target: target_size });
    }
    Ok(HomSet::new(m, x))
}

/// `CRT_{n,k}' ≤sW CSRT_{n+1,k}`: `H` is the identity.
pub struct JumpColoring;

impl Reduction for JumpColoring {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "prop4.1-jump",
            source: "CRT_{n,k}'",
            target: "CSRT_{n+1,k}",
            strength: Strength::Strong,
            anchor: "Proposition 4.1",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        match x {
            Instance::Jump(j) => Ok(Instance::Coloring(jump_coloring(j)?)),
            _ => Err(shape("expected a sequence of approximations")),
        }
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        match s {
            Solution::HomSet(_) => Ok(s.clone()),
            _ => Err(shape("expected a homogeneous set")),
        }
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        match x {
            Instance::Jump(j) => {
                let c = coloring_of(&j.limit)?;
                Ok(Problem::Jump(Box::new(Problem::Crt { n: c.arity(), colors: c.colors() })))
            }
            _ => Err(shape("expected a sequence of approximations")),
        }
    }
}

/// `SRT_{n+1,k} ≤W RT_{n,k}'`: `K` is [`stable_to_sequence`], `H` grows a
/// set of size `n+2` out of the limit solution.
pub struct GrowHomogeneous;

impl Reduction for GrowHomogeneous {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "thm4.3-grow",
            source: "SRT_{n+1,k}",
            target: "RT_{n,k}'",
            strength: Strength::Weak,
            anchor: "Theorem 4.3",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        Ok(Instance::Jump(Box::new(stable_to_sequence(coloring_of(x)?)?)))
    }

    fn backward(&self, original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        let c = coloring_of(original.ok_or_else(|| shape("the original colouring is required"))?)?;
        let Solution::HomSet(m) = s else {
            return Err(shape("expected a homogeneous set"));
        };
        let ann = c.annotation().ok_or_else(|| ConstructionError::MissingAnnotation("colouring is not annotated stable".into()))?;
        let x = homogeneous_color(&ann.limit, &m.elements)
            .ok_or_else(|| shape("the set is not homogeneous for the limit colouring"))?;
        let grown = grow_homogeneous(c, &HomSet::new(m.elements.clone(), x), c.arity() + 1)?;
        Ok(Solution::HomSet(grown))
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        let c = coloring_of(x)?;
        Ok(Problem::Srt { n: c.arity(), colors: c.colors() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wlab_problems::{is_stable_up_to, jump_instance, Colors, Stability, StableAnnotation};

    fn min_parity(w: u64) -> Coloring {
        let lim = Coloring::from_fn(1, Colors::Finite(2), w, |s| (s[0] % 2) as u32).unwrap();
        Coloring::from_fn(2, Colors::Finite(2), w, |s| (s[0] % 2) as u32)
            .unwrap()
            .with_annotation(StableAnnotation { limit: Box::new(lim), horizon: 0 })
            .unwrap()
    }

    #[test]
    fn constant_sequence_gives_its_limit() {
        let c = Coloring::from_fn(1, Colors::Finite(3), 8, |s| (s[0] % 3) as u32).unwrap();
        let Instance::Jump(j) = jump_instance(vec![Instance::Coloring(c.clone()); 8]).unwrap() else { panic!() };
        let out = jump_coloring(&j).unwrap();
        assert_eq!(*out.annotation().unwrap().limit, c);
    }

    #[test]
    fn arbitrary_prefix_then_limit() {
        let w = 10;
        let lim = Coloring::from_fn(1, Colors::Finite(2), w, |s| (s[0] % 2) as u32).unwrap();
        let mut approximations: Vec<Instance> = (0..3)
            .map(|i| Instance::Coloring(Coloring::from_fn(1, Colors::Finite(2), w, |s| ((s[0] + i) % 2) as u32).unwrap()))
            .collect();
        approximations.extend((3..w).map(|_| Instance::Coloring(lim.clone())));
        let j = JumpInstance { approximations, limit: Box::new(Instance::Coloring(lim.clone())), stable_from: 3 };
        let c = jump_coloring(&j).unwrap();
        match is_stable_up_to(&c, 3) {
            Stability::Stable(t) => assert_eq!(t, lim.restrict(3).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn oversized_values_become_zero() {
        let w = 6;
        let big = Coloring::constant(1, Colors::unbounded(9), w, 7).unwrap();
        let lim = Coloring::constant(1, Colors::Finite(2), w, 1).unwrap();
        let j = JumpInstance {
            approximations: vec![Instance::Coloring(big)],
            limit: Box::new(Instance::Coloring(lim)),
            stable_from: 1,
        };
        let c = jump_coloring(&j).unwrap();
        assert_eq!(c.color(&[0, 1]).unwrap(), 1);
    }

    #[test]
    fn homogeneous_sets_solve_the_limit() {
        // Below the maximum, a homogeneous set of the jump colouring is
        // homogeneous for the limit with the same colour.
        let w = 12;
        let lim = Coloring::from_fn(1, Colors::Finite(2), w, |s| (s[0] % 3 == 0) as u32).unwrap();
        let stable_from = 4;
        let approximations: Vec<Instance> = (0..w)
            .map(|i| {
                let ci = if i as usize >= stable_from {
                    Coloring::from_fn(1, Colors::Finite(2), w, |s| if s[0] < i { (s[0] % 3 == 0) as u32 } else { 1 })
                } else {
                    Coloring::from_fn(1, Colors::Finite(2), w, |s| ((s[0] + i) % 2) as u32)
                };
                Instance::Coloring(ci.unwrap())
            })
            .collect();
        let j = JumpInstance { approximations, limit: Box::new(Instance::Coloring(lim.clone())), stable_from };
        let c = jump_coloring(&j).unwrap();
        for size in 3..=5 {
            for m in wlab_ramsey::all_homogeneous(&c, size, 1 << 20).unwrap() {
                if m.elements[1] < stable_from as u64 {
                    continue;
                }
                let head = &m.elements[..size - 1];
                assert_eq!(homogeneous_color(&lim, head), Some(m.color), "{m:?}");
            }
        }
    }

    #[test]
    fn sequence_round_trip() {
        let c = min_parity(9);
        let j = stable_to_sequence(&c).unwrap();
        let Instance::Coloring(c5) = &j.approximations[5] else { panic!() };
        assert_eq!(c5.color(&[3]).unwrap(), 1);
        assert_eq!(c5.color(&[7]).unwrap(), 0);
        let back = jump_coloring(&j).unwrap();
        assert_eq!(back.annotation().unwrap().limit, c.annotation().unwrap().limit);
        assert_eq!(back.table(), c.table());
    }

    #[test]
    fn growth_examples() {
        let c = min_parity(16);
        let evens: Vec<u64> = (0..16).step_by(2).collect();
        let m = grow_homogeneous(&c, &HomSet::new(evens, 0), 5).unwrap();
        assert_eq!(m, HomSet::new(vec![0, 2, 4, 6, 8], 0));
        let zero = Coloring::constant(2, Colors::Finite(2), 16, 0).unwrap();
        let all = HomSet::new((0..16).collect(), 0);
        assert_eq!(grow_homogeneous(&zero, &all, 4).unwrap().elements, vec![0, 1, 2, 3]);
        assert!(grow_homogeneous(&zero, &all, 50).unwrap_err().is_starvation());
    }

    #[test]
    fn weak_reduction_end_to_end() {
        let c = min_parity(12);
        let x = Instance::Coloring(c);
        let y = GrowHomogeneous.forward(&x).unwrap();
        let m = HomSet::new(vec![1, 3, 5, 7], 1);
        let h = GrowHomogeneous.backward(Some(&x), &Solution::HomSet(m)).unwrap();
        let prob = GrowHomogeneous.source_problem(&x).unwrap();
        assert!(wlab_problems::check(&prob, &x, &h).unwrap().is_accept());
        assert!(matches!(y, Instance::Jump(_)));
    }
}
