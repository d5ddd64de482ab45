use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use wlab_encodings::{Behavior, Stream};
use wlab_problems::{
    CohSequence, CohSet, Colors, Coloring, Instance, IntervalShrink, JumpInstance, Problem, StableAnnotation,
    TreeInstance,
};

use crate::{Result, VerifyError};

/// Number of sets in a generated cohesiveness instance.
pub const COH_SETS: usize = 8;
/// Number of components in a generated parallel instance.
pub const PARALLEL_COMPONENTS: usize = 3;
/// Deepest generated tree.
pub const MAX_TREE_DEPTH: usize = 8;
/// Most stages of a generated interval sequence.
pub const MAX_INTERVAL_STAGES: usize = 16;

/// Instance families with ground-truth annotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Streams constant from some index on.
    ConstantTail,
    /// Streams periodic from some index on.
    PeriodicTail,
    /// Colourings with a full annotated limit chain.
    StableAnnotated,
    /// Unannotated uniformly random colourings.
    Uniform,
    /// Sequences of annotated finite and cofinite sets.
    CofiniteSets,
    ShrinkingIntervals,
    EnumeratedTrees,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ConstantTail => "constant-tail",
            Family::PeriodicTail => "periodic-tail",
            Family::StableAnnotated => "stable-annotated",
            Family::Uniform => "uniform",
            Family::CofiniteSets => "cofinite-sets",
            Family::ShrinkingIntervals => "shrinking-intervals",
            Family::EnumeratedTrees => "enumerated-trees",
        }
    }
}

/// `count` instances of `problem` from `family`, deterministic in `seed`.
///
/// `window` is the colouring window, the stream prefix length, the
/// cohesiveness window, or the tree depth bound.
pub fn generate_instances(problem: &Problem, family: Family, count: usize, seed: u64, window: u64) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| generate_one(problem, family, window, &mut rng)).collect()
}

/// One instance; see [`generate_instances`].
pub fn generate_one(problem: &Problem, family: Family, window: u64, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let incompatible = || VerifyError::IncompatibleFamily { problem: format!("{problem:?}"), family };
    use Family as F;
    use Problem as P;
    match (problem, family) {
        (P::Rt { n, colors } | P::Srt { n, colors } | P::Crt { n, colors } | P::Csrt { n, colors }, F::StableAnnotated) => {
            let h = horizon(rng, window);
            Ok(Instance::Coloring(stable_coloring(rng, *n, *colors, window, h)?))
        }
        (P::Rt { n, colors } | P::Crt { n, colors }, F::Uniform) => {
            let k = colors.count();
            Ok(Instance::Coloring(Coloring::from_fn(*n, *colors, window, |_| rng.gen_range(0..k))?))
        }
        (P::Bwt { k }, F::ConstantTail | F::PeriodicTail) => Ok(Instance::Stream(stream(rng, family, window, *k as u64))),
        (P::ClN, F::ConstantTail | F::PeriodicTail) => Ok(Instance::Stream(stream(rng, family, window, 8))),
        (P::Min, F::ConstantTail | F::PeriodicTail) => Ok(Instance::Stream(stream(rng, family, window, 10))),
        (P::Coh { .. }, F::CofiniteSets) => Ok(Instance::Coh(coh_sequence(rng, window, COH_SETS)?)),
        (P::Boundedness, F::ShrinkingIntervals) => Ok(Instance::Interval(intervals(rng)?)),
        (P::KlPlus, F::EnumeratedTrees) => {
            let top = (window as usize).clamp(1, MAX_TREE_DEPTH);
            let depth = rng.gen_range(top.min(3)..=top);
            Ok(Instance::Tree(enumerated_tree(rng, depth)))
        }
        (P::Jump(inner), _) => match (&**inner, family) {
            (P::Rt { n, colors } | P::Crt { n, colors }, F::StableAnnotated) => {
                Ok(Instance::Jump(Box::new(coloring_jump(rng, *n, *colors, window)?)))
            }
            (P::Bwt { k: 2 } | P::Jump(_), F::ConstantTail | F::PeriodicTail) => {
                let depth = jump_depth(problem).ok_or_else(incompatible)?;
                let q = stream(rng, family, window, 2);
                Ok(nested_streams(rng, depth, q, window))
            }
            _ => Err(incompatible()),
        },
        (P::Product(a, b), _) => Ok(Instance::Pair(
            Box::new(generate_one(a, family, window, rng)?),
            Box::new(generate_one(b, family, window, rng)?),
        )),
        (P::Parallel(p), _) => {
            (0..PARALLEL_COMPONENTS).map(|_| generate_one(p, family, window, rng)).collect::<Result<Vec<_>>>().map(Instance::Parallel)
        }
        _ => Err(incompatible()),
    }
}

/// Number of jumps around `BWT_2`.
fn jump_depth(p: &Problem) -> Option<usize> {
    match p {
        Problem::Bwt { k: 2 } => Some(0),
        Problem::Jump(q) => jump_depth(q).map(|d| d + 1),
        _ => None,
    }
}

/// A stabilisation horizon leaving room above it.
fn horizon(rng: &mut ChaCha8Rng, window: u64) -> u64 {
    rng.gen_range(1..=(window / 3).max(1))
}

/// An arity-`n` colouring with a full limit chain sharing horizon `h`:
/// every level is random on sets with maximum below `h` and equals the next
/// level on the rest.
pub fn stable_coloring(rng: &mut ChaCha8Rng, n: usize, colors: Colors, window: u64, h: u64) -> Result<Coloring> {
    let k = colors.count();
    let mut below: Option<Coloring> = None;
    for j in (0..=n).rev() {
        let arity = n - j;
        let mut c = Coloring::from_fn(arity, colors, window, |s| match (&below, s.last()) {
            (Some(l), Some(&m)) if m >= h => l.color_of(&s[..s.len() - 1]),
            _ => rng.gen_range(0..k),
        })?;
        if let Some(l) = below.take() {
            c = c.with_annotation(StableAnnotation { limit: Box::new(l), horizon: h })?;
        }
        below = Some(c);
    }
    Ok(below.expect("level 0 built"))
}

/// A stream over `0..values` of length `len` with an annotated tail.
pub fn stream(rng: &mut ChaCha8Rng, family: Family, len: u64, values: u64) -> Stream {
    let len = len as usize;
    let from = rng.gen_range(0..=len / 2);
    let head: Vec<u64> = (0..from).map(|_| rng.gen_range(0..values)).collect();
    match family {
        Family::PeriodicTail => {
            let plen = rng.gen_range(1..=3.min(values as usize).max(1));
            let mut period: Vec<u64> = (0..plen).map(|_| rng.gen_range(0..values)).collect();
            if plen > 1 && values > 1 && period.iter().all(|&v| v == period[0]) {
                period[1] = (period[0] + 1) % values;
            }
            let prefix = (0..len).map(|i| if i < from { head[i] } else { period[(i - from) % plen] }).collect();
            Stream { prefix, behavior: Behavior::EventuallyPeriodic { period, from: from as u64 } }
        }
        _ => Stream::with_constant_tail(&head, rng.gen_range(0..values), len),
    }
}

/// Approximations of an arity-`n` colouring converging to a stable limit.
///
/// Before a random index every approximation is noise; from it on, `c_i`
/// agrees with the limit on sets with maximum below `i`. Noise uses one
/// colour beyond the range so the replacement rule is exercised.
pub fn coloring_jump(rng: &mut ChaCha8Rng, n: usize, colors: Colors, window: u64) -> Result<JumpInstance> {
    let h = horizon(rng, window);
    let limit = stable_coloring(rng, n, colors, window, h)?;
    let stable_from = horizon(rng, window) as usize;
    let noisy = Colors::unbounded(colors.count());
    let approximations = (0..window)
        .map(|i| {
            Coloring::from_fn(n, noisy, window, |a| {
                if i as usize >= stable_from && a.last().map_or(true, |&m| m < i) {
                    limit.color_of(a)
                } else {
                    rng.gen_range(0..=colors.count())
                }
            })
            .map(Instance::Coloring)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(JumpInstance { approximations, limit: Box::new(Instance::Coloring(limit)), stable_from })
}

/// `depth` nested approximation sequences around the stream `q`.
///
/// Level `d` approximation `i` agrees with the level-`d` limit on entries
/// whose indices lie below `i` once `i` passes that level's horizon, and is
/// noise elsewhere.
pub fn nested_streams(rng: &mut ChaCha8Rng, depth: usize, q: Stream, window: u64) -> Instance {
    let mut x = Instance::Stream(q.clone());
    for _ in 0..depth {
        let h = horizon(rng, window) as usize;
        let approximations = (0..window).map(|i| perturb(rng, &x, i, i as usize >= h, window)).collect();
        x = Instance::Jump(Box::new(JumpInstance { approximations, limit: Box::new(x), stable_from: h }));
    }
    x
}

/// A copy of `x` agreeing with it on every entry with all indices below
/// `bound` (when `settled`), noise elsewhere.
fn perturb(rng: &mut ChaCha8Rng, x: &Instance, bound: u64, settled: bool, window: u64) -> Instance {
    match x {
        Instance::Stream(s) => {
            let prefix = (0..window)
                .map(|i0| if settled && i0 < bound { s.value_at(i0).unwrap_or(0) } else { rng.gen_range(0..2) })
                .collect();
            Instance::Stream(Stream::unknown(prefix))
        }
        Instance::Jump(j) => {
            let approximations = (0..window)
                .map(|i| {
                    let inner = j.approximations.get(i as usize).unwrap_or(&j.limit);
                    perturb(rng, inner, bound.min(i), settled && i < bound, window)
                })
                .collect();
            Instance::Jump(Box::new(JumpInstance {
                approximations,
                limit: j.limit.clone(),
                stable_from: window as usize,
            }))
        }
        other => other.clone(),
    }
}

/// Finite and cofinite sets, each annotated, with every member of a finite
/// set and every exception of a cofinite set in the lower half of the window.
pub fn coh_sequence(rng: &mut ChaCha8Rng, window: u64, sets: usize) -> Result<CohSequence> {
    let reach = (window / 2).max(1);
    let out = (0..sets)
        .map(|_| {
            let picks: Vec<u64> = (0..reach).filter(|_| rng.gen_bool(0.4)).collect();
            if rng.gen_bool(0.5) {
                CohSet::finite(window, &picks)
            } else {
                CohSet::cofinite(window, &picks)
            }
        })
        .collect();
    Ok(CohSequence::new(window, out)?)
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// Nested rational intervals: either quarter-step shrinking or a dyadic
/// squeeze onto a random rational.
pub fn intervals(rng: &mut ChaCha8Rng) -> Result<IntervalShrink> {
    let (mut lo, mut hi) = (Vec::new(), Vec::new());
    if rng.gen_bool(0.5) {
        let stages = rng.gen_range(1..=10);
        let (mut a, mut b) = (q(0, 1), q(1, 1));
        for _ in 0..stages {
            let w = &b - &a;
            let (l, r) = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)].choose(rng).copied().expect("nonempty");
            a = &a + &w * q(l, 4);
            b = &b - &w * q(r, 4);
            lo.push(a.clone());
            hi.push(b.clone());
        }
    } else {
        let den = rng.gen_range(2..=9i64);
        let num = rng.gen_range(1..den);
        let target = q(num, den);
        for m in 1..=rng.gen_range(1..=MAX_INTERVAL_STAGES as u32) {
            let scale = BigInt::from(1) << m;
            let floor = (&target * BigRational::from_integer(scale.clone())).floor().to_integer();
            lo.push(BigRational::new(floor.clone(), scale.clone()));
            hi.push(BigRational::new(floor + 1, scale));
        }
    }
    Ok(IntervalShrink::new(lo, hi)?)
}

/// A finitely branching tree of the given depth with at least one word of
/// full depth, enumerated in random order with some internal nodes omitted
/// and some words repeated.
pub fn enumerated_tree(rng: &mut ChaCha8Rng, depth: usize) -> TreeInstance {
    let mut nodes: Vec<Vec<u64>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (idx, w) in frontier.iter().enumerate() {
            let spine = idx == 0;
            let kids = if spine { rng.gen_range(1..=2) } else { [0, 1, 1, 2].choose(rng).copied().expect("nonempty") };
            let mut symbols: Vec<u64> = (0..5).collect();
            symbols.shuffle(rng);
            for &s in symbols.iter().take(kids) {
                let mut c: Vec<u64> = w.clone();
                c.push(s);
                next.push(c);
            }
        }
        next.truncate(40);
        nodes.extend(next.iter().cloned());
        frontier = next;
    }
    let mut words: Vec<Vec<u64>> = nodes
        .iter()
        .filter(|w| w.len() == depth || rng.gen_bool(0.6))
        .cloned()
        .collect();
    let dups: Vec<Vec<u64>> = words.iter().filter(|_| rng.gen_bool(0.1)).cloned().collect();
    words.extend(dups);
    words.shuffle(rng);
    TreeInstance::enumeration(words, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wlab_problems::{is_stable_up_to, Stability};

    #[test]
    fn same_seed_same_instances() {
        let p = Problem::Rt { n: 2, colors: Colors::Finite(2) };
        let a = generate_instances(&p, Family::StableAnnotated, 10, 7, 12).unwrap();
        let b = generate_instances(&p, Family::StableAnnotated, 10, 7, 12).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        for x in &a {
            let Instance::Coloring(c) = x else { panic!() };
            let ann = c.annotation().expect("limit table");
            assert!(matches!(is_stable_up_to(c, ann.horizon), Stability::Stable(_)));
        }
    }

    #[test]
    fn coh_family() {
        let xs = generate_instances(&Problem::Coh { slack: 2 }, Family::CofiniteSets, 5, 1, 64).unwrap();
        for x in xs {
            let Instance::Coh(s) = x else { panic!() };
            assert_eq!(s.sets.len(), COH_SETS);
            assert!(s.sets.iter().all(|r| r.annotation.is_some()));
        }
    }

    #[test]
    fn incompatible_family() {
        assert!(matches!(
            generate_instances(&Problem::Min, Family::EnumeratedTrees, 1, 0, 8),
            Err(VerifyError::IncompatibleFamily { .. })
        ));
    }

    #[test]
    fn trees_reach_their_depth() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = enumerated_tree(&mut rng, 6);
            assert!(!t.level(6).is_empty());
            t.validate().unwrap();
        }
    }

    #[test]
    fn nested_streams_feed_the_lower_bound() {
        use wlab_constructions::{LowerBound, Reduction};
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for depth in 1..=2 {
            for fam in [Family::ConstantTail, Family::PeriodicTail] {
                let q = stream(&mut rng, fam, 12, 2);
                let x = nested_streams(&mut rng, depth, q, 12);
                LowerBound.forward(&x).unwrap();
            }
        }
    }

    #[test]
    fn coloring_jumps_are_consistent() {
        use wlab_constructions::jump_coloring;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let j = coloring_jump(&mut rng, 1, Colors::Finite(2), 12).unwrap();
            jump_coloring(&j).unwrap();
        }
    }
}
