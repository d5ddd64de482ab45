use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use wlab_encodings::Stream;

use crate::coh::{check_cohesive_within, CohSequence, CohVerdict};
use crate::coloring::{homogeneous_color, Colors, Coloring, HomSet};
use crate::interval::IntervalShrink;
use crate::stability::{is_stable_up_to, Stability};
use crate::tree::{TreeInstance, TreeMode};
use crate::{ProblemError, Result};

/// A closed subset of `ℕ` given by an enumeration of its complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSetInstance {
    pub complement: Vec<u64>,
    /// Present for compact choice: every solution is `≤ bound`.
    #[serde(default)]
    pub bound: Option<u64>,
}

impl ClosedSetInstance {
    /// Is `x` a member of the closed set (and below the bound, if any)?
    pub fn admits(&self, x: u64) -> bool {
        !self.complement.contains(&x) && self.bound.map_or(true, |b| x <= b)
    }
}

/// Which summand of a coproduct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// An instance delivered only as a sequence of approximations.
///
/// `limit` is the ground-truth value. From index `stable_from` on, every
/// approximation agrees with the limit wherever it has settled (for a
/// colouring approximation `c_i`: on every set `A` with `max A < i`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpInstance {
    pub approximations: Vec<Instance>,
    pub limit: Box<Instance>,
    pub stable_from: usize,
}

impl JumpInstance {
    /// The true value: the annotated limit of the approximations.
    pub fn limit(&self) -> &Instance {
        &self.limit
    }
}

/// Finite-window problem instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Instance {
    Coloring(Coloring),
    Stream(Stream),
    Coh(CohSequence),
    Closed(ClosedSetInstance),
    Tree(TreeInstance),
    Interval(IntervalShrink),
    Pair(Box<Instance>, Box<Instance>),
    Tagged(Side, Box<Instance>),
    Jump(Box<JumpInstance>),
    Parallel(Vec<Instance>),
}

/// Finite-window solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Solution {
    HomSet(HomSet),
    Natural(u64),
    Set(Vec<u64>),
    Word(Vec<u64>),
    #[serde(with = "crate::interval::rational")]
    Rational(BigRational),
    Pair(Box<Solution>, Box<Solution>),
    Tagged(Side, Box<Solution>),
    Parallel(Vec<Solution>),
}

/// Problems with finite-window checkers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    /// Homogeneous set of any colour.
    Rt { n: usize, colors: Colors },
    /// Homogeneous set together with its colour.
    Crt { n: usize, colors: Colors },
    /// `Rt` restricted to annotated-stable colourings.
    Srt { n: usize, colors: Colors },
    Csrt { n: usize, colors: Colors },
    /// Cluster point of a sequence in `{0..k-1}`.
    Bwt { k: u32 },
    /// Cluster point of a sequence in `ℕ`.
    ClN,
    /// Cohesive set, up to `slack` exceptions per set.
    Coh { slack: usize },
    /// Closed choice on `ℕ` (compact choice when the instance carries a bound).
    ClosedChoice,
    /// Least number not in the range of a stream.
    Min,
    /// Depth-`D` word of a tree given by characteristic function.
    Kl,
    /// Depth-`D` word of an enumerated tree.
    KlPlus,
    /// A point of the last interval.
    Boundedness,
    Product(Box<Problem>, Box<Problem>),
    Coproduct(Box<Problem>, Box<Problem>),
    Jump(Box<Problem>),
    Parallel(Box<Problem>),
}

/// Checker outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Accept,
    Reject(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    /// Conjunction: a rejection wins, then inconclusiveness.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Reject(r), _) | (_, Verdict::Reject(r)) => Verdict::Reject(r),
            (Verdict::Inconclusive(r), _) | (_, Verdict::Inconclusive(r)) => Verdict::Inconclusive(r),
            _ => Verdict::Accept,
        }
    }

    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Accept
        } else {
            Verdict::Reject(why())
        }
    }
}

/// `x × y`.
pub fn product_instance(a: Instance, b: Instance) -> Instance {
    Instance::Pair(Box::new(a), Box::new(b))
}

/// Inject into a coproduct.
pub fn coproduct_instance(side: Side, x: Instance) -> Instance {
    Instance::Tagged(side, Box::new(x))
}

/// Wrap a sequence of approximations; it must end in an agreeing tail of
/// length at least two (the annotation is the first index of that tail).
pub fn jump_instance(approximations: Vec<Instance>) -> Result<Instance> {
    let len = approximations.len();
    if len < 2 {
        return Err(ProblemError::NotStabilized);
    }
    let last = &approximations[len - 1];
    let mut from = len - 1;
    while from > 0 && approximations[from - 1] == *last {
        from -= 1;
    }
    if from == len - 1 {
        return Err(ProblemError::NotStabilized);
    }
    let limit = Box::new(last.clone());
    Ok(Instance::Jump(Box::new(JumpInstance { approximations, limit, stable_from: from })))
}

/// Parallel instance.
pub fn parallel_instance(xs: Vec<Instance>) -> Instance {
    Instance::Parallel(xs)
}

/// Run the checker of `problem` on `(instance, solution)`.
pub fn check(problem: &Problem, instance: &Instance, solution: &Solution) -> Result<Verdict> {
    use Problem as P;
    let mismatch = || ProblemError::Mismatch(format!("{problem:?} cannot check this instance/solution pair"));
    match (problem, instance, solution) {
        (P::Rt { n, colors } | P::Srt { n, colors }, Instance::Coloring(c), Solution::HomSet(m))
        | (P::Crt { n, colors } | P::Csrt { n, colors }, Instance::Coloring(c), Solution::HomSet(m)) => {
            if c.arity() != *n || c.colors() != *colors {
                return Err(mismatch());
            }
            let stable_only = matches!(problem, P::Srt { .. } | P::Csrt { .. });
            if stable_only {
                match c.annotation() {
                    None => return Ok(Verdict::Inconclusive("colouring carries no stability annotation".into())),
                    Some(a) => {
                        if let Stability::Unstable { .. } = is_stable_up_to(c, a.horizon) {
                            return Ok(Verdict::Reject("instance outside the stable domain".into()));
                        }
                    }
                }
            }
            check_in_window(c, &m.elements)?;
            if m.elements.len() < c.arity() {
                return Err(ProblemError::TooSmall { size: m.elements.len(), arity: c.arity() });
            }
            let got = homogeneous_color(c, &m.elements);
            let colored = matches!(problem, P::Crt { .. } | P::Csrt { .. });
            Ok(match got {
                None => Verdict::Reject(format!("{:?} is not homogeneous", m.elements)),
                Some(v) if colored && v != m.color => {
                    Verdict::Reject(format!("claimed colour {} but the set has colour {v}", m.color))
                }
                Some(_) => Verdict::Accept,
            })
        }
        (P::Bwt { .. } | P::ClN, Instance::Stream(p), Solution::Natural(v)) => {
            if let P::Bwt { k } = problem {
                if *v >= *k as u64 {
                    return Ok(Verdict::Reject(format!("{v} is outside {{0..{k}}}")));
                }
            }
            Ok(match p.cluster_points() {
                None => Verdict::Inconclusive("stream has no eventual-behaviour annotation".into()),
                Some(cp) => Verdict::from_bool(cp.contains(v), || format!("{v} is not a cluster point {cp:?}")),
            })
        }
        (P::Coh { slack }, Instance::Coh(seq), Solution::Set(m)) => Ok(match check_cohesive_within(seq, m, *slack)? {
            CohVerdict::Cohesive => Verdict::Accept,
            CohVerdict::NotCohesive { set, inside, outside } => {
                Verdict::Reject(format!("set {set} splits the candidate {inside}/{outside}"))
            }
            CohVerdict::Inconclusive { unannotated } => {
                Verdict::Inconclusive(format!("unannotated sets {unannotated:?}"))
            }
        }),
        (P::ClosedChoice, Instance::Closed(a), Solution::Natural(v)) => {
            Ok(Verdict::from_bool(a.admits(*v), || format!("{v} is not in the closed set")))
        }
        (P::Min, Instance::Stream(p), Solution::Natural(v)) => Ok(match least_omitted(p) {
            None => Verdict::Inconclusive("range of the stream is not determined by its annotation".into()),
            Some(m) => Verdict::from_bool(m == *v, || format!("least omitted value is {m}, got {v}")),
        }),
        (P::Kl | P::KlPlus, Instance::Tree(t), Solution::Word(w)) => {
            let want = if matches!(problem, P::Kl) { TreeMode::CharacteristicFunction } else { TreeMode::Enumeration };
            if t.mode != want {
                return Err(mismatch());
            }
            let closure: BTreeSet<Vec<u64>> = t.closure();
            let ok = w.len() == t.depth && (0..=w.len()).all(|l| closure.contains(&w[..l]));
            Ok(Verdict::from_bool(ok, || format!("{w:?} is not a depth-{} word of the tree", t.depth)))
        }
        (P::Boundedness, Instance::Interval(iv), Solution::Rational(x)) => {
            Ok(Verdict::from_bool(iv.admits(x), || format!("{x} lies outside the last interval")))
        }
        (P::Product(pa, pb), Instance::Pair(xa, xb), Solution::Pair(sa, sb)) => {
            Ok(check(pa, xa, sa)?.and(check(pb, xb, sb)?))
        }
        (P::Coproduct(pa, pb), Instance::Tagged(side, x), Solution::Tagged(sside, s)) => {
            if side != sside {
                return Ok(Verdict::Reject("solution tagged with the wrong summand".into()));
            }
            let p = if *side == Side::Left { pa } else { pb };
            check(p, x, s)
        }
        (P::Jump(p), Instance::Jump(j), s) => check(p, j.limit(), s),
        (P::Parallel(p), Instance::Parallel(xs), Solution::Parallel(ss)) => {
            if xs.len() != ss.len() {
                return Ok(Verdict::Reject(format!("{} instances but {} solutions", xs.len(), ss.len())));
            }
            xs.iter().zip(ss).try_fold(Verdict::Accept, |acc, (x, s)| Ok(acc.and(check(p, x, s)?)))
        }
        _ => Err(mismatch()),
    }
}

fn check_in_window(c: &Coloring, elements: &[u64]) -> Result<()> {
    if !wlab_encodings::is_strictly_increasing(elements) {
        return Err(ProblemError::NotIncreasing(elements.to_vec()));
    }
    match elements.last() {
        Some(&m) if m >= c.window() => Err(ProblemError::OutOfWindow { element: m, window: c.window() }),
        _ => Ok(()),
    }
}

/// `min(ℕ ∖ range(p))` when the annotation pins the range down.
pub fn least_omitted(p: &Stream) -> Option<u64> {
    use wlab_encodings::Behavior;
    let mut range: BTreeSet<u64> = p.prefix.iter().copied().collect();
    match &p.behavior {
        Behavior::Unknown => return None,
        Behavior::EventuallyConstant { value, .. } => {
            range.insert(*value);
        }
        Behavior::EventuallyPeriodic { period, .. } => range.extend(period.iter().copied()),
    }
    (0..).find(|v| !range.contains(v))
}
