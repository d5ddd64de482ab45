use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wlab_constructions::{transport_coloring, DECIDED_CODES};
use wlab_encodings::{binomial, theta_decode, unpair};
use wlab_problems::{extendable, homogeneous_color, CohSequence, Coloring, HomSet, Instance, Solution};
use wlab_ramsey::{all_homogeneous, solve_with, HomSearch, RamseyError, SearchLimits};

use crate::harness::TargetOracle;
use crate::{Result, VerifyError};

/// Resource limits of the oracle solvers.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Largest `C(W, size)` enumerated exhaustively.
    pub budget: u64,
    /// Random solutions drawn per size when sampling.
    pub samples: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { budget: 20_000, samples: 24 }
    }
}

/// Oracle solutions of one target instance.
#[derive(Debug, Clone, Default)]
pub struct OracleOutput {
    pub solutions: Vec<Solution>,
    /// Every solution of every requested size was produced.
    pub exhaustive: bool,
}

/// Annotation-admissible homogeneous sets of `c` of each size in `sizes`.
///
/// All of them when `C(W, size)` fits the budget; otherwise the
/// lexicographically least set plus random searches. Sets the limit chain
/// refutes as initial segments of infinite homogeneous sets are dropped.
pub fn homogeneous_solutions(
    c: &Coloring,
    sizes: &[usize],
    cfg: &OracleConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<HomSet>, bool)> {
    let mut out = Vec::new();
    let mut exhaustive = true;
    let w = c.window();
    for &size in sizes {
        if size < c.arity().max(1) || size as u64 > w {
            continue;
        }
        let total = binomial(w, size as u64).unwrap_or(u64::MAX);
        let found = if total <= cfg.budget {
            all_homogeneous(c, size, cfg.budget)?
        } else {
            exhaustive = false;
            sampled(c, size, cfg, rng)?
        };
        out.extend(found.into_iter().filter(|m| extendable(c, m) != Some(false)));
    }
    Ok((out, exhaustive))
}

fn sampled(c: &Coloring, size: usize, cfg: &OracleConfig, rng: &mut ChaCha8Rng) -> Result<Vec<HomSet>> {
    let mut seen = BTreeSet::new();
    let limits = SearchLimits { max_nodes: Some(200_000) };
    let push = |r: std::result::Result<HomSet, RamseyError>, seen: &mut BTreeSet<(Vec<u64>, u32)>| match r {
        Ok(m) => {
            seen.insert((m.elements, m.color));
            Ok(())
        }
        Err(RamseyError::NoneExists { .. } | RamseyError::BudgetExceeded { .. }) => Ok(()),
        Err(e) => Err(VerifyError::from(e)),
    };
    push(solve_with(c, &HomSearch { limits, ..HomSearch::new(size) }), &mut seen)?;
    let k = c.colors().count();
    let w = c.window();
    for _ in 0..cfg.samples {
        let q = HomSearch {
            size,
            color: Some(rng.gen_range(0..k)),
            min_element: rng.gen_range(0..w.saturating_sub(size as u64).max(1)),
            limits,
        };
        push(solve_with(c, &q), &mut seen)?;
        if let Some(m) = random_greedy(c, size, rng) {
            seen.insert((m.elements, m.color));
        }
    }
    Ok(seen.into_iter().map(|(e, col)| HomSet::new(e, col)).collect())
}

/// Scan the window upwards from a random start, keeping each element with
/// probability one half when the set stays homogeneous.
fn random_greedy(c: &Coloring, size: usize, rng: &mut ChaCha8Rng) -> Option<HomSet> {
    let w = c.window();
    let n = c.arity();
    let start = rng.gen_range(0..w);
    let mut m: Vec<u64> = Vec::with_capacity(size);
    let mut color = None;
    for x in start..w {
        if m.len() == size {
            break;
        }
        if !rng.gen_bool(0.5) {
            continue;
        }
        m.push(x);
        if m.len() >= n {
            match (homogeneous_color(c, &m), color) {
                (Some(v), None) => color = Some(v),
                (Some(v), Some(u)) if u == v => {}
                _ => {
                    m.pop();
                }
            }
        }
    }
    (m.len() == size).then(|| HomSet::new(m, color.unwrap_or(0)))
}

/// Candidate cohesive sets for the sets of `r`, which were built from an
/// arity-`n` colouring.
///
/// The greedy candidate processes the sets in index order and, among the
/// current elements above the base of the set, drops the minority side.
/// The random-side variant drops a uniformly chosen side instead. The whole
/// window is always included.
pub fn cohesive_candidates(r: &CohSequence, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<u64>>> {
    let w = r.window;
    let full: Vec<u64> = (0..w).collect();
    let mut greedy = full.clone();
    let mut random = full.clone();
    for (code, set) in r.sets.iter().enumerate() {
        let (i, _) = unpair(code as u64);
        let base = theta_decode(i, n - 1).map_err(|e| VerifyError::Oracle(e.to_string()))?;
        let floor = base.last().map_or(0, |m| m + 1);
        split(&mut greedy, floor, |x| set.contains(x), |inside, outside| inside >= outside);
        let keep_inside = rng.gen_bool(0.5);
        split(&mut random, floor, |x| set.contains(x), |_, _| keep_inside);
    }
    let mut out = vec![full];
    for y in [greedy, random] {
        if !out.contains(&y) {
            out.push(y);
        }
    }
    Ok(out)
}

fn split(y: &mut Vec<u64>, floor: u64, member: impl Fn(u64) -> bool, keep_inside: impl Fn(usize, usize) -> bool) {
    let inside = y.iter().filter(|&&x| x >= floor && member(x)).count();
    let outside = y.iter().filter(|&&x| x >= floor && !member(x)).count();
    let keep = keep_inside(inside, outside);
    y.retain(|&x| x < floor || member(x) == keep);
}

/// Oracle solutions of the target instance `y`.
pub fn target_solutions(
    oracle: TargetOracle,
    y: &Instance,
    sizes: &[usize],
    cfg: &OracleConfig,
    rng: &mut ChaCha8Rng,
) -> Result<OracleOutput> {
    let wrong = |what: &str| VerifyError::Oracle(format!("expected {what}"));
    let hom = |c: &Coloring, rng: &mut ChaCha8Rng| -> Result<OracleOutput> {
        let (ms, exhaustive) = homogeneous_solutions(c, sizes, cfg, rng)?;
        Ok(OracleOutput { solutions: ms.into_iter().map(Solution::HomSet).collect(), exhaustive })
    };
    match (oracle, y) {
        (TargetOracle::Homogeneous, Instance::Coloring(c)) => hom(c, rng),
        (TargetOracle::LimitHomogeneous, Instance::Jump(j)) => match j.limit() {
            Instance::Coloring(c) => hom(c, rng),
            _ => Err(wrong("a colouring limit")),
        },
        (TargetOracle::Transport, Instance::Pair(r, c)) => {
            let (Instance::Coh(r), Instance::Coloring(c)) = (&**r, &**c) else {
                return Err(wrong("a set sequence and a colouring"));
            };
            let mut out = OracleOutput { solutions: Vec::new(), exhaustive: false };
            for sigma in cohesive_candidates(r, c.arity(), rng)? {
                if sigma.len() < c.arity() {
                    continue;
                }
                let restricted = transport_coloring(c, &sigma)?;
                let (ms, _) = homogeneous_solutions(&restricted, sizes, cfg, rng)?;
                out.solutions.extend(ms.into_iter().map(|m| {
                    Solution::Pair(Box::new(Solution::Set(sigma.clone())), Box::new(Solution::HomSet(m)))
                }));
            }
            Ok(out)
        }
        (TargetOracle::Paths, Instance::Tree(t)) => {
            let closure = t.closure();
            let words = closure
                .iter()
                .filter(|w| w.len() == t.depth && (0..w.len()).all(|l| closure.contains(&w[..l])))
                .cloned()
                .map(Solution::Word)
                .collect();
            Ok(OracleOutput { solutions: words, exhaustive: true })
        }
        (TargetOracle::ClusterPoints, Instance::Stream(p)) => {
            let cp = p.cluster_points().ok_or_else(|| wrong("an annotated stream"))?;
            Ok(OracleOutput { solutions: cp.into_iter().map(Solution::Natural).collect(), exhaustive: true })
        }
        (TargetOracle::ClosedChoice, Instance::Closed(a)) => {
            let codes = (0..DECIDED_CODES).filter(|&x| a.admits(x)).map(Solution::Natural).collect();
            Ok(OracleOutput { solutions: codes, exhaustive: true })
        }
        _ => Err(wrong(&format!("a target instance for {oracle:?}"))),
    }
}
