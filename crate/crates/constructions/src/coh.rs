use wlab_problems::{CohAnnotation, CohSequence, Colors, Coloring, Instance, Problem, Solution};

use crate::chain::build_chain;
use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, Result};

/// Slack allowed by the cohesiveness checker on transported solutions.
pub const COH_SLACK: usize = 2;

/// Membership in `S_k`: `S_{2i} = R_i` (empty past the list), `S_{2i+1} = {i}`.
fn in_s(rs: &CohSequence, k: u64, x: u64) -> bool {
    let i = k / 2;
    if k % 2 == 1 {
        x == i
    } else {
        rs.sets.get(i as usize).map_or(false, |s| s.contains(x))
    }
}

/// Membership of the point at infinity: 1 for cofinite sets, 0 for finite.
fn in_s_at_infinity(rs: &CohSequence, k: u64) -> bool {
    k % 2 == 0
        && matches!(
            rs.sets.get((k / 2) as usize).and_then(|s| s.annotation.as_ref()),
            Some(CohAnnotation::CofiniteWithin { .. })
        )
}

/// `d(i,j) := min{k : χ_{S_k}(i) ≠ χ_{S_k}(j)}`; `S_{2i+1}` bounds it by `2i+1`.
fn separator(rs: &CohSequence, i: u64, j: u64) -> u64 {
    (0..=2 * i + 1).find(|&k| in_s(rs, k, i) != in_s(rs, k, j)).expect("S_{2i+1} separates i from j")
}

/// Horizon past every member of a finite set and every exception of a
/// cofinite set, or `None` when some set is neither.
fn finite_horizon(rs: &CohSequence) -> Option<u64> {
    let mut h = 0;
    for s in &rs.sets {
        match &s.annotation {
            Some(CohAnnotation::FiniteWithin { .. }) => {
                if let Some(last) = s.bits.iter().rposition(|&b| b) {
                    h = h.max(last as u64 + 1);
                }
            }
            Some(CohAnnotation::CofiniteWithin { exceptions, .. }) => {
                if let Some(&last) = exceptions.last() {
                    h = h.max(last + 1);
                }
            }
            _ => return None,
        }
    }
    Some(h)
}

/// `c{i<j} := 0` iff `i ∈ S_{d(i,j)}`.
///
/// When every set is annotated finite or cofinite, the colouring carries its
/// full limit chain: `L(i) = [i ∉ S_{d(i,∞)}]` and `L() = 0`.
pub fn coh_to_rt22(rs: &CohSequence) -> Result<Coloring> {
    let w = rs.window;
    if w < 2 {
        return Err(shape("window must be at least 2"));
    }
    let horizon = finite_horizon(rs);
    let depth = if horizon.is_some() { 2 } else { 0 };
    build_chain(2, Colors::Finite(2), w, depth, horizon.unwrap_or(0), |s, j| match j {
        0 => (!in_s(rs, separator(rs, s[0], s[1]), s[0])) as u32,
        1 => {
            let i = s[0];
            let d = (0..=2 * i + 1).find(|&k| in_s(rs, k, i) != in_s_at_infinity(rs, k)).expect("S_{2i+1} separates");
            (!in_s(rs, d, i)) as u32
        }
        _ => 0,
    })
}

/// `COH ≤sW RT_{2,2}`: any homogeneous set is cohesive, `H` forgets the colour.
pub struct CohToRt22;

impl Reduction for CohToRt22 {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "prop5.4-coh",
            source: "COH",
            target: "RT_{2,2}",
            strength: Strength::Strong,
            anchor: "Proposition 5.4",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        match x {
            Instance::Coh(rs) => Ok(Instance::Coloring(coh_to_rt22(rs)?)),
            _ => Err(shape("expected a sequence of sets")),
        }
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        match s {
            Solution::HomSet(m) => Ok(Solution::Set(m.elements.clone())),
            _ => Err(shape("expected a homogeneous set")),
        }
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        match x {
            Instance::Coh(_) => Ok(Problem::Coh { slack: COH_SLACK }),
            _ => Err(shape("expected a sequence of sets")),
        }
    }
}
