use wlab_problems::{Colors, Coloring, HomSet, Instance, Problem, Solution};
use wlab_ramsey::build_product_coloring;

use crate::chain::{build_chain, chain_depth, chain_horizon, ext_homogeneous};
use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, ConstructionError, Result};

/// `d_m`: the product of `c_0..c_{m-1}` (components past the list are
/// constant and omitted). `None` when `m = 0`.
pub fn delayed_component(cs: &[Coloring], m: usize) -> Result<Option<Coloring>> {
    let used = &cs[..m.min(cs.len())];
    if used.is_empty() {
        return Ok(None);
    }
    Ok(Some(build_product_coloring(used)?))
}

/// `c({m}∪A) := d_m⁺(A)` for `m < min A`, where `d_m⁺(A) = 0` iff the
/// `(n+1)`-set `A` is homogeneous for `d_m`. Arity `n+2`, two colours.
///
/// When every component carries a limit chain of depth `n`, the output
/// carries its full chain of depth `n+2`.
pub fn delayed_parallelization(cs: &[Coloring]) -> Result<Coloring> {
    let first = cs.first().ok_or_else(|| shape("need at least one colouring"))?;
    let (n, w) = (first.arity(), first.window());
    if cs.iter().any(|c| c.arity() != n || c.window() != w) {
        return Err(shape("colourings differ in arity or window"));
    }
    if w <= n as u64 + 2 {
        return Err(shape(format!("window {w} cannot host sets of size {}", n + 3)));
    }
    let d = cs.iter().map(chain_depth).min().unwrap_or(0);
    let depth = if d >= n { n + 2 } else { d };
    let horizon = cs.iter().map(chain_horizon).max().unwrap_or(0);
    build_chain(n + 2, Colors::Finite(2), w, depth, horizon, |s, j| {
        let Some((&m, a)) = s.split_first() else {
            return 0;
        };
        let live = &cs[..(m as usize).min(cs.len())];
        let homogeneous = live.iter().all(|c| ext_homogeneous(c, a, j).is_some());
        (!homogeneous) as u32
    })
}

/// `H(i, M)`: with `m` the least element of `M` above `i`, the tail
/// `{x ∈ M : x > m}` solves component `i`.
fn tail_for(m_elems: &[u64], i: u64, n: usize) -> Result<Vec<u64>> {
    let pos = m_elems
        .iter()
        .position(|&x| x > i)
        .ok_or_else(|| ConstructionError::Starved(format!("no element above {i}")))?;
    let tail = m_elems[pos + 1..].to_vec();
    if tail.len() < n.max(1) {
        return Err(ConstructionError::Starved(format!("tail for component {i} has {} elements", tail.len())));
    }
    Ok(tail)
}

/// `\hat{RT_{n,k}} ≤sW RT_{n+2,2}` through delayed parallelization, for a
/// fixed source arity and number of components.
///
/// The colour of each returned set is not part of an `RT` answer and is
/// reported as 0.
pub struct DelayedParallelization {
    pub arity: usize,
    pub components: usize,
}

impl Reduction for DelayedParallelization {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "thm3.21-delayed-parallelization",
            source: "hat(RT_{n,k})",
            target: "RT_{n+2,2}",
            strength: Strength::Strong,
            anchor: "Theorem 3.21",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        let cs = components(x, self.components)?;
        if cs[0].arity() != self.arity {
            return Err(shape(format!("expected arity {}", self.arity)));
        }
        Ok(Instance::Coloring(delayed_parallelization(&cs)?))
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        let Solution::HomSet(m) = s else {
            return Err(shape("expected a homogeneous set"));
        };
        let n = self.arity;
        let out = (0..self.components as u64)
            .map(|i| tail_for(&m.elements, i, n).map(|t| Solution::HomSet(HomSet::new(t, 0))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Solution::Parallel(out))
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        let cs = components(x, self.components)?;
        Ok(Problem::Parallel(Box::new(Problem::Rt { n: cs[0].arity(), colors: cs[0].colors() })))
    }
}

fn components(x: &Instance, expected: usize) -> Result<Vec<Coloring>> {
    match x {
        Instance::Parallel(xs) if xs.len() == expected => xs
            .iter()
            .map(|c| match c {
                Instance::Coloring(c) => Ok(c.clone()),
                _ => Err(shape("expected colourings")),
            })
            .collect(),
        _ => Err(shape(format!("expected {expected} parallel colourings"))),
    }
}
