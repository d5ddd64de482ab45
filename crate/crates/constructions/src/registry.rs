use wlab_problems::{Instance, Problem, Solution};

use crate::{
    CohToRt22, DelayedParallelization, GrowHomogeneous, IvtToCluster, JumpColoring, KlPlusToKl, LowerBound,
    MinViaChoice, PlusColoring, ProductReduction, Result, Transport,
};

/// Whether `H` may read the original instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strength {
    Strong,
    Weak,
}

impl Strength {
    pub fn symbol(&self) -> &'static str {
        match self {
            Strength::Strong => "≤sW",
            Strength::Weak => "≤W",
        }
    }
}

/// Static description of a registered reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInfo {
    pub name: &'static str,
    pub source: &'static str,
    pub target: &'static str,
    pub strength: Strength,
    pub anchor: &'static str,
}

/// An executable reduction `source ≤ target`.
pub trait Reduction: Send + Sync {
    fn info(&self) -> ReductionInfo;

    /// `K`: source instance to target instance.
    fn forward(&self, x: &Instance) -> Result<Instance>;

    /// `H`: target solution to source solution. Strong reductions must be
    /// called with `original = None`.
    fn backward(&self, original: Option<&Instance>, s: &Solution) -> Result<Solution>;

    /// The checker for source solutions of `x`.
    fn source_problem(&self, x: &Instance) -> Result<Problem>;
}

/// Every registered reduction, in a fixed order.
pub fn registry() -> Vec<Box<dyn Reduction>> {
    vec![
        Box::new(LowerBound),
        Box::new(ProductReduction { components: 2 }),
        Box::new(PlusColoring),
        Box::new(DelayedParallelization { arity: 1, components: 3 }),
        Box::new(JumpColoring),
        Box::new(GrowHomogeneous),
        Box::new(Transport),
        Box::new(CohToRt22),
        Box::new(KlPlusToKl),
        Box::new(IvtToCluster),
        Box::new(MinViaChoice),
    ]
}

/// Look a reduction up by name.
pub fn find(name: &str) -> Option<Box<dyn Reduction>> {
    registry().into_iter().find(|r| r.info().name == name)
}
