use wlab_problems::{Colors, Problem};

use crate::generate::Family;

/// How the oracle solves a reduction's target instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetOracle {
    /// Homogeneous sets of a colouring.
    Homogeneous,
    /// Homogeneous sets of the limit of a sequence of colourings.
    LimitHomogeneous,
    /// A cohesive set paired with homogeneous sets of the restricted colouring.
    Transport,
    /// Full-depth words of a tree.
    Paths,
    /// Cluster points of a stream.
    ClusterPoints,
    /// Members of a closed set below the decided range.
    ClosedChoice,
}

/// Harness configuration of one registered reduction.
#[derive(Debug, Clone)]
pub struct Plan {
    pub name: &'static str,
    /// Source problems with their generator families; trial `i` uses entry `i mod len`.
    pub generators: Vec<(Problem, Family)>,
    pub window: u64,
    /// Oracle solution sizes for colouring targets.
    pub sizes: Vec<usize>,
    pub oracle: TargetOracle,
}

fn rt(n: usize) -> Problem {
    Problem::Rt { n, colors: Colors::Finite(2) }
}

fn crt(n: usize) -> Problem {
    Problem::Crt { n, colors: Colors::Finite(2) }
}

fn jump(p: Problem) -> Problem {
    Problem::Jump(Box::new(p))
}

fn product(a: Problem, b: Problem) -> Problem {
    Problem::Product(Box::new(a), Box::new(b))
}

fn both_tails(p: Problem) -> Vec<(Problem, Family)> {
    vec![(p.clone(), Family::ConstantTail), (p, Family::PeriodicTail)]
}

/// Plans for every registered reduction, in registry order.
pub fn plans() -> Vec<Plan> {
    use Family as F;
    use TargetOracle as O;
    let bwt2 = Problem::Bwt { k: 2 };
    vec![
        Plan {
            name: "thm3.2-lower-bound",
            generators: [both_tails(jump(bwt2.clone())), both_tails(jump(jump(bwt2)))].concat(),
            window: 16,
            sizes: vec![4, 5],
            oracle: O::Homogeneous,
        },
        Plan {
            name: "lemma3.6-product",
            generators: vec![(product(rt(2), rt(2)), F::Uniform), (product(rt(2), rt(2)), F::StableAnnotated)],
            window: 12,
            sizes: vec![4, 5, 6],
            oracle: O::Homogeneous,
        },
        Plan {
            name: "thm3.18-plus",
            generators: vec![
                (product(rt(1), rt(2)), F::StableAnnotated),
                (product(rt(2), rt(3)), F::StableAnnotated),
            ],
            window: 12,
            sizes: vec![4, 5],
            oracle: O::Homogeneous,
        },
        Plan {
            name: "thm3.21-delayed-parallelization",
            generators: vec![(Problem::Parallel(Box::new(rt(1))), F::StableAnnotated)],
            window: 12,
            sizes: vec![5, 6],
            oracle: O::Homogeneous,
        },
        Plan {
            name: "prop4.1-jump",
            generators: vec![(jump(crt(1)), F::StableAnnotated), (jump(crt(2)), F::StableAnnotated)],
            window: 12,
            sizes: vec![4, 5],
            oracle: O::Homogeneous,
        },
        Plan {
            name: "thm4.3-grow",
            generators: vec![
                (Problem::Srt { n: 2, colors: Colors::Finite(2) }, F::StableAnnotated),
                (Problem::Srt { n: 3, colors: Colors::Finite(2) }, F::StableAnnotated),
            ],
            window: 12,
            sizes: vec![4, 6],
            oracle: O::LimitHomogeneous,
        },
        Plan {
            name: "prop4.14-transport",
            generators: vec![(rt(2), F::StableAnnotated)],
            window: 12,
            sizes: vec![4],
            oracle: O::Transport,
        },
        Plan {
            name: "prop5.4-coh",
            generators: vec![(Problem::Coh { slack: 2 }, F::CofiniteSets)],
            window: 64,
            sizes: vec![8],
            oracle: O::Homogeneous,
        },
        Plan {
            name: "thm5.6-kl-plus",
            generators: vec![(Problem::KlPlus, F::EnumeratedTrees)],
            window: 8,
            sizes: vec![],
            oracle: O::Paths,
        },
        Plan {
            name: "prop5.9-ivt",
            generators: vec![(Problem::Boundedness, F::ShrinkingIntervals)],
            window: 16,
            sizes: vec![],
            oracle: O::ClusterPoints,
        },
        Plan {
            name: "prop7.1-min",
            generators: both_tails(Problem::Min),
            window: 24,
            sizes: vec![],
            oracle: O::ClosedChoice,
        },
    ]
}

/// The plan of the named reduction.
pub fn plan(name: &str) -> Option<Plan> {
    plans().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registered_reduction_has_a_plan() {
        let names: Vec<&str> = wlab_constructions::registry().iter().map(|r| r.info().name).collect();
        let planned: Vec<&str> = plans().iter().map(|p| p.name).collect();
        assert_eq!(names, planned);
        assert!(plans().iter().all(|p| !p.generators.is_empty()));
    }
}
