use wlab_problems::{Coloring, HomSet, Instance, Problem, Solution};
use wlab_ramsey::build_product_coloring;

use crate::registry::{Reduction, ReductionInfo, Strength};
use crate::{shape, Result};

/// `RT_{n,k}^m ≤sW RT_{n,k^m}` through the product colouring.
///
/// The source is the `m`-fold product written as right-nested pairs
/// `(c_1, (c_2, …))`; `H` hands the target set to every component.
pub struct ProductReduction {
    pub components: usize,
}

impl ProductReduction {
    fn flatten<'a>(&self, x: &'a Instance) -> Result<Vec<&'a Coloring>> {
        let mut out = Vec::with_capacity(self.components);
        let mut cur = x;
        for i in 0..self.components {
            let last = i + 1 == self.components;
            match (cur, last) {
                (Instance::Coloring(c), true) => out.push(c),
                (Instance::Pair(a, b), false) => match &**a {
                    Instance::Coloring(c) => {
                        out.push(c);
                        cur = b;
                    }
                    _ => return Err(shape("expected a colouring in each product slot")),
                },
                _ => return Err(shape(format!("expected a product of {} colourings", self.components))),
            }
        }
        Ok(out)
    }
}

impl Reduction for ProductReduction {
    fn info(&self) -> ReductionInfo {
        ReductionInfo {
            name: "lemma3.6-product",
            source: "RT_{n,k}^m",
            target: "RT_{n,k^m}",
            strength: Strength::Strong,
            anchor: "Lemma 3.6",
        }
    }

    fn forward(&self, x: &Instance) -> Result<Instance> {
        let cs: Vec<Coloring> = self.flatten(x)?.into_iter().cloned().collect();
        Ok(Instance::Coloring(build_product_coloring(&cs)?))
    }

    fn backward(&self, _original: Option<&Instance>, s: &Solution) -> Result<Solution> {
        let Solution::HomSet(m) = s else {
            return Err(shape("expected a homogeneous set"));
        };
        let copy = || Solution::HomSet(HomSet::new(m.elements.clone(), m.color));
        let mut out = copy();
        for _ in 1..self.components {
            out = Solution::Pair(Box::new(copy()), Box::new(out));
        }
        Ok(out)
    }

    fn source_problem(&self, x: &Instance) -> Result<Problem> {
        let cs = self.flatten(x)?;
        let rt = |c: &Coloring| Problem::Rt { n: c.arity(), colors: c.colors() };
        let mut p = rt(cs[cs.len() - 1]);
        for c in cs[..cs.len() - 1].iter().rev() {
            p = Problem::Product(Box::new(rt(c)), Box::new(p));
        }
        Ok(p)
    }
}
