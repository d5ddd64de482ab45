use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wlab_constructions::{find, registry, Reduction, Strength};
use wlab_problems::{check, is_stable_up_to, Coloring, Instance, Problem, Solution, Stability, Verdict};

use crate::generate::generate_one;
use crate::harness::{plan, Plan};
use crate::mutate::corrupt;
use crate::oracle::{target_solutions, OracleConfig};
use crate::report::{Coverage, FailureWitness, TrialReport, MAX_WITNESSES};
use crate::{Result, VerifyError};

/// Parameters of a verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub trials: usize,
    /// Overrides the plan's window.
    pub window: Option<u64>,
    pub seed: u64,
    /// Largest `C(W, size)` the oracle enumerates exhaustively.
    pub budget: u64,
    /// Random oracle solutions per size when sampling.
    pub samples: usize,
    /// Corrupt every transported solution (harness sanity mode).
    pub corrupt: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        let o = OracleConfig::default();
        Self { trials: 50, window: None, seed: 0, budget: o.budget, samples: o.samples, corrupt: false }
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Status {
    Passed,
    Failed,
    Inconclusive,
}

struct Outcome {
    status: Status,
    solutions_checked: usize,
    stability_checked: usize,
    stability_confirmed: usize,
    exhaustive: bool,
    family: &'static str,
    witness: Option<FailureWitness>,
}

/// Run the contract of the named reduction on generated instances.
///
/// For each trial: generate `x`, compute `K(x)`, confirm the stability
/// annotations of produced colourings, enumerate oracle solutions of `K(x)`,
/// transport each through `H` and run the source checker on `x`. Window
/// starvation counts as inconclusive, never as a pass.
pub fn verify_reduction(name: &str, cfg: &VerifyConfig) -> Result<TrialReport> {
    let reduction = find(name).ok_or_else(|| VerifyError::UnknownReduction(name.into()))?;
    let plan = plan(name).ok_or_else(|| VerifyError::UnknownReduction(name.into()))?;
    let window = cfg.window.unwrap_or(plan.window);
    let mut outcomes: Vec<(usize, Outcome)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(&*reduction, &plan, window, cfg, i).map(|o| (i, o)))
        .collect::<Result<_>>()?;
    outcomes.sort_by_key(|(i, _)| *i);

    let info = reduction.info();
    let mut report = TrialReport {
        reduction: info.name.into(),
        anchor: info.anchor.into(),
        strength: info.strength.symbol().into(),
        trials: cfg.trials,
        passed: 0,
        failed: 0,
        inconclusive: 0,
        solutions_checked: 0,
        stability_confirmed: 0,
        stability_checked: 0,
        failures: Vec::new(),
        coverage: Coverage::default(),
    };
    report.coverage.windows.insert(window);
    report.coverage.sizes.extend(plan.sizes.iter().copied());
    for (_, o) in outcomes {
        match o.status {
            Status::Passed => report.passed += 1,
            Status::Failed => report.failed += 1,
            Status::Inconclusive => report.inconclusive += 1,
        }
        report.solutions_checked += o.solutions_checked;
        report.stability_checked += o.stability_checked;
        report.stability_confirmed += o.stability_confirmed;
        if o.exhaustive {
            report.coverage.exhaustive_trials += 1;
        } else {
            report.coverage.sampled_trials += 1;
        }
        report.coverage.families.insert(o.family.into());
        if let Some(w) = o.witness {
            if report.failures.len() < MAX_WITNESSES {
                report.failures.push(w);
            }
        }
    }
    Ok(report)
}

/// [`verify_reduction`] for every registered reduction, in registry order.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<TrialReport>> {
    registry().iter().map(|r| verify_reduction(r.info().name, cfg)).collect()
}

fn run_trial(reduction: &dyn Reduction, plan: &Plan, window: u64, cfg: &VerifyConfig, i: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(i as u64);
    let (problem, family) = &plan.generators[i % plan.generators.len()];
    let x = generate_one(problem, *family, window, &mut rng)?;
    let mut out = Outcome {
        status: Status::Inconclusive,
        solutions_checked: 0,
        stability_checked: 0,
        stability_confirmed: 0,
        exhaustive: false,
        family: family.name(),
        witness: None,
    };
    let fail = |out: &mut Outcome, s: Option<&Solution>, t: Option<Solution>, verdict: String| {
        out.status = Status::Failed;
        out.witness = Some(FailureWitness {
            trial: i,
            instance: x.clone(),
            oracle_solution: s.cloned(),
            transported: t,
            verdict,
        });
    };

    let y = match reduction.forward(&x) {
        Ok(y) => y,
        Err(e) if e.is_starvation() => return Ok(out),
        Err(e) => {
            fail(&mut out, None, None, format!("forward map failed: {e}"));
            return Ok(out);
        }
    };
    let mut produced = Vec::new();
    annotated_colorings(&y, &mut produced);
    for c in produced {
        out.stability_checked += 1;
        match stability_of(c) {
            Some(true) => out.stability_confirmed += 1,
            Some(false) => {
                fail(&mut out, None, None, "produced colouring is not stable at its annotated horizon".into());
                return Ok(out);
            }
            None => {}
        }
    }

    let source: Problem = reduction.source_problem(&x)?;
    let oracle_cfg = OracleConfig { budget: cfg.budget, samples: cfg.samples };
    let solutions = target_solutions(plan.oracle, &y, &plan.sizes, &oracle_cfg, &mut rng)?;
    out.exhaustive = solutions.exhaustive;
    let original = match reduction.info().strength {
        Strength::Strong => None,
        Strength::Weak => Some(&x),
    };
    for s in &solutions.solutions {
        let t = match reduction.backward(original, s) {
            Ok(t) => t,
            Err(e) if e.is_starvation() => continue,
            Err(e) => {
                fail(&mut out, Some(s), None, format!("backward map failed: {e}"));
                return Ok(out);
            }
        };
        let t = if cfg.corrupt { corrupt(&t) } else { t };
        match check(&source, &x, &t) {
            Ok(Verdict::Accept) => out.solutions_checked += 1,
            Ok(Verdict::Inconclusive(_)) => {}
            Ok(Verdict::Reject(why)) => {
                fail(&mut out, Some(s), Some(t), why);
                return Ok(out);
            }
            Err(e) => {
                fail(&mut out, Some(s), Some(t), format!("checker error: {e}"));
                return Ok(out);
            }
        }
    }
    if out.solutions_checked > 0 {
        out.status = Status::Passed;
    }
    Ok(out)
}

fn annotated_colorings<'a>(y: &'a Instance, out: &mut Vec<&'a Coloring>) {
    match y {
        Instance::Coloring(c) if c.annotation().is_some() => out.push(c),
        Instance::Pair(a, b) => {
            annotated_colorings(a, out);
            annotated_colorings(b, out);
        }
        Instance::Tagged(_, a) => annotated_colorings(a, out),
        Instance::Parallel(xs) => xs.iter().for_each(|x| annotated_colorings(x, out)),
        _ => {}
    }
}

/// `Some(true)` when the probe confirms the annotated horizon and limit,
/// `Some(false)` when it refutes them, `None` when the window is too short.
fn stability_of(c: &Coloring) -> Option<bool> {
    let ann = c.annotation()?;
    let probe = ann.horizon.max(c.arity() as u64);
    match is_stable_up_to(c, probe) {
        Stability::Stable(lim) => Some(lim.entries().all(|(s, v)| ann.limit.color_of(&s) == v)),
        Stability::Unstable { .. } => Some(false),
        Stability::Inconclusive => None,
    }
}
