use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use wlab_problems::{Instance, Solution};

/// Most failure witnesses kept per report.
pub const MAX_WITNESSES: usize = 5;

/// One failing trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureWitness {
    pub trial: usize,
    pub instance: Instance,
    pub oracle_solution: Option<Solution>,
    pub transported: Option<Solution>,
    pub verdict: String,
}

/// What the trials exercised.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub windows: BTreeSet<u64>,
    pub sizes: BTreeSet<usize>,
    pub families: BTreeSet<String>,
    /// Trials whose oracle enumerated every solution.
    pub exhaustive_trials: usize,
    /// Trials whose oracle sampled.
    pub sampled_trials: usize,
}

/// Outcome of `verify_reduction`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub reduction: String,
    pub anchor: String,
    pub strength: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Trials where no transported solution could be checked.
    pub inconclusive: usize,
    pub solutions_checked: usize,
    /// Produced annotated colourings whose stability `is_stable_up_to` confirmed.
    pub stability_confirmed: usize,
    /// Produced annotated colourings in total.
    pub stability_checked: usize,
    /// The first failing trials, in trial order.
    pub failures: Vec<FailureWitness>,
    pub coverage: Coverage,
}

impl TrialReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn inconclusive_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.inconclusive as f64 / self.trials as f64
        }
    }

    /// One line per report for terminals.
    pub fn summary(&self) -> String {
        format!(
            "{:<34} {:<4} trials {:>4}  pass {:>4}  fail {:>3}  inconclusive {:>3}  solutions {:>7}  stable {}/{}",
            self.reduction,
            if self.pass() { "ok" } else { "FAIL" },
            self.trials,
            self.passed,
            self.failed,
            self.inconclusive,
            self.solutions_checked,
            self.stability_confirmed,
            self.stability_checked
        )
    }
}
