//! The experiment registry: each experiment validates its config
//! (enforcing the hypotheses of the statement it probes), runs its seeded
//! samples, and reports a verdict that is recomputable from the emitted
//! records.

mod absence;
mod decay;
mod rational_alpha;
mod stau_poly;
mod veech_probe;

use crate::config::RawConfig;
use crate::report::ExperimentResult;
use crate::AppError;

pub use absence::{run_badly_approx, run_roth};
pub use decay::run_discrepancy_decay;
pub use rational_alpha::run_rational_alpha;
pub use stau_poly::run_stau_poly;
pub use veech_probe::run_veech_probe;

pub const EXPERIMENTS: &[&str] = &[
    "badly-approx",
    "roth",
    "rational-alpha",
    "stau-poly",
    "discrepancy-decay",
    "veech-probe",
];

pub fn run(name: &str, raw: RawConfig) -> Result<ExperimentResult, AppError> {
    match name {
        "badly-approx" => run_badly_approx(raw),
        "roth" => run_roth(raw),
        "rational-alpha" => run_rational_alpha(raw),
        "stau-poly" => run_stau_poly(raw),
        "discrepancy-decay" => run_discrepancy_decay(raw),
        "veech-probe" => run_veech_probe(raw),
        other => Err(AppError::config(format!(
            "unknown experiment {other:?}; available: {EXPERIMENTS:?}"
        ))),
    }
}

/// Runs `samples` closures in parallel and collects results in sample
/// order, so aggregation does not depend on scheduling.
pub(crate) fn run_samples<T: Send>(
    samples: u64,
    body: impl Fn(u64) -> T + Sync + Send,
) -> Vec<T> {
    use rayon::prelude::*;
    (0..samples).into_par_iter().map(body).collect()
}
