//! Absence-of-repetitions experiments: quadratic codings over a parameter
//! whose partial quotients are bounded (badly-approx) or moderately
//! growing (roth). Both sample offsets `(beta, gamma)` on a dyadic grid and
//! check that no uncensored one sided statistic beyond the shift threshold
//! exceeds the configured ceiling.

use super::run_samples;
use crate::config::RawConfig;
use crate::report::{summary_map, ExperimentResult, Verdict};
use crate::sampling::{draw_grain, substream};
use crate::AppError;
use num_bigint::BigInt;
use pinrep_core::flows::{poly_coding, PolyCodingSpec};
use pinrep_core::numtheory::RealParam;
use pinrep_core::rat::{format_rat, to_f64, Rat};
use pinrep_core::repetitions::{profile, RepKind};
use num_traits::Zero;
use serde_json::json;

struct AbsenceConfig {
    raw_echo: std::collections::BTreeMap<String, String>,
    seed: u64,
    samples: u64,
    window: usize,
    n_max: u64,
    n_threshold: u64,
    max_value: Rat,
    grain_bits: u32,
    alpha: RealParam,
    spec: PolyCodingSpec,
}

fn parse_common(
    mut raw: RawConfig,
    bounded_quotients: bool,
) -> Result<AbsenceConfig, AppError> {
    let raw_echo = raw.echo();
    let seed = raw.require_u64("seed")?;
    let samples = raw.require_u64("samples")?;
    let window = raw.require_u64("window")? as usize;
    let n_max = match raw.optional_u64("n_max")? {
        Some(n) => n,
        None => (window as u64 / 4).max(1),
    };
    let n_threshold = raw.require_u64("n_threshold")?;
    let max_value = raw.require_rat("max_r")?;
    let grain_bits = raw.require_u64("grain_bits")? as u32;
    let digits = raw.require_digits("alpha_cf")?;
    let partition = raw.require_partition("partition")?;

    // Hypothesis guard: every partition arc strictly shorter than 1/2.
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    for arc in partition.arcs() {
        if arc.length >= half {
            return Err(AppError::config(format!(
                "partition arc of length {} violates the arc < 1/2 hypothesis",
                format_rat(&arc.length)
            )));
        }
    }
    // Hypothesis guard for the bounded case: digits capped by max_quotient.
    if bounded_quotients {
        let cap = BigInt::from(raw.require_u64("max_quotient")?);
        if let Some(bad) = digits.iter().find(|d| **d > cap) {
            return Err(AppError::config(format!(
                "partial quotient {bad} exceeds the declared bound {cap}"
            )));
        }
    }
    if n_max > window as u64 {
        return Err(AppError::config("n_max must be at most the window half width"));
    }
    if n_threshold > n_max || samples == 0 {
        return Err(AppError::config("need n_threshold <= n_max and samples >= 1"));
    }
    let alpha = RealParam::from_digits(digits)
        .map_err(|e| AppError::config(e.to_string()))?;
    raw.finish()?;
    Ok(AbsenceConfig {
        raw_echo,
        seed,
        samples,
        window,
        n_max,
        n_threshold,
        max_value,
        grain_bits,
        alpha,
        spec: PolyCodingSpec { partition, margin: Rat::zero() },
    })
}

struct SampleOutcome {
    row: String,
    violations: u64,
    best: Rat,
    censored_large: u64,
}

fn run_absence(name: &str, cfg: AbsenceConfig) -> Result<ExperimentResult, AppError> {
    let outcomes = run_samples(cfg.samples, |i| {
        let mut rng = substream(cfg.seed, i);
        let beta = draw_grain(&mut rng, cfg.grain_bits);
        let gamma = draw_grain(&mut rng, cfg.grain_bits);
        let window = poly_coding(
            &cfg.alpha,
            &RealParam::Exact(beta.clone()),
            &RealParam::Exact(gamma.clone()),
            2,
            &cfg.spec,
            cfg.window,
        );
        let prof = profile(&window, 1, cfg.n_max, RepKind::OneSided)
            .expect("shift range validated against the window");
        let mut best = Rat::zero();
        let mut best_n = 0u64;
        let mut censored_large = 0u64;
        let mut violations = 0u64;
        for s in &prof.stats {
            if s.n < cfg.n_threshold {
                continue;
            }
            if s.censored {
                censored_large += 1;
                continue;
            }
            if s.value > best {
                best = s.value.clone();
                best_n = s.n;
            }
            if s.value > cfg.max_value {
                violations += 1;
            }
        }
        SampleOutcome {
            row: format!(
                "{i},{},{},{},{},{best_n},{censored_large},{violations},{}",
                format_rat(&beta),
                format_rat(&gamma),
                best.numer(),
                best.denom(),
                window.uncertified_count()
            ),
            violations,
            best,
            censored_large,
        }
    });

    let total_violations: u64 = outcomes.iter().map(|o| o.violations).sum();
    let total_censored: u64 = outcomes.iter().map(|o| o.censored_large).sum();
    let worst = outcomes.iter().map(|o| o.best.clone()).max().unwrap_or_else(Rat::zero);
    let verdict = Verdict::from_bool(total_violations == 0);
    Ok(ExperimentResult {
        experiment: name.to_string(),
        verdict,
        criterion: format!(
            "every uncensored r_n with n >= {} satisfies r_n <= {}",
            cfg.n_threshold,
            format_rat(&cfg.max_value)
        ),
        seed: cfg.seed,
        config: cfg.raw_echo,
        summary: summary_map(vec![
            ("samples", json!(cfg.samples)),
            ("worst_uncensored_value", json!(format_rat(&worst))),
            ("worst_uncensored_value_float", json!(to_f64(&worst))),
            ("violations", json!(total_violations)),
            ("censored_beyond_threshold", json!(total_censored)),
        ]),
        records_header:
            "sample,beta,gamma,best_num,best_den,best_n,censored_large,violations,uncertified"
                .into(),
        records: outcomes.into_iter().map(|o| o.row).collect(),
    })
}

/// Bounded partial quotients: no long pinned repetitions anywhere.
pub fn run_badly_approx(raw: RawConfig) -> Result<ExperimentResult, AppError> {
    let cfg = parse_common(raw, true)?;
    run_absence("badly-approx", cfg)
}

/// Moderately growing partial quotients: same statistic under the looser
/// shift threshold configured for it.
pub fn run_roth(raw: RawConfig) -> Result<ExperimentResult, AppError> {
    let cfg = parse_common(raw, false)?;
    run_absence("roth", cfg)
}
