//! Discrepancy decay along convergent denominators: emits the exact series
//! and judges the fitted log-log slope over its tail half.

use super::run_samples;
use crate::config::RawConfig;
use crate::report::{summary_map, ExperimentResult, Verdict};
use crate::sampling::{draw_grain, substream};
use crate::AppError;
use pinrep_core::discrepancy::{decay_log_slope, discrepancy_decay, DecayPoint};
use pinrep_core::numtheory::RealParam;
use pinrep_core::rat::{to_f64, Rat};
use pinrep_core::torus::TorusPoint;
use serde_json::json;

pub fn run_discrepancy_decay(raw: RawConfig) -> Result<ExperimentResult, AppError> {
    let mut raw = raw;
    let raw_echo = raw.echo();
    let seed = raw.require_u64("seed")?;
    let digits = raw.require_digits("alpha_cf")?;
    let depth = raw.require_u64("depth")? as usize;
    let slope_max: f64 = {
        let s = raw.require_rat("slope_max")?;
        to_f64(&s)
    };
    // With samples = 0 the series uses the explicit offsets; otherwise each
    // sample draws (beta, gamma) on the dyadic grid.
    let samples = raw.optional_u64("samples")?.unwrap_or(0);
    let grain_bits = raw.optional_u64("grain_bits")?.unwrap_or(40) as u32;
    let beta = raw.optional_rat("beta")?.unwrap_or_else(Rat::zero);
    let gamma = raw.optional_rat("gamma")?.unwrap_or_else(Rat::zero);
    let alpha =
        RealParam::from_digits(digits).map_err(|e| AppError::config(e.to_string()))?;
    raw.finish()?;
    use num_traits::Zero;

    let offsets: Vec<(Rat, Rat)> = if samples == 0 {
        vec![(beta, gamma)]
    } else {
        (0..samples)
            .map(|i| {
                let mut rng = substream(seed, i);
                (draw_grain(&mut rng, grain_bits), draw_grain(&mut rng, grain_bits))
            })
            .collect()
    };

    struct Outcome {
        rows: Vec<String>,
        slope: Option<f64>,
        error: Option<String>,
    }

    let outcomes = run_samples(offsets.len() as u64, |i| {
        let (b, g) = &offsets[i as usize];
        match discrepancy_decay(
            &alpha,
            &TorusPoint::new(b.clone()),
            &TorusPoint::new(g.clone()),
            depth,
        ) {
            Err(e) => Outcome { rows: Vec::new(), slope: None, error: Some(e.to_string()) },
            Ok(series) => {
                let slope = decay_log_slope(&series);
                let rows = series
                    .iter()
                    .map(|d: &DecayPoint| {
                        format!(
                            "{i},{},{},{},{},{},{},{}",
                            d.k,
                            d.q,
                            d.report.value.numer(),
                            d.report.value.denom(),
                            to_f64(&d.report.value),
                            (d.q as f64).ln(),
                            to_f64(&d.report.value).ln()
                        )
                    })
                    .collect();
                Outcome { rows, slope, error: None }
            }
        }
    });

    if let Some(err) = outcomes.iter().find_map(|o| o.error.clone()) {
        return Err(AppError::runtime(err));
    }
    let slopes: Vec<Option<f64>> = outcomes.iter().map(|o| o.slope).collect();
    let verdict = if slopes.iter().any(|s| s.is_none()) {
        Verdict::Skipped
    } else if slopes.iter().all(|s| s.unwrap() <= slope_max) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let worst = slopes.iter().filter_map(|s| *s).fold(f64::NEG_INFINITY, f64::max);
    Ok(ExperimentResult {
        experiment: "discrepancy-decay".into(),
        verdict,
        criterion: format!(
            "log-log slope over the tail half of each series is at most {slope_max} (skipped when the series is too short to fit)"
        ),
        seed,
        config: raw_echo,
        summary: summary_map(vec![
            ("series_count", json!(offsets.len())),
            ("depth", json!(depth)),
            (
                "slopes",
                json!(slopes
                    .iter()
                    .map(|s| s.map(|v| json!(v)).unwrap_or(json!(null)))
                    .collect::<Vec<_>>()),
            ),
            ("worst_slope", json!(if worst.is_finite() { json!(worst) } else { json!(null) })),
        ]),
        records_header: "series,k,q_k,D_num,D_den,D_float,log_q,log_D".into(),
        records: outcomes.into_iter().flat_map(|o| o.rows).collect(),
    })
}
