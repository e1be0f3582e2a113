//! Well-approximable construction: builds a parameter whose odd convergent
//! denominators `q` satisfy `<q alpha> < q^-(r + epsilon)`, codes the
//! degree `r` sequence against the half circle with offset one quarter, and
//! checks that the two sided statistic at the largest witness fitting the
//! window certifies `m >= m_target * q`.

use crate::config::RawConfig;
use crate::report::{summary_map, ExperimentResult, Verdict};
use crate::AppError;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use pinrep_core::flows::{poly_coding, PolyCodingSpec};
use pinrep_core::numtheory::{convergents, stau_construct, stau_witnesses, RealParam};
use pinrep_core::rat::{format_rat, rat, to_f64, Rat};
use pinrep_core::repetitions::t_n;
use pinrep_core::torus::TorusPartition;
use serde_json::json;

pub fn run_stau_poly(raw: RawConfig) -> Result<ExperimentResult, AppError> {
    let mut raw = raw;
    let raw_echo = raw.echo();
    let seed = raw.require_u64("seed")?;
    let degree = raw.require_u64("r")? as u32;
    let epsilon = raw.require_rat("epsilon")?;
    let count = raw.require_u64("witness_count")? as usize;
    let m_target = raw.require_u64("m_target")?;
    let window = raw.require_u64("window")? as usize;
    if degree < 1 {
        return Err(AppError::config("degree r must be >= 1"));
    }
    if !epsilon.is_positive() {
        return Err(AppError::config("epsilon must be positive"));
    }
    raw.finish()?;

    let tau = Rat::from_integer(BigInt::from(degree)) + &epsilon;
    let alpha = stau_construct(&tau, count).map_err(|e| AppError::config(e.to_string()))?;
    let digits = alpha.digits().expect("construction yields a prefix").to_vec();
    let table = convergents(&digits).map_err(|e| AppError::runtime(e.to_string()))?;

    // Witness denominators with their parity re-checked, and the
    // certification re-derived through the gap enclosures.
    let mut witnesses = Vec::with_capacity(count);
    for k in 1..=count {
        let q = table.q(k).to_u64().ok_or_else(|| {
            AppError::config(format!("witness q_{k} exceeds u64; lower witness_count"))
        })?;
        if q % 2 == 0 {
            return Err(AppError::runtime(format!("constructed q_{k} = {q} is even")));
        }
        witnesses.push(q);
    }
    let certified = stau_witnesses(&alpha, &tau, *witnesses.last().unwrap())
        .map_err(|e| AppError::runtime(e.to_string()))?;
    for q in &witnesses {
        if !certified.iter().any(|w| w.q == *q) {
            return Err(AppError::runtime(format!("q = {q} failed witness certification")));
        }
    }

    let partition = TorusPartition::from_cuts(vec![
        (Rat::zero(), "1".into()),
        (Rat::new(BigInt::one(), BigInt::from(2)), "0".into()),
    ])
    .expect("half circle partition");
    let spec = PolyCodingSpec { partition, margin: Rat::zero() };
    let coding = poly_coding(
        &alpha,
        &RealParam::Exact(Rat::zero()),
        &RealParam::Exact(rat(1, 4)),
        degree,
        &spec,
        window,
    );

    // A witness is affordable when the window can exhibit the target:
    // the scan needs positions up to (m_target + 1) q on each side.
    let mut rows = Vec::new();
    let mut largest_affordable: Option<(u64, Rat, bool)> = None;
    for q in &witnesses {
        let affordable = (m_target + 1).saturating_mul(*q) <= window as u64;
        let stat = if *q <= window as u64 {
            Some(t_n(&coding, *q).expect("q fits the window"))
        } else {
            None
        };
        match &stat {
            Some(s) => rows.push(format!(
                "{q},{},{},{},{},{affordable}",
                s.m,
                s.value.numer(),
                s.value.denom(),
                s.censored
            )),
            None => rows.push(format!("{q},,,,,{affordable}")),
        }
        if affordable {
            let s = stat.expect("affordable implies q fits");
            largest_affordable = Some((*q, s.value.clone(), s.censored));
        }
    }

    let target_value = Rat::one() + Rat::from_integer(BigInt::from(m_target));
    let (verdict, achieved, at_q) = match &largest_affordable {
        None => (Verdict::Fail, Rat::zero(), 0u64),
        // A censored value is still a certified lower bound, so it counts.
        Some((q, value, _)) => (Verdict::from_bool(*value >= target_value), value.clone(), *q),
    };
    let criterion = format!(
        "t_q at the largest affordable witness certifies m >= {m_target} q (value >= {})",
        format_rat(&target_value)
    );
    let mut summary_entries = vec![
        ("tau", json!(format_rat(&tau))),
        ("digits", json!(digits.iter().map(|d| d.to_string()).collect::<Vec<_>>())),
        ("witnesses", json!(witnesses)),
        ("largest_affordable_q", json!(at_q)),
        ("achieved_value", json!(format_rat(&achieved))),
        ("achieved_value_float", json!(to_f64(&achieved))),
        ("uncertified_positions", json!(coding.uncertified_count())),
    ];
    if largest_affordable.is_none() {
        summary_entries.push((
            "note",
            json!(format!("window {window} too small for any witness at m_target {m_target}")),
        ));
    }
    Ok(ExperimentResult {
        experiment: "stau-poly".into(),
        verdict,
        criterion,
        seed,
        config: raw_echo,
        summary: summary_map(summary_entries),
        records_header: "q,m,value_num,value_den,censored,affordable".into(),
        records: rows,
    })
}
