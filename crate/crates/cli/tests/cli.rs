//! End to end tests of the pinrep binary: subcommand output shapes, exit
//! codes, and byte-identical reruns through the filesystem.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pinrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn config_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn farey_json_matches_reference() {
    let out = pinrep(&["farey", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"["0/1","1/4","1/3","1/2","2/3","3/4","1/1"]"#
    );
}

#[test]
fn cf_and_convergents_round_trip() {
    let out = pinrep(&["cf", "5/7"]);
    assert_eq!(stdout(&out).trim(), r#"["1","2","2"]"#);
    let out = pinrep(&["convergents", "5/7"]);
    assert_eq!(stdout(&out), "k,a_k,p_k,q_k\n1,1,1,1\n2,2,2,3\n3,2,5,7\n");
    let out = pinrep(&["convergents", "--digits", "1^5"]);
    assert!(stdout(&out).lines().last().unwrap().starts_with("5,1,5,8"));
}

#[test]
fn stau_construct_digits() {
    let out = pinrep(&["stau-construct", "--tau", "5/2", "--count", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"["1","2","32","185336"]"#);
}

#[test]
fn discrepancy_csv_shape() {
    let out = pinrep(&["discrepancy", "--alpha", "1^40", "--depth", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k,q_k,D_num,D_den,D_float,log_q,log_D");
    assert_eq!(text.lines().count(), 7);
    // q_6 = 13 for the all-ones expansion.
    assert!(text.lines().last().unwrap().starts_with("6,13,"));
}

#[test]
fn generate_profile_pipeline() {
    // Rotation by 2/3 coded against its natural two piece partition.
    let out = pinrep(&[
        "generate", "--model", "iet", "--width", "12", "--lambda", "1/3,2/3", "--pi", "2,1",
        "--x0", "1/2", "--cuts", "0,1/3,1", "--labels", "a,b",
    ]);
    assert!(out.status.success());
    let window_json = stdout(&out);
    assert!(window_json.contains("\"symbols\""));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("window.json");
    std::fs::write(&path, &window_json).unwrap();
    let out = pinrep(&["profile", "--window", path.to_str().unwrap(), "--kind", "two-sided"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.starts_with("n,m,value_num,value_den,censored\n"));
    // The orbit has period 3: the n = 3 row is censored with maximal m.
    let row3 = csv.lines().find(|l| l.starts_with("3,")).unwrap();
    assert!(row3.ends_with("true"), "period row must be censored: {row3}");
}

#[test]
fn quad_generate_marks_certification() {
    let out = pinrep(&[
        "generate", "--model", "quad", "--width", "5", "--alpha", "1/2", "--beta", "0",
        "--gamma", "1/4", "--partition", "0:one,1/2:zero",
    ]);
    assert!(out.status.success());
    let w: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(w["certified"].as_array().unwrap().len(), 11);
    assert!(w["certified"].as_array().unwrap().iter().all(|c| c.as_bool().unwrap()));
}

#[test]
fn run_writes_deterministic_outputs_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let base = std::fs::read_to_string(config_path("veech_probe.conf")).unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let cfg = dir.path().join(format!("cfg{run}.conf"));
        let prefix = dir.path().join(format!("out{run}/probe"));
        std::fs::write(&cfg, format!("{base}\nout = {}\n", prefix.display())).unwrap();
        let out = pinrep(&["run", "veech-probe", "--config", cfg.to_str().unwrap()]);
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let summary = std::fs::read(format!("{}_summary.json", prefix.display())).unwrap();
        let records = std::fs::read(format!("{}_records.csv", prefix.display())).unwrap();
        outputs.push((summary, records, stdout(&out)));
    }
    // Identical config (up to the output path) means identical bytes.
    assert_eq!(outputs[0].1, outputs[1].1, "records bytes differ");
    let strip = |s: &str| s.replace("out0/probe", "OUT").replace("out1/probe", "OUT");
    assert_eq!(strip(&String::from_utf8_lossy(&outputs[0].0)), strip(&String::from_utf8_lossy(&outputs[1].0)));
    assert_eq!(strip(&outputs[0].2), strip(&outputs[1].2));
}

#[test]
fn config_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    // Unknown key.
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "seed = 1\nmystery = 2\n").unwrap();
    let out = pinrep(&["run", "veech-probe", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Hypothesis guard: an arc of length 1/2 is rejected.
    let cfg = dir.path().join("arc.conf");
    std::fs::write(
        &cfg,
        "seed = 1\nsamples = 1\nwindow = 100\nn_threshold = 5\nmax_r = 8/5\n\
         grain_bits = 10\nalpha_cf = 1^10\nmax_quotient = 1\npartition = 0:a,1/2:b\n",
    )
    .unwrap();
    let out = pinrep(&["run", "badly-approx", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown experiment name.
    let out = pinrep(&["run", "nonsense", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Reducible permutation fails the return-time probe guard.
    let cfg = dir.path().join("reducible.conf");
    std::fs::write(&cfg, "seed = 1\nlambda = 1/2,1/2\npi = 1,2\neps_list = 1/2\nn_max = 3\n")
        .unwrap();
    let out = pinrep(&["run", "veech-probe", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounded_digits_pass_the_looser_roth_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bounded.conf");
    std::fs::write(
        &cfg,
        "seed = 4\nsamples = 3\nwindow = 5000\nn_threshold = 60\nmax_r = 9/5\n\
         grain_bits = 20\nalpha_cf = 1^30\npartition = 0:a,1/3:b,2/3:c\n",
    )
    .unwrap();
    let out = pinrep(&["run", "roth", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("\"PASS\""));
}

#[test]
fn poly_generate_with_prefix_parameter() {
    let out = pinrep(&[
        "generate", "--model", "poly", "--width", "30", "--r", "2",
        "--alpha", "cf:1,2,32,185336", "--beta", "0", "--gamma", "1/4",
        "--partition", "0:one,1/2:zero",
    ]);
    assert!(out.status.success());
    let w: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let certified = w["certified"].as_array().unwrap();
    assert_eq!(certified.len(), 61);
    // The guard digit pins every position at this scale.
    assert!(certified.iter().all(|c| c.as_bool().unwrap()));
}

#[test]
fn failing_criterion_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fail.conf");
    // A ceiling of 1 cannot hold: some shift always matches at least once.
    std::fs::write(
        &cfg,
        "seed = 3\nsamples = 2\nwindow = 2000\nn_threshold = 1\nmax_r = 1\n\
         grain_bits = 20\nalpha_cf = 1^30\nmax_quotient = 1\npartition = 0:a,1/3:b,2/3:c\n",
    )
    .unwrap();
    let out = pinrep(&["run", "badly-approx", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"FAIL\""));
}

#[test]
fn thread_cap_does_not_change_output_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("threads.conf");
    std::fs::write(
        &cfg,
        "seed = 5\nsamples = 6\nwindow = 3000\nn_threshold = 10\nmax_r = 8/5\n\
         grain_bits = 20\nalpha_cf = 1^30\nmax_quotient = 1\npartition = 0:a,1/3:b,2/3:c\n",
    )
    .unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "2"] {
        let out = Command::new(env!("CARGO_BIN_EXE_pinrep"))
            .args(["run", "badly-approx", "--config", cfg.to_str().unwrap()])
            .env("PINREP_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1], "parallelism must not affect bytes");
}

#[test]
fn growth_guard_rejects_flat_beta_digits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("flat.conf");
    std::fs::write(
        &cfg,
        "seed = 1\nsamples = 1\nwindow = 200\ngrain_bits = 10\nalpha = 1/2\n\
         beta_cf = 2,2,2\npartition = 0:one,1/2:zero\nmin_successes = 1\nt_target = 2\n",
    )
    .unwrap();
    let out = pinrep(&["run", "rational-alpha", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decay_sampling_path_reports_per_sample_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sampled.conf");
    // slope_max = 0 checks the sampling plumbing, not the decay rate.
    std::fs::write(
        &cfg,
        "seed = 9\nalpha_cf = 1^50\ndepth = 14\nslope_max = 0\nsamples = 2\ngrain_bits = 20\n",
    )
    .unwrap();
    let out = pinrep(&["run", "discrepancy-decay", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&stdout(&out)).expect("summary is JSON");
    assert_eq!(summary["summary"]["slopes"].as_array().unwrap().len(), 2);
    assert_eq!(summary["verdict"], "PASS");
}

#[test]
fn seed_change_keeps_verdict_with_fresh_samples() {
    let dir = tempfile::tempdir().unwrap();
    let mut records = Vec::new();
    for seed in [5, 6] {
        let cfg = dir.path().join(format!("seed{seed}.conf"));
        std::fs::write(
            &cfg,
            format!(
                "seed = {seed}\nsamples = 4\nwindow = 3000\nn_threshold = 10\nmax_r = 8/5\n\
                 grain_bits = 20\nalpha_cf = 1^30\nmax_quotient = 1\npartition = 0:a,1/3:b,2/3:c\n"
            ),
        )
        .unwrap();
        let out = pinrep(&["run", "badly-approx", "--config", cfg.to_str().unwrap()]);
        assert!(out.status.success(), "seed {seed} should pass");
        records.push(stdout(&out));
    }
    assert_ne!(records[0], records[1], "different seeds draw different samples");
}

#[test]
fn vacuous_eps_list_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("vacuous.conf");
    std::fs::write(&cfg, "seed = 1\nlambda = 1/3,2/3\npi = 2,1\nn_max = 4\n").unwrap();
    let out = pinrep(&["run", "veech-probe", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"PASS\""));
}

#[test]
fn stau_poly_extremes() {
    let dir = tempfile::tempdir().unwrap();
    // m_target = 0 is trivially satisfied.
    let cfg = dir.path().join("trivial.conf");
    std::fs::write(
        &cfg,
        "seed = 1\nr = 2\nepsilon = 1/2\nwitness_count = 2\nm_target = 0\nwindow = 50\n",
    )
    .unwrap();
    let out = pinrep(&["run", "stau-poly", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    // A window too small for any witness is reported as a failure, not
    // silently skipped.
    let cfg = dir.path().join("cramped.conf");
    std::fs::write(
        &cfg,
        "seed = 1\nr = 2\nepsilon = 1/2\nwitness_count = 3\nm_target = 3000\nwindow = 2000\n",
    )
    .unwrap();
    let out = pinrep(&["run", "stau-poly", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("too small"));
}

#[test]
fn zero_alpha_reduces_to_rotation_coding() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("rotation.conf");
    std::fs::write(
        &cfg,
        "seed = 2\nsamples = 3\nwindow = 5000\ngrain_bits = 20\nalpha = 0\n\
         beta_cf = 1,2,3,4,5,6\npartition = 0:one,1/2:zero\nmin_successes = 1\nt_target = 2\n",
    )
    .unwrap();
    let out = pinrep(&["run", "rational-alpha", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn skipped_series_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("short.conf");
    std::fs::write(&cfg, "seed = 1\nalpha_cf = 1^40\ndepth = 2\nslope_max = -1/4\n").unwrap();
    let out = pinrep(&["run", "discrepancy-decay", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"SKIPPED\""));
}
