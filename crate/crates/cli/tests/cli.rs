use std::process::{Command, Output};

use subvac_cli::{Cell, Envelope};

fn subvac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subvac")).args(args).env_remove("SUBVAC_FORMAT").output().expect("binary runs")
}

fn json(args: &[&str]) -> Envelope {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = subvac(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("output parses as an envelope")
}

fn num(env: &Envelope, row: usize, col: &str) -> f64 {
    match env.rows[row][env.column(col).expect("column exists")] {
        Cell::Num(x) => x,
        Cell::Int(i) => i as f64,
        ref other => panic!("not numeric: {other:?}"),
    }
}

fn flag(env: &Envelope, row: usize, col: &str) -> bool {
    match env.rows[row][env.column(col).expect("column exists")] {
        Cell::Bool(b) => b,
        ref other => panic!("not a flag: {other:?}"),
    }
}

#[test]
fn every_command_round_trips_through_json() {
    let cases: [&[&str]; 9] = [
        &["qi-bound", "--function", "bump", "--tau", "2"],
        &["dist", "--action", "pdf", "--points", "11"],
        &["dist", "--action", "cdf", "--range", "-0.02,0.1", "--points", "5"],
        &["dist", "--action", "sample", "--n", "50", "--seed", "3"],
        &["dist", "--action", "fig2", "--points", "21"],
        &["mode-energy", "--state", "coherent", "--alpha-re", "0.5", "--oracle", "--points", "8"],
        &["casimir", "--separation", "1e-6", "--si"],
        &["decay", "--r", "0.5", "--phases", "16"],
        &["report"],
    ];
    for args in cases {
        let env = json(args);
        let text = serde_json::to_string(&env).unwrap();
        let again: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(again, env, "{args:?}");
        assert_eq!(env.metadata.version, env!("CARGO_PKG_VERSION"));
        assert!(env.metadata.parameters.is_object());
        assert!(env.rows.iter().all(|r| r.len() == env.columns.len()));
    }
}

#[test]
fn stochastic_commands_record_their_seed() {
    assert_eq!(json(&["dist", "--action", "sample", "--n", "5", "--seed", "99"]).metadata.seed, Some(99));
    assert_eq!(json(&["report", "--seed", "5"]).metadata.seed, Some(5));
    assert_eq!(json(&["casimir"]).metadata.seed, None);
}

#[test]
fn sampling_is_deterministic_across_runs_and_thread_counts() {
    let a = subvac(&["dist", "--action", "sample", "--n", "200000", "--seed", "7", "--threads", "1"]);
    let b = subvac(&["dist", "--action", "sample", "--n", "200000", "--seed", "7", "--threads", "4"]);
    let c = subvac(&["dist", "--action", "sample", "--n", "200000", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let d = subvac(&["dist", "--action", "sample", "--n", "200000", "--seed", "8"]);
    assert_ne!(a.stdout, d.stdout);
}

#[test]
fn samples_sit_above_the_cutoff() {
    let env = json(&["dist", "--action", "sample", "--n", "20000", "--seed", "11"]);
    let x0 = 1.0 / (12.0 * std::f64::consts::PI);
    for i in 0..env.rows.len() {
        assert!(num(&env, i, "excess") > 0.0);
        assert!(num(&env, i, "x") >= -x0);
        assert_eq!(flag(&env, i, "negative"), num(&env, i, "excess") < x0);
    }
}

#[test]
fn qi_bound_values_and_scaling() {
    let g1 = json(&["qi-bound", "--function", "gaussian", "--tau", "1"]);
    let g10 = json(&["qi-bound", "--function", "gaussian", "--tau", "10"]);
    let c = num(&g1, 0, "C");
    assert!((c - 1.0 / (12.0 * std::f64::consts::PI)).abs() < 1e-10);
    assert!((num(&g10, 0, "C") - c).abs() < 1e-12);
    assert!((num(&g10, 0, "bound") * 100.0 - num(&g1, 0, "bound")).abs() < 1e-14);
    let l = json(&["qi-bound", "--function", "lorentzian"]);
    assert!((num(&l, 0, "C") - 1.0 / (48.0 * std::f64::consts::PI)).abs() < 1e-10);
}

#[test]
fn dist_cdf_and_moments() {
    let env = json(&["dist", "--action", "cdf", "--c", "1", "--x", "0"]);
    assert!((num(&env, 0, "cdf") - 0.84).abs() < 0.005);
    let env = json(&["dist", "--action", "moments", "--c", "1"]);
    assert!(num(&env, 0, "mean").abs() <= 1e-12);
}

#[test]
fn density_curve_has_a_cutoff_marker() {
    let env = json(&["dist", "--action", "fig2", "--points", "31"]);
    let x0 = 1.0 / (12.0 * std::f64::consts::PI);
    for i in 0..env.rows.len() {
        assert_eq!(num(&env, i, "cutoff"), -x0);
        if num(&env, i, "x") <= -x0 {
            assert_eq!(num(&env, i, "pdf"), 0.0);
        }
    }
}

#[test]
fn vacuum_mode_is_flat_zero() {
    let env = json(&["mode-energy", "--state", "vacuum", "--oracle"]);
    for i in 0..env.rows.len() {
        assert_eq!(num(&env, i, "rho"), 0.0);
        assert_eq!(num(&env, i, "oracle"), 0.0);
    }
}

#[test]
fn oracle_column_agrees() {
    let env = json(&["mode-energy", "--r", "1.5", "--theta", "0.7", "--oracle", "--points", "32"]);
    for i in 0..env.rows.len() {
        assert!(num(&env, i, "rel_diff") < 1e-8);
    }
}

#[test]
fn casimir_energy_density() {
    let env = json(&["casimir", "--separation", "1"]);
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((num(&env, 0, "value") + pi2 / 720.0).abs() < 1e-15);
    assert_eq!(num(&env, 4, "value"), 0.0);
    assert!(env.metadata.notes.iter().any(|n| n.contains("100")));
}

#[test]
fn decay_scan_has_suppressed_rows() {
    let env = json(&["decay", "--r", "1", "--theta", "0", "--phases", "32"]);
    assert_eq!(env.rows.len(), 32);
    assert!((0..32).any(|i| flag(&env, i, "suppressed")));
    let at_bound = json(&["decay", "--e2", "-1", "--f-squared", "1"]);
    assert_eq!(num(&at_bound, 0, "ratio"), 0.0);
}

#[test]
fn csv_headers_are_stable() {
    let out = subvac(&["casimir"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "quantity,value");
    let out = subvac(&["report"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "quantity,reference,computed,abs_diff,tolerance,pass");
}

#[test]
fn format_can_come_from_the_environment() {
    let out =
        Command::new(env!("CARGO_BIN_EXE_subvac")).args(["casimir"]).env("SUBVAC_FORMAT", "json").output().unwrap();
    let _: Envelope = serde_json::from_slice(&out.stdout).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(subvac(&["qi-bound", "--function", "nope"]).status.code(), Some(2));
    assert_eq!(subvac(&["qi-bound", "--tau", "-1"]).status.code(), Some(2));
    assert_eq!(subvac(&["qi-bound", "--dimension", "4"]).status.code(), Some(2));
    assert_eq!(subvac(&["dist", "--action", "pdf", "--c", "0"]).status.code(), Some(2));
    assert_eq!(subvac(&["frobnicate"]).status.code(), Some(2));

    let out = subvac(&["decay", "--e2", "-1.5", "--f-squared", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains(">= -f^2(x0)"));

    let out = subvac(&["report", "--samples", "1000", "--tolerance-override", "-1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("false"));
}

#[test]
fn four_d_note_is_printed() {
    let out = subvac(&["qi-bound", "--dimension", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("four dimensions"));
    let env = json(&["qi-bound"]);
    assert!(env.metadata.notes.iter().any(|n| n.contains("1e-3")));
}
