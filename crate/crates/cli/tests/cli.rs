use std::process::{Command, Output};

use serde_json::Value;

fn mertensff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mertensff"))
        .args(args)
        .env_remove("MERTENSFF_THREADS")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = mertensff(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema"], 1);
    v
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn zeta_of_x3_plus_x() {
    let v = json_ok(&["zeta", "--p", "3", "--g", "1", "--f", "0,1,0,1"]);
    assert_eq!(ints(&v["P"]), [1, 0, 3]);
    assert_eq!(ints(&v["counts"]), [4]);
    let v = json_ok(&["zeta", "--p", "5", "--g", "1", "--f", "0,1,0,1"]);
    assert_eq!(ints(&v["P"]), [1, -2, 5]);
}

#[test]
fn negative_coefficients_reduce_mod_p() {
    let a = json_ok(&["zeta", "--p", "7", "--f", "5,0,0,1"]);
    let b = json_ok(&["zeta", "--p", "7", "--f", "-2,0,0,1"]);
    assert_eq!(a["P"], b["P"]);
}

#[test]
fn bad_curves_exit_2() {
    for args in [
        &["zeta", "--p", "3", "--f", "0,1,0,2"][..],
        &["zeta", "--p", "4", "--f", "0,1,0,1"],
        &["zeta", "--p", "3", "--f", "0,0,0,1"],
        &["zeta", "--p", "3", "--g", "2", "--f", "0,1,0,1"],
        &["zeta", "--p", "3", "--f", "0,1,7,1"],
        &["zeta", "--f", "0,1,0,1"],
    ] {
        assert_eq!(mertensff(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unknown_flags_are_errors() {
    assert_eq!(mertensff(&["zeta", "--p", "3", "--f", "0,1,0,1", "--bogus"]).status.code(), Some(2));
    assert_eq!(mertensff(&["frobnicate"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_mertensff"))
        .args(["elliptic", "--q", "9", "--a", "0"])
        .env("MERTENSFF_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_lists_every_flag() {
    let cases: [(&str, &[&str]); 6] = [
        ("zeta", &["--p", "--m", "--n", "--g", "--f", "--precision"]),
        (
            "mertens",
            &["--rational", "--ring", "--xmax", "--beta", "--residual", "--H", "--li-precision"],
        ),
        ("li", &["--angles", "--H", "--precision"]),
        (
            "rmt",
            &["--g", "--beta", "--samples", "--seed", "--method", "--quadrature", "--verify-minimum", "--size", "--k", "--trials"],
        ),
        (
            "ensemble",
            &["--p", "--n", "--T", "--samples", "--rmt-samples", "--rmt-seed", "--curves", "--convergence"],
        ),
        ("elliptic", &["--q", "--a", "--window"]),
    ];
    for (cmd, flags) in cases {
        let out = mertensff(&[cmd, "--help"]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        for flag in flags.iter().chain(&["--threads", "--format", "--output"]) {
            assert!(text.contains(flag), "{cmd} --help misses {flag}");
        }
    }
}

#[test]
fn elliptic_supersingular_case() {
    let v = json_ok(&["elliptic", "--q", "9", "--a", "3"]);
    assert_eq!(v["verdict"], "mertens_true");
    let v = json_ok(&["elliptic", "--q", "7", "--a", "1"]);
    assert_eq!(v["verdict"], "mertens_false");
    assert_eq!(mertensff(&["elliptic", "--q", "12", "--a", "1"]).status.code(), Some(2));
}

#[test]
fn beta_verdicts_for_trace_one_over_f7() {
    // y² = x³ + 5 has 7 points over F_7, so a = 1 and B² = 28/27
    let v = json_ok(&["mertens", "--p", "7", "--f", "5,0,0,1", "--beta", "1,1.2"]);
    let r = &v["report"];
    assert_eq!(ints(&r["P"]), [1, -1, 7]);
    assert_eq!(r["beta_verdicts"]["1"], "fails");
    assert_eq!(r["beta_verdicts"]["1.2"], "satisfies");
    let b: f64 = r["B_LI"].as_str().unwrap().parse().unwrap();
    assert!((b - (28.0f64 / 27.0).sqrt()).abs() < 1e-15);
}

#[test]
fn xmax_rows() {
    let v = json_ok(&["mertens", "--p", "7", "--f", "5,0,0,1", "--xmax", "500"]);
    assert_eq!(v["series"].as_array().unwrap().len(), 500);
    let out = mertensff(&["mertens", "--p", "7", "--f", "5,0,0,1", "--xmax", "500", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 501);
    assert!(text.starts_with("X,b,M,M_normalized\n"));
    assert_eq!(mertensff(&["mertens", "--p", "7", "--f", "5,0,0,1", "--xmax", "0"]).status.code(), Some(2));
    assert_eq!(
        mertensff(&["mertens", "--p", "7", "--f", "5,0,0,1", "--xmax", "100000000"]).status.code(),
        Some(3)
    );
}

#[test]
fn genus_zero_tables() {
    for (p, m, q) in [("3", "1", 3), ("5", "1", 5), ("3", "2", 9), ("3", "3", 27)] {
        let sums = |mode: &str| -> Vec<i64> {
            let v = json_ok(&["mertens", mode, "--p", p, "--m", m, "--xmax", "6"]);
            v["series"].as_array().unwrap().iter().map(|r| r["M"].as_i64().unwrap()).collect()
        };
        assert_eq!(sums("--rational"), [1, -q, 0, 0, 0, 0], "F_{q}(t)");
        assert_eq!(sums("--ring"), [1, 1 - q, 1 - q, 1 - q, 1 - q, 1 - q], "F_{q}[t]");
    }
}

#[test]
fn explicit_formula_residual_vanishes() {
    // genus 2 over F_5: the prediction matches every b_{X-1}
    let v = json_ok(&["mertens", "--p", "5", "--f", "1,0,1,0,0,1", "--xmax", "40", "--residual"]);
    for row in v["series"].as_array().unwrap() {
        let b = row["b"].as_f64().unwrap().abs().max(1.0);
        assert!(row["residual"].as_f64().unwrap().abs() < 1e-25 * b, "{row}");
    }
    assert_eq!(
        mertensff(&["mertens", "--rational", "--p", "5", "--residual"]).status.code(),
        Some(2)
    );
}

#[test]
fn li_on_curve_and_planted_angles() {
    let v = json_ok(&["li", "--p", "3", "--f", "0,1,0,1"]);
    assert_eq!(v["status"], "FALSE_EXACT");
    assert_eq!(v["witness"], "imaginary-zero");
    let v = json_ok(&["li", "--angles", "1/3"]);
    assert_eq!(v["status"], "RELATION_NUMERIC");
    assert_eq!(v["relations"][0].as_array().unwrap().len(), 2);
    assert_eq!(mertensff(&["li", "--angles", "1/0"]).status.code(), Some(2));
}

#[test]
fn rmt_estimate_matches_closed_form() {
    let v = json_ok(&["rmt", "--g", "1", "--beta", "1.2,2", "--samples", "200000", "--seed", "3"]);
    for e in v["estimates"].as_array().unwrap() {
        let mc = e["estimate"]["value"].as_f64().unwrap();
        let se = e["estimate"]["stderr"].as_f64().unwrap();
        let exact = e["closed_form"].as_f64().unwrap();
        assert!((mc - exact).abs() < 4.0 * se, "{e}");
    }
}

#[test]
fn rmt_minimum_checks() {
    let v = json_ok(&["rmt", "--verify-minimum", "symplectic", "--size", "2", "--trials", "8"]);
    assert_eq!(v["minimum"]["passed"], true);
    assert_eq!(
        mertensff(&["rmt", "--verify-minimum", "unitary-k", "--size", "3", "--k", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn rmt_sample_dump() {
    let out = mertensff(&["rmt", "--g", "3", "--samples", "10", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("theta_1,theta_2,theta_3"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn identical_runs_are_byte_identical() {
    let base = ["ensemble", "--p", "3", "--n", "2", "--g", "1", "--T", "1,2", "--rmt-samples", "2000"];
    let one = mertensff(&[&base[..], &["--threads", "1"]].concat());
    let two = mertensff(&[&base[..], &["--threads", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let rmt = ["rmt", "--g", "4", "--beta", "1.5", "--samples", "5000", "--seed", "11"];
    assert_eq!(mertensff(&rmt).stdout, mertensff(&rmt).stdout);
}

#[test]
fn ensemble_summary_and_curve_csv() {
    let dir = std::env::temp_dir().join(format!("mertensff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("curves.csv");
    let summary = dir.join("summary.json");
    let out = mertensff(&[
        "ensemble", "--p", "3", "--n", "2", "--beta", "1,1.4142",
        "--curves", csv.to_str().unwrap(), "--output", summary.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&summary).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["total"], 648);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 649);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn trace_window_lists_traces() {
    let v = json_ok(&["elliptic", "--q", "101", "--window", "1.5,2"]);
    assert_eq!(ints(&v["traces"]), [-16, -15]);
    assert_eq!(mertensff(&["elliptic", "--q", "101", "--window", "2,1.5"]).status.code(), Some(2));
}
