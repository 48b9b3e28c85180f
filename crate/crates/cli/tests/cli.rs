use std::process::{Command, Output};

use serde_json::Value;

fn apostol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apostol"))
        .args(args)
        .env_remove("APOSTOL_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn euler_numbers_text() {
    let out = apostol(&["euler", "--lambda", "1", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1, -1/2, 0, 1/4");
    let out = apostol(&["euler", "--lambda", "2", "--n", "2"]);
    assert_eq!(stdout(&out).trim(), "2/3, -4/9, 4/27");
}

#[test]
fn euler_json_and_csv() {
    let v = json(&apostol(&["euler", "--lambda", "1/2", "--n", "1", "--json"]));
    assert_eq!(v["lambda"], "1/2");
    assert_eq!(v["values"], serde_json::json!(["4/3", "-4/9"]));
    assert!(v["x"].is_null());
    let out = apostol(&["euler", "--lambda", "1", "--n", "1", "--x", "1/2", "--csv"]);
    assert_eq!(stdout(&out), "k,value\n0,1\n1,0\n");
}

#[test]
fn pole_is_a_domain_error() {
    let out = apostol(&["euler", "--lambda", "-1", "--n", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not invertible"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&apostol(&["euler", "--lambda", "abc", "--n", "3"])), 2);
    assert_eq!(code(&apostol(&["euler", "--n", "3"])), 2);
    assert_eq!(code(&apostol(&["padic-l", "--p", "4", "--s", "-1"])), 2);
    assert_eq!(code(&apostol(&["verify", "--suite", "nonsense"])), 2);
    assert_eq!(code(&apostol(&["integrate", "--f", "frob(x)"])), 2);
    assert_eq!(code(&apostol(&["integrate", "--f", "x", "--measure", "q", "--q", "2"])), 2);
}

#[test]
fn bernoulli_numbers() {
    let out = apostol(&["bernoulli", "--n", "4"]);
    assert_eq!(stdout(&out).trim(), "1, -1/2, 1/6, 0, -1/30");
}

#[test]
fn character_values_json() {
    let v = json(&apostol(&["char-euler", "--chi", "3:1", "--lambda", "1", "--n", "2", "--json"]));
    assert_eq!(v["values"].as_array().unwrap().len(), 3);
    assert_eq!(v["chi"]["modulus"], 3);
}

#[test]
fn zeta_values() {
    let v = json(&apostol(&["zeta", "--s", "-1", "--x", "1", "--lambda", "0.5"]));
    let re = v["re"].as_f64().unwrap();
    // E_1(1/2 : 1) = 8/9
    assert!((re - 8.0 / 9.0).abs() < 1e-10, "{re}");
    assert_eq!(v["im"].as_f64().unwrap(), 0.0);
    let v = json(&apostol(&["zeta", "--s", "2", "--x", "1", "--lambda", "0"]));
    assert_eq!(v["re"].as_f64().unwrap(), 2.0);
}

#[test]
fn tolerance_not_met_exits_1() {
    let out = apostol(&["zeta", "--s", "2", "--x", "1", "--lambda", "0.999", "--max-terms", "10", "--accel", "direct"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn l_and_partial_zeta_agree() {
    let l = json(&apostol(&["l", "--s", "2", "--chi", "1:0", "--lambda", "0.5"]));
    let h1 = json(&apostol(&["partial-zeta", "--s", "2", "--a", "1", "--F", "1", "--lambda", "0.5"]));
    let lr = l["re"].as_f64().unwrap();
    let hr = h1["re"].as_f64().unwrap();
    // F = 1: the decomposition has the single term a = 1
    assert!((lr - 2.0 * hr).abs() < 1e-10, "{lr} {hr}");
}

#[test]
fn padic_l_digits() {
    let v = json(&apostol(&["padic-l", "--p", "5", "--M", "6", "--s", "-1", "--chi", "teich:1"]));
    assert_eq!(v["p"], 5);
    assert_eq!(v["digits"], serde_json::json!([2, 0, 0, 0, 0, 0]));
    let v = json(&apostol(&["padic-l", "--p", "5", "--M", "6", "--s", "-1"]));
    assert_eq!(v["digits"], serde_json::json!([]));
}

#[test]
fn precision_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_apostol"));
        cmd.args(["padic-l", "--p", "7", "--s", "2", "--chi", "teich:1"]).args(extra);
        match env {
            Some(m) => cmd.env("APOSTOL_PRECISION", m),
            None => cmd.env_remove("APOSTOL_PRECISION"),
        };
        let out = cmd.output().unwrap();
        json(&out)
    };
    let default = run(None, &[]);
    let from_env = run(Some("4"), &[]);
    let flag_wins = run(Some("4"), &["--M", "10"]);
    assert_eq!(default["precision"], 8);
    assert_eq!(from_env["precision"], 4);
    assert_eq!(flag_wins["precision"], 10);
    let digits = |v: &Value| v["digits"].as_array().unwrap().clone();
    assert_eq!(digits(&from_env)[..], digits(&default)[..4]);
}

#[test]
fn harmonic_agreement_and_require() {
    let v = json(&apostol(&["harmonic", "--p", "5", "--M", "8", "--n", "2", "--r", "2", "--lambda", "2"]));
    assert!(v["agreement_precision"].as_i64().unwrap() >= 6);
    assert_eq!(v["k_start"], 1);
    let out = apostol(&[
        "harmonic",
        "--p",
        "5",
        "--M",
        "8",
        "--n",
        "2",
        "--r",
        "1",
        "--lambda",
        "2",
        "--k-start",
        "0",
        "--require",
        "6",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&apostol(&["harmonic", "--p", "3", "--n", "2", "--lambda", "2"])), 2);
    assert_eq!(code(&apostol(&["harmonic", "--n", "3"])), 2);
}

#[test]
fn integrate_fermionic_and_compare() {
    let v = json(&apostol(&["integrate", "--p", "3", "--M", "8", "--f", "x", "--N", "4", "--compare", "-1/2"]));
    assert_eq!(v["agreement_precision"], 4);
    assert_eq!(v["integrand"], "x");
    let out =
        apostol(&["integrate", "--p", "3", "--M", "8", "--f", "x", "--N", "2", "--compare", "-1/2", "--require", "3"]);
    assert_eq!(code(&out), 1);
    let v = json(&apostol(&["integrate", "--p", "5", "--M", "8", "--f", "x", "--N", "3", "--measure", "volkenborn"]));
    assert_eq!(v["value"]["digits"], serde_json::json!([2, 2, 2, 0, 0, 0, 0, 0]));
}

#[test]
fn integrate_lambda_binding_and_residual() {
    let v = json(&apostol(&[
        "integrate",
        "--p",
        "5",
        "--M",
        "8",
        "--f",
        "pow(lambda, x)",
        "--lambda",
        "6",
        "--N",
        "4",
        "--compare",
        "2/7",
    ]));
    // ∫ 6^x dμ_{-1} = 2/(6+1)
    assert!(v["agreement_precision"].as_i64().unwrap() >= 4);
    let v = json(&apostol(&["integrate", "--p", "5", "--M", "8", "--f", "c:3", "--residual", "lemma1", "--N", "2"]));
    assert_eq!(v["value"]["digits"], serde_json::json!([]));
}

#[test]
fn verify_exact_suite_is_deterministic() {
    let a = apostol(&["verify", "--suite", "theorem5"]);
    let b = apostol(&["verify", "--suite", "theorem5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["suite"], "theorem5");
    assert_eq!(v["exit_code"], 0);
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_seed_changes_random_cases() {
    let a = json(&apostol(&["verify", "--suite", "recurrence", "--seed", "1"]));
    let b = json(&apostol(&["verify", "--suite", "recurrence", "--seed", "2"]));
    assert_eq!(a["exit_code"], 0);
    assert_ne!(a["cases"], b["cases"]);
}

#[test]
fn help_lists_schemas() {
    let out = apostol(&["integrate", "--help"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("agreement_precision"));
    assert!(text.contains("qbinom"));
    assert!(stdout(&apostol(&["--help"])).contains("APOSTOL_PRECISION"));
}
