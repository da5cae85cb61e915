use std::process::{Command, Output};

use serde_json::Value;

fn septic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_septic"))
        .args(args)
        .env_remove("SEPTIC_CACHE")
        .env_remove("SEPTIC_BUDGET")
        .output()
        .expect("spawn septic")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn report_profiles() {
    let two = septic(&["report", "2"]);
    assert_eq!(two.status.code(), Some(0));
    let v = json(&two);
    assert_eq!(v["conductor"], "49");
    assert_eq!(v["is_polya"], true);
    assert_eq!(v["alpha"], 2);

    let seven = json(&septic(&["report", "7"]));
    assert_eq!(seven["polya_rank"], 1);
    assert_eq!(seven["polya_order"], "7");
    assert_eq!(seven["E_factorization"], "43^1 * 4159^1");

    let neg = septic(&["report", "-1"]);
    assert_eq!(neg.status.code(), Some(0));
    assert_eq!(json(&neg)["E_value"], "29");
}

#[test]
fn report_keys_in_order() {
    let v = json(&septic(&["report", "1"]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "t",
            "E_value",
            "E_factorization",
            "fifth_power_free",
            "alpha",
            "conductor",
            "field_discriminant",
            "polya_rank",
            "is_polya",
            "polya_order",
            "polya_number_bound",
            "ramified_primes",
            "monogenic",
            "index_one_certified",
        ]
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(septic(&["report", "0"]).status.code(), Some(2));
    assert_eq!(septic(&["survey", "5", "1"]).status.code(), Some(2));
    assert_eq!(septic(&["survey", "1", "5", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(septic(&["decompose", "149396"]).status.code(), Some(2));
    assert_eq!(septic(&["block", "0", "1"]).status.code(), Some(2));
    assert_eq!(septic(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_3() {
    let out = septic(&["--budget", "1", "decompose", "1000003"]);
    assert_eq!(out.status.code(), Some(3));

    // The report degrades to unknown fields instead.
    let out = septic(&["--budget", "1", "report", "1000003"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["conductor"], "unknown");
}

#[test]
fn budget_from_environment_and_flag_precedence() {
    let run = |env: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_septic"))
            .args(args)
            .env("SEPTIC_BUDGET", env)
            .env_remove("SEPTIC_CACHE")
            .output()
            .unwrap()
    };
    assert_eq!(run("1", &["decompose", "1000003"]).status.code(), Some(3));
    let flag = run("1", &["--budget", "100000000", "decompose", "1000003"]);
    assert_eq!(flag.status.code(), Some(0), "{}", String::from_utf8_lossy(&flag.stderr));
}

#[test]
fn verify_identities_and_mutation() {
    let ok = septic(&["verify-identities"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 8);

    let bad = septic(&["verify-identities", "--mutate", "W"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn survey_is_independent_of_jobs() {
    let one = septic(&["survey", "-30", "60", "--jobs", "1"]);
    let four = septic(&["survey", "-30", "60", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,E_value,omega,fifth_power_free,alpha,conductor,polya_rank,is_polya,index_one_certified"
    );
    assert_eq!(lines.count(), 90);

    let js = septic(&["survey", "1", "3", "--format", "json"]);
    let rows: Vec<Value> = stdout(&js).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["conductor"], "49");
    assert_eq!(rows[0]["omega"], 1);
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("factors.tsv");
    let p = path.to_str().unwrap();
    let plain = septic(&["survey", "1", "40"]);
    let cold = septic(&["--cache", p, "survey", "1", "40"]);
    let warm = septic(&["--cache", p, "survey", "1", "40"]);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.lines().any(|l| l.starts_with("178837\t")), "{written}");
}

#[test]
fn block_certificates() {
    let out = septic(&["block", "1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verification"]["divisibility"], "pass");
    assert_eq!(v["certificate"]["prime_sets"][0].as_array().unwrap().len(), 2);

    let out = septic(&["block", "2", "1", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let sets = v["certificate"]["prime_sets"].as_array().unwrap();
    let ps: Vec<&str> = sets
        .iter()
        .flat_map(|s| s.as_array().unwrap())
        .map(|pr| pr["p"].as_str().unwrap())
        .collect();
    assert_eq!(ps, ["7", "1163", "43", "2297"]);
    assert!(v["verification"]["samples_verified"].as_u64().unwrap() >= 3);
}

#[test]
fn valuations_table() {
    let out = septic(&["valuations"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for (name, v) in [("E", 2), ("F", 1), ("G", 2), ("I", 3), ("J", 4), ("H", 5)] {
        let line = format!("v_7({name}) on t ≡ 2 (mod 7): {v}");
        assert!(text.lines().any(|l| l == line), "{text}");
    }
}
