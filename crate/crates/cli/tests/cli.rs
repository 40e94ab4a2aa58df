use std::path::Path;
use std::process::{Command, Output};

fn netform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netform")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

/// Two coalitions on disjoint player pairs, every arc present.
fn disjoint_doc(second_income: &str) -> String {
    format!(
        r#"{{
  "schema_version": 1,
  "players": 4,
  "coalitions": [
    {{ "members": [1, 2], "income": "3", "shares": ["1/2", "1/2"] }},
    {{ "members": [3, 4], "income": "{second_income}", "shares": ["1/2", "1/2"] }}
  ],
  "networks": [
    {{ "name": "full", "arcs": [[1,2],[2,1],[3,4],[4,3],[1,3],[3,1]] }}
  ]
}}
"#
    )
}

#[test]
fn form_prints_the_first_network() {
    let out = netform(&["form", "builtin:example", "1"]);
    assert_eq!(status(&out), 0);
    assert!(stdout(&out).ends_with("0 0 1 1 1\n0 0 0 0 0\n0 0 0 1 0\n0 0 0 0 0\n0 1 0 1 0\n"));

    let out = netform(&["form", "builtin:example", "1", "--format", "json"]);
    assert_eq!(json(&out)["matrix"][0], serde_json::json!([0, 0, 1, 1, 1]));
}

#[test]
fn form_rejects_bad_profile_index() {
    for idx in ["11", "0"] {
        let out = netform(&["form", "builtin:example", idx]);
        assert_eq!(status(&out), 2);
        assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
    }
}

#[test]
fn payoffs_report_rows_and_deltas() {
    let out = netform(&["payoffs", "builtin:example", "--format", "json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["rule"], "linked");
    assert_eq!(v["payoffs"][3], serde_json::json!(["-1", "3", "1", "1", "3"]));
    assert_eq!(v["deltas"][9]["matches"], false);
    assert_eq!(v["deltas"][9]["printed"], serde_json::json!(["0", "3", "7", "8", "7"]));

    let table = stdout(&netform(&["payoffs", "builtin:example"]));
    assert!(table.contains("phi10 *"));
}

#[test]
fn payoffs_without_profiles_is_an_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "d.json", &disjoint_doc("1"));
    let out = netform(&["payoffs", &path, "--format", "csv"]);
    assert_eq!(status(&out), 0);
    assert_eq!(stdout(&out), "profile,player1,player2,player3,player4\n");
    let out = netform(&["payoffs", &path, "--format", "json"]);
    assert_eq!(json(&out)["payoffs"], serde_json::json!([]));
}

#[test]
fn restricted_equilibria_on_the_example_instance() {
    let out = netform(&["equilibria", "builtin:example", "--format", "json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["equilibria"], serde_json::json!([1, 2, 3, 5, 6, 7, 8, 9, 10]));
    let audit = v["reachable"].as_array().unwrap();
    assert_eq!(audit.len(), 1);
    assert_eq!(audit[0]["from"], 4);
    assert_eq!(audit[0]["to"], 10);
    assert_eq!(audit[0]["player"], 1);
    assert_eq!(audit[0]["gain"], "1");

    let out = netform(&["equilibria", "builtin:example", "--assert-stable"]);
    assert_eq!(status(&out), 1);
}

#[test]
fn full_mode_on_the_small_example_is_stable() {
    let out = netform(&["equilibria", "builtin:small", "--mode", "full", "--assert-stable", "--format", "json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["rule"], "mutual");
    assert_eq!(v["networks"][0]["name"], "g");
    assert_eq!(v["networks"][0]["stable"], true);
}

#[test]
fn restricted_mode_needs_profiles() {
    let out = netform(&["equilibria", "builtin:small"]);
    assert_eq!(status(&out), 2);
}

#[test]
fn compromise_from_the_printed_matrix() {
    let out = netform(&["compromise", "builtin:example", "--format", "json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["ideal"], serde_json::json!(["23", "21", "26", "15", "22"]));
    assert_eq!(v["value"], "0");
    assert_eq!(v["solutions"], serde_json::json!([5]));
    assert_eq!(v["sorted_regrets"][6], serde_json::json!(["14", "20", "21", "23", "26"]));

    let table = stdout(&netform(&["compromise", "builtin:example"]));
    assert!(table.contains("compromise solution(s): phi5"));
}

#[test]
fn compromise_source_errors() {
    assert_eq!(status(&netform(&["compromise", "builtin:small"])), 2);
    assert_eq!(status(&netform(&["compromise", "builtin:small", "--source", "computed"])), 2);
}

#[test]
fn compromise_on_a_single_profile() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{
  "schema_version": 1,
  "players": 2,
  "coalitions": [{ "members": [1, 2], "income": "4", "shares": ["1/2", "1/2"] }],
  "profiles": [{ "label": "only", "gamma_plus": [[0, 1], [1, 0]], "gamma_minus": [[0, 1], [1, 0]] }]
}
"#;
    let path = write(dir.path(), "one.json", doc);
    let out = netform(&["compromise", &path, "--source", "computed", "--format", "json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["solutions"], serde_json::json!([1]));
    assert_eq!(v["value"], "0");
}

#[test]
fn compromise_reads_csv_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "m.csv", "profile,player1,player2\na,3,0\nb,1,2\nc,0,3\n");
    let out = netform(&["compromise", "--matrix", &path, "--format", "json"]);
    assert_eq!(status(&out), 0);
    let v = json(&out);
    assert_eq!(v["source"], "csv");
    assert_eq!(v["solutions"], serde_json::json!([2]));
    assert_eq!(v["value"], "2");

    let bad = write(dir.path(), "bad.csv", "profile,player1\na,zz\n");
    assert_eq!(status(&netform(&["compromise", "--matrix", &bad])), 2);
}

#[test]
fn check_disjoint_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let stable = write(dir.path(), "stable.json", &disjoint_doc("1"));
    let unstable = write(dir.path(), "unstable.json", &disjoint_doc("-1"));

    assert_eq!(status(&netform(&["check-disjoint", &stable, "network:full"])), 0);

    let out = netform(&["check-disjoint", &unstable, "network:full", "--format", "json"]);
    assert_eq!(status(&out), 1);
    let v = json(&out);
    assert_eq!(v["stable"], false);
    assert_eq!(v["coalition"], "(3,4)");
    assert_eq!(v["witness"]["removed_arcs"], serde_json::json!([[3, 4], [4, 3]]));

    // One arc is enough to activate a pair under the default rule, but not under MUTUAL.
    assert_eq!(status(&netform(&["check-disjoint", &unstable, "arcs:1-2,2-1,3-4"])), 1);
    assert_eq!(status(&netform(&["check-disjoint", &unstable, "arcs:1-2,2-1,3-4", "--rule", "mutual"])), 0);
    assert_eq!(status(&netform(&["check-disjoint", &unstable, "arcs:1-2,2-1,1-3"])), 0);

    let out = netform(&["check-disjoint", "builtin:example", "profile:1"]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("share"));
    assert_eq!(status(&netform(&["check-disjoint", &stable, "arcs:1-9"])), 2);
    assert_eq!(status(&netform(&["check-disjoint", &stable, "bogus"])), 2);
}

#[test]
fn generate_is_deterministic_and_disjoint_when_asked() {
    let args = ["generate", "--seed", "42", "--players", "6", "--coalitions", "5", "--disjoint", "--networks", "2"];
    let a = netform(&args);
    let b = netform(&args);
    assert_eq!(status(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    let path = path.to_str().unwrap();
    let mut with_output = args.to_vec();
    with_output.extend(["-o", path]);
    assert_eq!(status(&netform(&with_output)), 0);
    assert_eq!(std::fs::read(path).unwrap(), a.stdout);

    let code = status(&netform(&["check-disjoint", path, "network:g1"]));
    assert!(code == 0 || code == 1, "precondition must hold, got {code}");
}

#[test]
fn generate_rejects_infeasible_requests() {
    // Four players have only six distinct pairs.
    let out = netform(&["generate", "--players", "4", "--coalitions", "7", "--disjoint"]);
    assert_eq!(status(&out), 2);
    assert_eq!(status(&netform(&["generate", "--players", "1"])), 2);
}

#[test]
fn machine_output_ignores_job_count() {
    for cmd in [
        vec!["payoffs", "builtin:example", "--format", "json"],
        vec!["equilibria", "builtin:example", "--format", "csv"],
        vec!["equilibria", "builtin:example", "--mode", "full", "--format", "json"],
    ] {
        let one = netform(&[&["--jobs", "1"][..], &cmd].concat());
        let four = netform(&[&["--jobs", "4"][..], &cmd].concat());
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(one.stdout, netform(&[&["--jobs", "1"][..], &cmd].concat()).stdout);
    }
}

#[test]
fn validate_and_strict_loading() {
    let out = netform(&["validate", "builtin:example", "--format", "json"]);
    assert_eq!(status(&out), 0);
    assert_eq!(json(&out)["warnings"].as_array().unwrap().len(), 2);
    assert_eq!(status(&netform(&["--strict", "validate", "builtin:example"])), 1);
    assert_eq!(status(&netform(&["--strict", "payoffs", "builtin:example"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", "{ \"schema_version\": 1,\n  \"players\": }");
    let out = netform(&["payoffs", &broken]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn builtin_documents_reload() {
    let dir = tempfile::tempdir().unwrap();
    let out = netform(&["builtin", "example"]);
    let path = write(dir.path(), "example.json", &stdout(&out));
    assert_eq!(
        netform(&["payoffs", &path, "--format", "csv"]).stdout,
        netform(&["payoffs", "builtin:example", "--format", "csv"]).stdout
    );
    assert_eq!(status(&netform(&["builtin", "nope"])), 2);
}
