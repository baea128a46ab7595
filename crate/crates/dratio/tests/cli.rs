use std::path::Path;
use std::process::{Command, Output};

use dratio::io::{parse_instance, write_instance};
use dratio_core::{gen_instance, BodyKind};

fn dratio(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dratio"))
        .args(args)
        .env_remove("DR_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn witness_then_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.json");
    let o = dratio(&["witness", "--m", "4", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let inst = parse_instance(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(inst.dim(), 4);

    let o = dratio(&["--format", "text", "ratio", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\nratio = 4.0\n"), "{text}");
    assert!(text.contains("\ncoefficient = 8.0\n"));
    assert!(text.contains("chain.sqrt_m_bound_ok = true"));

    let o = dratio(&["ratio", path_str(&file)]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["ratio"].as_f64(), Some(4.0));
    assert_eq!(doc["chain"]["baum_link_ok"].as_bool(), Some(true));
}

#[test]
fn john_reports_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    write_instance(&file, &gen_instance(3, 5, 2, BodyKind::Polytope, 4).unwrap()).unwrap();
    let o = dratio(&["john", path_str(&file), "--n-dirs", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["outer_ok"].as_bool(), Some(true));
    assert_eq!(doc["inner_ok"].as_bool(), Some(true));
    assert_eq!(doc["inner_shape"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(dratio(&["ratio", path_str(&missing)]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2}").unwrap();
    assert_eq!(dratio(&["ratio", path_str(&bad)]).status.code(), Some(2));

    let ell = dir.path().join("e.json");
    write_instance(&ell, &gen_instance(2, 2, 1, BodyKind::Ellipsoid, 0).unwrap()).unwrap();
    assert_eq!(dratio(&["john", path_str(&ell)]).status.code(), Some(2));

    assert_eq!(dratio(&["witness", "--m", "1"]).status.code(), Some(2));
    assert_eq!(dratio(&["verify", "--dims", "1..3"]).status.code(), Some(2));
    assert_eq!(dratio(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn failed_solve_exits_1() {
    // With eps below machine precision the stopping rule demands the exact
    // optimum, which coordinate ascent does not reach within its budget.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    write_instance(&file, &gen_instance(3, 6, 2, BodyKind::Polytope, 1).unwrap()).unwrap();
    let o = dratio(&["john", path_str(&file), "--eps", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not converge"));
}

#[test]
fn seed_from_environment_only_without_flag() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_dratio"));
        cmd.args(args);
        match env {
            Some(v) => cmd.env("DR_SEED", v),
            None => cmd.env_remove("DR_SEED"),
        };
        let o = cmd.output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        doc["seed"].as_u64().unwrap()
    };
    let args = ["verify", "--trials", "5", "--dims", "2..3"];
    assert_eq!(run(None, &args), 0);
    assert_eq!(run(Some("77"), &args), 77);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "3"]);
    assert_eq!(run(Some("77"), &with_flag), 3);
}

#[test]
fn search_and_baum_commands() {
    let o = dratio(&["search", "--m", "2", "--restarts", "4", "--steps", "50", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["report"]["ratio"].as_f64().unwrap() >= 2.0);
    let inst = serde_json::to_string(&doc["instance"]).unwrap();
    assert!(parse_instance(&inst).is_ok());

    let o = dratio(&["--format", "text", "baum", "--m-max", "4", "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("all_pass = true"));
    assert!(text.contains("rows.2.m = 4"));
}
