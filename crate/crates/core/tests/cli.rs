use std::process::{Command, Output};

fn apery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery"))
        .args(args)
        .env_remove("APERY_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_a_json_record() {
    let o = apery(&["compute", "Gr(2,5)"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mu"], 2);
    assert_eq!(v["terms"], 200);
    assert_eq!(v["precision"], 40);
    assert_eq!(v["normalization"], "lefschetz-chern");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries[1]["identified"]["display"], "ζ(2)");
    assert_eq!(entries[1]["primitive_codim"], 2);
}

#[test]
fn compute_products_with_weights_and_csv() {
    let o = apery(&["compute", "P2xP3", "--weights", "1,1", "--out", "csv", "--terms", "150", "--precision", "30"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().count() >= 3);
    assert!(text.contains("-C"), "{text}");
}

#[test]
fn errors_are_machine_readable() {
    let o = apery(&["compute", "Q(3,1)"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "config");
    let o = apery(&["sine", "--n", "5", "--u", "1/7,-1/11,2/13"]);
    assert_eq!(o.status.code(), Some(2));
    let o = apery(&["cache", "list"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sine_subcommand() {
    let o = apery(&["sine", "--n", "5", "--u", "1/7,-1/9", "--terms", "300"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for row in v.as_array().unwrap() {
        let dev: f64 = row["deviation"].as_str().unwrap().parse().unwrap();
        assert!(dev < 1e-8);
    }
}

#[test]
fn cache_dir_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_apery")).args(args).env("APERY_CACHE_DIR", dir.path()).output().unwrap()
    };
    let o = run(&["cache", "build", "Gr(2,6)", "D(5,4)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Built"));
    let o = run(&["cache", "build", "Gr(2,6)"]);
    assert!(stdout(&o).contains("Hit"));
    assert_eq!(stdout(&run(&["cache", "list"])).lines().count(), 2);
    assert!(stdout(&run(&["cache", "check", "Gr(2,6)"])).contains("roundtrip ok"));
    assert!(stdout(&run(&["cache", "clear"])).contains("removed 2"));
}

#[test]
fn reproduce_gr2_passes() {
    let o = apery(&["reproduce", "gr2", "--out", "md"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("Gr(2,10)"));
}
