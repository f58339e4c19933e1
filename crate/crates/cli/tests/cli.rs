use std::path::PathBuf;
use std::process::{Command, Output};

fn qhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhopf")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qhopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn list_catalogs() {
    let o = qhopf(&["list", "--preset", "suq2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for id in ["haar", "counit", "u1", "zn:2", "zn:6"] {
        assert!(out.contains(id), "missing {id}");
    }
    let o = qhopf(&["list", "--preset", "u02", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v["states"].as_array().unwrap().iter().map(|s| s["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"torus:full") && ids.contains(&"psi-tensor:2:inf"));
    let o = qhopf(&["list", "--preset", "soq3"]);
    assert!(stdout(&o).contains("u1") && stdout(&o).contains("zn:4"));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    assert_eq!(code(&qhopf(&["list", "--preset", "sl3"])), 2);
    assert_eq!(code(&qhopf(&["verify", "--preset", "suq2"])), 2);
    assert_eq!(code(&qhopf(&["verify", "--state", "zn:0"])), 2);
}

#[test]
fn verify_generic_catalog() {
    let o = qhopf(&["verify", "--preset", "suq2", "--all", "--smax", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["states"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_q0_states() {
    let o = qhopf(&["verify", "--preset", "su02", "--state", "psi:2,phi:3", "--bounds", "4,3,4,4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed"));
}

#[test]
fn broken_table_fails_with_witness() {
    let path = scratch("broken.json");
    let table = r#"{"blocks":[{"matrix":[["1"]],"p":0,"s":"0"},
        {"matrix":[["1","0"],["0","1"]],"p":0,"s":"1/2"},
        {"matrix":[["1","0","0"],["0","1/2","0"],["0","0","1"]],"p":0,"s":"1"}],
        "pmax":0,"preset":"SUq2","smax":"1"}"#;
    std::fs::write(&path, table).unwrap();
    let o = qhopf(&["verify", "--preset", "suq2", "--state", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("[FAIL]"), "{out}");
    assert!(out.contains("skipped"), "{out}");
}

#[test]
fn export_corep_weights() {
    let o = qhopf(&["export", "corep", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["weights"], serde_json::json!(["1", "1+q^2", "1"]));
}

#[test]
fn export_projection_and_state() {
    let o = qhopf(&["export", "projection", "u1", "--smax", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for b in v["blocks"].as_array().unwrap() {
        for (i, row) in b["matrix"].as_array().unwrap().iter().enumerate() {
            for (j, x) in row.as_array().unwrap().iter().enumerate() {
                let x = x.as_str().unwrap();
                assert!(x == "0" || (x == "1" && i == j));
            }
        }
    }
    let o = qhopf(&["export", "state", "haar", "--smax", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let nonzero = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["matrix"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).any(|x| x != "0"))
        .count();
    assert_eq!(nonzero, 1);
    let o = qhopf(&["export", "hypergroup", "zn:2", "--smax", "3"]);
    assert_eq!(code(&o), 0);
    let o = qhopf(&["export", "measure", "phi:3", "--preset", "su02"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn exports_are_deterministic() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    for p in [&a, &b] {
        let o = qhopf(&["export", "hypergroup", "zn:3", "--smax", "3", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let x = stdout(&qhopf(&["export", "state", "torus:2,0;0,3", "--preset", "u02"]));
    let y = stdout(&qhopf(&["export", "state", "torus:2,0;0,3", "--preset", "u02"]));
    assert_eq!(x, y);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let o = qhopf(&["export", "corep", "1", "--out", "/nonexistent-dir/corep.json"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn numeric_checks() {
    let o = qhopf(&["numeric", "--q0", "0.5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["results"][0]["haar_max_diff"].as_f64().unwrap() <= 1e-7);

    let o = qhopf(&["numeric", "--q0", "0.99", "--haar-dim", "64", "--dim", "16"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("slow Jackson tail"));

    assert_eq!(code(&qhopf(&["numeric", "--q0", "0"])), 2);
}
